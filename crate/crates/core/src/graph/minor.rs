use super::{Graph, VertexPartition};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorOp {
    /// Remove `v`; vertices above `v` shift down by one.
    DeleteVertex(usize),
    DeleteEdge(usize, usize),
    /// Merge `u` and `v` into the smaller of the two ids; the larger id is
    /// removed and vertices above it shift down by one.
    ContractEdge(usize, usize),
}

pub fn minor_op(g: &Graph, op: MinorOp) -> Result<Graph> {
    let n = g.n();
    match op {
        MinorOp::DeleteVertex(v) => {
            if v >= n {
                return Err(Error::invalid(format!("no vertex {v}")));
            }
            let keep: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            Ok(g.induced_subgraph(&keep))
        }
        MinorOp::DeleteEdge(u, v) => {
            let mut h = g.clone();
            if !h.remove_edge(u, v) {
                return Err(Error::invalid(format!("no edge {{{u}, {v}}}")));
            }
            Ok(h)
        }
        MinorOp::ContractEdge(u, v) => {
            if u == v || !g.has_edge(u, v) {
                return Err(Error::invalid(format!("no edge {{{u}, {v}}} to contract")));
            }
            let (keep, gone) = (u.min(v), u.max(v));
            let relabel = |w: usize| match w {
                w if w == gone => keep,
                w if w > gone => w - 1,
                w => w,
            };
            let mut h = if g.loops_allowed() {
                Graph::with_loops(n - 1)
            } else {
                Graph::new(n - 1)
            };
            for (a, b) in g.edges() {
                let (a, b) = (relabel(a), relabel(b));
                if a == b && !g.loops_allowed() {
                    continue;
                }
                h.add_edge(a, b)?;
            }
            Ok(h)
        }
    }
}

/// The quotient `H / rho`: block `i` of the canonical partition becomes
/// vertex `i`. A block that contains an edge of `H` yields a loop, so the
/// result always accepts loops.
pub fn quotient(h: &Graph, rho: &VertexPartition) -> Result<Graph> {
    if rho.len() != h.n() {
        return Err(Error::invalid(format!(
            "partition covers {} elements, graph has {} vertices",
            rho.len(),
            h.n()
        )));
    }
    let labels = rho.labels();
    let mut q = Graph::with_loops(rho.num_blocks());
    for (u, v) in h.edges() {
        q.add_edge(labels[u], labels[v])?;
    }
    Ok(q)
}
