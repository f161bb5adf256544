//! Tree decompositions: construction, validation, the nice normal form and
//! the PACE 2017 `.td` format.

mod elimination;
mod exact;
mod nice;
mod pace;

pub use elimination::{from_elimination_order, minfill_decompose, minfill_order, mmd_lower_bound};
pub use exact::{exact_treewidth, ExactTreewidth};
pub use nice::{make_nice, NiceKind, NiceNode, NiceTreeDecomposition};
pub use pace::{parse_td, read_td, write_td};

use std::fmt;

use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    /// Bags are sorted and deduplicated; no other checking happens here,
    /// see [`validate`].
    pub fn new(mut bags: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        for b in &mut bags {
            b.sort_unstable();
            b.dedup();
        }
        TreeDecomposition { bags, tree_edges }
    }

    /// One bag holding every vertex.
    pub fn trivial(g: &Graph) -> Self {
        TreeDecomposition::new(vec![(0..g.n()).collect()], Vec::new())
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn tree_edges(&self) -> &[(usize, usize)] {
        &self.tree_edges
    }

    pub fn num_bags(&self) -> usize {
        self.bags.len()
    }

    /// Largest bag size minus one (zero for an all-empty decomposition).
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub(crate) fn tree_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.tree_edges {
            if a < self.bags.len() && b < self.bags.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        adj
    }

    /// Contracts tree edges whose one side is a subset of the other.
    pub fn compress(&self) -> TreeDecomposition {
        let mut bags: Vec<Option<Vec<usize>>> = self.bags.iter().cloned().map(Some).collect();
        let mut edges = self.tree_edges.clone();
        loop {
            let found = edges.iter().position(|&(a, b)| {
                let (ba, bb) = (bags[a].as_ref().unwrap(), bags[b].as_ref().unwrap());
                is_subset(ba, bb) || is_subset(bb, ba)
            });
            let Some(i) = found else { break };
            let (a, b) = edges.swap_remove(i);
            let (small, big) = if is_subset(bags[a].as_ref().unwrap(), bags[b].as_ref().unwrap()) {
                (a, b)
            } else {
                (b, a)
            };
            bags[small] = None;
            for e in &mut edges {
                if e.0 == small {
                    e.0 = big;
                }
                if e.1 == small {
                    e.1 = big;
                }
            }
        }
        let mut index = vec![usize::MAX; bags.len()];
        let mut kept = Vec::new();
        for (i, b) in bags.into_iter().enumerate() {
            if let Some(b) = b {
                index[i] = kept.len();
                kept.push(b);
            }
        }
        let mut edges: Vec<_> = edges
            .into_iter()
            .map(|(a, b)| (index[a].min(index[b]), index[a].max(index[b])))
            .collect();
        edges.sort_unstable();
        TreeDecomposition::new(kept, edges)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Why a candidate fails to be a tree decomposition of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    NoBags,
    BagVertexOutOfRange { bag: usize, vertex: usize },
    TreeEdgeOutOfRange { edge: (usize, usize) },
    NotATree,
    VertexUncovered(usize),
    EdgeUncovered(usize, usize),
    OccurrencesDisconnected(usize),
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::NoBags => write!(f, "decomposition has no bags"),
            Defect::BagVertexOutOfRange { bag, vertex } => {
                write!(f, "bag {bag} mentions nonexistent vertex {vertex}")
            }
            Defect::TreeEdgeOutOfRange { edge } => {
                write!(f, "tree edge {edge:?} refers to a missing bag")
            }
            Defect::NotATree => write!(f, "bags do not form a tree"),
            Defect::VertexUncovered(v) => write!(f, "vertex {v} is in no bag"),
            Defect::EdgeUncovered(u, v) => write!(f, "edge {{{u}, {v}}} is in no bag"),
            Defect::OccurrencesDisconnected(v) => {
                write!(f, "bags containing vertex {v} are not connected")
            }
        }
    }
}

/// Checks the tree shape and the three decomposition axioms.
pub fn validate(g: &Graph, td: &TreeDecomposition) -> Result<(), Defect> {
    let nb = td.bags.len();
    if nb == 0 {
        return if g.n() == 0 {
            Ok(())
        } else {
            Err(Defect::NoBags)
        };
    }
    check_tree(td)?;
    let n = g.n();
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            if v >= n {
                return Err(Defect::BagVertexOutOfRange { bag: i, vertex: v });
            }
            holders[v].push(i);
        }
    }
    if let Some(v) = holders.iter().position(Vec::is_empty) {
        return Err(Defect::VertexUncovered(v));
    }
    for (u, v) in g.edges() {
        let covered = holders[u]
            .iter()
            .any(|&i| td.bags[i].binary_search(&v).is_ok());
        if !covered {
            return Err(Defect::EdgeUncovered(u, v));
        }
    }
    check_running_intersection(td, n)
}

pub fn is_valid(g: &Graph, td: &TreeDecomposition) -> bool {
    validate(g, td).is_ok()
}

fn check_tree(td: &TreeDecomposition) -> Result<(), Defect> {
    let nb = td.bags.len();
    for &(a, b) in &td.tree_edges {
        if a >= nb || b >= nb {
            return Err(Defect::TreeEdgeOutOfRange { edge: (a, b) });
        }
    }
    if td.tree_edges.len() + 1 != nb {
        return Err(Defect::NotATree);
    }
    let adj = td.tree_adjacency();
    let mut seen = vec![false; nb];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(a) = stack.pop() {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                count += 1;
                stack.push(b);
            }
        }
    }
    if count != nb {
        return Err(Defect::NotATree);
    }
    Ok(())
}

/// Running intersection: for a tree, the bags holding `v` form a subtree
/// iff they span exactly `#holders - 1` tree edges.
fn check_running_intersection(td: &TreeDecomposition, n: usize) -> Result<(), Defect> {
    let mut holders = vec![0usize; n];
    let mut inner_edges = vec![0usize; n];
    for bag in &td.bags {
        for &v in bag {
            if v < n {
                holders[v] += 1;
            }
        }
    }
    for &(a, b) in &td.tree_edges {
        let (ba, bb) = (&td.bags[a], &td.bags[b]);
        for &v in ba {
            if v < n && bb.binary_search(&v).is_ok() {
                inner_edges[v] += 1;
            }
        }
    }
    for v in 0..n {
        if holders[v] > 0 && inner_edges[v] + 1 != holders[v] {
            return Err(Defect::OccurrencesDisconnected(v));
        }
    }
    Ok(())
}
