//! Maximum independent set: a measure-and-branch algorithm, a dynamic
//! program over tree decompositions, and an exhaustive oracle.
//!
//! Vertices carrying a loop can never be chosen and are ignored by all
//! three.

use std::collections::HashMap;

use crate::decomposition::{make_nice, validate, NiceKind, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guard;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BranchStats {
    /// Calls that branched on a vertex of degree at least 3.
    pub branch_nodes: u64,
    /// Calls solved directly because every degree was at most 2.
    pub leaves: u64,
}

pub fn mis_branching(g: &Graph) -> usize {
    mis_branching_stats(g).0
}

/// Branches on a vertex of maximum degree (lowest index on ties) while it
/// has degree at least 3: either drop it, or take it and drop its closed
/// neighbourhood. Once all degrees are at most 2 the graph is a union of
/// paths and cycles, solved by formula.
pub fn mis_branching_stats(g: &Graph) -> (usize, BranchStats) {
    let alive: Vec<bool> = (0..g.n()).map(|v| !g.has_loop(v)).collect();
    let mut stats = BranchStats::default();
    let size = branch(g, alive, &mut stats);
    (size, stats)
}

fn live_degree(g: &Graph, alive: &[bool], v: usize) -> usize {
    g.neighbors(v)
        .iter()
        .filter(|&&u| u != v && alive[u])
        .count()
}

fn branch(g: &Graph, mut alive: Vec<bool>, stats: &mut BranchStats) -> usize {
    let (mut best, mut best_deg) = (None, 2);
    for v in (0..g.n()).filter(|&v| alive[v]) {
        let d = live_degree(g, &alive, v);
        if d > best_deg {
            best = Some(v);
            best_deg = d;
        }
    }
    let Some(v) = best else {
        stats.leaves += 1;
        return paths_and_cycles(g, &alive);
    };
    stats.branch_nodes += 1;
    let mut taken = alive.clone();
    taken[v] = false;
    for &u in g.neighbors(v) {
        taken[u] = false;
    }
    let with = 1 + branch(g, taken, stats);
    alive[v] = false;
    with.max(branch(g, alive, stats))
}

/// Every live vertex has live degree at most 2: a path on `l` vertices
/// contributes `ceil(l/2)`, a cycle `floor(l/2)`.
fn paths_and_cycles(g: &Graph, alive: &[bool]) -> usize {
    let mut seen = vec![false; g.n()];
    let mut total = 0;
    for s in 0..g.n() {
        if !alive[s] || seen[s] {
            continue;
        }
        let (mut vertices, mut degree_sum) = (0usize, 0usize);
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            vertices += 1;
            for &u in g.neighbors(v) {
                if alive[u] {
                    degree_sum += 1;
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        total += if degree_sum / 2 == vertices {
            vertices / 2
        } else {
            vertices.div_ceil(2)
        };
    }
    total
}

/// Dynamic program over a nice form of `td`, one entry per independent
/// subset of each bag (as a bitmask over bag positions).
pub fn mis_td(g: &Graph, td: &TreeDecomposition) -> Result<usize> {
    validate(g, td)
        .map_err(|d| Error::invalid(format!("not a decomposition of the graph: {d}")))?;
    if td.width() >= 64 {
        return Err(Error::ResourceLimit {
            what: "independent set decomposition width",
            value: td.width() as u128,
            limit: 63,
        });
    }
    let nice = make_nice(td)?;
    let mut tables: Vec<HashMap<u64, usize>> = Vec::with_capacity(nice.nodes().len());
    for node in nice.nodes() {
        let bag = &node.bag;
        let table = match node.kind {
            NiceKind::Leaf => HashMap::from([(0, 0)]),
            NiceKind::Introduce { vertex, child } => {
                let pos = bag.binary_search(&vertex).unwrap();
                let low = (1u64 << pos) - 1;
                let blocked: u64 = (0..bag.len())
                    .filter(|&j| j != pos && g.has_edge(vertex, bag[j]))
                    .fold(0, |m, j| m | 1 << j);
                let mut out = HashMap::with_capacity(tables[child].len() * 2);
                for (&mask, &size) in &tables[child] {
                    let shifted = (mask & low) | ((mask & !low) << 1);
                    out.insert(shifted, size);
                    if shifted & blocked == 0 && !g.has_loop(vertex) {
                        out.insert(shifted | 1 << pos, size + 1);
                    }
                }
                out
            }
            NiceKind::Forget { vertex, child } => {
                let pos = nice.nodes()[child].bag.binary_search(&vertex).unwrap();
                let low = (1u64 << pos) - 1;
                let mut out: HashMap<u64, usize> = HashMap::with_capacity(tables[child].len());
                for (&mask, &size) in &tables[child] {
                    let removed = (mask & low) | ((mask >> 1) & !low);
                    let e = out.entry(removed).or_insert(size);
                    *e = (*e).max(size);
                }
                out
            }
            NiceKind::Join { left, right } => tables[left]
                .iter()
                .filter_map(|(&mask, &l)| {
                    tables[right]
                        .get(&mask)
                        .map(|&r| (mask, l + r - mask.count_ones() as usize))
                })
                .collect(),
        };
        tables.push(table);
    }
    Ok(tables.last().and_then(|t| t.get(&0)).copied().unwrap_or(0))
}

/// Exhaustive search over independent subsets.
pub fn mis_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.n();
    guard::check(
        "brute-force independent set vertices",
        n as u128,
        guard::MAX_MIS_BRUTEFORCE_VERTICES,
    )?;
    if n > 64 {
        return Err(Error::ResourceLimit {
            what: "brute-force independent set vertices",
            value: n as u128,
            limit: 64,
        });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &u| m | 1 << u))
        .collect();
    fn rec(adj: &[u64], v: usize, forbidden: u64, size: usize, best: &mut usize) {
        if v == adj.len() {
            *best = (*best).max(size);
            return;
        }
        if forbidden >> v & 1 == 0 && adj[v] >> v & 1 == 0 {
            rec(adj, v + 1, forbidden | adj[v], size + 1, best);
        }
        rec(adj, v + 1, forbidden, size, best);
    }
    let mut best = 0;
    rec(&adj, 0, 0, 0, &mut best);
    Ok(best)
}
