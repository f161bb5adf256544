//! Exact treewidth by dynamic programming over sets of eliminated
//! vertices. For an eliminated prefix `S` and a next vertex `v`, the bag
//! created by `v` is `v` plus every vertex outside `S + v` reachable from
//! `v` through `S`; the treewidth is the minimum over orders of the largest
//! such bag, and the DP takes that minimum over prefixes instead of orders.

use std::collections::HashMap;

use super::{from_elimination_order, minfill_decompose, mmd_lower_bound, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guard;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactTreewidth {
    Found {
        width: usize,
        decomposition: TreeDecomposition,
    },
    /// Treewidth is strictly greater than the bound that was asked for.
    ExceedsBound,
}

impl ExactTreewidth {
    pub fn width(&self) -> Option<usize> {
        match self {
            ExactTreewidth::Found { width, .. } => Some(*width),
            ExactTreewidth::ExceedsBound => None,
        }
    }

    pub fn decomposition(&self) -> Option<&TreeDecomposition> {
        match self {
            ExactTreewidth::Found { decomposition, .. } => Some(decomposition),
            ExactTreewidth::ExceedsBound => None,
        }
    }
}

/// Minimum width over all tree decompositions of `g`, or `ExceedsBound`
/// if that minimum is larger than `ubound`.
///
/// Runs on graphs with at most 14 vertices, or on larger graphs (up to 64
/// vertices) when `ubound <= 4`.
pub fn exact_treewidth(g: &Graph, ubound: usize) -> Result<ExactTreewidth> {
    let n = g.n();
    if ubound > guard::MAX_EXACT_TREEWIDTH_SMALL_BOUND {
        guard::check(
            "exact treewidth vertex count",
            n as u128,
            guard::MAX_EXACT_TREEWIDTH_VERTICES,
        )?;
    }
    if n > 64 {
        return Err(Error::ResourceLimit {
            what: "exact treewidth vertex count",
            value: n as u128,
            limit: 64,
        });
    }
    let lower = mmd_lower_bound(g);
    if lower > ubound {
        return Ok(ExactTreewidth::ExceedsBound);
    }
    let heuristic = minfill_decompose(g);
    let upper = heuristic.width();
    if upper == lower || n <= 1 {
        return Ok(if upper <= ubound {
            ExactTreewidth::Found {
                width: upper,
                decomposition: heuristic,
            }
        } else {
            ExactTreewidth::ExceedsBound
        });
    }
    // look for a width strictly below both the heuristic and the bound + 1
    let target = (upper - 1).min(ubound);
    match search(g, target)? {
        Some(order) => {
            let td = from_elimination_order(g, &order).compress();
            Ok(ExactTreewidth::Found {
                width: td.width(),
                decomposition: td,
            })
        }
        None if upper <= ubound => Ok(ExactTreewidth::Found {
            width: upper,
            decomposition: heuristic,
        }),
        None => Ok(ExactTreewidth::ExceedsBound),
    }
}

/// An elimination order of width at most `limit`, minimising the width,
/// or `None` if there is none.
fn search(g: &Graph, limit: usize) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| w != v)
                .fold(0u64, |acc, &w| acc | (1 << w))
        })
        .collect();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    // best[S] = (width of the best order eliminating exactly S, last vertex)
    let mut best: HashMap<u64, (usize, u8)> = HashMap::new();
    let mut level: Vec<u64> = vec![0];
    let mut stored: u128 = 0;
    for _ in 0..n {
        let mut next: HashMap<u64, (usize, u8)> = HashMap::new();
        for &s in &level {
            let sofar = if s == 0 { 0 } else { best[&s].0 };
            let mut rest = full & !s;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let q = higher_neighbourhood(&adj, s, v).count_ones() as usize;
                let w = sofar.max(q);
                if w > limit {
                    continue;
                }
                let key = s | (1 << v);
                let cand = (w, v as u8);
                next.entry(key)
                    .and_modify(|cur| {
                        if cand < *cur {
                            *cur = cand;
                        }
                    })
                    .or_insert(cand);
            }
        }
        if next.is_empty() {
            return Ok(None);
        }
        stored += next.len() as u128;
        guard::check(
            "exact treewidth search states",
            stored,
            guard::MAX_EXACT_TREEWIDTH_STATES,
        )?;
        let mut keys: Vec<u64> = next.keys().copied().collect();
        keys.sort_unstable();
        best.extend(next);
        level = keys;
    }
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = best[&s].1 as usize;
        order.push(v);
        s &= !(1u64 << v);
    }
    order.reverse();
    Ok(Some(order))
}

/// Vertices outside `s + v` adjacent to the component of `v` in `G[s + v]`.
fn higher_neighbourhood(adj: &[u64], s: u64, v: usize) -> u64 {
    let mut reach = 1u64 << v;
    let mut frontier = reach;
    loop {
        let mut nb = 0u64;
        let mut f = frontier;
        while f != 0 {
            nb |= adj[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        let new = nb & s & !reach;
        if new == 0 {
            break;
        }
        reach |= new;
        frontier = new;
    }
    let mut nb = 0u64;
    let mut r = reach;
    while r != 0 {
        nb |= adj[r.trailing_zeros() as usize];
        r &= r - 1;
    }
    nb & !s & !reach
}
