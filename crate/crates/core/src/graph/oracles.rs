use super::Graph;
use crate::error::{Error, Result};
use crate::guard;

/// Maximum number of vertices on a simple path, by dynamic programming
/// over (vertex subset, endpoint) pairs.
pub fn longest_path_bruteforce(g: &Graph) -> Result<usize> {
    let n = g.n();
    guard::check(
        "longest-path vertex count",
        n as u128,
        guard::MAX_LONGEST_PATH_VERTICES,
    )?;
    if n == 0 {
        return Ok(0);
    }
    if n > 30 {
        return Err(Error::ResourceLimit {
            what: "longest-path vertex count",
            value: n as u128,
            limit: 30,
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| w != v)
                .fold(0u32, |acc, &w| acc | (1 << w))
        })
        .collect();
    // ends[mask]: bit v set iff some simple path visits exactly `mask` and ends at v
    let mut ends = vec![0u32; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    let mut best = 1;
    for mask in 1usize..(1 << n) {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        let mut rest = e;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut ext = nbr[v] & !(mask as u32);
            while ext != 0 {
                let w = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[mask | (1 << w)] |= 1 << w;
            }
        }
        if best == n {
            break;
        }
    }
    Ok(best)
}

/// Euler-formula necessary condition for planarity: `m <= 3n - 6` once
/// `n >= 3`. Loops are ignored.
pub fn planarity_prefilter(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return true;
    }
    let m = g.edges().filter(|(u, v)| u != v).count();
    m <= 3 * n - 6
}

/// Backtracking isomorphism test for graphs with at most ten vertices.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    let n = a.n();
    guard::check(
        "isomorphism vertex count",
        n.max(b.n()) as u128,
        guard::MAX_ISOMORPHISM_VERTICES,
    )?;
    if n != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    let key = |g: &Graph, v: usize| (g.degree(v), g.has_loop(v));
    let mut da: Vec<_> = (0..n).map(|v| key(a, v)).collect();
    let mut db: Vec<_> = (0..n).map(|v| key(b, v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return Ok(false);
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend_iso(a, b, 0, &mut map, &mut used))
}

fn extend_iso(a: &Graph, b: &Graph, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let n = a.n();
    if v == n {
        return true;
    }
    for t in 0..n {
        if used[t] || a.degree(v) != b.degree(t) || a.has_loop(v) != b.has_loop(t) {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], t));
        if !consistent {
            continue;
        }
        map[v] = t;
        used[t] = true;
        if extend_iso(a, b, v + 1, map, used) {
            return true;
        }
        used[t] = false;
    }
    map[v] = usize::MAX;
    false
}
