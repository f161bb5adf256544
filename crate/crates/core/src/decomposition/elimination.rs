use std::collections::BTreeSet;

use super::TreeDecomposition;
use crate::graph::Graph;

fn adjacency_sets(g: &Graph) -> Vec<BTreeSet<usize>> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().copied().filter(|&w| w != v).collect())
        .collect()
}

/// Decomposition induced by eliminating the vertices in `order`: the bag
/// of `v` is `v` together with its neighbours at elimination time, and it
/// hangs below the bag of the earliest-eliminated of those neighbours.
/// Roots of separate components are chained together.
///
/// Panics if `order` is not a permutation of the vertices.
pub fn from_elimination_order(g: &Graph, order: &[usize]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "elimination order must list every vertex");
    if n == 0 {
        return TreeDecomposition::new(vec![Vec::new()], Vec::new());
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        assert!(
            pos[v] == usize::MAX,
            "vertex {v} repeated in elimination order"
        );
        pos[v] = i;
    }
    let mut adj = adjacency_sets(g);
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in later.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &later[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        let mut bag = later.clone();
        bag.push(v);
        bags.push(bag);
        match later.iter().map(|&x| pos[x]).min() {
            Some(p) => edges.push((i, p)),
            None => roots.push(i),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition::new(bags, edges)
}

/// Greedy min-fill elimination order; ties go to the lowest vertex id.
pub fn minfill_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj = adjacency_sets(g);
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for v in (0..n).filter(|&v| alive[v]) {
            let fill = fill_in(&adj, v, best.map(|b| b.0));
            if best.is_none_or(|(f, _)| fill < f) {
                best = Some((fill, v));
                if fill == 0 {
                    break;
                }
            }
        }
        let (_, v) = best.unwrap();
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (a, &x) in nbrs.iter().enumerate() {
            adj[x].remove(&v);
            for &y in &nbrs[a + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// Missing edges among the neighbours of `v`; stops counting once it
/// reaches `cutoff`.
fn fill_in(adj: &[BTreeSet<usize>], v: usize, cutoff: Option<usize>) -> usize {
    let nbrs: Vec<usize> = adj[v].iter().copied().collect();
    let mut fill = 0;
    for (a, &x) in nbrs.iter().enumerate() {
        for &y in &nbrs[a + 1..] {
            if !adj[x].contains(&y) {
                fill += 1;
                if cutoff.is_some_and(|c| fill >= c) {
                    return fill;
                }
            }
        }
    }
    fill
}

pub fn minfill_decompose(g: &Graph) -> TreeDecomposition {
    from_elimination_order(g, &minfill_order(g)).compress()
}

/// Maximum-minimum-degree lower bound on treewidth: the largest minimum
/// degree seen while repeatedly deleting a minimum-degree vertex.
pub fn mmd_lower_bound(g: &Graph) -> usize {
    let n = g.n();
    let mut adj = adjacency_sets(g);
    let mut alive = vec![true; n];
    let mut bound = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .unwrap();
        bound = bound.max(adj[v].len());
        for x in std::mem::take(&mut adj[v]) {
            adj[x].remove(&v);
        }
        alive[v] = false;
    }
    bound
}
