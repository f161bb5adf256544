//! Homomorphism counting `#Hom(H -> G)` by dynamic programming over a tree
//! decomposition of the pattern `H`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::csp::{self, CspInstance, Relation};
use crate::decomposition::{exact_treewidth, minfill_decompose, ExactTreewidth, TreeDecomposition};
use crate::error::Result;
use crate::graph::Graph;
use crate::guard;

/// Patterns up to this many vertices get an optimal-width decomposition.
pub const EXACT_DECOMPOSITION_MAX_VERTICES: usize = 14;

/// Adjacency of `g` as a relation on its vertices (loops included).
pub fn adjacency_relation(g: &Graph) -> Relation {
    Relation::from_fn(g.n(), |a, b| g.has_edge(a, b))
}

fn pattern_decomposition(h: &Graph) -> TreeDecomposition {
    if h.n() <= EXACT_DECOMPOSITION_MAX_VERTICES {
        if let Ok(ExactTreewidth::Found { decomposition, .. }) = exact_treewidth(h, h.n()) {
            return decomposition;
        }
    }
    minfill_decompose(h)
}

/// Number of maps `V(H) -> V(G)` sending every edge of `H` to an edge of
/// `G`. A loop of `H` must land on a loop of `G`, so a looped pattern has
/// no homomorphism into a loopless host. Disconnected patterns are counted
/// as the product over their components.
pub fn count_hom(h: &Graph, g: &Graph) -> BigUint {
    if h.has_loops() && !g.has_loops() {
        return BigUint::zero();
    }
    let adjacency = Arc::new(adjacency_relation(g));
    let looped: Vec<usize> = (0..g.n()).filter(|&v| g.has_loop(v)).collect();
    let mut total = BigUint::one();
    for comp in h.components() {
        let part = h.induced_subgraph(&comp);
        let mut inst = CspInstance::new(part.n(), g.n());
        for (u, v) in part.edges() {
            if u == v {
                inst.restrict_domain(u, &looped).unwrap();
            } else {
                inst.add_constraint(u, v, adjacency.clone()).unwrap();
            }
        }
        let td = pattern_decomposition(&part);
        let count = csp::count_solutions(&inst, &td).expect("pattern decomposition is valid");
        if count.is_zero() {
            return count;
        }
        total *= count;
    }
    total
}

/// Exhaustive count over all `|V(G)|^|V(H)|` maps.
pub fn brute_force_hom(h: &Graph, g: &Graph) -> Result<BigUint> {
    let (k, n) = (h.n(), g.n());
    guard::check(
        "homomorphism map space",
        guard::saturating_pow(n, k),
        guard::MAX_ENUMERATION,
    )?;
    if k == 0 {
        return Ok(BigUint::one());
    }
    if n == 0 {
        return Ok(BigUint::zero());
    }
    let edges: Vec<(usize, usize)> = h.edges().collect();
    let mut f = vec![0usize; k];
    let mut count: u64 = 0;
    loop {
        if edges.iter().all(|&(u, v)| g.has_edge(f[u], f[v])) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(BigUint::from(count));
            }
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}
