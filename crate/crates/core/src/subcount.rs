//! Counting injective homomorphisms and subgraph copies through
//! homomorphism counts.
//!
//! Every homomorphism `H -> G` into a loopless host identifies the vertices
//! of some independent partition `rho` of `V(H)` and is injective on the
//! quotient `H / rho`, so `#Hom(H, G) = sum_rho #Emb(H / rho, G)`. Peeling
//! off the identity partition and recursing on the strictly smaller
//! quotients writes `#Emb(H, G)` as a fixed linear combination of
//! `#Hom(H / rho, G)` values. The quotient of a quotient is again a
//! quotient of `H`, so the recursion runs over partitions of `V(H)` and is
//! memoised on them.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{is_isomorphic, Graph, VertexPartition};
use crate::guard;
use crate::homcount::count_hom;

/// All partitions of `V(H)` whose blocks are independent sets, in
/// lexicographic order of their block-label sequences. The identity
/// partition is last.
pub fn independent_partitions(h: &Graph) -> Result<Vec<VertexPartition>> {
    guard::check(
        "partition pattern vertices",
        h.n() as u128,
        guard::MAX_PARTITION_VERTICES,
    )?;
    let conflict: Vec<Vec<bool>> = (0..h.n())
        .map(|u| (0..h.n()).map(|v| u != v && h.has_edge(u, v)).collect())
        .collect();
    let mut out = Vec::new();
    for_each_grouping(h.n(), &conflict, |labels| {
        out.push(VertexPartition::from_labels(labels))
    });
    Ok(out)
}

/// Calls `visit` with every restricted-growth labelling of `0..n` in which
/// no two conflicting elements share a label.
fn for_each_grouping(n: usize, conflict: &[Vec<bool>], mut visit: impl FnMut(&[usize])) {
    fn rec(
        i: usize,
        used: usize,
        labels: &mut Vec<usize>,
        conflict: &[Vec<bool>],
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if i == labels.len() {
            visit(labels);
            return;
        }
        for l in 0..=used {
            if l < used && (0..i).any(|j| labels[j] == l && conflict[i][j]) {
                continue;
            }
            labels[i] = l;
            rec(i + 1, used.max(l + 1), labels, conflict, visit);
        }
    }
    let mut labels = vec![0; n];
    rec(0, 0, &mut labels, conflict, &mut visit);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionTerm {
    pub partition: VertexPartition,
    /// `H / partition`, loopless because the blocks are independent.
    pub quotient: Graph,
    pub coefficient: BigInt,
}

/// `#Emb(H, G) = sum over terms of coefficient * #Hom(quotient, G)`, valid
/// for every loopless host `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomExpansion {
    pattern: Graph,
    terms: Vec<ExpansionTerm>,
}

/// Terms whose quotients are isomorphic, merged into one representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupedTerm {
    pub quotient: Graph,
    pub coefficient: BigInt,
    /// Number of partitions merged into this term.
    pub partitions: usize,
}

fn loopless_quotient(h: &Graph, rho: &VertexPartition) -> Graph {
    let labels = rho.labels();
    let mut q = Graph::new(rho.num_blocks());
    for (u, v) in h.edges() {
        q.add_edge(labels[u], labels[v])
            .expect("blocks are independent");
    }
    q
}

/// Expands `#Emb(H, .)` into homomorphism counts of quotients of `H`.
///
/// Partitions are processed from finest to coarsest. Each pending
/// `#Emb(H / tau)` term with multiplicity `e` contributes `e * #Hom(H / tau)`
/// and subtracts `e` from the pending term of every strictly coarser
/// independent partition, which is the recursion applied to `H / tau`.
pub fn emb_to_hom_expansion(h: &Graph) -> Result<HomExpansion> {
    if h.has_loops() {
        return Err(Error::invalid("pattern must be loopless"));
    }
    let parts = independent_partitions(h)?;
    let index: HashMap<Vec<usize>, usize> = parts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.labels(), i))
        .collect();
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(parts[i].num_blocks()));

    let mut pending = vec![BigInt::zero(); parts.len()];
    let mut coefficient = vec![BigInt::zero(); parts.len()];
    pending[index[&(0..h.n()).collect::<Vec<_>>()]] = BigInt::one();
    for &t in &order {
        if pending[t].is_zero() {
            continue;
        }
        let e = std::mem::take(&mut pending[t]);
        let tau = &parts[t];
        let q = loopless_quotient(h, tau);
        // blocks of tau may be grouped when no edge of H runs between them
        let conflict: Vec<Vec<bool>> = (0..q.n())
            .map(|a| (0..q.n()).map(|b| a != b && q.has_edge(a, b)).collect())
            .collect();
        let vertex_block = tau.labels();
        for_each_grouping(q.n(), &conflict, |group| {
            if group.iter().enumerate().all(|(b, &g)| b == g) {
                return;
            }
            let labels: Vec<usize> = vertex_block.iter().map(|&b| group[b]).collect();
            pending[index[&labels]] -= &e;
        });
        coefficient[t] += e;
    }

    let terms = parts
        .into_iter()
        .zip(coefficient)
        .filter(|(_, c)| !c.is_zero())
        .map(|(partition, coefficient)| ExpansionTerm {
            quotient: loopless_quotient(h, &partition),
            partition,
            coefficient,
        })
        .collect();
    Ok(HomExpansion {
        pattern: h.clone(),
        terms,
    })
}

impl HomExpansion {
    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn terms(&self) -> &[ExpansionTerm] {
        &self.terms
    }

    pub fn coefficient_of(&self, rho: &VertexPartition) -> BigInt {
        self.terms
            .iter()
            .find(|t| &t.partition == rho)
            .map_or_else(BigInt::zero, |t| t.coefficient.clone())
    }

    /// Merges terms with isomorphic quotients, dropping groups whose
    /// coefficients cancel. Groups appear in order of first occurrence.
    pub fn grouped(&self) -> Result<Vec<GroupedTerm>> {
        let mut groups: Vec<GroupedTerm> = Vec::new();
        let mut buckets: HashMap<(usize, usize, Vec<usize>), Vec<usize>> = HashMap::new();
        for term in &self.terms {
            let q = &term.quotient;
            let mut degrees: Vec<usize> = (0..q.n()).map(|v| q.degree(v)).collect();
            degrees.sort_unstable();
            let bucket = buckets.entry((q.n(), q.m(), degrees)).or_default();
            let mut home = None;
            for &gi in bucket.iter() {
                if is_isomorphic(&groups[gi].quotient, q)? {
                    home = Some(gi);
                    break;
                }
            }
            match home {
                Some(gi) => {
                    groups[gi].coefficient += &term.coefficient;
                    groups[gi].partitions += 1;
                }
                None => {
                    bucket.push(groups.len());
                    groups.push(GroupedTerm {
                        quotient: q.clone(),
                        coefficient: term.coefficient.clone(),
                        partitions: 1,
                    });
                }
            }
        }
        groups.retain(|g| !g.coefficient.is_zero());
        Ok(groups)
    }

    /// `sum coefficient * #Hom(quotient, G)` over the ungrouped terms.
    pub fn evaluate(&self, g: &Graph) -> Result<BigUint> {
        let sum = self
            .terms
            .iter()
            .map(|t| &t.coefficient * BigInt::from(count_hom(&t.quotient, g)))
            .sum();
        nonnegative(sum)
    }
}

fn nonnegative(x: BigInt) -> Result<BigUint> {
    if x.is_negative() {
        return Err(Error::Internal(format!("embedding count evaluated to {x}")));
    }
    Ok(x.to_biguint().unwrap())
}

/// Precomputed expansion and automorphism count for one pattern, for
/// counting its embeddings and copies in many hosts.
#[derive(Clone, Debug)]
pub struct SubgraphCounter {
    expansion: HomExpansion,
    grouped: Vec<GroupedTerm>,
    automorphisms: Option<BigUint>,
}

impl SubgraphCounter {
    pub fn new(h: &Graph) -> Result<Self> {
        let expansion = emb_to_hom_expansion(h)?;
        let grouped = expansion.grouped()?;
        Ok(SubgraphCounter {
            expansion,
            grouped,
            automorphisms: None,
        })
    }

    pub fn expansion(&self) -> &HomExpansion {
        &self.expansion
    }

    pub fn grouped_terms(&self) -> &[GroupedTerm] {
        &self.grouped
    }

    pub fn emb(&self, g: &Graph) -> Result<BigUint> {
        if g.has_loops() {
            return Err(Error::invalid("host graph must be loopless"));
        }
        let sum = self
            .grouped
            .iter()
            .map(|t| &t.coefficient * BigInt::from_biguint(Sign::Plus, count_hom(&t.quotient, g)))
            .sum();
        nonnegative(sum)
    }

    pub fn automorphisms(&mut self) -> Result<BigUint> {
        if self.automorphisms.is_none() {
            self.automorphisms = Some(count_aut(self.expansion.pattern())?);
        }
        Ok(self.automorphisms.clone().unwrap())
    }

    pub fn sub(&mut self, g: &Graph) -> Result<BigUint> {
        let emb = self.emb(g)?;
        let aut = self.automorphisms()?;
        let (q, r) = emb.div_rem(&aut);
        if !r.is_zero() {
            return Err(Error::Internal(format!(
                "{emb} embeddings are not a multiple of {aut} automorphisms"
            )));
        }
        Ok(q)
    }
}

/// Number of injective homomorphisms `H -> G`.
pub fn count_emb(h: &Graph, g: &Graph) -> Result<BigUint> {
    SubgraphCounter::new(h)?.emb(g)
}

/// Number of subgraphs of `G` isomorphic to `H`.
pub fn count_sub(h: &Graph, g: &Graph) -> Result<BigUint> {
    SubgraphCounter::new(h)?.sub(g)
}

/// Number of permutations of `V(H)` that map edges onto edges and
/// non-edges onto non-edges.
pub fn count_aut(h: &Graph) -> Result<BigUint> {
    let n = h.n();
    guard::check(
        "automorphism pattern vertices",
        n as u128,
        guard::MAX_AUTOMORPHISM_VERTICES,
    )?;
    fn rec(h: &Graph, v: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        if v == h.n() {
            return 1;
        }
        let mut total = 0;
        for t in 0..h.n() {
            if used[t] || h.degree(t) != h.degree(v) || h.has_loop(t) != h.has_loop(v) {
                continue;
            }
            if (0..v).all(|u| h.has_edge(u, v) == h.has_edge(map[u], t)) {
                used[t] = true;
                map[v] = t;
                total += rec(h, v + 1, map, used);
                used[t] = false;
            }
        }
        total
    }
    Ok(BigUint::from(rec(
        h,
        0,
        &mut vec![0; n],
        &mut vec![false; n],
    )))
}

/// Exhaustive count of injective edge-preserving maps.
pub fn brute_force_emb(h: &Graph, g: &Graph) -> Result<BigUint> {
    let (k, n) = (h.n(), g.n());
    guard::check(
        "injective map space",
        guard::falling_factorial(n, k),
        guard::MAX_ENUMERATION,
    )?;
    fn rec(h: &Graph, g: &Graph, v: usize, map: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        if v == h.n() {
            return 1;
        }
        let mut total = 0;
        for t in 0..g.n() {
            if used[t] || (h.has_loop(v) && !g.has_loop(t)) {
                continue;
            }
            if h.neighbors(v)
                .iter()
                .filter(|&&u| u < v)
                .all(|&u| g.has_edge(map[u], t))
            {
                used[t] = true;
                map[v] = t;
                total += rec(h, g, v + 1, map, used);
                used[t] = false;
            }
        }
        total
    }
    Ok(BigUint::from(rec(
        h,
        g,
        0,
        &mut vec![0; k],
        &mut vec![false; n],
    )))
}

/// Exhaustive count of subgraphs of `G` isomorphic to `H`: every vertex
/// subset of size `|V(H)|` paired with every edge subset of size `|E(H)|`
/// inside it.
pub fn brute_force_sub(h: &Graph, g: &Graph) -> Result<BigUint> {
    let (k, e) = (h.n(), h.m());
    let inner_pairs = k * k.saturating_sub(1) / 2;
    let space = guard::binomial(g.n(), k).saturating_mul(guard::binomial(inner_pairs, e));
    guard::check(
        "vertex and edge subset space",
        space,
        guard::MAX_ENUMERATION,
    )?;
    if k > g.n() {
        return Ok(BigUint::zero());
    }
    let mut count: u64 = 0;
    for_each_subset(g.n(), k, |subset| {
        let induced = g.induced_subgraph(subset);
        let edges: Vec<(usize, usize)> = induced.edges().collect();
        for_each_subset(edges.len(), e, |chosen| {
            let copy = Graph::from_edges(k, &chosen.iter().map(|&i| edges[i]).collect::<Vec<_>>())
                .unwrap();
            if is_isomorphic(&copy, h).unwrap() {
                count += 1;
            }
        });
    });
    Ok(BigUint::from(count))
}

fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, edgeless, matching, path, random_gnp, star};
    use crate::homcount::brute_force_hom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn part(n: usize, blocks: &[&[usize]]) -> VertexPartition {
        VertexPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    /// Closed form of the expansion coefficient: the partition-lattice
    /// Moebius function, prod over blocks of (-1)^(|B|-1) (|B|-1)!.
    fn mobius(rho: &VertexPartition) -> BigInt {
        rho.blocks()
            .iter()
            .map(|b| {
                let f: BigInt = (1..b.len()).map(BigInt::from).product();
                if b.len() % 2 == 0 {
                    -f
                } else {
                    f
                }
            })
            .product()
    }

    #[test]
    fn four_cycle_partitions() {
        // C4 on 1-2-3-4 is 0-1-2-3 here
        let parts = independent_partitions(&cycle(4).unwrap()).unwrap();
        let mut expect = vec![
            VertexPartition::identity(4),
            part(4, &[&[0, 2], &[1], &[3]]),
            part(4, &[&[1, 3], &[0], &[2]]),
            part(4, &[&[0, 2], &[1, 3]]),
        ];
        expect.sort();
        let mut got = parts.clone();
        got.sort();
        assert_eq!(got, expect);
        assert_eq!(parts.last().unwrap(), &VertexPartition::identity(4));
    }

    #[test]
    fn partition_counts() {
        assert_eq!(
            independent_partitions(&complete(3)).unwrap(),
            vec![VertexPartition::identity(3)]
        );
        assert_eq!(independent_partitions(&edgeless(3)).unwrap().len(), 5);
        // Bell numbers on edgeless patterns
        for (n, bell) in [(0, 1), (1, 1), (4, 15), (6, 203)] {
            assert_eq!(independent_partitions(&edgeless(n)).unwrap().len(), bell);
        }
        if !guard::overridden() {
            assert!(independent_partitions(&edgeless(11)).is_err());
        }
    }

    #[test]
    fn path_expansion() {
        let e = emb_to_hom_expansion(&path(3)).unwrap();
        assert_eq!(e.terms().len(), 2);
        assert_eq!(e.coefficient_of(&VertexPartition::identity(3)), big(1));
        let merged = part(3, &[&[0, 2], &[1]]);
        assert_eq!(e.coefficient_of(&merged), big(-1));
        let term = e.terms().iter().find(|t| t.partition == merged).unwrap();
        assert_eq!(term.quotient, path(2));
    }

    #[test]
    fn four_cycle_expansion() {
        let e = emb_to_hom_expansion(&cycle(4).unwrap()).unwrap();
        assert_eq!(e.coefficient_of(&VertexPartition::identity(4)), big(1));
        assert_eq!(e.coefficient_of(&part(4, &[&[0, 2], &[1], &[3]])), big(-1));
        assert_eq!(e.coefficient_of(&part(4, &[&[1, 3], &[0], &[2]])), big(-1));
        assert_eq!(e.coefficient_of(&part(4, &[&[0, 2], &[1, 3]])), big(1));
        let grouped = e.grouped().unwrap();
        let coeffs: Vec<(usize, BigInt)> = grouped
            .iter()
            .map(|g| (g.quotient.n(), g.coefficient.clone()))
            .collect();
        assert_eq!(coeffs.len(), 3);
        assert!(coeffs.contains(&(4, big(1))));
        assert!(coeffs.contains(&(3, big(-2))));
        assert!(coeffs.contains(&(2, big(1))));
    }

    #[test]
    fn triangle_expansion_is_trivial() {
        let e = emb_to_hom_expansion(&complete(3)).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.terms()[0].coefficient, big(1));
    }

    #[test]
    fn recursion_agrees_with_mobius_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..40 {
            let h = random_gnp(rng.gen_range(1..=7), rng.gen_range(0.1..0.6), &mut rng);
            let e = emb_to_hom_expansion(&h).unwrap();
            let parts = independent_partitions(&h).unwrap();
            assert_eq!(e.terms().len(), parts.len());
            for rho in &parts {
                assert_eq!(e.coefficient_of(rho), mobius(rho), "{h:?} {rho:?}");
            }
        }
    }

    #[test]
    fn quotients_never_gain_edges() {
        for h in [matching(3), path(5), cycle(5).unwrap(), star(4)] {
            for t in emb_to_hom_expansion(&h).unwrap().terms() {
                assert!(t.quotient.m() <= h.m());
            }
        }
    }

    #[test]
    fn embedding_examples() {
        let k3 = complete(3);
        assert_eq!(count_emb(&cycle(4).unwrap(), &k3).unwrap(), BigUint::zero());
        assert_eq!(count_emb(&path(3), &k3).unwrap(), BigUint::from(6u32));
        let g = random_gnp(7, 0.5, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(count_emb(&path(2), &g).unwrap(), BigUint::from(2 * g.m()));
        assert_eq!(count_sub(&path(2), &k3).unwrap(), BigUint::from(3u32));
        assert_eq!(count_sub(&path(3), &k3).unwrap(), BigUint::from(3u32));
        let mut looped = Graph::with_loops(2);
        looped.add_edge(0, 0).unwrap();
        assert!(count_emb(&path(2), &looped).is_err());
    }

    #[test]
    fn automorphisms() {
        for k in 2..=7 {
            assert_eq!(count_aut(&path(k)).unwrap(), BigUint::from(2u32));
        }
        assert_eq!(count_aut(&cycle(4).unwrap()).unwrap(), BigUint::from(8u32));
        for k in 1..=4u32 {
            let expect = 2u64.pow(k) * (1..=k as u64).product::<u64>();
            assert_eq!(
                count_aut(&matching(k as usize)).unwrap(),
                BigUint::from(expect)
            );
        }
        assert_eq!(count_aut(&complete(5)).unwrap(), BigUint::from(120u32));
        if !guard::overridden() {
            assert!(count_aut(&edgeless(10)).is_err());
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_emb(&path(2), &path(2)).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            brute_force_sub(&cycle(4).unwrap(), &cycle(4).unwrap()).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            brute_force_emb(&path(2), &edgeless(4)).unwrap(),
            BigUint::zero()
        );
        assert_eq!(
            brute_force_sub(&path(3), &complete(3)).unwrap(),
            BigUint::from(3u32)
        );
        // K4 has three perfect matchings
        assert_eq!(
            brute_force_sub(&matching(2), &complete(4)).unwrap(),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn oracles_agree_on_random_hosts() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let patterns = [
            path(3),
            path(4),
            cycle(4).unwrap(),
            matching(2),
            star(3),
            complete(3),
        ];
        for h in &patterns {
            let mut counter = SubgraphCounter::new(h).unwrap();
            let aut = count_aut(h).unwrap();
            for _ in 0..20 {
                let g = random_gnp(rng.gen_range(1..=6), 0.5, &mut rng);
                let emb = brute_force_emb(h, &g).unwrap();
                assert_eq!(counter.emb(&g).unwrap(), emb);
                assert_eq!(emb, brute_force_sub(h, &g).unwrap() * &aut);
                assert_eq!(counter.sub(&g).unwrap() * &aut, emb);
                let e = emb_to_hom_expansion(h).unwrap();
                assert_eq!(e.evaluate(&g).unwrap(), emb);
            }
        }
    }

    #[test]
    fn partition_sum_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..40 {
            let h = random_gnp(rng.gen_range(1..=5), 0.5, &mut rng);
            let g = random_gnp(rng.gen_range(1..=6), 0.5, &mut rng);
            let sum: BigUint = independent_partitions(&h)
                .unwrap()
                .iter()
                .map(|rho| brute_force_emb(&loopless_quotient(&h, rho), &g).unwrap())
                .sum();
            assert_eq!(brute_force_hom(&h, &g).unwrap(), sum);
        }
    }
}
