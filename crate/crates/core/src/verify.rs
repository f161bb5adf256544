//! Seeded oracle suites behind `tw verify`. Every suite compares a fast
//! path against an exhaustive oracle on generated instances; the report
//! depends only on the seed.

use std::fmt;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csp::{self, brute_force_count as csp_brute_force};
use crate::decomposition::{
    exact_treewidth, make_nice, minfill_decompose, mmd_lower_bound, validate, TreeDecomposition,
};
use crate::error::Result;
use crate::graph::{
    connected_graphs, cycle, longest_path_bruteforce, make_grid, matching, path, quotient,
    random_gnp, random_outerplanar, random_tree, subdivide, Graph,
};
use crate::homcount::{brute_force_hom, count_hom};
use crate::kpath::kpath_planar;
use crate::mis::{mis_branching, mis_bruteforce, mis_td};
use crate::permpattern::{self, Permutation};
use crate::subcount::{
    brute_force_emb, brute_force_sub, count_emb, independent_partitions, SubgraphCounter,
};

pub const DEFAULT_SEED: u64 = 2718;

/// Failures kept per suite in the report.
const SHOWN_FAILURES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        writeln!(f, "{:<22} {:>6}  result", "suite", "cases")?;
        for s in &self.suites {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{:<22} {:>6}  {status}", s.name, s.cases)?;
            for msg in s.failures.iter().take(SHOWN_FAILURES) {
                writeln!(f, "    {msg}")?;
            }
            if s.failures.len() > SHOWN_FAILURES {
                writeln!(f, "    ... {} more", s.failures.len() - SHOWN_FAILURES)?;
            }
        }
        let passed = self.suites.iter().filter(|s| s.passed()).count();
        writeln!(f, "{passed}/{} suites passed", self.suites.len())
    }
}

struct Suite {
    result: SuiteResult,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite {
            result: SuiteResult {
                name,
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    /// Records one case. An error from the checked code counts as a failure.
    fn case(&mut self, label: impl FnOnce() -> String, check: impl FnOnce() -> Result<bool>) {
        self.result.cases += 1;
        match check() {
            Ok(true) => {}
            Ok(false) => self.result.failures.push(label()),
            Err(e) => self.result.failures.push(format!("{}: {e}", label())),
        }
    }
}

fn edges_of(g: &Graph) -> String {
    let e: Vec<String> = g
        .edges()
        .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
        .collect();
    format!("n={} [{}]", g.n(), e.join(" "))
}

fn worked_examples(_: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("worked-examples");
    let sigma: Permutation = "3 4 5 2 1 7 8 6".parse().unwrap();
    let pi: Permutation = "2 1 3 4".parse().unwrap();
    let reverse: Permutation = "4 3 2 1".parse().unwrap();
    s.case(
        || "sigma contains 2 1 3 4".into(),
        || Ok(permpattern::contains(&pi, &sigma)),
    );
    s.case(
        || "sigma avoids 4 3 2 1".into(),
        || Ok(!permpattern::contains(&reverse, &sigma)),
    );
    s.case(
        || "decoded witness is an occurrence".into(),
        || {
            Ok(permpattern::find_occurrence(&pi, &sigma)
                .is_some_and(|w| permpattern::is_occurrence(&pi, &sigma, &w)))
        },
    );
    s.case(
        || "1 4 6 7 is an occurrence".into(),
        || Ok(permpattern::is_occurrence(&pi, &sigma, &[1, 4, 6, 7])),
    );
    s.case(
        || "3x3 grid has a 9-vertex path".into(),
        || Ok(kpath_planar(&make_grid(3)?, 9, true)?.answer),
    );
    s.result
}

fn c4_identity(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("c4-identity");
    let (c4, p3, p2) = (cycle(4).unwrap(), path(3), path(2));
    for _ in 0..30 {
        let g = random_gnp(rng.gen_range(1..=7), rng.gen_range(0.2..0.8), rng);
        s.case(
            || edges_of(&g),
            || {
                let two = BigUint::from(2u32);
                let brute = brute_force_emb(&c4, &g)?
                    + &two * brute_force_emb(&p3, &g)?
                    + brute_force_emb(&p2, &g)?;
                let fast = count_emb(&c4, &g)? + &two * count_emb(&p3, &g)? + count_emb(&p2, &g)?;
                Ok(brute_force_hom(&c4, &g)? == brute
                    && count_hom(&c4, &g) == fast
                    && brute == fast)
            },
        );
    }
    s.result
}

fn partition_sum(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("partition-sum");
    let patterns: Vec<Graph> = (1..=4).flat_map(|n| connected_graphs(n).unwrap()).collect();
    for h in &patterns {
        for _ in 0..6 {
            let g = random_gnp(rng.gen_range(1..=5), 0.5, rng);
            s.case(
                || format!("{} into {}", edges_of(h), edges_of(&g)),
                || {
                    let mut sum = BigUint::default();
                    for rho in independent_partitions(h)? {
                        sum += brute_force_emb(&quotient(h, &rho)?, &g)?;
                    }
                    Ok(brute_force_hom(h, &g)? == sum)
                },
            );
        }
    }
    s.result
}

fn subgraph_counts(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("subgraph-counts");
    let mut patterns = vec![cycle(3).unwrap(), cycle(4).unwrap()];
    patterns.extend((2..=4).map(path));
    patterns.extend((1..=3).map(matching));
    for h in &patterns {
        for _ in 0..12 {
            let g = random_gnp(rng.gen_range(1..=7), rng.gen_range(0.2..0.8), rng);
            s.case(
                || format!("{} in {}", edges_of(h), edges_of(&g)),
                || Ok(SubgraphCounter::new(h)?.sub(&g)? == brute_force_sub(h, &g)?),
            );
        }
    }
    s.result
}

fn permutation_counts(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("permutation-counts");
    for _ in 0..150 {
        let pi = Permutation::random(rng.gen_range(1..=4), rng);
        let sigma = Permutation::random(rng.gen_range(1..=8), rng);
        s.case(
            || format!("({pi}) in ({sigma})"),
            || {
                Ok(permpattern::count_occurrences(&pi, &sigma)
                    == permpattern::brute_force_count(&pi, &sigma)?)
            },
        );
    }
    let inversion: Permutation = "2 1".parse().unwrap();
    for _ in 0..20 {
        let sigma = Permutation::random(rng.gen_range(1..=30), rng);
        s.case(
            || format!("inversions of ({sigma})"),
            || {
                Ok(permpattern::count_occurrences(&inversion, &sigma)
                    == BigUint::from(sigma.inversions()))
            },
        );
    }
    s.result
}

fn csp_engine(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("csp-engine");
    for i in 0..150 {
        let inst = csp::random_instance(rng, 5, 4);
        s.case(
            || format!("instance {i}"),
            || {
                let g = csp::constraint_graph(&inst);
                let expect = csp_brute_force(&inst)?;
                for td in [minfill_decompose(&g), TreeDecomposition::trivial(&g)] {
                    if csp::count_solutions(&inst, &td)? != expect {
                        return Ok(false);
                    }
                    let sol = csp::solve(&inst, &td)?;
                    if sol.is_some() == (expect == BigUint::default()) {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        );
    }
    s.result
}

fn planar_suite(rng: &mut ChaCha8Rng) -> Vec<Graph> {
    let mut suite: Vec<Graph> = (1..=3).map(|k| make_grid(k).unwrap()).collect();
    suite.push(subdivide(&make_grid(2).unwrap(), 1));
    for _ in 0..8 {
        let n = rng.gen_range(2..=10);
        suite.push(random_tree(n, rng));
        let chords = rng.gen_range(0..=n);
        suite.push(random_outerplanar(n, chords, rng));
    }
    suite
}

fn planar_kpath(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("planar-kpath");
    for g in planar_suite(rng) {
        s.case(
            || edges_of(&g),
            || {
                let longest = longest_path_bruteforce(&g)?;
                for k in 1..=g.n() {
                    if kpath_planar(&g, k, true)?.answer != (longest >= k) {
                        return Ok(false);
                    }
                }
                Ok(true)
            },
        );
    }
    s.result
}

fn independent_sets(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("independent-set");
    for _ in 0..100 {
        let g = random_gnp(rng.gen_range(0..=12), rng.gen_range(0.1..0.7), rng);
        s.case(
            || edges_of(&g),
            || {
                let b = mis_branching(&g);
                Ok(mis_td(&g, &minfill_decompose(&g))? == b && mis_bruteforce(&g)? == b)
            },
        );
    }
    s.result
}

fn decompositions(rng: &mut ChaCha8Rng) -> SuiteResult {
    let mut s = Suite::new("decompositions");
    for _ in 0..50 {
        let g = random_gnp(rng.gen_range(1..=9), rng.gen_range(0.2..0.7), rng);
        s.case(
            || edges_of(&g),
            || {
                let heuristic = minfill_decompose(&g);
                let exact = exact_treewidth(&g, g.n())?;
                let (Some(tw), Some(td)) = (exact.width(), exact.decomposition()) else {
                    return Ok(false);
                };
                let nice = make_nice(&heuristic)?.flatten();
                Ok(validate(&g, &heuristic).is_ok()
                    && validate(&g, td).is_ok()
                    && validate(&g, &nice).is_ok()
                    && td.width() == tw
                    && mmd_lower_bound(&g) <= tw
                    && tw <= heuristic.width())
            },
        );
    }
    s.result
}

type SuiteFn = fn(&mut ChaCha8Rng) -> SuiteResult;

const SUITES: [SuiteFn; 9] = [
    worked_examples,
    c4_identity,
    partition_sum,
    subgraph_counts,
    permutation_counts,
    csp_engine,
    planar_kpath,
    independent_sets,
    decompositions,
];

/// Runs every suite, each on its own generator derived from `seed`.
pub fn run(seed: u64) -> Report {
    let suites = SUITES
        .iter()
        .enumerate()
        .map(|(i, suite)| suite(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64))))
        .collect();
    Report { seed, suites }
}
