//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its runtime against the allowed budget; the process exits non-zero
//! if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tw_core::csp::{self, brute_force_count, constraint_graph, count_solutions, solve};
use tw_core::decomposition::{
    exact_treewidth, from_elimination_order, make_nice, minfill_decompose, parse_td, validate,
    write_td, TreeDecomposition,
};
use tw_core::graph::{
    complete, connected_graphs, cycle, grid, longest_path_bruteforce, make_grid, matching, path,
    petersen, quotient, random_gnp, random_outerplanar, random_tree, subdivide, Graph,
};
use tw_core::homcount::{brute_force_hom, count_hom};
use tw_core::kpath::{kpath_planar, Branch};
use tw_core::mis::{mis_branching, mis_bruteforce, mis_td};
use tw_core::permpattern::{self, Permutation};
use tw_core::subcount::{
    brute_force_emb, brute_force_sub, count_emb, independent_partitions, SubgraphCounter,
};

type Outcome = Result<String, String>;

/// Number, name, check and runtime budget in seconds.
type Criterion = (u32, &'static str, fn() -> Outcome, Option<u64>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn show(g: &Graph) -> String {
    let e: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!("n={} [{}]", g.n(), e.join(" "))
}

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn worked_examples() -> Outcome {
    let sigma = perm("3 4 5 2 1 7 8 6");
    let pi = perm("2 1 3 4");
    ensure(permpattern::contains(&pi, &sigma), || {
        "2 1 3 4 not found".into()
    })?;
    ensure(!permpattern::contains(&perm("4 3 2 1"), &sigma), || {
        "4 3 2 1 found".into()
    })?;
    let w = permpattern::find_occurrence(&pi, &sigma).ok_or("no witness decoded")?;
    let pattern_of: Vec<usize> = w.iter().map(|&i| sigma.at(i)).collect();
    let order_isomorphic = (0..4)
        .all(|a| (0..4).all(|b| (pattern_of[a] < pattern_of[b]) == (pi.at(a + 1) < pi.at(b + 1))));
    ensure(order_isomorphic, || {
        format!("witness {w:?} is not order-isomorphic")
    })?;
    ensure(
        permpattern::is_occurrence(&pi, &sigma, &[1, 4, 6, 7]),
        || "(1,4,6,7) rejected".into(),
    )?;
    Ok(format!("witness {w:?}, (1,4,6,7) accepted"))
}

fn c4_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (c4, p3, p2) = (cycle(4).unwrap(), path(3), path(2));
    let two = BigUint::from(2u32);
    let trials = 60;
    for _ in 0..trials {
        let g = random_gnp(rng.gen_range(1..=7), rng.gen_range(0.2..0.9), &mut rng);
        let err = |e: tw_core::Error| e.to_string();
        let hom_b = brute_force_hom(&c4, &g).map_err(err)?;
        let rhs_b = brute_force_emb(&c4, &g).map_err(err)?
            + &two * brute_force_emb(&p3, &g).map_err(err)?
            + brute_force_emb(&p2, &g).map_err(err)?;
        let hom_p = count_hom(&c4, &g);
        let rhs_p = count_emb(&c4, &g).map_err(err)?
            + &two * count_emb(&p3, &g).map_err(err)?
            + count_emb(&p2, &g).map_err(err)?;
        ensure(hom_b == rhs_b, || {
            format!("brute force identity fails on {}", show(&g))
        })?;
        ensure(hom_p == rhs_p, || {
            format!("pipeline identity fails on {}", show(&g))
        })?;
        ensure(hom_b == hom_p, || {
            format!("hom counts disagree on {}", show(&g))
        })?;
    }
    Ok(format!("{trials} hosts, brute force and pipeline"))
}

fn partition_sum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let patterns: Vec<Graph> = (1..=5).flat_map(|n| connected_graphs(n).unwrap()).collect();
    let hosts: Vec<Graph> = (0..20)
        .map(|_| random_gnp(rng.gen_range(1..=6), rng.gen_range(0.3..0.8), &mut rng))
        .collect();
    for h in &patterns {
        let parts = independent_partitions(h).map_err(|e| e.to_string())?;
        let quotients: Vec<Graph> = parts.iter().map(|rho| quotient(h, rho).unwrap()).collect();
        for g in &hosts {
            let sum: BigUint = quotients
                .iter()
                .map(|q| brute_force_emb(q, g).unwrap())
                .sum();
            let hom = brute_force_hom(h, g).map_err(|e| e.to_string())?;
            ensure(hom == sum, || {
                format!("{} into {}: {hom} vs {sum}", show(h), show(g))
            })?;
            ensure(count_hom(h, g) == hom, || {
                format!("dp hom differs for {} into {}", show(h), show(g))
            })?;
        }
    }
    Ok(format!(
        "{} connected patterns x {} hosts",
        patterns.len(),
        hosts.len()
    ))
}

fn subgraph_pipeline() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut patterns: Vec<(String, Graph)> = Vec::new();
    // paths by vertex count P1..P4, and the 4-edge path P5 as well
    patterns.extend((1..=5).map(|k| (format!("P{k}"), path(k))));
    patterns.extend((1..=4).map(|k| (format!("M{k}"), matching(k))));
    patterns.extend((3..=4).map(|k| (format!("C{k}"), cycle(k).unwrap())));
    let hosts: Vec<Graph> = (0..50)
        .map(|_| random_gnp(rng.gen_range(1..=8), rng.gen_range(0.2..0.9), &mut rng))
        .collect();
    for (name, h) in &patterns {
        let mut counter = SubgraphCounter::new(h).map_err(|e| e.to_string())?;
        for g in &hosts {
            let fast = counter.sub(g).map_err(|e| e.to_string())?;
            let slow = brute_force_sub(h, g).map_err(|e| e.to_string())?;
            ensure(fast == slow, || {
                format!("{name} in {}: {fast} vs {slow}", show(g))
            })?;
        }
    }
    let names: Vec<&str> = patterns.iter().map(|(n, _)| n.as_str()).collect();
    Ok(format!("{} x {} hosts", names.join(","), hosts.len()))
}

fn all_permutations(k: usize) -> Vec<Permutation> {
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if cur.len() == k {
            out.push(Permutation::new(cur.clone()).unwrap());
            return;
        }
        for v in 1..=k {
            if !cur.contains(&v) {
                cur.push(v);
                rec(k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(k, &mut Vec::new(), &mut out);
    out
}

fn permutation_counting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let patterns: Vec<Permutation> = (1..=4).flat_map(all_permutations).collect();
    let trials = 500;
    for _ in 0..trials {
        let sigma = Permutation::random(rng.gen_range(1..=9), &mut rng);
        for pi in &patterns {
            let fast = permpattern::count_occurrences(pi, &sigma);
            let slow = permpattern::brute_force_count(pi, &sigma).map_err(|e| e.to_string())?;
            ensure(fast == slow, || {
                format!("({pi}) in ({sigma}): {fast} vs {slow}")
            })?;
        }
    }
    let inversion = perm("2 1");
    for _ in 0..100 {
        let sigma = Permutation::random(rng.gen_range(1..=50), &mut rng);
        let c = permpattern::count_occurrences(&inversion, &sigma);
        ensure(c == BigUint::from(sigma.inversions()), || {
            format!("inversions of ({sigma}): {c}")
        })?;
    }
    Ok(format!(
        "{} patterns x {trials} texts, 100 inversion counts",
        patterns.len()
    ))
}

fn csp_engine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let trials = 500;
    for i in 0..trials {
        let inst = csp::random_instance(&mut rng, 5, 4);
        let g = constraint_graph(&inst);
        let expect = brute_force_count(&inst).map_err(|e| e.to_string())?;
        for (label, td) in [
            ("min-fill", minfill_decompose(&g)),
            ("single bag", TreeDecomposition::trivial(&g)),
        ] {
            let got = count_solutions(&inst, &td).map_err(|e| e.to_string())?;
            ensure(got == expect, || {
                format!("instance {i} ({label}): {got} vs {expect}")
            })?;
            let sol = solve(&inst, &td).map_err(|e| e.to_string())?;
            ensure(sol.is_some() != (expect == BigUint::default()), || {
                format!("instance {i}: solve disagrees")
            })?;
            if let Some(f) = sol {
                ensure(inst.is_satisfied(&f), || {
                    format!("instance {i}: invalid assignment")
                })?;
            }
        }
    }
    Ok(format!("{trials} instances, two decompositions each"))
}

fn planar_kpath() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut suite: Vec<Graph> = Vec::new();
    for r in 1..=4 {
        for c in r..=4 {
            suite.push(grid(r, c).unwrap());
        }
    }
    for _ in 0..20 {
        suite.push(random_tree(rng.gen_range(1..=12), &mut rng));
        let n = rng.gen_range(3..=12);
        suite.push(random_outerplanar(n, rng.gen_range(0..=n), &mut rng));
    }
    for (g, per_edge) in [
        (grid(2, 2), 1),
        (grid(2, 2), 2),
        (grid(1, 3), 2),
        (grid(2, 3), 1),
    ] {
        let s = subdivide(&g.unwrap(), per_edge);
        if s.n() <= 12 {
            suite.push(s);
        }
    }
    let mut branches = [0usize; 3];
    let mut queries = 0;
    for g in &suite {
        let longest = longest_path_bruteforce(g).map_err(|e| e.to_string())?;
        let mut previous = true;
        for k in 1..=g.n() {
            let r = kpath_planar(g, k, true).map_err(|e| e.to_string())?;
            queries += 1;
            branches[r.branch as usize] += 1;
            ensure(r.answer == (longest >= k), || {
                format!("{} k={k}: {:?} but longest path {longest}", show(g), r)
            })?;
            ensure(previous || !r.answer, || {
                format!("{} k={k}: not monotone", show(g))
            })?;
            previous = r.answer;
        }
    }
    let snake = kpath_planar(&make_grid(3).unwrap(), 9, true).map_err(|e| e.to_string())?;
    ensure(snake.answer, || "3x3 grid, k=9 answered NO".into())?;
    let names = [
        Branch::NarrowDecomposition,
        Branch::LargeTreewidth,
        Branch::Fallback,
    ];
    let tally: Vec<String> = names
        .iter()
        .map(|b| format!("{}={}", b.name(), branches[*b as usize]))
        .collect();
    Ok(format!(
        "{} graphs, {queries} queries, branches {}; 3x3 grid k=9 YES via {}",
        suite.len(),
        tally.join(" "),
        snake.branch.name()
    ))
}

fn mis_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let trials = 300;
    for _ in 0..trials {
        let g = random_gnp(rng.gen_range(0..=14), rng.gen_range(0.05..0.7), &mut rng);
        let b = mis_branching(&g);
        let t = mis_td(&g, &minfill_decompose(&g)).map_err(|e| e.to_string())?;
        let f = mis_bruteforce(&g).map_err(|e| e.to_string())?;
        ensure(b == t && t == f, || {
            format!("{}: branch {b}, td {t}, brute {f}", show(&g))
        })?;
    }
    for (name, g, expect) in [
        ("Petersen", petersen(), 4),
        ("C5", cycle(5).unwrap(), 2),
        ("K4", complete(4), 1),
    ] {
        let td = minfill_decompose(&g);
        let got = [
            mis_branching(&g),
            mis_td(&g, &td).unwrap(),
            mis_bruteforce(&g).unwrap(),
        ];
        ensure(got == [expect; 3], || {
            format!("{name}: {got:?}, expected {expect}")
        })?;
    }
    Ok(format!("{trials} random graphs, Petersen=4 C5=2 K4=1"))
}

fn decomposition_validity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut checked = 0;
    let mut check = |g: &Graph, td: &TreeDecomposition, what: &str| {
        checked += 1;
        validate(g, td).map_err(|d| format!("{what} on {}: {d}", show(g)))
    };
    for _ in 0..100 {
        let g = random_gnp(rng.gen_range(1..=10), rng.gen_range(0.1..0.8), &mut rng);
        let heuristic = minfill_decompose(&g);
        check(&g, &heuristic, "min-fill")?;
        let exact = exact_treewidth(&g, g.n()).map_err(|e| e.to_string())?;
        check(
            &g,
            exact.decomposition().ok_or("no exact decomposition")?,
            "exact",
        )?;
        let nice = make_nice(&heuristic).map_err(|e| e.to_string())?;
        ensure(nice.width() == heuristic.width(), || {
            "nice form changed the width".into()
        })?;
        check(&g, &nice.flatten(), "nice form")?;
        let mut order: Vec<usize> = (0..g.n()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        check(&g, &from_elimination_order(&g, &order), "elimination order")?;
        let (parsed, n) = parse_td(&write_td(&heuristic, g.n())).map_err(|e| e.to_string())?;
        ensure(n == g.n(), || "round trip lost the vertex count".into())?;
        check(&g, &parsed, "PACE round trip")?;
    }
    let tw = |g: &Graph| exact_treewidth(g, g.n()).unwrap().width().unwrap();
    for n in 2..=12 {
        let t = random_tree(n, &mut rng);
        ensure(tw(&t) == 1, || {
            format!("tree {} has treewidth {}", show(&t), tw(&t))
        })?;
    }
    for n in 3..=12 {
        ensure(tw(&cycle(n).unwrap()) == 2, || {
            format!("C{n} treewidth {}", tw(&cycle(n).unwrap()))
        })?;
    }
    for k in 1..=6 {
        ensure(tw(&complete(k)) == k - 1, || {
            format!("K{k} treewidth {}", tw(&complete(k)))
        })?;
    }
    let g3 = make_grid(3).unwrap();
    ensure(tw(&g3) == 3, || format!("3x3 grid treewidth {}", tw(&g3)))?;
    Ok(format!(
        "{checked} decompositions valid; trees 1, cycles 2, K_k k-1, 3x3 grid 3"
    ))
}

fn verify_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tw"))
            .arg("verify")
            .output()
            .map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success(), || {
        format!("verify failed:\n{}", String::from_utf8_lossy(&a.stdout))
    })?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    ensure(!a.stdout.is_empty(), || "empty report".into())?;
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "worked permutation examples", worked_examples, Some(1)),
        (2, "C4 homomorphism identity", c4_identity, Some(10)),
        (3, "partition-sum identity", partition_sum, Some(60)),
        (4, "subgraph counting pipeline", subgraph_pipeline, None),
        (
            5,
            "permutation occurrence counts",
            permutation_counting,
            None,
        ),
        (6, "CSP counting", csp_engine, None),
        (7, "planar win/win k-path", planar_kpath, None),
        (8, "independent set agreement", mis_agreement, None),
        (9, "decomposition validity", decomposition_validity, None),
        (10, "verify determinism", verify_determinism, None),
    ];
    let mut failed = 0;
    for (id, name, check, budget) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let over = budget.is_some_and(|s| elapsed > Duration::from_secs(s));
        let timing = match budget {
            Some(s) => format!("{:.2}s, budget {s}s", elapsed.as_secs_f64()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        match outcome {
            Ok(detail) if !over => println!("PASS criterion {id:>2} {name}: {detail} ({timing})"),
            Ok(detail) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: over budget; {detail} ({timing})");
            }
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {id:>2} {name}: {msg} ({timing})");
            }
        }
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
