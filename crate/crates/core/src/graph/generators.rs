use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// The `k x k` grid; vertex `(r, c)` has id `r * k + c`.
pub fn make_grid(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::invalid("grid side must be positive"));
    }
    grid(k, k)
}

/// The `rows x cols` grid; vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 {
        return Err(Error::invalid("grid dimensions must be positive"));
    }
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1)?;
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols)?;
            }
        }
    }
    Ok(g)
}

pub fn edgeless(n: usize) -> Graph {
    Graph::new(n)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Path on `n` vertices (`n - 1` edges).
pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v).unwrap();
    }
    g
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::invalid("a simple cycle needs at least 3 vertices"));
    }
    let mut g = path(n);
    g.add_edge(n - 1, 0)?;
    Ok(g)
}

/// Star with centre `0` and the given number of leaves.
pub fn star(leaves: usize) -> Graph {
    let mut g = Graph::new(leaves + 1);
    for v in 1..=leaves {
        g.add_edge(0, v).unwrap();
    }
    g
}

/// `k` disjoint edges `{2i, 2i+1}`.
pub fn matching(k: usize) -> Graph {
    let mut g = Graph::new(2 * k);
    for i in 0..k {
        g.add_edge(2 * i, 2 * i + 1).unwrap();
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn petersen() -> Graph {
    let mut g = Graph::new(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5).unwrap();
        g.add_edge(i, i + 5).unwrap();
        g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
    }
    g
}

/// Erdős–Rényi G(n, p).
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Uniform random recursive tree: vertex `v > 0` attaches to a random
/// earlier vertex.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        g.add_edge(parent, v).unwrap();
    }
    g
}

/// Random outerplanar graph: a Hamiltonian cycle `0..n` plus a random set
/// of pairwise non-crossing chords.
pub fn random_outerplanar<R: Rng + ?Sized>(n: usize, chords: usize, rng: &mut R) -> Graph {
    if n < 3 {
        return path(n);
    }
    let mut g = cycle(n).unwrap();
    let mut candidates: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 2..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(u == 0 && v == n - 1))
        .collect();
    candidates.shuffle(rng);
    let mut placed: Vec<(usize, usize)> = Vec::new();
    for (u, v) in candidates {
        if placed.len() == chords {
            break;
        }
        // chords (a,b) and (u,v) cross iff exactly one of a,b lies strictly inside (u,v)
        let crosses = placed.iter().any(|&(a, b)| {
            (u < a && a < v) != (u < b && b < v) && a != u && a != v && b != u && b != v
        });
        if !crosses {
            placed.push((u, v));
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// Replaces every edge of `g` by a path of `per_edge + 1` edges.
pub fn subdivide(g: &Graph, per_edge: usize) -> Graph {
    let edges: Vec<_> = g.edges().collect();
    let mut out = Graph::new(g.n() + edges.len() * per_edge);
    let mut next = g.n();
    for (u, v) in edges {
        let mut prev = u;
        for _ in 0..per_edge {
            out.add_edge(prev, next).unwrap();
            prev = next;
            next += 1;
        }
        out.add_edge(prev, v).unwrap();
    }
    out
}

/// One representative of every isomorphism class of connected graphs on
/// exactly `n` vertices, found by filtering all labelled graphs.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    crate::guard::check(
        "labelled graphs to enumerate",
        1u128 << pairs.len().min(127),
        1 << 15,
    )?;
    let mut reps: Vec<Graph> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let g = Graph::from_edges(n, &edges)?;
        if !g.is_connected() {
            continue;
        }
        let mut fresh = true;
        for r in &reps {
            if r.m() == g.m() && super::is_isomorphic(r, &g)? {
                fresh = false;
                break;
            }
        }
        if fresh {
            reps.push(g);
        }
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{longest_path_bruteforce, planarity_prefilter};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_class_counts() {
        let counts: Vec<usize> = (1..=5)
            .map(|n| connected_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21]);
    }

    #[test]
    fn grid_sizes() {
        let g1 = make_grid(1).unwrap();
        assert_eq!((g1.n(), g1.m()), (1, 0));
        let g3 = make_grid(3).unwrap();
        assert_eq!((g3.n(), g3.m()), (9, 12));
        for k in 1..=6 {
            assert_eq!(make_grid(k).unwrap().m(), 2 * k * (k - 1));
        }
        assert!(make_grid(0).is_err());
    }

    #[test]
    fn grids_have_snake_paths() {
        for k in 1..=4 {
            let g = make_grid(k).unwrap();
            assert_eq!(longest_path_bruteforce(&g).unwrap(), k * k);
        }
    }

    #[test]
    fn grid_adjacency_is_manhattan_distance_one() {
        let k = 4;
        let g = make_grid(k).unwrap();
        for a in 0..k * k {
            for b in 0..k * k {
                let d = (a / k).abs_diff(b / k) + (a % k).abs_diff(b % k);
                assert_eq!(g.has_edge(a, b), d == 1);
            }
        }
    }

    #[test]
    fn named_graphs() {
        let p = petersen();
        assert_eq!((p.n(), p.m(), p.max_degree()), (10, 15, 3));
        assert_eq!(complete_bipartite(3, 3).m(), 9);
        assert_eq!(matching(3).m(), 3);
        assert!(cycle(2).is_err());
    }

    #[test]
    fn outerplanar_generator_stays_sparse() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 3..12 {
            let g = random_outerplanar(n, n, &mut rng);
            // outerplanar graphs have at most 2n - 3 edges
            assert!(g.m() <= 2 * n - 3, "n={n} m={}", g.m());
            assert!(planarity_prefilter(&g));
        }
        let t = random_tree(9, &mut rng);
        assert_eq!(t.m(), 8);
        assert!(t.is_connected());
        let s = subdivide(&crate::graph::cycle(4).unwrap(), 1);
        assert_eq!((s.n(), s.m()), (8, 8));
    }
}
