//! Permutation pattern containment and counting.
//!
//! The pattern `pi` is read as the point set `{(i, pi(i))}`. Each point is
//! linked to its right/left neighbour by index and its up/down neighbour by
//! value; the union of those two Hamiltonian paths is the incidence graph.
//! An occurrence of `pi` in `sigma` is exactly a map from the points of
//! `pi` to the points of `sigma` that keeps every neighbour pair strictly
//! ordered in the matching coordinate, which is a binary CSP whose
//! constraint graph is the incidence graph.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::csp::{self, Assignment, CspInstance, Relation};
use crate::decomposition::minfill_decompose;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guard;

/// A bijection on `1..=k`, stored as `(pi(1), ..., pi(k))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    values: Vec<usize>,
    inverse: Vec<usize>,
}

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let k = values.len();
        let mut inverse = vec![0; k + 1];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > k {
                return Err(Error::invalid(format!("value {v} outside 1..={k}")));
            }
            if inverse[v] != 0 {
                return Err(Error::invalid(format!("value {v} repeated")));
            }
            inverse[v] = i + 1;
        }
        Ok(Permutation { values, inverse })
    }

    pub fn identity(k: usize) -> Self {
        Permutation::new((1..=k).collect()).unwrap()
    }

    /// Uniformly random permutation of `1..=k`.
    pub fn random<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Self {
        let mut values: Vec<usize> = (1..=k).collect();
        values.shuffle(rng);
        Permutation::new(values).unwrap()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `pi(i)` for `i` in `1..=k`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// `pi^{-1}(y)` for `y` in `1..=k`.
    pub fn position_of(&self, y: usize) -> usize {
        self.inverse[y]
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &y)| Point { x: i + 1, y })
    }

    pub fn contains_point(&self, p: Point) -> bool {
        p.x >= 1 && p.x <= self.len() && self.at(p.x) == p.y
    }

    /// Number of pairs `i < j` with `pi(i) > pi(j)`.
    pub fn inversions(&self) -> usize {
        let v = &self.values;
        (0..v.len())
            .map(|i| v[i + 1..].iter().filter(|&&w| w < v[i]).count())
            .sum()
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Whitespace-separated values, e.g. `6 5 3 1 4 7 2`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::invalid(format!("`{t}` is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(values)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A point `(i, pi(i))`; both coordinates are 1-indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: usize,
    pub y: usize,
}

impl Point {
    pub fn new(x: usize, y: usize) -> Self {
        Point { x, y }
    }
}

/// The four sweep neighbours of a point; `None` where undefined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Neighbors {
    pub right: Option<Point>,
    pub left: Option<Point>,
    pub up: Option<Point>,
    pub down: Option<Point>,
}

pub fn neighbors(pi: &Permutation, p: Point) -> Result<Neighbors> {
    if !pi.contains_point(p) {
        return Err(Error::invalid(format!(
            "({}, {}) is not a point of {pi}",
            p.x, p.y
        )));
    }
    let k = pi.len();
    let by_index = |x: usize| Point::new(x, pi.at(x));
    let by_value = |y: usize| Point::new(pi.position_of(y), y);
    Ok(Neighbors {
        right: (p.x < k).then(|| by_index(p.x + 1)),
        left: (p.x > 1).then(|| by_index(p.x - 1)),
        up: (p.y < k).then(|| by_value(p.y + 1)),
        down: (p.y > 1).then(|| by_value(p.y - 1)),
    })
}

/// Graph on the points of `pi`, with point `(i, pi(i))` as vertex `i - 1`.
pub fn incidence_graph(pi: &Permutation) -> Graph {
    let k = pi.len();
    let mut g = Graph::new(k);
    for x in 1..k {
        g.add_edge(x - 1, x).unwrap();
    }
    for y in 1..k {
        let (a, b) = (pi.position_of(y), pi.position_of(y + 1));
        g.add_edge(a - 1, b - 1).unwrap();
    }
    g
}

/// Result of splitting every degree-4 vertex.
#[derive(Clone, Debug)]
pub struct SplitGraph {
    pub graph: Graph,
    /// `(original, twin)` for each split vertex; contracting these edges
    /// gives back the input graph. Twins are numbered from `n` upwards in
    /// the order of their originals.
    pub split_edges: Vec<(usize, usize)>,
}

/// Replaces each degree-4 vertex `v` by two adjacent vertices of degree
/// 3: `v` keeps its two smallest neighbours, a new twin takes the other two.
pub fn split_degree4(g: &Graph) -> Result<SplitGraph> {
    if g.has_loops() {
        return Err(Error::invalid("cannot split a graph with loops"));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 4) {
        return Err(Error::invalid(format!(
            "vertex {v} has degree {} > 4",
            g.degree(v)
        )));
    }
    let heavy: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 4).collect();
    // neighbour w of v moves to v's twin when it is one of v's two largest neighbours
    let mut twin_of = vec![usize::MAX; g.n()];
    for (i, &v) in heavy.iter().enumerate() {
        twin_of[v] = g.n() + i;
    }
    let mut out = Graph::new(g.n() + heavy.len());
    let side = |v: usize, w: usize| -> usize {
        if twin_of[v] != usize::MAX && g.neighbors(v)[2..].contains(&w) {
            twin_of[v]
        } else {
            v
        }
    };
    for (u, v) in g.edges() {
        out.add_edge(side(u, v), side(v, u))?;
    }
    let mut split_edges = Vec::with_capacity(heavy.len());
    for &v in &heavy {
        out.add_edge(v, twin_of[v])?;
        split_edges.push((v, twin_of[v]));
    }
    Ok(SplitGraph {
        graph: out,
        split_edges,
    })
}

/// The CSP whose solutions are the occurrences of `pi` in `sigma`:
/// variable `i - 1` is the point `(i, pi(i))`, value `j - 1` is the point
/// `(j, sigma(j))`.
///
/// Each point gets one constraint towards its right neighbour (x strictly
/// increasing) and one towards its up neighbour (y strictly increasing).
/// The left and down conditions of a point are the right and up conditions
/// of its neighbour, so they are not registered twice.
pub fn to_csp(pi: &Permutation, sigma: &Permutation) -> CspInstance {
    let n = sigma.len();
    let mut inst = CspInstance::new(pi.len(), n);
    let x_less = Arc::new(Relation::from_fn(n, |a, b| a < b));
    let y_less = Arc::new(Relation::from_fn(n, |a, b| {
        sigma.values[a] < sigma.values[b]
    }));
    for p in pi.points() {
        let nb = neighbors(pi, p).unwrap();
        if let Some(r) = nb.right {
            inst.add_constraint(p.x - 1, r.x - 1, x_less.clone())
                .unwrap();
        }
        if let Some(u) = nb.up {
            inst.add_constraint(p.x - 1, u.x - 1, y_less.clone())
                .unwrap();
        }
    }
    inst
}

/// The index tuple `(f(1), ..., f(k))` (1-indexed) of a CSP solution.
pub fn decode(f: &Assignment) -> Vec<usize> {
    f.0.iter().map(|&j| j + 1).collect()
}

/// Inverse of [`decode`].
pub fn encode(indices: &[usize]) -> Assignment {
    Assignment(indices.iter().map(|&j| j - 1).collect())
}

/// Whether `indices` (1-indexed, length `k`) is an occurrence of `pi` in
/// `sigma`: strictly increasing positions with order-isomorphic values.
pub fn is_occurrence(pi: &Permutation, sigma: &Permutation, indices: &[usize]) -> bool {
    let k = pi.len();
    if indices.len() != k || indices.iter().any(|&j| j == 0 || j > sigma.len()) {
        return false;
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    (0..k).all(|i| {
        (i + 1..k)
            .all(|j| (pi.values[i] < pi.values[j]) == (sigma.at(indices[i]) < sigma.at(indices[j])))
    })
}

/// Number of occurrences of `pi` in `sigma`, counted on the CSP over a
/// min-fill decomposition of the incidence graph.
pub fn count_occurrences(pi: &Permutation, sigma: &Permutation) -> BigUint {
    if pi.len() > sigma.len() {
        return BigUint::zero();
    }
    let inst = to_csp(pi, sigma);
    let td = minfill_decompose(&incidence_graph(pi));
    csp::count_solutions(&inst, &td).expect("min-fill decomposes the incidence graph")
}

/// Some occurrence of `pi` in `sigma`, as a 1-indexed index tuple.
pub fn find_occurrence(pi: &Permutation, sigma: &Permutation) -> Option<Vec<usize>> {
    if pi.len() > sigma.len() {
        return None;
    }
    let inst = to_csp(pi, sigma);
    let td = minfill_decompose(&incidence_graph(pi));
    csp::solve(&inst, &td)
        .expect("min-fill decomposes the incidence graph")
        .map(|f| decode(&f))
}

pub fn contains(pi: &Permutation, sigma: &Permutation) -> bool {
    find_occurrence(pi, sigma).is_some()
}

/// Counts occurrences by checking every `k`-subset of positions.
pub fn brute_force_count(pi: &Permutation, sigma: &Permutation) -> Result<BigUint> {
    let (k, n) = (pi.len(), sigma.len());
    guard::check(
        "pattern subsequences",
        guard::binomial(n, k),
        guard::MAX_ENUMERATION,
    )?;
    if k > n {
        return Ok(BigUint::zero());
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    let mut count: u64 = 0;
    loop {
        if is_occurrence(pi, sigma, &idx) {
            count += 1;
        }
        // next combination in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i + 1) else {
            return Ok(BigUint::from(count));
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
