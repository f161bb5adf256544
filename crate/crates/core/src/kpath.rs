//! Deciding whether a graph has a simple path on `k` vertices, by dynamic
//! programming over a tree decomposition, and the planar win/win driver
//! built on top of it.
//!
//! Planar graphs have a `w x w` grid minor once their treewidth is large
//! enough, and a `w x w` grid has a snake path through all `w^2` vertices.
//! Since no minor operation lengthens the longest path, a planar graph of
//! large treewidth has a long path. So either the treewidth is small and the
//! DP is cheap, or the answer is YES without any search.

use std::collections::HashMap;

use crate::decomposition::{
    exact_treewidth, make_nice, minfill_decompose, mmd_lower_bound, validate, ExactTreewidth,
    NiceKind, TreeDecomposition,
};
use crate::error::{Error, Result};
use crate::graph::{planarity_prefilter, Graph};
use crate::guard;

/// What the far end of a path segment is: a bag vertex, or a vertex that
/// has already been forgotten and is therefore an end of the final path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Far {
    Vertex(usize),
    Final,
}

/// Role of one bag vertex in a partial solution, a set of vertex-disjoint
/// path segments. The edges chosen so far are those decided at forget
/// nodes below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Slot {
    Out,
    /// On the path, no chosen edges yet.
    Isolated,
    /// One chosen edge; end of a segment whose other end is given.
    End(Far),
    /// Two chosen edges.
    Inner,
}

impl Slot {
    fn degree(self) -> usize {
        match self {
            Slot::Out | Slot::Isolated => 0,
            Slot::End(_) => 1,
            Slot::Inner => 2,
        }
    }

    fn open(self) -> bool {
        matches!(self, Slot::Isolated | Slot::End(_))
    }
}

type State = Vec<Slot>;
type Table = HashMap<State, usize>;

enum Link {
    Joined,
    /// The merged segment has two forgotten ends, so it is a whole path.
    Closed,
    Rejected,
}

struct PathDp<'a> {
    g: &'a Graph,
    k: usize,
    found: bool,
}

fn position(bag: &[usize], v: usize) -> usize {
    bag.binary_search(&v).expect("segment ends stay in the bag")
}

fn finals(state: &State) -> usize {
    state
        .iter()
        .filter(|s| **s == Slot::End(Far::Final))
        .count()
}

fn keep_max(table: &mut Table, state: State, count: usize) {
    let e = table.entry(state).or_insert(count);
    *e = (*e).max(count);
}

/// Adds the edge between bag positions `a` and `b`.
fn link(bag: &[usize], state: &mut State, a: usize, b: usize) -> Link {
    let far = |p: usize, q: usize, state: &State| match state[p] {
        Slot::Isolated => Some(Far::Vertex(bag[p])),
        Slot::End(Far::Vertex(x)) if x == bag[q] => None,
        Slot::End(f) => Some(f),
        _ => None,
    };
    let (Some(far_a), Some(far_b)) = (far(a, b, state), far(b, a, state)) else {
        return Link::Rejected;
    };
    state[a] = if state[a] == Slot::Isolated {
        Slot::End(far_b)
    } else {
        Slot::Inner
    };
    state[b] = if state[b] == Slot::Isolated {
        Slot::End(far_a)
    } else {
        Slot::Inner
    };
    if let Far::Vertex(x) = far_a {
        if x != bag[a] {
            state[position(bag, x)] = Slot::End(far_b);
        }
    }
    if let Far::Vertex(x) = far_b {
        if x != bag[b] {
            state[position(bag, x)] = Slot::End(far_a);
        }
    }
    if far_a == Far::Final && far_b == Far::Final {
        Link::Closed
    } else {
        Link::Joined
    }
}

impl PathDp<'_> {
    /// A whole path has been completed; it is the answer only if no other
    /// segment is still open.
    fn close(&mut self, state: &State, count: usize) {
        if count >= self.k && !state.iter().any(|s| s.open()) {
            self.found = true;
        }
    }

    fn introduce(&self, child: &Table, pos: usize) -> Table {
        let mut out = Table::with_capacity(child.len() * 2);
        for (state, &count) in child {
            for (slot, add) in [(Slot::Out, 0), (Slot::Isolated, 1)] {
                let mut s = state.clone();
                s.insert(pos, slot);
                keep_max(&mut out, s, (count + add).min(self.k));
            }
        }
        out
    }

    fn forget(&mut self, child: &Table, bag: &[usize], pos: usize) -> Table {
        let v = bag[pos];
        let mut out = Table::with_capacity(child.len());
        for (state, &count) in child {
            if !state[pos].open() {
                let mut s = state.clone();
                s.remove(pos);
                keep_max(&mut out, s, count);
                continue;
            }
            let candidates: Vec<usize> = (0..bag.len())
                .filter(|&j| j != pos && state[j].open() && self.g.has_edge(v, bag[j]))
                .collect();
            let mut options: Vec<Vec<usize>> = vec![vec![]];
            options.extend(candidates.iter().map(|&j| vec![j]));
            if state[pos] == Slot::Isolated {
                for (x, &a) in candidates.iter().enumerate() {
                    options.extend(candidates[x + 1..].iter().map(|&b| vec![a, b]));
                }
            }
            'option: for option in options {
                let mut s = state.clone();
                let mut closed = false;
                for &j in &option {
                    match link(bag, &mut s, pos, j) {
                        Link::Joined => {}
                        Link::Closed => closed = true,
                        Link::Rejected => continue 'option,
                    }
                }
                let last = s.remove(pos);
                match last {
                    _ if closed => {}
                    Slot::Inner => {}
                    Slot::End(Far::Vertex(x)) => {
                        let p = position(bag, x);
                        s[if p > pos { p - 1 } else { p }] = Slot::End(Far::Final);
                    }
                    Slot::End(Far::Final) | Slot::Isolated => closed = true,
                    Slot::Out => unreachable!(),
                }
                if closed {
                    self.close(&s, count);
                } else if finals(&s) <= 2 {
                    keep_max(&mut out, s, count);
                }
            }
        }
        out
    }

    fn join(&mut self, left: &Table, right: &Table, bag: &[usize]) -> Table {
        let mut by_usage: HashMap<Vec<bool>, Vec<(&State, usize)>> = HashMap::new();
        for (state, &count) in right {
            let usage = state.iter().map(|s| *s != Slot::Out).collect();
            by_usage.entry(usage).or_default().push((state, count));
        }
        let mut out = Table::new();
        for (l, &cl) in left {
            let usage: Vec<bool> = l.iter().map(|s| *s != Slot::Out).collect();
            let used = usage.iter().filter(|u| **u).count();
            let Some(partners) = by_usage.get(&usage) else {
                continue;
            };
            for &(r, cr) in partners {
                let Some((merged, closed)) = merge(bag, l, r) else {
                    continue;
                };
                // a capped side already certifies k vertices
                let count = if cl == self.k || cr == self.k {
                    self.k
                } else {
                    (cl + cr - used).min(self.k)
                };
                if closed {
                    self.close(&merged, count);
                } else if finals(&merged) <= 2 {
                    keep_max(&mut out, merged, count);
                }
            }
        }
        out
    }
}

/// Union of two partial solutions that agree on which bag vertices are
/// used. Each segment is seen as a virtual edge between its ends; the union
/// must again be a set of paths.
fn merge(bag: &[usize], l: &State, r: &State) -> Option<(State, bool)> {
    let b = bag.len();
    if (0..b).any(|p| l[p].degree() + r[p].degree() > 2) {
        return None;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); b];
    let mut edges = 0;
    for side in [l, r] {
        for p in 0..b {
            let other = match side[p] {
                Slot::End(Far::Vertex(x)) => {
                    let q = position(bag, x);
                    if q < p {
                        continue;
                    }
                    q
                }
                Slot::End(Far::Final) => {
                    adj.push(Vec::new());
                    adj.len() - 1
                }
                _ => continue,
            };
            adj[p].push((other, edges));
            adj[other].push((p, edges));
            edges += 1;
        }
    }
    let mut merged: State = (0..b)
        .map(|p| match (l[p], r[p]) {
            (Slot::Out, _) => Slot::Out,
            (Slot::Isolated, Slot::Isolated) => Slot::Isolated,
            (x, y) if x.degree() + y.degree() == 2 => Slot::Inner,
            _ => Slot::Isolated, // an end; overwritten by the walk below
        })
        .collect();
    let mut seen = vec![false; edges];
    let mut walked = 0;
    let mut closed = 0;
    let far_of = |node: usize| {
        if node < b {
            Far::Vertex(bag[node])
        } else {
            Far::Final
        }
    };
    for start in 0..adj.len() {
        if adj[start].len() != 1 || seen[adj[start][0].1] {
            continue;
        }
        let (mut cur, mut via) = adj[start][0];
        seen[via] = true;
        walked += 1;
        while adj[cur].len() == 2 {
            let &(next, e) = adj[cur].iter().find(|(_, e)| *e != via).unwrap();
            seen[e] = true;
            walked += 1;
            cur = next;
            via = e;
        }
        if start < b {
            merged[start] = Slot::End(far_of(cur));
        }
        if cur < b {
            merged[cur] = Slot::End(far_of(start));
        }
        if start >= b && cur >= b {
            closed += 1;
        }
    }
    if walked != edges || closed > 1 {
        return None;
    }
    Some((merged, closed == 1))
}

/// Whether `G` has a simple path on at least `k` vertices, by dynamic
/// programming over a nice form of `td`. A partial solution is a set of
/// disjoint path segments; each bag vertex records whether it is unused,
/// isolated, an end (with the position of the other end), or interior.
/// The edge between `u` and `v` is decided at the forget node of whichever
/// is forgotten first.
pub fn kpath_dp(g: &Graph, td: &TreeDecomposition, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::invalid("path length k must be positive"));
    }
    validate(g, td)
        .map_err(|d| Error::invalid(format!("not a decomposition of the graph: {d}")))?;
    if k == 1 || k > g.n() {
        return Ok(k <= g.n());
    }
    let nice = make_nice(td)?;
    let mut dp = PathDp { g, k, found: false };
    let mut tables: Vec<Table> = Vec::with_capacity(nice.nodes().len());
    for node in nice.nodes() {
        let table = match node.kind {
            NiceKind::Leaf => Table::from([(Vec::new(), 0)]),
            NiceKind::Introduce { vertex, child } => {
                dp.introduce(&tables[child], position(&node.bag, vertex))
            }
            NiceKind::Forget { vertex, child } => {
                let bag = &nice.nodes()[child].bag;
                dp.forget(&tables[child], bag, position(bag, vertex))
            }
            NiceKind::Join { left, right } => dp.join(&tables[left], &tables[right], &node.bag),
        };
        tables.push(table);
        if dp.found {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// A decomposition within the acceptance width was found; the DP decided.
    NarrowDecomposition,
    /// A certified treewidth lower bound reached the threshold; YES.
    LargeTreewidth,
    /// Neither happened; the DP ran on the wide decomposition.
    Fallback,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::NarrowDecomposition => "narrow-decomposition",
            Branch::LargeTreewidth => "large-treewidth",
            Branch::Fallback => "fallback",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionMethod {
    Exact,
    MinFill,
}

impl DecompositionMethod {
    pub fn name(self) -> &'static str {
        match self {
            DecompositionMethod::Exact => "exact",
            DecompositionMethod::MinFill => "minfill",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPathReport {
    pub answer: bool,
    pub branch: Branch,
    /// Treewidth threshold `w* = ceil(4.5 ceil(sqrt k))`.
    pub threshold: usize,
    /// Widths up to this are run through the DP directly.
    pub acceptance_width: usize,
    pub method: DecompositionMethod,
    /// Width of the decomposition that was built.
    pub width: usize,
    pub lower_bound: usize,
    pub exact_width: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct WinWinConfig {
    /// Overrides the acceptance width `5 w* + 4`. Lowering it forces the
    /// certificate and fallback branches on small inputs; the answer stays
    /// correct because the threshold itself is unchanged.
    pub acceptance_width: Option<usize>,
}

/// Graphs up to this size get an exact decomposition.
pub const EXACT_DECOMPOSITION_MAX_VERTICES: usize = 14;

fn ceil_sqrt(k: usize) -> usize {
    let mut s = (k as f64).sqrt() as usize;
    while s * s > k {
        s -= 1;
    }
    while s * s < k {
        s += 1;
    }
    s
}

/// `ceil(4.5 * ceil(sqrt k))`.
pub fn winwin_threshold(k: usize) -> usize {
    (9 * ceil_sqrt(k)).div_ceil(2)
}

pub fn kpath_planar(g: &Graph, k: usize, planar_promise: bool) -> Result<KPathReport> {
    kpath_planar_with(g, k, planar_promise, &WinWinConfig::default())
}

/// The win/win decision. The YES-by-width branch trusts the planarity
/// promise; the edge-count prefilter is the only check made.
pub fn kpath_planar_with(
    g: &Graph,
    k: usize,
    planar_promise: bool,
    config: &WinWinConfig,
) -> Result<KPathReport> {
    if !planar_promise {
        return Err(Error::invalid(
            "the win/win k-path algorithm needs a planarity promise",
        ));
    }
    if k == 0 {
        return Err(Error::invalid("path length k must be positive"));
    }
    if g.has_loops() {
        return Err(Error::invalid("graph must be loopless"));
    }
    if !planarity_prefilter(g) {
        return Err(Error::invalid(format!(
            "refusing: {} edges on {} vertices exceeds the planar bound 3n-6",
            g.m(),
            g.n()
        )));
    }
    let threshold = winwin_threshold(k);
    let acceptance_width = config.acceptance_width.unwrap_or(5 * threshold + 4);
    let lower_bound = mmd_lower_bound(g);
    let (td, method, exact_width) = if g.n() <= EXACT_DECOMPOSITION_MAX_VERTICES {
        match exact_treewidth(g, g.n())? {
            ExactTreewidth::Found {
                width,
                decomposition,
            } => (decomposition, DecompositionMethod::Exact, Some(width)),
            ExactTreewidth::ExceedsBound => {
                return Err(Error::Internal("treewidth exceeds vertex count".into()))
            }
        }
    } else {
        (minfill_decompose(g), DecompositionMethod::MinFill, None)
    };
    let width = td.width();
    let report = |answer, branch| KPathReport {
        answer,
        branch,
        threshold,
        acceptance_width,
        method,
        width,
        lower_bound,
        exact_width,
    };
    if width <= acceptance_width {
        return Ok(report(kpath_dp(g, &td, k)?, Branch::NarrowDecomposition));
    }
    let certified = lower_bound >= threshold
        || exact_width.is_some_and(|tw| tw >= threshold)
        || (exact_width.is_none()
            && threshold - 1 <= guard::MAX_EXACT_TREEWIDTH_SMALL_BOUND
            && matches!(
                exact_treewidth(g, threshold - 1),
                Ok(ExactTreewidth::ExceedsBound)
            ));
    if certified {
        return Ok(report(true, Branch::LargeTreewidth));
    }
    Ok(report(kpath_dp(g, &td, k)?, Branch::Fallback))
}
