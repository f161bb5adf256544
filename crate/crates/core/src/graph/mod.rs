//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! Loops are only admitted on graphs built with [`Graph::with_loops`];
//! they arise when a quotient merges the endpoints of an edge.

mod generators;
mod io;
mod minor;
mod oracles;

pub use generators::*;
pub use io::{parse_dimacs, read_dimacs, write_dimacs};
pub use minor::{minor_op, quotient, MinorOp};
pub use oracles::{is_isomorphic, longest_path_bruteforce, planarity_prefilter};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    loops_allowed: bool,
}

impl Graph {
    /// Edgeless loopless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            loops_allowed: false,
        }
    }

    /// Edgeless graph on `n` vertices that accepts loops.
    pub fn with_loops(n: usize) -> Self {
        Graph {
            loops_allowed: true,
            ..Graph::new(n)
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`. Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::invalid(format!(
                "edge {{{u}, {v}}} out of range for {n} vertices"
            )));
        }
        if u == v && !self.loops_allowed {
            return Err(Error::invalid(format!("loop at {u} in a loopless graph")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                if u != v {
                    let pos = self.adj[v].binary_search(&u).unwrap_err();
                    self.adj[v].insert(pos, u);
                }
                self.m += 1;
                Ok(true)
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                if u != v {
                    let pos = self.adj[v].binary_search(&u).unwrap();
                    self.adj[v].remove(pos);
                }
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn loops_allowed(&self) -> bool {
        self.loops_allowed
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n()).any(|v| self.has_loop(v))
    }

    /// Sorted neighbours of `v`; includes `v` itself when it carries a loop.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u <= v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph {
            adj: vec![Vec::new(); vertices.len()],
            m: 0,
            loops_allowed: self.loops_allowed,
        };
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j >= i {
                    g.add_edge(i, j).expect("induced edge is in range");
                }
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `self` followed by `other`, with `other`'s vertices shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut g = Graph {
            adj: vec![Vec::new(); shift + other.n()],
            m: 0,
            loops_allowed: self.loops_allowed || other.loops_allowed,
        };
        for (u, v) in self.edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift).unwrap();
        }
        g
    }
}

/// A partition of `0..n` into nonempty blocks.
///
/// Stored canonically: each block sorted, blocks ordered by their smallest
/// element. Two partitions are equal iff they have equal blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPartition {
    blocks: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::invalid("partition has an empty block"));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::invalid(format!(
                        "partition mentions vertex {v}, graph has {n}"
                    )));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::invalid(format!("vertex {v} appears in two blocks")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::invalid(format!("vertex {v} is not covered")));
        }
        Ok(Self::canonical(blocks))
    }

    /// The partition into singletons.
    pub fn identity(n: usize) -> Self {
        VertexPartition {
            blocks: (0..n).map(|v| vec![v]).collect(),
        }
    }

    /// Builds the partition in which `u` and `v` share a block iff
    /// `labels[u] == labels[v]`.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut slot = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let i = *slot.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[i].push(v);
        }
        VertexPartition { blocks }
    }

    fn canonical(mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        VertexPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Number of elements partitioned.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    /// Block index of every element.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.len()];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                labels[v] = i;
            }
        }
        labels
    }
}
