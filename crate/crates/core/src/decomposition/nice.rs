use super::{check_running_intersection, check_tree, TreeDecomposition};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    Introduce { vertex: usize, child: usize },
    Forget { vertex: usize, child: usize },
    Join { left: usize, right: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted.
    pub bag: Vec<usize>,
}

/// Rooted nice decomposition. Nodes are stored children-first, so a
/// forward scan visits every child before its parent; the root is the last
/// node and has an empty bag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    nodes: Vec<NiceNode>,
}

impl NiceTreeDecomposition {
    pub fn nodes(&self) -> &[NiceNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self) -> usize {
        self.nodes
            .iter()
            .map(|n| n.bag.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    /// The underlying (unrooted) tree decomposition.
    pub fn flatten(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            match node.kind {
                NiceKind::Leaf => {}
                NiceKind::Introduce { child, .. } | NiceKind::Forget { child, .. } => {
                    edges.push((child, i))
                }
                NiceKind::Join { left, right } => {
                    edges.push((left, i));
                    edges.push((right, i));
                }
            }
        }
        TreeDecomposition::new(self.nodes.iter().map(|n| n.bag.clone()).collect(), edges)
    }

    fn push(&mut self, kind: NiceKind, bag: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag });
        self.nodes.len() - 1
    }

    /// Moves the node `at` (with bag `from`) to bag `to` by forgetting and
    /// then introducing one vertex at a time.
    fn morph(&mut self, mut at: usize, from: &[usize], to: &[usize]) -> usize {
        let mut bag = from.to_vec();
        for &v in from {
            if to.binary_search(&v).is_err() {
                bag.retain(|&w| w != v);
                at = self.push(
                    NiceKind::Forget {
                        vertex: v,
                        child: at,
                    },
                    bag.clone(),
                );
            }
        }
        for &v in to {
            if let Err(pos) = bag.binary_search(&v) {
                bag.insert(pos, v);
                at = self.push(
                    NiceKind::Introduce {
                        vertex: v,
                        child: at,
                    },
                    bag.clone(),
                );
            }
        }
        at
    }
}

/// Converts `td` into nice form rooted at bag 0, with the same width.
///
/// The tree shape and the running-intersection property are checked here;
/// coverage of a particular graph is not (see `validate`).
pub fn make_nice(td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    if td.num_bags() == 0 {
        return Err(Error::invalid("decomposition has no bags"));
    }
    check_tree(td).map_err(|d| Error::invalid(d.to_string()))?;
    let n = td.bags().iter().flatten().max().map_or(0, |&v| v + 1);
    check_running_intersection(td, n).map_err(|d| Error::invalid(d.to_string()))?;

    let adj = td.tree_adjacency();
    let mut parent = vec![usize::MAX; td.num_bags()];
    let mut order = Vec::with_capacity(td.num_bags());
    let mut stack = vec![0usize];
    parent[0] = 0;
    while let Some(t) = stack.pop() {
        order.push(t);
        for &c in adj[t].iter().rev() {
            if parent[c] == usize::MAX {
                parent[c] = t;
                stack.push(c);
            }
        }
    }

    let mut nice = NiceTreeDecomposition { nodes: Vec::new() };
    let mut top = vec![usize::MAX; td.num_bags()];
    for &t in order.iter().rev() {
        let bag = &td.bags()[t];
        let mut children: Vec<usize> = adj[t]
            .iter()
            .copied()
            .filter(|&c| parent[c] == t && c != t)
            .collect();
        children.sort_unstable();
        let mut acc: Option<usize> = None;
        for c in children {
            let at = nice.morph(top[c], &td.bags()[c], bag);
            acc = Some(match acc {
                None => at,
                Some(prev) => nice.push(
                    NiceKind::Join {
                        left: prev,
                        right: at,
                    },
                    bag.clone(),
                ),
            });
        }
        top[t] = match acc {
            Some(at) => at,
            None => {
                let leaf = nice.push(NiceKind::Leaf, Vec::new());
                nice.morph(leaf, &[], bag)
            }
        };
    }
    let root_bag = td.bags()[0].clone();
    nice.morph(top[0], &root_bag, &[]);
    Ok(nice)
}
