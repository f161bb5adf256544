//! Binary constraint satisfaction over a shared finite domain, solved and
//! counted by dynamic programming over a tree decomposition of the
//! constraint graph. With treewidth `t` and domain `D` the tables hold at
//! most `|D|^(t+1)` entries per node.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

use crate::decomposition::{
    make_nice, validate, NiceKind, NiceTreeDecomposition, TreeDecomposition,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::guard;

/// A set of ordered value pairs, stored as a dense `d x d` bit matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    domain_size: usize,
    allowed: Vec<bool>,
}

impl Relation {
    pub fn empty(domain_size: usize) -> Self {
        Relation {
            domain_size,
            allowed: vec![false; domain_size * domain_size],
        }
    }

    pub fn from_fn(domain_size: usize, mut allow: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Relation::empty(domain_size);
        for a in 0..domain_size {
            for b in 0..domain_size {
                r.allowed[a * domain_size + b] = allow(a, b);
            }
        }
        r
    }

    pub fn from_pairs(domain_size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Relation::empty(domain_size);
        for &(a, b) in pairs {
            if a >= domain_size || b >= domain_size {
                return Err(Error::invalid(format!(
                    "pair ({a}, {b}) outside a domain of {domain_size} values"
                )));
            }
            r.allowed[a * domain_size + b] = true;
        }
        Ok(r)
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn allows(&self, a: usize, b: usize) -> bool {
        self.allowed[a * self.domain_size + b]
    }

    pub fn len(&self) -> usize {
        self.allowed.iter().filter(|&&x| x).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.allowed.contains(&true)
    }

    pub fn transpose(&self) -> Relation {
        Relation::from_fn(self.domain_size, |a, b| self.allows(b, a))
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        Relation::from_fn(self.domain_size, |a, b| {
            self.allows(a, b) && other.allows(a, b)
        })
    }
}

/// `(f(x), f(y))` must lie in `relation`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub x: usize,
    pub y: usize,
    pub relation: Arc<Relation>,
}

/// Variables are `0..num_vars`, values are `0..domain_size`.
///
/// Unary restrictions are not constraints: they are expressed by
/// [`CspInstance::restrict_domain`] and filter the candidate values of a
/// single variable.
#[derive(Clone, Debug)]
pub struct CspInstance {
    num_vars: usize,
    domain_size: usize,
    constraints: Vec<Constraint>,
    allowed_values: Vec<Option<Vec<usize>>>,
}

/// A total map from variables to values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<usize>);

impl CspInstance {
    pub fn new(num_vars: usize, domain_size: usize) -> Self {
        CspInstance {
            num_vars,
            domain_size,
            constraints: Vec::new(),
            allowed_values: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Adds the directed constraint `(f(x), f(y)) in relation`.
    pub fn add_constraint(&mut self, x: usize, y: usize, relation: Arc<Relation>) -> Result<()> {
        if x >= self.num_vars || y >= self.num_vars {
            return Err(Error::invalid(format!(
                "constraint on ({x}, {y}) with {} variables",
                self.num_vars
            )));
        }
        if x == y {
            return Err(Error::invalid(
                "constraints must relate two distinct variables",
            ));
        }
        if relation.domain_size() != self.domain_size {
            return Err(Error::invalid(format!(
                "relation over {} values, domain has {}",
                relation.domain_size(),
                self.domain_size
            )));
        }
        self.constraints.push(Constraint { x, y, relation });
        Ok(())
    }

    /// Limits `var` to `values` (intersected with any earlier restriction).
    pub fn restrict_domain(&mut self, var: usize, values: &[usize]) -> Result<()> {
        if var >= self.num_vars {
            return Err(Error::invalid(format!("no variable {var}")));
        }
        if let Some(&bad) = values.iter().find(|&&v| v >= self.domain_size) {
            return Err(Error::invalid(format!("value {bad} outside the domain")));
        }
        let mut vals = values.to_vec();
        vals.sort_unstable();
        vals.dedup();
        let merged = match self.allowed_values[var].take() {
            Some(prev) => prev
                .into_iter()
                .filter(|v| vals.binary_search(v).is_ok())
                .collect(),
            None => vals,
        };
        self.allowed_values[var] = Some(merged);
        Ok(())
    }

    /// Candidate values of `var`, ascending.
    pub fn candidates(&self, var: usize) -> Vec<usize> {
        match &self.allowed_values[var] {
            Some(vals) => vals.clone(),
            None => (0..self.domain_size).collect(),
        }
    }

    pub fn is_satisfied(&self, f: &Assignment) -> bool {
        f.0.len() == self.num_vars
            && f.0.iter().enumerate().all(|(v, &d)| {
                d < self.domain_size
                    && self.allowed_values[v]
                        .as_ref()
                        .is_none_or(|vals| vals.binary_search(&d).is_ok())
            })
            && self
                .constraints
                .iter()
                .all(|c| c.relation.allows(f.0[c.x], f.0[c.y]))
    }

    /// Combined relation for every ordered pair of constrained variables;
    /// `(x, y)` and `(y, x)` are both present, one the transpose of the other.
    fn pair_relations(&self) -> HashMap<(usize, usize), Arc<Relation>> {
        let mut pairs: HashMap<(usize, usize), Arc<Relation>> = HashMap::new();
        for c in &self.constraints {
            for (key, rel) in [
                ((c.x, c.y), c.relation.clone()),
                ((c.y, c.x), Arc::new(c.relation.transpose())),
            ] {
                pairs
                    .entry(key)
                    .and_modify(|cur| *cur = Arc::new(cur.intersect(&rel)))
                    .or_insert(rel);
            }
        }
        pairs
    }
}

/// One vertex per variable, one edge per constrained pair.
pub fn constraint_graph(inst: &CspInstance) -> Graph {
    let mut g = Graph::new(inst.num_vars);
    for c in &inst.constraints {
        g.add_edge(c.x, c.y)
            .expect("constraint scopes are validated on insertion");
    }
    g
}

/// Values combined by the table DP: sums over forgotten variables,
/// products across join children.
trait Tally: Clone {
    fn one() -> Self;
    fn add(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;
}

impl Tally for BigUint {
    fn one() -> Self {
        One::one()
    }
    fn add(&mut self, other: &Self) {
        *self += other;
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

impl Tally for bool {
    fn one() -> Self {
        true
    }
    fn add(&mut self, other: &Self) {
        *self |= *other;
    }
    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }
}

/// Sparse table: bag assignment (values in bag order) to the tally of its
/// consistent extensions into the subtree. Absent keys have no extension.
type Table<T> = HashMap<Vec<u32>, T>;

fn checked_nice(inst: &CspInstance, td: &TreeDecomposition) -> Result<NiceTreeDecomposition> {
    let g = constraint_graph(inst);
    validate(&g, td)
        .map_err(|d| Error::invalid(format!("not a decomposition of the constraint graph: {d}")))?;
    make_nice(td)
}

/// Runs the DP. With `keep_all` every table is returned, otherwise child
/// tables are dropped once consumed and only the root table survives.
fn run_tables<T: Tally>(
    inst: &CspInstance,
    nice: &NiceTreeDecomposition,
    keep_all: bool,
) -> Vec<Option<Table<T>>> {
    let pairs = inst.pair_relations();
    let nodes = nice.nodes();
    let mut tables: Vec<Option<Table<T>>> = vec![None; nodes.len()];
    for (i, node) in nodes.iter().enumerate() {
        let take = |c: usize, tables: &mut Vec<Option<Table<T>>>| -> Table<T> {
            if keep_all {
                tables[c].clone().unwrap()
            } else {
                tables[c].take().unwrap()
            }
        };
        let table = match node.kind {
            NiceKind::Leaf => {
                let mut t = Table::new();
                t.insert(Vec::new(), T::one());
                t
            }
            NiceKind::Introduce { vertex, child } => {
                let pos = node.bag.binary_search(&vertex).unwrap();
                // (position in the new key, relation with f(vertex) first)
                let checks: Vec<(usize, Arc<Relation>)> = node
                    .bag
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &u)| pairs.get(&(vertex, u)).map(|r| (j, r.clone())))
                    .collect();
                let cands = inst.candidates(vertex);
                let child_table = take(child, &mut tables);
                let mut t = Table::with_capacity(child_table.len());
                for (key, val) in child_table {
                    for &d in &cands {
                        let mut nk = key.clone();
                        nk.insert(pos, d as u32);
                        if checks.iter().all(|(j, r)| r.allows(d, nk[*j] as usize)) {
                            t.insert(nk, val.clone());
                        }
                    }
                }
                t
            }
            NiceKind::Forget { vertex, child } => {
                let pos = nodes[child].bag.binary_search(&vertex).unwrap();
                let child_table = take(child, &mut tables);
                let mut t: Table<T> = Table::new();
                for (mut key, val) in child_table {
                    key.remove(pos);
                    match t.get_mut(&key) {
                        Some(acc) => acc.add(&val),
                        None => {
                            t.insert(key, val);
                        }
                    }
                }
                t
            }
            NiceKind::Join { left, right } => {
                let l = take(left, &mut tables);
                let r = take(right, &mut tables);
                let (small, large) = if l.len() <= r.len() { (l, r) } else { (r, l) };
                small
                    .into_iter()
                    .filter_map(|(key, a)| {
                        large.get(&key).map(|b| {
                            let p = a.mul(b);
                            (key, p)
                        })
                    })
                    .collect()
            }
        };
        tables[i] = Some(table);
    }
    tables
}

/// Exact number of satisfying assignments.
pub fn count_solutions(inst: &CspInstance, td: &TreeDecomposition) -> Result<BigUint> {
    let nice = checked_nice(inst, td)?;
    let mut tables = run_tables::<BigUint>(inst, &nice, false);
    let root = tables[nice.root()].take().unwrap();
    Ok(root.get(&Vec::new()).cloned().unwrap_or_else(BigUint::zero))
}

/// A satisfying assignment, or `None` if the instance is unsatisfiable.
/// Among the choices the tables allow, the smallest value is taken for
/// each variable as it is fixed, so the result is deterministic.
pub fn solve(inst: &CspInstance, td: &TreeDecomposition) -> Result<Option<Assignment>> {
    let nice = checked_nice(inst, td)?;
    let tables = run_tables::<bool>(inst, &nice, true);
    let nodes = nice.nodes();
    if !tables[nice.root()]
        .as_ref()
        .unwrap()
        .contains_key(&Vec::new())
    {
        return Ok(None);
    }
    let mut value: Vec<Option<u32>> = vec![None; inst.num_vars];
    // parents have larger indices, so a reverse scan fixes each bag before its subtree
    for node in nodes.iter().rev() {
        if let NiceKind::Forget { vertex, child } = node.kind {
            let child_bag = &nodes[child].bag;
            let table = tables[child].as_ref().unwrap();
            let pos = child_bag.binary_search(&vertex).unwrap();
            let mut key: Vec<u32> = child_bag
                .iter()
                .map(|&u| if u == vertex { 0 } else { value[u].unwrap() })
                .collect();
            let chosen = inst.candidates(vertex).into_iter().find(|&d| {
                key[pos] = d as u32;
                table.contains_key(&key)
            });
            let d = chosen.ok_or_else(|| Error::Internal("DP tables lost a witness".into()))?;
            value[vertex] = Some(d as u32);
        }
    }
    let f = Assignment(value.into_iter().map(|v| v.unwrap() as usize).collect());
    if !inst.is_satisfied(&f) {
        return Err(Error::Internal(
            "reconstructed assignment violates a constraint".into(),
        ));
    }
    Ok(Some(f))
}

/// Exhaustive enumeration of all candidate assignments.
pub fn brute_force_count(inst: &CspInstance) -> Result<BigUint> {
    let cands: Vec<Vec<usize>> = (0..inst.num_vars).map(|v| inst.candidates(v)).collect();
    let space = cands
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    guard::check("CSP assignment space", space, guard::MAX_ENUMERATION)?;
    if cands.iter().any(Vec::is_empty) {
        return Ok(BigUint::zero());
    }
    let mut idx = vec![0usize; inst.num_vars];
    let mut f = Assignment(cands.iter().map(|c| c[0]).collect());
    let mut count: u64 = 0;
    loop {
        if inst
            .constraints
            .iter()
            .all(|c| c.relation.allows(f.0[c.x], f.0[c.y]))
        {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == inst.num_vars {
                return Ok(BigUint::from(count));
            }
            idx[v] += 1;
            if idx[v] < cands[v].len() {
                f.0[v] = cands[v][idx[v]];
                break;
            }
            idx[v] = 0;
            f.0[v] = cands[v][0];
            v += 1;
        }
    }
}

/// Random instance for oracle testing: `1..=max_vars` variables over
/// `1..=max_values` values, up to six constraints with random relations,
/// and sometimes a domain restriction.
pub fn random_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_vars: usize,
    max_values: usize,
) -> CspInstance {
    let vars = rng.gen_range(1..=max_vars.max(1));
    let d = rng.gen_range(1..=max_values.max(1));
    let mut inst = CspInstance::new(vars, d);
    if vars >= 2 {
        for _ in 0..rng.gen_range(0..=6) {
            let x = rng.gen_range(0..vars);
            let y = (x + rng.gen_range(1..vars)) % vars;
            let density = rng.gen_range(0.2..0.9);
            let r = Relation::from_fn(d, |_, _| rng.gen_bool(density));
            inst.add_constraint(x, y, Arc::new(r)).unwrap();
        }
    }
    if rng.gen_bool(0.2) {
        let v = rng.gen_range(0..vars);
        let keep: Vec<usize> = (0..d).filter(|_| rng.gen_bool(0.6)).collect();
        inst.restrict_domain(v, &keep).unwrap();
    }
    inst
}
