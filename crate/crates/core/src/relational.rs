//! Finite relational structures and the machinery on top of them:
//! homomorphism search with generalized arc-consistency propagation, power
//! structures, endomorphism and core analysis, and restricted-polymorphism
//! search.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::search::{Budget, Outcome};

/// Targets are represented with one 64-bit candidate mask per variable.
pub const MAX_TARGET_DOMAIN: usize = 64;

/// Domain cap for endomorphism enumeration (`m^m` candidates with pruning).
pub const MAX_ENDOMORPHISM_DOMAIN: usize = 12;

/// Default cap on the domain size of a power structure.
pub const DEFAULT_POWER_BUDGET: usize = 30_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RelationalError {
    #[error("structures have incompatible signatures (relation counts or arities differ)")]
    SignatureMismatch,
    #[error("mapping does not fit: expected a total map {expected_len} -> 0..{target}")]
    MappingMismatch { expected_len: usize, target: usize },
    #[error("relation {relation:?}: tuple {tuple:?} does not match arity {arity} / domain {m}")]
    MalformedRelation {
        relation: String,
        arity: usize,
        m: usize,
        tuple: Vec<usize>,
    },
    #[error("target domain of size {0} exceeds the supported maximum of {max}", max = MAX_TARGET_DOMAIN)]
    TargetTooLarge(usize),
    #[error("domain of size {0} is too large to enumerate self-maps (cap {max})", max = MAX_ENDOMORPHISM_DOMAIN)]
    EnumerationTooLarge(usize),
    #[error("power structure would have {size} elements, over the budget of {budget}")]
    PowerBudgetExceeded { size: usize, budget: usize },
    #[error("{kind:?} polymorphisms have arity {expected}, got {got}")]
    KindArityMismatch {
        kind: PolymorphismKind,
        expected: usize,
        got: usize,
    },
    #[error("subdomain must be two distinct elements below the domain size")]
    BadSubdomain,
    #[error("pin ({var}, {value}) out of range")]
    BadPin { var: usize, value: usize },
    #[error("search budget exhausted")]
    Timeout,
    #[error("structure JSON: {0}")]
    Json(String),
}

/// A named relation of fixed arity over domain elements `0..m-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    name: String,
    arity: usize,
    tuples: BTreeSet<Vec<usize>>,
}

impl Relation {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<usize>>,
    ) -> Self {
        Relation {
            name: name.into(),
            arity,
            tuples: tuples.into_iter().collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.tuples.iter()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[usize]) -> bool {
        self.tuples.contains(tuple)
    }
}

/// A finite relational structure: domain `0..m-1` plus an ordered list of
/// named relations. Two structures are signature-compatible when their
/// relation lists have the same length and arities position by position;
/// names are labels and are not compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    m: usize,
    relations: Vec<Relation>,
}

impl Structure {
    pub fn new(m: usize, relations: Vec<Relation>) -> Result<Self, RelationalError> {
        for rel in &relations {
            for tuple in rel.tuples() {
                if tuple.len() != rel.arity() || tuple.iter().any(|&x| x >= m) {
                    return Err(RelationalError::MalformedRelation {
                        relation: rel.name().to_owned(),
                        arity: rel.arity(),
                        m,
                        tuple: tuple.clone(),
                    });
                }
            }
        }
        Ok(Structure { m, relations })
    }

    pub fn domain_size(&self) -> usize {
        self.m
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn same_signature(&self, other: &Structure) -> bool {
        self.relations.len() == other.relations.len()
            && self
                .relations
                .iter()
                .zip(&other.relations)
                .all(|(a, b)| a.arity() == b.arity())
    }

    pub fn to_json(&self) -> String {
        let dto = StructureDto {
            domain: self.m,
            relations: self
                .relations
                .iter()
                .map(|r| RelationDto {
                    name: r.name.clone(),
                    arity: r.arity,
                    tuples: r.tuples.iter().cloned().collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&dto).expect("structure serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, RelationalError> {
        let dto: StructureDto =
            serde_json::from_str(text).map_err(|e| RelationalError::Json(e.to_string()))?;
        Structure::new(
            dto.domain,
            dto.relations
                .into_iter()
                .map(|r| Relation::new(r.name, r.arity, r.tuples))
                .collect(),
        )
    }
}

#[derive(Serialize, Deserialize)]
struct StructureDto {
    domain: usize,
    relations: Vec<RelationDto>,
}

#[derive(Serialize, Deserialize)]
struct RelationDto {
    name: String,
    arity: usize,
    tuples: Vec<Vec<usize>>,
}

/// A total function from one domain to another, stored as a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mapping(Vec<usize>);

impl Mapping {
    pub fn new(table: Vec<usize>) -> Self {
        Mapping(table)
    }

    pub fn identity(n: usize) -> Self {
        Mapping((0..n).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn table(&self) -> &[usize] {
        &self.0
    }

    pub fn is_bijection_on(&self, m: usize) -> bool {
        if self.0.len() != m {
            return false;
        }
        let mut seen = vec![false; m];
        for &y in &self.0 {
            if y >= m || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    /// The inverse table, when this mapping is a bijection of `0..len-1`.
    pub fn inverse(&self) -> Option<Mapping> {
        let m = self.0.len();
        if !self.is_bijection_on(m) {
            return None;
        }
        let mut inv = vec![0; m];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Some(Mapping(inv))
    }
}

/// True iff every tuple of every relation of `a` maps into the corresponding
/// relation of `b` under `f`.
pub fn is_homomorphism(
    a: &Structure,
    b: &Structure,
    f: &Mapping,
) -> Result<bool, RelationalError> {
    if !a.same_signature(b) {
        return Err(RelationalError::SignatureMismatch);
    }
    if f.len() != a.domain_size() || f.table().iter().any(|&y| y >= b.domain_size()) {
        return Err(RelationalError::MappingMismatch {
            expected_len: a.domain_size(),
            target: b.domain_size(),
        });
    }
    let mut image = Vec::new();
    for (ra, rb) in a.relations().iter().zip(b.relations()) {
        for tuple in ra.tuples() {
            image.clear();
            image.extend(tuple.iter().map(|&x| f.apply(x)));
            if !rb.contains(&image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Homomorphism search
// ---------------------------------------------------------------------------

/// One source tuple compiled into a constraint over its distinct variables.
/// Repeated variables are resolved at compile time: only target tuples equal
/// on the repeated positions survive, projected to the distinct variables.
struct Constraint {
    vars: Vec<usize>,
    allowed: Vec<Vec<usize>>,
}

struct CspSearch {
    constraints: Vec<Constraint>,
    var_constraints: Vec<Vec<usize>>,
    budget: Budget,
    nodes: u64,
}

impl CspSearch {
    fn compile(a: &Structure, b: &Structure) -> Self {
        let mut constraints = Vec::new();
        for (ra, rb) in a.relations().iter().zip(b.relations()) {
            let targets: Vec<&Vec<usize>> = rb.tuples().collect();
            for tuple in ra.tuples() {
                let mut vars: Vec<usize> = Vec::new();
                for &x in tuple {
                    if !vars.contains(&x) {
                        vars.push(x);
                    }
                }
                let mut allowed = Vec::new();
                'next: for t in &targets {
                    let mut proj = vec![usize::MAX; vars.len()];
                    for (pos, &x) in tuple.iter().enumerate() {
                        let slot = vars.iter().position(|&v| v == x).unwrap();
                        if proj[slot] == usize::MAX {
                            proj[slot] = t[pos];
                        } else if proj[slot] != t[pos] {
                            continue 'next;
                        }
                    }
                    allowed.push(proj);
                }
                allowed.sort();
                allowed.dedup();
                constraints.push(Constraint { vars, allowed });
            }
        }
        let mut var_constraints = vec![Vec::new(); a.domain_size()];
        for (ci, c) in constraints.iter().enumerate() {
            for &v in &c.vars {
                var_constraints[v].push(ci);
            }
        }
        CspSearch {
            constraints,
            var_constraints,
            budget: Budget::unlimited(),
            nodes: 0,
        }
    }

    /// Generalized arc consistency to a fixpoint. Returns false on wipeout.
    fn propagate(&self, domains: &mut [u64]) -> bool {
        let mut dirty: Vec<bool> = vec![true; self.constraints.len()];
        let mut queue: Vec<usize> = (0..self.constraints.len()).collect();
        while let Some(ci) = queue.pop() {
            dirty[ci] = false;
            let c = &self.constraints[ci];
            for (j, &var) in c.vars.iter().enumerate() {
                let mut support = 0u64;
                'tuples: for t in &c.allowed {
                    for (j2, &var2) in c.vars.iter().enumerate() {
                        if domains[var2] & (1 << t[j2]) == 0 {
                            continue 'tuples;
                        }
                    }
                    support |= 1 << t[j];
                }
                let pruned = domains[var] & support;
                if pruned == 0 {
                    return false;
                }
                if pruned != domains[var] {
                    domains[var] = pruned;
                    for &ci2 in &self.var_constraints[var] {
                        if !dirty[ci2] {
                            dirty[ci2] = true;
                            queue.push(ci2);
                        }
                    }
                }
            }
        }
        true
    }

    /// Backtracking with GAC at every node. Branches on the variable with the
    /// smallest candidate set (ties by lowest id), values in ascending order.
    fn search(&mut self, domains: &mut Vec<u64>) -> Result<Option<Vec<usize>>, RelationalError> {
        if !self.propagate(domains) {
            return Ok(None);
        }
        let branch = domains
            .iter()
            .enumerate()
            .filter(|(_, d)| d.count_ones() > 1)
            .min_by_key(|(v, d)| (d.count_ones(), *v));
        let Some((var, _)) = branch else {
            return Ok(Some(
                domains.iter().map(|d| d.trailing_zeros() as usize).collect(),
            ));
        };
        let remaining = domains[var];
        for value in 0..MAX_TARGET_DOMAIN {
            if remaining & (1 << value) == 0 {
                continue;
            }
            self.nodes += 1;
            if self.budget.expired() {
                return Err(RelationalError::Timeout);
            }
            let mut child = domains.clone();
            child[var] = 1 << value;
            if let Some(found) = self.search(&mut child)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

fn full_domains(vars: usize, m: usize) -> Vec<u64> {
    let mask = if m == MAX_TARGET_DOMAIN {
        u64::MAX
    } else {
        (1u64 << m) - 1
    };
    vec![mask; vars]
}

/// Finds a homomorphism from `a` to `b`, or verifies that none exists.
pub fn find_homomorphism(
    a: &Structure,
    b: &Structure,
) -> Result<Option<Mapping>, RelationalError> {
    Ok(find_homomorphism_in(a, b, Budget::unlimited())?.witness)
}

/// Budgeted variant of [`find_homomorphism`], also reporting nodes explored.
pub fn find_homomorphism_in(
    a: &Structure,
    b: &Structure,
    budget: Budget,
) -> Result<Outcome<Mapping>, RelationalError> {
    find_homomorphism_pinned(a, b, &[], budget)
}

/// Homomorphism search with some variables pinned to forced values.
pub fn find_homomorphism_pinned(
    a: &Structure,
    b: &Structure,
    pins: &[(usize, usize)],
    budget: Budget,
) -> Result<Outcome<Mapping>, RelationalError> {
    if !a.same_signature(b) {
        return Err(RelationalError::SignatureMismatch);
    }
    if b.domain_size() > MAX_TARGET_DOMAIN {
        return Err(RelationalError::TargetTooLarge(b.domain_size()));
    }
    let mut domains = full_domains(a.domain_size(), b.domain_size());
    for &(var, value) in pins {
        if var >= a.domain_size() || value >= b.domain_size() {
            return Err(RelationalError::BadPin { var, value });
        }
        domains[var] &= 1 << value;
    }
    if b.domain_size() == 0 {
        let witness = (a.domain_size() == 0).then(|| Mapping::new(Vec::new()));
        return Ok(Outcome { witness, nodes: 0 });
    }
    let mut engine = CspSearch::compile(a, b);
    engine.budget = budget;
    if domains.iter().any(|&d| d == 0) {
        return Ok(Outcome {
            witness: None,
            nodes: 0,
        });
    }
    let witness = engine.search(&mut domains)?.map(Mapping::new);
    Ok(Outcome {
        witness,
        nodes: engine.nodes,
    })
}

// ---------------------------------------------------------------------------
// Power structures
// ---------------------------------------------------------------------------

/// Big-endian lexicographic index of a tuple over `0..m-1`: the first
/// coordinate is the most significant digit. Stable forever; the inverse is
/// [`power_tuple`].
pub fn power_index(m: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &x| acc * m + x)
}

/// Inverse of [`power_index`] for tuples of length `len`.
pub fn power_tuple(m: usize, len: usize, mut index: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in (0..len).rev() {
        out[slot] = index % m;
        index /= m;
    }
    out
}

/// The power structure with domain `A^exp` under the default size budget.
pub fn power(a: &Structure, exp: usize) -> Result<Structure, RelationalError> {
    power_with_budget(a, exp, DEFAULT_POWER_BUDGET)
}

/// Power structure: domain `A^exp` indexed big-endian lexicographically, and
/// a tuple of the image relation for every `exp`-tuple of source tuples
/// (coordinate slices must all lie in the source relation).
pub fn power_with_budget(
    a: &Structure,
    exp: usize,
    budget: usize,
) -> Result<Structure, RelationalError> {
    assert!(exp >= 1, "power structure needs a positive exponent");
    let m = a.domain_size();
    let size = m
        .checked_pow(exp as u32)
        .filter(|&s| s <= budget)
        .ok_or(RelationalError::PowerBudgetExceeded {
            size: m.checked_pow(exp as u32).unwrap_or(usize::MAX),
            budget,
        })?;
    let mut relations = Vec::new();
    for rel in a.relations() {
        let arity = rel.arity();
        let source: Vec<&Vec<usize>> = rel.tuples().collect();
        let mut tuples = BTreeSet::new();
        // one power tuple per choice of `exp` source tuples
        let mut pick = vec![0usize; exp];
        if !source.is_empty() {
            loop {
                let mut out = Vec::with_capacity(arity);
                for pos in 0..arity {
                    let coord: Vec<usize> = (0..exp).map(|j| source[pick[j]][pos]).collect();
                    out.push(power_index(m, &coord));
                }
                tuples.insert(out);
                let mut j = exp;
                loop {
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    pick[j] += 1;
                    if pick[j] < source.len() {
                        break;
                    }
                    pick[j] = 0;
                }
                if pick.iter().all(|&p| p == 0) {
                    break;
                }
            }
        }
        relations.push(Relation::new(rel.name().to_owned(), arity, tuples));
    }
    Structure::new(size, relations)
}

// ---------------------------------------------------------------------------
// Endomorphisms and cores
// ---------------------------------------------------------------------------

/// All endomorphisms of `b`, in lexicographic order of their tables.
pub fn endomorphisms(b: &Structure) -> Result<Vec<Mapping>, RelationalError> {
    let m = b.domain_size();
    if m > MAX_ENDOMORPHISM_DOMAIN {
        return Err(RelationalError::EnumerationTooLarge(m));
    }
    // tuples grouped by the largest element they mention, so a prefix
    // assignment can be checked as soon as it is complete
    let mut by_max: Vec<Vec<(usize, &Vec<usize>)>> = vec![Vec::new(); m.max(1)];
    for (ri, rel) in b.relations().iter().enumerate() {
        for tuple in rel.tuples() {
            let hi = tuple.iter().copied().max().unwrap_or(0);
            by_max[hi].push((ri, tuple));
        }
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; m];
    fn descend(
        b: &Structure,
        by_max: &[Vec<(usize, &Vec<usize>)>],
        table: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<Mapping>,
    ) {
        let m = b.domain_size();
        if depth == m {
            out.push(Mapping::new(table.clone()));
            return;
        }
        'values: for value in 0..m {
            table[depth] = value;
            for &(ri, tuple) in &by_max[depth] {
                let image: Vec<usize> = tuple.iter().map(|&x| table[x]).collect();
                if !b.relations()[ri].contains(&image) {
                    continue 'values;
                }
            }
            descend(b, by_max, table, depth + 1, out);
        }
    }
    if m == 0 {
        return Ok(vec![Mapping::new(Vec::new())]);
    }
    descend(b, &by_max, &mut table, 0, &mut out);
    Ok(out)
}

/// A structure is a core when every endomorphism is an automorphism: a
/// bijection whose inverse is again an endomorphism.
pub fn is_core(b: &Structure) -> Result<bool, RelationalError> {
    for endo in endomorphisms(b)? {
        let Some(inverse) = endo.inverse() else {
            return Ok(false);
        };
        if !is_homomorphism(b, b, &inverse)? {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Restricted polymorphisms
// ---------------------------------------------------------------------------

/// The equational kinds of restriction searched for on a two-element
/// subdomain. The two semilattice kinds are the two Boolean semilattice
/// operations under the identification `sub[0] = 0`, `sub[1] = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolymorphismKind {
    Majority,
    Maltsev,
    SemilatticeMeet,
    SemilatticeJoin,
}

impl PolymorphismKind {
    pub fn arity(self) -> usize {
        match self {
            PolymorphismKind::Majority | PolymorphismKind::Maltsev => 3,
            PolymorphismKind::SemilatticeMeet | PolymorphismKind::SemilatticeJoin => 2,
        }
    }
}

/// The function values on sub-tuples forced by the kind's defining equations.
/// Everything else is left free for the search.
///
/// - Semilattice (arity 2): all four values over the subdomain.
/// - Majority (arity 3): all eight values, since every triple over two
///   elements has a repeat.
/// - Mal'tsev (arity 3): the six values of patterns `(i,j,j)`, `(j,j,i)` and
///   `(i,i,i)`; mixed triples like `(i,j,i)` stay free.
pub fn forced_values(kind: PolymorphismKind, sub: [usize; 2]) -> Vec<(Vec<usize>, usize)> {
    let [zero, one] = sub;
    let mut pins = Vec::new();
    match kind {
        PolymorphismKind::SemilatticeMeet => {
            for &x in &sub {
                for &y in &sub {
                    let value = if x == one && y == one { one } else { zero };
                    pins.push((vec![x, y], value));
                }
            }
        }
        PolymorphismKind::SemilatticeJoin => {
            for &x in &sub {
                for &y in &sub {
                    let value = if x == zero && y == zero { zero } else { one };
                    pins.push((vec![x, y], value));
                }
            }
        }
        PolymorphismKind::Majority => {
            for &x in &sub {
                for &y in &sub {
                    for &z in &sub {
                        let value = if x == y || x == z { x } else { y };
                        pins.push((vec![x, y, z], value));
                    }
                }
            }
        }
        PolymorphismKind::Maltsev => {
            for &i in &sub {
                for &j in &sub {
                    pins.push((vec![i, j, j], i));
                    pins.push((vec![j, j, i], i));
                }
            }
            pins.sort();
            pins.dedup();
        }
    }
    pins
}

/// Searches for a polymorphism of `b` whose restriction to the two-element
/// subdomain `sub` satisfies the kind's defining equations: the equations'
/// forced values are pinned and a homomorphism from the power structure to
/// `b` is searched for. Returns a witness (a mapping from the power domain)
/// or verified absence.
pub fn find_restricted_polymorphism(
    b: &Structure,
    sub: [usize; 2],
    kind: PolymorphismKind,
    arity: usize,
) -> Result<Option<Mapping>, RelationalError> {
    Ok(find_restricted_polymorphism_in(b, sub, kind, arity, Budget::unlimited())?.witness)
}

/// Budgeted variant of [`find_restricted_polymorphism`].
pub fn find_restricted_polymorphism_in(
    b: &Structure,
    sub: [usize; 2],
    kind: PolymorphismKind,
    arity: usize,
    budget: Budget,
) -> Result<Outcome<Mapping>, RelationalError> {
    if arity != kind.arity() {
        return Err(RelationalError::KindArityMismatch {
            kind,
            expected: kind.arity(),
            got: arity,
        });
    }
    if sub[0] == sub[1] || sub.iter().any(|&x| x >= b.domain_size()) {
        return Err(RelationalError::BadSubdomain);
    }
    let power_structure = power(b, arity)?;
    let pins: Vec<(usize, usize)> = forced_values(kind, sub)
        .into_iter()
        .map(|(tuple, value)| (power_index(b.domain_size(), &tuple), value))
        .collect();
    find_homomorphism_pinned(&power_structure, b, &pins, budget)
}

// ---------------------------------------------------------------------------
// Graph encodings and the fixed three-element structure
// ---------------------------------------------------------------------------

/// Encodes a graph as a structure with one symmetric binary relation; loops
/// contribute diagonal pairs.
pub fn graph_to_structure(g: &Graph) -> Structure {
    let mut tuples = BTreeSet::new();
    for (u, v) in g.edges() {
        tuples.insert(vec![u, v]);
        tuples.insert(vec![v, u]);
    }
    for v in g.loops() {
        tuples.insert(vec![v, v]);
    }
    Structure::new(g.n(), vec![Relation::new("adj", 2, tuples)]).expect("valid by construction")
}

/// External labels of the three-element domain, in internal element order.
pub const D_LABELS: [usize; 3] = [0, 1, 3];

const D_S1: [(usize, usize); 4] = [(0, 3), (1, 1), (3, 1), (3, 3)];
const D_S2: [(usize, usize); 4] = [(1, 0), (1, 1), (3, 1), (3, 3)];
const D_S3: [(usize, usize); 3] = [(1, 3), (3, 1), (3, 3)];
const D_S4: [(usize, usize); 3] = [(1, 1), (1, 3), (3, 1)];

/// Internal element index of an external label (0, 1 or 3).
pub fn d_internal(label: usize) -> Option<usize> {
    D_LABELS.iter().position(|&l| l == label)
}

/// External label of an internal element index.
pub fn d_label(internal: usize) -> usize {
    D_LABELS[internal]
}

/// The fixed structure on domain `{0, 1, 3}` with the four binary relations
/// S1..S4 whose homomorphism problem seeds the reduction pipeline. Elements
/// are stored internally as `0..2` in label order; tuples below are given in
/// label space.
pub fn d_structure() -> Structure {
    let rel = |name: &str, pairs: &[(usize, usize)]| {
        Relation::new(
            name,
            2,
            pairs
                .iter()
                .map(|&(x, y)| vec![d_internal(x).unwrap(), d_internal(y).unwrap()]),
        )
    };
    Structure::new(
        3,
        vec![
            rel("S1", &D_S1),
            rel("S2", &D_S2),
            rel("S3", &D_S3),
            rel("S4", &D_S4),
        ],
    )
    .expect("fixed structure is well-formed")
}

/// The label-space pairs of relation `S{i}` of the fixed structure,
/// `i` in `1..=4`.
pub fn d_relation_pairs(i: usize) -> &'static [(usize, usize)] {
    match i {
        1 => &D_S1,
        2 => &D_S2,
        3 => &D_S3,
        4 => &D_S4,
        _ => panic!("relation index {i} out of range 1..=4"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_elem(pairs: &[(usize, usize)]) -> Structure {
        Structure::new(
            2,
            vec![Relation::new(
                "r",
                2,
                pairs.iter().map(|&(x, y)| vec![x, y]),
            )],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_homomorphism_on_d() {
        let d = d_structure();
        assert!(is_homomorphism(&d, &d, &Mapping::identity(3)).unwrap());
    }

    #[test]
    fn signature_mismatch_is_an_error() {
        let d = d_structure();
        let g = two_elem(&[(0, 1)]);
        assert_eq!(
            is_homomorphism(&g, &d, &Mapping::new(vec![0, 0])),
            Err(RelationalError::SignatureMismatch)
        );
    }

    #[test]
    fn single_pair_examples_from_s1() {
        // A = ({p,q}, R1 = {(p,q)}, others empty) with p -> 0, q -> 3.
        let a = Structure::new(
            2,
            vec![
                Relation::new("R1", 2, [vec![0, 1]]),
                Relation::new("R2", 2, []),
                Relation::new("R3", 2, []),
                Relation::new("R4", 2, []),
            ],
        )
        .unwrap();
        let d = d_structure();
        let good = Mapping::new(vec![d_internal(0).unwrap(), d_internal(3).unwrap()]);
        let bad = Mapping::new(vec![d_internal(0).unwrap(), d_internal(0).unwrap()]);
        assert!(is_homomorphism(&a, &d, &good).unwrap());
        assert!(!is_homomorphism(&a, &d, &bad).unwrap());
    }

    #[test]
    fn power_of_one_is_identity() {
        let d = d_structure();
        assert_eq!(power(&d, 1).unwrap(), d);
    }

    #[test]
    fn power_two_of_d() {
        let d = d_structure();
        let p = power(&d, 2).unwrap();
        assert_eq!(p.domain_size(), 9);
        // ((1,3),(3,1)) lies in S3^2 because (1,3) and (3,1) are in S3.
        let one_three = power_index(3, &[d_internal(1).unwrap(), d_internal(3).unwrap()]);
        let three_one = power_index(3, &[d_internal(3).unwrap(), d_internal(1).unwrap()]);
        assert!(p.relations()[2].contains(&[one_three, three_one]));
    }

    #[test]
    fn power_index_round_trip() {
        for index in 0..27 {
            assert_eq!(power_index(3, &power_tuple(3, 3, index)), index);
        }
        // big-endian: first coordinate most significant
        assert_eq!(power_index(3, &[2, 0, 1]), 2 * 9 + 1);
    }

    #[test]
    fn power_budget_is_enforced() {
        let d = d_structure();
        assert!(matches!(
            power_with_budget(&d, 4, 27),
            Err(RelationalError::PowerBudgetExceeded { size: 81, budget: 27 })
        ));
    }

    #[test]
    fn endomorphism_examples() {
        // empty relations on two elements: all four self-maps
        let free = two_elem(&[]);
        assert_eq!(endomorphisms(&free).unwrap().len(), 4);

        // unary relation {0} on two elements: maps sending 0 to 0
        let pinned = Structure::new(
            2,
            vec![Relation::new("u", 1, [vec![0]])],
        )
        .unwrap();
        let endos = endomorphisms(&pinned).unwrap();
        let tables: Vec<&[usize]> = endos.iter().map(|e| e.table()).collect();
        assert_eq!(tables, vec![&[0, 0][..], &[0, 1][..]]);
    }

    #[test]
    fn core_examples() {
        assert!(is_core(&d_structure()).unwrap());
        assert!(!is_core(&two_elem(&[])).unwrap());
        let singleton = Structure::new(1, vec![Relation::new("r", 2, [vec![0, 0]])]).unwrap();
        assert!(is_core(&singleton).unwrap());
    }

    #[test]
    fn homomorphism_search_examples() {
        let d = d_structure();
        // single element with R3 = {(p,p)}: p -> 3 works
        let a = Structure::new(
            1,
            vec![
                Relation::new("R1", 2, []),
                Relation::new("R2", 2, []),
                Relation::new("R3", 2, [vec![0, 0]]),
                Relation::new("R4", 2, []),
            ],
        )
        .unwrap();
        let hom = find_homomorphism(&a, &d).unwrap().unwrap();
        assert_eq!(d_label(hom.apply(0)), 3);

        // adding R4 = {(p,p)} kills it: diagonals of S3 and S4 are disjoint
        let b = Structure::new(
            1,
            vec![
                Relation::new("R1", 2, []),
                Relation::new("R2", 2, []),
                Relation::new("R3", 2, [vec![0, 0]]),
                Relation::new("R4", 2, [vec![0, 0]]),
            ],
        )
        .unwrap();
        assert!(find_homomorphism(&b, &d).unwrap().is_none());

        // all relations empty: a constant map exists
        let free = Structure::new(
            5,
            vec![
                Relation::new("R1", 2, []),
                Relation::new("R2", 2, []),
                Relation::new("R3", 2, []),
                Relation::new("R4", 2, []),
            ],
        )
        .unwrap();
        assert!(find_homomorphism(&free, &d).unwrap().is_some());
    }

    #[test]
    fn majority_exists_on_free_two_element_structure() {
        let free = Structure::new(2, vec![Relation::new("r", 2, [])]).unwrap();
        let found = find_restricted_polymorphism(&free, [0, 1], PolymorphismKind::Majority, 3)
            .unwrap()
            .expect("boolean majority function");
        // restriction satisfies the majority equations literally
        for &h in &[0usize, 1] {
            for &i in &[0usize, 1] {
                assert_eq!(found.apply(power_index(2, &[h, h, i])), h);
                assert_eq!(found.apply(power_index(2, &[h, i, h])), h);
                assert_eq!(found.apply(power_index(2, &[i, h, h])), h);
            }
        }
    }

    #[test]
    fn kind_arity_mismatch_is_an_error() {
        let d = d_structure();
        assert!(matches!(
            find_restricted_polymorphism(&d, [1, 2], PolymorphismKind::Majority, 2),
            Err(RelationalError::KindArityMismatch { .. })
        ));
    }

    #[test]
    fn graph_encoding_examples() {
        let k2 = Graph::complete(2);
        let s = graph_to_structure(&k2);
        assert_eq!(s.relations()[0].len(), 2);
        assert!(s.relations()[0].contains(&[0, 1]) && s.relations()[0].contains(&[1, 0]));

        let mut refl = Graph::new(1);
        refl.add_loop(0);
        let s = graph_to_structure(&refl);
        assert!(s.relations()[0].contains(&[0, 0]));
        assert_eq!(s.relations()[0].len(), 1);

        assert!(graph_to_structure(&Graph::new(3)).relations()[0].is_empty());
    }

    #[test]
    fn structure_json_round_trip() {
        let d = d_structure();
        let text = d.to_json();
        assert_eq!(Structure::from_json(&text).unwrap(), d);
        assert!(Structure::from_json("{\"domain\": 1, \"relations\": [{\"name\": \"r\", \"arity\": 2, \"tuples\": [[0, 5]]}]}").is_err());
    }
}
