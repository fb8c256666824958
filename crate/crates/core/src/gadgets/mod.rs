//! The reduction pipeline: instances of the fixed three-element structure
//! become gadget graphs containing the reflexive 4-cycle, and gadget graphs
//! become compactors and semi-compactors. The constructive maps between
//! instance homomorphisms and graph retractions live here too, driven by the
//! extension tables in [`tables`].

pub mod tables;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::problems::witness::check_retraction_c4r;
use crate::problems::{validate_c4_embedding, C4rHom};
use crate::relational::{
    d_label, d_structure, find_homomorphism, is_homomorphism, Mapping, Relation, RelationalError,
    Structure,
};
use tables::{retraction_row, semi_extension_row, COMPANION_U, COMPANION_W, COMPANION_Y};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("duplicate element id {0}")]
    DuplicateElement(usize),
    #[error("relation R{relation} references unknown element in pair ({p}, {q})")]
    UnknownElement { relation: usize, p: usize, q: usize },
    #[error("element {0} occurs in no relation pair")]
    IsolatedElement(usize),
    #[error("element label {0} is not one of 0, 1, 3")]
    BadLabel(u8),
    #[error("the element mapping is not a homomorphism to the three-element structure")]
    NotAHomomorphism,
    #[error("the labeling is not a retraction of the gadget graph")]
    NotARetraction,
    #[error("gadget vertex {vertex} is forced to both {first} and {second} by different tuples")]
    TableConflict { vertex: usize, first: u8, second: u8 },
    #[error(
        "decorated edge labeled ({tail_label}, {head_label}) leaves no image for its x vertex; \
         such a labeling cannot come from a retraction"
    )]
    ForbiddenRow { tail_label: u8, head_label: u8 },
    #[error("element {element} is mapped to cycle vertex 2, which has no domain label")]
    ElementOnForbiddenVertex { element: usize },
    #[error("restriction to the elements is not a homomorphism to the three-element structure")]
    RestrictionNotHomomorphism,
    #[error("extension failed validation: {0}")]
    ExtensionFailed(String),
    #[error("embedding: {0}")]
    Embedding(String),
    #[error("instance JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Relational(#[from] RelationalError),
}

// ---------------------------------------------------------------------------
// Instances
// ---------------------------------------------------------------------------

/// An instance of the homomorphism problem to the fixed three-element
/// structure: an element set and four binary relations over it. Elements
/// carry arbitrary ids; relations may be empty and may contain reflexive
/// pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DInstance {
    elements: Vec<usize>,
    relations: [BTreeSet<(usize, usize)>; 4],
}

#[derive(Serialize, Deserialize)]
struct DInstanceDto {
    elements: Vec<usize>,
    #[serde(rename = "R1")]
    r1: Vec<(usize, usize)>,
    #[serde(rename = "R2")]
    r2: Vec<(usize, usize)>,
    #[serde(rename = "R3")]
    r3: Vec<(usize, usize)>,
    #[serde(rename = "R4")]
    r4: Vec<(usize, usize)>,
}

impl DInstance {
    pub fn new(
        elements: Vec<usize>,
        r1: Vec<(usize, usize)>,
        r2: Vec<(usize, usize)>,
        r3: Vec<(usize, usize)>,
        r4: Vec<(usize, usize)>,
    ) -> Result<Self, GadgetError> {
        let mut seen = BTreeSet::new();
        for &e in &elements {
            if !seen.insert(e) {
                return Err(GadgetError::DuplicateElement(e));
            }
        }
        let relations = [
            r1.into_iter().collect::<BTreeSet<_>>(),
            r2.into_iter().collect(),
            r3.into_iter().collect(),
            r4.into_iter().collect(),
        ];
        for (i, rel) in relations.iter().enumerate() {
            for &(p, q) in rel {
                if !seen.contains(&p) || !seen.contains(&q) {
                    return Err(GadgetError::UnknownElement {
                        relation: i + 1,
                        p,
                        q,
                    });
                }
            }
        }
        Ok(DInstance {
            elements,
            relations,
        })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// The pairs of relation `R{i}`, `i` in `1..=4`, in sorted order.
    pub fn relation_pairs(&self, i: usize) -> &BTreeSet<(usize, usize)> {
        &self.relations[i - 1]
    }

    pub fn total_tuples(&self) -> usize {
        self.relations.iter().map(BTreeSet::len).sum()
    }

    pub fn index_of(&self, element: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == element)
    }

    /// True when the element occurs in at least one pair of some relation.
    pub fn is_covered(&self, element: usize) -> bool {
        self.relations
            .iter()
            .any(|rel| rel.iter().any(|&(p, q)| p == element || q == element))
    }

    /// All `(relation, pair)` entries in relation order, pairs sorted.
    pub fn tuples(&self) -> impl Iterator<Item = (usize, (usize, usize))> + '_ {
        (1..=4).flat_map(move |i| self.relation_pairs(i).iter().map(move |&pq| (i, pq)))
    }

    /// The instance as a structure over element indices, signature-compatible
    /// with the fixed three-element structure.
    pub fn to_structure(&self) -> Structure {
        let index = |e: usize| self.index_of(e).expect("validated on construction");
        let relations = (1..=4)
            .map(|i| {
                Relation::new(
                    format!("R{i}"),
                    2,
                    self.relation_pairs(i)
                        .iter()
                        .map(|&(p, q)| vec![index(p), index(q)]),
                )
            })
            .collect();
        Structure::new(self.elements.len(), relations).expect("indices are in range")
    }

    pub fn to_json(&self) -> String {
        let dto = DInstanceDto {
            elements: self.elements.clone(),
            r1: self.relations[0].iter().copied().collect(),
            r2: self.relations[1].iter().copied().collect(),
            r3: self.relations[2].iter().copied().collect(),
            r4: self.relations[3].iter().copied().collect(),
        };
        serde_json::to_string_pretty(&dto).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GadgetError> {
        let dto: DInstanceDto =
            serde_json::from_str(text).map_err(|e| GadgetError::Json(e.to_string()))?;
        DInstance::new(dto.elements, dto.r1, dto.r2, dto.r3, dto.r4)
    }
}

/// A homomorphism from an instance to the three-element structure, in label
/// space: every element maps to 0, 1 or 3.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DHom(BTreeMap<usize, u8>);

impl DHom {
    pub fn new(map: BTreeMap<usize, u8>) -> Result<Self, GadgetError> {
        for (_, &label) in map.iter() {
            if !matches!(label, 0 | 1 | 3) {
                return Err(GadgetError::BadLabel(label));
            }
        }
        Ok(DHom(map))
    }

    pub fn get(&self, element: usize) -> Option<u8> {
        self.0.get(&element).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.0.iter().map(|(&e, &l)| (e, l))
    }

    /// Translates an index-space mapping (as returned by the homomorphism
    /// search against the three-element structure) into label space.
    pub fn from_mapping(instance: &DInstance, mapping: &Mapping) -> Self {
        DHom(
            instance
                .elements()
                .iter()
                .enumerate()
                .map(|(idx, &e)| (e, d_label(mapping.apply(idx)) as u8))
                .collect(),
        )
    }

    /// The index-space mapping, when every element is present.
    pub fn to_mapping(&self, instance: &DInstance) -> Option<Mapping> {
        let table = instance
            .elements()
            .iter()
            .map(|&e| {
                self.get(e)
                    .and_then(|l| crate::relational::d_internal(l as usize))
            })
            .collect::<Option<Vec<usize>>>()?;
        Some(Mapping::new(table))
    }
}

/// Searches for a homomorphism from the instance to the three-element
/// structure, in label space.
pub fn find_instance_homomorphism(a: &DInstance) -> Result<Option<DHom>, GadgetError> {
    let found = find_homomorphism(&a.to_structure(), &d_structure())?;
    Ok(found.map(|m| DHom::from_mapping(a, &m)))
}

// ---------------------------------------------------------------------------
// Gadget graphs
// ---------------------------------------------------------------------------

/// Whether gadget vertices are shared per element (the standard reading:
/// subscripts name elements) or duplicated per tuple (a strict experimental
/// reading; none of the structural guarantees are asserted for it).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GadgetMode {
    #[default]
    PerElement,
    PerTuple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum GadgetKind {
    A,
    B,
    C,
    D,
}

/// What a vertex of a gadget graph is: a cycle vertex, an element vertex, or
/// a gadget vertex owned by an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetVertex {
    H(u8),
    Element(usize),
    Gadget(GadgetKind, usize),
}

/// The four gadget vertices serving one relation pair. In per-element mode
/// tuples over a shared element reference the same vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleGadget {
    pub relation: usize,
    pub pair: (usize, usize),
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

/// A gadget graph: the embedded 4-cycle on vertices 0..=3, one vertex per
/// element, and per-element (or per-tuple) gadget vertices, wired per the
/// relation each pair belongs to.
#[derive(Debug, Clone)]
pub struct DGraph {
    graph: Graph,
    h: [usize; 4],
    kinds: Vec<GadgetVertex>,
    element_vertex: BTreeMap<usize, usize>,
    tuple_gadgets: Vec<TupleGadget>,
    left_elements: BTreeSet<usize>,
    right_elements: BTreeSet<usize>,
    mode: GadgetMode,
}

impl DGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn h(&self) -> &[usize; 4] {
        &self.h
    }

    pub fn kind(&self, v: usize) -> GadgetVertex {
        self.kinds[v]
    }

    pub fn element_vertex(&self, element: usize) -> Option<usize> {
        self.element_vertex.get(&element).copied()
    }

    pub fn tuple_gadgets(&self) -> &[TupleGadget] {
        &self.tuple_gadgets
    }

    pub fn is_left_element(&self, element: usize) -> bool {
        self.left_elements.contains(&element)
    }

    pub fn is_right_element(&self, element: usize) -> bool {
        self.right_elements.contains(&element)
    }

    pub fn mode(&self) -> GadgetMode {
        self.mode
    }

    pub fn non_h_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.graph.n()).filter(|&v| !matches!(self.kinds[v], GadgetVertex::H(_)))
    }
}

/// Builds the gadget graph of an instance with per-element gadget vertices.
pub fn build_d_graph(a: &DInstance) -> Result<DGraph, GadgetError> {
    build_d_graph_with(a, GadgetMode::PerElement)
}

/// Builds the gadget graph in the requested gadget mode. Every element must
/// occur in some pair; vertex numbering is the 4-cycle first, then element
/// vertices in element order, then the a, b, c, d blocks.
pub fn build_d_graph_with(a: &DInstance, mode: GadgetMode) -> Result<DGraph, GadgetError> {
    for &e in a.elements() {
        if !a.is_covered(e) {
            return Err(GadgetError::IsolatedElement(e));
        }
    }
    let tuples: Vec<(usize, (usize, usize))> = a.tuples().collect();
    let left_ids: Vec<usize> = a
        .elements()
        .iter()
        .copied()
        .filter(|&e| tuples.iter().any(|&(_, (p, _))| p == e))
        .collect();
    let right_ids: Vec<usize> = a
        .elements()
        .iter()
        .copied()
        .filter(|&e| tuples.iter().any(|&(_, (_, q))| q == e))
        .collect();

    let k = a.elements().len();
    let elem_base = 4;
    let (a_count, c_count) = match mode {
        GadgetMode::PerElement => (left_ids.len(), right_ids.len()),
        GadgetMode::PerTuple => (tuples.len(), tuples.len()),
    };
    let a_base = elem_base + k;
    let b_base = a_base + a_count;
    let c_base = b_base + a_count;
    let d_base = c_base + c_count;
    let n = d_base + c_count;

    let mut kinds = vec![GadgetVertex::H(0); n];
    for i in 0..4 {
        kinds[i] = GadgetVertex::H(i as u8);
    }
    let mut element_vertex = BTreeMap::new();
    for (idx, &e) in a.elements().iter().enumerate() {
        element_vertex.insert(e, elem_base + idx);
        kinds[elem_base + idx] = GadgetVertex::Element(e);
    }

    let mut tuple_gadgets = Vec::with_capacity(tuples.len());
    match mode {
        GadgetMode::PerElement => {
            for (slot, &owner) in left_ids.iter().enumerate() {
                kinds[a_base + slot] = GadgetVertex::Gadget(GadgetKind::A, owner);
                kinds[b_base + slot] = GadgetVertex::Gadget(GadgetKind::B, owner);
            }
            for (slot, &owner) in right_ids.iter().enumerate() {
                kinds[c_base + slot] = GadgetVertex::Gadget(GadgetKind::C, owner);
                kinds[d_base + slot] = GadgetVertex::Gadget(GadgetKind::D, owner);
            }
            for &(relation, (p, q)) in &tuples {
                let left_slot = left_ids.iter().position(|&e| e == p).unwrap();
                let right_slot = right_ids.iter().position(|&e| e == q).unwrap();
                tuple_gadgets.push(TupleGadget {
                    relation,
                    pair: (p, q),
                    a: a_base + left_slot,
                    b: b_base + left_slot,
                    c: c_base + right_slot,
                    d: d_base + right_slot,
                });
            }
        }
        GadgetMode::PerTuple => {
            for (slot, &(relation, (p, q))) in tuples.iter().enumerate() {
                kinds[a_base + slot] = GadgetVertex::Gadget(GadgetKind::A, p);
                kinds[b_base + slot] = GadgetVertex::Gadget(GadgetKind::B, p);
                kinds[c_base + slot] = GadgetVertex::Gadget(GadgetKind::C, q);
                kinds[d_base + slot] = GadgetVertex::Gadget(GadgetKind::D, q);
                tuple_gadgets.push(TupleGadget {
                    relation,
                    pair: (p, q),
                    a: a_base + slot,
                    b: b_base + slot,
                    c: c_base + slot,
                    d: d_base + slot,
                });
            }
        }
    }

    let mut g = Graph::new(n);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 0);
    for &v in element_vertex.values() {
        g.add_edge(0, v);
    }
    for tg in &tuple_gadgets {
        let p_v = element_vertex[&tg.pair.0];
        let q_v = element_vertex[&tg.pair.1];
        g.add_edge(tg.a, p_v);
        g.add_edge(tg.a, tg.b);
        g.add_edge(tg.b, p_v);
        g.add_edge(tg.c, q_v);
        g.add_edge(tg.c, tg.d);
        g.add_edge(tg.d, q_v);
        match tg.relation {
            1 => {
                g.add_edge(tg.c, p_v);
                g.add_edge(q_v, 2);
            }
            2 => {
                g.add_edge(2, p_v);
                g.add_edge(tg.b, q_v);
            }
            3 => {
                g.add_edge(2, p_v);
                g.add_edge(2, q_v);
                g.add_edge(tg.a, tg.c);
            }
            4 => {
                g.add_edge(2, p_v);
                g.add_edge(2, q_v);
                g.add_edge(tg.b, tg.d);
            }
            _ => unreachable!(),
        }
    }
    for v in 4..n {
        if let GadgetVertex::Gadget(kind, _) = kinds[v] {
            let (x, y) = match kind {
                GadgetKind::A => (0, 3),
                GadgetKind::B => (1, 2),
                GadgetKind::C => (2, 3),
                GadgetKind::D => (0, 1),
            };
            g.add_edge(v, x);
            g.add_edge(v, y);
        }
    }
    for u in 4..n {
        let GadgetVertex::Gadget(ku, _) = kinds[u] else {
            continue;
        };
        for v in u + 1..n {
            if matches!(kinds[v], GadgetVertex::Gadget(kv, _) if kv == ku) {
                g.add_edge(u, v);
            }
        }
    }

    Ok(DGraph {
        graph: g,
        h: [0, 1, 2, 3],
        kinds,
        element_vertex,
        tuple_gadgets,
        left_elements: left_ids.into_iter().collect(),
        right_elements: right_ids.into_iter().collect(),
        mode,
    })
}

// ---------------------------------------------------------------------------
// Compactors and semi-compactors
// ---------------------------------------------------------------------------

/// An x vertex decorating the oriented edge `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct XVertex {
    pub vertex: usize,
    pub tail: usize,
    pub head: usize,
}

/// The companion augmentation shared by compactors and semi-compactors:
/// per non-cycle vertex the three companions and their eleven edges, plus
/// the u- and w-cliques.
fn attach_companions(
    base: &Graph,
    hub: [usize; 4],
    non_h: &[usize],
) -> (
    Graph,
    BTreeMap<usize, usize>,
    BTreeMap<usize, usize>,
    BTreeMap<usize, usize>,
) {
    let n0 = base.n();
    let count = non_h.len();
    let mut g = Graph::new(n0 + 3 * count);
    for (u, v) in base.edges() {
        g.add_edge(u, v);
    }
    for v in base.loops() {
        g.add_loop(v);
    }
    let mut u_of = BTreeMap::new();
    let mut w_of = BTreeMap::new();
    let mut y_of = BTreeMap::new();
    for (idx, &v) in non_h.iter().enumerate() {
        let u = n0 + idx;
        let w = n0 + count + idx;
        let y = n0 + 2 * count + idx;
        u_of.insert(v, u);
        w_of.insert(v, w);
        y_of.insert(v, y);
        g.add_edge(hub[0], u);
        g.add_edge(hub[0], y);
        g.add_edge(hub[1], u);
        g.add_edge(hub[2], w);
        g.add_edge(hub[2], y);
        g.add_edge(hub[3], w);
        g.add_edge(u, v);
        g.add_edge(u, w);
        g.add_edge(u, y);
        g.add_edge(v, w);
        g.add_edge(w, y);
    }
    for i in 0..count {
        for j in i + 1..count {
            g.add_edge(n0 + i, n0 + j);
            g.add_edge(n0 + count + i, n0 + count + j);
        }
    }
    (g, u_of, w_of, y_of)
}

/// The plain compactor of a graph around an embedded 4-cycle: companions for
/// every non-cycle vertex and one x vertex per edge not touching the cycle,
/// oriented from the smaller to the larger endpoint. Provided as a contrast
/// instrument; its x vertices are not wired to the cycle.
#[derive(Debug, Clone)]
pub struct Compactor {
    pub graph: Graph,
    pub u_of: BTreeMap<usize, usize>,
    pub w_of: BTreeMap<usize, usize>,
    pub y_of: BTreeMap<usize, usize>,
    pub x_vertices: Vec<XVertex>,
}

pub fn build_compactor(g: &Graph, emb: [usize; 4]) -> Result<Compactor, GadgetError> {
    validate_c4_embedding(g, emb).map_err(|e| GadgetError::Embedding(e.to_string()))?;
    let non_h: Vec<usize> = (0..g.n()).filter(|v| !emb.contains(v)).collect();
    let (mut out, u_of, w_of, y_of) = attach_companions(g, emb, &non_h);
    let decorated: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| !emb.contains(&u) && !emb.contains(&v))
        .collect();
    let x_base = out.n();
    let mut with_x = Graph::new(x_base + decorated.len());
    for (u, v) in out.edges() {
        with_x.add_edge(u, v);
    }
    for v in out.loops() {
        with_x.add_loop(v);
    }
    out = with_x;
    let mut x_vertices = Vec::new();
    for (i, &(tail, head)) in decorated.iter().enumerate() {
        let x = x_base + i;
        out.add_edge(tail, x);
        out.add_edge(head, x);
        out.add_edge(u_of[&tail], x);
        out.add_edge(w_of[&head], x);
        x_vertices.push(XVertex {
            vertex: x,
            tail,
            head,
        });
    }
    Ok(Compactor {
        graph: out,
        u_of,
        w_of,
        y_of,
        x_vertices,
    })
}

/// A semi-compactor of a gadget graph: companions for every non-cycle
/// vertex, x vertices only for non-clique decorated edges with the
/// prescribed orientations, each x additionally wired to cycle vertices 0
/// and 2.
#[derive(Debug, Clone)]
pub struct SemiCompactor {
    graph: Graph,
    base: DGraph,
    u_of: BTreeMap<usize, usize>,
    w_of: BTreeMap<usize, usize>,
    y_of: BTreeMap<usize, usize>,
    x_vertices: Vec<XVertex>,
}

impl SemiCompactor {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn base(&self) -> &DGraph {
        &self.base
    }

    pub fn u_of(&self, v: usize) -> Option<usize> {
        self.u_of.get(&v).copied()
    }

    pub fn w_of(&self, v: usize) -> Option<usize> {
        self.w_of.get(&v).copied()
    }

    pub fn y_of(&self, v: usize) -> Option<usize> {
        self.y_of.get(&v).copied()
    }

    pub fn x_vertices(&self) -> &[XVertex] {
        &self.x_vertices
    }

    /// The companion class of a vertex (base vertices included).
    pub fn class_of(&self, v: usize) -> tables::ScClass {
        let n0 = self.base.graph().n();
        let count = self.u_of.len();
        if v < n0 {
            tables::ScClass::BaseVertex
        } else if v < n0 + count {
            tables::ScClass::TypeU
        } else if v < n0 + 2 * count {
            tables::ScClass::TypeW
        } else if v < n0 + 3 * count {
            tables::ScClass::TypeY
        } else {
            tables::ScClass::TypeX
        }
    }
}

/// The oriented decorated edges of a gadget graph, in listing order: for
/// each tuple the six gadget-triangle edges, then the relation-specific
/// edge. Duplicates (shared per-element gadgets) keep their first listing.
fn semi_compactor_x_pairs(base: &DGraph) -> Vec<(usize, usize)> {
    let mut seen = BTreeSet::new();
    let mut pairs = Vec::new();
    let mut choose = |tail: usize, head: usize, pairs: &mut Vec<(usize, usize)>| {
        if seen.insert((tail.min(head), tail.max(head))) {
            pairs.push((tail, head));
        }
    };
    for tg in base.tuple_gadgets() {
        let p_v = base.element_vertex(tg.pair.0).unwrap();
        let q_v = base.element_vertex(tg.pair.1).unwrap();
        choose(tg.a, p_v, &mut pairs);
        choose(p_v, tg.b, &mut pairs);
        choose(tg.a, tg.b, &mut pairs);
        choose(q_v, tg.c, &mut pairs);
        choose(q_v, tg.d, &mut pairs);
        choose(tg.d, tg.c, &mut pairs);
        match tg.relation {
            1 => choose(p_v, tg.c, &mut pairs),
            2 => choose(q_v, tg.b, &mut pairs),
            3 => choose(tg.a, tg.c, &mut pairs),
            4 => choose(tg.d, tg.b, &mut pairs),
            _ => unreachable!(),
        }
    }
    pairs
}

/// Builds the semi-compactor of a gadget graph. Vertex numbering: the base
/// graph, then the u, w, y blocks (ascending base vertex), then the x
/// vertices in listing order.
pub fn build_semi_compactor(base: DGraph) -> SemiCompactor {
    let non_h: Vec<usize> = base.non_h_vertices().collect();
    let (augmented, u_of, w_of, y_of) = attach_companions(base.graph(), *base.h(), &non_h);
    let x_pairs = semi_compactor_x_pairs(&base);

    // every decorated edge is a non-cycle edge outside the four kind
    // cliques, and all such edges are decorated
    let eligible: BTreeSet<(usize, usize)> = base
        .graph()
        .edges()
        .filter(|&(u, v)| {
            let (ku, kv) = (base.kind(u), base.kind(v));
            if matches!(ku, GadgetVertex::H(_)) || matches!(kv, GadgetVertex::H(_)) {
                return false;
            }
            !matches!(
                (ku, kv),
                (GadgetVertex::Gadget(a, _), GadgetVertex::Gadget(b, _)) if a == b
            )
        })
        .collect();
    let listed: BTreeSet<(usize, usize)> = x_pairs
        .iter()
        .map(|&(t, h)| (t.min(h), t.max(h)))
        .collect();
    assert_eq!(listed, eligible, "x listing must cover the decorated edges");

    let x_base = augmented.n();
    let mut g = Graph::new(x_base + x_pairs.len());
    for (u, v) in augmented.edges() {
        g.add_edge(u, v);
    }
    let hub = *base.h();
    let mut x_vertices = Vec::new();
    for (i, &(tail, head)) in x_pairs.iter().enumerate() {
        let x = x_base + i;
        g.add_edge(tail, x);
        g.add_edge(head, x);
        g.add_edge(u_of[&tail], x);
        g.add_edge(w_of[&head], x);
        g.add_edge(hub[0], x);
        g.add_edge(hub[2], x);
        x_vertices.push(XVertex {
            vertex: x,
            tail,
            head,
        });
    }
    SemiCompactor {
        graph: g,
        base,
        u_of,
        w_of,
        y_of,
        x_vertices,
    }
}

/// The whole pipeline: instance to gadget graph to semi-compactor.
pub fn reduce_instance(a: &DInstance) -> Result<SemiCompactor, GadgetError> {
    Ok(build_semi_compactor(build_d_graph(a)?))
}

// ---------------------------------------------------------------------------
// Constructive maps between homomorphisms and retractions
// ---------------------------------------------------------------------------

/// Extends an instance homomorphism to a retraction of the gadget graph:
/// cycle vertices stay fixed, element vertices follow their labels, gadget
/// vertices follow the extension table row of each incident pair. Rows from
/// different tuples never disagree for a valid homomorphism; a conflict is
/// reported as an error rather than silenced.
pub fn extend_hom_to_retraction(
    a: &DInstance,
    d: &DGraph,
    hom: &DHom,
) -> Result<C4rHom, GadgetError> {
    let mapping = hom.to_mapping(a).ok_or(GadgetError::NotAHomomorphism)?;
    if !is_homomorphism(&a.to_structure(), &d_structure(), &mapping)? {
        return Err(GadgetError::NotAHomomorphism);
    }
    let n = d.graph().n();
    let mut labels: Vec<Option<u8>> = vec![None; n];
    for i in 0..4 {
        labels[d.h()[i]] = Some(i as u8);
    }
    for (element, label) in hom.iter() {
        if let Some(v) = d.element_vertex(element) {
            labels[v] = Some(label);
        }
    }
    let mut set = |vertex: usize, value: u8| -> Result<(), GadgetError> {
        match labels[vertex] {
            None => {
                labels[vertex] = Some(value);
                Ok(())
            }
            Some(first) if first == value => Ok(()),
            Some(first) => Err(GadgetError::TableConflict {
                vertex,
                first,
                second: value,
            }),
        }
    };
    for tg in d.tuple_gadgets() {
        let p_label = hom.get(tg.pair.0).ok_or(GadgetError::NotAHomomorphism)?;
        let q_label = hom.get(tg.pair.1).ok_or(GadgetError::NotAHomomorphism)?;
        let row = retraction_row(tg.relation, p_label, q_label)
            .ok_or(GadgetError::NotAHomomorphism)?;
        set(tg.a, row[0])?;
        set(tg.b, row[1])?;
        set(tg.c, row[2])?;
        set(tg.d, row[3])?;
    }
    let labels: Vec<u8> = labels
        .into_iter()
        .collect::<Option<Vec<u8>>>()
        .ok_or_else(|| GadgetError::ExtensionFailed("unlabeled vertex".into()))?;
    let out = C4rHom { labels };
    if !check_retraction_c4r(d.graph(), *d.h(), &out) {
        return Err(GadgetError::ExtensionFailed(
            "extended labeling is not a retraction".into(),
        ));
    }
    Ok(out)
}

/// Restricts a retraction of the gadget graph to the element vertices and
/// validates that the restriction is a homomorphism to the three-element
/// structure. Failures flag a broken structural claim, not a user error.
pub fn restrict_retraction_to_hom(
    a: &DInstance,
    d: &DGraph,
    retraction: &C4rHom,
) -> Result<DHom, GadgetError> {
    if !check_retraction_c4r(d.graph(), *d.h(), retraction) {
        return Err(GadgetError::NotARetraction);
    }
    let mut map = BTreeMap::new();
    for &element in a.elements() {
        let v = d
            .element_vertex(element)
            .ok_or(GadgetError::IsolatedElement(element))?;
        let label = retraction.label(v);
        if label == 2 {
            return Err(GadgetError::ElementOnForbiddenVertex { element });
        }
        map.insert(element, label);
    }
    let hom = DHom::new(map)?;
    let mapping = hom
        .to_mapping(a)
        .ok_or(GadgetError::RestrictionNotHomomorphism)?;
    if !is_homomorphism(&a.to_structure(), &d_structure(), &mapping)? {
        return Err(GadgetError::RestrictionNotHomomorphism);
    }
    Ok(hom)
}

/// Extends a retraction of the base gadget graph over the whole
/// semi-compactor: companion images are forced by the base labels, and each
/// x vertex takes its table row's candidates intersected with `{1, 3}`,
/// preferring 1. The two rows without a valid image are reported as errors;
/// they cannot arise from an actual retraction.
pub fn extend_retraction_to_semicompactor(
    sc: &SemiCompactor,
    base_hom: &C4rHom,
) -> Result<C4rHom, GadgetError> {
    let base = sc.base();
    if !check_retraction_c4r(base.graph(), *base.h(), base_hom) {
        return Err(GadgetError::NotARetraction);
    }
    let mut labels = vec![0u8; sc.graph().n()];
    labels[..base.graph().n()].copy_from_slice(&base_hom.labels);
    for (&v, &u) in &sc.u_of {
        labels[u] = COMPANION_U[base_hom.label(v) as usize];
    }
    for (&v, &w) in &sc.w_of {
        labels[w] = COMPANION_W[base_hom.label(v) as usize];
    }
    for (&v, &y) in &sc.y_of {
        labels[y] = COMPANION_Y[base_hom.label(v) as usize];
    }
    for x in sc.x_vertices() {
        let tail_label = base_hom.label(x.tail);
        let head_label = base_hom.label(x.head);
        let row = semi_extension_row(tail_label, head_label).ok_or(GadgetError::ForbiddenRow {
            tail_label,
            head_label,
        })?;
        let image = if row.x_choices.contains(&1) {
            1
        } else if row.x_choices.contains(&3) {
            3
        } else {
            return Err(GadgetError::ForbiddenRow {
                tail_label,
                head_label,
            });
        };
        labels[x.vertex] = image;
    }
    let out = C4rHom { labels };
    if !check_retraction_c4r(sc.graph(), *base.h(), &out) {
        return Err(GadgetError::ExtensionFailed(
            "extended labeling is not a retraction of the semi-compactor".into(),
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Sidecar labels
// ---------------------------------------------------------------------------

/// One vertex's role, for the JSON sidecar accompanying emitted graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexLabel {
    H { h_index: u8 },
    Element { element: usize },
    A { owner: usize },
    B { owner: usize },
    C { owner: usize },
    D { owner: usize },
    U { companion_of: usize },
    W { companion_of: usize },
    Y { companion_of: usize },
    X { tail: usize, head: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledVertex {
    pub id: usize,
    #[serde(flatten)]
    pub label: VertexLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelFile {
    pub vertices: Vec<LabeledVertex>,
}

fn base_label(kind: GadgetVertex) -> VertexLabel {
    match kind {
        GadgetVertex::H(i) => VertexLabel::H { h_index: i },
        GadgetVertex::Element(e) => VertexLabel::Element { element: e },
        GadgetVertex::Gadget(GadgetKind::A, owner) => VertexLabel::A { owner },
        GadgetVertex::Gadget(GadgetKind::B, owner) => VertexLabel::B { owner },
        GadgetVertex::Gadget(GadgetKind::C, owner) => VertexLabel::C { owner },
        GadgetVertex::Gadget(GadgetKind::D, owner) => VertexLabel::D { owner },
    }
}

pub fn dgraph_label_file(d: &DGraph) -> LabelFile {
    LabelFile {
        vertices: (0..d.graph().n())
            .map(|id| LabeledVertex {
                id,
                label: base_label(d.kind(id)),
            })
            .collect(),
    }
}

fn companion_labels(
    total: usize,
    base_labels: Vec<VertexLabel>,
    u_of: &BTreeMap<usize, usize>,
    w_of: &BTreeMap<usize, usize>,
    y_of: &BTreeMap<usize, usize>,
    x_vertices: &[XVertex],
) -> LabelFile {
    let mut labels: Vec<Option<VertexLabel>> = vec![None; total];
    for (id, label) in base_labels.into_iter().enumerate() {
        labels[id] = Some(label);
    }
    for (&v, &u) in u_of {
        labels[u] = Some(VertexLabel::U { companion_of: v });
    }
    for (&v, &w) in w_of {
        labels[w] = Some(VertexLabel::W { companion_of: v });
    }
    for (&v, &y) in y_of {
        labels[y] = Some(VertexLabel::Y { companion_of: v });
    }
    for x in x_vertices {
        labels[x.vertex] = Some(VertexLabel::X {
            tail: x.tail,
            head: x.head,
        });
    }
    LabelFile {
        vertices: labels
            .into_iter()
            .enumerate()
            .map(|(id, label)| LabeledVertex {
                id,
                label: label.expect("every vertex is labeled"),
            })
            .collect(),
    }
}

pub fn semicompactor_label_file(sc: &SemiCompactor) -> LabelFile {
    let base_labels = (0..sc.base().graph().n())
        .map(|v| base_label(sc.base().kind(v)))
        .collect();
    companion_labels(
        sc.graph().n(),
        base_labels,
        &sc.u_of,
        &sc.w_of,
        &sc.y_of,
        &sc.x_vertices,
    )
}

/// Sidecar for a compactor built over a gadget graph.
pub fn compactor_label_file(base: &DGraph, c: &Compactor) -> LabelFile {
    let base_labels = (0..base.graph().n())
        .map(|v| base_label(base.kind(v)))
        .collect();
    companion_labels(
        c.graph.n(),
        base_labels,
        &c.u_of,
        &c.w_of,
        &c.y_of,
        &c.x_vertices,
    )
}

// ---------------------------------------------------------------------------
// Structural verification
// ---------------------------------------------------------------------------

/// Checks the structural wiring of a gadget graph: the induced 4-cycle, the
/// gadget triangles, the exact cycle neighborhoods per gadget kind, the
/// relation-specific edges, and the four kind cliques.
pub fn verify_dgraph_structure(d: &DGraph) -> Result<(), String> {
    let g = d.graph();
    let fail = |msg: String| Err(msg);
    if !g.is_loop_free() {
        return fail("gadget graph must be irreflexive".into());
    }
    validate_c4_embedding(g, *d.h()).map_err(|e| e.to_string())?;
    for v in 0..g.n() {
        match d.kind(v) {
            GadgetVertex::H(_) => {}
            GadgetVertex::Element(_) => {
                if !g.adjacent(v, d.h()[0]) {
                    return fail(format!("element vertex {v} misses its edge to cycle vertex 0"));
                }
            }
            GadgetVertex::Gadget(kind, _) => {
                let expected: BTreeSet<usize> = match kind {
                    GadgetKind::A => [d.h()[0], d.h()[3]],
                    GadgetKind::B => [d.h()[1], d.h()[2]],
                    GadgetKind::C => [d.h()[2], d.h()[3]],
                    GadgetKind::D => [d.h()[0], d.h()[1]],
                }
                .into_iter()
                .collect();
                let actual: BTreeSet<usize> = d
                    .h()
                    .iter()
                    .copied()
                    .filter(|&h| g.adjacent(v, h))
                    .collect();
                if actual != expected {
                    return fail(format!(
                        "gadget vertex {v} has cycle neighbors {actual:?}, expected {expected:?}"
                    ));
                }
            }
        }
    }
    for tg in d.tuple_gadgets() {
        let p_v = d.element_vertex(tg.pair.0).unwrap();
        let q_v = d.element_vertex(tg.pair.1).unwrap();
        let mut need = vec![
            (tg.a, p_v),
            (tg.a, tg.b),
            (tg.b, p_v),
            (tg.c, q_v),
            (tg.c, tg.d),
            (tg.d, q_v),
        ];
        match tg.relation {
            1 => need.extend([(tg.c, p_v), (q_v, d.h()[2])]),
            2 => need.extend([(d.h()[2], p_v), (tg.b, q_v)]),
            3 => need.extend([(d.h()[2], p_v), (d.h()[2], q_v), (tg.a, tg.c)]),
            4 => need.extend([(d.h()[2], p_v), (d.h()[2], q_v), (tg.b, tg.d)]),
            _ => unreachable!(),
        }
        for (u, v) in need {
            if !g.adjacent(u, v) {
                return fail(format!(
                    "missing edge ({u},{v}) for pair {:?} in R{}",
                    tg.pair, tg.relation
                ));
            }
        }
    }
    for u in 0..g.n() {
        let GadgetVertex::Gadget(ku, _) = d.kind(u) else {
            continue;
        };
        for v in u + 1..g.n() {
            if matches!(d.kind(v), GadgetVertex::Gadget(kv, _) if kv == ku) && !g.adjacent(u, v) {
                return fail(format!("same-kind gadget vertices {u} and {v} not adjacent"));
            }
        }
    }
    Ok(())
}

/// Checks the structural wiring of a semi-compactor: the eleven companion
/// edges per base vertex, the u- and w-cliques, the exact six-neighbor sets
/// of the x vertices, and the orientation listing (no x inside a kind
/// clique, everything else decorated exactly once).
pub fn verify_semicompactor_structure(sc: &SemiCompactor) -> Result<(), String> {
    let g = sc.graph();
    let base = sc.base();
    let hub = base.h();
    for v in base.non_h_vertices() {
        let (u, w, y) = (
            sc.u_of(v).ok_or(format!("vertex {v} has no u companion"))?,
            sc.w_of(v).ok_or(format!("vertex {v} has no w companion"))?,
            sc.y_of(v).ok_or(format!("vertex {v} has no y companion"))?,
        );
        for (a, b) in [
            (hub[0], u),
            (hub[0], y),
            (hub[1], u),
            (hub[2], w),
            (hub[2], y),
            (hub[3], w),
            (u, v),
            (u, w),
            (u, y),
            (v, w),
            (w, y),
        ] {
            if !g.adjacent(a, b) {
                return Err(format!("companion edge ({a},{b}) of base vertex {v} missing"));
            }
        }
    }
    let us: Vec<usize> = sc.u_of.values().copied().collect();
    let ws: Vec<usize> = sc.w_of.values().copied().collect();
    for block in [&us, &ws] {
        for i in 0..block.len() {
            for j in i + 1..block.len() {
                if !g.adjacent(block[i], block[j]) {
                    return Err(format!(
                        "companion clique misses edge ({},{})",
                        block[i], block[j]
                    ));
                }
            }
        }
    }
    for x in sc.x_vertices() {
        let expected: BTreeSet<usize> = [
            x.tail,
            x.head,
            sc.u_of(x.tail).unwrap(),
            sc.w_of(x.head).unwrap(),
            hub[0],
            hub[2],
        ]
        .into_iter()
        .collect();
        let actual: BTreeSet<usize> = g.neighbors(x.vertex).collect();
        if actual != expected {
            return Err(format!(
                "x vertex {} has neighbors {actual:?}, expected {expected:?}",
                x.vertex
            ));
        }
    }
    let listed: BTreeSet<(usize, usize)> = sc
        .x_vertices()
        .iter()
        .map(|x| (x.tail.min(x.head), x.tail.max(x.head)))
        .collect();
    if listed.len() != sc.x_vertices().len() {
        return Err("duplicate x decoration".into());
    }
    for &(u, v) in &listed {
        if let (GadgetVertex::Gadget(a, _), GadgetVertex::Gadget(b, _)) =
            (base.kind(u), base.kind(v))
        {
            if a == b {
                return Err(format!("x vertex decorates clique edge ({u},{v})"));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1_fixture() -> DInstance {
        DInstance::new(vec![0, 1], vec![(0, 1)], vec![], vec![], vec![]).unwrap()
    }

    #[test]
    fn instance_validation() {
        assert!(matches!(
            DInstance::new(vec![0, 0], vec![], vec![], vec![], vec![]),
            Err(GadgetError::DuplicateElement(0))
        ));
        assert!(matches!(
            DInstance::new(vec![0], vec![(0, 5)], vec![], vec![], vec![]),
            Err(GadgetError::UnknownElement { relation: 1, .. })
        ));
    }

    #[test]
    fn isolated_elements_are_rejected_at_build() {
        let a = DInstance::new(vec![0, 1, 2], vec![(0, 1)], vec![], vec![], vec![]).unwrap();
        assert!(matches!(
            build_d_graph(&a),
            Err(GadgetError::IsolatedElement(2))
        ));
    }

    #[test]
    fn instance_json_round_trip() {
        let a = DInstance::new(vec![3, 7], vec![(3, 7)], vec![], vec![(7, 7)], vec![]).unwrap();
        let text = a.to_json();
        assert_eq!(DInstance::from_json(&text).unwrap(), a);
        assert!(DInstance::from_json("{\"elements\": [0]}").is_err());
    }

    #[test]
    fn single_pair_gadget_graph_counts() {
        let d = build_d_graph(&r1_fixture()).unwrap();
        assert_eq!(d.graph().n(), 10);
        assert_eq!(d.graph().edge_count(), 22);
        verify_dgraph_structure(&d).unwrap();
    }

    #[test]
    fn both_typed_element_carries_all_four_gadgets() {
        let a = DInstance::new(vec![5], vec![], vec![], vec![(5, 5)], vec![]).unwrap();
        let d = build_d_graph(&a).unwrap();
        // 4 cycle vertices + the element + a, b, c, d
        assert_eq!(d.graph().n(), 9);
        assert!(d.is_left_element(5) && d.is_right_element(5));
        verify_dgraph_structure(&d).unwrap();
    }

    #[test]
    fn per_tuple_mode_duplicates_gadgets() {
        let a = DInstance::new(vec![0, 1], vec![(0, 1), (0, 0)], vec![], vec![], vec![]).unwrap();
        let shared = build_d_graph(&a).unwrap();
        let duplicated = build_d_graph_with(&a, GadgetMode::PerTuple).unwrap();
        assert!(duplicated.graph().n() > shared.graph().n());
        verify_dgraph_structure(&duplicated).unwrap();
        let sc = build_semi_compactor(duplicated);
        verify_semicompactor_structure(&sc).unwrap();
    }

    #[test]
    fn semi_compactor_of_the_single_pair_fixture() {
        let sc = reduce_instance(&r1_fixture()).unwrap();
        assert_eq!(sc.graph().n(), 35);
        assert_eq!(sc.x_vertices().len(), 7);
        for x in sc.x_vertices() {
            assert_eq!(sc.graph().degree(x.vertex), 6);
        }
        verify_semicompactor_structure(&sc).unwrap();
    }

    #[test]
    fn extension_follows_the_tables() {
        let a = r1_fixture();
        let d = build_d_graph(&a).unwrap();
        let hom = DHom::new([(0, 0u8), (1, 3u8)].into_iter().collect()).unwrap();
        let ret = extend_hom_to_retraction(&a, &d, &hom).unwrap();
        // table row (0,3): a->0, b->1, c->3, d->0
        let find = |kind: GadgetKind| {
            (0..d.graph().n())
                .find(|&v| matches!(d.kind(v), GadgetVertex::Gadget(k, _) if k == kind))
                .unwrap()
        };
        assert_eq!(ret.label(find(GadgetKind::A)), 0);
        assert_eq!(ret.label(find(GadgetKind::B)), 1);
        assert_eq!(ret.label(find(GadgetKind::C)), 3);
        assert_eq!(ret.label(find(GadgetKind::D)), 0);

        let restricted = restrict_retraction_to_hom(&a, &d, &ret).unwrap();
        assert_eq!(restricted, hom);
    }

    #[test]
    fn non_homomorphisms_are_rejected() {
        let a = r1_fixture();
        let d = build_d_graph(&a).unwrap();
        // (1, 0) is not in the first relation
        let bad = DHom::new([(0, 1u8), (1, 0u8)].into_iter().collect()).unwrap();
        assert_eq!(
            extend_hom_to_retraction(&a, &d, &bad),
            Err(GadgetError::NotAHomomorphism)
        );
        assert!(matches!(
            DHom::new([(0, 2u8)].into_iter().collect()),
            Err(GadgetError::BadLabel(2))
        ));
    }

    #[test]
    fn semicompactor_extension_round_trip() {
        let a = r1_fixture();
        let sc = reduce_instance(&a).unwrap();
        let hom = DHom::new([(0, 0u8), (1, 3u8)].into_iter().collect()).unwrap();
        let base_ret = extend_hom_to_retraction(&a, sc.base(), &hom).unwrap();
        let full = extend_retraction_to_semicompactor(&sc, &base_ret).unwrap();
        assert!(check_retraction_c4r(sc.graph(), *sc.base().h(), &full));
        // x images always land on 1 or 3
        for x in sc.x_vertices() {
            assert!(matches!(full.label(x.vertex), 1 | 3));
        }
    }

    #[test]
    fn compactor_is_built_without_cycle_wiring() {
        let a = r1_fixture();
        let d = build_d_graph(&a).unwrap();
        let c = build_compactor(d.graph(), *d.h()).unwrap();
        assert_eq!(c.graph.n(), 35);
        for x in &c.x_vertices {
            assert_eq!(c.graph.degree(x.vertex), 4);
            assert!(!c.graph.adjacent(x.vertex, 0));
            assert!(!c.graph.adjacent(x.vertex, 2));
        }
    }
}
