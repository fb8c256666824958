//! The constructive extension tables and the per-class distance-witness
//! tables for gadget graphs and semi-compactors.
//!
//! Labels are cycle-vertex indices `0..=3`; element labels `{0, 1, 3}`
//! coincide with the indices of the cycle vertices they map to.

use crate::gadgets::{DGraph, GadgetKind, GadgetVertex, SemiCompactor};
use crate::graph::Graph;

/// Row of a retraction-extension table: the labels of `(p, q)` determine the
/// labels of the four gadget vertices `[a_p, b_p, c_q, d_q]`.
pub type RetractionRow = ((u8, u8), [u8; 4]);

pub const RETRACTION_TABLE_R1: [RetractionRow; 4] = [
    ((0, 3), [0, 1, 3, 0]),
    ((1, 1), [0, 1, 2, 1]),
    ((3, 1), [3, 2, 2, 1]),
    ((3, 3), [3, 2, 3, 0]),
];

pub const RETRACTION_TABLE_R2: [RetractionRow; 4] = [
    ((1, 0), [0, 1, 3, 0]),
    ((1, 1), [0, 1, 2, 1]),
    ((3, 1), [3, 2, 2, 1]),
    ((3, 3), [3, 2, 3, 0]),
];

pub const RETRACTION_TABLE_R3: [RetractionRow; 3] = [
    ((1, 3), [0, 1, 3, 0]),
    ((3, 1), [3, 2, 2, 1]),
    ((3, 3), [3, 2, 3, 0]),
];

pub const RETRACTION_TABLE_R4: [RetractionRow; 3] = [
    ((1, 1), [0, 1, 2, 1]),
    ((1, 3), [0, 1, 3, 0]),
    ((3, 1), [3, 2, 2, 1]),
];

/// The rows for relation `R{relation}`, `relation` in `1..=4`.
pub fn retraction_table(relation: usize) -> &'static [RetractionRow] {
    match relation {
        1 => &RETRACTION_TABLE_R1,
        2 => &RETRACTION_TABLE_R2,
        3 => &RETRACTION_TABLE_R3,
        4 => &RETRACTION_TABLE_R4,
        _ => panic!("relation index {relation} out of range 1..=4"),
    }
}

/// Gadget labels `[a_p, b_p, c_q, d_q]` for a pair labeled
/// `(p_label, q_label)` under relation `relation`, if the table has a row.
pub fn retraction_row(relation: usize, p_label: u8, q_label: u8) -> Option<[u8; 4]> {
    retraction_table(relation)
        .iter()
        .find(|((p, q), _)| *p == p_label && *q == q_label)
        .map(|(_, values)| *values)
}

/// Companion images forced by a base label: `u` companions land on the
/// `{0, 1}` side, `w` companions on `{2, 3}`, `y` companions on `{1, 3}`.
/// Indexed by the base vertex's label.
pub const COMPANION_U: [u8; 4] = [0, 1, 1, 0];
pub const COMPANION_W: [u8; 4] = [3, 2, 2, 3];
pub const COMPANION_Y: [u8; 4] = [3, 1, 1, 3];

/// One row of the semi-compactor extension table: the labels of an oriented
/// decorated edge `(tail, head)` force the companion images and leave the
/// listed candidates for the x vertex (before intersecting with `{1, 3}`,
/// which the wiring to cycle vertices 0 and 2 imposes).
#[derive(Debug, Clone, Copy)]
pub struct SemiExtensionRow {
    pub tail_label: u8,
    pub head_label: u8,
    pub u_tail: u8,
    pub u_head: u8,
    pub w_tail: u8,
    pub w_head: u8,
    pub y_tail: u8,
    pub y_head: u8,
    pub x_choices: &'static [u8],
}

const fn semi_row(
    tail_label: u8,
    head_label: u8,
    u_tail: u8,
    u_head: u8,
    w_tail: u8,
    w_head: u8,
    y_tail: u8,
    y_head: u8,
    x_choices: &'static [u8],
) -> SemiExtensionRow {
    SemiExtensionRow {
        tail_label,
        head_label,
        u_tail,
        u_head,
        w_tail,
        w_head,
        y_tail,
        y_head,
        x_choices,
    }
}

/// All twelve label combinations an edge can carry (the four diagonal pairs
/// cannot occur on an edge). Rows 4 and 9 — labels `(1,0)` and `(2,3)` —
/// offer only an image outside `{1, 3}` and can never arise from an actual
/// retraction; the extension reports them as errors.
pub const SEMI_EXTENSION_TABLE: [SemiExtensionRow; 12] = [
    semi_row(0, 0, 0, 0, 3, 3, 3, 3, &[0, 3]),
    semi_row(0, 1, 0, 1, 3, 2, 3, 1, &[1]),
    semi_row(0, 3, 0, 0, 3, 3, 3, 3, &[0, 3]),
    semi_row(1, 0, 1, 0, 2, 3, 1, 3, &[0]),
    semi_row(1, 1, 1, 1, 2, 2, 1, 1, &[1, 2]),
    semi_row(1, 2, 1, 1, 2, 2, 1, 1, &[1, 2]),
    semi_row(2, 1, 1, 1, 2, 2, 1, 1, &[1, 2]),
    semi_row(2, 2, 1, 1, 2, 2, 1, 1, &[1, 2]),
    semi_row(2, 3, 1, 0, 2, 3, 1, 3, &[2]),
    semi_row(3, 0, 0, 0, 3, 3, 3, 3, &[0, 3]),
    semi_row(3, 2, 0, 1, 3, 2, 3, 1, &[3]),
    semi_row(3, 3, 0, 0, 3, 3, 3, 3, &[0, 3]),
];

pub fn semi_extension_row(tail_label: u8, head_label: u8) -> Option<&'static SemiExtensionRow> {
    SEMI_EXTENSION_TABLE
        .iter()
        .find(|row| row.tail_label == tail_label && row.head_label == head_label)
}

// ---------------------------------------------------------------------------
// Distance-witness tables
// ---------------------------------------------------------------------------

/// Vertex classes of a gadget graph as used by the distance table. An
/// element vertex may be in both element classes at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseClass {
    H0,
    H1,
    H2,
    H3,
    LeftElem,
    RightElem,
    TypeA,
    TypeB,
    TypeC,
    TypeD,
}

/// How a non-adjacent pair of the two classes reaches distance 2: through a
/// named cycle vertex or through some vertex of a named class.
#[derive(Debug, Clone, Copy)]
pub enum Via {
    Hub(u8),
    Kind(BaseClass),
}

/// Distance claim for a class pair. `Adjacent` cells promise an actual edge
/// for every cross pair; `TwoVia` cells promise adjacency or a listed
/// intermediate; `TwoPlain` promises distance at most 2 with no named
/// witness.
#[derive(Debug, Clone, Copy)]
pub enum DistBound {
    Adjacent,
    TwoVia(&'static [Via]),
    TwoPlain,
}

use BaseClass::*;
use DistBound::*;
use Via::*;

fn class_rank(c: BaseClass) -> usize {
    match c {
        H0 => 0,
        H1 => 1,
        H2 => 2,
        H3 => 3,
        LeftElem => 4,
        RightElem => 5,
        TypeA => 6,
        TypeB => 7,
        TypeC => 8,
        TypeD => 9,
    }
}

/// The gadget-graph distance table, looked up symmetrically.
pub fn base_distance_bound(x: BaseClass, y: BaseClass) -> DistBound {
    let (a, b) = if class_rank(x) <= class_rank(y) {
        (x, y)
    } else {
        (y, x)
    };
    match (a, b) {
        (H0, H0) | (H1, H1) | (H2, H2) | (H3, H3) => TwoPlain,
        (H0, H1) | (H0, H3) | (H0, LeftElem) | (H0, RightElem) | (H0, TypeA) | (H0, TypeD) => {
            Adjacent
        }
        (H0, H2) | (H0, TypeB) => TwoVia(&[Hub(1)]),
        (H0, TypeC) => TwoVia(&[Hub(3)]),
        (H1, H2) | (H1, TypeB) | (H1, TypeD) => Adjacent,
        (H1, H3) | (H1, LeftElem) | (H1, RightElem) | (H1, TypeA) => TwoVia(&[Hub(0)]),
        (H1, TypeC) => TwoVia(&[Hub(2)]),
        (H2, H3) | (H2, TypeB) | (H2, TypeC) => Adjacent,
        (H2, LeftElem) | (H2, TypeA) => TwoVia(&[Kind(TypeB)]),
        (H2, RightElem) | (H2, TypeD) => TwoVia(&[Kind(TypeC)]),
        (H3, TypeA) | (H3, TypeC) => Adjacent,
        (H3, LeftElem) | (H3, RightElem) => TwoVia(&[Hub(0)]),
        (H3, TypeB) => TwoVia(&[Kind(TypeA)]),
        (H3, TypeD) => TwoVia(&[Kind(TypeC)]),
        (LeftElem, LeftElem) | (LeftElem, RightElem) | (LeftElem, TypeA) | (LeftElem, TypeD) => {
            TwoVia(&[Hub(0)])
        }
        (LeftElem, TypeB) => TwoVia(&[Kind(TypeB)]),
        (LeftElem, TypeC) => TwoVia(&[Hub(2), Kind(TypeC)]),
        (RightElem, RightElem) | (RightElem, TypeA) | (RightElem, TypeD) => TwoVia(&[Hub(0)]),
        (RightElem, TypeB) => TwoVia(&[Hub(2), Kind(TypeB)]),
        (RightElem, TypeC) => TwoVia(&[Kind(TypeC)]),
        (TypeA, TypeA) | (TypeB, TypeB) | (TypeC, TypeC) | (TypeD, TypeD) => Adjacent,
        (TypeA, TypeB) => TwoVia(&[Kind(TypeA)]),
        (TypeA, TypeC) => TwoVia(&[Hub(3)]),
        (TypeA, TypeD) => TwoVia(&[Hub(0)]),
        (TypeB, TypeC) => TwoVia(&[Hub(2)]),
        (TypeB, TypeD) => TwoVia(&[Hub(1)]),
        (TypeC, TypeD) => TwoVia(&[Kind(TypeC)]),
        _ => unreachable!("pairs are canonicalized"),
    }
}

/// Vertex classes of a semi-compactor: base vertices keep their own table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScClass {
    BaseVertex,
    TypeU,
    TypeW,
    TypeY,
    TypeX,
}

/// Witness for semi-compactor class pairs: a named cycle vertex or any
/// vertex of a companion class.
#[derive(Debug, Clone, Copy)]
pub enum ScVia {
    Hub(u8),
    Kind(ScClass),
}

#[derive(Debug, Clone, Copy)]
pub enum ScDistBound {
    Adjacent,
    TwoVia(&'static [ScVia]),
    TwoPlain,
}

fn sc_rank(c: ScClass) -> usize {
    match c {
        ScClass::BaseVertex => 0,
        ScClass::TypeU => 1,
        ScClass::TypeW => 2,
        ScClass::TypeY => 3,
        ScClass::TypeX => 4,
    }
}

/// The semi-compactor distance table, looked up symmetrically. Rows against
/// base vertices carry no named witness.
pub fn sc_distance_bound(x: ScClass, y: ScClass) -> ScDistBound {
    let (a, b) = if sc_rank(x) <= sc_rank(y) { (x, y) } else { (y, x) };
    match (a, b) {
        (ScClass::BaseVertex, _) => ScDistBound::TwoPlain,
        (ScClass::TypeU, ScClass::TypeU) | (ScClass::TypeW, ScClass::TypeW) => {
            ScDistBound::Adjacent
        }
        (ScClass::TypeU, ScClass::TypeW) => ScDistBound::TwoVia(&[ScVia::Kind(ScClass::TypeW)]),
        (ScClass::TypeU, ScClass::TypeY) | (ScClass::TypeU, ScClass::TypeX) => {
            ScDistBound::TwoVia(&[ScVia::Hub(0)])
        }
        (ScClass::TypeW, ScClass::TypeY) | (ScClass::TypeW, ScClass::TypeX) => {
            ScDistBound::TwoVia(&[ScVia::Hub(2)])
        }
        (ScClass::TypeY, ScClass::TypeY)
        | (ScClass::TypeY, ScClass::TypeX)
        | (ScClass::TypeX, ScClass::TypeX) => ScDistBound::TwoVia(&[ScVia::Hub(0)]),
        _ => unreachable!("pairs are canonicalized"),
    }
}

// ---------------------------------------------------------------------------
// Table checkers
// ---------------------------------------------------------------------------

fn classes_of(d: &DGraph, v: usize) -> Vec<BaseClass> {
    match d.kind(v) {
        GadgetVertex::H(i) => vec![[H0, H1, H2, H3][i as usize]],
        GadgetVertex::Element(e) => {
            let mut out = Vec::new();
            if d.is_left_element(e) {
                out.push(LeftElem);
            }
            if d.is_right_element(e) {
                out.push(RightElem);
            }
            out
        }
        GadgetVertex::Gadget(kind, _) => vec![match kind {
            GadgetKind::A => TypeA,
            GadgetKind::B => TypeB,
            GadgetKind::C => TypeC,
            GadgetKind::D => TypeD,
        }],
    }
}

fn two_via_holds(
    g: &Graph,
    x: usize,
    y: usize,
    vias: &[Via],
    hub: &[usize; 4],
    class_members: &dyn Fn(BaseClass) -> Vec<usize>,
) -> bool {
    vias.iter().any(|via| match via {
        Hub(i) => {
            let z = hub[*i as usize];
            z != x && z != y && g.adjacent(x, z) && g.adjacent(z, y)
        }
        Kind(c) => class_members(*c)
            .into_iter()
            .any(|z| z != x && z != y && g.adjacent(x, z) && g.adjacent(z, y)),
    })
}

/// Checks every cell of the gadget-graph distance table on a concrete
/// gadget graph: `Adjacent` cells are real edges, `TwoVia` cells realize a
/// named intermediate, and all pairs sit at distance at most 2.
pub fn check_dgraph_distance_table(d: &DGraph) -> Result<(), String> {
    let g = d.graph();
    let members = |c: BaseClass| -> Vec<usize> {
        (0..g.n()).filter(|&v| classes_of(d, v).contains(&c)).collect()
    };
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            if g.distance(x, y).is_none_or(|dist| dist > 2) {
                return Err(format!("vertices {x} and {y} are more than 2 apart"));
            }
            for cx in classes_of(d, x) {
                for cy in classes_of(d, y) {
                    match base_distance_bound(cx, cy) {
                        Adjacent => {
                            if !g.adjacent(x, y) {
                                return Err(format!(
                                    "classes {cx:?}/{cy:?}: pair ({x},{y}) should be adjacent"
                                ));
                            }
                        }
                        TwoVia(vias) => {
                            if !g.adjacent(x, y)
                                && !two_via_holds(g, x, y, vias, d.h(), &members)
                            {
                                return Err(format!(
                                    "classes {cx:?}/{cy:?}: pair ({x},{y}) misses its witness"
                                ));
                            }
                        }
                        TwoPlain => {}
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks every cell of the semi-compactor distance table on a concrete
/// semi-compactor.
pub fn check_sc_distance_table(sc: &SemiCompactor) -> Result<(), String> {
    let g = sc.graph();
    let class = |v: usize| sc.class_of(v);
    let members = |c: ScClass| -> Vec<usize> { (0..g.n()).filter(|&v| class(v) == c).collect() };
    let hub = sc.base().h();
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            if g.distance(x, y).is_none_or(|dist| dist > 2) {
                return Err(format!("vertices {x} and {y} are more than 2 apart"));
            }
            match sc_distance_bound(class(x), class(y)) {
                ScDistBound::Adjacent => {
                    if !g.adjacent(x, y) {
                        return Err(format!(
                            "classes {:?}/{:?}: pair ({x},{y}) should be adjacent",
                            class(x),
                            class(y)
                        ));
                    }
                }
                ScDistBound::TwoVia(vias) => {
                    let ok = g.adjacent(x, y)
                        || vias.iter().any(|via| match via {
                            ScVia::Hub(i) => {
                                let z = hub[*i as usize];
                                z != x && z != y && g.adjacent(x, z) && g.adjacent(z, y)
                            }
                            ScVia::Kind(c) => members(*c)
                                .into_iter()
                                .any(|z| z != x && z != y && g.adjacent(x, z) && g.adjacent(z, y)),
                        });
                    if !ok {
                        return Err(format!(
                            "classes {:?}/{:?}: pair ({x},{y}) misses its witness",
                            class(x),
                            class(y)
                        ));
                    }
                }
                ScDistBound::TwoPlain => {}
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relational::d_relation_pairs;

    #[test]
    fn retraction_table_rows_match_the_relations() {
        for relation in 1..=4 {
            let mut keys: Vec<(usize, usize)> = retraction_table(relation)
                .iter()
                .map(|((p, q), _)| (*p as usize, *q as usize))
                .collect();
            keys.sort();
            let mut pairs = d_relation_pairs(relation).to_vec();
            pairs.sort();
            assert_eq!(keys, pairs, "relation {relation}");
        }
    }

    #[test]
    fn companion_maps_agree_with_the_extension_table() {
        for row in &SEMI_EXTENSION_TABLE {
            assert_eq!(row.u_tail, COMPANION_U[row.tail_label as usize]);
            assert_eq!(row.u_head, COMPANION_U[row.head_label as usize]);
            assert_eq!(row.w_tail, COMPANION_W[row.tail_label as usize]);
            assert_eq!(row.w_head, COMPANION_W[row.head_label as usize]);
            assert_eq!(row.y_tail, COMPANION_Y[row.tail_label as usize]);
            assert_eq!(row.y_head, COMPANION_Y[row.head_label as usize]);
        }
    }

    #[test]
    fn extension_rows_cover_exactly_the_compatible_pairs() {
        let mut count = 0;
        for a in 0..4u8 {
            for b in 0..4u8 {
                let compatible = crate::problems::labels_compatible(a, b);
                assert_eq!(semi_extension_row(a, b).is_some(), compatible);
                count += usize::from(compatible);
            }
        }
        assert_eq!(count, SEMI_EXTENSION_TABLE.len());
    }

    #[test]
    fn exactly_two_rows_have_no_odd_image() {
        let dead: Vec<(u8, u8)> = SEMI_EXTENSION_TABLE
            .iter()
            .filter(|row| !row.x_choices.iter().any(|&c| c == 1 || c == 3))
            .map(|row| (row.tail_label, row.head_label))
            .collect();
        assert_eq!(dead, vec![(1, 0), (2, 3)]);
    }
}
