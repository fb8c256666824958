//! Witness checkers: direct definition scans, kept independent of the
//! search code so every solver result can be re-validated.

use super::c4r::{labels_compatible, C4rHom};
use super::contraction::ContractionWitness;
use super::cut::CutWitness;
use super::partition::{BicliqueCoverWitness, PartitionWitness};
use crate::graph::{Graph, ModelGraph, VertexSet};

fn is_partition(g: &Graph, parts: &[&VertexSet]) -> bool {
    let mut seen = vec![false; g.n()];
    for part in parts {
        for v in part.iter() {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Both the cut and its complement induce at least two components.
pub fn check_disconnected_cut(g: &Graph, w: &CutWitness) -> bool {
    if !w.cut.is_valid_for(g) || w.cut.is_empty() || w.cut.len() >= g.n() {
        return false;
    }
    let rest = w.cut.complement_in(g.n());
    g.component_count_within(&w.cut) >= 2 && g.component_count_within(&rest) >= 2
}

/// Nonempty blocks partitioning the vertex set, solid model edges fully
/// realized, dotted model edges fully absent.
pub fn check_model_partition(g: &Graph, model: &ModelGraph, w: &PartitionWitness) -> bool {
    if w.blocks.len() != model.k() || w.blocks.iter().any(VertexSet::is_empty) {
        return false;
    }
    if !is_partition(g, &w.blocks.iter().collect::<Vec<_>>()) {
        return false;
    }
    for i in 0..model.k() {
        for j in i + 1..model.k() {
            let solid = model.is_solid(i, j);
            let dotted = model.is_dotted(i, j);
            if !solid && !dotted {
                continue;
            }
            for u in w.blocks[i].iter() {
                for v in w.blocks[j].iter() {
                    let adjacent = g.adjacent(u, v);
                    if (solid && !adjacent) || (dotted && adjacent) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Four nonempty sets partitioning the vertex set with the two cross pairs
/// complete.
pub fn check_biclique_cover(g: &Graph, w: &BicliqueCoverWitness) -> bool {
    let parts = [&w.x1, &w.x2, &w.y1, &w.y2];
    if parts.iter().any(|p| p.is_empty()) || !is_partition(g, &parts) {
        return false;
    }
    let complete = |a: &VertexSet, b: &VertexSet| {
        a.iter().all(|u| b.iter().all(|v| g.adjacent(u, v)))
    };
    complete(&w.x1, &w.x2) && complete(&w.y1, &w.y2)
}

/// Every edge image avoids the two diagonals. Loops are unconstrained.
pub fn check_hom_c4r(g: &Graph, hom: &C4rHom) -> bool {
    hom.labels.len() == g.n()
        && hom.labels.iter().all(|&l| l < 4)
        && g.edges()
            .all(|(u, v)| labels_compatible(hom.label(u), hom.label(v)))
}

/// Homomorphism hitting all four labels.
pub fn check_surjective_hom_c4r(g: &Graph, hom: &C4rHom) -> bool {
    check_hom_c4r(g, hom)
        && (0..4u8).all(|l| hom.labels.iter().any(|&x| x == l))
}

/// Homomorphism fixing the embedded cycle pointwise.
pub fn check_retraction_c4r(g: &Graph, emb: [usize; 4], hom: &C4rHom) -> bool {
    check_hom_c4r(g, hom) && emb.iter().enumerate().all(|(i, &v)| hom.label(v) == i as u8)
}

/// Homomorphism covering all four cycle edges with source edges. Loop
/// coverage is not required.
pub fn check_compaction_c4r(g: &Graph, hom: &C4rHom) -> bool {
    if !check_hom_c4r(g, hom) {
        return false;
    }
    let mut covered = [false; 4];
    for (u, v) in g.edges() {
        let (a, b) = (hom.label(u), hom.label(v));
        match (a.min(b), a.max(b)) {
            (0, 1) => covered[0] = true,
            (1, 2) => covered[1] = true,
            (2, 3) => covered[2] = true,
            (0, 3) => covered[3] = true,
            _ => {}
        }
    }
    covered.into_iter().all(|c| c)
}

/// Connected blocks partitioning the vertex set; at least two blocks per
/// side; no edge between distinct same-side blocks; at least one edge
/// between every cross-side block pair.
pub fn check_contraction(g: &Graph, w: &ContractionWitness) -> bool {
    let b = w.blocks.len();
    if w.side.len() != b || w.side.iter().any(|&s| s > 1) {
        return false;
    }
    if !is_partition(g, &w.blocks.iter().collect::<Vec<_>>()) {
        return false;
    }
    if w.blocks
        .iter()
        .any(|block| block.is_empty() || g.component_count_within(block) != 1)
    {
        return false;
    }
    let count0 = w.side.iter().filter(|&&s| s == 0).count();
    if count0 < 2 || b - count0 < 2 {
        return false;
    }
    for i in 0..b {
        for j in i + 1..b {
            let linked = w.blocks[i]
                .iter()
                .any(|u| w.blocks[j].iter().any(|v| g.adjacent(u, v)));
            if w.side[i] == w.side[j] {
                if linked {
                    return false;
                }
            } else if !linked {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cut_checker_rejects_bad_sets() {
        let g = Graph::path(4);
        let good = CutWitness {
            cut: [0, 2].into_iter().collect(),
        };
        assert!(check_disconnected_cut(&g, &good));
        let whole = CutWitness {
            cut: (0..4).collect(),
        };
        assert!(!check_disconnected_cut(&g, &whole));
        let connected_side = CutWitness {
            cut: [0, 1].into_iter().collect(),
        };
        assert!(!check_disconnected_cut(&g, &connected_side));
    }

    #[test]
    fn surjectivity_and_coverage_are_checked() {
        let g = Graph::cycle(4);
        let identity = C4rHom {
            labels: vec![0, 1, 2, 3],
        };
        assert!(check_surjective_hom_c4r(&g, &identity));
        assert!(check_compaction_c4r(&g, &identity));
        assert!(check_retraction_c4r(&g, [0, 1, 2, 3], &identity));
        let constant = C4rHom {
            labels: vec![0; 4],
        };
        assert!(check_hom_c4r(&g, &constant));
        assert!(!check_surjective_hom_c4r(&g, &constant));
        assert!(!check_compaction_c4r(&g, &constant));
        let diagonal = C4rHom {
            labels: vec![0, 2, 0, 2],
        };
        assert!(!check_hom_c4r(&g, &diagonal));
    }

    #[test]
    fn contraction_checker_spots_side_violations() {
        let g = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]);
        let blocks: Vec<VertexSet> = (0..4).map(|v| [v].into_iter().collect()).collect();
        let good = ContractionWitness {
            blocks: blocks.clone(),
            side: vec![0, 0, 1, 1],
        };
        assert!(check_contraction(&g, &good));
        let bad = ContractionWitness {
            blocks,
            side: vec![0, 1, 0, 1],
        };
        assert!(!check_contraction(&g, &bad));
    }
}
