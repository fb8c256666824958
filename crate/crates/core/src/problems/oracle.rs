//! Naive enumeration deciders. Each one walks the full candidate space and
//! decides via the definition checkers in [`super::witness`]; they exist to
//! cross-check the real solvers on small inputs and are deliberately free of
//! search heuristics.

use super::c4r::{validate_c4_embedding, C4rHom};
use super::contraction::ContractionWitness;
use super::cut::CutWitness;
use super::partition::{BicliqueCoverWitness, PartitionWitness};
use super::witness;
use super::ProblemError;
use crate::graph::{Graph, ModelGraph, VertexSet};

/// Subset enumeration stays feasible up to this many vertices.
pub const SUBSET_ORACLE_BOUND: usize = 18;

/// Labeling enumeration (4^n / k^n) cap.
pub const LABELING_ORACLE_BOUND: usize = 12;

fn check_subset_bound(n: usize) -> Result<(), ProblemError> {
    if n > SUBSET_ORACLE_BOUND {
        return Err(ProblemError::SizeBound {
            n,
            bound: SUBSET_ORACLE_BOUND,
        });
    }
    Ok(())
}

fn check_labeling_bound(n: usize) -> Result<(), ProblemError> {
    if n > LABELING_ORACLE_BOUND {
        return Err(ProblemError::SizeBound {
            n,
            bound: LABELING_ORACLE_BOUND,
        });
    }
    Ok(())
}

/// All `k^n` labelings in lexicographic order (least significant = vertex 0).
fn labelings(n: usize, k: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (k as u64).pow(n as u32);
    (0..total).map(move |mut index| {
        (0..n)
            .map(|_| {
                let digit = (index % k as u64) as u8;
                index /= k as u64;
                digit
            })
            .collect()
    })
}

/// Disconnected cut by enumerating all vertex subsets.
pub fn cut_by_enumeration(g: &Graph) -> Result<Option<CutWitness>, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    if !g.is_connected() {
        return Err(ProblemError::DisconnectedInput);
    }
    check_subset_bound(g.n())?;
    for mask in 1u64..(1u64 << g.n()).saturating_sub(1) {
        let candidate = CutWitness {
            cut: (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect(),
        };
        if witness::check_disconnected_cut(g, &candidate) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// H-partition by enumerating all block labelings.
pub fn model_partition_by_enumeration(
    g: &Graph,
    model: &ModelGraph,
) -> Result<Option<PartitionWitness>, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    check_labeling_bound(g.n())?;
    for labeling in labelings(g.n(), model.k()) {
        let mut blocks = vec![VertexSet::new(); model.k()];
        for (v, &b) in labeling.iter().enumerate() {
            blocks[b as usize].insert(v);
        }
        let candidate = PartitionWitness { blocks };
        if witness::check_model_partition(g, model, &candidate) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// 2-biclique vertex-cover by enumerating all 4-labelings.
pub fn biclique_cover_by_enumeration(
    g: &Graph,
) -> Result<Option<BicliqueCoverWitness>, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    check_labeling_bound(g.n())?;
    for labeling in labelings(g.n(), 4) {
        let pick = |block: u8| -> VertexSet {
            labeling
                .iter()
                .enumerate()
                .filter(|&(_, &b)| b == block)
                .map(|(v, _)| v)
                .collect()
        };
        let candidate = BicliqueCoverWitness {
            x1: pick(0),
            x2: pick(1),
            y1: pick(2),
            y2: pick(3),
        };
        if witness::check_biclique_cover(g, &candidate) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Vertex-surjective homomorphism by enumerating all 4-labelings.
pub fn surjective_hom_by_enumeration(g: &Graph) -> Result<Option<C4rHom>, ProblemError> {
    check_labeling_bound(g.n())?;
    for labels in labelings(g.n(), 4) {
        let candidate = C4rHom { labels };
        if witness::check_surjective_hom_c4r(g, &candidate) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Retraction by enumerating labelings of the non-embedded vertices.
pub fn retraction_by_enumeration(
    g: &Graph,
    emb: [usize; 4],
) -> Result<Option<C4rHom>, ProblemError> {
    validate_c4_embedding(g, emb)?;
    check_labeling_bound(g.n())?;
    let free: Vec<usize> = (0..g.n()).filter(|v| !emb.contains(v)).collect();
    for assignment in labelings(free.len(), 4) {
        let mut labels = vec![0u8; g.n()];
        for (i, &v) in emb.iter().enumerate() {
            labels[v] = i as u8;
        }
        for (&v, &l) in free.iter().zip(assignment.iter()) {
            labels[v] = l;
        }
        let candidate = C4rHom { labels };
        if witness::check_retraction_c4r(g, emb, &candidate) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

/// Compaction by enumerating all 4-labelings.
pub fn compaction_by_enumeration(g: &Graph) -> Result<Option<C4rHom>, ProblemError> {
    check_labeling_bound(g.n())?;
    for labels in labelings(g.n(), 4) {
        let candidate = C4rHom { labels };
        if witness::check_compaction_c4r(g, &candidate) {
            return Ok(Some(candidate));
        }
    }
    Ok(None)
}

fn partitions_rec(
    n: usize,
    block_of: &mut Vec<usize>,
    num_blocks: usize,
    out: &mut dyn FnMut(&[usize], usize) -> bool,
) -> bool {
    if block_of.len() == n {
        return out(block_of, num_blocks);
    }
    for block in 0..=num_blocks {
        block_of.push(block);
        if partitions_rec(n, block_of, num_blocks.max(block + 1), out) {
            return true;
        }
        block_of.pop();
    }
    false
}

/// Proper-biclique contraction by enumerating every partition and, per
/// partition, every two-sided assignment of its blocks.
pub fn contraction_by_enumeration(
    g: &Graph,
) -> Result<Option<ContractionWitness>, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    if !g.is_connected() {
        return Err(ProblemError::DisconnectedInput);
    }
    check_labeling_bound(g.n())?;
    let mut found = None;
    partitions_rec(g.n(), &mut Vec::new(), 0, &mut |block_of, num_blocks| {
        if num_blocks < 4 {
            return false;
        }
        let mut blocks = vec![VertexSet::new(); num_blocks];
        for (v, &b) in block_of.iter().enumerate() {
            blocks[b].insert(v);
        }
        for side_mask in 0u32..(1 << num_blocks) {
            let side: Vec<u8> = (0..num_blocks).map(|b| (side_mask >> b & 1) as u8).collect();
            let candidate = ContractionWitness {
                blocks: blocks.clone(),
                side,
            };
            if witness::check_contraction(g, &candidate) {
                found = Some(candidate);
                return true;
            }
        }
        false
    });
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_cut_absent_by_enumeration() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(cut_by_enumeration(&star).unwrap().is_none());
    }

    #[test]
    fn path_cut_present_by_enumeration() {
        assert!(cut_by_enumeration(&Graph::path(4)).unwrap().is_some());
    }

    #[test]
    fn complete_graph_has_no_surjective_hom_by_enumeration() {
        assert!(surjective_hom_by_enumeration(&Graph::complete(4))
            .unwrap()
            .is_none());
    }

    #[test]
    fn contraction_oracle_on_tiny_graphs() {
        assert!(contraction_by_enumeration(&Graph::cycle(5)).unwrap().is_some());
        assert!(contraction_by_enumeration(&Graph::complete(4)).unwrap().is_none());
    }

    #[test]
    fn oracle_bounds_are_enforced() {
        let big = Graph::complete(19);
        assert!(matches!(
            cut_by_enumeration(&big),
            Err(ProblemError::SizeBound { .. })
        ));
        let big13 = Graph::complete(13);
        assert!(matches!(
            surjective_hom_by_enumeration(&big13),
            Err(ProblemError::SizeBound { .. })
        ));
    }
}
