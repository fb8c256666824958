//! Disconnected cuts: a vertex subset `U` of a connected graph such that
//! both `G[U]` and `G[V \ U]` have at least two components.
//!
//! The solver is the 4-label formulation: a vertex-surjective homomorphism
//! to the reflexive 4-cycle yields the cut `U = f^{-1}(0) ∪ f^{-1}(2)` (no
//! edges run between the two diagonal label classes, so both sides split).
//! The independent subset-enumeration oracle lives in [`super::oracle`].

use serde::{Deserialize, Serialize};

use super::c4r::find_surjective_hom_c4r_in;
use super::ProblemError;
use crate::graph::{Graph, VertexSet};
use crate::search::{Budget, Outcome};

/// A disconnected cut: the subset `U`. Its complement is one as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    pub cut: VertexSet,
}

/// Finds a disconnected cut of a connected loop-free graph, or verifies
/// that none exists. Disconnected input is rejected, not answered: the
/// problem is defined for connected graphs.
pub fn find_disconnected_cut(g: &Graph) -> Result<Option<CutWitness>, ProblemError> {
    Ok(find_disconnected_cut_in(g, Budget::unlimited())?.witness)
}

pub fn find_disconnected_cut_in(
    g: &Graph,
    budget: Budget,
) -> Result<Outcome<CutWitness>, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    if !g.is_connected() {
        return Err(ProblemError::DisconnectedInput);
    }
    let outcome = find_surjective_hom_c4r_in(g, budget)?;
    Ok(outcome.map(|hom| CutWitness {
        cut: (0..g.n()).filter(|&v| hom.label(v) % 2 == 0).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::witness::check_disconnected_cut;

    #[test]
    fn path_has_the_alternating_cut() {
        let w = find_disconnected_cut(&Graph::path(4)).unwrap().unwrap();
        assert_eq!(w.cut, [0, 2].into_iter().collect());
        assert!(check_disconnected_cut(&Graph::path(4), &w));
    }

    #[test]
    fn star_has_no_disconnected_cut() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(find_disconnected_cut(&star).unwrap().is_none());
    }

    #[test]
    fn four_cycle_cut_is_an_opposite_pair() {
        let g = Graph::cycle(4);
        let w = find_disconnected_cut(&g).unwrap().unwrap();
        let rest = w.cut.complement_in(4);
        assert_eq!(w.cut.len(), 2);
        assert_eq!(g.component_count_within(&w.cut), 2);
        assert_eq!(g.component_count_within(&rest), 2);
    }

    #[test]
    fn preconditions_are_enforced() {
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(
            find_disconnected_cut(&disconnected),
            Err(ProblemError::DisconnectedInput)
        );
        let mut looped = Graph::complete(2);
        looped.add_loop(1);
        assert_eq!(
            find_disconnected_cut(&looped),
            Err(ProblemError::LoopsUnsupported)
        );
    }
}
