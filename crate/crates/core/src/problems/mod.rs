//! Exact desk-scale solvers with verifiable witnesses: disconnected cuts,
//! model-graph partitions, biclique vertex-covers, vertex-surjective
//! homomorphisms / retractions / compactions to the reflexive 4-cycle, and
//! contraction to a proper biclique — plus the cross-check that runs the
//! whole equivalence web on one graph.
//!
//! Every solver returns either a witness or a verified absence (the search
//! exhausts). Witness checkers in [`witness`] are deliberately separate code
//! paths from the searches, and [`oracle`] holds naive enumeration deciders
//! used to cross-check the solvers on small inputs.

pub mod c4r;
pub mod contraction;
pub mod cut;
pub mod oracle;
pub mod partition;
pub mod witness;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::search::Budget;

pub use c4r::{
    find_compaction_c4r, find_compaction_c4r_in, find_retraction_c4r, find_retraction_c4r_in,
    find_surjective_hom_c4r, find_surjective_hom_c4r_in, labels_compatible, opposite,
    validate_c4_embedding, C4rHom,
};
pub use contraction::{
    find_proper_biclique_contraction, find_proper_biclique_contraction_in, ContractionWitness,
    DEFAULT_CONTRACTION_BOUND,
};
pub use cut::{find_disconnected_cut, find_disconnected_cut_in, CutWitness};
pub use partition::{
    find_2_biclique_vertex_cover, find_2_biclique_vertex_cover_in, find_2k2_partition,
    find_2k2_partition_in, find_2s2_partition, find_2s2_partition_in, find_model_partition,
    find_model_partition_in, BicliqueCoverWitness, PartitionWitness,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProblemError {
    #[error("input graph must be connected")]
    DisconnectedInput,
    #[error("input graph must be loop-free")]
    LoopsUnsupported,
    #[error("embedding is not an induced copy of the reflexive 4-cycle: {0}")]
    InvalidEmbedding(String),
    #[error("graph on {n} vertices exceeds the exhaustive-search bound of {bound}")]
    SizeBound { n: usize, bound: usize },
    #[error("search budget exhausted")]
    Timeout,
}

/// Options for [`check_equivalence_web`].
#[derive(Debug, Clone, Copy)]
pub struct EquivalenceOptions {
    pub contraction_bound: usize,
    pub budget: Budget,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            contraction_bound: DEFAULT_CONTRACTION_BOUND,
            budget: Budget::unlimited(),
        }
    }
}

/// Verdicts of the statement web on one connected loop-free graph. The five
/// always-checked statements must agree; on diameter-2 graphs the compaction
/// and contraction verdicts are decided too and must agree with the rest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub diameter: usize,
    pub disconnected_cut: bool,
    pub partition_2s2: bool,
    pub surjective_hom_c4r: bool,
    pub complement_biclique_cover: bool,
    pub complement_2k2_partition: bool,
    pub compaction_c4r: Option<bool>,
    pub biclique_contraction: Option<bool>,
    pub nodes: u64,
}

impl EquivalenceReport {
    /// The decided verdicts, named, in statement order.
    pub fn verdicts(&self) -> Vec<(&'static str, bool)> {
        let mut out = vec![
            ("disconnected-cut", self.disconnected_cut),
            ("2s2-partition", self.partition_2s2),
            ("surjective-c4r", self.surjective_hom_c4r),
            ("complement-biclique-cover-2", self.complement_biclique_cover),
            ("complement-2k2-partition", self.complement_2k2_partition),
        ];
        if let Some(v) = self.compaction_c4r {
            out.push(("compact-c4r", v));
        }
        if let Some(v) = self.biclique_contraction {
            out.push(("biclique-contract", v));
        }
        out
    }

    pub fn all_agree(&self) -> bool {
        let first = self.disconnected_cut;
        self.verdicts().iter().all(|&(_, v)| v == first)
    }
}

/// Runs the full statement web on `g`: the disconnected-cut, 2S2-partition
/// and surjective-homomorphism solvers on `g` itself, the biclique-cover and
/// 2K2-partition solvers on the complement, and — when `g` has diameter 2 —
/// the compaction and proper-biclique-contraction solvers as well.
pub fn check_equivalence_web(
    g: &Graph,
    opts: &EquivalenceOptions,
) -> Result<EquivalenceReport, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    let Some(diameter) = g.diameter() else {
        return Err(ProblemError::DisconnectedInput);
    };
    let complement = g.complement().expect("loop-free");
    let mut nodes = 0;

    let cut = find_disconnected_cut_in(g, opts.budget)?;
    nodes += cut.nodes;
    let s2s2 = find_2s2_partition_in(g, opts.budget)?;
    nodes += s2s2.nodes;
    let surjective = find_surjective_hom_c4r_in(g, opts.budget)?;
    nodes += surjective.nodes;
    let cover = find_2_biclique_vertex_cover_in(&complement, opts.budget)?;
    nodes += cover.nodes;
    let c2k2 = find_2k2_partition_in(&complement, opts.budget)?;
    nodes += c2k2.nodes;

    let (compaction, contraction) = if diameter == 2 {
        let compaction = find_compaction_c4r_in(g, opts.budget)?;
        nodes += compaction.nodes;
        let contraction =
            find_proper_biclique_contraction_in(g, opts.contraction_bound, opts.budget)?;
        nodes += contraction.nodes;
        (Some(compaction.found()), Some(contraction.found()))
    } else {
        (None, None)
    };

    Ok(EquivalenceReport {
        diameter,
        disconnected_cut: cut.found(),
        partition_2s2: s2s2.found(),
        surjective_hom_c4r: surjective.found(),
        complement_biclique_cover: cover.found(),
        complement_2k2_partition: c2k2.found(),
        compaction_c4r: compaction,
        biclique_contraction: contraction,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_satisfies_all_five_statements() {
        let report = check_equivalence_web(&Graph::path(4), &EquivalenceOptions::default()).unwrap();
        assert_eq!(report.diameter, 3);
        assert!(report.all_agree());
        assert!(report.disconnected_cut);
        assert_eq!(report.compaction_c4r, None);
        assert_eq!(report.biclique_contraction, None);
        assert_eq!(report.verdicts().len(), 5);
    }

    #[test]
    fn star_fails_all_seven_statements() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let report = check_equivalence_web(&star, &EquivalenceOptions::default()).unwrap();
        assert_eq!(report.diameter, 2);
        assert!(report.all_agree());
        assert!(!report.disconnected_cut);
        assert_eq!(report.compaction_c4r, Some(false));
        assert_eq!(report.biclique_contraction, Some(false));
    }

    #[test]
    fn four_cycle_satisfies_all_seven_statements() {
        let report = check_equivalence_web(&Graph::cycle(4), &EquivalenceOptions::default()).unwrap();
        assert_eq!(report.diameter, 2);
        assert!(report.all_agree());
        assert!(report.disconnected_cut);
        assert_eq!(report.compaction_c4r, Some(true));
        assert_eq!(report.biclique_contraction, Some(true));
        assert_eq!(report.verdicts().len(), 7);
    }

    #[test]
    fn disconnected_and_looped_inputs_are_rejected() {
        let two_parts = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(
            check_equivalence_web(&two_parts, &EquivalenceOptions::default()),
            Err(ProblemError::DisconnectedInput)
        );
        let mut looped = Graph::complete(3);
        looped.add_loop(0);
        assert_eq!(
            check_equivalence_web(&looped, &EquivalenceOptions::default()),
            Err(ProblemError::LoopsUnsupported)
        );
    }
}
