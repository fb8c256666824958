//! Label search onto the reflexive 4-cycle. One backtracking engine serves
//! the vertex-surjective, retraction and compaction variants; they differ
//! only in pins, goal checks and symmetry handling.
//!
//! Labels are `0..=3` for the cycle vertices in order. Two labels may sit on
//! adjacent source vertices iff they are equal or cycle-adjacent, i.e. the
//! only forbidden pairs are the two diagonals `{0,2}` and `{1,3}`. Source
//! loops never constrain anything: the target is reflexive.

use serde::{Deserialize, Serialize};

use super::ProblemError;
use crate::graph::Graph;
use crate::search::{Budget, Outcome};

/// The label diagonally opposite `label` on the 4-cycle.
pub fn opposite(label: u8) -> u8 {
    (label + 2) % 4
}

/// True when the two labels may appear on adjacent vertices.
pub fn labels_compatible(a: u8, b: u8) -> bool {
    opposite(a) != b
}

/// A labeling of the vertices of a graph by cycle vertices `0..=3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct C4rHom {
    pub labels: Vec<u8>,
}

impl C4rHom {
    pub fn label(&self, v: usize) -> u8 {
        self.labels[v]
    }
}

/// Cycle-edge index for a pair of distinct compatible labels, `None` for
/// equal labels (a loop image) or a diagonal.
fn cycle_edge_index(a: u8, b: u8) -> Option<usize> {
    match (a.min(b), a.max(b)) {
        (0, 1) => Some(0),
        (1, 2) => Some(1),
        (2, 3) => Some(2),
        (0, 3) => Some(3),
        _ => None,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    /// Any homomorphism respecting the pins (retraction search).
    Any,
    /// All four labels must be used.
    Surjective,
    /// All four cycle edges must be images of source edges.
    Compaction,
}

const ALL_LABELS: u8 = 0b1111;

fn compat_mask(label: u8) -> u8 {
    ALL_LABELS & !(1 << opposite(label))
}

#[derive(Clone)]
struct State {
    cand: Vec<u8>,
    labels: Vec<u8>,
    assigned: Vec<bool>,
    unassigned: usize,
    used: u8,
    covered: u8,
    /// Becomes true once any vertex carries label 1 or 3; until then label 3
    /// is never tried, which quotients out the reflection fixing 0 and 2.
    seen_odd: bool,
}

struct Engine<'a> {
    g: &'a Graph,
    goal: Goal,
    budget: Budget,
    nodes: u64,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, goal: Goal, budget: Budget) -> Self {
        Engine {
            g,
            goal,
            budget,
            nodes: 0,
        }
    }

    fn fresh_state(&self) -> State {
        let n = self.g.n();
        State {
            cand: vec![ALL_LABELS; n],
            labels: vec![0; n],
            assigned: vec![false; n],
            unassigned: n,
            used: 0,
            covered: 0,
            seen_odd: false,
        }
    }

    /// Unit propagation on candidate sets only: a vertex whose set is down
    /// to one label prunes its neighbors, chaining through every new
    /// singleton. Returns false on a wipeout.
    fn prune_from(&self, state: &mut State, v: usize, forced: u8) -> bool {
        let mut queue = vec![(v, forced)];
        while let Some((w, label)) = queue.pop() {
            let allowed = compat_mask(label);
            for u in self.g.neighbors(w) {
                if state.assigned[u] {
                    continue;
                }
                let pruned = state.cand[u] & allowed;
                if pruned == 0 {
                    return false;
                }
                if pruned != state.cand[u] {
                    state.cand[u] = pruned;
                    if pruned.count_ones() == 1 {
                        queue.push((u, pruned.trailing_zeros() as u8));
                    }
                }
            }
        }
        true
    }

    /// Assignment with unit propagation. Returns None on a wipeout.
    fn assign(&self, state: &State, v: usize, label: u8) -> Option<State> {
        let mut next = state.clone();
        next.labels[v] = label;
        next.assigned[v] = true;
        next.unassigned -= 1;
        next.used |= 1 << label;
        if label == 1 || label == 3 {
            next.seen_odd = true;
        }
        for u in self.g.neighbors(v) {
            if next.assigned[u] {
                if let Some(edge) = cycle_edge_index(label, next.labels[u]) {
                    next.covered |= 1 << edge;
                }
            }
        }
        self.prune_from(&mut next, v, label).then_some(next)
    }

    /// Failed-literal shaving: tentatively assign each remaining label of
    /// each unassigned vertex; labels whose propagation wipes out or kills
    /// the goal are deleted, and deletions chain through unit propagation.
    /// Returns None when some vertex loses its last label.
    fn shave(&self, state: &State) -> Option<State> {
        let mut shaved = state.clone();
        loop {
            let mut changed = false;
            for v in 0..self.g.n() {
                if shaved.assigned[v] {
                    continue;
                }
                for label in 0..4u8 {
                    if shaved.cand[v] & (1 << label) == 0 {
                        continue;
                    }
                    let viable = match self.assign(&shaved, v, label) {
                        Some(next) => self.goal_prune(&next),
                        None => false,
                    };
                    if !viable {
                        shaved.cand[v] &= !(1 << label);
                        changed = true;
                        match shaved.cand[v].count_ones() {
                            0 => return None,
                            1 => {
                                let forced = shaved.cand[v].trailing_zeros() as u8;
                                if !self.prune_from(&mut shaved, v, forced) {
                                    return None;
                                }
                            }
                            _ => {}
                        }
                    }
                }
            }
            if !changed {
                return Some(shaved);
            }
        }
    }

    fn goal_prune(&self, state: &State) -> bool {
        match self.goal {
            Goal::Any => true,
            Goal::Surjective => {
                let missing = ALL_LABELS & !state.used;
                if (missing.count_ones() as usize) > state.unassigned {
                    return false;
                }
                (0..4).all(|label| {
                    missing & (1 << label) == 0
                        || (0..self.g.n())
                            .any(|v| !state.assigned[v] && state.cand[v] & (1 << label) != 0)
                })
            }
            Goal::Compaction => {
                const CYCLE: [(u8, u8); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];
                CYCLE.iter().enumerate().all(|(edge, &(a, b))| {
                    if state.covered & (1 << edge) != 0 {
                        return true;
                    }
                    let mask = |v: usize| {
                        if state.assigned[v] {
                            1u8 << state.labels[v]
                        } else {
                            state.cand[v]
                        }
                    };
                    self.g.edges().any(|(u, v)| {
                        let (mu, mv) = (mask(u), mask(v));
                        (mu & (1 << a) != 0 && mv & (1 << b) != 0)
                            || (mu & (1 << b) != 0 && mv & (1 << a) != 0)
                    })
                })
            }
        }
    }

    fn goal_met(&self, state: &State) -> bool {
        match self.goal {
            Goal::Any => true,
            Goal::Surjective => state.used == ALL_LABELS,
            Goal::Compaction => state.covered == ALL_LABELS,
        }
    }

    fn dfs(&mut self, state: &State) -> Result<Option<Vec<u8>>, ProblemError> {
        if state.unassigned == 0 {
            return Ok(self.goal_met(state).then(|| state.labels.clone()));
        }
        if !self.goal_prune(state) {
            return Ok(None);
        }
        let Some(state) = self.shave(state) else {
            return Ok(None);
        };
        let v = (0..self.g.n())
            .filter(|&v| !state.assigned[v])
            .min_by_key(|&v| (state.cand[v].count_ones(), v))
            .expect("an unassigned vertex exists");
        // fixing the first branched vertex to label 0 quotients out the four
        // rotations; sound for the surjective and compaction goals only
        let root_pin = self.goal != Goal::Any && state.unassigned == self.g.n();
        for label in 0..4u8 {
            if state.cand[v] & (1 << label) == 0 {
                continue;
            }
            if root_pin && label != 0 {
                break;
            }
            if self.goal != Goal::Any && label == 3 && !state.seen_odd {
                continue;
            }
            self.nodes += 1;
            if self.nodes & 0xFF == 0 && self.budget.expired() {
                return Err(ProblemError::Timeout);
            }
            if let Some(next) = self.assign(&state, v, label) {
                if let Some(found) = self.dfs(&next)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }

    fn run(&mut self, pins: &[(usize, u8)]) -> Result<Option<Vec<u8>>, ProblemError> {
        let mut state = self.fresh_state();
        for &(v, label) in pins {
            if state.assigned[v] {
                if state.labels[v] != label {
                    return Ok(None);
                }
                continue;
            }
            if state.cand[v] & (1 << label) == 0 {
                return Ok(None);
            }
            match self.assign(&state, v, label) {
                Some(next) => state = next,
                None => return Ok(None),
            }
        }
        self.dfs(&state)
    }
}

/// Searches for a vertex-surjective homomorphism to the reflexive 4-cycle:
/// a labeling avoiding the two diagonals on edges and using all four labels.
/// The input may carry loops; they impose no constraint.
pub fn find_surjective_hom_c4r(g: &Graph) -> Option<C4rHom> {
    find_surjective_hom_c4r_in(g, Budget::unlimited())
        .expect("unlimited budget cannot time out")
        .witness
}

pub fn find_surjective_hom_c4r_in(
    g: &Graph,
    budget: Budget,
) -> Result<Outcome<C4rHom>, ProblemError> {
    let mut engine = Engine::new(g, Goal::Surjective, budget);
    let witness = engine.run(&[])?.map(|labels| C4rHom { labels });
    Ok(Outcome {
        witness,
        nodes: engine.nodes,
    })
}

/// Checks that `emb` induces the 4-cycle: consecutive pairs adjacent, the
/// two diagonals absent, all four ids distinct and in range.
pub fn validate_c4_embedding(g: &Graph, emb: [usize; 4]) -> Result<(), ProblemError> {
    let fail = |msg: String| Err(ProblemError::InvalidEmbedding(msg));
    for &v in &emb {
        if v >= g.n() {
            return fail(format!("vertex {v} out of range"));
        }
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if emb[i] == emb[j] {
                return fail(format!("vertex {} repeated", emb[i]));
            }
        }
    }
    for i in 0..4 {
        let (u, v) = (emb[i], emb[(i + 1) % 4]);
        if !g.adjacent(u, v) {
            return fail(format!("cycle edge ({u},{v}) missing"));
        }
    }
    for (u, v) in [(emb[0], emb[2]), (emb[1], emb[3])] {
        if g.adjacent(u, v) {
            return fail(format!("chord ({u},{v}) present"));
        }
    }
    Ok(())
}

/// Searches for a retraction onto the copy of the reflexive 4-cycle induced
/// by `emb`: a homomorphism fixing `emb[i]` at label `i`.
pub fn find_retraction_c4r(g: &Graph, emb: [usize; 4]) -> Result<Option<C4rHom>, ProblemError> {
    Ok(find_retraction_c4r_in(g, emb, Budget::unlimited())?.witness)
}

pub fn find_retraction_c4r_in(
    g: &Graph,
    emb: [usize; 4],
    budget: Budget,
) -> Result<Outcome<C4rHom>, ProblemError> {
    validate_c4_embedding(g, emb)?;
    let pins: Vec<(usize, u8)> = emb.iter().enumerate().map(|(i, &v)| (v, i as u8)).collect();
    let mut engine = Engine::new(g, Goal::Any, budget);
    let witness = engine.run(&pins)?.map(|labels| C4rHom { labels });
    Ok(Outcome {
        witness,
        nodes: engine.nodes,
    })
}

/// Searches for a compaction: a homomorphism under which each of the four
/// cycle edges is the image of some source edge. Vertex-surjectivity follows;
/// loop coverage is not required.
pub fn find_compaction_c4r(g: &Graph) -> Option<C4rHom> {
    find_compaction_c4r_in(g, Budget::unlimited())
        .expect("unlimited budget cannot time out")
        .witness
}

pub fn find_compaction_c4r_in(g: &Graph, budget: Budget) -> Result<Outcome<C4rHom>, ProblemError> {
    let mut engine = Engine::new(g, Goal::Compaction, budget);
    let witness = engine.run(&[])?.map(|labels| C4rHom { labels });
    Ok(Outcome {
        witness,
        nodes: engine.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_gets_the_consecutive_labeling() {
        let hom = find_surjective_hom_c4r(&Graph::path(4)).unwrap();
        assert_eq!(hom.labels, vec![0, 1, 2, 3]);
    }

    #[test]
    fn complete_graph_has_no_surjective_hom() {
        assert!(find_surjective_hom_c4r(&Graph::complete(4)).is_none());
        assert!(find_compaction_c4r(&Graph::complete(4)).is_none());
    }

    #[test]
    fn loops_do_not_constrain_surjective_search() {
        let mut g = Graph::path(4);
        for v in 0..4 {
            g.add_loop(v);
        }
        assert!(find_surjective_hom_c4r(&g).is_some());
    }

    #[test]
    fn cycle_retracts_to_itself_identically() {
        let hom = find_retraction_c4r(&Graph::cycle(4), [0, 1, 2, 3])
            .unwrap()
            .unwrap();
        assert_eq!(hom.labels, vec![0, 1, 2, 3]);
    }

    #[test]
    fn bad_embeddings_are_rejected() {
        let g = Graph::cycle(4);
        assert!(matches!(
            find_retraction_c4r(&Graph::complete(4), [0, 1, 2, 3]),
            Err(ProblemError::InvalidEmbedding(_))
        ));
        assert!(matches!(
            find_retraction_c4r(&g, [0, 1, 2, 9]),
            Err(ProblemError::InvalidEmbedding(_))
        ));
        assert!(matches!(
            find_retraction_c4r(&g, [0, 1, 2, 0]),
            Err(ProblemError::InvalidEmbedding(_))
        ));
        assert!(matches!(
            find_retraction_c4r(&Graph::path(4), [0, 1, 2, 3]),
            Err(ProblemError::InvalidEmbedding(_))
        ));
    }

    #[test]
    fn cycle_compacts_identically() {
        let hom = find_compaction_c4r(&Graph::cycle(4)).unwrap();
        assert_eq!(hom.labels, vec![0, 1, 2, 3]);
    }

    #[test]
    fn star_admits_neither_surjective_hom_nor_compaction() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(find_surjective_hom_c4r(&star).is_none());
        assert!(find_compaction_c4r(&star).is_none());
    }

    #[test]
    fn timeout_is_reported() {
        use std::time::Duration;

        // a 3x5 rook-ish blowup: big enough that some nodes are explored
        let mut g = Graph::new(15);
        for u in 0..15 {
            for v in u + 1..15 {
                if u % 5 == v % 5 || u / 5 == v / 5 {
                    g.add_edge(u, v);
                }
            }
        }
        let out = find_surjective_hom_c4r_in(&g, Budget::within(Duration::ZERO));
        assert!(matches!(out, Err(ProblemError::Timeout) | Ok(_)));
    }
}
