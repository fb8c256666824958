//! Model-graph partitions and 2-biclique vertex-covers.
//!
//! An H-partition splits the vertex set into one nonempty block per model
//! vertex; solid model edges force every cross edge between the two blocks,
//! dotted model edges forbid them. The biclique-cover solver is an
//! independent 4-label search (not a wrapper over the 2S2/2K2 machinery) so
//! the two can cross-check each other.

use serde::{Deserialize, Serialize};

use super::ProblemError;
use crate::graph::{Graph, ModelGraph, VertexSet};
use crate::search::{Budget, Outcome};

/// Blocks of an H-partition, one per model vertex, in model-vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionWitness {
    pub blocks: Vec<VertexSet>,
}

/// A spanning pair of bicliques: `X1 x X2` complete and `Y1 x Y2` complete,
/// the four sets nonempty and partitioning the vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueCoverWitness {
    pub x1: VertexSet,
    pub x2: VertexSet,
    pub y1: VertexSet,
    pub y2: VertexSet,
}

struct PartitionSearch<'a> {
    g: &'a Graph,
    model: &'a ModelGraph,
    budget: Budget,
    nodes: u64,
}

#[derive(Clone)]
struct PartitionState {
    cand: Vec<u32>,
    block_of: Vec<usize>,
    assigned: Vec<bool>,
    unassigned: usize,
    nonempty: u32,
}

impl<'a> PartitionSearch<'a> {
    fn assign(&self, state: &PartitionState, v: usize, block: usize) -> Option<PartitionState> {
        let mut next = state.clone();
        next.block_of[v] = block;
        next.assigned[v] = true;
        next.unassigned -= 1;
        next.nonempty |= 1 << block;
        for u in 0..self.g.n() {
            if next.assigned[u] || u == v {
                continue;
            }
            let adjacent = self.g.adjacent(u, v);
            for other in 0..self.model.k() {
                if other == block || next.cand[u] & (1 << other) == 0 {
                    continue;
                }
                let bad = (self.model.is_solid(block, other) && !adjacent)
                    || (self.model.is_dotted(block, other) && adjacent);
                if bad {
                    next.cand[u] &= !(1 << other);
                }
            }
            if next.cand[u] == 0 {
                return None;
            }
        }
        Some(next)
    }

    fn dfs(&mut self, state: &PartitionState) -> Result<Option<Vec<usize>>, ProblemError> {
        let k = self.model.k();
        let empty_blocks = k - state.nonempty.count_ones() as usize;
        if empty_blocks > state.unassigned {
            return Ok(None);
        }
        if state.unassigned == 0 {
            return Ok(Some(state.block_of.clone()));
        }
        // every still-empty block must remain reachable
        for block in 0..k {
            if state.nonempty & (1 << block) == 0
                && !(0..self.g.n())
                    .any(|v| !state.assigned[v] && state.cand[v] & (1 << block) != 0)
            {
                return Ok(None);
            }
        }
        let v = (0..self.g.n())
            .filter(|&v| !state.assigned[v])
            .min_by_key(|&v| (state.cand[v].count_ones(), v))
            .expect("an unassigned vertex exists");
        for block in 0..k {
            if state.cand[v] & (1 << block) == 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes & 0xFF == 0 && self.budget.expired() {
                return Err(ProblemError::Timeout);
            }
            if let Some(next) = self.assign(state, v, block) {
                if let Some(found) = self.dfs(&next)? {
                    return Ok(Some(found));
                }
            }
        }
        Ok(None)
    }
}

fn blocks_from_assignment(k: usize, block_of: &[usize]) -> Vec<VertexSet> {
    let mut blocks = vec![VertexSet::new(); k];
    for (v, &b) in block_of.iter().enumerate() {
        blocks[b].insert(v);
    }
    blocks
}

/// Searches for an H-partition of `g` for the given model graph.
pub fn find_model_partition(
    g: &Graph,
    model: &ModelGraph,
) -> Result<Option<PartitionWitness>, ProblemError> {
    Ok(find_model_partition_in(g, model, Budget::unlimited())?.witness)
}

pub fn find_model_partition_in(
    g: &Graph,
    model: &ModelGraph,
    budget: Budget,
) -> Result<Outcome<PartitionWitness>, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    let k = model.k();
    assert!(k >= 1 && k <= 32, "model size {k} unsupported");
    if g.n() < k {
        // cannot fill k nonempty blocks
        return Ok(Outcome {
            witness: None,
            nodes: 0,
        });
    }
    let mut engine = PartitionSearch {
        g,
        model,
        budget,
        nodes: 0,
    };
    let state = PartitionState {
        cand: vec![(1u32 << k) - 1; g.n()],
        block_of: vec![0; g.n()],
        assigned: vec![false; g.n()],
        unassigned: g.n(),
        nonempty: 0,
    };
    let witness = engine.dfs(&state)?.map(|block_of| PartitionWitness {
        blocks: blocks_from_assignment(k, &block_of),
    });
    Ok(Outcome {
        witness,
        nodes: engine.nodes,
    })
}

/// 2K2-partition: blocks 0/2 and 1/3 each pairwise completely joined.
pub fn find_2k2_partition(g: &Graph) -> Result<Option<PartitionWitness>, ProblemError> {
    find_model_partition(g, &ModelGraph::two_k2())
}

pub fn find_2k2_partition_in(
    g: &Graph,
    budget: Budget,
) -> Result<Outcome<PartitionWitness>, ProblemError> {
    find_model_partition_in(g, &ModelGraph::two_k2(), budget)
}

/// 2S2-partition: no edges between blocks 0/2 nor between blocks 1/3.
pub fn find_2s2_partition(g: &Graph) -> Result<Option<PartitionWitness>, ProblemError> {
    find_model_partition(g, &ModelGraph::two_s2())
}

pub fn find_2s2_partition_in(
    g: &Graph,
    budget: Budget,
) -> Result<Outcome<PartitionWitness>, ProblemError> {
    find_model_partition_in(g, &ModelGraph::two_s2(), budget)
}

// ---------------------------------------------------------------------------
// 2-biclique vertex-cover
// ---------------------------------------------------------------------------

/// Block indices: 0 = X1, 1 = X2, 2 = Y1, 3 = Y2. The only constraints are
/// that the X1-X2 and Y1-Y2 cross pairs are all edges.
fn cover_requires_edge(a: usize, b: usize) -> bool {
    matches!((a.min(b), a.max(b)), (0, 1) | (2, 3))
}

struct CoverSearch<'a> {
    g: &'a Graph,
    budget: Budget,
    nodes: u64,
}

impl<'a> CoverSearch<'a> {
    fn dfs(
        &mut self,
        cand: &[u8],
        sides: &mut Vec<usize>,
        nonempty: u8,
    ) -> Result<Option<Vec<usize>>, ProblemError> {
        let v = sides.len();
        let n = self.g.n();
        let empty = 4 - nonempty.count_ones() as usize;
        if empty > n - v {
            return Ok(None);
        }
        if v == n {
            return Ok(Some(sides.clone()));
        }
        for block in 0..4usize {
            if cand[v] & (1 << block) == 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes & 0xFF == 0 && self.budget.expired() {
                return Err(ProblemError::Timeout);
            }
            let mut next_cand = cand.to_vec();
            let mut wiped = false;
            for u in v + 1..n {
                let adjacent = self.g.adjacent(u, v);
                for other in 0..4 {
                    if cover_requires_edge(block, other) && !adjacent {
                        next_cand[u] &= !(1 << other);
                    }
                }
                if next_cand[u] == 0 {
                    wiped = true;
                    break;
                }
            }
            if wiped {
                continue;
            }
            sides.push(block);
            if let Some(found) = self.dfs(&next_cand, sides, nonempty | (1 << block))? {
                return Ok(Some(found));
            }
            sides.pop();
        }
        Ok(None)
    }
}

/// Searches for a spanning subgraph consisting of exactly two nontrivial
/// bicliques, every vertex in exactly one of them.
pub fn find_2_biclique_vertex_cover(
    g: &Graph,
) -> Result<Option<BicliqueCoverWitness>, ProblemError> {
    Ok(find_2_biclique_vertex_cover_in(g, Budget::unlimited())?.witness)
}

pub fn find_2_biclique_vertex_cover_in(
    g: &Graph,
    budget: Budget,
) -> Result<Outcome<BicliqueCoverWitness>, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    let mut engine = CoverSearch {
        g,
        budget,
        nodes: 0,
    };
    let cand = vec![0b1111u8; g.n()];
    let witness = if g.n() < 4 {
        None
    } else {
        engine.dfs(&cand, &mut Vec::new(), 0)?.map(|sides| {
            let pick = |block: usize| -> VertexSet {
                sides
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| s == block)
                    .map(|(v, _)| v)
                    .collect()
            };
            BicliqueCoverWitness {
                x1: pick(0),
                x2: pick(1),
                y1: pick(2),
                y2: pick(3),
            }
        })
    };
    Ok(Outcome {
        witness,
        nodes: engine.nodes,
    })
}
