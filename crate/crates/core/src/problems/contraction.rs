//! Contraction to a proper biclique. A graph contracts to `K_{k,l}` with
//! `k, l >= 2` iff its vertex set splits into connected blocks whose
//! quotient graph is exactly that biclique. The search walks labeled
//! partitions in restricted-growth order, pruning branches whose partial
//! quotient already contains an odd cycle and blocks with a sealed-off
//! fragment; `k` and `l` are discovered, not enumerated.

use serde::{Deserialize, Serialize};

use super::ProblemError;
use crate::graph::{Graph, VertexSet};
use crate::search::{Budget, Outcome};

/// Default cap on the exhaustive partition search.
pub const DEFAULT_CONTRACTION_BOUND: usize = 12;

/// Connected blocks and a two-sided assignment: contracting every block
/// yields the biclique with the two sides as its parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionWitness {
    pub blocks: Vec<VertexSet>,
    pub side: Vec<u8>,
}

struct ContractionSearch<'a> {
    g: &'a Graph,
    budget: Budget,
    nodes: u64,
}

impl<'a> ContractionSearch<'a> {
    fn quotient_edges(&self, block_of: &[usize], num_blocks: usize) -> Vec<u32> {
        let mut adj = vec![0u32; num_blocks];
        for (u, v) in self.g.edges() {
            if u >= block_of.len() || v >= block_of.len() {
                continue;
            }
            let (bu, bv) = (block_of[u], block_of[v]);
            if bu != bv {
                adj[bu] |= 1 << bv;
                adj[bv] |= 1 << bu;
            }
        }
        adj
    }

    fn is_bipartite(adj: &[u32]) -> bool {
        let n = adj.len();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut stack = vec![start];
            while let Some(b) = stack.pop() {
                for other in 0..n {
                    if adj[b] & (1 << other) == 0 {
                        continue;
                    }
                    if color[other] == u8::MAX {
                        color[other] = 1 - color[b];
                        stack.push(other);
                    } else if color[other] == color[b] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A block fragment is sealed when none of its vertices has an
    /// unassigned neighbor; a multi-fragment block with a sealed fragment
    /// can never become connected.
    fn has_dead_fragment(&self, block_of: &[usize], num_blocks: usize) -> bool {
        let assigned = block_of.len();
        let mut seen = vec![false; assigned];
        for block in 0..num_blocks {
            let members: Vec<usize> = (0..assigned).filter(|&v| block_of[v] == block).collect();
            if members.len() <= 1 {
                continue;
            }
            for &m in &members {
                seen[m] = false;
            }
            let mut fragments = Vec::new();
            for &start in &members {
                if seen[start] {
                    continue;
                }
                let mut frag = vec![start];
                seen[start] = true;
                let mut stack = vec![start];
                while let Some(v) = stack.pop() {
                    for u in self.g.neighbors(v) {
                        if u < assigned && block_of[u] == block && !seen[u] {
                            seen[u] = true;
                            frag.push(u);
                            stack.push(u);
                        }
                    }
                }
                fragments.push(frag);
            }
            if fragments.len() < 2 {
                continue;
            }
            let sealed = |frag: &Vec<usize>| {
                frag.iter()
                    .all(|&v| self.g.neighbors(v).all(|u| u < assigned))
            };
            if fragments.iter().any(sealed) {
                return true;
            }
        }
        false
    }

    fn leaf_witness(&self, block_of: &[usize], num_blocks: usize) -> Option<ContractionWitness> {
        if num_blocks < 4 {
            return None;
        }
        let mut blocks = vec![VertexSet::new(); num_blocks];
        for (v, &b) in block_of.iter().enumerate() {
            blocks[b].insert(v);
        }
        if blocks
            .iter()
            .any(|b| self.g.component_count_within(b) != 1)
        {
            return None;
        }
        let adj = self.quotient_edges(block_of, num_blocks);
        // the two sides of a complete bipartite quotient are exactly the
        // components of its complement
        let mut side = vec![u8::MAX; num_blocks];
        let mut stack = vec![0usize];
        side[0] = 0;
        while let Some(b) = stack.pop() {
            for other in 0..num_blocks {
                if b != other && adj[b] & (1 << other) == 0 && side[other] == u8::MAX {
                    side[other] = side[b];
                    stack.push(other);
                }
            }
            if stack.is_empty() {
                if let Some(unreached) = side.iter().position(|&s| s == u8::MAX) {
                    if side.contains(&1) {
                        return None; // three or more complement components
                    }
                    side[unreached] = 1;
                    stack.push(unreached);
                }
            }
        }
        let count0 = side.iter().filter(|&&s| s == 0).count();
        let count1 = num_blocks - count0;
        if count0 < 2 || count1 < 2 {
            return None;
        }
        for a in 0..num_blocks {
            for b in a + 1..num_blocks {
                let cross = side[a] != side[b];
                let adjacent = adj[a] & (1 << b) != 0;
                if cross != adjacent {
                    return None;
                }
            }
        }
        Some(ContractionWitness { blocks, side })
    }

    fn dfs(
        &mut self,
        block_of: &mut Vec<usize>,
        num_blocks: usize,
    ) -> Result<Option<ContractionWitness>, ProblemError> {
        if block_of.len() == self.g.n() {
            return Ok(self.leaf_witness(block_of, num_blocks));
        }
        for block in 0..=num_blocks.min(31) {
            self.nodes += 1;
            if self.nodes & 0xFF == 0 && self.budget.expired() {
                return Err(ProblemError::Timeout);
            }
            block_of.push(block);
            let next_blocks = num_blocks.max(block + 1);
            let adj = self.quotient_edges(block_of, next_blocks);
            let viable = Self::is_bipartite(&adj) && !self.has_dead_fragment(block_of, next_blocks);
            if viable {
                if let Some(found) = self.dfs(block_of, next_blocks)? {
                    return Ok(Some(found));
                }
            }
            block_of.pop();
        }
        Ok(None)
    }
}

/// Searches for a contraction of `g` to a proper biclique under the default
/// size bound.
pub fn find_proper_biclique_contraction(
    g: &Graph,
) -> Result<Option<ContractionWitness>, ProblemError> {
    Ok(find_proper_biclique_contraction_in(g, DEFAULT_CONTRACTION_BOUND, Budget::unlimited())?
        .witness)
}

pub fn find_proper_biclique_contraction_in(
    g: &Graph,
    bound: usize,
    budget: Budget,
) -> Result<Outcome<ContractionWitness>, ProblemError> {
    if !g.is_loop_free() {
        return Err(ProblemError::LoopsUnsupported);
    }
    if !g.is_connected() {
        return Err(ProblemError::DisconnectedInput);
    }
    if g.n() > bound {
        return Err(ProblemError::SizeBound { n: g.n(), bound });
    }
    if g.n() < 4 {
        return Ok(Outcome {
            witness: None,
            nodes: 0,
        });
    }
    let mut engine = ContractionSearch {
        g,
        budget,
        nodes: 0,
    };
    let witness = engine.dfs(&mut Vec::new(), 0)?;
    Ok(Outcome {
        witness,
        nodes: engine.nodes,
    })
}
