//! Seeded generators. A seed fully determines the output, so every battery
//! case and fixture is reproducible byte for byte.

use dcut_core::gadgets::DInstance;
use dcut_core::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GenError {
    #[error("cannot cover {elements} elements with at most {capacity} pair slots")]
    ImpossibleCoverage { elements: usize, capacity: usize },
    #[error("graph generation needs at least one vertex")]
    EmptyGraph,
    #[error("edge probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error("could not generate a connected graph (n = {n}, p = {p})")]
    Unconnectable { n: usize, p: f64 },
    #[error("generator config: {0}")]
    BadConfig(String),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub num_elements: usize,
    pub tuples_per_relation: usize,
    pub graph_n: usize,
    pub edge_probability: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            num_elements: 2,
            tuples_per_relation: 1,
            graph_n: 8,
            edge_probability: 0.5,
        }
    }
}

const MAX_RESAMPLES: usize = 100_000;

/// Generates a random instance: each relation draws between zero and
/// `tuples_per_relation` uniform pairs, and the whole instance is resampled
/// until every element occurs in some pair (and at least one pair exists).
pub fn gen_dinstance(cfg: &GeneratorConfig) -> Result<DInstance, GenError> {
    let k = cfg.num_elements;
    if k == 0 {
        return Err(GenError::BadConfig("need at least one element".into()));
    }
    let capacity = 8 * cfg.tuples_per_relation;
    if capacity < k {
        return Err(GenError::ImpossibleCoverage {
            elements: k,
            capacity,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_RESAMPLES {
        let mut relations: [Vec<(usize, usize)>; 4] = Default::default();
        for rel in &mut relations {
            let count = rng.gen_range(0..=cfg.tuples_per_relation);
            for _ in 0..count {
                rel.push((rng.gen_range(0..k), rng.gen_range(0..k)));
            }
        }
        let [r1, r2, r3, r4] = relations;
        let instance = DInstance::new((0..k).collect(), r1, r2, r3, r4)
            .expect("generated ids are in range");
        let covered = (0..k).all(|e| instance.is_covered(e));
        if covered && instance.total_tuples() > 0 {
            return Ok(instance);
        }
    }
    Err(GenError::ImpossibleCoverage {
        elements: k,
        capacity,
    })
}

/// Generates a connected loop-free random graph: every pair becomes an edge
/// with the configured probability, resampling until connected.
pub fn gen_graph(cfg: &GeneratorConfig) -> Result<Graph, GenError> {
    let n = cfg.graph_n;
    let p = cfg.edge_probability;
    if n == 0 {
        return Err(GenError::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(GenError::BadProbability(p));
    }
    if p == 0.0 && n > 1 {
        return Err(GenError::Unconnectable { n, p });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..MAX_RESAMPLES {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(GenError::Unconnectable { n, p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let cfg = GeneratorConfig {
            seed: 42,
            num_elements: 3,
            tuples_per_relation: 2,
            ..Default::default()
        };
        let a = gen_dinstance(&cfg).unwrap();
        let b = gen_dinstance(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
        assert!((0..3).all(|e| a.is_covered(e)));
    }

    #[test]
    fn single_element_instances_use_the_only_pair() {
        for seed in 0..20 {
            let cfg = GeneratorConfig {
                seed,
                num_elements: 1,
                tuples_per_relation: 1,
                ..Default::default()
            };
            let a = gen_dinstance(&cfg).unwrap();
            for i in 1..=4 {
                for &pair in a.relation_pairs(i) {
                    assert_eq!(pair, (0, 0));
                }
            }
            assert!(a.total_tuples() >= 1);
        }
    }

    #[test]
    fn impossible_coverage_is_an_error() {
        let cfg = GeneratorConfig {
            num_elements: 3,
            tuples_per_relation: 0,
            ..Default::default()
        };
        assert!(matches!(
            gen_dinstance(&cfg),
            Err(GenError::ImpossibleCoverage { .. })
        ));
    }

    #[test]
    fn graph_generator_edge_cases() {
        let complete = gen_graph(&GeneratorConfig {
            graph_n: 5,
            edge_probability: 1.0,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(complete, Graph::complete(5));

        let single = gen_graph(&GeneratorConfig {
            graph_n: 1,
            edge_probability: 0.0,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(single.n(), 1);

        assert!(matches!(
            gen_graph(&GeneratorConfig {
                graph_n: 0,
                ..Default::default()
            }),
            Err(GenError::EmptyGraph)
        ));
        assert!(matches!(
            gen_graph(&GeneratorConfig {
                graph_n: 3,
                edge_probability: 0.0,
                ..Default::default()
            }),
            Err(GenError::Unconnectable { .. })
        ));
        assert!(matches!(
            gen_graph(&GeneratorConfig {
                graph_n: 3,
                edge_probability: 1.5,
                ..Default::default()
            }),
            Err(GenError::BadProbability(_))
        ));
    }

    #[test]
    fn same_seed_same_graph() {
        let cfg = GeneratorConfig {
            seed: 7,
            graph_n: 8,
            edge_probability: 0.4,
            ..Default::default()
        };
        assert_eq!(gen_graph(&cfg).unwrap(), gen_graph(&cfg).unwrap());
    }
}
