//! Exact solvers, relational-structure machinery and reduction gadgets for
//! the web of equivalent decision problems around disconnected cuts:
//! 2K2/2S2-partitions, 2-biclique vertex-covers, and vertex-surjective
//! homomorphisms / retractions / compactions to the reflexive 4-cycle.
//!
//! - [`graph`]: undirected graphs with loop sets, text format, metric and
//!   structural primitives.
//! - [`relational`]: finite relational structures, homomorphism search with
//!   arc-consistency propagation, power structures, cores and restricted
//!   polymorphisms.
//! - [`problems`]: one exact solver per decision problem, each returning a
//!   checkable witness or a verified absence, plus independent checkers and
//!   enumeration oracles.
//! - [`gadgets`]: the reduction pipeline from instances of the fixed
//!   three-element structure to gadget graphs, compactors and
//!   semi-compactors, with the constructive retraction extensions.

pub mod gadgets;
pub mod graph;
pub mod problems;
pub mod relational;
pub mod search;
