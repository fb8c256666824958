//! Search bookkeeping shared by every exhaustive solver: a wall-clock budget
//! checked cooperatively inside search loops, and the node-counted outcome.

use std::time::{Duration, Instant};

/// Wall-clock budget for one solver invocation. `unlimited` never expires.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn within(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
        }
    }

    pub fn until(deadline: Instant) -> Self {
        Budget {
            deadline: Some(deadline),
        }
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}

/// Result of an exhaustive search: the witness if one exists (`None` means
/// verified absence), plus the number of search nodes explored.
#[derive(Debug, Clone)]
pub struct Outcome<T> {
    pub witness: Option<T>,
    pub nodes: u64,
}

impl<T> Outcome<T> {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        Outcome {
            witness: self.witness.map(f),
            nodes: self.nodes,
        }
    }
}
