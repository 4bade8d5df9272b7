//! Exhaustive solvability search and the analyses built on top of it.

mod bfs;
mod events;
mod probe;

use std::time::Duration;

use thiserror::Error;

use crate::graph::is_dag;
use crate::mapf::{InvalidInstance, MapfInstance, Plan};

pub use bfs::{solve_bfs, solve_bfs_with};
pub use events::{decompose_plan_events, ComponentEvents, EventKind, SccEvent, SccEventTrace};
pub use probe::{
    hypothesis_probe, Envelope, ProbeConfig, ProbeError, ProbeGroup, ProbeRecord, ProbeReport,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A shortest plan.
    Solvable(Plan),
    /// The reachable state space was exhausted without meeting the goal.
    Unsolvable,
    /// A depth bound was supplied and states beyond it remained.
    BoundExhausted { depth: usize },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    pub states_expanded: u64,
    pub states_generated: u64,
    /// Successors discarded because an agent lost every path to its goal.
    pub states_pruned: u64,
    pub states_stored: u64,
    pub peak_frontier: u64,
    pub elapsed: Duration,
}

impl SearchStats {
    /// Everything except wall time; equal for identical inputs.
    pub fn counts(&self) -> [u64; 5] {
        [
            self.states_expanded,
            self.states_generated,
            self.states_pruned,
            self.states_stored,
            self.peak_frontier,
        ]
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn plan(&self) -> Option<&Plan> {
        match &self.outcome {
            Outcome::Solvable(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_solvable(&self) -> bool {
        matches!(self.outcome, Outcome::Solvable(_))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchLimits {
    /// Ceiling on the closed-set size.
    pub max_states: Option<usize>,
    pub time_limit: Option<Duration>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveOptions {
    pub depth_bound: Option<usize>,
    pub limits: SearchLimits,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    States(usize),
    Time(Duration),
}

#[derive(Debug, Clone, Error)]
pub enum SolveError {
    #[error(transparent)]
    InvalidInstance(#[from] InvalidInstance),
    #[error("resource limit reached ({limit:?}) after {} stored states", stats.states_stored)]
    ResourceLimit {
        limit: LimitKind,
        stats: SearchStats,
    },
    #[error("{0} vertices exceed the supported maximum of 65535")]
    TooManyVertices(usize),
    #[error("bound valid only on DAGs")]
    NotADag,
}

/// Upper bound on the length of any move sequence on a DAG: every agent
/// visits each vertex at most once, so `|V|` moves per agent and `|V|²` total.
pub fn dag_move_bound(inst: &MapfInstance) -> Result<usize, SolveError> {
    if !is_dag(inst.digraph()) {
        return Err(SolveError::NotADag);
    }
    let n = inst.digraph().vertex_count();
    Ok(n * n)
}
