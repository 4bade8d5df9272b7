//! Multi-agent pathfinding on directed graphs.
//!
//! Agents sit on distinct vertices of a simple digraph and move one at a
//! time along arcs onto free vertices. This crate provides the instance
//! model and plan validation ([`mapf`]), an exhaustive breadth-first
//! solvability decider and related analyses ([`solver`]), a polynomial
//! reduction from 3SAT with constructive plan synthesis ([`reduction`]),
//! graph structure analyses ([`graph`]) and the text formats used by the
//! `dimapf` command-line tool ([`format`], [`dimacs`]).

pub mod dimacs;
pub mod equivcheck;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod mapf;
pub mod reduction;
pub mod solver;

pub use graph::{Digraph, Graph, SccPartition, VertexId};
pub use mapf::{AgentId, MapfInstance, Move, Plan, State};
pub use reduction::{Cnf3Formula, Literal, ReductionArtifact};
pub use solver::{Outcome, SearchResult};
