//! Minimum connecting transition sets.
//!
//! A transition `abc` permits a walk to continue from edge `ab` into edge
//! `bc`. Given a connected graph, the goal is a smallest set of transitions
//! under which every vertex can reach every other. This crate provides the
//! connectivity check, the equivalent hypergraph covering formulation, exact
//! and 3/2-approximate solvers, and the gadget construction used to show the
//! problem NP-hard.

pub mod graph;
pub mod cli;
pub mod hypergraph;
pub mod sat;
pub mod solvers;
pub mod transitions;
mod unionfind;

pub use graph::{Family, Graph, GraphError, Vertex, VertexPartition};
pub use hypergraph::{Hypergraph, HypergraphError, ValidationReport, Violation};
pub use transitions::{Transition, TransitionError, TransitionSet, Walk};
