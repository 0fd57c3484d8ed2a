//! Solution procedures: the tree construction, the `tau` bound and its
//! heuristic, lower bounds, the exact hyperedge-cover engine, a brute-force
//! transition search and the [`solve`] entry point.

mod bounds;
mod brute;
pub mod cover;
mod solve;
mod tree;

use thiserror::Error;

pub use bounds::{lower_bound, tau, tau_heuristic_hypergraph};
pub use brute::exact_min_transitions;
pub use cover::{min_cost_cover, Admissibility, CoverError, CoverInstance, CoverOptions, CoverSolution};
pub use solve::{solve, Method, SolveMode, SolveReport};
pub use tree::tree_transition_set;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("search limit of {limit} subsets reached before finding a connecting set")]
    LimitExceeded { limit: u64 },
    #[error(transparent)]
    Cover(#[from] CoverError),
}
