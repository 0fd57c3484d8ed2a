use crate::graph::Graph;
use crate::hypergraph::spanning_tree_transitions;
use crate::transitions::TransitionSet;

use super::SolverError;

/// Connecting transition set of size `n - 2` for a tree: every vertex `v`
/// picks its lowest-id neighbour `f(v)` and allows `u v f(v)` for each other
/// neighbour `u`.
pub fn tree_transition_set(g: &Graph) -> Result<TransitionSet, SolverError> {
    if !g.is_tree() {
        return Err(SolverError::NotATree);
    }
    let edges: Vec<_> = g.edges().collect();
    let mut t = TransitionSet::new();
    spanning_tree_transitions(&edges, &mut t);
    Ok(t)
}
