use crate::graph::Graph;
use crate::hypergraph::Hypergraph;

use super::SolverError;

fn require_connected(g: &Graph) -> Result<(), SolverError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(SolverError::Disconnected)
    }
}

/// Upper bound on the optimum: over co-connected components `C` with at
/// least two vertices, `|C| - 2` if `G[C]` is connected and `|C| - 1`
/// otherwise.
pub fn tau(g: &Graph) -> Result<usize, SolverError> {
    require_connected(g)?;
    Ok(g.co_connected_components()
        .blocks()
        .iter()
        .filter(|c| c.len() >= 2)
        .map(|c| {
            if g.induced_is_connected(c) {
                c.len() - 2
            } else {
                c.len() - 1
            }
        })
        .sum())
}

/// Connecting hypergraph of cost exactly [`tau`]: each co-connected
/// component of size at least two, plus the lowest-id outside vertex when
/// the component induces a disconnected subgraph. Any outside vertex is
/// adjacent to the whole component, so the result is connected.
pub fn tau_heuristic_hypergraph(g: &Graph) -> Result<Hypergraph, SolverError> {
    require_connected(g)?;
    let blocks = g.co_connected_components();
    let edges = blocks.blocks().iter().filter(|c| c.len() >= 2).map(|c| {
        let mut e = c.clone();
        if !g.induced_is_connected(c) {
            let outside = (0..g.vertex_count())
                .find(|v| c.binary_search(v).is_err())
                .expect("a disconnected co-component leaves vertices outside");
            e.push(outside);
        }
        e
    });
    Ok(Hypergraph::new(edges))
}

/// Largest of `ceil(2 tau / 3)`, `n - 2` when a cut vertex exists, 1 when
/// the graph is not complete, and 0.
pub fn lower_bound(g: &Graph) -> Result<usize, SolverError> {
    let t = tau(g)?;
    let mut lb = (2 * t).div_ceil(3);
    if g.has_cut_vertex().map_err(|_| SolverError::Disconnected)? {
        lb = lb.max(g.vertex_count().saturating_sub(2));
    }
    if !g.is_complete() {
        lb = lb.max(1);
    }
    Ok(lb)
}
