use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::graph::Graph;
use crate::hypergraph::{hypergraph_to_transitions, Hypergraph};
use crate::transitions::TransitionSet;

use super::cover::{min_cost_cover, CoverError, CoverInstance, CoverOptions};
use super::{lower_bound, tau_heuristic_hypergraph, tree_transition_set, SolverError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// Fast paths, then the `tau` heuristic.
    Auto,
    /// The `tau` heuristic only.
    Heuristic,
    /// As `Auto`, then the exact cover search when optimality is not yet
    /// certified.
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// The input is a tree.
    Tree,
    /// The input has a cut vertex, so `n - 2` is optimal.
    CutVertex,
    /// `tau` heuristic, not proved optimal.
    Heuristic,
    /// Exact cover search.
    Exact,
    /// `tau` heuristic matching the lower bound.
    Certified,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Tree => "tree",
            Method::CutVertex => "cut_vertex",
            Method::Heuristic => "heuristic",
            Method::Exact => "exact",
            Method::Certified => "certified",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub transitions: TransitionSet,
    pub hypergraph: Hypergraph,
    pub cost: usize,
    pub lower_bound: usize,
    pub optimal: bool,
    pub method: Method,
}

impl Serialize for SolveReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let transitions: Vec<[usize; 3]> = self.transitions.iter().map(|t| t.as_triple()).collect();
        let mut st = s.serialize_struct("SolveReport", 6)?;
        st.serialize_field("cost", &self.cost)?;
        st.serialize_field("lower_bound", &self.lower_bound)?;
        st.serialize_field("optimal", &self.optimal)?;
        st.serialize_field("method", &self.method)?;
        st.serialize_field("transitions", &transitions)?;
        st.serialize_field("hyperedges", &self.hypergraph)?;
        st.end()
    }
}

fn report(g: &Graph, hypergraph: Hypergraph, lower_bound: usize, method: Method, optimal: bool) -> SolveReport {
    let transitions = hypergraph_to_transitions(g, &hypergraph).expect("solver hypergraphs are valid");
    SolveReport {
        transitions,
        cost: hypergraph.cost(),
        hypergraph,
        lower_bound,
        optimal,
        method,
    }
}

/// Solves the minimum connecting transition set problem on `g`.
/// `budget` caps the exact search (see [`CoverOptions::node_budget`]).
pub fn solve(g: &Graph, mode: SolveMode, budget: Option<u64>) -> Result<SolveReport, SolverError> {
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    let n = g.vertex_count();
    let lb = lower_bound(g)?;

    if mode != SolveMode::Heuristic {
        if n >= 2 && g.is_tree() {
            let hypergraph = Hypergraph::new((n > 2).then(|| (0..n).collect()));
            let mut r = report(g, hypergraph, lb, Method::Tree, true);
            r.transitions = tree_transition_set(g)?;
            return Ok(r);
        }
        if g.has_cut_vertex().map_err(|_| SolverError::Disconnected)? {
            let hypergraph = Hypergraph::new([(0..n).collect()]);
            return Ok(report(g, hypergraph, lb, Method::CutVertex, true));
        }
    }

    let heuristic = tau_heuristic_hypergraph(g)?;
    if heuristic.cost() == lb {
        return Ok(report(g, heuristic, lb, Method::Certified, true));
    }
    if mode != SolveMode::Exact {
        return Ok(report(g, heuristic, lb, Method::Heuristic, false));
    }

    let instance = CoverInstance::connecting(g).with_upper_bound(heuristic.cost());
    let options = CoverOptions {
        node_budget: budget,
        ..CoverOptions::default()
    };
    match min_cost_cover(&instance, options) {
        Ok(sol) => {
            let hypergraph = Hypergraph::new(sol.hyperedges);
            let cost = hypergraph.cost();
            Ok(report(g, hypergraph, lb.max(cost), Method::Exact, true))
        }
        Err(CoverError::BudgetExhausted { best: Some(best), .. }) if best.cost < heuristic.cost() => {
            Ok(report(g, Hypergraph::new(best.hyperedges), lb, Method::Exact, false))
        }
        Err(CoverError::BudgetExhausted { .. } | CoverError::TooLarge { .. } | CoverError::TooManyPairs { .. }) => {
            Ok(report(g, heuristic, lb, Method::Heuristic, false))
        }
        Err(e) => Err(e.into()),
    }
}
