//! Covers of the formula graph built from truth assignments.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use serde::Serialize;

use crate::graph::Vertex;
use crate::hypergraph::{validate_co_connecting, Hypergraph};
use crate::solvers::CoverSolution;

use super::config::{configuration_min_cost, Configuration, Symbol, TableOptions, REFERENCE_SIGNS};
use super::gadget::{build_formula_graph, reversed_role, GadgetGraph, OCCURRENCE_SIZE};
use super::{Assignment, CnfFormula, SatError};

/// Local cost of a clause satisfied by the assignment.
const SATISFIED_CLAUSE_COST: usize = 25;

/// Slot symbols of `clause` under `assignment`: a true variable has its T
/// edges covered, so a literal gets S exactly when it is true.
pub fn clause_symbols(f: &CnfFormula, clause: usize, assignment: &Assignment) -> [Symbol; 3] {
    f.clauses()[clause].map(|l| if l.is_true(assignment) { Symbol::S } else { Symbol::U })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseCover {
    pub clause: usize,
    pub configuration: String,
    pub cost: usize,
    pub hyperedges: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone)]
pub struct ReductionCover {
    pub hypergraph: Hypergraph,
    pub clauses: Vec<ClauseCover>,
    pub cost: usize,
}

/// Maps a reference-gadget vertex to the clause gadget with slot
/// polarities `signs` and symbols `symbols`. Reference slot `j` is sent to
/// the target slot holding the `j`-th smallest symbol, reversed when the
/// polarities differ; the symbol of each slot is preserved.
fn reference_to_clause(signs: [bool; 3], symbols: [Symbol; 3]) -> impl Fn(Vertex) -> Vertex {
    let mut order = [0usize, 1, 2];
    order.sort_by_key(|&k| (symbols[k], k));
    move |v: Vertex| {
        let (slot, role) = (v / OCCURRENCE_SIZE, v % OCCURRENCE_SIZE);
        if slot >= 3 {
            return v;
        }
        let target = order[slot];
        let role = if signs[target] == REFERENCE_SIGNS[slot] {
            role
        } else {
            reversed_role(role)
        };
        target * OCCURRENCE_SIZE + role
    }
}

/// Co-connecting hypergraph of the formula graph: for each clause, an
/// optimal local cover for the configuration the assignment induces,
/// carried over from the reference gadget.
pub fn assignment_to_cover(
    f: &CnfFormula,
    g: &GadgetGraph,
    assignment: &Assignment,
    options: &TableOptions,
) -> Result<ReductionCover, SatError> {
    if assignment.len() != f.variable_count() {
        return Err(SatError::PartialAssignment {
            var: assignment.len().min(f.variable_count()) + 1,
        });
    }
    let mut solved: HashMap<Configuration, CoverSolution> = HashMap::new();
    let mut clauses = Vec::with_capacity(f.clauses().len());
    for (i, clause) in f.clauses().iter().enumerate() {
        let symbols = clause_symbols(f, i, assignment);
        let config = Configuration::new(symbols);
        let sol = match solved.entry(config) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(configuration_min_cost(config, options)?),
        };
        let to_clause = reference_to_clause(clause.map(|l| l.positive), symbols);
        let mut hyperedges: Vec<Vec<Vertex>> = sol
            .hyperedges
            .iter()
            .map(|e| {
                let mut mapped: Vec<Vertex> = e.iter().map(|&v| g.embed(i, to_clause(v))).collect();
                mapped.sort_unstable();
                mapped
            })
            .collect();
        hyperedges.sort();
        clauses.push(ClauseCover {
            clause: i,
            configuration: config.to_string(),
            cost: sol.cost,
            hyperedges,
        });
    }
    let hypergraph = Hypergraph::new(clauses.iter().flat_map(|c| c.hyperedges.iter().cloned()));
    let cost = clauses.iter().map(|c| c.cost).sum();
    Ok(ReductionCover {
        hypergraph,
        clauses,
        cost,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClauseSummary {
    pub clause: usize,
    pub configuration: String,
    pub cost: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub vertices: usize,
    pub edges: usize,
    pub clauses: usize,
    pub satisfied: bool,
    pub cost: usize,
    /// `25m`, reached exactly when the assignment satisfies the formula.
    pub target_cost: usize,
    pub cover_valid: bool,
    /// Every hyperedge lies inside a single clause gadget.
    pub within_clause_gadgets: bool,
    /// `cost == 25m` holds exactly when the assignment is satisfying.
    pub criterion_holds: bool,
    pub per_clause: Vec<ClauseSummary>,
    pub note: String,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.cover_valid && self.within_clause_gadgets && self.criterion_holds
    }
}

/// Builds the formula graph, the cover for `assignment`, and checks the
/// cover and the `25m` criterion.
pub fn verify_reduction(
    f: &CnfFormula,
    assignment: &Assignment,
    options: &TableOptions,
) -> Result<(GadgetGraph, ReductionCover, ReductionReport), SatError> {
    let g = build_formula_graph(f)?;
    let cover = assignment_to_cover(f, &g, assignment, options)?;
    let m = f.clauses().len();
    let validation = validate_co_connecting(&g.graph, &cover.hypergraph);
    let members: Vec<Vec<Vertex>> = (0..m).map(|i| g.clause_membership(i)).collect();
    let within = cover.clauses.iter().all(|c| {
        c.hyperedges
            .iter()
            .all(|e| e.iter().all(|v| members[c.clause].binary_search(v).is_ok()))
    });
    let satisfied = f.is_satisfied_by(assignment);
    let target = SATISFIED_CLAUSE_COST * m;
    let report = ReductionReport {
        vertices: g.graph.vertex_count(),
        edges: g.graph.edge_count(),
        clauses: m,
        satisfied,
        cost: cover.cost,
        target_cost: target,
        cover_valid: validation.valid && validation.cost <= cover.cost,
        within_clause_gadgets: within,
        criterion_holds: (cover.cost == target) == satisfied,
        per_clause: cover
            .clauses
            .iter()
            .map(|c| ClauseSummary {
                clause: c.clause,
                configuration: c.configuration.clone(),
                cost: c.cost,
            })
            .collect(),
        note: "planarity is not checked; if the formula's variable-clause incidence graph is planar, \
               so is the gadget graph"
            .to_string(),
    };
    Ok((g, cover, report))
}
