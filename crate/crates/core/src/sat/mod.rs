//! The reduction from 3-SAT: gadget graphs built from a formula, the
//! per-clause configuration cost table, and covers built from assignments.

mod cnf;
mod config;
mod gadget;
mod witness;

use thiserror::Error;

use crate::solvers::CoverError;

pub use cnf::{Assignment, CnfFormula, Literal};
pub use config::{
    clause_instance, configuration_min_cost, configuration_table, Configuration, Semantics, Symbol, TableOptions,
    REFERENCE_SIGNS,
};
pub use gadget::{
    build_clause_gadget, build_formula_graph, build_occurrence_gadget, ClauseGadget, GadgetGraph, LabelledEdge,
    OccurrenceGadget, SlotRoles,
};
pub use witness::{assignment_to_cover, clause_symbols, verify_reduction, ClauseCover, ReductionCover, ReductionReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatError {
    #[error("missing \"p cnf\" header")]
    MissingHeader,
    #[error("line {line}: malformed header, expected \"p cnf <variables> <clauses>\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed clause literal")]
    MalformedClause { line: usize },
    #[error("header announces {expected} clauses, found {found}")]
    ClauseCountMismatch { expected: usize, found: usize },
    #[error("clause {clause} has {found} literals, exactly 3 required")]
    ClauseArity { clause: usize, found: usize },
    #[error("clause {clause} repeats variable {var}")]
    RepeatedVariable { clause: usize, var: usize },
    #[error("clause {clause} uses variable {var} beyond the declared count")]
    VariableOutOfRange { clause: usize, var: usize },
    #[error("variable {var} never occurs {}", if *positive { "positively" } else { "negatively" })]
    MissingOccurrence { var: usize, positive: bool },
    #[error("gadget graph is disconnected; split the formula into variable-disjoint parts")]
    Disconnected,
    #[error("line {line}: malformed assignment literal")]
    MalformedAssignment { line: usize },
    #[error("assignment mentions variable {var} beyond the formula")]
    AssignmentOutOfRange { var: usize },
    #[error("variable {var} assigned twice")]
    AssignedTwice { var: usize },
    #[error("assignment leaves variable {var} unset")]
    PartialAssignment { var: usize },
    #[error("unknown configuration {0:?}")]
    UnknownConfiguration(String),
    #[error("configuration {configuration}: {source}")]
    Search {
        configuration: String,
        #[source]
        source: CoverError,
    },
}
