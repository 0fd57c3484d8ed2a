//! Clause configurations and their minimum local cover costs.
//!
//! For one variable slot, a clause's local cover may cover neither labelled
//! edge (N), both (B), only the one that makes the literal true (S), or
//! only the other one (U). A configuration is the sorted triple of slot
//! symbols; there are 20 of them.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::graph::Vertex;
use crate::solvers::{min_cost_cover, Admissibility, CoverInstance, CoverOptions, CoverSolution};

use super::gadget::build_clause_gadget;
use super::SatError;

/// Slot polarities of the clause gadget used for the table: one positive
/// and two negative occurrences.
pub const REFERENCE_SIGNS: [bool; 3] = [true, false, false];

/// Ordered `B < U < S < N`, the order in which configurations are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    B,
    U,
    S,
    N,
}

impl Symbol {
    const ALL: [Symbol; 4] = [Symbol::B, Symbol::U, Symbol::S, Symbol::N];

    pub fn letter(self) -> char {
        match self {
            Symbol::B => 'B',
            Symbol::U => 'U',
            Symbol::S => 'S',
            Symbol::N => 'N',
        }
    }

    /// Which of the slot's (T, F) edges the symbol designates, given the
    /// literal's polarity.
    pub fn designates(self, positive: bool) -> (bool, bool) {
        match self {
            Symbol::B => (true, true),
            Symbol::N => (false, false),
            Symbol::S => (positive, !positive),
            Symbol::U => (!positive, positive),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration([Symbol; 3]);

impl Configuration {
    pub fn new(mut symbols: [Symbol; 3]) -> Self {
        symbols.sort();
        Configuration(symbols)
    }

    pub fn symbols(&self) -> [Symbol; 3] {
        self.0
    }

    /// The 20 configurations in listing order.
    pub fn all() -> Vec<Configuration> {
        let mut out = Vec::with_capacity(20);
        for (i, &a) in Symbol::ALL.iter().enumerate() {
            for (j, &b) in Symbol::ALL.iter().enumerate().skip(i) {
                for &c in &Symbol::ALL[j..] {
                    out.push(Configuration([a, b, c]));
                }
            }
        }
        out
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.letter()))
    }
}

impl FromStr for Configuration {
    type Err = SatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let symbols: Option<Vec<Symbol>> = s
            .trim()
            .chars()
            .map(|ch| match ch.to_ascii_uppercase() {
                'B' => Some(Symbol::B),
                'U' => Some(Symbol::U),
                'S' => Some(Symbol::S),
                'N' => Some(Symbol::N),
                _ => None,
            })
            .collect();
        symbols
            .and_then(|v| <[Symbol; 3]>::try_from(v).ok())
            .map(Configuration::new)
            .ok_or_else(|| SatError::UnknownConfiguration(s.to_string()))
    }
}

/// How labelled edges that a configuration does not designate are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Semantics {
    /// Non-designated labelled edges must stay uncovered.
    #[default]
    Exact,
    /// Non-designated labelled edges may be covered or not.
    AtLeast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TableOptions {
    pub semantics: Semantics,
    /// Also require hyperedges to induce connected subgraphs.
    pub connected_only: bool,
    pub cover: CoverOptions,
}

/// Local cover problem for one clause gadget with slot polarities `signs`
/// and slot symbols `symbols` (in slot order, not sorted): cover every
/// unlabelled edge and the designated labelled edges with co-connected
/// hyperedges inside the gadget.
pub fn clause_instance(signs: [bool; 3], symbols: [Symbol; 3], options: &TableOptions) -> CoverInstance {
    let gadget = build_clause_gadget(signs);
    let mut labelled: Vec<(Vertex, Vertex)> = Vec::new();
    let mut required: Vec<(Vertex, Vertex)> = Vec::new();
    let mut forbidden: Vec<(Vertex, Vertex)> = Vec::new();
    for ((slot, &sign), &symbol) in gadget.slots.iter().zip(&signs).zip(&symbols) {
        let (t, f) = symbol.designates(sign);
        for (edge, wanted) in [(slot.t_edge(), t), (slot.f_edge(), f)] {
            labelled.push(edge);
            if wanted {
                required.push(edge);
            } else if options.semantics == Semantics::Exact {
                forbidden.push(edge);
            }
        }
    }
    required.extend(gadget.graph.edges().filter(|e| !labelled.contains(e)));
    let n = gadget.graph.vertex_count();
    CoverInstance::new(gadget.graph, Admissibility::CoConnected, required, forbidden, 0..n)
        .expect("clause instances are well formed")
        .require_connected(options.connected_only)
}

/// Minimum local cover cost of `config` on the reference clause gadget.
pub fn configuration_min_cost(config: Configuration, options: &TableOptions) -> Result<CoverSolution, SatError> {
    let instance = clause_instance(REFERENCE_SIGNS, config.symbols(), options);
    min_cost_cover(&instance, options.cover).map_err(|source| SatError::Search {
        configuration: config.to_string(),
        source,
    })
}

/// All 20 configurations with their optimal local covers, in listing order.
pub fn configuration_table(options: &TableOptions) -> Result<Vec<(Configuration, CoverSolution)>, SatError> {
    Configuration::all()
        .into_par_iter()
        .map(|c| configuration_min_cost(c, options).map(|s| (c, s)))
        .collect()
}
