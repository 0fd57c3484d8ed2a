//! Connecting and co-connecting hypergraphs.
//!
//! A connecting hypergraph of `G` is a family of vertex sets, each of size at
//! least two and inducing a connected subgraph, such that every non-adjacent
//! pair lies together in some member. The co-connecting variant swaps the
//! roles: members induce co-connected subgraphs and must cover every edge.
//! Both cost `sum(|E| - 2)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{content_lines, Graph, Vertex};
use crate::transitions::{Transition, TransitionSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("line {line}: malformed hyperedge, expected vertex ids")]
    Malformed { line: usize },
    #[error("line {line}: vertex {vertex} repeated within a hyperedge")]
    RepeatedVertex { line: usize, vertex: Vertex },
    #[error("hypergraph is not valid for this graph ({} violation(s), first: {})", .0.violations.len(), .0.violations.first().map(|v| v.to_string()).unwrap_or_default())]
    Invalid(ValidationReport),
}

/// Hyperedges as sorted vertex lists, the family itself sorted and free of
/// duplicates.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Hypergraph {
    hyperedges: Vec<Vec<Vertex>>,
}

impl Hypergraph {
    /// Normalises the input: sorts each hyperedge and the family, dropping
    /// repeated vertices and repeated hyperedges.
    pub fn new<I>(hyperedges: I) -> Self
    where
        I: IntoIterator<Item = Vec<Vertex>>,
    {
        Self::with_duplicate_count(hyperedges).0
    }

    fn with_duplicate_count<I>(hyperedges: I) -> (Self, usize)
    where
        I: IntoIterator<Item = Vec<Vertex>>,
    {
        let mut total = 0;
        let set: BTreeSet<Vec<Vertex>> = hyperedges
            .into_iter()
            .map(|mut e| {
                total += 1;
                e.sort_unstable();
                e.dedup();
                e
            })
            .collect();
        let duplicates = total - set.len();
        (
            Hypergraph {
                hyperedges: set.into_iter().collect(),
            },
            duplicates,
        )
    }

    pub fn hyperedges(&self) -> &[Vec<Vertex>] {
        &self.hyperedges
    }

    pub fn len(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperedges.is_empty()
    }

    /// `sum(|E| - 2)`; hyperedges smaller than two contribute nothing.
    pub fn cost(&self) -> usize {
        self.hyperedges
            .iter()
            .map(|e| e.len().saturating_sub(2))
            .sum()
    }

    /// Parses one hyperedge per line. Returns the hypergraph and the number
    /// of duplicate lines that were collapsed.
    pub fn parse(text: &str) -> Result<(Self, usize), HypergraphError> {
        let mut edges = Vec::new();
        for (line, content) in content_lines(text) {
            let mut e: Vec<Vertex> = content
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| HypergraphError::Malformed { line }))
                .collect::<Result<_, _>>()?;
            e.sort_unstable();
            if let Some(w) = e.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::RepeatedVertex { line, vertex: w[0] });
            }
            edges.push(e);
        }
        Ok(Self::with_duplicate_count(edges))
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.hyperedges {
            let line: Vec<String> = e.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    VertexOutOfRange { hyperedge: usize, vertex: Vertex },
    TooSmall { hyperedge: usize },
    NotConnected { hyperedge: usize },
    NotCoConnected { hyperedge: usize },
    UncoveredPair { u: Vertex, v: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange { hyperedge, vertex } => {
                write!(f, "hyperedge {hyperedge} uses vertex {vertex} out of range")
            }
            Violation::TooSmall { hyperedge } => {
                write!(f, "hyperedge {hyperedge} has fewer than 2 vertices")
            }
            Violation::NotConnected { hyperedge } => {
                write!(f, "hyperedge {hyperedge} does not induce a connected subgraph")
            }
            Violation::NotCoConnected { hyperedge } => {
                write!(f, "hyperedge {hyperedge} does not induce a co-connected subgraph")
            }
            Violation::UncoveredPair { u, v } => write!(f, "pair ({u}, {v}) is not covered"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub cost: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Connecting,
    CoConnecting,
}

fn validate(g: &Graph, h: &Hypergraph, side: Side) -> ValidationReport {
    let n = g.vertex_count();
    let mut violations = Vec::new();
    let mut covered = vec![false; n * n];
    for (i, e) in h.hyperedges().iter().enumerate() {
        if let Some(&vertex) = e.iter().find(|&&v| v >= n) {
            violations.push(Violation::VertexOutOfRange { hyperedge: i, vertex });
            continue;
        }
        if e.len() < 2 {
            violations.push(Violation::TooSmall { hyperedge: i });
            continue;
        }
        match side {
            Side::Connecting if !g.induced_is_connected(e) => {
                violations.push(Violation::NotConnected { hyperedge: i });
                continue;
            }
            Side::CoConnecting if !g.induced_is_co_connected(e) => {
                violations.push(Violation::NotCoConnected { hyperedge: i });
                continue;
            }
            _ => {}
        }
        for (k, &u) in e.iter().enumerate() {
            for &v in &e[k + 1..] {
                covered[u * n + v] = true;
            }
        }
    }
    let pairs: Box<dyn Iterator<Item = (Vertex, Vertex)>> = match side {
        Side::Connecting => Box::new(g.non_edges()),
        Side::CoConnecting => Box::new(g.edges()),
    };
    violations.extend(
        pairs
            .filter(|&(u, v)| !covered[u * n + v])
            .map(|(u, v)| Violation::UncoveredPair { u, v }),
    );
    ValidationReport {
        valid: violations.is_empty(),
        cost: h.cost(),
        violations,
    }
}

/// Checks that every hyperedge induces a connected subgraph with at least
/// two vertices and that every non-adjacent pair is covered.
pub fn validate_connecting(g: &Graph, h: &Hypergraph) -> ValidationReport {
    validate(g, h, Side::Connecting)
}

/// Checks that every hyperedge induces a co-connected subgraph with at least
/// two vertices and that every edge is covered.
pub fn validate_co_connecting(g: &Graph, h: &Hypergraph) -> ValidationReport {
    validate(g, h, Side::CoConnecting)
}

/// Transitions of size `|E| - 2` for one connected vertex set: take a
/// spanning tree of `G[E]`, let `f(v)` be the lowest-id tree neighbour of
/// `v`, and allow `u v f(v)` for every other tree neighbour `u`.
pub(crate) fn spanning_tree_transitions(tree: &[(Vertex, Vertex)], out: &mut TransitionSet) {
    let mut nbrs: std::collections::BTreeMap<Vertex, Vec<Vertex>> = Default::default();
    for &(a, b) in tree {
        nbrs.entry(a).or_default().push(b);
        nbrs.entry(b).or_default().push(a);
    }
    for (v, list) in nbrs {
        let f = *list.iter().min().unwrap();
        for &u in list.iter().filter(|&&u| u != f) {
            out.insert(Transition::new(u, v, f).expect("tree neighbours are distinct"));
        }
    }
}

/// Connecting transition set of size at most `cost(h)`.
pub fn hypergraph_to_transitions(g: &Graph, h: &Hypergraph) -> Result<TransitionSet, HypergraphError> {
    let report = validate_connecting(g, h);
    if !report.valid {
        return Err(HypergraphError::Invalid(report));
    }
    let mut t = TransitionSet::new();
    for e in h.hyperedges() {
        let tree = g
            .induced_spanning_tree(e)
            .expect("validated hyperedges are connected");
        spanning_tree_transitions(&tree, &mut t);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::transitions::is_t_connected;

    #[test]
    fn cost_examples() {
        assert_eq!(Hypergraph::new([vec![0, 1, 2, 3]]).cost(), 2);
        assert_eq!(
            Hypergraph::new([vec![0, 1, 2, 3], vec![3, 4, 5, 6]]).cost(),
            4
        );
        assert_eq!(Hypergraph::default().cost(), 0);
    }

    #[test]
    fn path_complement_decomposition() {
        let g = Family::PathComplement(7).build().unwrap();
        let h = Hypergraph::new([vec![0, 1, 2, 3], vec![3, 4, 5, 6]]);
        let r = validate_connecting(&g, &h);
        assert!(r.valid, "{r:?}");
        assert_eq!(r.cost, 4);
        let t = hypergraph_to_transitions(&g, &h).unwrap();
        assert!(t.len() <= 4);
        assert!(is_t_connected(&g, &t));

        let half = Hypergraph::new([vec![0, 1, 2, 3]]);
        let r = validate_connecting(&g, &half);
        assert!(!r.valid);
        assert!(r.violations.contains(&Violation::UncoveredPair { u: 4, v: 5 }));
    }

    #[test]
    fn whole_vertex_set_is_valid() {
        let g = Family::Cycle(6).build().unwrap();
        let h = Hypergraph::new([(0..6).collect()]);
        let r = validate_connecting(&g, &h);
        assert!(r.valid);
        assert_eq!(r.cost, 4);
    }

    #[test]
    fn p4_gets_two_transitions() {
        let g = Family::Path(4).build().unwrap();
        let t = hypergraph_to_transitions(&g, &Hypergraph::new([vec![0, 1, 2, 3]])).unwrap();
        assert_eq!(t.len(), 2);
        assert!(is_t_connected(&g, &t));
    }

    #[test]
    fn complete_graph_empty_hypergraph() {
        let g = Family::Complete(4).build().unwrap();
        let t = hypergraph_to_transitions(&g, &Hypergraph::default()).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn co_connecting_checks() {
        let k3 = Family::Complete(3).build().unwrap();
        let r = validate_co_connecting(&k3, &Hypergraph::new([vec![0, 1, 2]]));
        assert!(r.violations.contains(&Violation::NotCoConnected { hyperedge: 0 }));
        let edge = Family::Path(2).build().unwrap();
        let r = validate_co_connecting(&edge, &Hypergraph::new([vec![0, 1]]));
        assert!(!r.valid);
        // complement of P3 is one edge plus the isolated middle vertex
        let p3 = Family::Path(3).build().unwrap();
        assert!(!validate_co_connecting(&p3, &Hypergraph::new([vec![0, 1, 2]])).valid);
        let p4 = Family::Path(4).build().unwrap();
        assert!(validate_co_connecting(&p4, &Hypergraph::new([vec![0, 1, 2, 3]])).valid);
    }

    #[test]
    fn invalid_hypergraph_is_rejected() {
        let g = Family::Path(3).build().unwrap();
        assert!(matches!(
            hypergraph_to_transitions(&g, &Hypergraph::new([vec![0, 2]])),
            Err(HypergraphError::Invalid(_))
        ));
        let r = validate_connecting(&g, &Hypergraph::new([vec![0, 7], vec![1]]));
        assert_eq!(r.violations.len(), 3);
    }

    #[test]
    fn parse_collapses_duplicates() {
        let (h, dups) = Hypergraph::parse("# two\n3 2 1 0\n0 1 2 3\n4 3\n").unwrap();
        assert_eq!(dups, 1);
        assert_eq!(h.to_string(), "0 1 2 3\n3 4\n");
        assert_eq!(
            Hypergraph::parse("1 1\n"),
            Err(HypergraphError::RepeatedVertex { line: 1, vertex: 1 })
        );
        assert_eq!(
            Hypergraph::parse("1 x\n"),
            Err(HypergraphError::Malformed { line: 1 })
        );
    }
}
