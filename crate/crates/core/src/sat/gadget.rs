//! Occurrence gadgets, clause gadgets and the formula graph.
//!
//! An occurrence gadget is the path `p1..p8` with a leaf on each end (the
//! edge to the leaf at `p1` is labelled F, the one at `p8` is labelled T), a
//! chord `p3 p6`, a clause vertex adjacent to `p3` and `p6`, and a pendant
//! on `p3` for a positive occurrence or on `p6` for a negative one. Reversing
//! the path turns one polarity into the other and swaps the labels.
//!
//! A clause gadget joins three occurrence gadgets through a central vertex
//! adjacent to their clause vertices and to one more pendant. In the formula
//! graph consecutive occurrences of a variable (ordered by clause index,
//! cyclically) share their labelled edge: `p8` and the T leaf of one are
//! the `p1` and F leaf of the next.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::graph::{Graph, Vertex};

use super::{CnfFormula, SatError};

/// Vertices per occurrence gadget.
pub const OCCURRENCE_SIZE: usize = 12;
/// Vertices per clause gadget.
pub const CLAUSE_SIZE: usize = 3 * OCCURRENCE_SIZE + 2;
/// Vertices a clause contributes to the formula graph.
const CLAUSE_OWN: usize = 32;

/// Where each role of an occurrence gadget sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotRoles {
    pub path: [Vertex; 8],
    pub f_leaf: Vertex,
    pub t_leaf: Vertex,
    pub clause_vertex: Vertex,
    pub pendant: Vertex,
}

impl SlotRoles {
    /// Roles at `base..base + 12`: path, F leaf, T leaf, clause vertex, pendant.
    fn at(base: Vertex) -> Self {
        SlotRoles {
            path: std::array::from_fn(|i| base + i),
            f_leaf: base + 8,
            t_leaf: base + 9,
            clause_vertex: base + 10,
            pendant: base + 11,
        }
    }

    pub fn t_edge(&self) -> (Vertex, Vertex) {
        (self.path[7], self.t_leaf)
    }

    pub fn f_edge(&self) -> (Vertex, Vertex) {
        (self.path[0], self.f_leaf)
    }

    /// The gadget's 13 edges for the given polarity.
    pub fn edges(&self, positive: bool) -> Vec<(Vertex, Vertex)> {
        let p = &self.path;
        let mut e: Vec<(Vertex, Vertex)> = p.windows(2).map(|w| (w[0], w[1])).collect();
        e.extend([
            self.f_edge(),
            self.t_edge(),
            (p[2], p[5]),
            (self.clause_vertex, p[2]),
            (self.clause_vertex, p[5]),
            (self.pendant, if positive { p[2] } else { p[5] }),
        ]);
        e
    }

    fn as_array(&self) -> [Vertex; OCCURRENCE_SIZE] {
        let mut a = [0; OCCURRENCE_SIZE];
        a[..8].copy_from_slice(&self.path);
        a[8] = self.f_leaf;
        a[9] = self.t_leaf;
        a[10] = self.clause_vertex;
        a[11] = self.pendant;
        a
    }
}

/// Role index under path reversal: `p_i <-> p_(9-i)`, F leaf <-> T leaf.
pub(crate) fn reversed_role(role: usize) -> usize {
    match role {
        0..=7 => 7 - role,
        8 => 9,
        9 => 8,
        r => r,
    }
}

#[derive(Debug, Clone)]
pub struct OccurrenceGadget {
    pub graph: Graph,
    pub roles: SlotRoles,
    pub positive: bool,
}

/// The 12-vertex, 13-edge gadget for one literal occurrence.
pub fn build_occurrence_gadget(positive: bool) -> OccurrenceGadget {
    let roles = SlotRoles::at(0);
    let graph = Graph::from_edges(OCCURRENCE_SIZE, roles.edges(positive)).expect("gadget edges are simple");
    OccurrenceGadget {
        graph,
        roles,
        positive,
    }
}

/// A stand-alone clause gadget on 38 vertices: slot `k` holds vertices
/// `12k..12k+12` (see [`SlotRoles`]), then the central vertex and its pendant.
#[derive(Debug, Clone)]
pub struct ClauseGadget {
    pub graph: Graph,
    pub slots: [SlotRoles; 3],
    pub signs: [bool; 3],
    pub central: Vertex,
    pub pendant: Vertex,
}

pub fn build_clause_gadget(signs: [bool; 3]) -> ClauseGadget {
    let slots: [SlotRoles; 3] = std::array::from_fn(|k| SlotRoles::at(OCCURRENCE_SIZE * k));
    let central = 3 * OCCURRENCE_SIZE;
    let pendant = central + 1;
    let mut edges = Vec::new();
    for (slot, &sign) in slots.iter().zip(&signs) {
        edges.extend(slot.edges(sign));
        edges.push((central, slot.clause_vertex));
    }
    edges.push((central, pendant));
    ClauseGadget {
        graph: Graph::from_edges(CLAUSE_SIZE, edges).expect("gadget edges are simple"),
        slots,
        signs,
        central,
        pendant,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LabelledEdge {
    pub edge: (Vertex, Vertex),
    /// `(clause index, variable)` of the T label.
    pub t_label: (usize, usize),
    /// `(clause index, variable)` of the F label.
    pub f_label: (usize, usize),
}

/// The formula graph with its labels. Clause indices are 0-based;
/// variables keep their DIMACS numbers.
#[derive(Debug, Clone)]
pub struct GadgetGraph {
    pub graph: Graph,
    /// Per clause, the clause vertices of its three slots.
    pub clause_vertices: Vec<[Vertex; 3]>,
    pub central_vertices: Vec<Vertex>,
    pub labelled_edges: Vec<LabelledEdge>,
    /// Per clause, the image of each stand-alone clause-gadget vertex.
    embeddings: Vec<[Vertex; CLAUSE_SIZE]>,
}

impl GadgetGraph {
    pub fn clause_count(&self) -> usize {
        self.embeddings.len()
    }

    /// Image of stand-alone clause-gadget vertex `local` in clause `clause`.
    pub fn embed(&self, clause: usize, local: Vertex) -> Vertex {
        self.embeddings[clause][local]
    }

    /// All vertices of clause `clause`'s gadget, sorted (38 of them).
    pub fn clause_membership(&self, clause: usize) -> Vec<Vertex> {
        let mut v = self.embeddings[clause].to_vec();
        v.sort_unstable();
        v
    }

    /// Sidecar label map for the graph file.
    pub fn labels_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": 1,
            "clause_vertices": self.clause_vertices,
            "central_vertices": self.central_vertices,
            "labelled_edges": self.labelled_edges.iter().map(|l| serde_json::json!({
                "edge": [l.edge.0, l.edge.1],
                "t_label": [l.t_label.0, l.t_label.1],
                "f_label": [l.f_label.0, l.f_label.1],
            })).collect::<Vec<_>>(),
        })
    }
}

/// Builds the formula graph: `32m` vertices and `40m` edges for `m`
/// clauses. Fails when the result is disconnected.
pub fn build_formula_graph(f: &CnfFormula) -> Result<GadgetGraph, SatError> {
    let m = f.clauses().len();
    // vertices owned by (clause, slot): p2..p8, T leaf, clause vertex, pendant
    let own = |i: usize, k: usize, role: usize| -> Vertex {
        let base = CLAUSE_OWN * i + 10 * k;
        match role {
            1..=7 => base + role - 1,
            9 => base + 7,
            10 => base + 8,
            11 => base + 9,
            _ => unreachable!("p1 and the F leaf belong to the previous occurrence"),
        }
    };
    let mut embeddings = vec![[0; CLAUSE_SIZE]; m];
    let mut labelled_edges = Vec::new();
    for var in 1..=f.variable_count() {
        let occ = f.occurrences(var);
        for (j, &(i, k)) in occ.iter().enumerate() {
            let (pi, pk) = occ[(j + occ.len() - 1) % occ.len()];
            let (ni, _) = occ[(j + 1) % occ.len()];
            let local = SlotRoles::at(OCCURRENCE_SIZE * k).as_array();
            for (role, &lv) in local.iter().enumerate() {
                embeddings[i][lv] = match role {
                    0 => own(pi, pk, 7),
                    8 => own(pi, pk, 9),
                    r => own(i, k, r),
                };
            }
            labelled_edges.push((
                (i, k),
                LabelledEdge {
                    edge: (own(i, k, 7), own(i, k, 9)),
                    t_label: (i, var),
                    f_label: (ni, var),
                },
            ));
        }
    }
    labelled_edges.sort_by_key(|&(pos, _)| pos);
    let mut edges = BTreeSet::new();
    let mut central_vertices = Vec::with_capacity(m);
    let mut clause_vertices = Vec::with_capacity(m);
    for (i, clause) in f.clauses().iter().enumerate() {
        let signs = clause.map(|l| l.positive);
        let local = build_clause_gadget(signs);
        embeddings[i][local.central] = CLAUSE_OWN * i + 30;
        embeddings[i][local.pendant] = CLAUSE_OWN * i + 31;
        for (a, b) in local.graph.edges() {
            let (u, v) = (embeddings[i][a], embeddings[i][b]);
            edges.insert((u.min(v), u.max(v)));
        }
        central_vertices.push(embeddings[i][local.central]);
        clause_vertices.push(local.slots.map(|s| embeddings[i][s.clause_vertex]));
    }
    let graph = Graph::from_edges(CLAUSE_OWN * m, edges).expect("formula graph edges are simple");
    if !graph.is_connected() {
        return Err(SatError::Disconnected);
    }
    Ok(GadgetGraph {
        graph,
        clause_vertices,
        central_vertices,
        labelled_edges: labelled_edges.into_iter().map(|(_, l)| l).collect(),
        embeddings,
    })
}
