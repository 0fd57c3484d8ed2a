//! Simple undirected graphs over dense vertex ids `0..n`, together with the
//! structural queries used throughout the solvers: components,
//! co-components, cut vertices and spanning trees.

mod family;
mod io;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

pub use family::Family;
pub(crate) use io::content_lines;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: malformed header, expected \"<vertices> <edges>\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge, expected \"<u> <v>\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("invalid edge {u} {v}: {reason}")]
    InvalidEdge {
        u: usize,
        v: usize,
        reason: &'static str,
    },
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
}

/// Reason an edge cannot be inserted; turned into a [`GraphError`] by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EdgeFault {
    OutOfRange(Vertex),
    SelfLoop(Vertex),
    Duplicate,
}

/// A finite simple undirected graph. Adjacency lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// A partition of the vertex set into blocks. Blocks are sorted internally
/// and ordered by their smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexPartition {
    blocks: Vec<Vec<Vertex>>,
}

impl VertexPartition {
    pub fn from_blocks(mut blocks: Vec<Vec<Vertex>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_by_key(|b| b[0]);
        VertexPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<Vertex>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn into_blocks(self) -> Vec<Vec<Vertex>> {
        self.blocks
    }
}

struct EdgeBuilder {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    seen: HashSet<(Vertex, Vertex)>,
}

impl EdgeBuilder {
    fn new(n: usize) -> Self {
        EdgeBuilder {
            n,
            adj: vec![Vec::new(); n],
            seen: HashSet::new(),
        }
    }

    fn insert(&mut self, u: Vertex, v: Vertex) -> Result<(), EdgeFault> {
        if u >= self.n {
            return Err(EdgeFault::OutOfRange(u));
        }
        if v >= self.n {
            return Err(EdgeFault::OutOfRange(v));
        }
        if u == v {
            return Err(EdgeFault::SelfLoop(u));
        }
        if !self.seen.insert((u.min(v), u.max(v))) {
            return Err(EdgeFault::Duplicate);
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    fn finish(mut self) -> Graph {
        for list in &mut self.adj {
            list.sort_unstable();
        }
        Graph {
            adj: self.adj,
            edge_count: self.seen.len(),
        }
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut builder = EdgeBuilder::new(n);
        for (u, v) in edges {
            builder.insert(u, v).map_err(|fault| GraphError::InvalidEdge {
                u,
                v,
                reason: match fault {
                    EdgeFault::OutOfRange(_) => "vertex out of range",
                    EdgeFault::SelfLoop(_) => "self-loop",
                    EdgeFault::Duplicate => "duplicate edge",
                },
            })?;
        }
        Ok(builder.finish())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Unordered non-adjacent pairs `(u, v)` with `u < v`, lexicographic.
    pub fn non_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertex_count();
        (0..n).flat_map(move |u| {
            (u + 1..n)
                .filter(move |&v| !self.adjacent(u, v))
                .map(move |v| (u, v))
        })
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.edge_count == n * n.saturating_sub(1) / 2
    }

    pub fn complement(&self) -> Graph {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for (u, list) in adj.iter_mut().enumerate() {
            let mut it = self.adj[u].iter().peekable();
            for v in 0..n {
                if it.peek() == Some(&&v) {
                    it.next();
                } else if v != u {
                    list.push(v);
                }
            }
        }
        Graph {
            adj,
            edge_count: n * n.saturating_sub(1) / 2 - self.edge_count,
        }
    }

    pub fn connected_components(&self) -> VertexPartition {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut blocks = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut block = Vec::new();
            while let Some(v) = queue.pop_front() {
                block.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            blocks.push(block);
        }
        VertexPartition::from_blocks(blocks)
    }

    /// Connected components of the complement, computed without building it.
    pub fn co_connected_components(&self) -> VertexPartition {
        let n = self.vertex_count();
        let mut remaining: Vec<Vertex> = (0..n).collect();
        let mut blocks = Vec::new();
        let mut queue = VecDeque::new();
        while let Some(s) = remaining.pop() {
            queue.push_back(s);
            let mut block = Vec::new();
            while let Some(v) = queue.pop_front() {
                block.push(v);
                let (next, keep): (Vec<Vertex>, Vec<Vertex>) =
                    remaining.iter().partition(|&&w| !self.adjacent(v, w));
                remaining = keep;
                queue.extend(next);
            }
            blocks.push(block);
        }
        VertexPartition::from_blocks(blocks)
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_co_connected(&self) -> bool {
        self.co_connected_components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1
            && self.edge_count + 1 == self.vertex_count()
            && self.is_connected()
    }

    /// Whether `G[set]` is connected. The empty set counts as connected.
    pub fn induced_is_connected(&self, set: &[Vertex]) -> bool {
        let Some(&start) = set.first() else {
            return true;
        };
        let member = self.membership(set);
        let mut seen = vec![false; self.vertex_count()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == distinct_count(set)
    }

    /// Whether the complement of `G[set]` is connected.
    pub fn induced_is_co_connected(&self, set: &[Vertex]) -> bool {
        let mut remaining: Vec<Vertex> = set.to_vec();
        remaining.sort_unstable();
        remaining.dedup();
        let Some(start) = remaining.pop() else {
            return true;
        };
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            let (next, keep): (Vec<Vertex>, Vec<Vertex>) =
                remaining.iter().partition(|&&w| !self.adjacent(v, w));
            remaining = keep;
            stack.extend(next);
        }
        remaining.is_empty()
    }

    /// Vertices whose removal disconnects the graph.
    pub fn cut_vertices(&self) -> Result<Vec<Vertex>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let n = self.vertex_count();
        if n == 0 {
            return Ok(Vec::new());
        }
        // Iterative Hopcroft-Tarjan low-link from vertex 0.
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut parent = vec![usize::MAX; n];
        let mut is_cut = vec![false; n];
        let mut root_children = 0;
        let mut time = 0;
        let mut stack: Vec<(Vertex, usize)> = vec![(0, 0)];
        disc[0] = 0;
        low[0] = 0;
        while let Some(top) = stack.last_mut() {
            let v = top.0;
            if top.1 < self.adj[v].len() {
                let w = self.adj[v][top.1];
                top.1 += 1;
                if disc[w] == usize::MAX {
                    time += 1;
                    disc[w] = time;
                    low[w] = time;
                    parent[w] = v;
                    if v == 0 {
                        root_children += 1;
                    }
                    stack.push((w, 0));
                } else if w != parent[v] {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                let p = parent[v];
                if p != usize::MAX {
                    low[p] = low[p].min(low[v]);
                    if p != 0 && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        is_cut[0] = root_children >= 2;
        Ok((0..n).filter(|&v| is_cut[v]).collect())
    }

    pub fn has_cut_vertex(&self) -> Result<bool, GraphError> {
        Ok(!self.cut_vertices()?.is_empty())
    }

    /// Breadth-first spanning tree from vertex 0, visiting lower-id
    /// neighbours first. Edges are returned as `(parent, child)` in
    /// discovery order.
    pub fn spanning_tree(&self) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
        let all: Vec<Vertex> = (0..self.vertex_count()).collect();
        self.induced_spanning_tree(&all)
            .ok_or(GraphError::Disconnected)
    }

    /// Same traversal restricted to `G[set]`, rooted at the smallest member.
    /// `None` when `G[set]` is disconnected.
    pub fn induced_spanning_tree(&self, set: &[Vertex]) -> Option<Vec<(Vertex, Vertex)>> {
        let Some(&root) = set.iter().min() else {
            return Some(Vec::new());
        };
        let member = self.membership(set);
        let mut seen = vec![false; self.vertex_count()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut tree = Vec::new();
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if member[w] && !seen[w] {
                    seen[w] = true;
                    tree.push((v, w));
                    queue.push_back(w);
                }
            }
        }
        (tree.len() + 1 == distinct_count(set)).then_some(tree)
    }

    fn membership(&self, set: &[Vertex]) -> Vec<bool> {
        let mut member = vec![false; self.vertex_count()];
        for &v in set {
            member[v] = true;
        }
        member
    }
}

fn distinct_count(set: &[Vertex]) -> usize {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.vertex_count(), self.edge_count())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let k4 = Family::Complete(4).build().unwrap();
        let c = k4.complement();
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.edge_count(), 0);
    }

    #[test]
    fn components_of_path_and_edgeless() {
        assert_eq!(path(3).connected_components().blocks(), &[vec![0, 1, 2]]);
        assert_eq!(
            Graph::empty(3).connected_components().blocks(),
            &[vec![0], vec![1], vec![2]]
        );
    }

    #[test]
    fn co_components_of_p3() {
        let p3 = path(3);
        let co = p3.co_connected_components();
        assert_eq!(co.blocks(), &[vec![0, 2], vec![1]]);
        assert_eq!(co, p3.complement().connected_components());
    }

    #[test]
    fn co_components_of_complete_are_singletons() {
        let k5 = Family::Complete(5).build().unwrap();
        assert_eq!(k5.co_connected_components().len(), 5);
    }

    #[test]
    fn cut_vertices_basic() {
        assert_eq!(path(3).cut_vertices().unwrap(), vec![1]);
        assert!(Family::Cycle(5).build().unwrap().cut_vertices().unwrap().is_empty());
        assert_eq!(path(6).cut_vertices().unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(
            Graph::empty(2).cut_vertices(),
            Err(GraphError::Disconnected)
        );
        // two triangles sharing vertex 2
        let bowtie =
            Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(bowtie.cut_vertices().unwrap(), vec![2]);
    }

    #[test]
    fn spanning_tree_of_cycle() {
        let c4 = Family::Cycle(4).build().unwrap();
        let t = c4.spanning_tree().unwrap();
        assert_eq!(t.len(), 3);
        assert!(t.iter().all(|&(u, v)| c4.adjacent(u, v)));
    }

    #[test]
    fn spanning_tree_of_tree_is_itself() {
        let p = path(5);
        let mut t: Vec<_> = p
            .spanning_tree()
            .unwrap()
            .into_iter()
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect();
        t.sort();
        assert_eq!(t, p.edges().collect::<Vec<_>>());
    }

    #[test]
    fn induced_queries() {
        let p4 = path(4);
        assert!(p4.induced_is_connected(&[1, 2, 3]));
        assert!(!p4.induced_is_connected(&[0, 2]));
        assert!(p4.induced_is_co_connected(&[0, 1, 2, 3]));
        assert!(!p4.induced_is_co_connected(&[0, 1, 2]));
        assert!(p4.induced_is_co_connected(&[0, 2]));
        assert!(p4.induced_spanning_tree(&[0, 2]).is_none());
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(2, [(0, 0)]),
            Err(GraphError::InvalidEdge { .. })
        ));
        assert!(Graph::from_edges(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }
}
