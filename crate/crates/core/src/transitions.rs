//! Transitions, transition-compatible walks and the connectivity check.
//!
//! A transition `abc` is the unordered pair of edges `{ab, bc}` with `a != c`.
//! Because a walk may always turn back along the edge it just used, whether
//! `v` can be reached from `u` only depends on which edges are linked by
//! transitions: two vertices are mutually reachable exactly when they are
//! adjacent or some edge at `u` and some edge at `v` are in the same
//! component of the "edges joined by a transition" relation.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{content_lines, Graph, Vertex};
use crate::hypergraph::Hypergraph;
use crate::unionfind::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitionError {
    #[error("transition {a} {b} {c} uses a missing edge")]
    MissingEdge { a: Vertex, b: Vertex, c: Vertex },
    #[error("transition {a} {b} {c} has equal end vertices")]
    Degenerate { a: Vertex, b: Vertex, c: Vertex },
    #[error("line {line}: malformed transition, expected \"<a> <b> <c>\"")]
    Malformed { line: usize },
    #[error("line {line}: {source}")]
    InvalidLine {
        line: usize,
        #[source]
        source: Box<TransitionError>,
    },
    #[error("walk is empty")]
    EmptyWalk,
    #[error("walk step {position} ({u} -> {v}) is not an edge")]
    NotAWalk {
        position: usize,
        u: Vertex,
        v: Vertex,
    },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("graph is not connected by the transition set (e.g. {u} and {v})")]
    NotConnecting { u: Vertex, v: Vertex },
}

/// The transition `a middle c`, stored with `a < c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Transition {
    middle: Vertex,
    a: Vertex,
    c: Vertex,
}

impl Transition {
    /// The transition `a b c`, i.e. edges `ab` and `bc`. `None` if `a == c`.
    pub fn new(a: Vertex, b: Vertex, c: Vertex) -> Option<Self> {
        (a != c).then(|| Transition {
            middle: b,
            a: a.min(c),
            c: a.max(c),
        })
    }

    pub fn middle(&self) -> Vertex {
        self.middle
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.a, self.c)
    }

    /// The three vertices as `[a, middle, c]`.
    pub fn as_triple(&self) -> [Vertex; 3] {
        [self.a, self.middle, self.c]
    }

    /// The two edges, each as `(min, max)`.
    pub fn edges(&self) -> [(Vertex, Vertex); 2] {
        let e = |x: Vertex, y: Vertex| (x.min(y), x.max(y));
        [e(self.a, self.middle), e(self.middle, self.c)]
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.a, self.middle, self.c)
    }
}

/// A set of transitions of some host graph, in canonical order
/// `(middle, a, c)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TransitionSet {
    transitions: BTreeSet<Transition>,
}

impl TransitionSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set from `(a, b, c)` triples, checking each against `g`.
    pub fn from_triples<I>(g: &Graph, triples: I) -> Result<Self, TransitionError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, Vertex)>,
    {
        let mut set = TransitionSet::new();
        for (a, b, c) in triples {
            set.insert_checked(g, a, b, c)?;
        }
        Ok(set)
    }

    pub fn insert_checked(
        &mut self,
        g: &Graph,
        a: Vertex,
        b: Vertex,
        c: Vertex,
    ) -> Result<bool, TransitionError> {
        let n = g.vertex_count();
        if let Some(&v) = [a, b, c].iter().find(|&&v| v >= n) {
            return Err(TransitionError::VertexOutOfRange(v));
        }
        let t = Transition::new(a, b, c).ok_or(TransitionError::Degenerate { a, b, c })?;
        if !g.adjacent(a, b) || !g.adjacent(b, c) {
            return Err(TransitionError::MissingEdge { a, b, c });
        }
        Ok(self.transitions.insert(t))
    }

    /// Inserts without checking the host graph; callers guarantee validity.
    pub(crate) fn insert(&mut self, t: Transition) -> bool {
        self.transitions.insert(t)
    }

    pub fn contains(&self, a: Vertex, b: Vertex, c: Vertex) -> bool {
        Transition::new(a, b, c).is_some_and(|t| self.transitions.contains(&t))
    }

    pub fn len(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transitions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Transition> + '_ {
        self.transitions.iter()
    }

    pub fn is_subset(&self, other: &TransitionSet) -> bool {
        self.transitions.is_subset(&other.transitions)
    }

    pub fn union_with(&mut self, other: &TransitionSet) {
        self.transitions.extend(other.transitions.iter().copied());
    }

    /// Parses the one-transition-per-line format `a b c` (middle `b`).
    pub fn parse(g: &Graph, text: &str) -> Result<Self, TransitionError> {
        let mut set = TransitionSet::new();
        for (line, content) in content_lines(text) {
            let nums: Option<Vec<Vertex>> =
                content.split_whitespace().map(|t| t.parse().ok()).collect();
            let [a, b, c] = nums.as_deref().and_then(|v| <[Vertex; 3]>::try_from(v).ok()).ok_or(
                TransitionError::Malformed { line },
            )?;
            set.insert_checked(g, a, b, c)
                .map_err(|e| TransitionError::InvalidLine {
                    line,
                    source: Box::new(e),
                })?;
        }
        Ok(set)
    }
}

impl FromIterator<Transition> for TransitionSet {
    fn from_iter<I: IntoIterator<Item = Transition>>(iter: I) -> Self {
        TransitionSet {
            transitions: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for TransitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.transitions {
            writeln!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A walk: a non-empty vertex sequence whose consecutive entries are adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk(pub Vec<Vertex>);

impl Walk {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn check(&self, g: &Graph) -> Result<(), TransitionError> {
        let first = *self.0.first().ok_or(TransitionError::EmptyWalk)?;
        if first >= g.vertex_count() {
            return Err(TransitionError::VertexOutOfRange(first));
        }
        for (position, pair) in self.0.windows(2).enumerate() {
            if !g.adjacent(pair[0], pair[1]) {
                return Err(TransitionError::NotAWalk {
                    position,
                    u: pair[0],
                    v: pair[1],
                });
            }
        }
        Ok(())
    }
}

/// Every transition of `g`: `sum_v C(d(v), 2)` of them.
pub fn enumerate_transitions(g: &Graph) -> TransitionSet {
    let mut set = TransitionSet::new();
    for b in 0..g.vertex_count() {
        let nb = g.neighbors(b);
        for (i, &a) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                set.insert(Transition { middle: b, a, c });
            }
        }
    }
    set
}

/// Whether `w` only uses transitions of `t` (turning back is always allowed).
pub fn walk_is_compatible(g: &Graph, t: &TransitionSet, w: &Walk) -> Result<bool, TransitionError> {
    w.check(g)?;
    Ok(w.0
        .windows(3)
        .all(|s| s[0] == s[2] || t.contains(s[0], s[1], s[2])))
}

/// Dense edge numbering aligned with the sorted adjacency lists.
pub(crate) struct EdgeIndex {
    offsets: Vec<usize>,
    ids: Vec<usize>,
    endpoints: Vec<(Vertex, Vertex)>,
}

impl EdgeIndex {
    pub(crate) fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut total = 0;
        for v in 0..n {
            offsets.push(total);
            total += g.degree(v);
        }
        offsets.push(total);
        let endpoints: Vec<(Vertex, Vertex)> = g.edges().collect();
        let mut ids = vec![0; total];
        for (id, &(u, v)) in endpoints.iter().enumerate() {
            let iu = g.neighbors(u).binary_search(&v).unwrap();
            let iv = g.neighbors(v).binary_search(&u).unwrap();
            ids[offsets[u] + iu] = id;
            ids[offsets[v] + iv] = id;
        }
        EdgeIndex {
            offsets,
            ids,
            endpoints,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub(crate) fn id(&self, g: &Graph, u: Vertex, v: Vertex) -> usize {
        let i = g.neighbors(u).binary_search(&v).expect("edge present");
        self.ids[self.offsets[u] + i]
    }

    pub(crate) fn incident(&self, v: Vertex) -> &[usize] {
        &self.ids[self.offsets[v]..self.offsets[v + 1]]
    }

    pub(crate) fn endpoints(&self, id: usize) -> (Vertex, Vertex) {
        self.endpoints[id]
    }
}

/// Groups edges into classes linked by transitions. Returns the index and
/// the class representative of every edge.
fn edge_classes(g: &Graph, t: &TransitionSet) -> (EdgeIndex, Vec<usize>) {
    let index = EdgeIndex::new(g);
    let mut uf = UnionFind::new(index.len());
    for tr in t.iter() {
        let [e1, e2] = tr.edges();
        uf.union(index.id(g, e1.0, e1.1), index.id(g, e2.0, e2.1));
    }
    let reps = (0..index.len()).map(|e| uf.find(e)).collect();
    (index, reps)
}

/// First non-adjacent pair `(u, v)` (lexicographic) with no `t`-compatible
/// walk between them, if any.
pub fn first_unconnected_pair(g: &Graph, t: &TransitionSet) -> Option<(Vertex, Vertex)> {
    let (index, reps) = edge_classes(g, t);
    let classes: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| {
            let mut c: Vec<usize> = index.incident(v).iter().map(|&e| reps[e]).collect();
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect();
    g.non_edges()
        .find(|&(u, v)| !sorted_intersect(&classes[u], &classes[v]))
}

fn sorted_intersect(a: &[usize], b: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

pub fn is_t_connected(g: &Graph, t: &TransitionSet) -> bool {
    first_unconnected_pair(g, t).is_none()
}

/// Result of [`t_reachable`]: the reachable vertices plus enough search
/// state to rebuild a witness walk to each of them.
#[derive(Debug, Clone)]
pub struct Reachability {
    source: Vertex,
    reachable: Vec<Vertex>,
    // for each vertex: an edge reached by the search that contains it
    via_edge: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    endpoints: Vec<(Vertex, Vertex)>,
}

impl Reachability {
    pub fn source(&self) -> Vertex {
        self.source
    }

    /// Reachable vertices in increasing order, including the source.
    pub fn vertices(&self) -> &[Vertex] {
        &self.reachable
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.reachable.binary_search(&v).is_ok()
    }

    /// A compatible walk from the source to `target`, if one exists.
    pub fn witness(&self, target: Vertex) -> Option<Walk> {
        if target == self.source {
            return Some(Walk(vec![target]));
        }
        let last = self.via_edge.get(target).copied().flatten()?;
        let mut chain = vec![last];
        while let Some(p) = self.parent_edge[*chain.last().unwrap()] {
            chain.push(p);
        }
        chain.reverse();

        let other = |e: usize, x: Vertex| {
            let (p, q) = self.endpoints[e];
            if p == x {
                q
            } else {
                p
            }
        };
        let shared = |e: usize, f: usize| {
            let (p, q) = self.endpoints[e];
            let (r, s) = self.endpoints[f];
            if p == r || p == s {
                p
            } else {
                q
            }
        };
        let mut walk = vec![self.source];
        let mut cur = self.source;
        for (i, &e) in chain.iter().enumerate() {
            // Cross e, then turn back if the next junction is where we started.
            let next = other(e, cur);
            walk.push(next);
            let goal = match chain.get(i + 1) {
                Some(&f) => shared(e, f),
                None => target,
            };
            if next != goal {
                walk.push(cur);
            } else {
                cur = next;
            }
        }
        Some(Walk(walk))
    }
}

/// All vertices reachable from `source` by a `t`-compatible walk.
pub fn t_reachable(g: &Graph, t: &TransitionSet, source: Vertex) -> Reachability {
    let index = EdgeIndex::new(g);
    let mut linked: Vec<Vec<usize>> = vec![Vec::new(); index.len()];
    for tr in t.iter() {
        let [e1, e2] = tr.edges();
        let (i, j) = (index.id(g, e1.0, e1.1), index.id(g, e2.0, e2.1));
        linked[i].push(j);
        linked[j].push(i);
    }
    let mut parent_edge = vec![None; index.len()];
    let mut seen = vec![false; index.len()];
    let mut via_edge = vec![None; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &e in index.incident(source) {
        seen[e] = true;
        queue.push_back(e);
    }
    while let Some(e) = queue.pop_front() {
        let (p, q) = index.endpoints(e);
        for v in [p, q] {
            via_edge[v].get_or_insert(e);
        }
        for &f in &linked[e] {
            if !seen[f] {
                seen[f] = true;
                parent_edge[f] = Some(e);
                queue.push_back(f);
            }
        }
    }
    via_edge[source] = None;
    let reachable = (0..g.vertex_count())
        .filter(|&v| v == source || via_edge[v].is_some())
        .collect();
    Reachability {
        source,
        reachable,
        via_edge,
        parent_edge,
        endpoints: index.endpoints.clone(),
    }
}

/// Naive reference check: breadth-first search over (vertex, entering edge)
/// states for every source. Kept independent of the edge-class argument.
pub fn oracle_is_t_connected(g: &Graph, t: &TransitionSet) -> bool {
    let n = g.vertex_count();
    for s in 0..n {
        // state (v, Some(u)) = at v having arrived from u; None = at start
        let mut seen = std::collections::HashSet::new();
        let mut reached = vec![false; n];
        let mut queue = VecDeque::from([(s, None::<Vertex>)]);
        seen.insert((s, None));
        while let Some((v, from)) = queue.pop_front() {
            reached[v] = true;
            for &w in g.neighbors(v) {
                let allowed = match from {
                    None => true,
                    Some(u) => w == u || t.contains(u, v, w),
                };
                if allowed && seen.insert((w, Some(v))) {
                    queue.push_back((w, Some(v)));
                }
            }
        }
        if reached.iter().any(|&r| !r) {
            return false;
        }
    }
    true
}

/// Connecting hypergraph of cost at most `|t|`: one hyperedge per class of
/// transitions linked through shared edges, holding every vertex those
/// transitions touch.
pub fn transitions_to_hypergraph(g: &Graph, t: &TransitionSet) -> Result<Hypergraph, TransitionError> {
    if let Some((u, v)) = first_unconnected_pair(g, t) {
        return Err(TransitionError::NotConnecting { u, v });
    }
    let list: Vec<Transition> = t.iter().copied().collect();
    let index = EdgeIndex::new(g);
    let mut by_edge: Vec<Option<usize>> = vec![None; index.len()];
    let mut uf = UnionFind::new(list.len());
    for (i, tr) in list.iter().enumerate() {
        for (u, v) in tr.edges() {
            let e = index.id(g, u, v);
            match by_edge[e] {
                Some(j) => {
                    uf.union(i, j);
                }
                None => by_edge[e] = Some(i),
            }
        }
    }
    let mut classes: std::collections::BTreeMap<usize, BTreeSet<Vertex>> = Default::default();
    for (i, tr) in list.iter().enumerate() {
        classes.entry(uf.find(i)).or_default().extend(tr.as_triple());
    }
    Ok(Hypergraph::new(
        classes.into_values().map(|s| s.into_iter().collect()),
    ))
}
