//! Exact minimum-cost hyperedge cover.
//!
//! Given a host graph, a set of required vertex pairs and an admissibility
//! rule, find hyperedges of total cost `sum(|E| - 2)` as small as possible
//! such that every required pair lies inside some hyperedge. Hyperedges must
//! stay inside a candidate universe and may not contain a forbidden pair.
//!
//! The search enumerates a reduced family of candidate hyperedges and runs a
//! branch and bound over it:
//!
//! * In connected mode the candidates are the connected vertex sets.
//! * In co-connected mode with only edges to cover, a hyperedge `H` whose
//!   induced subgraph has components `D_1..D_k` (k >= 2) can be replaced by
//!   the sets `D_i + w_i` with `w_i` taken from another component, at cost
//!   `|H| - k` in total. So candidates are connected sets `D`, costing
//!   `|D| - 2` when `G[D]` is co-connected and `|D| - 1` when some vertex
//!   outside `D` is non-adjacent to all of it.
//! * Otherwise every vertex subset is considered (small universes only).
//!
//! A candidate is dropped when removing one vertex keeps its coverage and
//! does not raise its cost, or when it splits at a cut vertex into two
//! strictly cheaper pieces that still cover the same pairs. During the
//! search two chosen candidates may not overlap in two or more vertices when
//! their union would be admissible and no more expensive than both; some
//! optimum avoids such pairs.

use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::unionfind::UnionFind;

const MAX_UNIVERSE: usize = 64;
const MAX_PAIRS: usize = 128;
/// Universe size limit when every subset, connected or not, is a candidate.
const MAX_SUBSET_UNIVERSE: usize = 24;
/// Above this many candidates the pairwise merge table is not built.
const MAX_MERGE_TABLE: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Admissibility {
    /// Hyperedges induce connected subgraphs.
    Connected,
    /// Hyperedges induce co-connected subgraphs.
    CoConnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("candidate universe has {vertices} vertices, at most {MAX_UNIVERSE} supported")]
    TooLarge { vertices: usize },
    #[error("{pairs} required pairs, at most {MAX_PAIRS} supported")]
    TooManyPairs { pairs: usize },
    #[error("invalid cover instance: {0}")]
    InvalidInstance(String),
    #[error("some required pair cannot be covered by any admissible hyperedge")]
    Infeasible,
    #[error("no cover of cost at most {bound} exists")]
    ExceedsUpperBound { bound: usize },
    #[error("node budget exhausted after {nodes} nodes{}", best.as_ref().map(|b| format!(", best cost found {}", b.cost)).unwrap_or_default())]
    BudgetExhausted {
        best: Option<Box<CoverSolution>>,
        nodes: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    pub cost: usize,
    /// Sorted hyperedges, each a sorted vertex list.
    pub hyperedges: Vec<Vec<Vertex>>,
    /// Search nodes (and enumeration steps) spent.
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverOptions {
    /// Cap on enumeration steps plus search nodes; `None` is unlimited.
    pub node_budget: Option<u64>,
    /// Explore the root branches on the rayon thread pool.
    pub parallel: bool,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            node_budget: None,
            parallel: true,
        }
    }
}

impl CoverOptions {
    pub fn with_budget(nodes: u64) -> Self {
        CoverOptions {
            node_budget: Some(nodes),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct CoverInstance {
    host: Graph,
    mode: Admissibility,
    required: Vec<(Vertex, Vertex)>,
    forbidden: Vec<(Vertex, Vertex)>,
    universe: Vec<Vertex>,
    also_connected: bool,
    upper_bound: Option<usize>,
}

fn normalise_pairs(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Vec<(Vertex, Vertex)> {
    let mut v: Vec<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl CoverInstance {
    pub fn new(
        host: Graph,
        mode: Admissibility,
        required: impl IntoIterator<Item = (Vertex, Vertex)>,
        forbidden: impl IntoIterator<Item = (Vertex, Vertex)>,
        universe: impl IntoIterator<Item = Vertex>,
    ) -> Result<Self, CoverError> {
        let required = normalise_pairs(required);
        let forbidden = normalise_pairs(forbidden);
        let mut universe: Vec<Vertex> = universe.into_iter().collect();
        universe.sort_unstable();
        universe.dedup();
        let n = host.vertex_count();
        let bad = |msg: String| Err(CoverError::InvalidInstance(msg));
        if let Some(&v) = universe.iter().find(|&&v| v >= n) {
            return bad(format!("universe vertex {v} out of range"));
        }
        for &(a, b) in required.iter().chain(&forbidden) {
            if a == b {
                return bad(format!("pair ({a}, {b}) repeats a vertex"));
            }
            if b >= n {
                return bad(format!("pair ({a}, {b}) out of range"));
            }
        }
        for &(a, b) in &required {
            if universe.binary_search(&a).is_err() || universe.binary_search(&b).is_err() {
                return bad(format!("required pair ({a}, {b}) leaves the universe"));
            }
            if forbidden.binary_search(&(a, b)).is_ok() {
                return bad(format!("pair ({a}, {b}) is both required and forbidden"));
            }
        }
        Ok(CoverInstance {
            host,
            mode,
            required,
            forbidden,
            universe,
            also_connected: false,
            upper_bound: None,
        })
    }

    /// Connecting hypergraph problem: cover all non-edges with connected sets.
    pub fn connecting(g: &Graph) -> Self {
        Self::new(
            g.clone(),
            Admissibility::Connected,
            g.non_edges(),
            [],
            0..g.vertex_count(),
        )
        .expect("non-edges form a valid instance")
    }

    /// Co-connecting hypergraph problem: cover all edges with co-connected sets.
    pub fn co_connecting(g: &Graph) -> Self {
        Self::new(
            g.clone(),
            Admissibility::CoConnected,
            g.edges(),
            [],
            0..g.vertex_count(),
        )
        .expect("edges form a valid instance")
    }

    pub fn with_upper_bound(mut self, bound: usize) -> Self {
        self.upper_bound = Some(bound);
        self
    }

    /// In co-connected mode, additionally require hyperedges to induce
    /// connected subgraphs.
    pub fn require_connected(mut self, on: bool) -> Self {
        self.also_connected = on;
        self
    }

    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn mode(&self) -> Admissibility {
        self.mode
    }

    pub fn required_pairs(&self) -> &[(Vertex, Vertex)] {
        &self.required
    }

    pub fn forbidden_pairs(&self) -> &[(Vertex, Vertex)] {
        &self.forbidden
    }

    pub fn universe(&self) -> &[Vertex] {
        &self.universe
    }

    /// Whether `set` may be used as a hyperedge.
    pub fn is_admissible(&self, set: &[Vertex]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.len() < 2 || s.iter().any(|v| self.universe.binary_search(v).is_err()) {
            return false;
        }
        let forbidden = s.iter().enumerate().any(|(i, &a)| {
            s[i + 1..]
                .iter()
                .any(|&b| self.forbidden.binary_search(&(a, b)).is_ok())
        });
        if forbidden {
            return false;
        }
        match self.mode {
            Admissibility::Connected => self.host.induced_is_connected(&s),
            Admissibility::CoConnected => {
                self.host.induced_is_co_connected(&s)
                    && (!self.also_connected || self.host.induced_is_connected(&s))
            }
        }
    }

    /// Whether `hyperedges` are admissible and cover every required pair.
    pub fn is_cover(&self, hyperedges: &[Vec<Vertex>]) -> bool {
        hyperedges.iter().all(|e| self.is_admissible(e))
            && self.required.iter().all(|&(a, b)| {
                hyperedges
                    .iter()
                    .any(|e| e.contains(&a) && e.contains(&b))
            })
    }
}

/// Minimum-cost cover of `instance`. Exact whenever it returns `Ok`.
pub fn min_cost_cover(instance: &CoverInstance, options: CoverOptions) -> Result<CoverSolution, CoverError> {
    let local = Local::new(instance)?;
    let budget = Budget::new(options.node_budget);
    let cands = local.candidates(&budget);
    if budget.aborted() {
        return Err(CoverError::BudgetExhausted {
            best: None,
            nodes: budget.used(),
        });
    }
    let all_pairs = local.all_pairs();
    let reachable = cands.iter().fold(0u128, |m, c| m | c.cover);
    if reachable != all_pairs {
        return Err(CoverError::Infeasible);
    }
    let search = Search::new(&local, cands, &budget);
    let greedy = search.greedy(all_pairs);
    let greedy_cost: u32 = greedy.iter().map(|&i| search.cands[i as usize].cost).sum();

    let mut cap = greedy_cost;
    if let Some(ub) = instance.upper_bound {
        cap = cap.min(u32::try_from(ub).unwrap_or(u32::MAX).saturating_add(1));
    }
    let found = search.root(all_pairs, cap, options.parallel);
    let best = match found {
        Some(sol) => Some(sol),
        None if instance.upper_bound.is_none_or(|ub| greedy_cost as usize <= ub) => {
            Some((greedy_cost, greedy))
        }
        None => None,
    };
    if budget.aborted() {
        let best = best.map(|(c, s)| Box::new(search.materialise(c, &s, budget.used())));
        return Err(CoverError::BudgetExhausted {
            best,
            nodes: budget.used(),
        });
    }
    match best {
        Some((c, s)) => Ok(search.materialise(c, &s, budget.used())),
        None => Err(CoverError::ExceedsUpperBound {
            bound: instance.upper_bound.unwrap_or(0),
        }),
    }
}

struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
    aborted: AtomicBool,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
        }
    }

    /// Charges `n` steps; false once the budget is gone.
    fn charge(&self, n: u64) -> bool {
        let total = self.used.fetch_add(n, Ordering::Relaxed) + n;
        if self.limit.is_some_and(|l| total > l) {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted()
    }

    fn aborted(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }

    fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    /// Connected sets at cost `|D| - 2`.
    Connected,
    /// Connected sets, co-connected ones at `|D| - 2`, others at `|D| - 1`
    /// via an extra vertex outside the set.
    ConnectedWithWitness,
    /// Connected and co-connected sets at `|D| - 2`.
    ConnectedAndCoConnected,
    /// Arbitrary co-connected sets at `|D| - 2`.
    AnyCoConnected,
}

/// The instance restricted to its universe, with bit-mask adjacency.
struct Local {
    verts: Vec<Vertex>,
    adj: Vec<u64>,
    forb: Vec<u64>,
    req_adj: Vec<u64>,
    // (partner, pair bit) for partners above the vertex
    req_by_vertex: Vec<Vec<(u32, u32)>>,
    pair_count: usize,
    full: u64,
    shape: Shape,
}

impl Local {
    fn new(inst: &CoverInstance) -> Result<Self, CoverError> {
        let k = inst.universe.len();
        if k > MAX_UNIVERSE {
            return Err(CoverError::TooLarge { vertices: k });
        }
        if inst.required.len() > MAX_PAIRS {
            return Err(CoverError::TooManyPairs {
                pairs: inst.required.len(),
            });
        }
        let pos = |v: Vertex| inst.universe.binary_search(&v).ok();
        let mut adj = vec![0u64; k];
        for (i, &v) in inst.universe.iter().enumerate() {
            for &w in inst.host.neighbors(v) {
                if let Some(j) = pos(w) {
                    adj[i] |= 1 << j;
                }
            }
        }
        let mut forb = vec![0u64; k];
        for &(a, b) in &inst.forbidden {
            if let (Some(i), Some(j)) = (pos(a), pos(b)) {
                forb[i] |= 1 << j;
                forb[j] |= 1 << i;
            }
        }
        let mut req_adj = vec![0u64; k];
        let mut req_by_vertex = vec![Vec::new(); k];
        for (bit, &(a, b)) in inst.required.iter().enumerate() {
            let (i, j) = (pos(a).unwrap(), pos(b).unwrap());
            req_adj[i] |= 1 << j;
            req_adj[j] |= 1 << i;
            req_by_vertex[i.min(j)].push((i.max(j) as u32, bit as u32));
        }
        let edges_only = inst.required.iter().all(|&(a, b)| inst.host.adjacent(a, b));
        let shape = match inst.mode {
            Admissibility::Connected => Shape::Connected,
            Admissibility::CoConnected if edges_only && inst.also_connected => {
                Shape::ConnectedAndCoConnected
            }
            Admissibility::CoConnected if edges_only => Shape::ConnectedWithWitness,
            Admissibility::CoConnected => {
                if k > MAX_SUBSET_UNIVERSE {
                    return Err(CoverError::TooLarge { vertices: k });
                }
                Shape::AnyCoConnected
            }
        };
        Ok(Local {
            verts: inst.universe.clone(),
            adj,
            forb,
            req_adj,
            req_by_vertex,
            pair_count: inst.required.len(),
            full: if k == 64 { u64::MAX } else { (1u64 << k) - 1 },
            shape,
        })
    }

    fn all_pairs(&self) -> u128 {
        if self.pair_count == 128 {
            u128::MAX
        } else {
            (1u128 << self.pair_count) - 1
        }
    }

    fn coverage(&self, d: u64) -> u128 {
        let mut cov = 0u128;
        for v in bits(d) {
            if self.req_adj[v] & d == 0 {
                continue;
            }
            for &(b, bit) in &self.req_by_vertex[v] {
                if d >> b & 1 == 1 {
                    cov |= 1 << bit;
                }
            }
        }
        cov
    }

    fn neighbourhood(&self, d: u64) -> u64 {
        bits(d).fold(0, |m, v| m | self.adj[v])
    }

    fn has_forbidden(&self, d: u64) -> bool {
        bits(d).any(|v| self.forb[v] & d != 0)
    }

    fn connected(&self, d: u64) -> bool {
        self.spread(d, false) == d
    }

    fn co_connected(&self, d: u64) -> bool {
        self.spread(d, true) == d
    }

    /// Vertices of `d` reachable from its lowest member, in `G[d]` or in
    /// its complement.
    fn spread(&self, d: u64, complement: bool) -> u64 {
        if d == 0 {
            return 0;
        }
        let mut reached = d & d.wrapping_neg();
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= if complement { !self.adj[v] } else { self.adj[v] };
            }
            next &= d & !reached;
            reached |= next;
            frontier = next;
        }
        reached
    }

    /// Extra vertex making a connected, non-co-connected `d` co-connected.
    fn witness(&self, d: u64) -> Option<usize> {
        let blocked = bits(d).fold(d | self.neighbourhood(d), |m, v| m | self.forb[v]);
        let free = self.full & !blocked;
        (free != 0).then(|| free.trailing_zeros() as usize)
    }

    /// Cost of `d` as a candidate, `None` if it is not one.
    fn cost(&self, d: u64) -> Option<u32> {
        let size = d.count_ones();
        if size < 2 || self.has_forbidden(d) {
            return None;
        }
        match self.shape {
            Shape::Connected => self.connected(d).then_some(size - 2),
            Shape::ConnectedAndCoConnected => {
                (self.connected(d) && self.co_connected(d)).then_some(size - 2)
            }
            Shape::AnyCoConnected => self.co_connected(d).then_some(size - 2),
            Shape::ConnectedWithWitness => {
                if !self.connected(d) {
                    None
                } else if self.co_connected(d) {
                    Some(size - 2)
                } else {
                    self.witness(d).map(|_| size - 1)
                }
            }
        }
    }

    fn enumerates_connected(&self) -> bool {
        self.shape != Shape::AnyCoConnected
    }

    fn candidates(&self, budget: &Budget) -> Vec<Cand> {
        let k = self.verts.len();
        let mut out: Vec<Cand> = (0..k)
            .into_par_iter()
            .flat_map_iter(|root| {
                let mut found = Vec::new();
                let mut ticks = 0u64;
                let mut emit = |d: u64| -> bool {
                    ticks += 1;
                    if ticks == 4096 {
                        ticks = 0;
                        if !budget.charge(4096) {
                            return false;
                        }
                    }
                    if let Some(c) = self.keep(d) {
                        found.push(c);
                    }
                    true
                };
                if self.enumerates_connected() {
                    let above = !((1u64 << root) | ((1u64 << root) - 1));
                    self.esu(
                        1 << root,
                        self.adj[root] & above,
                        self.adj[root] | 1 << root,
                        above,
                        self.forb[root],
                        &mut emit,
                    );
                } else {
                    self.subsets(1 << root, root + 1, self.forb[root], &mut emit);
                }
                budget.charge(ticks);
                found
            })
            .collect();
        out.sort_unstable_by_key(|c| c.verts);
        out
    }

    /// Connected-subset enumeration (each set once, rooted at its lowest
    /// member); sets with a forbidden pair are never extended.
    fn esu(
        &self,
        sub: u64,
        mut ext: u64,
        closed: u64,
        above: u64,
        forb: u64,
        emit: &mut impl FnMut(u64) -> bool,
    ) -> bool {
        if !emit(sub) {
            return false;
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            if forb >> w & 1 == 1 {
                continue;
            }
            let exclusive = self.adj[w] & !closed & above;
            if !self.esu(
                sub | 1 << w,
                ext | exclusive,
                closed | self.adj[w],
                above,
                forb | self.forb[w],
                emit,
            ) {
                return false;
            }
        }
        true
    }

    fn subsets(&self, sub: u64, from: usize, forb: u64, emit: &mut impl FnMut(u64) -> bool) -> bool {
        if !emit(sub) {
            return false;
        }
        for w in from..self.verts.len() {
            if forb >> w & 1 == 0 && !self.subsets(sub | 1 << w, w + 1, forb | self.forb[w], emit) {
                return false;
            }
        }
        true
    }

    /// Applies the candidate filters to an enumerated set.
    fn keep(&self, d: u64) -> Option<Cand> {
        let cover = self.coverage(d);
        if cover == 0 {
            return None;
        }
        let cost = self.cost(d)?;
        // a vertex with no required partner inside d can go if that is no dearer
        for y in bits(d) {
            if self.req_adj[y] & d == 0 && self.cost(d & !(1 << y)).is_some_and(|c| c <= cost) {
                return None;
            }
        }
        if self.enumerates_connected() && cost > 0 && self.splits_cheaper(d, cost) {
            return None;
        }
        Some(Cand { verts: d, cover, cost })
    }

    /// Whether `d` falls apart at a cut vertex into two strictly cheaper
    /// candidates without losing a required pair.
    fn splits_cheaper(&self, d: u64, cost: u32) -> bool {
        for x in bits(d) {
            let rest = d & !(1 << x);
            if self.adj[x] & d & (self.adj[x] & d).wrapping_sub(1) == 0 || self.connected(rest) {
                // degree one in G[d], or not a cut vertex
                continue;
            }
            let mut comps = Vec::new();
            let mut left = rest;
            while left != 0 {
                let c = self.spread(left, false);
                comps.push(c);
                left &= !c;
            }
            let mut uf = UnionFind::new(comps.len());
            for (i, &ci) in comps.iter().enumerate() {
                let partners = bits(ci).fold(0, |m, v| m | self.req_adj[v]);
                for (j, &cj) in comps.iter().enumerate().skip(i + 1) {
                    if partners & cj != 0 {
                        uf.union(i, j);
                    }
                }
            }
            for i in 0..comps.len() {
                let group = (0..comps.len())
                    .filter(|&j| uf.same(i, j))
                    .fold(0, |m, j| m | comps[j]);
                if group == rest {
                    break;
                }
                if uf.find(i) != i {
                    continue;
                }
                let (d1, d2) = (group | 1 << x, d & !group);
                if let (Some(c1), Some(c2)) = (self.cost(d1), self.cost(d2)) {
                    if c1 + c2 < cost {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Whether `a` and `b` should never be chosen together: their union is
    /// a candidate-shaped set no dearer than the two of them.
    fn mergeable(&self, a: &Cand, b: &Cand) -> bool {
        if (a.verts & b.verts).count_ones() < 2 {
            return false;
        }
        self.cost(a.verts | b.verts)
            .is_some_and(|c| c <= a.cost + b.cost)
    }

    fn hyperedge(&self, c: &Cand) -> Vec<Vertex> {
        let mut set = c.verts;
        if self.shape == Shape::ConnectedWithWitness && c.cost + 1 == c.verts.count_ones() {
            set |= 1 << self.witness(c.verts).expect("candidate has a witness");
        }
        bits(set).map(|i| self.verts[i]).collect()
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

fn pair_bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

#[derive(Debug, Clone, Copy)]
struct Cand {
    verts: u64,
    cover: u128,
    cost: u32,
}

type Partial = (u32, Vec<u32>);

struct Search<'a> {
    local: &'a Local,
    cands: Vec<Cand>,
    // row i, bit j: candidates i and j may not both be chosen
    merge: Option<Vec<Vec<u64>>>,
    budget: &'a Budget,
}

/// Best total found so far by any root branch, shared across threads.
struct Shared<'s> {
    best: &'s AtomicU32,
    spent: u32,
}

impl<'a> Search<'a> {
    fn new(local: &'a Local, cands: Vec<Cand>, budget: &'a Budget) -> Self {
        let merge = (cands.len() <= MAX_MERGE_TABLE).then(|| {
            let words = cands.len().div_ceil(64);
            (0..cands.len())
                .into_par_iter()
                .map(|i| {
                    let mut row = vec![0u64; words];
                    for (j, other) in cands.iter().enumerate() {
                        if i != j && local.mergeable(&cands[i], other) {
                            row[j / 64] |= 1 << (j % 64);
                        }
                    }
                    row
                })
                .collect()
        });
        Search {
            local,
            cands,
            merge,
            budget,
        }
    }

    fn clashes(&self, i: u32, j: u32) -> bool {
        self.merge
            .as_ref()
            .is_some_and(|m| m[i as usize][j as usize / 64] >> (j % 64) & 1 == 1)
    }

    fn price(&self, i: u32, uncovered: u128) -> f64 {
        let c = &self.cands[i as usize];
        c.cost as f64 / (c.cover & uncovered).count_ones() as f64
    }

    /// Repeatedly takes the cheapest candidate per newly covered pair.
    fn greedy(&self, mut uncovered: u128) -> Vec<u32> {
        let mut chosen = Vec::new();
        while uncovered != 0 {
            let best = (0..self.cands.len() as u32)
                .filter(|&i| self.cands[i as usize].cover & uncovered != 0)
                .min_by(|&a, &b| {
                    let (pa, pb) = (self.price(a, uncovered), self.price(b, uncovered));
                    pa.total_cmp(&pb).then_with(|| {
                        let ka = (self.cands[a as usize].cover & uncovered).count_ones();
                        let kb = (self.cands[b as usize].cover & uncovered).count_ones();
                        kb.cmp(&ka)
                    })
                })
                .expect("every pair has a candidate");
            uncovered &= !self.cands[best as usize].cover;
            chosen.push(best);
        }
        chosen
    }

    fn root(&self, all: u128, cap: u32, parallel: bool) -> Option<Partial> {
        let alive: Vec<u32> = (0..self.cands.len() as u32).collect();
        if !parallel {
            return self.search(&alive, all, cap, None);
        }
        let best = AtomicU32::new(cap);
        let shared = Shared {
            best: &best,
            spent: 0,
        };
        let stats = match self.node(&alive, all, cap, Some(&shared)) {
            Node::Done(result) => return result,
            Node::Branch(stats) => stats,
        };
        let branches = self.branches(&alive, all, &stats);
        let winner: Mutex<Option<Partial>> = Mutex::new(None);
        branches.par_iter().enumerate().for_each(|(k, &(c, _))| {
            let cand = self.cands[c as usize];
            let cur = best.load(Ordering::Relaxed);
            if cand.cost >= cur {
                return;
            }
            let next = self.child(&alive, all, &branches[..k], c);
            let sub = Shared {
                best: &best,
                spent: cand.cost,
            };
            if let Some((v, mut sol)) = self.search(&next, all & !cand.cover, cur - cand.cost, Some(&sub)) {
                sol.push(c);
                let total = v + cand.cost;
                best.fetch_min(total, Ordering::Relaxed);
                let mut w = winner.lock().unwrap();
                if w.as_ref().is_none_or(|(b, _)| total < *b) {
                    *w = Some((total, sol));
                }
            }
        });
        winner.into_inner().unwrap()
    }

    /// Candidates covering the branching pair, most efficient first, each
    /// with its price.
    fn branches(&self, alive: &[u32], uncovered: u128, stats: &Stats) -> Vec<(u32, f64)> {
        let pair = stats.branch_pair;
        let mut list: Vec<(u32, f64)> = alive
            .iter()
            .copied()
            .filter(|&i| self.cands[i as usize].cover >> pair & 1 == 1)
            .map(|i| (i, self.price(i, uncovered)))
            .collect();
        list.sort_by(|a, b| {
            a.1.total_cmp(&b.1).then_with(|| {
                let ka = (self.cands[a.0 as usize].cover & uncovered).count_ones();
                let kb = (self.cands[b.0 as usize].cover & uncovered).count_ones();
                kb.cmp(&ka).then(a.0.cmp(&b.0))
            })
        });
        list
    }

    /// Alive set after choosing `c`, with the earlier siblings excluded.
    fn child(&self, alive: &[u32], uncovered: u128, earlier: &[(u32, f64)], c: u32) -> Vec<u32> {
        let left = uncovered & !self.cands[c as usize].cover;
        let mut excluded: Vec<u32> = earlier.iter().map(|&(i, _)| i).collect();
        excluded.sort_unstable();
        alive
            .iter()
            .copied()
            .filter(|&d| {
                d != c
                    && self.cands[d as usize].cover & left != 0
                    && excluded.binary_search(&d).is_err()
                    && !self.clashes(c, d)
            })
            .collect()
    }

    /// Minimum-cost cover of `uncovered` from `alive`, if one costs less
    /// than `cap`.
    fn search(&self, alive: &[u32], uncovered: u128, cap: u32, shared: Option<&Shared>) -> Option<Partial> {
        let stats = match self.node(alive, uncovered, cap, shared) {
            Node::Done(result) => return result,
            Node::Branch(stats) => stats,
        };
        let mut cap = stats.cap;
        let mut best = None;
        let branches = self.branches(alive, uncovered, &stats);
        for (k, &(c, _)) in branches.iter().enumerate() {
            let cand = self.cands[c as usize];
            if let Some(s) = shared {
                cap = cap.min(s.best.load(Ordering::Relaxed).saturating_sub(s.spent));
            }
            if cand.cost >= cap {
                continue;
            }
            let next = self.child(alive, uncovered, &branches[..k], c);
            let sub = shared.map(|s| Shared {
                best: s.best,
                spent: s.spent + cand.cost,
            });
            if let Some((v, mut sol)) = self.search(&next, uncovered & !cand.cover, cap - cand.cost, sub.as_ref()) {
                sol.push(c);
                cap = v + cand.cost;
                best = Some((cap, sol));
                if let Some(s) = shared {
                    s.best.fetch_min(s.spent + cap, Ordering::Relaxed);
                }
            }
            if self.budget.aborted() {
                break;
            }
        }
        best
    }

    /// Bounds a node and either settles it or returns branching data.
    fn node(&self, alive: &[u32], uncovered: u128, cap: u32, shared: Option<&Shared>) -> Node {
        let mut cap = cap;
        if let Some(s) = shared {
            cap = cap.min(s.best.load(Ordering::Relaxed).saturating_sub(s.spent));
        }
        if cap == 0 || !self.budget.charge(1) {
            return Node::Done(None);
        }
        if uncovered == 0 {
            return Node::Done(Some((0, Vec::new())));
        }
        let mut count = [0u32; MAX_PAIRS];
        let mut min_price = [f64::INFINITY; MAX_PAIRS];
        let mut uf = UnionFind::new(MAX_PAIRS);
        for &i in alive {
            let cov = self.cands[i as usize].cover & uncovered;
            let p = self.price(i, uncovered);
            let first = cov.trailing_zeros() as usize;
            for b in pair_bits(cov) {
                count[b] += 1;
                min_price[b] = min_price[b].min(p);
                uf.union(first, b);
            }
        }
        let mut groups: Vec<(usize, u128, f64)> = Vec::new();
        for b in pair_bits(uncovered) {
            if count[b] == 0 {
                return Node::Done(None);
            }
            let r = uf.find(b);
            match groups.iter_mut().find(|g| g.0 == r) {
                Some(g) => {
                    g.1 |= 1 << b;
                    g.2 += min_price[b];
                }
                None => groups.push((r, 1 << b, min_price[b])),
            }
        }
        let bounds: Vec<u32> = groups
            .iter()
            .map(|g| (g.2 - 1e-6).ceil().max(0.0) as u32)
            .collect();
        let lb: u32 = bounds.iter().sum();
        if lb >= cap {
            return Node::Done(None);
        }
        if groups.len() > 1 {
            return Node::Done(self.split(alive, &groups, &bounds, cap));
        }
        let branch_pair = pair_bits(uncovered)
            .min_by_key(|&b| (count[b], b))
            .expect("uncovered is non-empty");
        Node::Branch(Stats { cap, branch_pair })
    }

    /// Solves independent groups of pairs one after another.
    fn split(&self, alive: &[u32], groups: &[(usize, u128, f64)], bounds: &[u32], cap: u32) -> Option<Partial> {
        let mut order: Vec<usize> = (0..groups.len()).collect();
        // smallest groups first: cheap to settle, and they tighten the rest
        order.sort_by_key(|&g| groups[g].1.count_ones());
        let mut committed = 0u32;
        let mut pending: u32 = bounds.iter().sum();
        let mut sol = Vec::new();
        for g in order {
            pending -= bounds[g];
            let mask = groups[g].1;
            let sub: Vec<u32> = alive
                .iter()
                .copied()
                .filter(|&i| self.cands[i as usize].cover & mask != 0)
                .collect();
            let room = cap.checked_sub(committed + pending)?;
            let (v, part) = self.search(&sub, mask, room, None)?;
            committed += v;
            sol.extend(part);
        }
        Some((committed, sol))
    }

    fn materialise(&self, cost: u32, chosen: &[u32], nodes: u64) -> CoverSolution {
        let mut hyperedges: Vec<Vec<Vertex>> = chosen
            .iter()
            .map(|&i| self.local.hyperedge(&self.cands[i as usize]))
            .collect();
        hyperedges.sort();
        hyperedges.dedup();
        CoverSolution {
            cost: cost as usize,
            hyperedges,
            nodes,
        }
    }
}

struct Stats {
    cap: u32,
    branch_pair: usize,
}

enum Node {
    Done(Option<Partial>),
    Branch(Stats),
}
