use crate::graph::Graph;
use crate::transitions::{enumerate_transitions, EdgeIndex, Transition, TransitionSet};
use crate::unionfind::UnionFind;

use super::SolverError;

/// Connectivity test specialised for repeated queries on one graph with at
/// most 64 edges.
struct MaskChecker {
    edge_count: usize,
    incident: Vec<u64>,
    non_edges: Vec<(usize, usize)>,
}

impl MaskChecker {
    fn new(g: &Graph, index: &EdgeIndex) -> Self {
        let incident = (0..g.vertex_count())
            .map(|v| index.incident(v).iter().fold(0u64, |m, &e| m | 1 << e))
            .collect();
        MaskChecker {
            edge_count: index.len(),
            incident,
            non_edges: g.non_edges().collect(),
        }
    }

    fn connects(&self, pairs: &[(usize, usize)]) -> bool {
        let mut uf = UnionFind::new(self.edge_count);
        for &(e, f) in pairs {
            uf.union(e, f);
        }
        let mut class = vec![0u64; self.edge_count];
        for e in 0..self.edge_count {
            class[uf.find(e)] |= 1 << e;
        }
        self.non_edges.iter().all(|&(u, v)| {
            let mut reach = 0u64;
            let mut inc = self.incident[u];
            while inc != 0 {
                let e = inc.trailing_zeros() as usize;
                inc &= inc - 1;
                reach |= class[uf.find(e)];
            }
            reach & self.incident[v] != 0
        })
    }
}

/// Smallest connecting transition set, by trying every subset of the
/// graph's transitions in order of size. `limit` caps the number of subsets
/// examined.
pub fn exact_min_transitions(g: &Graph, limit: u64) -> Result<TransitionSet, SolverError> {
    if !g.is_connected() {
        return Err(SolverError::Disconnected);
    }
    let all: Vec<Transition> = enumerate_transitions(g).iter().copied().collect();
    let index = EdgeIndex::new(g);
    let pairs: Vec<(usize, usize)> = all
        .iter()
        .map(|t| {
            let [a, b] = t.edges();
            (index.id(g, a.0, a.1), index.id(g, b.0, b.1))
        })
        .collect();
    let fast = (index.len() <= 64).then(|| MaskChecker::new(g, &index));
    let connects = |chosen: &[usize]| -> bool {
        match &fast {
            Some(checker) => {
                let sel: Vec<(usize, usize)> = chosen.iter().map(|&i| pairs[i]).collect();
                checker.connects(&sel)
            }
            None => {
                let t: TransitionSet = chosen.iter().map(|&i| all[i]).collect();
                crate::transitions::is_t_connected(g, &t)
            }
        }
    };

    let mut checked = 0u64;
    for k in 0..=all.len() {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            checked += 1;
            if checked > limit {
                return Err(SolverError::LimitExceeded { limit });
            }
            if connects(&idx) {
                return Ok(idx.iter().map(|&i| all[i]).collect());
            }
            // next k-combination in lexicographic order
            let Some(pos) = (0..k).rev().find(|&i| idx[i] < all.len() - k + i) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    unreachable!("the full transition set always connects a connected graph")
}
