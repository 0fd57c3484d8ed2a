#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use transitset::transitions::{enumerate_transitions, is_t_connected};
use transitset::{Graph, Hypergraph, TransitionSet, Vertex};

/// Random connected graph: a random attachment tree plus each remaining
/// pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    shuffle_labels(rng, n, &edges)
}

/// Any graph on `n` vertices with edge probability `p`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn shuffle_labels<R: Rng>(rng: &mut R, n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, edges.iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap()
}

/// Two random connected graphs glued at one vertex, `n` vertices total.
pub fn random_cut_vertex_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 3);
    let a = rng.gen_range(2..n);
    let b = n + 1 - a;
    let left = random_connected(rng, a, 0.5);
    let right = random_connected(rng, b, 0.5);
    // right vertex 0 becomes left vertex a-1; the rest are shifted past a
    let map = |v: Vertex| if v == 0 { a - 1 } else { a + v - 1 };
    let mut edges: Vec<(Vertex, Vertex)> = left.edges().collect();
    edges.extend(right.edges().map(|(u, v)| (map(u), map(v))));
    shuffle_labels(rng, n, &edges)
}

/// Random transition subset, each transition kept with probability `p`.
pub fn random_transitions<R: Rng>(rng: &mut R, g: &Graph, p: f64) -> TransitionSet {
    enumerate_transitions(g)
        .iter()
        .filter(|_| rng.gen_bool(p))
        .copied()
        .collect()
}

/// A random inclusion-minimal connecting transition set of a connected `g`.
pub fn random_minimal_connecting<R: Rng>(rng: &mut R, g: &Graph) -> TransitionSet {
    let mut all: Vec<_> = enumerate_transitions(g).iter().copied().collect();
    all.shuffle(rng);
    let mut kept: TransitionSet = all.iter().copied().collect();
    for t in all {
        let trial: TransitionSet = kept.iter().filter(|&&x| x != t).copied().collect();
        if is_t_connected(g, &trial) {
            kept = trial;
        }
    }
    kept
}

/// Random connecting hypergraph of a connected `g`: random connected
/// vertex sets grown from random seeds until every non-adjacent pair is
/// inside one of them.
pub fn random_connecting_hypergraph<R: Rng>(rng: &mut R, g: &Graph) -> Hypergraph {
    let n = g.vertex_count();
    let mut missing: BTreeSet<(Vertex, Vertex)> = g.non_edges().collect();
    let mut hyperedges: Vec<Vec<Vertex>> = Vec::new();
    while let Some(&(u, _)) = missing.iter().next() {
        let target = rng.gen_range(2..=n);
        let mut set = vec![u];
        while set.len() < target {
            let frontier: Vec<Vertex> = set
                .iter()
                .flat_map(|&x| g.neighbors(x).iter().copied())
                .filter(|y| !set.contains(y))
                .collect();
            match frontier.choose(rng) {
                Some(&y) => set.push(y),
                None => break,
            }
        }
        set.sort_unstable();
        missing.retain(|&(a, b)| !(set.binary_search(&a).is_ok() && set.binary_search(&b).is_ok()));
        if set.len() >= 2 {
            hyperedges.push(set);
        }
    }
    Hypergraph::new(hyperedges)
}

/// Edge bitmask of `g` under `perm`, over the pair order (0,1), (0,2), ...
fn edge_mask(n: usize, edges: &[(Vertex, Vertex)], perm: &[Vertex]) -> u64 {
    let mut mask = 0u64;
    for &(u, v) in edges {
        let (a, b) = (perm[u].min(perm[v]), perm[u].max(perm[v]));
        mask |= 1 << pair_index(n, a, b);
    }
    mask
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative of every isomorphism class of connected graphs on
/// exactly `n` vertices, found by brute-force canonical labelling.
pub fn connected_graphs_up_to_isomorphism(n: usize) -> Vec<Graph> {
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for bits in 0u64..1 << pairs.len() {
        let edges: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if edges.len() + 1 < n {
            continue;
        }
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canon = perms.iter().map(|p| edge_mask(n, &edges, p)).min().unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

/// Proptest strategy: a graph on `1..=max_n` vertices from an edge bitmask.
pub fn arb_graph(max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

/// Proptest strategy: a connected graph, built from a seed.
pub fn arb_connected_graph(min_n: usize, max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    use rand::SeedableRng;
    (min_n..=max_n, any::<u64>(), 0.0f64..0.8).prop_map(|(n, seed, p)| {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        random_connected(&mut rng, n, p)
    })
}
