//! Named graph families used by the examples, tests and the `generate`
//! subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// Complement of the path on `k` vertices. Vertex `i` is the `i`-th
    /// vertex of the path.
    PathComplement(usize),
    /// Complement of the spider with `n` legs of three edges each. Vertex 0
    /// is the centre; leg `i` (0-based) holds `3i+1, 3i+2, 3i+3`, listed
    /// from the centre outwards.
    SpiderComplement(usize),
    /// Uniform random attachment tree, deterministic per seed.
    RandomTree { n: usize, seed: u64 },
}

impl Family {
    pub fn build(self) -> Result<Graph, GraphError> {
        match self {
            Family::Path(k) => {
                positive(k, "path length")?;
                Graph::from_edges(k, path_edges(k))
            }
            Family::Cycle(k) => {
                if k < 3 {
                    return Err(GraphError::InvalidParameter(format!(
                        "cycle needs at least 3 vertices, got {k}"
                    )));
                }
                Graph::from_edges(k, path_edges(k).chain([(k - 1, 0)]))
            }
            Family::Complete(k) => {
                positive(k, "complete graph size")?;
                Graph::from_edges(
                    k,
                    (0..k).flat_map(|u| (u + 1..k).map(move |v| (u, v))),
                )
            }
            Family::PathComplement(k) => Ok(Family::Path(k).build()?.complement()),
            Family::SpiderComplement(n) => {
                positive(n, "spider leg count")?;
                let mut edges = Vec::with_capacity(3 * n);
                for leg in 0..n {
                    let base = 3 * leg + 1;
                    edges.push((0, base));
                    edges.push((base, base + 1));
                    edges.push((base + 1, base + 2));
                }
                Ok(Graph::from_edges(3 * n + 1, edges)?.complement())
            }
            Family::RandomTree { n, seed } => {
                positive(n, "tree size")?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let edges: Vec<(Vertex, Vertex)> =
                    (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
                Graph::from_edges(n, edges)
            }
        }
    }

    /// Parses `path`, `cycle`, `complete`, `path_complement`,
    /// `spider_complement` or `random_tree` with its size (and seed).
    pub fn from_name(name: &str, size: usize, seed: u64) -> Result<Self, GraphError> {
        Ok(match name {
            "path" => Family::Path(size),
            "cycle" => Family::Cycle(size),
            "complete" => Family::Complete(size),
            "path_complement" => Family::PathComplement(size),
            "spider_complement" => Family::SpiderComplement(size),
            "random_tree" => Family::RandomTree { n: size, seed },
            other => {
                return Err(GraphError::InvalidParameter(format!(
                    "unknown family {other:?}"
                )))
            }
        })
    }
}

fn positive(k: usize, what: &str) -> Result<(), GraphError> {
    if k == 0 {
        Err(GraphError::InvalidParameter(format!("{what} must be positive")))
    } else {
        Ok(())
    }
}

fn path_edges(k: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (1..k).map(|i| (i - 1, i))
}
