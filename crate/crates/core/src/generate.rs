//! Seeded instance generators.
//!
//! Every generator draws from a ChaCha8 stream seeded by the caller, so output
//! is identical across runs and platforms for a fixed seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{families, Graph};
use crate::temporal::Labeling;

pub const GNP_RETRIES: usize = 1000;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum GenerateError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("no connected sample after {0} retries")]
    Disconnected(usize),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    Path,
    Cycle,
    /// `n` vertices: a center and `n-1` leaves.
    Star,
    /// Uniform random recursive tree.
    Tree,
    Gnp {
        p: f64,
    },
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn generate(model: Model, n: usize, rng: &mut impl Rng) -> Result<Graph, GenerateError> {
    if n == 0 {
        return Err(GenerateError::InvalidParams("n must be positive".into()));
    }
    match model {
        Model::Path => Ok(families::path(n)),
        Model::Cycle if n < 3 => Err(GenerateError::InvalidParams("cycle needs n ≥ 3".into())),
        Model::Cycle => Ok(families::cycle(n)),
        Model::Star => Ok(families::star(n - 1)),
        Model::Tree => Ok(random_tree(n, rng)),
        Model::Gnp { p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenerateError::InvalidParams(format!("p = {p} outside [0, 1]")));
            }
            for _ in 0..GNP_RETRIES {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                if let Ok(g) = Graph::new(n, edges) {
                    return Ok(g);
                }
            }
            Err(GenerateError::Disconnected(GNP_RETRIES))
        }
    }
}

/// Each vertex `i ≥ 1` attaches to a uniformly chosen earlier vertex, then ids
/// are shuffled.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = (1..n).map(|i| (perm[i], perm[rng.gen_range(0..i)])).collect();
    Graph::new(n, edges).expect("tree is connected")
}

/// Connected graph on `n` vertices: a random spanning tree plus each remaining
/// pair with probability `p`.
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let tree = random_tree(n, rng);
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("supergraph of a spanning tree")
}

pub fn random_labeling(g: &Graph, delta: u32, rng: &mut impl Rng) -> Labeling {
    let labels = (0..g.m()).map(|_| rng.gen_range(1..=delta)).collect();
    Labeling::new(delta, labels).expect("labels in range")
}
