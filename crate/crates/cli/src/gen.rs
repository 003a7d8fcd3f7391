use arraygraph::{GraphStore, StoreConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Probability that a generated edge slot is left null.
pub const NULL_SLOT_PROBABILITY: f64 = 0.25;
pub const MAX_WEIGHT: u64 = 100;

/// A random graph with every vertex `1..=nodes` live. Each of the
/// `edges_per_vertex` slots is null with probability 0.25, otherwise it
/// points at a uniform random vertex with a weight uniform in `1..=100`.
/// Identical arguments give identical graphs.
pub fn generate(nodes: u64, edges_per_vertex: u64, seed: u64) -> Result<GraphStore, CliError> {
    let cfg = StoreConfig::new(nodes, edges_per_vertex)?;
    let mut g = GraphStore::new(cfg);
    let n = cfg.n_max();
    for _ in 0..n {
        g.alloc_vertex(0, 0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for v in 1..=n {
        for slot in 0..cfg.m_max() {
            if rng.gen_bool(NULL_SLOT_PROBABILITY) {
                continue;
            }
            let t = rng.gen_range(1..=n);
            let w = rng.gen_range(1..=MAX_WEIGHT);
            g.set_edge(v, slot, t)?;
            g.set_weight(v, slot, w)?;
        }
    }
    Ok(g)
}
