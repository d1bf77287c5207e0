//! Uniform vertex sampling with induced edges.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::VertexId;
use crate::hin::{GraphError, Hin};

#[derive(Debug, thiserror::Error)]
pub enum SampleError {
    #[error("sampling ratio {0} is outside (0, 1]")]
    Ratio(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Keeps `round(ratio * n)` uniformly chosen vertices and every edge among
/// them. Isolated vertices are kept; ids and file order are preserved.
pub fn sample_graph(g: &Hin, ratio: f64, seed: u64) -> Result<Hin, SampleError> {
    if !(ratio > 0.0 && ratio <= 1.0) {
        return Err(SampleError::Ratio(ratio));
    }
    let vertices: Vec<VertexId> = g.vertices().collect();
    let keep = ((ratio * vertices.len() as f64).round() as usize).min(vertices.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = rand::seq::index::sample(&mut rng, vertices.len(), keep).into_vec();
    chosen.sort_unstable();
    Ok(g.induced_on_vertices(chosen.into_iter().map(|i| vertices[i]))?)
}
