//! Random-walk motif generation.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::VertexId;
use crate::hin::Hin;
use crate::motif::{Motif, MotifError};

/// Walks attempted per motif before giving up.
pub const MAX_ATTEMPTS: usize = 1000;

#[derive(Debug, Error)]
pub enum GenMotifError {
    #[error("graph has {vertices} vertices, fewer than the motif size {size}")]
    GraphTooSmall { vertices: usize, size: usize },
    #[error("no valid motif of size {size} after {MAX_ATTEMPTS} attempts")]
    Exhausted { size: usize },
    #[error(transparent)]
    Motif(#[from] MotifError),
}

/// Draws `count` motifs of `size` vertices. Each is the sub-HIN induced by
/// the distinct vertices of a random walk over the undirected projection,
/// with the target drawn among vertices whose type occurs at least twice.
pub fn generate_motifs(
    g: &Hin,
    size: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<Motif>, GenMotifError> {
    let vertices: Vec<VertexId> = g.vertices().collect();
    if vertices.len() < size {
        return Err(GenMotifError::GraphTooSmall {
            vertices: vertices.len(),
            size,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| draw(g, &vertices, size, &mut rng))
        .collect()
}

fn draw(
    g: &Hin,
    vertices: &[VertexId],
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Motif, GenMotifError> {
    for _ in 0..MAX_ATTEMPTS {
        if let Some(m) = attempt(g, vertices, size, rng)? {
            return Ok(m);
        }
    }
    Err(GenMotifError::Exhausted { size })
}

fn attempt(
    g: &Hin,
    vertices: &[VertexId],
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Motif>, GenMotifError> {
    let mut current = vertices[rng.gen_range(0..vertices.len())];
    let mut picked = vec![current];
    let mut steps = 0;
    while picked.len() < size && steps < 50 * size {
        let mut near: Vec<VertexId> = g
            .out_neighbors(current)
            .iter()
            .chain(g.in_neighbors(current))
            .copied()
            .collect();
        near.sort_unstable();
        near.dedup();
        if near.is_empty() {
            return Ok(None);
        }
        current = near[rng.gen_range(0..near.len())];
        if !picked.contains(&current) {
            picked.push(current);
        }
        steps += 1;
    }
    if picked.len() < size {
        return Ok(None);
    }

    let mut type_counts: BTreeMap<&str, usize> = BTreeMap::new();
    for &v in &picked {
        *type_counts.entry(g.label_name(v)).or_default() += 1;
    }
    let eligible: Vec<usize> = (0..size)
        .filter(|&i| type_counts[g.label_name(picked[i])] >= 2)
        .collect();
    if eligible.is_empty() {
        return Ok(None);
    }
    let target = eligible[rng.gen_range(0..eligible.len())];

    let labels = picked.iter().map(|&v| g.label_name(v).to_owned()).collect();
    let mut edges = Vec::new();
    for (i, &a) in picked.iter().enumerate() {
        for (j, &b) in picked.iter().enumerate() {
            if g.has_edge(a, b) {
                edges.push((i, j));
            }
        }
    }
    Ok(Some(Motif::new(labels, edges, target)?))
}
