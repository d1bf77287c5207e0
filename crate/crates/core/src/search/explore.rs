//! Exploration-based filter.
//!
//! Every NLF-passing target vertex grows a forward candidate region along the
//! motif's BFS order. Regions that cannot fill some query vertex are dropped.
//! Surviving regions yield the CM-graph and the edge set that makes up the
//! reduced graph; a reverse pass over the BFS order then tightens the global
//! candidate sets with the backward star check.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::graph::VertexId;
use crate::hin::Hin;
use crate::iso::{CandidateSets, Matcher};
use crate::motif::QueryVertexId;

use super::{CmGraph, SearchError};

/// Output of [`exploration_filter`].
#[derive(Clone, Debug)]
pub struct Exploration {
    pub cm: CmGraph,
    /// Reduced graph over the same id space. Its target-type vertices are
    /// exactly the CM-graph vertices.
    pub reduced: Hin,
    /// Refined global candidate sets, restricted to the reduced graph.
    pub candidates: CandidateSets,
    /// Target-type vertices passing the NLF filter.
    pub nlf_survivors: usize,
}

impl Exploration {
    fn empty(g: &Hin, n: usize, nlf_survivors: usize) -> Result<Self, SearchError> {
        Ok(Exploration {
            cm: CmGraph::default(),
            reduced: g.induced_subgraph(std::iter::empty())?,
            candidates: CandidateSets::new(n),
            nlf_survivors,
        })
    }
}

struct Region {
    cand: CandidateSets,
    edges: Vec<(VertexId, VertexId)>,
    m_candidates: BTreeSet<VertexId>,
}

fn forward_region(g: &Hin, mt: &Matcher, c: VertexId) -> Option<Region> {
    let order = mt.order();
    let mut cand = CandidateSets::new(mt.query_vertex_count());
    cand.get_mut(mt.target()).insert(c);
    let mut edges = Vec::new();
    for (pos, &u) in order.order().iter().enumerate().skip(1) {
        let parent = mt.parent(u);
        let mut found = BTreeSet::new();
        for &vp in cand.get(parent) {
            for x in mt.expand_from_parent(g, u, vp) {
                if x != c && !found.contains(&x) && mt.star_check_forward(g, u, x, &cand) {
                    found.insert(x);
                }
            }
        }
        if found.is_empty() {
            return None;
        }
        *cand.get_mut(u) = found;
        for &x in cand.get(u) {
            mt.edges_to_candidates(
                g,
                u,
                x,
                &cand,
                |o| order.index(QueryVertexId(o)) < pos,
                &mut edges,
            );
        }
    }
    let m_candidates = mt
        .target_type_vertices()
        .flat_map(|u| cand.get(u).iter().copied())
        .filter(|&x| x != c)
        .collect();
    Some(Region {
        cand,
        edges,
        m_candidates,
    })
}

/// Runs the filter over `g`. Components of the CM-graph smaller than `k` are
/// discarded together with their vertices.
pub fn exploration_filter(g: &Hin, mt: &Matcher, k: usize) -> Result<Exploration, SearchError> {
    let n = mt.query_vertex_count();
    let target = mt.target();
    let Some(t) = mt.target_label().filter(|_| mt.is_satisfiable()) else {
        return Exploration::empty(g, n, 0);
    };

    let targets: Vec<VertexId> = g.vertices_with_label(t).collect();
    let (passing, failing): (Vec<VertexId>, Vec<VertexId>) =
        targets.iter().partition(|&&v| mt.nlf_pass(g, target, v));
    let mut g1 = g.clone();
    g1.delete_vertices(failing)?;

    let regions: Vec<Option<Region>> = passing
        .par_iter()
        .map(|&c| forward_region(&g1, mt, c))
        .collect();
    let with_region: BTreeSet<VertexId> = passing
        .iter()
        .zip(&regions)
        .filter(|(_, r)| r.is_some())
        .map(|(&c, _)| c)
        .collect();
    if with_region.is_empty() {
        return Exploration::empty(g, n, passing.len());
    }

    let mut global = CandidateSets::new(n);
    let mut region_edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut cm = CmGraph::default();
    for (&c, region) in passing.iter().zip(&regions) {
        let Some(region) = region else { continue };
        cm.add_vertex(c);
        global.union_with(&region.cand);
        region_edges.extend(region.edges.iter().copied());
        for &w in region
            .m_candidates
            .iter()
            .filter(|w| with_region.contains(w))
        {
            cm.add_edge(c, w);
        }
    }
    cm.remove_small_components(k);

    let mut g2 = g1.induced_subgraph(region_edges.iter().copied())?;
    let outside: Vec<VertexId> = g2
        .vertices_with_label(t)
        .filter(|&v| !cm.contains(v))
        .collect();
    g2.delete_vertices(outside)?;

    for &u in mt.order().order().iter().rev() {
        let refined: BTreeSet<VertexId> = global
            .get(u)
            .iter()
            .copied()
            .filter(|&v| g2.contains(v) && mt.star_check_backward(&g2, u, v, &global))
            .collect();
        *global.get_mut(u) = refined;
    }

    let confirmed = global.get(target).clone();
    cm.retain_vertices(|v| confirmed.contains(&v));
    cm.remove_small_components(k);

    let motif_edges = mt.motif_edges();
    let kept = region_edges.iter().copied().filter(|&(x, y)| {
        g2.has_edge(x, y)
            && motif_edges
                .iter()
                .any(|&(a, b)| global.get(a).contains(&x) && global.get(b).contains(&y))
    });
    let mut g3 = g2.induced_subgraph(kept)?;
    loop {
        let doomed: Vec<VertexId> = g3
            .vertices_with_label(t)
            .filter(|&v| !cm.contains(v))
            .collect();
        let changed = !doomed.is_empty();
        g3.delete_vertices(doomed)?;
        let before = cm.vertex_count();
        cm.retain_vertices(|v| g3.contains(v));
        cm.remove_small_components(k);
        if !changed && cm.vertex_count() == before {
            break;
        }
    }

    for u in mt.order().order() {
        let live: BTreeSet<VertexId> = global
            .get(*u)
            .iter()
            .copied()
            .filter(|&v| g3.contains(v))
            .collect();
        *global.get_mut(*u) = live;
    }
    log::debug!(
        "exploration: {} targets, {} pass NLF, {} in CM-graph",
        targets.len(),
        passing.len(),
        cm.vertex_count()
    );
    Ok(Exploration {
        cm,
        reduced: g3,
        candidates: global,
        nlf_survivors: passing.len(),
    })
}
