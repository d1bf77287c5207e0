//! Filter-verify baseline: repeated full existence rounds, then full
//! enumeration of every survivor.

use rayon::prelude::*;

use crate::graph::{weakly_connected_components, VertexId};
use crate::hin::Hin;
use crate::iso::Matcher;
use crate::motif::Motif;

use super::{
    enumerate_anchor, BestSet, Community, CommunityResult, MGraph, QueryParams, SearchError,
    SearchMode, SearchStats,
};

/// Deletes target-type vertices without an instance around them, re-checking
/// every survivor each round until a round deletes nothing. Returns the
/// survivors in ascending order.
pub fn deletion_fixpoint(
    g: &mut Hin,
    mt: &Matcher,
    stats: &mut SearchStats,
) -> Result<Vec<VertexId>, SearchError> {
    let Some(t) = mt.target_label() else {
        return Ok(Vec::new());
    };
    loop {
        let targets: Vec<VertexId> = g.vertices_with_label(t).collect();
        stats.existence_checks += targets.len() as u64;
        let graph: &Hin = g;
        let verdicts = targets
            .par_iter()
            .map(|&v| mt.exists_instance_around(graph, v))
            .collect::<Result<Vec<bool>, _>>()?;
        let failed: Vec<VertexId> = targets
            .iter()
            .zip(&verdicts)
            .filter(|(_, &ok)| !ok)
            .map(|(&v, _)| v)
            .collect();
        if failed.is_empty() {
            return Ok(targets);
        }
        log::debug!("deletion round removed {} targets", failed.len());
        g.delete_vertices(failed)?;
    }
}

/// Enumerates every survivor of `g` (already at the fixpoint), builds the
/// M-graph and scores its components of size at least `k`.
pub(crate) fn verify_all(
    g: &Hin,
    mt: &Matcher,
    survivors: &[VertexId],
    k: usize,
    stats: &mut SearchStats,
) -> Result<(MGraph, BestSet), SearchError> {
    let found = survivors
        .par_iter()
        .map(|&v| enumerate_anchor(g, mt, v))
        .collect::<Result<Vec<_>, _>>()?;
    stats.visited_targets += survivors.len() as u64;

    let mut mg = MGraph::default();
    let mut levels = std::collections::BTreeMap::new();
    for (&v, e) in survivors.iter().zip(&found) {
        stats.instances_enumerated += e.level;
        mg.add_vertex(v);
        for &w in &e.neighbors {
            mg.add_edge(v, w);
        }
        levels.insert(v, e.level);
    }

    let mut best = BestSet::default();
    for comp in weakly_connected_components(&mg.0) {
        if comp.len() < k {
            continue;
        }
        best.offer(Community::new(
            comp.iter().map(|v| (*v, levels[v])).collect(),
        ));
    }
    Ok((mg, best))
}

pub fn baseline_search(
    g: &Hin,
    m: &Motif,
    p: &QueryParams,
) -> Result<CommunityResult, SearchError> {
    let mt = Matcher::new(g, m).with_budget(p.budget);
    let mut stats = SearchStats::default();
    let mut work = g.clone();
    let survivors = deletion_fixpoint(&mut work, &mt, &mut stats)?;
    let (m_graph, best) = verify_all(&work, &mt, &survivors, p.k, &mut stats)?;
    let (fairness_score, communities) = best.finish();
    Ok(CommunityResult {
        mode: SearchMode::Baseline,
        k: p.k,
        communities,
        fairness_score,
        m_graph,
        pruned: Vec::new(),
        stats,
    })
}
