//! Filter-based modes.
//!
//! FVA runs the baseline verification on the filtered graph. FVA-M verifies
//! by message passing and then grows M-components one at a time inside each
//! CM-graph component, smallest component first. FVA-L additionally stops
//! scoring a component once its lower bound exceeds the best score so far.

use std::collections::BTreeSet;

use crate::fairness::{lower_bound, ActiveLevels, PartialObservation};
use crate::graph::{weakly_connected_components, VertexId};
use crate::hin::Hin;
use crate::iso::Matcher;
use crate::motif::Motif;

use super::baseline::{deletion_fixpoint, verify_all};
use super::explore::exploration_filter;
use super::message::message_passing;
use super::{
    enumerate_anchor, BestSet, CmGraph, Community, CommunityResult, MGraph, QueryParams,
    SearchError, SearchMode, SearchStats,
};

pub fn optimized_search(
    g: &Hin,
    m: &Motif,
    p: &QueryParams,
    mode: SearchMode,
) -> Result<CommunityResult, SearchError> {
    if mode == SearchMode::Baseline {
        return Err(SearchError::InvalidParams(
            "baseline is not an optimized mode".into(),
        ));
    }
    let mt = Matcher::new(g, m).with_budget(p.budget);
    let mut stats = SearchStats::default();
    let ex = exploration_filter(g, &mt, p.k)?;
    stats.survivors_after_nlf = Some(ex.nlf_survivors as u64);
    stats.survivors_after_exploration = Some(ex.cm.vertex_count() as u64);
    let mut reduced = ex.reduced;
    let mut cm = ex.cm;

    if mode == SearchMode::Fva {
        let survivors = deletion_fixpoint(&mut reduced, &mt, &mut stats)?;
        let (m_graph, best) = verify_all(&reduced, &mt, &survivors, p.k, &mut stats)?;
        let (fairness_score, communities) = best.finish();
        return Ok(CommunityResult {
            mode,
            k: p.k,
            communities,
            fairness_score,
            m_graph,
            pruned: Vec::new(),
            stats,
        });
    }

    let trace = message_passing(&mut reduced, &mut cm, &mt, &mut stats)?;
    stats.survivors_after_message_passing = Some(trace.survivors.len() as u64);

    let mut walk = Traversal {
        g: &reduced,
        mt: &mt,
        cm: &cm,
        k: p.k,
        use_bound: mode == SearchMode::FvaL,
        stats,
        best: BestSet::default(),
        m_graph: MGraph::default(),
        pruned: Vec::new(),
        assigned: BTreeSet::new(),
    };
    walk.run()?;
    let Traversal {
        stats,
        best,
        m_graph,
        pruned,
        ..
    } = walk;
    let (fairness_score, communities) = best.finish();
    Ok(CommunityResult {
        mode,
        k: p.k,
        communities,
        fairness_score,
        m_graph,
        pruned,
        stats,
    })
}

struct Traversal<'a> {
    g: &'a Hin,
    mt: &'a Matcher,
    cm: &'a CmGraph,
    k: usize,
    use_bound: bool,
    stats: SearchStats,
    best: BestSet,
    m_graph: MGraph,
    pruned: Vec<Vec<VertexId>>,
    assigned: BTreeSet<VertexId>,
}

impl Traversal<'_> {
    fn run(&mut self) -> Result<(), SearchError> {
        let mut components = weakly_connected_components(&self.cm.0);
        components.sort_by_key(|c| (c.len(), c[0]));
        for comp in components {
            if comp.len() < self.k {
                continue;
            }
            let mut assigned_here = 0;
            for &seed in &comp {
                if self.assigned.contains(&seed) {
                    continue;
                }
                assigned_here += self.grow(seed, comp.len() - assigned_here)?;
            }
        }
        Ok(())
    }

    /// Collects the M-component containing `seed`, scoring it unless the
    /// bound rules it out. `candidate_size` caps its possible size. Returns
    /// the number of members.
    fn grow(&mut self, seed: VertexId, candidate_size: usize) -> Result<usize, SearchError> {
        let mut frontier = BTreeSet::from([seed]);
        let mut members: BTreeSet<VertexId> = BTreeSet::new();
        let mut levels = ActiveLevels::new();
        let mut checked: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        let mut pruned = false;
        loop {
            while let Some(x) = frontier.pop_first() {
                self.assigned.insert(x);
                members.insert(x);
                if pruned {
                    self.discover_out(x, &mut frontier, &mut checked)?;
                    continue;
                }
                let e = enumerate_anchor(self.g, self.mt, x)?;
                self.stats.visited_targets += 1;
                self.stats.instances_enumerated += e.level;
                levels.insert(x, e.level);
                self.m_graph.add_vertex(x);
                for &w in &e.neighbors {
                    debug_assert!(self.cm.has_edge(x, w));
                    self.m_graph.add_edge(x, w);
                    if !self.assigned.contains(&w) {
                        frontier.insert(w);
                    }
                }
                if self.use_bound {
                    if let Some(best) = self.best.score() {
                        self.stats.bound_computations += 1;
                        let obs = PartialObservation::new(
                            levels.values().copied().collect(),
                            candidate_size,
                        )
                        .expect("levels are positive and bounded by the component");
                        if lower_bound(&obs) > best {
                            pruned = true;
                            self.stats.components_pruned += 1;
                        }
                    }
                }
            }
            // In-neighbors linking into the members join as well.
            let outside: BTreeSet<VertexId> = members
                .iter()
                .flat_map(|&x| self.cm.in_neighbors(x))
                .filter(|y| !self.assigned.contains(y))
                .collect();
            for y in outside {
                let targets: Vec<VertexId> = self
                    .cm
                    .out_neighbors(y)
                    .filter(|x| members.contains(x))
                    .collect();
                for x in targets {
                    if !checked.insert((y, x)) {
                        continue;
                    }
                    self.stats.existence_checks += 1;
                    if self.mt.exists_instance_containing(self.g, y, x)? {
                        frontier.insert(y);
                        break;
                    }
                }
            }
            if frontier.is_empty() {
                break;
            }
        }

        let size = members.len();
        if pruned {
            self.pruned.push(members.into_iter().collect());
        } else if size >= self.k {
            self.best.offer(Community::new(levels));
        }
        Ok(size)
    }

    /// M-neighbor discovery for a member of a pruned component, using
    /// constrained existence checks instead of full enumeration.
    fn discover_out(
        &mut self,
        x: VertexId,
        frontier: &mut BTreeSet<VertexId>,
        checked: &mut BTreeSet<(VertexId, VertexId)>,
    ) -> Result<(), SearchError> {
        let candidates: Vec<VertexId> = self
            .cm
            .out_neighbors(x)
            .filter(|w| !self.assigned.contains(w) && !frontier.contains(w))
            .collect();
        for w in candidates {
            if !checked.insert((x, w)) {
                continue;
            }
            self.stats.existence_checks += 1;
            if self.mt.exists_instance_containing(self.g, x, w)? {
                frontier.insert(w);
            }
        }
        Ok(())
    }
}
