//! Fairest-community search: the baseline filter-verify algorithm and the
//! three optimized modes layered on the exploration filter.

use std::fmt;
use std::ops::{Deref, DerefMut};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::fairness::{fairness_score, ActiveLevels, FairnessScore};
use crate::graph::{weakly_connected_components, DiGraph, VertexId};
use crate::hin::{GraphError, Hin};
use crate::iso::{BudgetExceeded, Matcher};
use crate::motif::Motif;

pub mod baseline;
pub mod explore;
pub mod message;
pub mod optimized;
pub mod result;

pub use baseline::{baseline_search, deletion_fixpoint};
pub use explore::{exploration_filter, Exploration};
pub use message::{message_passing, MessageEvent, MessageTrace};
pub use optimized::optimized_search;
pub use result::ResultDocument;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid query parameters: {0}")]
    InvalidParams(String),
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum SearchMode {
    #[value(name = "baseline")]
    Baseline,
    #[value(name = "fva")]
    Fva,
    #[value(name = "fva-m")]
    FvaM,
    #[value(name = "fva-l")]
    FvaL,
}

impl SearchMode {
    pub const ALL: [SearchMode; 4] = [
        SearchMode::Baseline,
        SearchMode::Fva,
        SearchMode::FvaM,
        SearchMode::FvaL,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Baseline => "baseline",
            SearchMode::Fva => "fva",
            SearchMode::FvaM => "fva-m",
            SearchMode::FvaL => "fva-l",
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SearchMode::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown search mode `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryParams {
    /// Minimum community size.
    pub k: usize,
    /// Per-anchor limit on explored partial embeddings.
    pub budget: Option<u64>,
    pub threads: usize,
    /// Record wall time in the stats. Off gives reproducible output.
    pub timing: bool,
}

impl Default for QueryParams {
    fn default() -> Self {
        Self {
            k: 2,
            budget: None,
            threads: 1,
            timing: true,
        }
    }
}

impl QueryParams {
    pub fn with_k(k: usize) -> Self {
        Self {
            k,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SearchStats {
    pub visited_targets: u64,
    pub existence_checks: u64,
    pub instances_enumerated: u64,
    pub bound_computations: u64,
    pub components_pruned: u64,
    pub survivors_after_nlf: Option<u64>,
    pub survivors_after_exploration: Option<u64>,
    pub survivors_after_message_passing: Option<u64>,
    pub wall_time_ms: f64,
}

/// Directed graph whose edge `u -> v` records that an instance around `u`
/// contains `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MGraph(pub DiGraph);

/// Candidate version of the M-graph produced by the exploration filter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CmGraph(pub DiGraph);

macro_rules! digraph_newtype {
    ($t:ty) => {
        impl Deref for $t {
            type Target = DiGraph;
            fn deref(&self) -> &DiGraph {
                &self.0
            }
        }
        impl DerefMut for $t {
            fn deref_mut(&mut self) -> &mut DiGraph {
                &mut self.0
            }
        }
    };
}
digraph_newtype!(MGraph);
digraph_newtype!(CmGraph);

impl CmGraph {
    /// Removes weakly connected components with fewer than `k` vertices.
    /// Returns the removed vertices.
    pub fn remove_small_components(&mut self, k: usize) -> Vec<VertexId> {
        let mut removed = Vec::new();
        for comp in weakly_connected_components(&self.0) {
            if comp.len() < k {
                removed.extend(comp);
            }
        }
        for &v in &removed {
            self.0.remove_vertex(v);
        }
        removed.sort_unstable();
        removed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Community {
    /// Members in ascending id order.
    pub members: Vec<VertexId>,
    pub active_levels: ActiveLevels,
    pub fairness_score: FairnessScore,
}

impl Community {
    fn new(active_levels: ActiveLevels) -> Self {
        let levels: Vec<u64> = active_levels.values().copied().collect();
        Community {
            members: active_levels.keys().copied().collect(),
            fairness_score: fairness_score(&levels).expect("members have positive levels"),
            active_levels,
        }
    }

    pub fn min_member(&self) -> VertexId {
        self.members[0]
    }
}

#[derive(Clone, Debug)]
pub struct CommunityResult {
    pub mode: SearchMode,
    pub k: usize,
    /// All qualifying communities attaining the minimum score, sorted by
    /// smallest member.
    pub communities: Vec<Community>,
    pub fairness_score: Option<FairnessScore>,
    /// M-graph edges found by full enumeration. Complete for every reported
    /// community; the optimized modes leave pruned components out.
    pub m_graph: MGraph,
    /// Member sets of components abandoned by the lower bound.
    pub pruned: Vec<Vec<VertexId>>,
    pub stats: SearchStats,
}

impl CommunityResult {
    pub fn is_empty(&self) -> bool {
        self.communities.is_empty()
    }
}

/// Running minimum over candidate communities, keeping ties.
#[derive(Debug, Default)]
pub(crate) struct BestSet {
    score: Option<FairnessScore>,
    communities: Vec<Community>,
}

impl BestSet {
    pub(crate) fn score(&self) -> Option<FairnessScore> {
        self.score
    }

    pub(crate) fn offer(&mut self, c: Community) {
        match self.score {
            Some(s) if c.fairness_score > s => {}
            Some(s) if c.fairness_score == s => self.communities.push(c),
            _ => {
                self.score = Some(c.fairness_score);
                self.communities = vec![c];
            }
        }
    }

    pub(crate) fn finish(mut self) -> (Option<FairnessScore>, Vec<Community>) {
        self.communities.sort_by_key(Community::min_member);
        (self.score, self.communities)
    }
}

/// Per-anchor enumeration outcome: active level and M-neighbors.
#[derive(Clone, Debug, Default)]
pub(crate) struct Enumeration {
    pub level: u64,
    pub neighbors: Vec<VertexId>,
}

pub(crate) fn enumerate_anchor(
    g: &Hin,
    mt: &Matcher,
    anchor: VertexId,
) -> Result<Enumeration, BudgetExceeded> {
    let target_positions: Vec<_> = mt.target_type_vertices().collect();
    let mut neighbors = Vec::new();
    let level = mt.enumerate_instances_around(g, anchor, |inst| {
        neighbors.extend(target_positions.iter().map(|&u| inst.image(u)));
    })?;
    neighbors.sort_unstable();
    neighbors.dedup();
    Ok(Enumeration { level, neighbors })
}

/// Runs one query in the requested mode.
pub fn run_query(
    g: &Hin,
    m: &Motif,
    p: &QueryParams,
    mode: SearchMode,
) -> Result<CommunityResult, SearchError> {
    if p.k == 0 {
        return Err(SearchError::InvalidParams("k must be at least 1".into()));
    }
    if p.threads == 0 {
        return Err(SearchError::InvalidParams(
            "threads must be at least 1".into(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(p.threads)
        .build()
        .map_err(|e| SearchError::ThreadPool(e.to_string()))?;
    let started = Instant::now();
    let mut result = pool.install(|| match mode {
        SearchMode::Baseline => baseline_search(g, m, p),
        _ => optimized_search(g, m, p, mode),
    })?;
    result.stats.wall_time_ms = if p.timing {
        started.elapsed().as_secs_f64() * 1000.0
    } else {
        0.0
    };
    log::info!(
        "{mode}: {} communities, visited {} targets",
        result.communities.len(),
        result.stats.visited_targets
    );
    Ok(result)
}
