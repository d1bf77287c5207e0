//! Quality metrics of a community over its M-graph: r-degree histogram,
//! density, and M-distance diameter.
//!
//! Density and diameter treat M-edges as undirected. Extra metrics plug in
//! through [`CommunityMetric`].

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::graph::VertexId;
use crate::hin::Hin;
use crate::search::MGraph;

/// Largest r-degree with its own bin; higher degrees share the overflow bin.
pub const MAX_R_DEGREE_BIN: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("community is empty")]
    Empty,
    #[error("vertex {0} is not in the M-graph")]
    NotInGraph(VertexId),
    #[error("community is not M-connected")]
    Disconnected,
}

/// Members per r-degree: bins `0..=20` and one overflow bin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RDegreeHistogram {
    counts: [u64; MAX_R_DEGREE_BIN + 2],
    members: u64,
}

impl RDegreeHistogram {
    fn from_degrees(degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut counts = [0u64; MAX_R_DEGREE_BIN + 2];
        let mut members = 0;
        for d in degrees {
            counts[d.min(MAX_R_DEGREE_BIN + 1)] += 1;
            members += 1;
        }
        Self { counts, members }
    }

    /// Member count of bin `degree`; `MAX_R_DEGREE_BIN + 1` is the overflow bin.
    pub fn count(&self, degree: usize) -> u64 {
        self.counts[degree]
    }

    pub fn overflow(&self) -> u64 {
        self.counts[MAX_R_DEGREE_BIN + 1]
    }

    pub fn fraction(&self, degree: usize) -> f64 {
        self.counts[degree] as f64 / self.members as f64
    }

    /// Non-empty bins as `"degree" -> fraction`; the overflow bin is `">20"`.
    pub fn fractions(&self) -> IndexMap<String, f64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(d, _)| {
                let key = if d > MAX_R_DEGREE_BIN {
                    format!(">{MAX_R_DEGREE_BIN}")
                } else {
                    d.to_string()
                };
                (key, self.fraction(d))
            })
            .collect()
    }
}

impl Serialize for RDegreeHistogram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.fractions().serialize(s)
    }
}

fn check(mg: &MGraph, community: &[VertexId]) -> Result<BTreeSet<VertexId>, MetricsError> {
    if community.is_empty() {
        return Err(MetricsError::Empty);
    }
    if let Some(&v) = community.iter().find(|&&v| !mg.contains(v)) {
        return Err(MetricsError::NotInGraph(v));
    }
    Ok(community.iter().copied().collect())
}

/// Distinct in-community M-neighbors (out-edges) of each member.
pub fn r_degrees(
    mg: &MGraph,
    community: &[VertexId],
) -> Result<BTreeMap<VertexId, usize>, MetricsError> {
    let set = check(mg, community)?;
    Ok(set
        .iter()
        .map(|&v| (v, mg.out_neighbors(v).filter(|w| set.contains(w)).count()))
        .collect())
}

pub fn r_degree(mg: &MGraph, community: &[VertexId]) -> Result<RDegreeHistogram, MetricsError> {
    Ok(RDegreeHistogram::from_degrees(
        r_degrees(mg, community)?.into_values(),
    ))
}

/// Unordered member pairs joined by an M-edge in either direction, divided
/// by the number of members.
pub fn density(mg: &MGraph, community: &[VertexId]) -> Result<f64, MetricsError> {
    let set = check(mg, community)?;
    let mut pairs = BTreeSet::new();
    for &v in &set {
        for w in mg.out_neighbors(v).filter(|w| set.contains(w)) {
            pairs.insert((v.min(w), v.max(w)));
        }
    }
    Ok(pairs.len() as f64 / set.len() as f64)
}

/// Largest shortest-path distance between members, ignoring direction.
pub fn m_distance_diameter(mg: &MGraph, community: &[VertexId]) -> Result<u64, MetricsError> {
    let set = check(mg, community)?;
    let mut diameter = 0;
    for &src in &set {
        let mut dist: BTreeMap<VertexId, u64> = BTreeMap::from([(src, 0)]);
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for w in mg.out_neighbors(v).chain(mg.in_neighbors(v)) {
                if set.contains(&w) && !dist.contains_key(&w) {
                    dist.insert(w, d + 1);
                    queue.push_back(w);
                }
            }
        }
        if dist.len() != set.len() {
            return Err(MetricsError::Disconnected);
        }
        diameter = diameter.max(dist.into_values().max().unwrap_or(0));
    }
    Ok(diameter)
}

/// Additional per-community metric reported next to the built-in ones.
pub trait CommunityMetric: Send + Sync {
    fn name(&self) -> &str;
    fn compute(
        &self,
        g: &Hin,
        mg: &MGraph,
        community: &[VertexId],
    ) -> Result<serde_json::Value, MetricsError>;
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommunityMetrics {
    pub r_degree_histogram: RDegreeHistogram,
    pub density: f64,
    pub m_diameter: u64,
    #[serde(skip_serializing_if = "IndexMap::is_empty")]
    pub extra: IndexMap<String, serde_json::Value>,
}

pub fn community_metrics(
    g: &Hin,
    mg: &MGraph,
    community: &[VertexId],
    extra: &[Box<dyn CommunityMetric>],
) -> Result<CommunityMetrics, MetricsError> {
    let mut out = CommunityMetrics {
        r_degree_histogram: r_degree(mg, community)?,
        density: density(mg, community)?,
        m_diameter: m_distance_diameter(mg, community)?,
        extra: IndexMap::new(),
    };
    for metric in extra {
        out.extra
            .insert(metric.name().to_owned(), metric.compute(g, mg, community)?);
    }
    Ok(out)
}
