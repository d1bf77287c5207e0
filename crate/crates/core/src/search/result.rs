//! JSON result document.

use indexmap::IndexMap;
use serde::Serialize;

use crate::hin::Hin;
use crate::metrics::CommunityMetrics;

use super::{CommunityResult, SearchStats};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryInfo {
    pub motif_file: String,
    pub k: usize,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommunityRecord {
    pub members: Vec<String>,
    pub active_levels: IndexMap<String, u64>,
    pub fairness_score: f64,
}

/// Serializable form of a query result, with members reported by their
/// external ids.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultDocument {
    pub query: QueryInfo,
    pub communities: Vec<CommunityRecord>,
    pub stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metrics: Option<Vec<CommunityMetrics>>,
}

impl ResultDocument {
    pub fn new(g: &Hin, motif_file: &str, result: &CommunityResult) -> Self {
        let communities = result
            .communities
            .iter()
            .map(|c| CommunityRecord {
                members: c
                    .members
                    .iter()
                    .map(|&v| g.external_id(v).to_owned())
                    .collect(),
                active_levels: c
                    .active_levels
                    .iter()
                    .map(|(&v, &s)| (g.external_id(v).to_owned(), s))
                    .collect(),
                fairness_score: c.fairness_score.value(),
            })
            .collect();
        ResultDocument {
            query: QueryInfo {
                motif_file: motif_file.to_owned(),
                k: result.k,
                mode: result.mode.to_string(),
            },
            communities,
            stats: result.stats.clone(),
            metrics: None,
        }
    }

    pub fn with_metrics(mut self, metrics: Vec<CommunityMetrics>) -> Self {
        self.metrics = Some(metrics);
        self
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document is serializable");
        s.push('\n');
        s
    }
}
