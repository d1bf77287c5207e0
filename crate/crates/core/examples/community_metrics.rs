//! Structural metrics of the returned communities, plus a user-defined
//! metric plugged in next to the built-in ones.

use std::path::Path;

use ifcs::metrics::{community_metrics, CommunityMetric, MetricsError};
use ifcs::search::MGraph;
use ifcs::{run_query, Hin, Motif, QueryParams, SearchMode, VertexId};

/// Distinct non-target neighbors shared by the community.
struct Venues;

impl CommunityMetric for Venues {
    fn name(&self) -> &str {
        "neighbor_vertices"
    }

    fn compute(
        &self,
        g: &Hin,
        _: &MGraph,
        community: &[VertexId],
    ) -> Result<serde_json::Value, MetricsError> {
        let label = g.label(community[0]);
        let mut seen: Vec<&str> = community
            .iter()
            .flat_map(|&v| g.out_neighbors(v).iter().chain(g.in_neighbors(v)))
            .filter(|&&w| g.label(w) != label)
            .map(|&w| g.external_id(w))
            .collect();
        seen.sort_unstable();
        seen.dedup();
        Ok(serde_json::json!(seen))
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example");
    let g = Hin::load(&dir.join("vertices.tsv"), &dir.join("edges.tsv"))?;
    let m = Motif::from_file(&dir.join("motif_q1.tsv"))?;
    let r = run_query(&g, &m, &QueryParams::with_k(2), SearchMode::FvaL)?;
    let extra: Vec<Box<dyn CommunityMetric>> = vec![Box::new(Venues)];
    for c in &r.communities {
        let names: Vec<&str> = c.members.iter().map(|&v| g.external_id(v)).collect();
        let metrics = community_metrics(&g, &r.m_graph, &c.members, &extra)?;
        println!("{names:?}");
        println!("{}", serde_json::to_string_pretty(&metrics)?);
    }
    Ok(())
}
