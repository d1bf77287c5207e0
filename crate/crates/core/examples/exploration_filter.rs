//! Candidate filtering before verification: label-frequency pruning, the
//! candidate M-graph, and message passing over it.

use std::path::Path;

use ifcs::search::{exploration_filter, message_passing};
use ifcs::{Hin, Matcher, Motif, SearchStats};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example");
    let g = Hin::load(&dir.join("vertices.tsv"), &dir.join("edges.tsv"))?;
    let m = Motif::from_file(&dir.join("motif_q1.tsv"))?;
    let mt = Matcher::new(&g, &m);
    let k = 2;

    let tt = g.label_id(m.target_type()).unwrap();
    println!("target-type vertices: {}", g.label_count(tt));
    let mut ex = exploration_filter(&g, &mt, k)?;
    println!("after label-frequency filter: {}", ex.nlf_survivors);
    println!("candidate M-graph ({} vertices):", ex.cm.vertex_count());
    for (a, b) in ex.cm.edges() {
        println!("  {} -> {}", g.external_id(a), g.external_id(b));
    }
    println!(
        "reduced graph: {} vertices, {} edges",
        ex.reduced.vertex_count(),
        ex.reduced.edge_count()
    );

    let mut stats = SearchStats::default();
    let trace = message_passing(&mut ex.reduced, &mut ex.cm, &mt, &mut stats)?;
    for e in &trace.events {
        let verdict = if e.deleted { "deleted" } else { "kept" };
        println!("  round {} {} {verdict}", e.round, g.external_id(e.vertex));
    }
    let survivors: Vec<&str> = trace.survivors.iter().map(|&v| g.external_id(v)).collect();
    println!(
        "verified: {survivors:?} ({} existence checks)",
        stats.existence_checks
    );
    Ok(())
}
