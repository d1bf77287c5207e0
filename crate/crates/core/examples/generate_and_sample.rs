//! Draws random query motifs from a graph and shrinks the graph by uniform
//! vertex sampling, as used to build benchmark workloads.

use std::path::Path;

use ifcs::cli::{bench, bench_rows, generate_motifs, sample_graph};
use ifcs::{Hin, QueryParams, SearchMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example");
    let g = Hin::load(&dir.join("vertices.tsv"), &dir.join("edges.tsv"))?;

    let motifs = generate_motifs(&g, 4, 3, 7)?;
    for (i, m) in motifs.iter().enumerate() {
        println!("# motif_4_{i}.tsv\n{}", m.to_tsv());
    }

    for ratio in [1.0, 0.75, 0.5] {
        let s = sample_graph(&g, ratio, 1)?;
        println!(
            "ratio {ratio}: {} vertices, {} edges",
            s.vertex_count(),
            s.edge_count()
        );
    }

    let named: Vec<(String, _)> = motifs
        .into_iter()
        .enumerate()
        .map(|(i, m)| (format!("motif_4_{i}.tsv"), m))
        .collect();
    let rows = bench_rows(
        &g,
        &named,
        &[SearchMode::Baseline, SearchMode::FvaL],
        &QueryParams::default(),
    );
    print!("{}", bench::to_csv(&rows)?);
    Ok(())
}
