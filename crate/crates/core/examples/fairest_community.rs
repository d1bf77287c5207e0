//! Runs one query in every mode and prints the result document of the
//! fastest one.
//!
//! `cargo run --example fairest_community -- [vertices.tsv edges.tsv motif.tsv k]`

use std::path::PathBuf;

use ifcs::search::ResultDocument;
use ifcs::{run_query, Hin, Motif, QueryParams, SearchMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/example");
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg =
        |i: usize, default: &str| args.get(i).map_or_else(|| dir.join(default), PathBuf::from);
    let (vertices, edges, motif) = (
        arg(0, "vertices.tsv"),
        arg(1, "edges.tsv"),
        arg(2, "motif_q1.tsv"),
    );
    let k = args.get(3).map_or(Ok(2), |s| s.parse())?;

    let g = Hin::load(&vertices, &edges)?;
    let m = Motif::from_file(&motif)?;
    let p = QueryParams::with_k(k);

    println!(
        "{:<9}{:>8}{:>8}{:>11}{:>8}{:>10}",
        "mode", "visited", "checks", "instances", "pruned", "ms"
    );
    for mode in SearchMode::ALL {
        let r = run_query(&g, &m, &p, mode)?;
        let s = &r.stats;
        println!(
            "{:<9}{:>8}{:>8}{:>11}{:>8}{:>10.3}",
            mode.as_str(),
            s.visited_targets,
            s.existence_checks,
            s.instances_enumerated,
            s.components_pruned,
            s.wall_time_ms
        );
    }

    let r = run_query(&g, &m, &p, SearchMode::FvaL)?;
    print!(
        "{}",
        ResultDocument::new(&g, &motif.display().to_string(), &r).to_json()
    );
    Ok(())
}
