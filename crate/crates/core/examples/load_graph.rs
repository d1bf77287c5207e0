//! Loads a typed graph from TSV and inspects labels, neighbor label
//! frequencies and weak components.
//!
//! `cargo run --example load_graph -- [vertices.tsv edges.tsv]`

use std::path::PathBuf;

use ifcs::{weakly_connected_components, Hin};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/dblp_small");
    let mut args = std::env::args().skip(1);
    let vertices = args
        .next()
        .map_or_else(|| dir.join("vertices.tsv"), PathBuf::from);
    let edges = args
        .next()
        .map_or_else(|| dir.join("edges.tsv"), PathBuf::from);

    let mut g = Hin::load(&vertices, &edges)?;
    println!(
        "{} vertices, {} edges ({} duplicate rows collapsed)",
        g.vertex_count(),
        g.edge_count(),
        g.duplicate_edges()
    );
    for i in 0..g.labels().len() {
        let l = ifcs::LabelId(i as u32);
        println!("  {:<8} {}", g.labels().name(l), g.label_count(l));
    }

    if let Some(v) = g.vertices().next() {
        print!("nlf({}):", g.external_id(v));
        for e in g.nlf(v) {
            print!(
                " {}=in {}/out {}",
                g.labels().name(e.label),
                e.in_count,
                e.out_count
            );
        }
        println!();
    }

    let show = |g: &Hin| {
        for c in weakly_connected_components(g) {
            let ids: Vec<&str> = c.iter().map(|&v| g.external_id(v)).collect();
            println!("  {ids:?}");
        }
    };
    println!("components:");
    show(&g);

    // Deleting the most connected vertex may split the graph.
    let hub = g
        .vertices()
        .max_by_key(|&v| g.out_neighbors(v).len() + g.in_neighbors(v).len())
        .unwrap();
    let name = g.external_id(hub).to_owned();
    g.delete_vertex(hub)?;
    println!("after deleting {name}:");
    show(&g);
    Ok(())
}
