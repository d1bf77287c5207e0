//! Enumerates motif instances around each target-type vertex and reports
//! which other target-type vertices they reach.

use std::path::Path;

use ifcs::{Hin, Matcher, Motif};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example");
    let g = Hin::load(&dir.join("vertices.tsv"), &dir.join("edges.tsv"))?;
    let m = Motif::from_file(&dir.join("motif_q1.tsv"))?;
    let mt = Matcher::new(&g, &m);
    let order: Vec<&str> = m.bfs_order().order().iter().map(|&u| m.name(u)).collect();
    println!(
        "motif: {} vertices, target type {}, matching order {order:?}",
        m.vertex_count(),
        m.target_type()
    );
    println!("target-fixing automorphisms: {}", mt.automorphism_count());

    let tt = g.label_id(m.target_type()).unwrap();
    for v in g.vertices_with_label(tt) {
        let mut reached = Vec::new();
        let count = mt.enumerate_instances_around(&g, v, |inst| {
            for &w in inst.mapping() {
                if w != v && g.label(w) == tt && !reached.contains(&w) {
                    reached.push(w);
                }
            }
        })?;
        reached.sort();
        let names: Vec<&str> = reached.iter().map(|&w| g.external_id(w)).collect();
        println!(
            "{:>4}: {count:>2} instances, reaches {names:?}",
            g.external_id(v)
        );
    }
    Ok(())
}
