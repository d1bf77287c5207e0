mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use ifcs::graph::Adjacency;
use ifcs::{weakly_connected_components, DiGraph, Hin, VertexId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DBLP: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data/dblp_small");

#[test]
fn dblp_duplicates_collapse_to_distinct_pairs() {
    let edges_text = fs::read_to_string(format!("{DBLP}/edges.tsv")).unwrap();
    let distinct: BTreeSet<(&str, &str)> = edges_text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut f = l.split('\t');
            (f.next().unwrap(), f.next().unwrap())
        })
        .collect();
    let rows = edges_text.lines().filter(|l| !l.trim().is_empty()).count();

    let g = Hin::load(
        Path::new(&format!("{DBLP}/vertices.tsv")),
        Path::new(&format!("{DBLP}/edges.tsv")),
    )
    .unwrap();
    assert_eq!(g.vertex_count(), 10);
    assert_eq!(g.edge_count(), distinct.len());
    assert_eq!(g.duplicate_edges(), rows - distinct.len());
    let got: BTreeSet<(String, String)> = g
        .edges()
        .map(|(u, v)| (g.external_id(u).to_owned(), g.external_id(v).to_owned()))
        .collect();
    let want: BTreeSet<(String, String)> = distinct
        .iter()
        .map(|&(a, b)| (a.to_owned(), b.to_owned()))
        .collect();
    assert_eq!(got, want);
}

#[test]
fn nlf_survives_a_thousand_mutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut g = common::random_hin(&mut rng, 400, 4, 4.0);
    let mut deletions = 0;
    while deletions < 1000 {
        let live: Vec<VertexId> = g.vertices().collect();
        if live.is_empty() {
            break;
        }
        let v = live[rng.gen_range(0..live.len())];
        g.delete_vertex(v).unwrap();
        deletions += 1;
        if deletions % 50 == 0 {
            for w in g.vertices() {
                assert_eq!(g.nlf(w), g.nlf_from_scratch(w).as_slice(), "vertex {w}");
            }
        }
    }
    assert!(g.is_empty() || deletions == 1000);
    for w in g.vertices() {
        assert_eq!(g.nlf(w), g.nlf_from_scratch(w).as_slice());
    }
}

/// Union-find over the undirected projection, grouped by root.
fn union_find_components(n: usize, edges: &[(usize, usize)]) -> BTreeSet<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra] = rb;
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let r = root(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }
    groups.into_values().collect()
}

#[test]
fn wcc_matches_union_find_on_random_digraphs() {
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 50;
        let edges: Vec<(usize, usize)> = (0..rng.gen_range(10..60))
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .filter(|(a, b)| a != b)
            .collect();
        let mut g = DiGraph::new();
        for v in 0..n {
            g.add_vertex(VertexId(v as u32));
        }
        for &(a, b) in &edges {
            g.add_edge(VertexId(a as u32), VertexId(b as u32));
        }
        let got: BTreeSet<Vec<usize>> = weakly_connected_components(&g)
            .into_iter()
            .map(|c| c.into_iter().map(|v| v.index()).collect())
            .collect();
        assert_eq!(got, union_find_components(n, &edges), "seed {seed}");
    }
}

proptest! {
    #[test]
    fn wcc_is_an_ordered_partition(seed in any::<u64>(), n in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_hin(&mut rng, n, 3, 1.2);
        let comps = weakly_connected_components(&g);
        let mut seen = BTreeSet::new();
        for c in &comps {
            prop_assert!(c.windows(2).all(|w| w[0] < w[1]));
            for v in c {
                prop_assert!(seen.insert(*v));
            }
        }
        prop_assert_eq!(seen, g.vertices().collect::<BTreeSet<_>>());
        prop_assert!(comps.windows(2).all(|w| w[0][0] < w[1][0]));
        // Every edge stays inside one component.
        let idx = ifcs::graph::component_index(&g);
        for (u, v) in g.edges() {
            prop_assert_eq!(idx[&u], idx[&v]);
        }
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>(), n in 1usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_hin(&mut rng, n, 4, 2.0);
        let (mut vs, mut es) = (Vec::new(), Vec::new());
        g.write_tsv(&mut vs, &mut es).unwrap();
        let h = Hin::from_tsv(vs.as_slice(), es.as_slice()).unwrap();
        prop_assert_eq!(h.vertex_count(), g.vertex_count());
        prop_assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        for v in g.vertices() {
            prop_assert_eq!(h.external_id(v), g.external_id(v));
            prop_assert_eq!(h.label_name(v), g.label_name(v));
            prop_assert_eq!(h.nlf_from_scratch(v), g.nlf_from_scratch(v));
        }
    }

    #[test]
    fn type_index_tracks_deletions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = common::random_hin(&mut rng, 30, 3, 2.0);
        let victims: Vec<VertexId> = g.vertices().filter(|_| rng.gen_bool(0.3)).collect();
        g.delete_vertices(victims.iter().copied()).unwrap();
        for &l in &["A", "B", "C"] {
            let Some(id) = g.label_id(l) else { continue };
            let by_index: Vec<VertexId> = g.vertices_with_label(id).collect();
            let by_scan: Vec<VertexId> = g.vertices().filter(|&v| g.label_name(v) == l).collect();
            prop_assert_eq!(by_index, by_scan);
        }
        for v in victims {
            prop_assert!(!g.contains(v));
        }
        prop_assert_eq!(g.vertex_ids().len(), g.vertex_count());
    }
}
