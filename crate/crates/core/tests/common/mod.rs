//! Random instance generation and an independent brute-force oracle.
//!
//! The oracle enumerates embeddings globally in query-id order with no
//! filtering, identifies instances by their embedded subgraph, and scores
//! communities with the direct pair-difference sum in exact arithmetic.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ifcs::cli::generate_motifs;
use ifcs::{Hin, Motif, QueryVertexId, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TYPES: [&str; 4] = ["A", "B", "C", "D"];

/// Random typed digraph with `n` vertices, `types` labels and about
/// `avg_degree * n` edges.
pub fn random_hin(rng: &mut ChaCha8Rng, n: usize, types: usize, avg_degree: f64) -> Hin {
    let mut vs = String::new();
    for i in 0..n {
        vs.push_str(&format!("x{i}\t{}\n", TYPES[rng.gen_range(0..types)]));
    }
    let mut es = String::new();
    let m = (avg_degree * n as f64).round() as usize;
    for _ in 0..m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            es.push_str(&format!("x{a}\tx{b}\n"));
        }
    }
    Hin::from_tsv(vs.as_bytes(), es.as_bytes()).unwrap()
}

/// Random connected motif over `size` vertices with at least two vertices
/// of the target's type.
pub fn random_motif(rng: &mut ChaCha8Rng, size: usize, types: usize) -> Motif {
    loop {
        let labels: Vec<String> = (0..size)
            .map(|_| TYPES[rng.gen_range(0..types)].to_owned())
            .collect();
        let mut edges = BTreeSet::new();
        for i in 1..size {
            let j = rng.gen_range(0..i);
            edges.insert(if rng.gen_bool(0.5) { (i, j) } else { (j, i) });
        }
        for _ in 0..rng.gen_range(0..size) {
            let a = rng.gen_range(0..size);
            let b = rng.gen_range(0..size);
            if a != b && !edges.contains(&(b, a)) {
                edges.insert((a, b));
            }
        }
        let candidates: Vec<usize> = (0..size)
            .filter(|&i| labels.iter().filter(|l| **l == labels[i]).count() >= 2)
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let target = candidates[rng.gen_range(0..candidates.len())];
        return Motif::new(labels, edges.into_iter().collect(), target).unwrap();
    }
}

/// Random typed digraph with planted clusters: edges follow a random type
/// schema (allowed ordered label pairs) and cross clusters with probability
/// `1 - p_in`.
pub fn clustered_hin(
    rng: &mut ChaCha8Rng,
    n: usize,
    types: usize,
    avg_degree: f64,
    clusters: usize,
    p_in: f64,
) -> Hin {
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..types)).collect();
    let cluster: Vec<usize> = (0..n).map(|_| rng.gen_range(0..clusters)).collect();
    let mut schema = Vec::new();
    for a in 0..types {
        for b in 0..types {
            if a != b && rng.gen_bool(0.4) {
                schema.push((a, b));
            }
        }
    }
    if schema.is_empty() {
        schema.push((0, 1));
    }
    let mut vs = String::new();
    for (i, &l) in labels.iter().enumerate() {
        vs.push_str(&format!("x{i}\t{}\n", TYPES[l]));
    }
    let mut es = String::new();
    let m = (avg_degree * n as f64).round() as usize;
    let (mut tries, mut added) = (0, 0);
    while added < m && tries < 200 * m {
        tries += 1;
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || !schema.contains(&(labels[a], labels[b])) {
            continue;
        }
        if cluster[a] != cluster[b] && !rng.gen_bool(1.0 - p_in) {
            continue;
        }
        es.push_str(&format!("x{a}\tx{b}\n"));
        added += 1;
    }
    Hin::from_tsv(vs.as_bytes(), es.as_bytes()).unwrap()
}

/// Drops each motif edge with probability 1/2 unless that disconnects it.
pub fn thin_motif(rng: &mut ChaCha8Rng, m: &Motif) -> Motif {
    let labels: Vec<String> = m.vertices().map(|u| m.label(u).to_owned()).collect();
    let mut edges: Vec<(usize, usize)> = m.edges().iter().map(|&(a, b)| (a.0, b.0)).collect();
    let mut i = 0;
    while i < edges.len() {
        if rng.gen_bool(0.5) {
            let mut fewer = edges.clone();
            fewer.remove(i);
            if Motif::new(labels.clone(), fewer.clone(), m.target().0).is_ok() {
                edges = fewer;
                continue;
            }
        }
        i += 1;
    }
    Motif::new(labels, edges, m.target().0).unwrap()
}

/// One random query: a graph, a motif and a `k`.
pub struct Instance {
    pub seed: u64,
    pub graph: Hin,
    pub motif: Motif,
    pub k: usize,
}

fn walk_motif(rng: &mut ChaCha8Rng, g: &Hin, size: usize, types: usize) -> Motif {
    generate_motifs(g, size, 1, rng.gen())
        .ok()
        .and_then(|mut v| v.pop())
        .unwrap_or_else(|| random_motif(rng, size, types))
}

/// Uniform random HIN; motif usually walked from the graph, sometimes
/// random. Most such instances have few or no communities.
pub fn uniform_instance(seed: u64, max_vertices: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let types = rng.gen_range(3..=4);
    let n = rng.gen_range(max_vertices / 2..=max_vertices);
    let degree = rng.gen_range(1.5..=5.0);
    let graph = random_hin(&mut rng, n, types, degree);
    let size = rng.gen_range(3..=5);
    let motif = if rng.gen_bool(0.8) {
        walk_motif(&mut rng, &graph, size, types)
    } else {
        random_motif(&mut rng, size, types)
    };
    let k = [1, 2, 2, 3][rng.gen_range(0..4)];
    Instance {
        seed,
        graph,
        motif,
        k,
    }
}

/// Clustered random HIN (5 to 10 clusters, 1% cross-cluster edges) with a
/// walked motif, thinned half of the time, and `k` in 2..=4.
pub fn random_instance(seed: u64, max_vertices: usize) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(max_vertices / 2..=max_vertices);
    let degree = rng.gen_range(2.0..=5.0);
    let types = rng.gen_range(3..=4);
    let clusters = rng.gen_range(5..=10);
    let graph = clustered_hin(&mut rng, n, types, degree, clusters, 0.99);
    let size = rng.gen_range(3..=5);
    let mut motif = walk_motif(&mut rng, &graph, size, types);
    if rng.gen_bool(0.5) {
        motif = thin_motif(&mut rng, &motif);
    }
    let k = rng.gen_range(2..=4);
    Instance {
        seed,
        graph,
        motif,
        k,
    }
}

/// A motif instance identified by its embedded subgraph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubgraphKey {
    pub target: VertexId,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
}

/// Every distinct instance in `g`, found without anchoring or filtering.
pub fn global_instances(g: &Hin, m: &Motif) -> Vec<SubgraphKey> {
    let n = m.vertex_count();
    let pools: Vec<Vec<VertexId>> = m
        .vertices()
        .map(|u| {
            g.vertices()
                .filter(|&v| g.label_name(v) == m.label(u))
                .collect()
        })
        .collect();
    let mut keys = BTreeSet::new();
    let mut map = vec![VertexId(u32::MAX); n];
    fn go(
        g: &Hin,
        m: &Motif,
        pools: &[Vec<VertexId>],
        i: usize,
        map: &mut Vec<VertexId>,
        keys: &mut BTreeSet<SubgraphKey>,
    ) {
        let n = pools.len();
        if i == n {
            let mut vertices = map.clone();
            vertices.sort_unstable();
            let mut edges: Vec<_> = m
                .edges()
                .iter()
                .map(|&(a, b)| (map[a.0], map[b.0]))
                .collect();
            edges.sort_unstable();
            keys.insert(SubgraphKey {
                target: map[m.target().0],
                vertices,
                edges,
            });
            return;
        }
        for &v in &pools[i] {
            if map[..i].contains(&v) {
                continue;
            }
            let ok = m.edges().iter().all(|&(a, b)| {
                let (a, b) = (a.0, b.0);
                if a > i || b > i || (a != i && b != i) {
                    return true;
                }
                let x = if a == i { v } else { map[a] };
                let y = if b == i { v } else { map[b] };
                g.has_edge(x, y)
            });
            if ok {
                map[i] = v;
                go(g, m, pools, i + 1, map, keys);
            }
        }
        map[i] = VertexId(u32::MAX);
    }
    go(g, m, &pools, 0, &mut map, &mut keys);
    keys.into_iter().collect()
}

/// Per-anchor instance counts from the global enumeration.
pub fn anchored_counts(g: &Hin, m: &Motif) -> BTreeMap<VertexId, u64> {
    let mut counts = BTreeMap::new();
    for k in global_instances(g, m) {
        *counts.entry(k.target).or_insert(0) += 1;
    }
    counts
}

/// Exact fraction `num / den`.
#[derive(Clone, Copy, Debug)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn cmp(&self, o: &Ratio) -> std::cmp::Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// Gini fairness by the direct double sum, exactly.
pub fn oracle_fs(levels: &[u64]) -> Ratio {
    let mut num = 0u128;
    for &a in levels {
        for &b in levels {
            num += a.abs_diff(b) as u128;
        }
    }
    let total: u128 = levels.iter().map(|&s| s as u128).sum();
    Ratio {
        num,
        den: 2 * levels.len() as u128 * total,
    }
}

#[derive(Clone, Debug)]
pub struct OracleCommunity {
    pub members: Vec<VertexId>,
    pub levels: BTreeMap<VertexId, u64>,
    pub score: Ratio,
}

#[derive(Clone, Debug)]
pub struct OracleAnswer {
    /// Target vertices surviving the deletion fixpoint.
    pub fixpoint: BTreeSet<VertexId>,
    /// M-graph edges among the fixpoint vertices.
    pub m_edges: BTreeSet<(VertexId, VertexId)>,
    /// Every component of size at least `k`, scored.
    pub all: Vec<OracleCommunity>,
    /// Components attaining the minimum score, by smallest member.
    pub best: Vec<OracleCommunity>,
}

fn find(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
    let p = parent[&v];
    if p == v {
        return v;
    }
    let r = find(parent, p);
    parent.insert(v, r);
    r
}

/// Fixpoint, M-graph, components and scores from the global instance list.
pub fn oracle(g: &Hin, m: &Motif, k: usize) -> OracleAnswer {
    let instances = global_instances(g, m);
    let tt = m.target_type().to_owned();
    let is_target_type = |v: VertexId| g.label_name(v) == tt;
    let mut alive: BTreeSet<VertexId> = g.vertices().filter(|&v| is_target_type(v)).collect();
    let valid = |key: &SubgraphKey, alive: &BTreeSet<VertexId>| {
        key.vertices
            .iter()
            .all(|&v| !is_target_type(v) || alive.contains(&v))
    };
    loop {
        let keep: BTreeSet<VertexId> = instances
            .iter()
            .filter(|key| valid(key, &alive))
            .map(|key| key.target)
            .collect();
        if keep == alive {
            break;
        }
        alive = keep;
    }
    let live: Vec<&SubgraphKey> = instances.iter().filter(|key| valid(key, &alive)).collect();
    let mut m_edges = BTreeSet::new();
    for key in &live {
        for &v in &key.vertices {
            if v != key.target && is_target_type(v) {
                m_edges.insert((key.target, v));
            }
        }
    }

    let mut parent: BTreeMap<VertexId, VertexId> = alive.iter().map(|&v| (v, v)).collect();
    for &(a, b) in &m_edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent.insert(ra.max(rb), ra.min(rb));
        }
    }
    let mut groups: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &v in &alive {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(v);
    }

    let mut all = Vec::new();
    for members in groups.into_values() {
        if members.len() < k {
            continue;
        }
        let set: BTreeSet<VertexId> = members.iter().copied().collect();
        // Community-restricted counts: instances whose target-type vertices
        // all lie in the community.
        let mut levels: BTreeMap<VertexId, u64> = members.iter().map(|&v| (v, 0)).collect();
        for key in &live {
            if set.contains(&key.target)
                && key
                    .vertices
                    .iter()
                    .all(|&v| !is_target_type(v) || set.contains(&v))
            {
                *levels.get_mut(&key.target).unwrap() += 1;
            }
        }
        let s: Vec<u64> = levels.values().copied().collect();
        all.push(OracleCommunity {
            members,
            score: oracle_fs(&s),
            levels,
        });
    }
    let mut best: Vec<OracleCommunity> = Vec::new();
    for c in &all {
        match best.first().map(|b| c.score.cmp(&b.score)) {
            None | Some(std::cmp::Ordering::Less) => best = vec![c.clone()],
            Some(std::cmp::Ordering::Equal) => best.push(c.clone()),
            Some(std::cmp::Ordering::Greater) => {}
        }
    }
    best.sort_by_key(|c| c.members[0]);
    OracleAnswer {
        fixpoint: alive,
        m_edges,
        all,
        best,
    }
}

/// Describes the first disagreement between a search result and the
/// oracle, if any.
pub fn compare(result: &ifcs::CommunityResult, expected: &OracleAnswer) -> Option<String> {
    if result.communities.len() != expected.best.len() {
        return Some(format!(
            "{}: {} communities, oracle {}",
            result.mode,
            result.communities.len(),
            expected.best.len()
        ));
    }
    for (c, o) in result.communities.iter().zip(&expected.best) {
        if c.members != o.members {
            return Some(format!(
                "{}: members {:?} vs {:?}",
                result.mode, c.members, o.members
            ));
        }
        if c.active_levels != o.levels {
            return Some(format!(
                "{}: levels {:?} vs {:?}",
                result.mode, c.active_levels, o.levels
            ));
        }
        let got = Ratio {
            num: c.fairness_score.numerator(),
            den: c.fairness_score.denominator(),
        };
        if got.cmp(&o.score) != std::cmp::Ordering::Equal {
            return Some(format!(
                "{}: score {} vs {}",
                result.mode,
                got.value(),
                o.score.value()
            ));
        }
    }
    None
}

pub fn qv(i: usize) -> QueryVertexId {
    QueryVertexId(i)
}

pub fn example_graph() -> (Hin, Motif) {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data/example");
    let g = Hin::load(
        std::path::Path::new(&format!("{dir}/vertices.tsv")),
        std::path::Path::new(&format!("{dir}/edges.tsv")),
    )
    .unwrap();
    let m = Motif::from_file(std::path::Path::new(&format!("{dir}/motif_q1.tsv"))).unwrap();
    (g, m)
}
