//! Target-aware motifs: small connected typed patterns with one designated
//! target vertex.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use thiserror::Error;

use crate::hin::{tsv_rows, GraphError};

/// Local id of a motif vertex, independent of data-graph ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QueryVertexId(pub usize);

/// Default upper bound on motif size.
pub const DEFAULT_MAX_MOTIF_VERTICES: usize = 12;
pub const MIN_MOTIF_VERTICES: usize = 3;

#[derive(Debug, Error)]
pub enum MotifError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: edge references unknown motif vertex `{id}`")]
    UnknownVertex { line: usize, id: String },
    #[error("motif vertex `{0}` defined twice")]
    DuplicateVertex(String),
    #[error("motif edge {0} -> {1} listed twice")]
    DuplicateEdge(String, String),
    #[error("motif self-loop on `{0}`")]
    SelfLoop(String),
    #[error("motif has no target line")]
    MissingTarget,
    #[error("motif has more than one target line")]
    DuplicateTarget,
    #[error("target `{0}` is not a motif vertex")]
    UnknownTarget(String),
    #[error("motif is not connected")]
    Disconnected,
    #[error("motif has {0} vertices, at least {MIN_MOTIF_VERTICES} required")]
    TooSmall(usize),
    #[error("motif has {size} vertices, cap is {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("empty type label on motif vertex `{0}`")]
    EmptyLabel(String),
    #[error(transparent)]
    Io(#[from] GraphError),
}

/// Non-fatal findings about a motif.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MotifWarning {
    /// Fewer than two query vertices carry the target's type, so no data
    /// vertex can acquire M-neighbors.
    SingleTargetTypeVertex { target_type: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MotifLimits {
    pub max_vertices: usize,
}

impl Default for MotifLimits {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_MOTIF_VERTICES,
        }
    }
}

/// A validated target-aware motif.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Motif {
    names: Vec<String>,
    labels: Vec<String>,
    edges: Vec<(QueryVertexId, QueryVertexId)>,
    target: QueryVertexId,
    out_adj: Vec<Vec<QueryVertexId>>,
    in_adj: Vec<Vec<QueryVertexId>>,
}

/// BFS order of a motif anchored at its target vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BfsOrder {
    order: Vec<QueryVertexId>,
    index: Vec<usize>,
}

impl BfsOrder {
    pub fn order(&self) -> &[QueryVertexId] {
        &self.order
    }

    /// Position of `u` in the order.
    pub fn index(&self, u: QueryVertexId) -> usize {
        self.index[u.0]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

impl Motif {
    /// Builds a motif from per-vertex labels, directed edges over vertex
    /// positions, and the target position.
    pub fn new(
        labels: Vec<String>,
        edges: Vec<(usize, usize)>,
        target: usize,
    ) -> Result<Motif, MotifError> {
        Self::with_limits(labels, edges, target, MotifLimits::default())
    }

    pub fn with_limits(
        labels: Vec<String>,
        edges: Vec<(usize, usize)>,
        target: usize,
        limits: MotifLimits,
    ) -> Result<Motif, MotifError> {
        let names = (0..labels.len()).map(|i| i.to_string()).collect();
        Self::build(names, labels, edges, target, limits)
    }

    fn build(
        names: Vec<String>,
        labels: Vec<String>,
        edges: Vec<(usize, usize)>,
        target: usize,
        limits: MotifLimits,
    ) -> Result<Motif, MotifError> {
        let n = labels.len();
        if n < MIN_MOTIF_VERTICES {
            return Err(MotifError::TooSmall(n));
        }
        if n > limits.max_vertices {
            return Err(MotifError::TooLarge {
                size: n,
                cap: limits.max_vertices,
            });
        }
        if let Some(i) = labels.iter().position(|l| l.is_empty()) {
            return Err(MotifError::EmptyLabel(names[i].clone()));
        }
        if target >= n {
            return Err(MotifError::UnknownTarget(target.to_string()));
        }
        let mut seen = BTreeSet::new();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(MotifError::UnknownVertex {
                    line: 0,
                    id: a.max(b).to_string(),
                });
            }
            if a == b {
                return Err(MotifError::SelfLoop(names[a].clone()));
            }
            if !seen.insert((a, b)) {
                return Err(MotifError::DuplicateEdge(
                    names[a].clone(),
                    names[b].clone(),
                ));
            }
            out_adj[a].push(QueryVertexId(b));
            in_adj[b].push(QueryVertexId(a));
        }
        out_adj.iter_mut().for_each(|l| l.sort_unstable());
        in_adj.iter_mut().for_each(|l| l.sort_unstable());
        let motif = Motif {
            names,
            labels,
            edges: seen
                .into_iter()
                .map(|(a, b)| (QueryVertexId(a), QueryVertexId(b)))
                .collect(),
            target: QueryVertexId(target),
            out_adj,
            in_adj,
        };
        if motif.bfs_order().len() != n {
            return Err(MotifError::Disconnected);
        }
        Ok(motif)
    }

    /// Parses the motif TSV format: `v<TAB>id<TAB>label`, `e<TAB>src<TAB>dst`
    /// and a single `target<TAB>id` line.
    pub fn parse<R: BufRead>(reader: R) -> Result<Motif, MotifError> {
        Self::parse_with_limits(reader, MotifLimits::default())
    }

    pub fn parse_with_limits<R: BufRead>(
        reader: R,
        limits: MotifLimits,
    ) -> Result<Motif, MotifError> {
        let mut names: Vec<String> = Vec::new();
        let mut labels = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut raw_edges: Vec<(usize, String, String)> = Vec::new();
        let mut target: Option<(usize, String)> = None;
        for row in tsv_rows(reader, "motif") {
            let (line, fields) = row?;
            let bad = |message: String| MotifError::Parse { line, message };
            match fields[0].as_str() {
                "v" => {
                    let [_, id, label] = fields.as_slice() else {
                        return Err(bad("expected `v<TAB>id<TAB>label`".into()));
                    };
                    if index.insert(id.clone(), names.len()).is_some() {
                        return Err(MotifError::DuplicateVertex(id.clone()));
                    }
                    names.push(id.clone());
                    labels.push(label.clone());
                }
                "e" => {
                    let [_, src, dst] = fields.as_slice() else {
                        return Err(bad("expected `e<TAB>src<TAB>dst`".into()));
                    };
                    raw_edges.push((line, src.clone(), dst.clone()));
                }
                "target" => {
                    let [_, id] = fields.as_slice() else {
                        return Err(bad("expected `target<TAB>id`".into()));
                    };
                    if target.is_some() {
                        return Err(MotifError::DuplicateTarget);
                    }
                    target = Some((line, id.clone()));
                }
                other => return Err(bad(format!("unknown record type `{other}`"))),
            }
        }
        let lookup = |line: usize, id: &str| {
            index
                .get(id)
                .copied()
                .ok_or_else(|| MotifError::UnknownVertex {
                    line,
                    id: id.to_owned(),
                })
        };
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (line, src, dst) in &raw_edges {
            edges.push((lookup(*line, src)?, lookup(*line, dst)?));
        }
        let (_, target_name) = target.ok_or(MotifError::MissingTarget)?;
        let target = index
            .get(&target_name)
            .copied()
            .ok_or(MotifError::UnknownTarget(target_name))?;
        let motif = Self::build(names, labels, edges, target, limits)?;
        for w in motif.warnings() {
            log::warn!("{w:?}");
        }
        Ok(motif)
    }

    pub fn from_file(path: &Path) -> Result<Motif, MotifError> {
        let file = File::open(path).map_err(|source| GraphError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(BufReader::new(file))
    }

    /// Serializes to the motif TSV format using the original vertex names.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        for (name, label) in self.names.iter().zip(&self.labels) {
            let _ = writeln!(s, "v\t{name}\t{label}");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "e\t{}\t{}", self.names[a.0], self.names[b.0]);
        }
        let _ = writeln!(s, "target\t{}", self.names[self.target.0]);
        s
    }

    pub fn warnings(&self) -> Vec<MotifWarning> {
        let t = self.target_type();
        if self.labels.iter().filter(|l| *l == t).count() < 2 {
            vec![MotifWarning::SingleTargetTypeVertex {
                target_type: t.to_owned(),
            }]
        } else {
            Vec::new()
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = QueryVertexId> {
        (0..self.labels.len()).map(QueryVertexId)
    }

    pub fn edges(&self) -> &[(QueryVertexId, QueryVertexId)] {
        &self.edges
    }

    pub fn target(&self) -> QueryVertexId {
        self.target
    }

    pub fn label(&self, u: QueryVertexId) -> &str {
        &self.labels[u.0]
    }

    pub fn name(&self, u: QueryVertexId) -> &str {
        &self.names[u.0]
    }

    /// Type label of the target vertex; it defines community membership.
    pub fn target_type(&self) -> &str {
        &self.labels[self.target.0]
    }

    pub fn has_edge(&self, a: QueryVertexId, b: QueryVertexId) -> bool {
        self.out_adj[a.0].binary_search(&b).is_ok()
    }

    pub fn out_neighbors(&self, u: QueryVertexId) -> &[QueryVertexId] {
        &self.out_adj[u.0]
    }

    pub fn in_neighbors(&self, u: QueryVertexId) -> &[QueryVertexId] {
        &self.in_adj[u.0]
    }

    /// In- and out-neighbors of `u`, ascending and deduplicated.
    pub fn neighbors(&self, u: QueryVertexId) -> Vec<QueryVertexId> {
        let mut all: Vec<_> = self.out_adj[u.0]
            .iter()
            .chain(&self.in_adj[u.0])
            .copied()
            .collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Breadth-first order from the target, visiting neighbors (either
    /// direction) in ascending id order.
    pub fn bfs_order(&self) -> BfsOrder {
        let n = self.labels.len();
        let mut index = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.target]);
        index[self.target.0] = 0;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in self.neighbors(u) {
                if index[w.0] == usize::MAX {
                    index[w.0] = order.len() + queue.len();
                    queue.push_back(w);
                }
            }
        }
        BfsOrder { order, index }
    }
}
