//! Heterogeneous information network storage.
//!
//! An [`Hin`] is a simple directed graph whose vertices carry a type label.
//! Adjacency lists are kept sorted, every vertex carries its neighborhood
//! label frequency (NLF) signature, and deletions keep both up to date so
//! that filters can run against a shrinking graph without recomputation.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{Adjacency, VertexId};

/// Interned code of a vertex type label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub u32);

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("{source_name}:{line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },
    #[error("{source_name}:{line}: edge references unknown vertex `{id}`")]
    UnknownEndpoint {
        source_name: String,
        line: usize,
        id: String,
    },
    #[error("{source_name}:{line}: self-loop on vertex `{id}`")]
    SelfLoop {
        source_name: String,
        line: usize,
        id: String,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge {0} -> {1} is not in the graph")]
    MissingEdge(VertexId, VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoopEdge(VertexId),
    #[error("vertex `{0}` defined twice")]
    DuplicateVertex(String),
    #[error("empty type label for vertex `{0}`")]
    EmptyLabel(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

/// Per-label in/out neighbor counts of one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NlfEntry {
    pub label: LabelId,
    pub in_count: u32,
    pub out_count: u32,
}

/// Label string interner. Label ids stay valid across every graph derived
/// from the same load (deletions, induced subgraphs, samples).
#[derive(Clone, Debug, Default)]
pub struct Labels {
    names: Vec<String>,
    lookup: HashMap<String, LabelId>,
}

impl Labels {
    pub fn intern(&mut self, name: &str) -> LabelId {
        if let Some(&id) = self.lookup.get(name) {
            return id;
        }
        let id = LabelId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.lookup.insert(name.to_owned(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<LabelId> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, id: LabelId) -> &str {
        &self.names[id.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Typed directed graph with per-vertex NLF signatures.
#[derive(Clone, Debug, Default)]
pub struct Hin {
    labels: Labels,
    external_ids: Vec<String>,
    id_lookup: HashMap<String, VertexId>,
    vertex_label: Vec<LabelId>,
    alive: Vec<bool>,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    type_index: Vec<BTreeSet<VertexId>>,
    nlf: Vec<Vec<NlfEntry>>,
    live_vertices: usize,
    edge_count: usize,
    duplicate_edges: usize,
}

impl Hin {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex with a caller-visible external id and a type label.
    pub fn add_vertex(&mut self, external_id: &str, label: &str) -> Result<VertexId, GraphError> {
        if label.is_empty() {
            return Err(GraphError::EmptyLabel(external_id.to_owned()));
        }
        if self.id_lookup.contains_key(external_id) {
            return Err(GraphError::DuplicateVertex(external_id.to_owned()));
        }
        let id = VertexId(self.external_ids.len() as u32);
        let label = self.labels.intern(label);
        self.external_ids.push(external_id.to_owned());
        self.id_lookup.insert(external_id.to_owned(), id);
        self.vertex_label.push(label);
        self.alive.push(true);
        self.out_adj.push(Vec::new());
        self.in_adj.push(Vec::new());
        self.nlf.push(Vec::new());
        if self.type_index.len() <= label.0 as usize {
            self.type_index
                .resize_with(label.0 as usize + 1, BTreeSet::new);
        }
        self.type_index[label.0 as usize].insert(id);
        self.live_vertices += 1;
        Ok(id)
    }

    /// Adds `u -> v`. Returns `Ok(false)` when the edge already existed.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoopEdge(u));
        }
        let pos = match self.out_adj[u.index()].binary_search(&v) {
            Ok(_) => {
                self.duplicate_edges += 1;
                return Ok(false);
            }
            Err(pos) => pos,
        };
        self.out_adj[u.index()].insert(pos, v);
        let pos = self.in_adj[v.index()].binary_search(&u).unwrap_err();
        self.in_adj[v.index()].insert(pos, u);
        let (lu, lv) = (self.vertex_label[u.index()], self.vertex_label[v.index()]);
        bump_nlf(&mut self.nlf[u.index()], lv, 0, 1);
        bump_nlf(&mut self.nlf[v.index()], lu, 1, 0);
        self.edge_count += 1;
        Ok(true)
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.labels.get(name)
    }

    pub fn label(&self, v: VertexId) -> LabelId {
        self.vertex_label[v.index()]
    }

    pub fn label_name(&self, v: VertexId) -> &str {
        self.labels.name(self.label(v))
    }

    pub fn external_id(&self, v: VertexId) -> &str {
        &self.external_ids[v.index()]
    }

    pub fn vertex_by_external(&self, id: &str) -> Option<VertexId> {
        self.id_lookup
            .get(id)
            .copied()
            .filter(|&v| self.contains(v))
    }

    /// Live vertices in ascending id order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| VertexId(i as u32))
    }

    /// Live vertices carrying `label`, ascending.
    pub fn vertices_with_label(&self, label: LabelId) -> impl Iterator<Item = VertexId> + '_ {
        self.type_index
            .get(label.0 as usize)
            .into_iter()
            .flat_map(|s| s.iter().copied())
    }

    pub fn label_count(&self, label: LabelId) -> usize {
        self.type_index.get(label.0 as usize).map_or(0, |s| s.len())
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v.index()]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v.index()]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.out_adj[u.index()].binary_search(&v).is_ok()
    }

    /// Sorted NLF signature of `v`; labels with zero in and out counts are absent.
    pub fn nlf(&self, v: VertexId) -> &[NlfEntry] {
        &self.nlf[v.index()]
    }

    /// `(in_count, out_count)` of neighbors of `v` labelled `label`.
    pub fn nlf_count(&self, v: VertexId, label: LabelId) -> (u32, u32) {
        let entries = &self.nlf[v.index()];
        match entries.binary_search_by_key(&label, |e| e.label) {
            Ok(i) => (entries[i].in_count, entries[i].out_count),
            Err(_) => (0, 0),
        }
    }

    /// Recomputes the NLF signature of `v` from its adjacency lists.
    pub fn nlf_from_scratch(&self, v: VertexId) -> Vec<NlfEntry> {
        let mut entries = Vec::new();
        for &w in &self.in_adj[v.index()] {
            bump_nlf(&mut entries, self.label(w), 1, 0);
        }
        for &w in &self.out_adj[v.index()] {
            bump_nlf(&mut entries, self.label(w), 0, 1);
        }
        entries
    }

    pub fn vertex_count(&self) -> usize {
        self.live_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Number of duplicate edges collapsed while building this graph.
    pub fn duplicate_edges(&self) -> usize {
        self.duplicate_edges
    }

    pub fn is_empty(&self) -> bool {
        self.live_vertices == 0
    }

    /// All live edges in ascending `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices()
            .flat_map(move |u| self.out_adj[u.index()].iter().map(move |&v| (u, v)))
    }

    /// Removes one vertex and its incident edges.
    pub fn delete_vertex(&mut self, v: VertexId) -> Result<(), GraphError> {
        self.check(v)?;
        let label = self.label(v);
        let outs = std::mem::take(&mut self.out_adj[v.index()]);
        for w in outs {
            let list = &mut self.in_adj[w.index()];
            if let Ok(i) = list.binary_search(&v) {
                list.remove(i);
            }
            bump_nlf(&mut self.nlf[w.index()], label, -1, 0);
            self.edge_count -= 1;
        }
        let ins = std::mem::take(&mut self.in_adj[v.index()]);
        for w in ins {
            let list = &mut self.out_adj[w.index()];
            if let Ok(i) = list.binary_search(&v) {
                list.remove(i);
            }
            bump_nlf(&mut self.nlf[w.index()], label, 0, -1);
            self.edge_count -= 1;
        }
        self.nlf[v.index()].clear();
        self.alive[v.index()] = false;
        self.type_index[label.0 as usize].remove(&v);
        self.live_vertices -= 1;
        Ok(())
    }

    /// Deletes every vertex in `victims`. All ids are validated first, so an
    /// unknown id leaves the graph untouched.
    pub fn delete_vertices<I>(&mut self, victims: I) -> Result<(), GraphError>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let victims: BTreeSet<VertexId> = victims.into_iter().collect();
        for &v in &victims {
            self.check(v)?;
        }
        for v in victims {
            self.delete_vertex(v)?;
        }
        Ok(())
    }

    /// A graph with the same id space holding exactly `edges` and their
    /// endpoints.
    pub fn induced_subgraph<I>(&self, edges: I) -> Result<Hin, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let edges: BTreeSet<(VertexId, VertexId)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            if !self.has_edge(u, v) {
                return Err(GraphError::MissingEdge(u, v));
            }
        }
        let mut keep = vec![false; self.alive.len()];
        for &(u, v) in &edges {
            keep[u.index()] = true;
            keep[v.index()] = true;
        }
        let mut out = self.empty_like(&keep);
        for (u, v) in edges {
            out.add_edge(u, v)?;
        }
        Ok(out)
    }

    /// Subgraph induced by a vertex set (all edges among kept vertices).
    pub fn induced_on_vertices<I>(&self, vertices: I) -> Result<Hin, GraphError>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let mut keep = vec![false; self.alive.len()];
        for v in vertices {
            self.check(v)?;
            keep[v.index()] = true;
        }
        let mut out = self.empty_like(&keep);
        for (u, v) in self.edges() {
            if keep[u.index()] && keep[v.index()] {
                out.add_edge(u, v)?;
            }
        }
        Ok(out)
    }

    fn empty_like(&self, keep: &[bool]) -> Hin {
        let n = self.alive.len();
        let mut type_index = vec![BTreeSet::new(); self.type_index.len()];
        let mut live = 0;
        for (i, &k) in keep.iter().enumerate() {
            if k {
                type_index[self.vertex_label[i].0 as usize].insert(VertexId(i as u32));
                live += 1;
            }
        }
        Hin {
            labels: self.labels.clone(),
            external_ids: self.external_ids.clone(),
            id_lookup: self.id_lookup.clone(),
            vertex_label: self.vertex_label.clone(),
            alive: keep.to_vec(),
            out_adj: vec![Vec::new(); n],
            in_adj: vec![Vec::new(); n],
            type_index,
            nlf: vec![Vec::new(); n],
            live_vertices: live,
            edge_count: 0,
            duplicate_edges: 0,
        }
    }

    /// Parses the vertex and edge TSV streams.
    ///
    /// Vertex rows are `id<TAB>label`, edge rows `src<TAB>dst`. Blank lines and
    /// lines starting with `#` are skipped. Duplicate edges are collapsed and
    /// counted; self-loops are rejected.
    pub fn from_tsv<V: BufRead, E: BufRead>(vertices: V, edges: E) -> Result<Hin, GraphError> {
        Self::from_named_tsv(vertices, "vertices", edges, "edges")
    }

    fn from_named_tsv<V: BufRead, E: BufRead>(
        vertices: V,
        vertices_name: &str,
        edges: E,
        edges_name: &str,
    ) -> Result<Hin, GraphError> {
        let mut g = Hin::new();
        for row in tsv_rows(vertices, vertices_name) {
            let (line, fields) = row?;
            let [id, label] = two_fields(&fields, vertices_name, line)?;
            g.add_vertex(id, label).map_err(|e| GraphError::Parse {
                source_name: vertices_name.to_owned(),
                line,
                message: e.to_string(),
            })?;
        }
        for row in tsv_rows(edges, edges_name) {
            let (line, fields) = row?;
            let [src, dst] = two_fields(&fields, edges_name, line)?;
            let lookup = |id: &str| {
                g.vertex_by_external(id)
                    .ok_or_else(|| GraphError::UnknownEndpoint {
                        source_name: edges_name.to_owned(),
                        line,
                        id: id.to_owned(),
                    })
            };
            let (u, v) = (lookup(src)?, lookup(dst)?);
            if u == v {
                return Err(GraphError::SelfLoop {
                    source_name: edges_name.to_owned(),
                    line,
                    id: src.to_owned(),
                });
            }
            g.add_edge(u, v)?;
        }
        if g.duplicate_edges > 0 {
            log::warn!("collapsed {} duplicate edge(s)", g.duplicate_edges);
        }
        Ok(g)
    }

    /// Loads a graph from a vertices file and an edges file.
    pub fn load(vertices: &Path, edges: &Path) -> Result<Hin, GraphError> {
        let open = |p: &Path| {
            File::open(p)
                .map(BufReader::new)
                .map_err(|source| GraphError::Io {
                    path: p.display().to_string(),
                    source,
                })
        };
        Self::from_named_tsv(
            open(vertices)?,
            &vertices.display().to_string(),
            open(edges)?,
            &edges.display().to_string(),
        )
    }

    /// Writes live vertices (id order) and edges (`(src, dst)` order) as TSV.
    pub fn write_tsv<V: Write, E: Write>(&self, mut vertices: V, mut edges: E) -> io::Result<()> {
        for v in self.vertices() {
            writeln!(vertices, "{}\t{}", self.external_id(v), self.label_name(v))?;
        }
        for (u, v) in self.edges() {
            writeln!(edges, "{}\t{}", self.external_id(u), self.external_id(v))?;
        }
        vertices.flush()?;
        edges.flush()
    }

    /// Writes the graph to `vertices` and `edges` paths.
    pub fn save(&self, vertices: &Path, edges: &Path) -> Result<(), GraphError> {
        let create = |p: &Path| {
            File::create(p)
                .map(io::BufWriter::new)
                .map_err(|source| GraphError::Io {
                    path: p.display().to_string(),
                    source,
                })
        };
        let (vf, ef) = (create(vertices)?, create(edges)?);
        self.write_tsv(vf, ef).map_err(|source| GraphError::Io {
            path: vertices.display().to_string(),
            source,
        })
    }
}

impl Adjacency for Hin {
    fn vertex_ids(&self) -> Vec<VertexId> {
        self.vertices().collect()
    }

    fn id_bound(&self) -> usize {
        self.alive.len()
    }

    fn for_each_undirected_neighbor(&self, v: VertexId, f: &mut dyn FnMut(VertexId)) {
        self.out_adj[v.index()]
            .iter()
            .chain(self.in_adj[v.index()].iter())
            .for_each(|&w| f(w));
    }
}

fn bump_nlf(entries: &mut Vec<NlfEntry>, label: LabelId, d_in: i32, d_out: i32) {
    match entries.binary_search_by_key(&label, |e| e.label) {
        Ok(i) => {
            let e = &mut entries[i];
            e.in_count = (e.in_count as i64 + d_in as i64) as u32;
            e.out_count = (e.out_count as i64 + d_out as i64) as u32;
            if e.in_count == 0 && e.out_count == 0 {
                entries.remove(i);
            }
        }
        Err(i) => {
            debug_assert!(d_in >= 0 && d_out >= 0);
            entries.insert(
                i,
                NlfEntry {
                    label,
                    in_count: d_in as u32,
                    out_count: d_out as u32,
                },
            );
        }
    }
}

/// Iterates `(line_number, fields)` over non-blank, non-comment TSV lines.
pub(crate) fn tsv_rows<'a, R: BufRead + 'a>(
    reader: R,
    source_name: &'a str,
) -> impl Iterator<Item = Result<(usize, Vec<String>), GraphError>> + 'a {
    reader.lines().enumerate().filter_map(move |(i, line)| {
        let line_no = i + 1;
        let line = match line {
            Ok(l) => l,
            Err(source) => {
                return Some(Err(GraphError::Io {
                    path: source_name.to_owned(),
                    source,
                }))
            }
        };
        let trimmed = line.trim_end_matches(['\r', '\n']);
        if trimmed.trim().is_empty() || trimmed.trim_start().starts_with('#') {
            return None;
        }
        Some(Ok((
            line_no,
            trimmed.split('\t').map(|s| s.trim().to_owned()).collect(),
        )))
    })
}

fn two_fields<'a>(
    fields: &'a [String],
    source_name: &str,
    line: usize,
) -> Result<[&'a str; 2], GraphError> {
    match fields {
        [a, b] if !a.is_empty() && !b.is_empty() => Ok([a.as_str(), b.as_str()]),
        _ => Err(GraphError::Parse {
            source_name: source_name.to_owned(),
            line,
            message: format!("expected 2 tab-separated fields, found {}", fields.len()),
        }),
    }
}
