//! Directed homogeneous graphs over data-graph vertex ids and weak connectivity.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// Dense identifier of a vertex in an [`Hin`](crate::hin::Hin).
///
/// Ids are assigned in load order and are never reused after a deletion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Index of a weakly connected component within one partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WccId(pub u32);

/// Read access needed to walk a directed graph while ignoring edge direction.
pub trait Adjacency {
    /// Live vertices in ascending id order.
    fn vertex_ids(&self) -> Vec<VertexId>;
    /// Upper bound (exclusive) on vertex indices, used to size scratch buffers.
    fn id_bound(&self) -> usize;
    /// Calls `f` for every out- and in-neighbor of `v`. Duplicates are allowed.
    fn for_each_undirected_neighbor(&self, v: VertexId, f: &mut dyn FnMut(VertexId));
}

/// Partitions the vertices of `g` into weakly connected components.
///
/// Components are ordered by their smallest vertex id and each component is
/// sorted ascending.
pub fn weakly_connected_components<G: Adjacency + ?Sized>(g: &G) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; g.id_bound()];
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    for start in g.vertex_ids() {
        if seen[start.index()] {
            continue;
        }
        seen[start.index()] = true;
        queue.push_back(start);
        let mut component = Vec::new();
        while let Some(v) = queue.pop_front() {
            component.push(v);
            g.for_each_undirected_neighbor(v, &mut |w| {
                if !seen[w.index()] {
                    seen[w.index()] = true;
                    queue.push_back(w);
                }
            });
        }
        component.sort_unstable();
        components.push(component);
    }
    components
}

/// Maps every vertex to the [`WccId`] of its weakly connected component.
pub fn component_index<G: Adjacency + ?Sized>(g: &G) -> BTreeMap<VertexId, WccId> {
    let mut index = BTreeMap::new();
    for (i, component) in weakly_connected_components(g).into_iter().enumerate() {
        for v in component {
            index.insert(v, WccId(i as u32));
        }
    }
    index
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Links {
    out: BTreeSet<VertexId>,
    inn: BTreeSet<VertexId>,
}

/// A small directed graph over [`VertexId`]s with ordered adjacency.
///
/// Used for the M-graph and the CM-graph, whose vertex sets are sparse
/// subsets of the data graph's id space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiGraph {
    nodes: BTreeMap<VertexId, Links>,
}

impl DiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.nodes.entry(v).or_default();
    }

    /// Adds `u -> v`, creating missing endpoints. Self-loops are ignored.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        if u == v {
            self.add_vertex(u);
            return;
        }
        self.nodes.entry(u).or_default().out.insert(v);
        self.nodes.entry(v).or_default().inn.insert(u);
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> bool {
        let Some(links) = self.nodes.remove(&v) else {
            return false;
        };
        for w in links.out {
            if let Some(l) = self.nodes.get_mut(&w) {
                l.inn.remove(&v);
            }
        }
        for w in links.inn {
            if let Some(l) = self.nodes.get_mut(&w) {
                l.out.remove(&v);
            }
        }
        true
    }

    /// Keeps only the vertices for which `keep` returns true.
    pub fn retain_vertices(&mut self, mut keep: impl FnMut(VertexId) -> bool) {
        let doomed: Vec<VertexId> = self.nodes.keys().copied().filter(|&v| !keep(v)).collect();
        for v in doomed {
            self.remove_vertex(v);
        }
    }

    /// Subgraph induced by `vertices` (ids absent from the graph are skipped).
    pub fn induced<'a>(&self, vertices: impl IntoIterator<Item = &'a VertexId>) -> DiGraph {
        let keep: BTreeSet<VertexId> = vertices
            .into_iter()
            .copied()
            .filter(|v| self.nodes.contains_key(v))
            .collect();
        let mut out = DiGraph::new();
        for &v in &keep {
            out.add_vertex(v);
            for &w in &self.nodes[&v].out {
                if keep.contains(&w) {
                    out.add_edge(v, w);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.nodes.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.nodes.get(&u).is_some_and(|l| l.out.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.nodes.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.nodes
            .iter()
            .flat_map(|(&u, l)| l.out.iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.nodes
            .get(&v)
            .into_iter()
            .flat_map(|l| l.out.iter().copied())
    }

    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.nodes
            .get(&v)
            .into_iter()
            .flat_map(|l| l.inn.iter().copied())
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.nodes.get(&v).map_or(0, |l| l.out.len())
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.values().map(|l| l.out.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

impl Adjacency for DiGraph {
    fn vertex_ids(&self) -> Vec<VertexId> {
        self.nodes.keys().copied().collect()
    }

    fn id_bound(&self) -> usize {
        self.nodes.keys().next_back().map_or(0, |v| v.index() + 1)
    }

    fn for_each_undirected_neighbor(&self, v: VertexId, f: &mut dyn FnMut(VertexId)) {
        if let Some(l) = self.nodes.get(&v) {
            l.out.iter().chain(l.inn.iter()).for_each(|&w| f(w));
        }
    }
}
