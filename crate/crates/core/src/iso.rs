//! Anchored motif-instance matching.
//!
//! A [`Matcher`] compiles a [`Motif`] against the label space of an [`Hin`]
//! and then answers, for one anchor vertex at a time, whether an instance
//! around it exists, how many distinct instances there are, and which
//! candidate vertices satisfy the star constraints used by the exploration
//! filter.
//!
//! Matching follows the motif's BFS order from the target. Each step extends
//! a partial embedding through the adjacency list of the step's BFS parent,
//! keeps only vertices passing the NLF filter, and checks the remaining edges
//! to earlier query vertices.
//!
//! Two embeddings related by a motif automorphism that fixes the target
//! describe the same embedded subgraph. Only the lexicographically smallest
//! embedding of each such orbit is reported.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::graph::VertexId;
use crate::hin::{Hin, LabelId};
use crate::motif::{BfsOrder, Motif, QueryVertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("embedding budget of {limit} partial embeddings exceeded around vertex {anchor}")]
pub struct BudgetExceeded {
    pub anchor: VertexId,
    pub limit: u64,
}

/// Per-label `(in_count, out_count)` requirements of one query vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NlfSignature {
    entries: Vec<(LabelId, u32, u32)>,
}

impl NlfSignature {
    pub fn entries(&self) -> &[(LabelId, u32, u32)] {
        &self.entries
    }
}

/// Direction of a motif edge relative to the query vertex being matched.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    /// `other -> u`
    FromOther,
    /// `u -> other`
    ToOther,
}

impl Dir {
    /// Data-graph neighbors of `v` reachable along this direction when `v`
    /// plays the role of `other`.
    fn step(self, g: &Hin, v: VertexId) -> &[VertexId] {
        match self {
            Dir::FromOther => g.out_neighbors(v),
            Dir::ToOther => g.in_neighbors(v),
        }
    }

    /// Whether `x` (playing `u`) and `y` (playing `other`) are joined.
    fn joined(self, g: &Hin, x: VertexId, y: VertexId) -> bool {
        match self {
            Dir::FromOther => g.has_edge(y, x),
            Dir::ToOther => g.has_edge(x, y),
        }
    }
}

#[derive(Clone, Debug)]
struct Step {
    vertex: usize,
    /// The earliest neighbor in BFS order and how `vertex` hangs off it.
    parent: usize,
    parent_dir: Dir,
    /// Remaining edges to earlier query vertices.
    checks: Vec<(usize, Dir)>,
}

/// A distinct motif instance: the canonical embedding of its orbit.
#[derive(Clone, Copy, Debug)]
pub struct MotifInstance<'a> {
    mapping: &'a [VertexId],
}

impl<'a> MotifInstance<'a> {
    /// Data vertex assigned to each query vertex, indexed by query id.
    pub fn mapping(&self) -> &'a [VertexId] {
        self.mapping
    }

    pub fn image(&self, u: QueryVertexId) -> VertexId {
        self.mapping[u.0]
    }

    /// Sorted `(query vertex, data vertex)` pairs of the canonical embedding.
    pub fn canonical_key(&self) -> Vec<(QueryVertexId, VertexId)> {
        self.mapping
            .iter()
            .enumerate()
            .map(|(u, &v)| (QueryVertexId(u), v))
            .collect()
    }
}

/// Per-query-vertex candidate sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateSets {
    sets: Vec<BTreeSet<VertexId>>,
}

impl CandidateSets {
    pub fn new(query_vertices: usize) -> Self {
        Self {
            sets: vec![BTreeSet::new(); query_vertices],
        }
    }

    pub fn get(&self, u: QueryVertexId) -> &BTreeSet<VertexId> {
        &self.sets[u.0]
    }

    pub fn get_mut(&mut self, u: QueryVertexId) -> &mut BTreeSet<VertexId> {
        &mut self.sets[u.0]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Adds every candidate of `other` into `self`.
    pub fn union_with(&mut self, other: &CandidateSets) {
        for (a, b) in self.sets.iter_mut().zip(&other.sets) {
            a.extend(b.iter().copied());
        }
    }
}

/// A motif compiled against one label space.
#[derive(Clone, Debug)]
pub struct Matcher {
    n: usize,
    target: usize,
    order: BfsOrder,
    labels: Vec<Option<LabelId>>,
    signatures: Vec<NlfSignature>,
    steps: Vec<Step>,
    /// Every query-vertex neighbor pair `(u, other, dir)`.
    links: Vec<Vec<(usize, Dir)>>,
    automorphisms: Vec<Vec<usize>>,
    target_type_vertices: Vec<usize>,
    budget: Option<u64>,
}

impl Matcher {
    /// Compiles `m` against the labels of `g` (or of any graph derived from it).
    pub fn new(g: &Hin, m: &Motif) -> Self {
        let n = m.vertex_count();
        let order = m.bfs_order();
        let labels: Vec<Option<LabelId>> = m.vertices().map(|u| g.label_id(m.label(u))).collect();

        let mut links = vec![Vec::new(); n];
        for &(a, b) in m.edges() {
            links[b.0].push((a.0, Dir::FromOther));
            links[a.0].push((b.0, Dir::ToOther));
        }

        let signatures = (0..n)
            .map(|u| {
                let mut entries: Vec<(LabelId, u32, u32)> = Vec::new();
                for &(other, dir) in &links[u] {
                    // Unknown labels never occur in the graph; a query vertex
                    // requiring one is unmatchable anyway.
                    let Some(l) = labels[other] else { continue };
                    let pos = match entries.binary_search_by_key(&l, |e| e.0) {
                        Ok(p) => p,
                        Err(p) => {
                            entries.insert(p, (l, 0, 0));
                            p
                        }
                    };
                    match dir {
                        Dir::FromOther => entries[pos].1 += 1,
                        Dir::ToOther => entries[pos].2 += 1,
                    }
                }
                NlfSignature { entries }
            })
            .collect();

        let steps = order.order()[1..]
            .iter()
            .map(|&u| {
                let mut earlier: Vec<(usize, Dir)> = links[u.0]
                    .iter()
                    .copied()
                    .filter(|&(o, _)| order.index(QueryVertexId(o)) < order.index(u))
                    .collect();
                earlier.sort_by_key(|&(o, d)| (order.index(QueryVertexId(o)), d == Dir::ToOther));
                let (parent, parent_dir) = earlier[0];
                Step {
                    vertex: u.0,
                    parent,
                    parent_dir,
                    checks: earlier[1..].to_vec(),
                }
            })
            .collect();

        let target = m.target().0;
        let target_type_vertices = (0..n)
            .filter(|&u| u != target && m.label(QueryVertexId(u)) == m.target_type())
            .collect();

        Matcher {
            n,
            target,
            automorphisms: target_fixing_automorphisms(m),
            order,
            labels,
            signatures,
            steps,
            links,
            target_type_vertices,
            budget: None,
        }
    }

    /// Limits the number of partial embeddings explored per anchor.
    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn query_vertex_count(&self) -> usize {
        self.n
    }

    pub fn target(&self) -> QueryVertexId {
        QueryVertexId(self.target)
    }

    pub fn order(&self) -> &BfsOrder {
        &self.order
    }

    /// Label id of the target type, or `None` if the graph has no such label.
    pub fn target_label(&self) -> Option<LabelId> {
        self.labels[self.target]
    }

    pub fn label(&self, u: QueryVertexId) -> Option<LabelId> {
        self.labels[u.0]
    }

    /// Query vertices other than the target that carry the target's type.
    pub fn target_type_vertices(&self) -> impl Iterator<Item = QueryVertexId> + '_ {
        self.target_type_vertices.iter().map(|&u| QueryVertexId(u))
    }

    pub fn signature(&self, u: QueryVertexId) -> &NlfSignature {
        &self.signatures[u.0]
    }

    /// Non-identity motif automorphisms that fix the target.
    pub fn automorphism_count(&self) -> usize {
        self.automorphisms.len() + 1
    }

    /// Whether every label of the motif exists in the graph.
    pub fn is_satisfiable(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// NLF filter: `v` has `u`'s type and, for every label around `u`, at
    /// least as many in- and out-neighbors of that label as `u` has.
    pub fn nlf_pass(&self, g: &Hin, u: QueryVertexId, v: VertexId) -> bool {
        if !g.contains(v) || Some(g.label(v)) != self.labels[u.0] {
            return false;
        }
        self.signatures[u.0]
            .entries
            .iter()
            .all(|&(l, need_in, need_out)| {
                let (have_in, have_out) = g.nlf_count(v, l);
                have_in >= need_in && have_out >= need_out
            })
    }

    /// True iff at least one instance maps the target to `anchor`. Stops at
    /// the first embedding found.
    pub fn exists_instance_around(
        &self,
        g: &Hin,
        anchor: VertexId,
    ) -> Result<bool, BudgetExceeded> {
        let mut found = false;
        self.search(g, anchor, None, false, &mut |_| {
            found = true;
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    /// True iff some instance around `anchor` contains `member` at a
    /// target-type query vertex, i.e. `member` is an M-neighbor of `anchor`.
    pub fn exists_instance_containing(
        &self,
        g: &Hin,
        anchor: VertexId,
        member: VertexId,
    ) -> Result<bool, BudgetExceeded> {
        for &u in &self.target_type_vertices {
            let mut found = false;
            self.search(g, anchor, Some((u, member)), false, &mut |_| {
                found = true;
                ControlFlow::Break(())
            })?;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Visits every distinct instance around `anchor` once and returns the
    /// number visited.
    pub fn enumerate_instances_around<F>(
        &self,
        g: &Hin,
        anchor: VertexId,
        mut visitor: F,
    ) -> Result<u64, BudgetExceeded>
    where
        F: FnMut(&MotifInstance<'_>),
    {
        let mut count = 0u64;
        self.search(g, anchor, None, true, &mut |inst| {
            count += 1;
            visitor(inst);
            ControlFlow::Continue(())
        })?;
        Ok(count)
    }

    /// Forward star check: for every neighbor `u'` of `u`
    /// earlier in BFS order, `v` has a correctly oriented neighbor in
    /// `cand[u']`.
    pub fn star_check_forward(
        &self,
        g: &Hin,
        u: QueryVertexId,
        v: VertexId,
        cand: &CandidateSets,
    ) -> bool {
        let pos = self.order.index(u);
        self.star_check(g, u, v, cand, |o| self.order.index(QueryVertexId(o)) < pos)
    }

    /// Mirror of [`Self::star_check_forward`] over neighbors later in BFS order.
    pub fn star_check_backward(
        &self,
        g: &Hin,
        u: QueryVertexId,
        v: VertexId,
        cand: &CandidateSets,
    ) -> bool {
        let pos = self.order.index(u);
        self.star_check(g, u, v, cand, |o| self.order.index(QueryVertexId(o)) > pos)
    }

    fn star_check(
        &self,
        g: &Hin,
        u: QueryVertexId,
        v: VertexId,
        cand: &CandidateSets,
        select: impl Fn(usize) -> bool,
    ) -> bool {
        self.links[u.0]
            .iter()
            .filter(|&&(o, _)| select(o))
            .all(|&(o, dir)| {
                let pool = &cand.sets[o];
                // `v` plays `u`; neighbors of `v` that could play `o`.
                let near = match dir {
                    Dir::FromOther => g.in_neighbors(v),
                    Dir::ToOther => g.out_neighbors(v),
                };
                near.iter().any(|x| pool.contains(x))
            })
    }

    /// Data edges between `v` (playing `u`) and candidates of the given
    /// neighbors of `u`, oriented as in the motif.
    pub(crate) fn edges_to_candidates(
        &self,
        g: &Hin,
        u: QueryVertexId,
        v: VertexId,
        cand: &CandidateSets,
        select: impl Fn(usize) -> bool,
        out: &mut Vec<(VertexId, VertexId)>,
    ) {
        for &(o, dir) in self.links[u.0].iter().filter(|&&(o, _)| select(o)) {
            let pool = &cand.sets[o];
            match dir {
                Dir::FromOther => out.extend(
                    g.in_neighbors(v)
                        .iter()
                        .filter(|x| pool.contains(x))
                        .map(|&x| (x, v)),
                ),
                Dir::ToOther => out.extend(
                    g.out_neighbors(v)
                        .iter()
                        .filter(|x| pool.contains(x))
                        .map(|&x| (v, x)),
                ),
            }
        }
    }

    /// Candidate vertices for `u` adjacent to `v`, which plays the BFS parent
    /// of `u`, of the right type and passing the NLF filter.
    pub(crate) fn expand_from_parent<'g>(
        &'g self,
        g: &'g Hin,
        u: QueryVertexId,
        v: VertexId,
    ) -> impl Iterator<Item = VertexId> + 'g {
        let step = &self.steps[self.order.index(u) - 1];
        step.parent_dir
            .step(g, v)
            .iter()
            .copied()
            .filter(move |&x| self.nlf_pass(g, u, x))
    }

    /// BFS parent of a non-target query vertex.
    pub(crate) fn parent(&self, u: QueryVertexId) -> QueryVertexId {
        QueryVertexId(self.steps[self.order.index(u) - 1].parent)
    }

    /// Directed motif edges `(a, b)` as query-vertex pairs.
    pub(crate) fn motif_edges(&self) -> Vec<(QueryVertexId, QueryVertexId)> {
        let mut out = Vec::new();
        for (a, links) in self.links.iter().enumerate() {
            for &(b, d) in links {
                if d == Dir::ToOther {
                    out.push((QueryVertexId(a), QueryVertexId(b)));
                }
            }
        }
        out
    }

    fn search(
        &self,
        g: &Hin,
        anchor: VertexId,
        fixed: Option<(usize, VertexId)>,
        canonical_only: bool,
        visit: &mut dyn FnMut(&MotifInstance<'_>) -> ControlFlow<()>,
    ) -> Result<(), BudgetExceeded> {
        if !self.is_satisfiable() || !self.nlf_pass(g, QueryVertexId(self.target), anchor) {
            return Ok(());
        }
        if let Some((u, w)) = fixed {
            if w == anchor || !self.nlf_pass(g, QueryVertexId(u), w) {
                return Ok(());
            }
        }
        let mut state = SearchState {
            g,
            fixed,
            canonical_only,
            mapping: vec![VertexId(u32::MAX); self.n],
            explored: 0,
            anchor,
            visit,
        };
        state.mapping[self.target] = anchor;
        let _ = self.extend(&mut state, 0)?;
        Ok(())
    }

    fn extend(
        &self,
        st: &mut SearchState<'_, '_>,
        depth: usize,
    ) -> Result<ControlFlow<()>, BudgetExceeded> {
        st.explored += 1;
        if let Some(limit) = self.budget {
            if st.explored > limit {
                return Err(BudgetExceeded {
                    anchor: st.anchor,
                    limit,
                });
            }
        }
        if depth == self.steps.len() {
            if st.canonical_only && !self.is_canonical(&st.mapping) {
                return Ok(ControlFlow::Continue(()));
            }
            let inst = MotifInstance {
                mapping: &st.mapping,
            };
            return Ok((st.visit)(&inst));
        }
        let step = &self.steps[depth];
        let u = QueryVertexId(step.vertex);
        let parent_image = st.mapping[step.parent];
        let g = st.g;
        for &x in step.parent_dir.step(g, parent_image) {
            if let Some((fu, fw)) = st.fixed {
                if fu == step.vertex && x != fw {
                    continue;
                }
            }
            if !self.nlf_pass(g, u, x) {
                continue;
            }
            if self.order.order()[..=depth]
                .iter()
                .any(|&q| st.mapping[q.0] == x)
            {
                continue;
            }
            if !step
                .checks
                .iter()
                .all(|&(o, dir)| dir.joined(g, x, st.mapping[o]))
            {
                continue;
            }
            st.mapping[step.vertex] = x;
            let flow = self.extend(st, depth + 1)?;
            st.mapping[step.vertex] = VertexId(u32::MAX);
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn is_canonical(&self, mapping: &[VertexId]) -> bool {
        self.automorphisms.iter().all(|sigma| {
            // Compare mapping with mapping∘sigma lexicographically.
            for u in 0..self.n {
                let permuted = mapping[sigma[u]];
                if permuted != mapping[u] {
                    return permuted > mapping[u];
                }
            }
            true
        })
    }
}

struct SearchState<'g, 'v> {
    g: &'g Hin,
    fixed: Option<(usize, VertexId)>,
    canonical_only: bool,
    mapping: Vec<VertexId>,
    explored: u64,
    anchor: VertexId,
    visit: &'v mut dyn FnMut(&MotifInstance<'_>) -> ControlFlow<()>,
}

/// All non-identity automorphisms of `m` that fix the target, as
/// permutations `sigma[u]`. Found by label- and edge-constrained
/// backtracking over permutations.
pub fn target_fixing_automorphisms(m: &Motif) -> Vec<Vec<usize>> {
    let n = m.vertex_count();
    let mut found = Vec::new();
    let mut sigma = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let t = m.target().0;
    sigma[t] = t;
    used[t] = true;
    let rest: Vec<usize> = (0..n).filter(|&u| u != t).collect();
    fn go(
        m: &Motif,
        rest: &[usize],
        depth: usize,
        sigma: &mut [usize],
        used: &mut [bool],
        found: &mut Vec<Vec<usize>>,
    ) {
        if depth == rest.len() {
            if sigma.iter().enumerate().any(|(i, &s)| i != s) {
                found.push(sigma.to_vec());
            }
            return;
        }
        let u = rest[depth];
        for img in 0..sigma.len() {
            if used[img] || m.label(QueryVertexId(u)) != m.label(QueryVertexId(img)) {
                continue;
            }
            sigma[u] = img;
            let consistent = (0..sigma.len())
                .filter(|&w| sigma[w] != usize::MAX)
                .all(|w| {
                    let (a, b) = (QueryVertexId(u), QueryVertexId(w));
                    let (sa, sb) = (QueryVertexId(sigma[u]), QueryVertexId(sigma[w]));
                    m.has_edge(a, b) == m.has_edge(sa, sb) && m.has_edge(b, a) == m.has_edge(sb, sa)
                });
            if consistent {
                used[img] = true;
                go(m, rest, depth + 1, sigma, used, found);
                used[img] = false;
            }
            sigma[u] = usize::MAX;
        }
    }
    go(m, &rest, 0, &mut sigma, &mut used, &mut found);
    found
}
