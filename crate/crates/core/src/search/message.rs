//! Message-passing verification over the CM-graph.
//!
//! Every candidate is existence-checked once. A failing candidate is deleted
//! immediately and its CM in-neighbors, the only vertices whose instances
//! could have used it, are queued for another check.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::VertexId;
use crate::hin::Hin;
use crate::iso::Matcher;

use super::{CmGraph, SearchError, SearchStats};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MessageEvent {
    /// 1 for the initial sweep, `r + 1` for checks triggered in round `r`.
    pub round: usize,
    pub vertex: VertexId,
    pub deleted: bool,
    /// CM in-neighbors notified by a deletion.
    pub notified: Vec<VertexId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MessageTrace {
    pub events: Vec<MessageEvent>,
    /// Surviving candidates, ascending.
    pub survivors: Vec<VertexId>,
}

impl MessageTrace {
    pub fn rounds(&self) -> usize {
        self.events.iter().map(|e| e.round).max().unwrap_or(0)
    }

    pub fn deleted(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.events.iter().filter(|e| e.deleted).map(|e| e.vertex)
    }

    /// Number of existence checks spent on `v`.
    pub fn checks_of(&self, v: VertexId) -> usize {
        self.events.iter().filter(|e| e.vertex == v).count()
    }
}

/// Verifies the CM-graph candidates of `g` in place. Deleted candidates are
/// removed from both `g` and `cm`.
pub fn message_passing(
    g: &mut Hin,
    cm: &mut CmGraph,
    mt: &Matcher,
    stats: &mut SearchStats,
) -> Result<MessageTrace, SearchError> {
    let mut queue: VecDeque<(VertexId, usize)> = cm.vertices().map(|v| (v, 1)).collect();
    let mut queued: BTreeSet<VertexId> = cm.vertices().collect();
    let mut trace = MessageTrace::default();
    while let Some((v, round)) = queue.pop_front() {
        queued.remove(&v);
        stats.existence_checks += 1;
        if mt.exists_instance_around(g, v)? {
            trace.events.push(MessageEvent {
                round,
                vertex: v,
                deleted: false,
                notified: Vec::new(),
            });
            continue;
        }
        let notified: Vec<VertexId> = cm.in_neighbors(v).collect();
        for &w in &notified {
            if queued.insert(w) {
                queue.push_back((w, round + 1));
            }
        }
        cm.remove_vertex(v);
        g.delete_vertex(v)?;
        trace.events.push(MessageEvent {
            round,
            vertex: v,
            deleted: true,
            notified,
        });
    }
    trace.survivors = cm.vertices().collect();
    Ok(trace)
}
