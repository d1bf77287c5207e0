//! Fairest community search over heterogeneous information networks.
//!
//! Given a typed directed graph ([`Hin`]) and a motif with a designated
//! target vertex ([`Motif`]), the search finds the maximal motif-connected
//! communities of target-type vertices and returns those whose members have
//! the most even activity, measured by the Gini-based [`fairness_score`].
//!
//! ```
//! use ifcs::{run_query, Hin, Motif, QueryParams, SearchMode};
//!
//! let g = Hin::from_tsv(
//!     "a\tauthor\nb\tauthor\np\tpaper\n".as_bytes(),
//!     "a\tp\nb\tp\na\tb\n".as_bytes(),
//! )?;
//! let m = Motif::parse("v\t0\tauthor\nv\t1\tpaper\nv\t2\tauthor\ne\t0\t1\ne\t2\t1\ntarget\t0\n".as_bytes())?;
//! let r = run_query(&g, &m, &QueryParams::default(), SearchMode::FvaL)?;
//! assert_eq!(r.communities.len(), 1);
//! assert!(r.fairness_score.unwrap().is_zero());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod fairness;
pub mod graph;
pub mod hin;
pub mod iso;
pub mod metrics;
pub mod motif;
pub mod search;

pub use fairness::{
    fairness_score, fairness_score_sorted, lower_bound, FairnessScore, PartialObservation,
};
pub use graph::{weakly_connected_components, DiGraph, VertexId};
pub use hin::{GraphError, Hin, LabelId};
pub use iso::Matcher;
pub use motif::{Motif, MotifError, QueryVertexId};
pub use search::{run_query, CommunityResult, QueryParams, SearchError, SearchMode, SearchStats};
