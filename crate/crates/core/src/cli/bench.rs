//! Benchmark harness: one row per (motif, mode) plus per-size averages.

use std::collections::BTreeMap;
use std::path::Path;

use crate::hin::Hin;
use crate::motif::Motif;
use crate::search::{run_query, QueryParams, SearchError, SearchMode, SearchStats};

pub const HEADER: [&str; 9] = [
    "motif",
    "size",
    "mode",
    "visited_targets",
    "existence_checks",
    "instances_enumerated",
    "bound_computations",
    "components_pruned",
    "wall_time_ms",
];

#[derive(Clone, Debug, PartialEq)]
pub enum BenchOutcome {
    Done(SearchStats),
    Timeout,
    Error(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub motif: String,
    pub size: usize,
    pub mode: SearchMode,
    pub outcome: BenchOutcome,
}

/// Runs every motif under every mode, sequentially.
pub fn bench_rows(
    g: &Hin,
    motifs: &[(String, Motif)],
    modes: &[SearchMode],
    p: &QueryParams,
) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for (name, m) in motifs {
        let label = Path::new(name)
            .file_name()
            .map_or_else(|| name.clone(), |f| f.to_string_lossy().into_owned());
        for &mode in modes {
            let outcome = match run_query(g, m, p, mode) {
                Ok(r) => BenchOutcome::Done(r.stats),
                Err(SearchError::Budget(_)) => BenchOutcome::Timeout,
                Err(e) => BenchOutcome::Error(e.to_string()),
            };
            rows.push(BenchRow {
                motif: label.clone(),
                size: m.vertex_count(),
                mode,
                outcome,
            });
        }
    }
    rows
}

fn counters(s: &SearchStats) -> [f64; 6] {
    [
        s.visited_targets as f64,
        s.existence_checks as f64,
        s.instances_enumerated as f64,
        s.bound_computations as f64,
        s.components_pruned as f64,
        s.wall_time_ms,
    ]
}

/// CSV text of the rows followed by one `avg` row per (size, mode) over the
/// successful runs.
pub fn to_csv(rows: &[BenchRow]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER)?;
    let mut sums: BTreeMap<(usize, usize), (SearchMode, [f64; 6], usize)> = BTreeMap::new();
    for row in rows {
        let mut rec = vec![
            row.motif.clone(),
            row.size.to_string(),
            row.mode.to_string(),
        ];
        match &row.outcome {
            BenchOutcome::Done(s) => {
                let c = counters(s);
                rec.extend(c[..5].iter().map(|x| (*x as u64).to_string()));
                rec.push(format!("{:.3}", c[5]));
                let mode_rank = SearchMode::ALL
                    .iter()
                    .position(|&m| m == row.mode)
                    .unwrap_or(0);
                let e = sums
                    .entry((row.size, mode_rank))
                    .or_insert((row.mode, [0.0; 6], 0));
                for (acc, x) in e.1.iter_mut().zip(c) {
                    *acc += x;
                }
                e.2 += 1;
            }
            BenchOutcome::Timeout => rec.extend(std::iter::repeat_n("timeout".to_owned(), 6)),
            BenchOutcome::Error(_) => rec.extend(std::iter::repeat_n("error".to_owned(), 6)),
        }
        w.write_record(&rec)?;
    }
    for ((size, _), (mode, total, n)) in sums {
        let mut rec = vec!["avg".to_owned(), size.to_string(), mode.to_string()];
        rec.extend(total.iter().map(|x| format!("{:.3}", x / n as f64)));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
