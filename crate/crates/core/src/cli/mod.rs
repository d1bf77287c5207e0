//! Command-line front end: `query`, `gen-motif`, `sample` and `bench`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::hin::Hin;
use crate::metrics::{community_metrics, CommunityMetrics};
use crate::motif::Motif;
use crate::search::{run_query, QueryParams, ResultDocument, SearchError, SearchMode};

pub mod bench;
pub mod gen_motif;
pub mod sample;

pub use bench::{bench_rows, BenchRow};
pub use gen_motif::{generate_motifs, GenMotifError};
pub use sample::sample_graph;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_COMMUNITY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ifcs",
    version,
    about = "Fairest community search over typed graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find the fairest communities for one motif.
    Query(QueryArgs),
    /// Draw random motifs from a graph by random walk.
    GenMotif(GenMotifArgs),
    /// Keep a uniform vertex sample and its induced edges.
    Sample(SampleArgs),
    /// Run every (motif, mode) pair and write a CSV of counters.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Vertices TSV (`id<TAB>label`).
    #[arg(long)]
    pub vertices: PathBuf,
    /// Edges TSV (`src<TAB>dst`).
    #[arg(long)]
    pub edges: PathBuf,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub motif: PathBuf,
    #[arg(long, value_enum, default_value_t = SearchMode::FvaL)]
    pub mode: SearchMode,
    /// Minimum community size.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Result JSON path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Append per-community metrics.
    #[arg(long)]
    pub metrics: bool,
    /// Per-anchor limit on explored partial embeddings.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Report wall time as 0 so output files are reproducible.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct GenMotifArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Motif vertex count.
    #[arg(long, value_parser = clap::value_parser!(u64).range(3..=7))]
    pub size: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for `motif_<size>_<i>.tsv` files.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Fraction of vertices to keep, in (0, 1].
    #[arg(long)]
    pub ratio: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory for `vertices.tsv` and `edges.tsv`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Motif files; repeat the flag or list several paths.
    #[arg(long, num_args = 1.., required = true)]
    pub motif: Vec<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = SearchMode::ALL)]
    pub modes: Vec<SearchMode>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub budget: Option<u64>,
    /// CSV path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub no_timing: bool,
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Query(a) => return cmd_query(&a),
        Command::GenMotif(a) => cmd_gen_motif(&a),
        Command::Sample(a) => cmd_sample(&a),
        Command::Bench(a) => cmd_bench(&a),
    };
    match outcome {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
    }
}

fn load_graph(a: &GraphArgs) -> Result<Hin, String> {
    let g = Hin::load(&a.vertices, &a.edges).map_err(|e| e.to_string())?;
    if g.duplicate_edges() > 0 {
        log::warn!("collapsed {} duplicate edges", g.duplicate_edges());
    }
    Ok(g)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

pub fn cmd_query(a: &QueryArgs) -> i32 {
    let inputs = load_graph(&a.graph).and_then(|g| {
        let m = Motif::from_file(&a.motif).map_err(|e| format!("{}: {e}", a.motif.display()))?;
        Ok((g, m))
    });
    let (g, m) = match inputs {
        Ok(x) => x,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_INPUT;
        }
    };
    let params = QueryParams {
        k: a.k,
        budget: a.budget,
        threads: a.threads,
        timing: !a.no_timing,
    };
    let result = match run_query(&g, &m, &params, a.mode) {
        Ok(r) => r,
        Err(e @ SearchError::Budget(_)) => {
            eprintln!("error: {e}");
            return EXIT_BUDGET;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut doc = ResultDocument::new(&g, &a.motif.display().to_string(), &result);
    if a.metrics {
        let metrics: Result<Vec<CommunityMetrics>, _> = result
            .communities
            .iter()
            .map(|c| community_metrics(&g, &result.m_graph, &c.members, &[]))
            .collect();
        match metrics {
            Ok(ms) => doc = doc.with_metrics(ms),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
        }
    }
    if let Err(msg) = write_output(a.out.as_deref(), &doc.to_json()) {
        eprintln!("error: {msg}");
        return EXIT_INPUT;
    }
    if result.is_empty() {
        EXIT_NO_COMMUNITY
    } else {
        EXIT_OK
    }
}

fn cmd_gen_motif(a: &GenMotifArgs) -> Result<(), String> {
    let g = load_graph(&a.graph)?;
    let motifs =
        generate_motifs(&g, a.size as usize, a.count, a.seed).map_err(|e| e.to_string())?;
    fs::create_dir_all(&a.out).map_err(|e| format!("{}: {e}", a.out.display()))?;
    for (i, m) in motifs.iter().enumerate() {
        let path = a.out.join(format!("motif_{}_{}.tsv", a.size, i));
        fs::write(&path, m.to_tsv()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn cmd_sample(a: &SampleArgs) -> Result<(), String> {
    let g = load_graph(&a.graph)?;
    let s = sample_graph(&g, a.ratio, a.seed).map_err(|e| e.to_string())?;
    fs::create_dir_all(&a.out).map_err(|e| format!("{}: {e}", a.out.display()))?;
    s.save(&a.out.join("vertices.tsv"), &a.out.join("edges.tsv"))
        .map_err(|e| e.to_string())
}

fn cmd_bench(a: &BenchArgs) -> Result<(), String> {
    let g = load_graph(&a.graph)?;
    let mut motifs = Vec::new();
    for p in &a.motif {
        let m = Motif::from_file(p).map_err(|e| format!("{}: {e}", p.display()))?;
        motifs.push((p.display().to_string(), m));
    }
    let params = QueryParams {
        k: a.k,
        budget: a.budget,
        threads: a.threads,
        timing: !a.no_timing,
    };
    let rows = bench_rows(&g, &motifs, &a.modes, &params);
    let csv = bench::to_csv(&rows).map_err(|e| e.to_string())?;
    write_output(a.out.as_deref(), &csv)
}
