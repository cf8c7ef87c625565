//! Batch CLI for evidential influence maximization.
//!
//! Subcommands: `ingest` (raw inputs → scored graph export), `maximize`
//! (seed selection → report JSON + table), `report` (side-by-side model
//! comparison + plot curves), and `synth` (deterministic fixtures).
//!
//! Exit codes: 0 success, 1 usage error, 2 input parse error, 3 constraint
//! violation (e.g. k > |V| or mixing reports from different datasets).

use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use evimax_core::maximize::{celf_select, MaximizeError};
use evimax_core::report::{compare, curves_csv, ReportError, SeedReport};
use evimax_core::synth::{self, SynthConfig};
use evimax_core::{GainFormula, InfluenceMode, InfluenceView, Lexicon, SocialGraph};
use thiserror::Error;

#[derive(Parser)]
#[command(
    name = "evimax",
    version,
    about = "Detect top-k positive-opinion influencers in a social network"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    /// Positive-opinion influence: Pr(Pos)(u) · m(u,v)({I}).
    Opinion,
    /// Structure-only baseline: m(u,v)({I}).
    Belief,
}

impl From<ModeArg> for InfluenceMode {
    fn from(arg: ModeArg) -> InfluenceMode {
        match arg {
            ModeArg::Opinion => InfluenceMode::OpinionPositive,
            ModeArg::Belief => InfluenceMode::BeliefOnly,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GainArg {
    /// True marginal gain σ(S∪{x}) − σ(S).
    Exact,
    /// Literal two-hop ranking formula (kept for model comparison).
    Eq3,
}

impl From<GainArg> for GainFormula {
    fn from(arg: GainArg) -> GainFormula {
        match arg {
            GainArg::Exact => GainFormula::Exact,
            GainArg::Eq3 => GainFormula::TwoHop,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse the follow CSV and message log, score opinions and edges, and
    /// write the deterministic graph-export JSON.
    Ingest {
        /// Follow edges CSV (`follower,followee` header).
        #[arg(long)]
        edges: PathBuf,
        /// Propagation log, JSON Lines.
        #[arg(long)]
        log: PathBuf,
        /// Sentiment lexicon TSV; without it all users stay objective.
        #[arg(long)]
        lexicon: Option<PathBuf>,
        /// Output path for the graph export JSON.
        #[arg(long)]
        out: PathBuf,
    },
    /// Select top-k seeds with CELF and write the seed report.
    Maximize {
        /// Scored graph export JSON (alternative to raw inputs).
        #[arg(long, conflicts_with_all = ["edges", "log", "lexicon"])]
        graph: Option<PathBuf>,
        /// Follow edges CSV (`follower,followee` header).
        #[arg(long, requires = "log")]
        edges: Option<PathBuf>,
        /// Propagation log, JSON Lines.
        #[arg(long, requires = "edges")]
        log: Option<PathBuf>,
        /// Sentiment lexicon TSV; without it all users stay objective.
        #[arg(long)]
        lexicon: Option<PathBuf>,
        /// Number of seeds to select (1 ≤ k ≤ |V|).
        #[arg(long)]
        k: usize,
        /// Influence model.
        #[arg(long, value_enum, default_value_t = ModeArg::Opinion)]
        mode: ModeArg,
        /// Marginal-gain formula used by the selector.
        #[arg(long, value_enum, default_value_t = GainArg::Exact)]
        gain: GainArg,
        /// Output path for the seed-report JSON.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare seed reports side by side and emit plotting curves.
    Report {
        /// Output path for the comparison JSON; the per-rank curves CSV is
        /// written next to it with a `.csv` extension.
        #[arg(long)]
        out: PathBuf,
        /// Seed-report JSON files (all must come from the same dataset).
        #[arg(required = true)]
        reports: Vec<PathBuf>,
    },
    /// Generate deterministic synthetic fixtures (edges.csv, log.jsonl,
    /// lexicon.tsv) into a directory.
    Synth {
        /// RNG seed; equal seeds yield byte-identical files.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of users.
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Constraint(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Constraint(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let kind = err.kind();
            let _ = err.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Ingest {
            edges,
            log,
            lexicon,
            out,
        } => cmd_ingest(&edges, &log, lexicon.as_deref(), &out),
        Command::Maximize {
            graph,
            edges,
            log,
            lexicon,
            k,
            mode,
            gain,
            out,
        } => cmd_maximize(
            graph.as_deref(),
            edges.as_deref(),
            log.as_deref(),
            lexicon.as_deref(),
            k,
            mode.into(),
            gain.into(),
            &out,
        ),
        Command::Report { out, reports } => cmd_report(&reports, &out),
        Command::Synth { seed, n, out } => cmd_synth(seed, n, &out),
    }
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn ingest_and_score(
    edges: &Path,
    log: &Path,
    lexicon: Option<&Path>,
) -> Result<SocialGraph, CliError> {
    let mut graph = SocialGraph::ingest(open(edges)?, open(log)?)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    for warning in graph.warnings() {
        eprintln!("warning: {warning}");
    }
    if let Some(path) = lexicon {
        let lexicon =
            Lexicon::from_reader(open(path)?).map_err(|e| CliError::Parse(e.to_string()))?;
        graph.score_opinions(&lexicon);
    }
    graph.score_edges();
    Ok(graph)
}

fn load_scored_graph(
    graph: Option<&Path>,
    edges: Option<&Path>,
    log: Option<&Path>,
    lexicon: Option<&Path>,
) -> Result<SocialGraph, CliError> {
    match (graph, edges, log) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
            SocialGraph::import_json(&text)
                .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
        }
        (None, Some(edges), Some(log)) => ingest_and_score(edges, log, lexicon),
        _ => Err(CliError::Usage(
            "maximize needs either --graph or both --edges and --log".to_string(),
        )),
    }
}

fn cmd_ingest(
    edges: &Path,
    log: &Path,
    lexicon: Option<&Path>,
    out: &Path,
) -> Result<(), CliError> {
    let graph = ingest_and_score(edges, log, lexicon)?;
    write_file(out, &graph.export_json())?;
    println!(
        "ingested {} nodes, {} edges -> {}",
        graph.n(),
        graph.edge_count(),
        out.display()
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_maximize(
    graph: Option<&Path>,
    edges: Option<&Path>,
    log: Option<&Path>,
    lexicon: Option<&Path>,
    k: usize,
    mode: InfluenceMode,
    gain: GainFormula,
    out: &Path,
) -> Result<(), CliError> {
    if k < 1 {
        return Err(CliError::Usage("--k must be at least 1".to_string()));
    }
    let graph = load_scored_graph(graph, edges, log, lexicon)?;
    let view = InfluenceView::new(&graph, mode);
    let start = Instant::now();
    let selection = celf_select(&view, k, gain).map_err(|e| match e {
        MaximizeError::KOutOfRange { .. } => CliError::Constraint(e.to_string()),
        MaximizeError::InstanceTooLarge { .. } => CliError::Constraint(e.to_string()),
    })?;
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let report = SeedReport::build(&graph, &selection, mode, gain, Some(elapsed_ms));
    write_file(out, &report.to_json())?;
    print!("{}", report.render_table());
    println!("report -> {}", out.display());
    Ok(())
}

fn cmd_report(reports: &[PathBuf], out: &Path) -> Result<(), CliError> {
    let mut parsed = Vec::with_capacity(reports.len());
    for path in reports {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
        let report = SeedReport::from_json(&text).map_err(|e| {
            let message = format!("{}: {e}", path.display());
            match e {
                ReportError::MixedUniverses { .. } => CliError::Constraint(message),
                _ => CliError::Parse(message),
            }
        })?;
        parsed.push(report);
    }
    let comparison = compare(&parsed).map_err(|e| match e {
        ReportError::MixedUniverses { .. } => CliError::Constraint(e.to_string()),
        ReportError::Empty => CliError::Usage(e.to_string()),
        other => CliError::Parse(other.to_string()),
    })?;
    let curves = curves_csv(&parsed).expect("reports already validated");
    write_file(out, &comparison.to_json())?;
    let curves_path = out.with_extension("csv");
    write_file(&curves_path, &curves)?;
    print!("{}", comparison.render_table());
    println!(
        "comparison -> {}, curves -> {}",
        out.display(),
        curves_path.display()
    );
    Ok(())
}

fn cmd_synth(seed: u64, n: usize, out: &Path) -> Result<(), CliError> {
    let files = synth::generate(&SynthConfig { seed, n });
    fs::create_dir_all(out).map_err(|e| CliError::Parse(format!("{}: {e}", out.display())))?;
    write_file(&out.join("edges.csv"), &files.edges_csv)?;
    write_file(&out.join("log.jsonl"), &files.log_jsonl)?;
    write_file(&out.join("lexicon.tsv"), &files.lexicon_tsv)?;
    println!(
        "wrote edges.csv, log.jsonl, lexicon.tsv for n = {n}, seed = {seed} -> {}",
        out.display()
    );
    Ok(())
}
