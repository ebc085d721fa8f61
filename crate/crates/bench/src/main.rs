use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use rcmpp::{Algorithm, ParseOptions, StartPolicy};
use rcmpp_bench::{
    load_corpus, run_bench, run_reorder, run_solve_bench, write_report, BenchConfig, BenchError,
    OutputFormat, ReorderJob,
};

#[derive(Parser)]
#[command(
    name = "rcmpp",
    version,
    about = "Reverse Cuthill-McKee reordering and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reorder one Matrix Market file.
    Reorder(ReorderArgs),
    /// Compare the RCM variants on every matrix in a directory.
    Bench(SweepArgs),
    /// Time envelope Cholesky solves after each reordering.
    SolveBench(SolveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum StartMode {
    MinDegree,
    Random,
    Node,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct StartArgs {
    /// How the George-Liu walk picks its first node in each component.
    #[arg(long, value_enum, default_value = "min-degree")]
    start: StartMode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Start node for `--start node`.
    #[arg(long)]
    node: Option<usize>,
}

impl StartArgs {
    fn policy(&self) -> Result<StartPolicy, BenchError> {
        Ok(match self.start {
            StartMode::MinDegree => StartPolicy::MinDegreeDeterministic,
            StartMode::Random => StartPolicy::SeededRandom { seed: self.seed },
            StartMode::Node => StartPolicy::ExplicitNode {
                node: self
                    .node
                    .ok_or_else(|| BenchError::Config("--start node requires --node".into()))?,
            },
        })
    }
}

#[derive(Args)]
struct ReorderArgs {
    /// rcm++, gl_rcm, mind_rcm or none.
    #[arg(long, default_value = "rcm++")]
    algo: String,
    #[arg(long = "in")]
    input: PathBuf,
    /// Permuted matrix (Matrix Market).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Permutation: `n`, then the new position of each original row.
    #[arg(long)]
    perm_out: Option<PathBuf>,
    /// Report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Accept general files with an asymmetric pattern by using A + Aᵀ.
    #[arg(long)]
    symmetrize: bool,
    #[command(flatten)]
    start: StartArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    dir: PathBuf,
    /// Comma-separated algorithms.
    #[arg(long, default_value = "rcm++,gl_rcm,mind_rcm", value_delimiter = ',')]
    algo: Vec<String>,
    /// Smoothing span of the relative-difference series.
    #[arg(long, default_value_t = 10)]
    span: usize,
    /// Finder runs per matrix and algorithm; the median is reported.
    #[arg(long, default_value_t = 100)]
    repeats: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Report file; CSV output also writes `<stem>.summary.csv` beside it.
    #[arg(long, default_value = "bench.csv")]
    out: PathBuf,
    /// Matrices processed in parallel.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    symmetrize: bool,
    #[command(flatten)]
    start: StartArgs,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Factor and solve runs per matrix and algorithm.
    #[arg(long, default_value_t = 3)]
    solve_repeats: usize,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, BenchError> {
    Ok(s.trim().parse::<Algorithm>()?)
}

fn config(args: &SweepArgs) -> Result<BenchConfig, BenchError> {
    Ok(BenchConfig {
        corpus_dir: args.dir.clone(),
        algorithms: args
            .algo
            .iter()
            .map(|a| parse_algorithm(a))
            .collect::<Result<_, _>>()?,
        start_policy: args.start.policy()?,
        smoothing_span: args.span,
        finder_repeats: args.repeats,
        output_format: match args.format {
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        },
        output_path: args.out.clone(),
        jobs: args.jobs,
        symmetrize: args.symmetrize,
        ..BenchConfig::default()
    })
}

fn run(cli: Cli) -> Result<(), BenchError> {
    match cli.command {
        Command::Reorder(args) => {
            let job = ReorderJob {
                input: args.input,
                algorithm: parse_algorithm(&args.algo)?,
                policy: args.start.policy()?,
                symmetrize: args.symmetrize,
                out: args.out,
                perm_out: args.perm_out,
                report: args.report,
            };
            let r = run_reorder(&job)?;
            info!(
                "{}: bandwidth {} -> {}, profile {} -> {}",
                job.input.display(),
                r.bandwidth_before,
                r.bandwidth_after,
                r.profile_before,
                r.profile_after
            );
        }
        Command::Bench(args) => {
            let config = config(&args)?;
            config.validate()?;
            let corpus = load_corpus(
                &config.corpus_dir,
                ParseOptions {
                    symmetrize: config.symmetrize,
                },
            )?;
            let outcome = run_bench(&corpus, &config)?;
            let written = write_report(
                &config.output_path,
                config.output_format,
                &outcome.rows,
                &outcome.summary,
            )?;
            info!("{} rows written to {:?}", outcome.rows.len(), written);
        }
        Command::SolveBench(args) => {
            let mut config = config(&args.sweep)?;
            config.solve = true;
            config.solve_repeats = args.solve_repeats;
            config.validate()?;
            let corpus = load_corpus(
                &config.corpus_dir,
                ParseOptions {
                    symmetrize: config.symmetrize,
                },
            )?;
            let outcome = run_solve_bench(&corpus, &config)?;
            let written = write_report(
                &config.output_path,
                config.output_format,
                &outcome.rows,
                &outcome.summary,
            )?;
            info!("{} rows written to {:?}", outcome.rows.len(), written);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
