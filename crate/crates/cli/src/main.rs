//! `fitcloud` — fitness-cloud experiments on NK landscapes from the command
//! line. Three subcommands: `cloud` (shape curves, thresholds, mean-line
//! fit), `ghc` (averaged hill-climbing trajectories against the GHC cloud)
//! and `optima` (local-optima census). All outputs are reproducible from the
//! seeds in the config and independent of the worker thread count
//! (set RAYON_NUM_THREADS to pin it).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use fitcloud::{BorderingRule, LinkModel};

use fitcloud_cli::commands::{self, CommandKind};
use fitcloud_cli::config::{self, ModeKind, PartialConfig};

#[derive(Parser)]
#[command(
    name = "fitcloud",
    version,
    about = "Fitness-cloud analysis of NK landscapes: shape curves, evolvability thresholds, local optima and greedy hill-climbing dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a fitness cloud and export its shape, thresholds and mean-line fit
    Cloud(RunArgs),
    /// Build the GHC cloud and overlay an averaged hill-climbing trajectory
    Ghc(RunArgs),
    /// Census strict local optima and verify the below-diagonal equivalence
    Optima(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Locus count (1..=32)
    #[arg(long)]
    n: Option<usize>,
    /// Epistatic links per locus (0..=n-1)
    #[arg(long)]
    k: Option<usize>,
    /// Landscape seed
    #[arg(long)]
    seed: Option<u64>,
    /// Link model: random | adjacent
    #[arg(long)]
    links: Option<LinkModel>,
    /// Genotype stream: exhaustive | sample
    #[arg(long)]
    mode: Option<ModeKind>,
    /// Sample count (sample mode)
    #[arg(long)]
    samples: Option<u64>,
    /// Sampling seed (sample mode)
    #[arg(long)]
    sample_seed: Option<u64>,
    /// Fitness-equality interval width
    #[arg(long)]
    bin_width: Option<f64>,
    /// Bordering rule for the cloud command: whole | ghc
    #[arg(long)]
    rule: Option<BorderingRule>,
    /// GHC generations per run
    #[arg(long)]
    generations: Option<usize>,
    /// GHC runs to average
    #[arg(long)]
    runs: Option<usize>,
    /// Seed deriving the per-run initial solutions
    #[arg(long)]
    run_seed: Option<u64>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key = value config file; flags override file values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Pass distance between the trajectory terminal and beta
    #[arg(long)]
    barrier_tol: Option<f64>,
    /// Half-width of the on-line band in the barrier report
    #[arg(long)]
    band: Option<f64>,
    /// Allow exhaustive enumeration above n = 25 (costly)
    #[arg(long)]
    force_exhaustive: bool,
    /// Also write per-run trajectories (runs.csv)
    #[arg(long)]
    dump_runs: bool,
    /// Also write raw cloud points (points.csv; n <= 16 only)
    #[arg(long)]
    dump_points: bool,
}

impl RunArgs {
    fn to_partial(&self) -> PartialConfig {
        PartialConfig {
            n: self.n,
            k: self.k,
            seed: self.seed,
            links: self.links,
            mode: self.mode,
            samples: self.samples,
            sample_seed: self.sample_seed,
            bin_width: self.bin_width,
            rule: self.rule,
            generations: self.generations,
            runs: self.runs,
            run_seed: self.run_seed,
            out: self.out.clone(),
            barrier_tol: self.barrier_tol,
            band: self.band,
            force_exhaustive: self.force_exhaustive,
            dump_runs: self.dump_runs,
            dump_points: self.dump_points,
        }
    }
}

fn dispatch(kind: CommandKind, args: &RunArgs) -> Result<()> {
    let from_file = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("config: cannot read {}", path.display()))?;
            config::parse_config_file(&text)?
        }
        None => PartialConfig::default(),
    };
    let merged = from_file.overridden_by(args.to_partial());
    let cfg = config::resolve(merged, matches!(kind, CommandKind::Ghc))?;
    commands::run(kind, &cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = match &cli.command {
        Command::Cloud(a) => (CommandKind::Cloud, a),
        Command::Ghc(a) => (CommandKind::Ghc, a),
        Command::Optima(a) => (CommandKind::Optima, a),
    };
    match dispatch(kind, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
