//! The three experiment commands and their output management. Every file a
//! command writes is tracked; a command that fails midway removes its
//! partial outputs, so a nonzero exit never leaves half-written artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use fitcloud::heuristic::runs_to_csv;
use fitcloud::{
    barrier_report, build_cloud_exhaustive, build_cloud_sampled, fit_mean_line,
    local_optima_census_exhaustive, optima_below_diagonal_exhaustive, thresholds,
    weinberger_line, AverageTrajectory, BorderingRule, CloudShape, FitnessCloud,
    NeighborEvaluator, NkLandscape, RegressionFit,
};

use crate::config::{ExperimentConfig, Mode};
use crate::plot;

#[derive(Clone, Copy, Debug)]
pub enum CommandKind {
    Cloud,
    Ghc,
    Optima,
}

/// Run a command against a resolved config; on failure all files written so
/// far are removed before the error propagates.
pub fn run(kind: CommandKind, cfg: &ExperimentConfig) -> Result<()> {
    let mut out = Outputs::new(&cfg.output_dir)?;
    let result = match kind {
        CommandKind::Cloud => cmd_cloud(cfg, &mut out),
        CommandKind::Ghc => cmd_ghc(cfg, &mut out),
        CommandKind::Optima => cmd_optima(cfg, &mut out),
    };
    if result.is_err() {
        out.discard();
    }
    result
}

struct Outputs {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Outputs {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("out: cannot create output directory {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, contents)
            .with_context(|| format!("out: cannot write {}", path.display()))?;
        self.written.push(path.clone());
        eprintln!("wrote {}", path.display());
        Ok(())
    }

    /// For files produced by another writer (plots): register the path first
    /// so a partially written file is still cleaned up on failure.
    fn produce(&mut self, name: &str, f: impl FnOnce(&Path) -> Result<()>) -> Result<()> {
        let path = self.dir.join(name);
        self.written.push(path.clone());
        f(&path)?;
        eprintln!("wrote {}", path.display());
        Ok(())
    }

    fn discard(&self) {
        for path in &self.written {
            let _ = fs::remove_file(path);
        }
    }
}

fn build_landscape(cfg: &ExperimentConfig) -> Result<NkLandscape> {
    NkLandscape::new(cfg.n, cfg.k, cfg.seed, cfg.link_model).map_err(|e| anyhow!("n/k: {e}"))
}

fn build_cloud_for(
    cfg: &ExperimentConfig,
    land: &NkLandscape,
    rule: BorderingRule,
) -> Result<FitnessCloud> {
    let cloud = match cfg.mode {
        Mode::Exhaustive => {
            eprintln!(
                "enumerating 2^{} = {} genotypes under the {rule} rule",
                cfg.n,
                land.genotype_count()
            );
            build_cloud_exhaustive(land, rule, cfg.bin_width)?
        }
        Mode::Sample { count, sample_seed } => {
            eprintln!("sampling {count} genotypes (sample seed {sample_seed}) under the {rule} rule");
            build_cloud_sampled(land, count, sample_seed, rule, cfg.bin_width)?
        }
    };
    eprintln!("cloud: {} points accumulated", cloud.total_points());
    Ok(cloud)
}

fn regression_summary(fit: &RegressionFit, cfg: &ExperimentConfig, rule: BorderingRule) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "observed_slope = {}", fit.slope);
    let _ = writeln!(out, "observed_intercept = {}", fit.intercept);
    let _ = writeln!(out, "r_squared = {}", fit.r_squared);
    if let Ok((slope, intercept)) = weinberger_line(cfg.n, cfg.k) {
        let _ = writeln!(out, "predicted_slope = {slope}");
        // The mean-neighbor line predicts the intercept only for the whole
        // neighborhood; under the GHC rule the intercept is empirical.
        if rule == BorderingRule::WholeNeighborhood {
            let _ = writeln!(out, "predicted_intercept = {intercept}");
        }
    }
    out
}

fn title_for(cfg: &ExperimentConfig, rule: BorderingRule) -> String {
    format!(
        "NK landscape n={} k={} seed={} ({rule} rule)",
        cfg.n, cfg.k, cfg.seed
    )
}

/// Raw point dump, small search spaces only: `f,f_border` per point.
fn points_csv(cfg: &ExperimentConfig, land: &NkLandscape, rule: BorderingRule) -> Result<String> {
    let mut out = String::from("f,f_border\n");
    let mut eval = NeighborEvaluator::new(land);
    let mut emit = |g: fitcloud::Genotype| {
        let f = eval.load(g);
        match rule {
            BorderingRule::WholeNeighborhood => {
                for j in 0..cfg.n {
                    let _ = writeln!(out, "{f},{}", eval.neighbor_fitness(j));
                }
            }
            BorderingRule::GhcBest => {
                let (_, best) = eval.best_neighbor();
                let _ = writeln!(out, "{f},{best}");
            }
        }
    };
    match cfg.mode {
        Mode::Exhaustive => land.enumerate().for_each(&mut emit),
        Mode::Sample { count, sample_seed } => land
            .sample(count, sample_seed)
            .map_err(|e| anyhow!("samples: {e}"))?
            .for_each(&mut emit),
    }
    Ok(out)
}

fn write_shape_products(
    cfg: &ExperimentConfig,
    out: &mut Outputs,
    shape: &CloudShape,
    rule: BorderingRule,
) -> Result<(fitcloud::EvolvabilityThresholds, RegressionFit)> {
    out.write("shape.csv", &shape.to_csv())?;
    let th = thresholds(shape).map_err(|e| anyhow!("thresholds: {e}"))?;
    for w in &th.warnings {
        eprintln!("warning: {w}");
    }
    out.write("thresholds.csv", &th.to_csv())?;
    let fit = fit_mean_line(shape).map_err(|e| anyhow!("regression: {e}"))?;
    out.write("regression.txt", &regression_summary(&fit, cfg, rule))?;
    Ok((th, fit))
}

fn cmd_cloud(cfg: &ExperimentConfig, out: &mut Outputs) -> Result<()> {
    let land = build_landscape(cfg)?;
    out.write("landscape.txt", &land.descriptor())?;
    let cloud = build_cloud_for(cfg, &land, cfg.rule)?;
    let shape = cloud.shape().map_err(|e| anyhow!("shape: {e}"))?;
    write_shape_products(cfg, out, &shape, cfg.rule)?;
    if cfg.dump_points {
        out.write("points.csv", &points_csv(cfg, &land, cfg.rule)?)?;
    }
    out.produce("cloud.svg", |p| {
        plot::plot_shape(p, &title_for(cfg, cfg.rule), &shape, None)
    })
}

fn cmd_ghc(cfg: &ExperimentConfig, out: &mut Outputs) -> Result<()> {
    let ghc = cfg.ghc.ok_or_else(|| {
        anyhow!("ghc: run plan missing; supply --generations, --runs and --run-seed (or config keys generations/runs/run_seed)")
    })?;
    let land = build_landscape(cfg)?;
    out.write("landscape.txt", &land.descriptor())?;
    let cloud = build_cloud_for(cfg, &land, BorderingRule::GhcBest)?;
    let shape = cloud.shape().map_err(|e| anyhow!("shape: {e}"))?;
    let (th, fit) = write_shape_products(cfg, out, &shape, BorderingRule::GhcBest)?;

    eprintln!(
        "ghc: {} runs x {} generations (run seed {})",
        ghc.runs(),
        ghc.generations(),
        ghc.run_seed()
    );
    let runs = fitcloud::run_set(&land, &ghc);
    let avg = AverageTrajectory::from_runs(&runs);
    out.write("trajectory.csv", &avg.to_csv())?;
    if cfg.dump_runs {
        out.write("runs.csv", &runs_to_csv(&runs))?;
    }
    let report = barrier_report(&avg, &th, &fit, cfg.barrier_tol, cfg.band)
        .map_err(|e| anyhow!("barrier: {e}"))?;
    out.write("barrier.txt", &report.to_text())?;
    out.produce("ghc.svg", |p| {
        plot::plot_shape(p, &title_for(cfg, BorderingRule::GhcBest), &shape, Some(&avg))
    })
}

fn cmd_optima(cfg: &ExperimentConfig, out: &mut Outputs) -> Result<()> {
    if let Mode::Sample { .. } = cfg.mode {
        bail!("mode: the optima census requires the full search space; use mode = exhaustive");
    }
    let land = build_landscape(cfg)?;
    out.write("landscape.txt", &land.descriptor())?;
    eprintln!(
        "censusing 2^{} = {} genotypes for strict local optima",
        cfg.n,
        land.genotype_count()
    );
    let census = local_optima_census_exhaustive(&land, cfg.bin_width)
        .map_err(|e| anyhow!("census: {e}"))?;
    out.write("histogram.csv", &census.histogram_csv())?;
    let check = optima_below_diagonal_exhaustive(&land);
    let mut summary = String::new();
    let _ = writeln!(summary, "optima_count = {}", census.optima);
    let _ = writeln!(summary, "tie_count = {}", census.ties);
    let _ = writeln!(summary, "genotypes_checked = {}", census.checked);
    let _ = writeln!(summary, "diagonal_verdict = {}", check.holds);
    if let Some(ce) = &check.counterexample {
        let _ = writeln!(
            summary,
            "counterexample = {} (f {}, f_border {}, strict_optimum {})",
            ce.genotype, ce.fitness, ce.bordering, ce.strict_optimum
        );
    }
    out.write("optima.txt", &summary)?;
    eprintln!(
        "census: {} strict optima, {} plateau ties, diagonal verdict {}",
        census.optima, census.ties, check.holds
    );
    Ok(())
}
