//! Greedy hill climbing (GHC): best-improvement ascent over the Hamming-1
//! neighborhood, per-generation (f, f-bordering) trajectory recording,
//! averaging across runs, and the barrier check against the beta threshold.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::cloud::{EvolvabilityThresholds, RegressionFit};
use crate::error::{Error, Result};
use crate::landscape::{Genotype, NeighborEvaluator, NkLandscape};

/// Run plan for averaged hill-climbing experiments. The customary setup is
/// 100 generations averaged over 70 runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GhcConfig {
    generations: usize,
    runs: usize,
    run_seed: u64,
}

impl GhcConfig {
    pub fn new(generations: usize, runs: usize, run_seed: u64) -> Result<Self> {
        if generations < 1 {
            return Err(Error::GhcConfig {
                field: "generations",
            });
        }
        if runs < 1 {
            return Err(Error::GhcConfig { field: "runs" });
        }
        Ok(Self {
            generations,
            runs,
            run_seed,
        })
    }

    pub fn generations(&self) -> usize {
        self.generations
    }

    pub fn runs(&self) -> usize {
        self.runs
    }

    pub fn run_seed(&self) -> u64 {
        self.run_seed
    }
}

impl Default for GhcConfig {
    fn default() -> Self {
        Self {
            generations: 100,
            runs: 70,
            run_seed: 0,
        }
    }
}

/// One attempted GHC move: the fittest Hamming-1 neighbor if it strictly
/// improves on f(g), otherwise `g` unchanged. Ties among equal-best
/// improving neighbors break toward the lowest flipped-locus index.
pub fn ghc_step(land: &NkLandscape, g: Genotype) -> Genotype {
    assert_eq!(g.len(), land.n(), "genotype length must match the landscape");
    let mut eval = NeighborEvaluator::new(land);
    let f = eval.load(g);
    let (j, best) = eval.best_neighbor();
    if best > f {
        g.flip(j)
    } else {
        g
    }
}

/// The (f, f-bordering) pair observed at one generation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryPoint {
    pub f: f64,
    pub f_border: f64,
}

/// The list of successive (f, f-bordering) points of one GHC run, indexed by
/// generation; entry 0 is the initial solution, so the list has
/// generations + 1 entries. Once the run reaches a local optimum the state
/// repeats, padding the trajectory to full length.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    points: Vec<TrajectoryPoint>,
    final_state: Genotype,
}

impl Trajectory {
    pub fn points(&self) -> &[TrajectoryPoint] {
        &self.points
    }

    /// Number of generations (entries minus the initial solution).
    pub fn generations(&self) -> usize {
        self.points.len() - 1
    }

    /// The state the run ended in.
    pub fn final_state(&self) -> Genotype {
        self.final_state
    }
}

/// Run GHC for a fixed number of attempted steps from `start`, recording
/// (f, f-bordering) at every generation under the best-neighbor rule.
///
/// Panics if `generations` is zero or `start` does not match the landscape.
pub fn run_ghc(land: &NkLandscape, start: Genotype, generations: usize) -> Trajectory {
    assert!(generations >= 1, "generations must be >= 1");
    assert_eq!(start.len(), land.n(), "genotype length must match the landscape");
    let mut eval = NeighborEvaluator::new(land);
    let mut points = Vec::with_capacity(generations + 1);
    let mut g = start;
    let mut f = eval.load(g);
    let (mut best_j, mut best_f) = eval.best_neighbor();
    points.push(TrajectoryPoint { f, f_border: best_f });
    for _ in 0..generations {
        if best_f > f {
            g = g.flip(best_j);
            f = eval.load(g);
            let (j, b) = eval.best_neighbor();
            best_j = j;
            best_f = b;
        }
        // No improving neighbor: the state (and its point) repeats.
        points.push(TrajectoryPoint { f, f_border: best_f });
    }
    Trajectory {
        points,
        final_state: g,
    }
}

/// All runs of a config, indexed by run number. Starts are uniform random
/// genotypes derived from the run seed; runs execute in parallel but the
/// returned order is always run 0, 1, 2, ...
pub fn run_set(land: &NkLandscape, cfg: &GhcConfig) -> Vec<Trajectory> {
    let starts: Vec<Genotype> = land
        .sample(cfg.runs() as u64, cfg.run_seed())
        .expect("runs >= 1 by construction")
        .collect();
    starts
        .into_par_iter()
        .map(|start| run_ghc(land, start, cfg.generations()))
        .collect()
}

/// Pointwise mean of f and f-bordering at one generation, plus the
/// population spread of f across runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AveragePoint {
    pub mean_f: f64,
    pub mean_f_border: f64,
    pub std_f: f64,
}

/// Per-generation averages over a set of equal-length trajectories.
#[derive(Clone, Debug, PartialEq)]
pub struct AverageTrajectory {
    points: Vec<AveragePoint>,
}

impl AverageTrajectory {
    /// Average a run set pointwise, in run order (a deterministic reduction:
    /// the result cannot depend on which run finished first).
    pub fn from_runs(runs: &[Trajectory]) -> Self {
        assert!(!runs.is_empty(), "need at least one trajectory");
        let len = runs[0].points().len();
        assert!(
            runs.iter().all(|t| t.points().len() == len),
            "trajectories must have equal length"
        );
        let count = runs.len() as f64;
        let points = (0..len)
            .map(|t| {
                let mut sum_f = 0.0;
                let mut sum_fb = 0.0;
                for run in runs {
                    sum_f += run.points()[t].f;
                    sum_fb += run.points()[t].f_border;
                }
                let mean_f = sum_f / count;
                let mean_f_border = sum_fb / count;
                let mut var = 0.0;
                for run in runs {
                    let d = run.points()[t].f - mean_f;
                    var += d * d;
                }
                AveragePoint {
                    mean_f,
                    mean_f_border,
                    std_f: (var / count).sqrt(),
                }
            })
            .collect();
        Self { points }
    }

    pub fn from_points(points: Vec<AveragePoint>) -> Self {
        Self { points }
    }

    pub fn points(&self) -> &[AveragePoint] {
        &self.points
    }

    pub fn terminal(&self) -> AveragePoint {
        *self.points.last().expect("average trajectory is non-empty")
    }

    /// CSV export: `generation,mean_f,mean_f_border,std_f`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("generation,mean_f,mean_f_border,std_f\n");
        for (t, p) in self.points.iter().enumerate() {
            let _ = writeln!(out, "{t},{},{},{}", p.mean_f, p.mean_f_border, p.std_f);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty trajectory CSV".into()))?;
        if header != "generation,mean_f,mean_f_border,std_f" {
            return Err(Error::Parse(format!(
                "unexpected trajectory CSV header {header:?}"
            )));
        }
        let mut points = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!(
                    "trajectory CSV row has {} fields",
                    fields.len()
                )));
            }
            let gen: usize = fields[0]
                .parse()
                .map_err(|_| Error::Parse(format!("bad generation {:?}", fields[0])))?;
            if gen != i {
                return Err(Error::Parse(format!(
                    "trajectory CSV generations out of order at row {i}"
                )));
            }
            let num = |s: &str| -> Result<f64> {
                s.parse()
                    .map_err(|_| Error::Parse(format!("bad number {s:?} in trajectory CSV")))
            };
            points.push(AveragePoint {
                mean_f: num(fields[1])?,
                mean_f_border: num(fields[2])?,
                std_f: num(fields[3])?,
            });
        }
        if points.is_empty() {
            return Err(Error::Parse("trajectory CSV has no rows".into()));
        }
        Ok(Self { points })
    }
}

/// Average a full run set from fresh random starts.
pub fn average_trajectory(land: &NkLandscape, cfg: &GhcConfig) -> AverageTrajectory {
    AverageTrajectory::from_runs(&run_set(land, cfg))
}

/// Per-run CSV dump: `run,generation,f,f_border`.
pub fn runs_to_csv(runs: &[Trajectory]) -> String {
    let mut out = String::from("run,generation,f,f_border\n");
    for (r, run) in runs.iter().enumerate() {
        for (t, p) in run.points().iter().enumerate() {
            let _ = writeln!(out, "{r},{t},{},{}", p.f, p.f_border);
        }
    }
    out
}

/// Parse a per-run dump back into bare point lists, grouped by run.
pub fn runs_from_csv(text: &str) -> Result<Vec<Vec<TrajectoryPoint>>> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Parse("empty runs CSV".into()))?;
    if header != "run,generation,f,f_border" {
        return Err(Error::Parse(format!("unexpected runs CSV header {header:?}")));
    }
    let mut runs: Vec<Vec<TrajectoryPoint>> = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(Error::Parse(format!("runs CSV row has {} fields", fields.len())));
        }
        let run: usize = fields[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad run index {:?}", fields[0])))?;
        if run == runs.len() {
            runs.push(Vec::new());
        } else if run + 1 != runs.len() {
            return Err(Error::Parse("runs CSV rows out of order".into()));
        }
        let num = |s: &str| -> Result<f64> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad number {s:?} in runs CSV")))
        };
        runs.last_mut().unwrap().push(TrajectoryPoint {
            f: num(fields[2])?,
            f_border: num(fields[3])?,
        });
    }
    Ok(runs)
}

/// Where the averaged search settled relative to the beta barrier, plus how
/// closely the trajectory tracked the fitted FC_mean line.
#[derive(Clone, Copy, Debug)]
pub struct BarrierReport {
    pub terminal_f: f64,
    pub terminal_f_border: f64,
    pub beta: f64,
    /// |terminal mean fitness - beta|.
    pub distance: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Half-width of the vertical band around the fitted mean line.
    pub band: f64,
    /// Fraction of post-start generations whose mean point lies within the
    /// band.
    pub on_line_fraction: f64,
}

impl BarrierReport {
    /// Plain-text key/value summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "terminal_mean_f = {}", self.terminal_f);
        let _ = writeln!(out, "terminal_mean_f_border = {}", self.terminal_f_border);
        let _ = writeln!(out, "beta = {}", self.beta);
        let _ = writeln!(out, "distance = {}", self.distance);
        let _ = writeln!(out, "tolerance = {}", self.tolerance);
        let _ = writeln!(out, "pass = {}", self.pass);
        let _ = writeln!(out, "band = {}", self.band);
        let _ = writeln!(out, "on_line_fraction = {}", self.on_line_fraction);
        out
    }
}

/// Compare the terminal point of an average trajectory against beta and
/// measure adherence to the fitted mean line.
pub fn barrier_report(
    avg: &AverageTrajectory,
    t: &EvolvabilityThresholds,
    mean_line: &RegressionFit,
    tolerance: f64,
    band: f64,
) -> Result<BarrierReport> {
    let beta = t.beta.ok_or(Error::MissingThreshold { name: "beta" })?;
    let terminal = avg.terminal();
    let distance = (terminal.mean_f - beta).abs();
    let after_start = &avg.points()[1..];
    let within = after_start
        .iter()
        .filter(|p| (p.mean_f_border - mean_line.at(p.mean_f)).abs() <= band)
        .count();
    let on_line_fraction = if after_start.is_empty() {
        0.0
    } else {
        within as f64 / after_start.len() as f64
    };
    Ok(BarrierReport {
        terminal_f: terminal.mean_f,
        terminal_f_border: terminal.mean_f_border,
        beta,
        distance,
        tolerance,
        pass: distance <= tolerance,
        band,
        on_line_fraction,
    })
}
