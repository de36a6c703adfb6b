//! Fitness-cloud analysis of NK landscapes.
//!
//! A fitness cloud is the scatterplot of (fitness, bordering fitness) over a
//! search space, where the bordering fitness of a solution is the fitness of
//! the neighbor a given rule selects. This crate builds such clouds for NK
//! landscapes over bit-strings, derives their min/mean/max shape curves and
//! the evolvability thresholds alpha/beta/gamma where those curves cross the
//! diagonal, censuses local optima, and runs greedy hill-climbing
//! trajectories to relate search dynamics to the cloud.
//!
//! Everything is deterministic: landscapes, samples and hill-climbing runs
//! are reproducible from 64-bit seeds, and the parallel builders chunk work
//! in a fixed way so results do not depend on the number of worker threads.

pub mod cloud;
pub mod error;
pub mod heuristic;
pub mod landscape;

pub use cloud::{
    bin_index, build_cloud, build_cloud_exhaustive, build_cloud_sampled, classify_regime,
    fit_mean_line, local_optima_census, local_optima_census_exhaustive, neighbors,
    optima_below_diagonal, optima_below_diagonal_exhaustive, thresholds, weinberger_line,
    BorderingRule, CloudShape, DiagonalCheck, EvolvabilityThresholds, FitnessCloud, OptimaCensus,
    Regime, RegressionFit, ShapeRow,
};
pub use error::{Error, Result};
pub use heuristic::{
    average_trajectory, barrier_report, ghc_step, run_ghc, run_set, AverageTrajectory,
    BarrierReport, GhcConfig, Trajectory,
};
pub use landscape::{EpistasisLinks, Genotype, LinkModel, NeighborEvaluator, NkLandscape};
