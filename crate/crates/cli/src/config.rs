//! Experiment configuration: a flat key/value config file, CLI flag
//! overrides (flags win), defaults, and validation that names the offending
//! key.

use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use fitcloud::{BorderingRule, GhcConfig, LinkModel};

/// Exhaustive enumeration is refused above this locus count unless forced.
pub const EXHAUSTIVE_N_LIMIT: usize = 25;

/// Raw point dumps are refused above this locus count.
pub const DUMP_POINTS_N_LIMIT: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeKind {
    Exhaustive,
    Sample,
}

impl FromStr for ModeKind {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(ModeKind::Exhaustive),
            "sample" => Ok(ModeKind::Sample),
            other => bail!("unknown mode {other:?} (expected exhaustive or sample)"),
        }
    }
}

/// How the genotype stream is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Sample { count: u64, sample_seed: u64 },
}

/// A fully resolved experiment description.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub link_model: LinkModel,
    pub mode: Mode,
    pub bin_width: f64,
    pub rule: BorderingRule,
    pub ghc: Option<GhcConfig>,
    pub output_dir: PathBuf,
    pub barrier_tol: f64,
    pub band: f64,
    pub dump_runs: bool,
    pub dump_points: bool,
}

/// Config values gathered from one source (file or flags); `None` means
/// "not given here".
#[derive(Clone, Debug, Default)]
pub struct PartialConfig {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub seed: Option<u64>,
    pub links: Option<LinkModel>,
    pub mode: Option<ModeKind>,
    pub samples: Option<u64>,
    pub sample_seed: Option<u64>,
    pub bin_width: Option<f64>,
    pub rule: Option<BorderingRule>,
    pub generations: Option<usize>,
    pub runs: Option<usize>,
    pub run_seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub barrier_tol: Option<f64>,
    pub band: Option<f64>,
    pub force_exhaustive: bool,
    pub dump_runs: bool,
    pub dump_points: bool,
}

impl PartialConfig {
    /// Layer `over` on top of `self`: values in `over` win.
    pub fn overridden_by(mut self, over: PartialConfig) -> PartialConfig {
        macro_rules! take {
            ($field:ident) => {
                if over.$field.is_some() {
                    self.$field = over.$field;
                }
            };
        }
        take!(n);
        take!(k);
        take!(seed);
        take!(links);
        take!(mode);
        take!(samples);
        take!(sample_seed);
        take!(bin_width);
        take!(rule);
        take!(generations);
        take!(runs);
        take!(run_seed);
        take!(out);
        take!(barrier_tol);
        take!(band);
        self.force_exhaustive |= over.force_exhaustive;
        self.dump_runs |= over.dump_runs;
        self.dump_points |= over.dump_points;
        self
    }
}

/// Parse a flat `key = value` config file (# starts a comment line).
pub fn parse_config_file(text: &str) -> Result<PartialConfig> {
    let mut cfg = PartialConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("config line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        let ctx = || format!("config key {key}");
        match key {
            "n" => cfg.n = Some(value.parse().with_context(ctx)?),
            "k" => cfg.k = Some(value.parse().with_context(ctx)?),
            "seed" => cfg.seed = Some(value.parse().with_context(ctx)?),
            "links" => cfg.links = Some(value.parse().with_context(ctx)?),
            "mode" => cfg.mode = Some(value.parse().with_context(ctx)?),
            "samples" => cfg.samples = Some(value.parse().with_context(ctx)?),
            "sample_seed" => cfg.sample_seed = Some(value.parse().with_context(ctx)?),
            "bin_width" => cfg.bin_width = Some(value.parse().with_context(ctx)?),
            "rule" => cfg.rule = Some(value.parse().with_context(ctx)?),
            "generations" => cfg.generations = Some(value.parse().with_context(ctx)?),
            "runs" => cfg.runs = Some(value.parse().with_context(ctx)?),
            "run_seed" => cfg.run_seed = Some(value.parse().with_context(ctx)?),
            "out" => cfg.out = Some(PathBuf::from(value)),
            "barrier_tol" => cfg.barrier_tol = Some(value.parse().with_context(ctx)?),
            "band" => cfg.band = Some(value.parse().with_context(ctx)?),
            "force_exhaustive" => cfg.force_exhaustive = value.parse().with_context(ctx)?,
            "dump_runs" => cfg.dump_runs = value.parse().with_context(ctx)?,
            "dump_points" => cfg.dump_points = value.parse().with_context(ctx)?,
            other => bail!("config key {other}: unknown key"),
        }
    }
    Ok(cfg)
}

/// Turn merged partial values into a validated experiment config.
/// `wants_ghc` makes the GHC section mandatory, filling the customary
/// defaults (100 generations, 70 runs) where flags and file are silent.
pub fn resolve(partial: PartialConfig, wants_ghc: bool) -> Result<ExperimentConfig> {
    let n = partial.n.ok_or_else(|| anyhow!("n: required (flag --n or config key n)"))?;
    let k = partial.k.ok_or_else(|| anyhow!("k: required (flag --k or config key k)"))?;
    let seed = partial.seed.unwrap_or(0);
    let link_model = partial.links.unwrap_or(LinkModel::Random);

    // Let the landscape constructor vet n and k so its bound messages are
    // the single source of truth.
    fitcloud::NkLandscape::new(n, k, seed, link_model)
        .map_err(|e| anyhow!("n/k: {e}"))?;

    let mode = match partial.mode.unwrap_or(ModeKind::Exhaustive) {
        ModeKind::Exhaustive => {
            if n > EXHAUSTIVE_N_LIMIT {
                if !partial.force_exhaustive {
                    bail!(
                        "n: exhaustive mode enumerates 2^{n} genotypes; limited to n <= {EXHAUSTIVE_N_LIMIT} \
                         (pass --force-exhaustive to accept the cost)"
                    );
                }
                eprintln!(
                    "warning: exhaustive enumeration of 2^{n} = {} genotypes will take a while",
                    1u64 << n
                );
            }
            Mode::Exhaustive
        }
        ModeKind::Sample => {
            let count = partial
                .samples
                .ok_or_else(|| anyhow!("samples: required in sample mode"))?;
            if count == 0 {
                bail!("samples: must be >= 1");
            }
            Mode::Sample {
                count,
                sample_seed: partial.sample_seed.unwrap_or(0),
            }
        }
    };

    let bin_width = partial.bin_width.unwrap_or(0.002);
    if !(fitcloud::cloud::MIN_BIN_WIDTH..=1.0).contains(&bin_width) {
        bail!(
            "bin_width: {bin_width} out of range ({} ..= 1)",
            fitcloud::cloud::MIN_BIN_WIDTH
        );
    }

    let ghc = if wants_ghc {
        Some(
            GhcConfig::new(
                partial.generations.unwrap_or(100),
                partial.runs.unwrap_or(70),
                partial.run_seed.unwrap_or(0),
            )
            .map_err(|e| anyhow!("generations/runs: {e}"))?,
        )
    } else {
        None
    };

    let barrier_tol = partial.barrier_tol.unwrap_or(0.03);
    if barrier_tol < 0.0 {
        bail!("barrier_tol: must be >= 0");
    }
    let band = partial.band.unwrap_or(0.05);
    if band < 0.0 {
        bail!("band: must be >= 0");
    }
    if partial.dump_points && n > DUMP_POINTS_N_LIMIT {
        bail!("dump_points: raw point dumps are limited to n <= {DUMP_POINTS_N_LIMIT}");
    }

    Ok(ExperimentConfig {
        n,
        k,
        seed,
        link_model,
        mode,
        bin_width,
        rule: partial.rule.unwrap_or(BorderingRule::WholeNeighborhood),
        ghc,
        output_dir: partial.out.unwrap_or_else(|| PathBuf::from("fitcloud-out")),
        barrier_tol,
        band,
        dump_runs: partial.dump_runs,
        dump_points: partial.dump_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags_flags_win() {
        let file = parse_config_file("n = 10\nk = 2\nseed = 5\nbin_width = 0.01\n").unwrap();
        let flags = PartialConfig {
            seed: Some(9),
            ..PartialConfig::default()
        };
        let cfg = resolve(file.overridden_by(flags), false).unwrap();
        assert_eq!(cfg.n, 10);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.bin_width, 0.01);
    }

    #[test]
    fn config_file_rejects_unknown_keys() {
        let err = parse_config_file("bogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("bogus"));
    }

    #[test]
    fn sample_mode_requires_positive_count() {
        let mut p = PartialConfig {
            n: Some(10),
            k: Some(2),
            mode: Some(ModeKind::Sample),
            ..PartialConfig::default()
        };
        let err = resolve(p.clone(), false).unwrap_err();
        assert!(err.to_string().starts_with("samples:"));
        p.samples = Some(0);
        let err = resolve(p.clone(), false).unwrap_err();
        assert!(err.to_string().starts_with("samples:"));
        p.samples = Some(100);
        assert!(resolve(p, false).is_ok());
    }

    #[test]
    fn exhaustive_mode_caps_n_unless_forced() {
        let mut p = PartialConfig {
            n: Some(26),
            k: Some(2),
            ..PartialConfig::default()
        };
        let err = resolve(p.clone(), false).unwrap_err();
        assert!(err.to_string().contains("force-exhaustive"));
        p.force_exhaustive = true;
        assert!(resolve(p, false).is_ok());
    }

    #[test]
    fn ghc_defaults_mirror_the_customary_setup() {
        let p = PartialConfig {
            n: Some(10),
            k: Some(2),
            ..PartialConfig::default()
        };
        let cfg = resolve(p, true).unwrap();
        let ghc = cfg.ghc.unwrap();
        assert_eq!(ghc.generations(), 100);
        assert_eq!(ghc.runs(), 70);
    }

    #[test]
    fn invalid_bounds_name_the_key() {
        let p = PartialConfig {
            n: Some(5),
            k: Some(5),
            ..PartialConfig::default()
        };
        let err = resolve(p, false).unwrap_err();
        assert!(err.to_string().starts_with("n/k:"), "{err}");
        let p = PartialConfig {
            n: Some(10),
            k: Some(2),
            bin_width: Some(0.0),
            ..PartialConfig::default()
        };
        let err = resolve(p, false).unwrap_err();
        assert!(err.to_string().starts_with("bin_width:"));
        let p = PartialConfig {
            n: Some(10),
            k: Some(2),
            runs: Some(0),
            ..PartialConfig::default()
        };
        let err = resolve(p, true).unwrap_err();
        assert!(err.to_string().contains("runs"));
    }
}
