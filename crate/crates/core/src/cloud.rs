//! Fitness clouds: binned accumulation of (fitness, bordering fitness)
//! points over genotype streams, the min/mean/max shape curves, the
//! evolvability thresholds where those curves cross the diagonal, the
//! mean-line regression, and the local-optima census.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::landscape::{Genotype, NeighborEvaluator, NkLandscape};

/// Which neighbor fitness(es) of a genotype become its bordering fitness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BorderingRule {
    /// One point (f(x), f(y)) per Hamming-1 neighbor y: n points per genotype.
    WholeNeighborhood,
    /// One point per genotype, with the bordering fitness of the greedy hill
    /// climber: the best neighbor fitness max_y f(y).
    GhcBest,
}

impl fmt::Display for BorderingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BorderingRule::WholeNeighborhood => "whole",
            BorderingRule::GhcBest => "ghc",
        })
    }
}

impl FromStr for BorderingRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "whole" => Ok(BorderingRule::WholeNeighborhood),
            "ghc" => Ok(BorderingRule::GhcBest),
            other => Err(Error::Parse(format!(
                "unknown bordering rule {other:?} (expected whole or ghc)"
            ))),
        }
    }
}

/// The n genotypes at Hamming distance 1 from `g`, in flipped-locus order.
pub fn neighbors(g: Genotype) -> Vec<Genotype> {
    (0..g.len()).map(|i| g.flip(i)).collect()
}

/// Practical lower bound on the bin width so bin indices stay in range.
pub const MIN_BIN_WIDTH: f64 = 1e-9;

/// Map a fitness value to its half-open bin [idx*w, (idx+1)*w). A value of
/// 1.0 (the only point on the closed top edge) clamps into the last bin that
/// starts below 1.
pub fn bin_index(f: f64, width: f64) -> Result<u32> {
    check_width(width)?;
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::FitnessOutOfRange { value: f });
    }
    let mut idx = (f / width).floor() as u32;
    if idx > 0 && idx as f64 * width >= 1.0 {
        idx -= 1;
    }
    Ok(idx)
}

fn check_width(width: f64) -> Result<()> {
    if !(MIN_BIN_WIDTH..=1.0).contains(&width) {
        return Err(Error::BinWidth { width });
    }
    Ok(())
}

/// Streaming statistics for one set of neutrality (one fitness bin):
/// count, min, max, and a running mean/variance accumulator over the
/// bordering-fitness values routed to the bin.
#[derive(Clone, Copy, Debug)]
pub struct NeutralityBin {
    count: u64,
    min: f64,
    max: f64,
    mean: f64,
    m2: f64,
}

impl NeutralityBin {
    fn empty() -> Self {
        Self {
            count: 0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            mean: 0.0,
            m2: 0.0,
        }
    }

    #[inline]
    fn push(&mut self, x: f64) {
        self.count += 1;
        if x < self.min {
            self.min = x;
        }
        if x > self.max {
            self.max = x;
        }
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Pooled merge. Exact for count/min/max; mean and m2 combine with the
    /// usual parallel-variance formula, commutative and associative to
    /// rounding error.
    fn merge(&mut self, other: &Self) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Population standard deviation of the bordering fitnesses in the bin.
    pub fn std(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.m2 / self.count as f64).max(0.0).sqrt()
        }
    }
}

/// Binned accumulation of (f, f-bordering) points under one bordering rule.
///
/// Accumulation is a commutative-monoid fold: workers may build private
/// clouds over disjoint genotype ranges and `merge` them afterwards.
#[derive(Clone, Debug)]
pub struct FitnessCloud {
    rule: BorderingRule,
    width: f64,
    bins: BTreeMap<u32, NeutralityBin>,
    total_points: u64,
}

impl FitnessCloud {
    pub fn new(rule: BorderingRule, width: f64) -> Result<Self> {
        check_width(width)?;
        Ok(Self {
            rule,
            width,
            bins: BTreeMap::new(),
            total_points: 0,
        })
    }

    pub fn rule(&self) -> BorderingRule {
        self.rule
    }

    pub fn bin_width(&self) -> f64 {
        self.width
    }

    pub fn total_points(&self) -> u64 {
        self.total_points
    }

    pub fn is_empty(&self) -> bool {
        self.total_points == 0
    }

    /// Accumulate one point: binned by the abscissa `f`, aggregated over the
    /// ordinate `f_border`.
    pub fn push(&mut self, f: f64, f_border: f64) -> Result<()> {
        let idx = bin_index(f, self.width)?;
        if !(0.0..=1.0).contains(&f_border) {
            return Err(Error::FitnessOutOfRange { value: f_border });
        }
        self.bins.entry(idx).or_insert_with(NeutralityBin::empty).push(f_border);
        self.total_points += 1;
        Ok(())
    }

    /// Fold another cloud (same rule, same bin width) into this one.
    pub fn merge(&mut self, other: FitnessCloud) -> Result<()> {
        if self.rule != other.rule {
            return Err(Error::CloudMismatch {
                reason: "bordering rules differ",
            });
        }
        if self.width.to_bits() != other.width.to_bits() {
            return Err(Error::CloudMismatch {
                reason: "bin widths differ",
            });
        }
        for (idx, bin) in other.bins {
            self.bins.entry(idx).or_insert_with(NeutralityBin::empty).merge(&bin);
        }
        self.total_points += other.total_points;
        Ok(())
    }

    /// One (phi, min, mean, max, std, count) row per non-empty bin,
    /// ascending in phi (phi is the bin center).
    pub fn shape(&self) -> Result<CloudShape> {
        if self.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let rows = self
            .bins
            .iter()
            .map(|(&idx, bin)| ShapeRow {
                phi: (idx as f64 + 0.5) * self.width,
                min: bin.min(),
                mean: bin.mean(),
                max: bin.max(),
                std: bin.std(),
                count: bin.count(),
            })
            .collect();
        Ok(CloudShape { rows })
    }
}

#[inline]
fn accumulate_genotype(
    cloud: &mut FitnessCloud,
    eval: &mut NeighborEvaluator<'_>,
    n: usize,
    bits: u32,
) -> Result<()> {
    let f = eval.load_bits(bits);
    match cloud.rule {
        BorderingRule::WholeNeighborhood => {
            for j in 0..n {
                let fb = eval.neighbor_fitness(j);
                cloud.push(f, fb)?;
            }
        }
        BorderingRule::GhcBest => {
            let mut best = f64::NEG_INFINITY;
            for j in 0..n {
                let fb = eval.neighbor_fitness(j);
                if fb > best {
                    best = fb;
                }
            }
            cloud.push(f, best)?;
        }
    }
    Ok(())
}

/// Build a cloud from an explicit genotype stream, sequentially.
pub fn build_cloud(
    land: &NkLandscape,
    genotypes: impl IntoIterator<Item = Genotype>,
    rule: BorderingRule,
    width: f64,
) -> Result<FitnessCloud> {
    let mut cloud = FitnessCloud::new(rule, width)?;
    let mut eval = NeighborEvaluator::new(land);
    for g in genotypes {
        accumulate_genotype(&mut cloud, &mut eval, land.n(), g.index())?;
    }
    if cloud.is_empty() {
        return Err(Error::EmptyStream);
    }
    Ok(cloud)
}

/// Fixed chunking of an index space: at most 512 chunks, at least 4096
/// indices each. Depends only on the total, never on the worker count, so
/// chunked results merge to the same bits no matter how many threads run.
pub(crate) fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    let size = (total >> 9).max(4096);
    let mut ranges = Vec::new();
    let mut lo = 0;
    while lo < total {
        let hi = (lo + size).min(total);
        ranges.push((lo, hi));
        lo = hi;
    }
    ranges
}

fn build_cloud_indexed(
    land: &NkLandscape,
    total: u64,
    bits_at: impl Fn(u64) -> u32 + Sync,
    rule: BorderingRule,
    width: f64,
) -> Result<FitnessCloud> {
    if total == 0 {
        return Err(Error::EmptyStream);
    }
    check_width(width)?;
    let chunks: Vec<Result<FitnessCloud>> = chunk_ranges(total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut cloud = FitnessCloud::new(rule, width)?;
            let mut eval = NeighborEvaluator::new(land);
            for idx in lo..hi {
                accumulate_genotype(&mut cloud, &mut eval, land.n(), bits_at(idx))?;
            }
            Ok(cloud)
        })
        .collect();
    let mut iter = chunks.into_iter();
    let mut acc = iter.next().expect("total > 0 gives at least one chunk")?;
    for chunk in iter {
        acc.merge(chunk?)?;
    }
    Ok(acc)
}

/// Build the cloud of the full search space (2^n genotypes), in parallel
/// over fixed index chunks.
pub fn build_cloud_exhaustive(
    land: &NkLandscape,
    rule: BorderingRule,
    width: f64,
) -> Result<FitnessCloud> {
    build_cloud_indexed(land, land.genotype_count(), |idx| idx as u32, rule, width)
}

/// Build the cloud of `count` uniform samples drawn from `sample_seed`,
/// in parallel over fixed index chunks.
pub fn build_cloud_sampled(
    land: &NkLandscape,
    count: u64,
    sample_seed: u64,
    rule: BorderingRule,
    width: f64,
) -> Result<FitnessCloud> {
    if count == 0 {
        return Err(Error::EmptySample);
    }
    build_cloud_indexed(
        land,
        count,
        |idx| land.sample_bits(sample_seed, idx),
        rule,
        width,
    )
}

/// One row of a cloud shape: bin center plus the bin's order statistics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShapeRow {
    pub phi: f64,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    pub std: f64,
    pub count: u64,
}

/// The shape of a fitness cloud: FC_min / FC_mean / FC_max (plus std and
/// count) sampled at every non-empty bin, ascending in phi.
#[derive(Clone, Debug, PartialEq)]
pub struct CloudShape {
    rows: Vec<ShapeRow>,
}

impl CloudShape {
    /// Assemble a shape from prepared rows; rows must be strictly ascending
    /// in phi with min <= mean <= max.
    pub fn from_rows(rows: Vec<ShapeRow>) -> Result<Self> {
        for pair in rows.windows(2) {
            if pair[0].phi >= pair[1].phi {
                return Err(Error::Parse("shape rows not ascending in phi".into()));
            }
        }
        for row in &rows {
            if !(row.min <= row.mean && row.mean <= row.max) {
                return Err(Error::Parse(format!(
                    "shape row at phi {} violates min <= mean <= max",
                    row.phi
                )));
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[ShapeRow] {
        &self.rows
    }

    /// CSV export: header `phi,min,mean,max,std,count`, phi at 6 decimal
    /// places, the statistics in shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("phi,min,mean,max,std,count\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:.6},{},{},{},{},{}",
                r.phi, r.min, r.mean, r.max, r.std, r.count
            );
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty shape CSV".into()))?;
        if header != "phi,min,mean,max,std,count" {
            return Err(Error::Parse(format!("unexpected shape CSV header {header:?}")));
        }
        let mut rows = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                return Err(Error::Parse(format!("shape CSV row has {} fields", fields.len())));
            }
            let num = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| Error::Parse(format!("bad number {s:?} in shape CSV")))
            };
            rows.push(ShapeRow {
                phi: num(fields[0])?,
                min: num(fields[1])?,
                mean: num(fields[2])?,
                max: num(fields[3])?,
                std: num(fields[4])?,
                count: fields[5]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad count {:?} in shape CSV", fields[5])))?,
            });
        }
        Self::from_rows(rows)
    }
}

/// The fitness levels where FC_min, FC_mean and FC_max cross the diagonal.
/// Each is absent when its curve never changes sign against the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolvabilityThresholds {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    /// Non-fatal scan notes, e.g. curves crossing the diagonal more than
    /// once (only the first crossing is kept).
    pub warnings: Vec<String>,
}

impl EvolvabilityThresholds {
    /// CSV export: `curve,value,found` with an empty value when absent.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("curve,value,found\n");
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            match v {
                Some(x) => {
                    let _ = writeln!(out, "{name},{x},true");
                }
                None => {
                    let _ = writeln!(out, "{name},,false");
                }
            }
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty thresholds CSV".into()))?;
        if header != "curve,value,found" {
            return Err(Error::Parse(format!(
                "unexpected thresholds CSV header {header:?}"
            )));
        }
        let mut t = EvolvabilityThresholds {
            alpha: None,
            beta: None,
            gamma: None,
            warnings: Vec::new(),
        };
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "thresholds CSV row has {} fields",
                    fields.len()
                )));
            }
            let value = match fields[2] {
                "true" => Some(fields[1].parse().map_err(|_| {
                    Error::Parse(format!("bad threshold value {:?}", fields[1]))
                })?),
                "false" => None,
                other => return Err(Error::Parse(format!("bad found flag {other:?}"))),
            };
            match fields[0] {
                "alpha" => t.alpha = value,
                "beta" => t.beta = value,
                "gamma" => t.gamma = value,
                other => return Err(Error::Parse(format!("unknown curve {other:?}"))),
            }
        }
        Ok(t)
    }
}

fn scan_crossings(rows: &[ShapeRow], value: impl Fn(&ShapeRow) -> f64) -> Vec<f64> {
    let d: Vec<f64> = rows.iter().map(|r| value(r) - r.phi).collect();
    let mut events = Vec::new();
    for t in 0..rows.len() {
        if d[t] == 0.0 {
            // A row sitting exactly on the diagonal counts once.
            if t == 0 || d[t - 1] != 0.0 {
                events.push(rows[t].phi);
            }
        } else if t + 1 < rows.len() && d[t + 1] != 0.0 && (d[t] > 0.0) != (d[t + 1] > 0.0) {
            let frac = d[t] / (d[t] - d[t + 1]);
            events.push(rows[t].phi + frac * (rows[t + 1].phi - rows[t].phi));
        }
    }
    events
}

/// Locate alpha, beta and gamma: for each curve, the first sign change of
/// (curve - phi) along ascending phi, by linear interpolation between the
/// two bin centers. A curve that never changes sign yields `None`.
pub fn thresholds(shape: &CloudShape) -> Result<EvolvabilityThresholds> {
    let rows = shape.rows();
    if rows.len() < 2 {
        return Err(Error::TooFewRows { rows: rows.len() });
    }
    let mut out = EvolvabilityThresholds {
        alpha: None,
        beta: None,
        gamma: None,
        warnings: Vec::new(),
    };
    let curves: [(&str, fn(&ShapeRow) -> f64); 3] = [
        ("FC_min", |r| r.min),
        ("FC_mean", |r| r.mean),
        ("FC_max", |r| r.max),
    ];
    for (i, (name, value)) in curves.into_iter().enumerate() {
        let events = scan_crossings(rows, value);
        if events.len() > 1 {
            out.warnings.push(format!(
                "{name} crosses the diagonal {} times; keeping the first crossing",
                events.len()
            ));
        }
        let first = events.first().copied();
        match i {
            0 => out.alpha = first,
            1 => out.beta = first,
            _ => out.gamma = first,
        }
    }
    Ok(out)
}

/// The four selective regimes a fitness level can fall into, ordered by
/// increasing fitness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Regime {
    /// phi <= alpha: every neighbor the rule selects is fitter.
    AlwaysAdvantageous,
    /// alpha < phi <= beta: fitter on average.
    MeanAdvantageous,
    /// beta < phi <= gamma: less fit on average.
    MeanDeleterious,
    /// gamma < phi: every selected neighbor is less fit.
    AlwaysDeleterious,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::AlwaysAdvantageous => "always_advantageous",
            Regime::MeanAdvantageous => "mean_advantageous",
            Regime::MeanDeleterious => "mean_deleterious",
            Regime::AlwaysDeleterious => "always_deleterious",
        })
    }
}

/// Classify a fitness level against the three thresholds. All three must be
/// present; boundary values belong to the lower regime (phi = alpha is still
/// always-advantageous).
pub fn classify_regime(phi: f64, t: &EvolvabilityThresholds) -> Result<Regime> {
    let alpha = t.alpha.ok_or(Error::MissingThreshold { name: "alpha" })?;
    let beta = t.beta.ok_or(Error::MissingThreshold { name: "beta" })?;
    let gamma = t.gamma.ok_or(Error::MissingThreshold { name: "gamma" })?;
    Ok(if phi <= alpha {
        Regime::AlwaysAdvantageous
    } else if phi <= beta {
        Regime::MeanAdvantageous
    } else if phi <= gamma {
        Regime::MeanDeleterious
    } else {
        Regime::AlwaysDeleterious
    })
}

/// The mean-neighbor line for an NK landscape under the whole Hamming
/// neighborhood: slope 1 - (k+1)/n, intercept (k+1)/(2n). The slope is the
/// offspring-parent fitness correlation.
pub fn weinberger_line(n: usize, k: usize) -> Result<(f64, f64)> {
    if n < 1 {
        return Err(Error::LocusCount { n });
    }
    if k >= n {
        return Err(Error::Epistasis { k, n });
    }
    let ratio = (k + 1) as f64 / n as f64;
    Ok((1.0 - ratio, 0.5 * ratio))
}

/// A fitted least-squares line through the FC_mean curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

impl RegressionFit {
    /// Vertical position of the fitted line at `x`.
    pub fn at(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Weighted least squares through the (phi, mean) pairs of a shape, each
/// weighted by its bin count so sparse extreme bins cannot dominate.
pub fn fit_mean_line(shape: &CloudShape) -> Result<RegressionFit> {
    let rows = shape.rows();
    if rows.len() < 2 {
        return Err(Error::TooFewRows { rows: rows.len() });
    }
    let wsum: f64 = rows.iter().map(|r| r.count as f64).sum();
    if wsum <= 0.0 {
        return Err(Error::DegenerateFit);
    }
    let xm: f64 = rows.iter().map(|r| r.count as f64 * r.phi).sum::<f64>() / wsum;
    let ym: f64 = rows.iter().map(|r| r.count as f64 * r.mean).sum::<f64>() / wsum;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for r in rows {
        let w = r.count as f64;
        sxx += w * (r.phi - xm) * (r.phi - xm);
        sxy += w * (r.phi - xm) * (r.mean - ym);
    }
    if sxx <= 0.0 {
        return Err(Error::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = ym - slope * xm;
    let mut ss_tot = 0.0;
    let mut ss_res = 0.0;
    for r in rows {
        let w = r.count as f64;
        ss_tot += w * (r.mean - ym) * (r.mean - ym);
        let e = r.mean - (intercept + slope * r.phi);
        ss_res += w * e * e;
    }
    let r_squared = if ss_tot <= f64::MIN_POSITIVE {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(RegressionFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Outcome of a local-optima census over a genotype stream.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimaCensus {
    /// Genotypes strictly fitter than every Hamming-1 neighbor.
    pub optima: u64,
    /// Genotypes whose best neighbor ties their own fitness exactly
    /// (plateau members); counted separately, never as optima.
    pub ties: u64,
    /// Genotypes examined.
    pub checked: u64,
    /// (bin-center fitness, optimum count) rows, ascending.
    pub histogram: Vec<(f64, u64)>,
}

impl OptimaCensus {
    /// CSV export of the fitness histogram: `phi,count`.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("phi,count\n");
        for &(phi, count) in &self.histogram {
            let _ = writeln!(out, "{phi:.6},{count}");
        }
        out
    }

    pub fn histogram_from_csv(text: &str) -> Result<Vec<(f64, u64)>> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty histogram CSV".into()))?;
        if header != "phi,count" {
            return Err(Error::Parse(format!(
                "unexpected histogram CSV header {header:?}"
            )));
        }
        let mut rows = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let (phi, count) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse("histogram CSV row missing comma".into()))?;
            rows.push((
                phi.parse()
                    .map_err(|_| Error::Parse(format!("bad phi {phi:?} in histogram CSV")))?,
                count
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad count {count:?} in histogram CSV")))?,
            ));
        }
        Ok(rows)
    }
}

#[derive(Clone, Debug, Default)]
struct CensusAccum {
    optima: u64,
    ties: u64,
    checked: u64,
    hist: BTreeMap<u32, u64>,
}

impl CensusAccum {
    fn absorb(&mut self, other: CensusAccum) {
        self.optima += other.optima;
        self.ties += other.ties;
        self.checked += other.checked;
        for (idx, c) in other.hist {
            *self.hist.entry(idx).or_insert(0) += c;
        }
    }

    fn examine(&mut self, eval: &mut NeighborEvaluator<'_>, n: usize, bits: u32, width: f64) -> Result<()> {
        let f = eval.load_bits(bits);
        let mut best = f64::NEG_INFINITY;
        for j in 0..n {
            let fb = eval.neighbor_fitness(j);
            if fb > best {
                best = fb;
            }
        }
        self.checked += 1;
        if best < f {
            self.optima += 1;
            *self.hist.entry(bin_index(f, width)?).or_insert(0) += 1;
        } else if best == f {
            self.ties += 1;
        }
        Ok(())
    }

    fn finish(self, width: f64) -> OptimaCensus {
        OptimaCensus {
            optima: self.optima,
            ties: self.ties,
            checked: self.checked,
            histogram: self
                .hist
                .into_iter()
                .map(|(idx, c)| ((idx as f64 + 0.5) * width, c))
                .collect(),
        }
    }
}

/// Count strict local optima over a genotype stream; the histogram buckets
/// optimum fitnesses with the given bin width.
pub fn local_optima_census(
    land: &NkLandscape,
    genotypes: impl IntoIterator<Item = Genotype>,
    width: f64,
) -> Result<OptimaCensus> {
    check_width(width)?;
    let mut acc = CensusAccum::default();
    let mut eval = NeighborEvaluator::new(land);
    for g in genotypes {
        acc.examine(&mut eval, land.n(), g.index(), width)?;
    }
    Ok(acc.finish(width))
}

/// Census of the full search space, in parallel over fixed index chunks.
pub fn local_optima_census_exhaustive(land: &NkLandscape, width: f64) -> Result<OptimaCensus> {
    check_width(width)?;
    let chunks: Vec<Result<CensusAccum>> = chunk_ranges(land.genotype_count())
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc = CensusAccum::default();
            let mut eval = NeighborEvaluator::new(land);
            for bits in lo..hi {
                acc.examine(&mut eval, land.n(), bits as u32, width)?;
            }
            Ok(acc)
        })
        .collect();
    let mut acc = CensusAccum::default();
    for chunk in chunks {
        acc.absorb(chunk?);
    }
    Ok(acc.finish(width))
}

/// A genotype violating the optima/diagonal equivalence, if one exists.
#[derive(Clone, Copy, Debug)]
pub struct DiagonalCounterexample {
    pub genotype: Genotype,
    pub fitness: f64,
    pub bordering: f64,
    pub strict_optimum: bool,
}

/// Verdict of the below-diagonal verification.
#[derive(Clone, Debug)]
pub struct DiagonalCheck {
    pub holds: bool,
    pub checked: u64,
    pub counterexample: Option<DiagonalCounterexample>,
}

fn diagonal_examine(
    eval: &mut NeighborEvaluator<'_>,
    n: usize,
    bits: u32,
) -> Option<DiagonalCounterexample> {
    let f = eval.load_bits(bits);
    let mut best = f64::NEG_INFINITY;
    let mut any_better = false;
    let mut all_worse = true;
    for j in 0..n {
        let fb = eval.neighbor_fitness(j);
        if fb > best {
            best = fb;
        }
        if fb > f {
            any_better = true;
        }
        if fb >= f {
            all_worse = false;
        }
    }
    let below = best < f;
    let above = best > f;
    if below != all_worse || above != any_better {
        return Some(DiagonalCounterexample {
            genotype: Genotype::from_bits(bits, n),
            fitness: f,
            bordering: best,
            strict_optimum: all_worse,
        });
    }
    None
}

/// Verify over a stream that a genotype's GHC point sits strictly below the
/// diagonal exactly when it is a strict local optimum, and strictly above
/// exactly when it has an improving neighbor.
pub fn optima_below_diagonal(
    land: &NkLandscape,
    genotypes: impl IntoIterator<Item = Genotype>,
) -> DiagonalCheck {
    let mut eval = NeighborEvaluator::new(land);
    let mut checked = 0;
    let mut counterexample = None;
    for g in genotypes {
        checked += 1;
        if counterexample.is_none() {
            counterexample = diagonal_examine(&mut eval, land.n(), g.index());
        }
    }
    DiagonalCheck {
        holds: counterexample.is_none(),
        checked,
        counterexample,
    }
}

/// Exhaustive below-diagonal verification, in parallel over fixed index
/// chunks; the reported counterexample is the first in enumeration order.
pub fn optima_below_diagonal_exhaustive(land: &NkLandscape) -> DiagonalCheck {
    let total = land.genotype_count();
    let per_chunk: Vec<Option<DiagonalCounterexample>> = chunk_ranges(total)
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut eval = NeighborEvaluator::new(land);
            for bits in lo..hi {
                if let Some(ce) = diagonal_examine(&mut eval, land.n(), bits as u32) {
                    return Some(ce);
                }
            }
            None
        })
        .collect();
    let counterexample = per_chunk.into_iter().flatten().next();
    DiagonalCheck {
        holds: counterexample.is_none(),
        checked: total,
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::landscape::LinkModel;

    fn land(n: usize, k: usize, seed: u64) -> NkLandscape {
        NkLandscape::new(n, k, seed, LinkModel::Random).unwrap()
    }

    #[test]
    fn neighbors_flip_each_locus_once() {
        let g: Genotype = "000".parse().unwrap();
        let ns: Vec<String> = neighbors(g).iter().map(|g| g.to_string()).collect();
        assert_eq!(ns, vec!["100", "010", "001"]);
        let g: Genotype = "1011011".parse().unwrap();
        let ns = neighbors(g);
        assert_eq!(ns.len(), g.len());
        for (i, n) in ns.iter().enumerate() {
            assert_eq!(neighbors(*n)[i], g);
            let dist = (n.index() ^ g.index()).count_ones();
            assert_eq!(dist, 1);
        }
    }

    #[test]
    fn bin_index_follows_floor_with_top_clamp() {
        assert_eq!(bin_index(0.0005, 0.002).unwrap(), 0);
        assert_eq!(bin_index(0.0019, 0.002).unwrap(), 0);
        assert_eq!(bin_index(0.002, 0.002).unwrap(), 1);
        assert_eq!(bin_index(1.0, 0.002).unwrap(), 499);
        assert_eq!(bin_index(0.999, 0.002).unwrap(), 499);
        assert_eq!(bin_index(1.0, 1.0).unwrap(), 0);
        assert!(matches!(
            bin_index(-0.1, 0.002),
            Err(Error::FitnessOutOfRange { .. })
        ));
        assert!(matches!(
            bin_index(1.1, 0.002),
            Err(Error::FitnessOutOfRange { .. })
        ));
        assert!(matches!(bin_index(0.5, 0.0), Err(Error::BinWidth { .. })));
        assert!(matches!(bin_index(0.5, 1.5), Err(Error::BinWidth { .. })));
    }

    #[test]
    fn bin_two_point_statistics() {
        let mut bin = NeutralityBin::empty();
        bin.push(0.3);
        bin.push(0.5);
        assert_eq!(bin.count(), 2);
        assert_eq!(bin.min(), 0.3);
        assert_eq!(bin.max(), 0.5);
        assert!((bin.mean() - 0.4).abs() < 1e-15);
        assert!((bin.std() - 0.1).abs() < 1e-15);
    }

    fn filled_bin(values: &[f64]) -> NeutralityBin {
        let mut b = NeutralityBin::empty();
        for &v in values {
            b.push(v);
        }
        b
    }

    #[test]
    fn bin_merge_is_commutative_and_associative_within_tolerance() {
        // Deterministic pseudo-values in [0, 1).
        let vals: Vec<f64> = (0u64..300)
            .map(|i| {
                let h = i.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
                (h >> 11) as f64 / (1u64 << 53) as f64
            })
            .collect();
        let a = filled_bin(&vals[0..100]);
        let b = filled_bin(&vals[100..180]);
        let c = filled_bin(&vals[180..300]);

        let mut ab = a;
        ab.merge(&b);
        let mut ba = b;
        ba.merge(&a);
        assert_eq!(ab.count(), ba.count());
        assert_eq!(ab.min(), ba.min());
        assert_eq!(ab.max(), ba.max());
        assert!((ab.mean() - ba.mean()).abs() < 1e-12);
        assert!((ab.std() - ba.std()).abs() < 1e-12);

        let mut ab_c = ab;
        ab_c.merge(&c);
        let mut bc = b;
        bc.merge(&c);
        let mut a_bc = a;
        a_bc.merge(&bc);
        assert_eq!(ab_c.count(), a_bc.count());
        assert_eq!(ab_c.min(), a_bc.min());
        assert_eq!(ab_c.max(), a_bc.max());
        assert!((ab_c.mean() - a_bc.mean()).abs() < 1e-12);
        assert!((ab_c.std() - a_bc.std()).abs() < 1e-12);

        // Sequential push as ground truth.
        let seq = filled_bin(&vals);
        let mut merged = filled_bin(&vals[0..100]);
        merged.merge(&filled_bin(&vals[100..180]));
        merged.merge(&filled_bin(&vals[180..300]));
        assert_eq!(seq.count(), merged.count());
        assert_eq!(seq.min(), merged.min());
        assert_eq!(seq.max(), merged.max());
        assert!((seq.mean() - merged.mean()).abs() < 1e-12);
        assert!((seq.std() - merged.std()).abs() < 1e-12);
    }

    #[test]
    fn cloud_point_counts_by_rule() {
        let l = land(2, 1, 3);
        let whole = build_cloud(&l, l.enumerate(), BorderingRule::WholeNeighborhood, 0.002).unwrap();
        assert_eq!(whole.total_points(), 8);
        let ghc = build_cloud(&l, l.enumerate(), BorderingRule::GhcBest, 0.002).unwrap();
        assert_eq!(ghc.total_points(), 4);
    }

    #[test]
    fn cloud_rejects_empty_stream() {
        let l = land(4, 1, 3);
        let empty: Vec<Genotype> = Vec::new();
        assert!(matches!(
            build_cloud(&l, empty, BorderingRule::GhcBest, 0.002),
            Err(Error::EmptyStream)
        ));
    }

    #[test]
    fn merge_rejects_mismatched_clouds() {
        let a = FitnessCloud::new(BorderingRule::GhcBest, 0.002).unwrap();
        let mut b = FitnessCloud::new(BorderingRule::WholeNeighborhood, 0.002).unwrap();
        assert!(b.merge(a.clone()).is_err());
        let mut c = FitnessCloud::new(BorderingRule::GhcBest, 0.01).unwrap();
        assert!(c.merge(a).is_err());
    }

    #[test]
    fn shape_rows_are_ordered_and_consistent() {
        let l = land(10, 4, 17);
        let cloud = build_cloud(&l, l.enumerate(), BorderingRule::WholeNeighborhood, 0.002).unwrap();
        let shape = cloud.shape().unwrap();
        let rows = shape.rows();
        assert!(!rows.is_empty());
        let total: u64 = rows.iter().map(|r| r.count).sum();
        assert_eq!(total, cloud.total_points());
        for pair in rows.windows(2) {
            assert!(pair[0].phi < pair[1].phi);
        }
        for r in rows {
            assert!(r.min <= r.mean && r.mean <= r.max);
            assert!(r.std >= 0.0);
        }
    }

    #[test]
    fn partitioned_build_matches_sequential_build() {
        let l = land(12, 4, 5);
        let seq = build_cloud(&l, l.enumerate(), BorderingRule::WholeNeighborhood, 0.002).unwrap();

        // Partition the stream into uneven pieces and merge.
        let all: Vec<Genotype> = l.enumerate().collect();
        let mut merged: Option<FitnessCloud> = None;
        for part in all.chunks(997) {
            let c = build_cloud(
                &l,
                part.iter().copied(),
                BorderingRule::WholeNeighborhood,
                0.002,
            )
            .unwrap();
            match merged.as_mut() {
                None => merged = Some(c),
                Some(m) => m.merge(c).unwrap(),
            }
        }
        let merged = merged.unwrap();
        assert_eq!(seq.total_points(), merged.total_points());
        let a = seq.shape().unwrap();
        let b = merged.shape().unwrap();
        assert_eq!(a.rows().len(), b.rows().len());
        for (ra, rb) in a.rows().iter().zip(b.rows()) {
            assert_eq!(ra.count, rb.count);
            assert_eq!(ra.min.to_bits(), rb.min.to_bits());
            assert_eq!(ra.max.to_bits(), rb.max.to_bits());
            assert!((ra.mean - rb.mean).abs() < 1e-12);
            assert!((ra.std - rb.std).abs() < 1e-12);
        }

        // The parallel chunked builder obeys the same bound.
        let par = build_cloud_exhaustive(&l, BorderingRule::WholeNeighborhood, 0.002).unwrap();
        assert_eq!(par.total_points(), seq.total_points());
        let c = par.shape().unwrap();
        for (ra, rc) in a.rows().iter().zip(c.rows()) {
            assert_eq!(ra.count, rc.count);
            assert_eq!(ra.min.to_bits(), rc.min.to_bits());
            assert_eq!(ra.max.to_bits(), rc.max.to_bits());
            assert!((ra.mean - rc.mean).abs() < 1e-12);
            assert!((ra.std - rc.std).abs() < 1e-12);
        }
    }

    #[test]
    fn exhaustive_point_counts() {
        let l = land(10, 2, 1);
        let whole = build_cloud_exhaustive(&l, BorderingRule::WholeNeighborhood, 0.002).unwrap();
        assert_eq!(whole.total_points(), 10 * (1 << 10));
        let ghc = build_cloud_exhaustive(&l, BorderingRule::GhcBest, 0.002).unwrap();
        assert_eq!(ghc.total_points(), 1 << 10);
    }

    #[test]
    fn sampled_build_is_reproducible() {
        let l = land(20, 8, 7);
        let a = build_cloud_sampled(&l, 5000, 99, BorderingRule::GhcBest, 0.002).unwrap();
        let b = build_cloud_sampled(&l, 5000, 99, BorderingRule::GhcBest, 0.002).unwrap();
        assert_eq!(a.shape().unwrap(), b.shape().unwrap());
        assert!(matches!(
            build_cloud_sampled(&l, 0, 99, BorderingRule::GhcBest, 0.002),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn sampled_build_matches_sequential_sample_stream() {
        let l = land(18, 6, 11);
        let par = build_cloud_sampled(&l, 9000, 4, BorderingRule::WholeNeighborhood, 0.002).unwrap();
        let seq = build_cloud(
            &l,
            l.sample(9000, 4).unwrap(),
            BorderingRule::WholeNeighborhood,
            0.002,
        )
        .unwrap();
        assert_eq!(par.total_points(), seq.total_points());
        let a = par.shape().unwrap();
        let b = seq.shape().unwrap();
        assert_eq!(a.rows().len(), b.rows().len());
        for (ra, rb) in a.rows().iter().zip(b.rows()) {
            assert_eq!(ra.count, rb.count);
            assert_eq!(ra.min.to_bits(), rb.min.to_bits());
            assert_eq!(ra.max.to_bits(), rb.max.to_bits());
            assert!((ra.mean - rb.mean).abs() < 1e-12);
            assert!((ra.std - rb.std).abs() < 1e-12);
        }
    }

    fn synthetic_shape(points: &[(f64, f64)]) -> CloudShape {
        CloudShape::from_rows(
            points
                .iter()
                .map(|&(phi, mean)| ShapeRow {
                    phi,
                    min: mean - 0.01,
                    mean,
                    max: mean + 0.01,
                    std: 0.005,
                    count: 10,
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn threshold_interpolation_midpoint() {
        let shape = synthetic_shape(&[(0.4, 0.45), (0.5, 0.45)]);
        let t = thresholds(&shape).unwrap();
        let beta = t.beta.unwrap();
        assert!((beta - 0.45).abs() < 1e-12, "beta {beta}");
    }

    #[test]
    fn threshold_absent_when_curve_stays_above_diagonal() {
        let shape = synthetic_shape(&[(0.1, 0.4), (0.2, 0.45), (0.3, 0.5)]);
        let t = thresholds(&shape).unwrap();
        assert_eq!(t.beta, None);
        assert!(t.warnings.is_empty());
    }

    #[test]
    fn threshold_multiple_crossings_warns_and_keeps_first() {
        let shape = synthetic_shape(&[(0.1, 0.2), (0.3, 0.2), (0.5, 0.6), (0.7, 0.6)]);
        // mean - phi: +0.1, -0.1, +0.1, -0.1 -> three crossings, and the
        // synthetic min/max curves run parallel, so all three curves warn.
        let t = thresholds(&shape).unwrap();
        assert_eq!(t.warnings.len(), 3);
        assert!(t.warnings.iter().any(|w| w.contains("FC_mean")));
        let beta = t.beta.unwrap();
        assert!((beta - 0.2).abs() < 1e-12, "beta {beta}");
    }

    #[test]
    fn thresholds_need_two_rows() {
        let shape = synthetic_shape(&[(0.4, 0.45)]);
        assert!(matches!(
            thresholds(&shape),
            Err(Error::TooFewRows { rows: 1 })
        ));
    }

    #[test]
    fn thresholds_ordered_on_exhaustive_landscape() {
        let l = land(10, 4, 13);
        let cloud = build_cloud_exhaustive(&l, BorderingRule::GhcBest, 0.002).unwrap();
        let t = thresholds(&cloud.shape().unwrap()).unwrap();
        if let (Some(a), Some(b), Some(c)) = (t.alpha, t.beta, t.gamma) {
            assert!(a <= b && b <= c, "alpha {a} beta {b} gamma {c}");
        } else {
            panic!("expected all three thresholds on a rugged exhaustive landscape: {t:?}");
        }
    }

    fn fixed_thresholds() -> EvolvabilityThresholds {
        EvolvabilityThresholds {
            alpha: Some(0.3),
            beta: Some(0.5),
            gamma: Some(0.7),
            warnings: Vec::new(),
        }
    }

    #[test]
    fn regime_classification_cases() {
        let t = fixed_thresholds();
        assert_eq!(classify_regime(0.2, &t).unwrap(), Regime::AlwaysAdvantageous);
        assert_eq!(classify_regime(0.4, &t).unwrap(), Regime::MeanAdvantageous);
        assert_eq!(classify_regime(0.3, &t).unwrap(), Regime::AlwaysAdvantageous);
        assert_eq!(classify_regime(0.6, &t).unwrap(), Regime::MeanDeleterious);
        assert_eq!(classify_regime(0.9, &t).unwrap(), Regime::AlwaysDeleterious);
    }

    #[test]
    fn regime_requires_all_thresholds() {
        let mut t = fixed_thresholds();
        t.beta = None;
        assert!(matches!(
            classify_regime(0.4, &t),
            Err(Error::MissingThreshold { name: "beta" })
        ));
    }

    #[test]
    fn regime_is_monotone_in_phi() {
        let t = fixed_thresholds();
        let mut last = Regime::AlwaysAdvantageous;
        for step in 0..=100 {
            let phi = step as f64 / 100.0;
            let r = classify_regime(phi, &t).unwrap();
            assert!(r >= last, "regime regressed at phi {phi}");
            last = r;
        }
    }

    #[test]
    fn weinberger_line_values() {
        let (slope, intercept) = weinberger_line(25, 20).unwrap();
        assert!((slope - 0.16).abs() < 1e-12);
        assert!((intercept - 0.42).abs() < 1e-12);
        let (slope, intercept) = weinberger_line(8, 7).unwrap();
        assert_eq!(slope, 0.0);
        assert_eq!(intercept, 0.5);
        let (slope, intercept) = weinberger_line(10, 0).unwrap();
        assert!((slope - 0.9).abs() < 1e-12);
        assert!((intercept - 0.05).abs() < 1e-12);
        assert!(weinberger_line(10, 10).is_err());
    }

    #[test]
    fn regression_recovers_exact_line() {
        let rows: Vec<ShapeRow> = (0..20)
            .map(|i| {
                let phi = 0.2 + i as f64 * 0.02;
                let mean = 0.16 * phi + 0.42;
                ShapeRow {
                    phi,
                    min: mean - 0.05,
                    mean,
                    max: mean + 0.05,
                    std: 0.02,
                    count: 5 + i,
                }
            })
            .collect();
        let fit = fit_mean_line(&CloudShape::from_rows(rows).unwrap()).unwrap();
        assert!((fit.slope - 0.16).abs() < 1e-12);
        assert!((fit.intercept - 0.42).abs() < 1e-12);
        assert!((fit.r_squared - 1.0).abs() < 1e-9);
    }

    #[test]
    fn regression_needs_spread_abscissas() {
        let rows = vec![
            ShapeRow {
                phi: 0.5,
                min: 0.1,
                mean: 0.2,
                max: 0.3,
                std: 0.0,
                count: 4,
            };
            1
        ];
        assert!(matches!(
            fit_mean_line(&CloudShape { rows }),
            Err(Error::TooFewRows { .. })
        ));
    }

    #[test]
    fn whole_cloud_slope_tracks_epistasis() {
        // Without epistasis the mean-neighbor curve of a fixed instance is
        // exactly linear with slope 1 - 2/n: every flip lands in the
        // complementary cell of the same two-entry table.
        let l = land(12, 0, 21);
        let cloud = build_cloud_exhaustive(&l, BorderingRule::WholeNeighborhood, 0.002).unwrap();
        let fit = fit_mean_line(&cloud.shape().unwrap()).unwrap();
        let exact = 1.0 - 2.0 / 12.0;
        assert!(
            (fit.slope - exact).abs() < 1e-3,
            "slope {} exact {exact}",
            fit.slope
        );

        // With wider tables the fixed-instance slope approaches the
        // mean-neighbor line 1 - (k+1)/n.
        let l = land(16, 4, 1);
        let cloud = build_cloud_exhaustive(&l, BorderingRule::WholeNeighborhood, 0.002).unwrap();
        let fit = fit_mean_line(&cloud.shape().unwrap()).unwrap();
        let (predicted, predicted_icpt) = weinberger_line(16, 4).unwrap();
        assert!(
            (fit.slope - predicted).abs() < 0.02,
            "slope {} predicted {predicted}",
            fit.slope
        );
        assert!(
            (fit.intercept - predicted_icpt).abs() < 0.02,
            "intercept {} predicted {predicted_icpt}",
            fit.intercept
        );
    }

    #[test]
    fn census_finds_single_optimum_without_epistasis() {
        let l = land(10, 0, 3);
        let census = local_optima_census_exhaustive(&l, 0.002).unwrap();
        assert_eq!(census.optima, 1);
        assert_eq!(census.ties, 0);
        assert_eq!(census.checked, 1 << 10);
        assert_eq!(census.histogram.iter().map(|&(_, c)| c).sum::<u64>(), 1);
    }

    #[test]
    fn census_counts_at_least_the_global_maximum() {
        for seed in 0..5 {
            let l = land(8, 4, seed);
            let census = local_optima_census_exhaustive(&l, 0.002).unwrap();
            assert!(census.optima >= 1, "seed {seed}");
        }
    }

    #[test]
    fn census_parallel_matches_sequential() {
        let l = land(12, 6, 77);
        let par = local_optima_census_exhaustive(&l, 0.002).unwrap();
        let seq = local_optima_census(&l, l.enumerate(), 0.002).unwrap();
        assert_eq!(par, seq);
    }

    #[test]
    fn diagonal_equivalence_holds_exhaustively() {
        for seed in [2u64, 11, 29] {
            let l = land(10, 5, seed);
            let check = optima_below_diagonal_exhaustive(&l);
            assert!(check.holds, "counterexample: {:?}", check.counterexample);
            assert_eq!(check.checked, 1 << 10);
        }
    }

    #[test]
    fn shape_csv_round_trip() {
        let l = land(8, 3, 19);
        let shape = build_cloud_exhaustive(&l, BorderingRule::GhcBest, 0.002)
            .unwrap()
            .shape()
            .unwrap();
        let text = shape.to_csv();
        let back = CloudShape::from_csv(&text).unwrap();
        assert_eq!(shape.rows().len(), back.rows().len());
        for (a, b) in shape.rows().iter().zip(back.rows()) {
            assert!((a.phi - b.phi).abs() < 5e-7);
            assert_eq!(a.min.to_bits(), b.min.to_bits());
            assert_eq!(a.mean.to_bits(), b.mean.to_bits());
            assert_eq!(a.max.to_bits(), b.max.to_bits());
            assert_eq!(a.std.to_bits(), b.std.to_bits());
            assert_eq!(a.count, b.count);
        }
    }

    #[test]
    fn thresholds_csv_round_trip() {
        let t = EvolvabilityThresholds {
            alpha: Some(0.312345678901),
            beta: None,
            gamma: Some(0.75),
            warnings: vec!["ignored".into()],
        };
        let text = t.to_csv();
        let back = EvolvabilityThresholds::from_csv(&text).unwrap();
        assert_eq!(back.alpha, t.alpha);
        assert_eq!(back.beta, None);
        assert_eq!(back.gamma, t.gamma);
        assert!(back.warnings.is_empty());
    }

    #[test]
    fn histogram_csv_round_trip() {
        let census = OptimaCensus {
            optima: 3,
            ties: 1,
            checked: 100,
            histogram: vec![(0.501, 2), (0.703, 1)],
        };
        let rows = OptimaCensus::histogram_from_csv(&census.histogram_csv()).unwrap();
        assert_eq!(rows.len(), 2);
        assert!((rows[0].0 - 0.501).abs() < 5e-7);
        assert_eq!(rows[0].1, 2);
    }
}
