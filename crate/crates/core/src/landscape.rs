//! The NK fitness model: bit-string genotypes, epistatic link structure and
//! a deterministic seeded fitness function, plus exhaustive enumeration and
//! uniform sampling of the search space.
//!
//! Per-locus contributions are drawn from a keyed counter-based PRF of
//! `(seed, locus, pattern)` instead of materialized tables: at n=25, k=20 the
//! tables would need 25 * 2^21 entries, while the PRF keeps evaluation
//! stateless and safe to call from any number of threads.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard cap on the locus count so a genotype packs into one machine word and
/// exhaustive enumeration stays conceivable.
pub const MAX_LOCI: usize = 32;

const DOMAIN_CONTRIBUTION: u64 = 0xA24B_AED4_963E_E407;
const DOMAIN_LINKS: u64 = 0x9FB2_1C65_1E98_DF25;
const DOMAIN_SAMPLE: u64 = 0xD6E8_FEB8_6659_FD93;

/// 64-bit finalizer with full avalanche (the SplitMix64 mixer).
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Keyed PRF over two words: absorb, mix, absorb, mix.
#[inline]
fn keyed(seed: u64, domain: u64, a: u64, b: u64) -> u64 {
    mix64(mix64(mix64(seed ^ domain) ^ a) ^ b)
}

/// Top 53 bits of a hash as a double in [0, 1).
#[inline]
fn unit_f64(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Multiply-shift range reduction; bias is O(range / 2^64).
#[inline]
fn bounded(h: u64, range: u64) -> u64 {
    ((h as u128 * range as u128) >> 64) as u64
}

#[inline]
fn loci_mask(n: usize) -> u32 {
    if n == MAX_LOCI {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// A point of the search space: a fixed-length bit-string.
///
/// Locus `i` lives in bit `i` of the packed word; the text form writes
/// locus 0 leftmost, so `"100"` has locus 0 set.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Genotype {
    bits: u32,
    len: u8,
}

impl Genotype {
    /// Build a genotype over `n` loci from packed bits (bit `i` = locus `i`).
    /// Bits above locus `n-1` are masked off.
    pub fn new(bits: u32, n: usize) -> Result<Self> {
        if n < 1 || n > MAX_LOCI {
            return Err(Error::LocusCount { n });
        }
        Ok(Self {
            bits: bits & loci_mask(n),
            len: n as u8,
        })
    }

    pub(crate) fn from_bits(bits: u32, n: usize) -> Self {
        Self {
            bits,
            len: n as u8,
        }
    }

    /// Number of loci.
    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Raw packed bits; doubles as the enumeration index.
    pub fn index(&self) -> u32 {
        self.bits
    }

    /// Value of locus `i`.
    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        self.bits >> i & 1 == 1
    }

    /// The genotype with locus `i` flipped (Hamming distance 1 from `self`).
    #[inline]
    pub fn flip(&self, i: usize) -> Self {
        debug_assert!(i < self.len());
        Self {
            bits: self.bits ^ (1 << i),
            len: self.len,
        }
    }
}

impl fmt::Display for Genotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_char(if self.bit(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Genotype {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Genotype({self})")
    }
}

impl FromStr for Genotype {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let n = s.len();
        if n < 1 || n > MAX_LOCI {
            return Err(Error::LocusCount { n });
        }
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => bits |= 1 << i,
                '0' => {}
                other => {
                    return Err(Error::Parse(format!("invalid locus character {other:?}")));
                }
            }
        }
        Ok(Self {
            bits,
            len: n as u8,
        })
    }
}

/// How the k epistatic partners of each locus are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkModel {
    /// k distinct partners drawn uniformly without replacement (seeded
    /// partial shuffle). The common default.
    Random,
    /// The k circular successors `(i+1 ..= i+k) mod n`.
    Adjacent,
}

impl fmt::Display for LinkModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinkModel::Random => "random",
            LinkModel::Adjacent => "adjacent",
        })
    }
}

impl FromStr for LinkModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(LinkModel::Random),
            "adjacent" => Ok(LinkModel::Adjacent),
            other => Err(Error::Parse(format!(
                "unknown link model {other:?} (expected random or adjacent)"
            ))),
        }
    }
}

/// Per-locus epistatic partner lists: exactly k distinct loci, none equal to
/// the locus itself. Fully determined by (n, k, seed, model).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpistasisLinks {
    model: LinkModel,
    per_locus: Vec<Vec<u16>>,
}

impl EpistasisLinks {
    fn generate(n: usize, k: usize, seed: u64, model: LinkModel) -> Self {
        let per_locus = (0..n)
            .map(|i| match model {
                LinkModel::Adjacent => (1..=k).map(|d| ((i + d) % n) as u16).collect(),
                LinkModel::Random => {
                    // Partial Fisher-Yates over [0, n) \ {i}; the draw order
                    // is the stored order and fixes the pattern bit layout.
                    let mut cand: Vec<u16> = (0..n as u16).filter(|&j| j as usize != i).collect();
                    for t in 0..k {
                        let r = keyed(seed, DOMAIN_LINKS, i as u64, t as u64);
                        let j = t + bounded(r, (cand.len() - t) as u64) as usize;
                        cand.swap(t, j);
                    }
                    cand.truncate(k);
                    cand
                }
            })
            .collect();
        Self { model, per_locus }
    }

    pub fn model(&self) -> LinkModel {
        self.model
    }

    /// Partners of locus `i`, in stored (pattern) order.
    pub fn of(&self, i: usize) -> &[u16] {
        &self.per_locus[i]
    }
}

/// An NK fitness function over bit-strings of length `n`.
///
/// Fitness is the mean of n per-locus contributions, each depending on the
/// locus's own bit and the bits of its k partners. Evaluation is pure:
/// identical (n, k, seed, link model) and genotype always give the same
/// fitness, from any thread.
#[derive(Clone, Debug)]
pub struct NkLandscape {
    n: usize,
    k: usize,
    seed: u64,
    links: EpistasisLinks,
    /// affected[j] = loci whose contribution reads bit j (j itself included).
    affected: Vec<Vec<u16>>,
}

impl NkLandscape {
    pub fn new(n: usize, k: usize, seed: u64, model: LinkModel) -> Result<Self> {
        if n < 1 || n > MAX_LOCI {
            return Err(Error::LocusCount { n });
        }
        if k >= n {
            return Err(Error::Epistasis { k, n });
        }
        let links = EpistasisLinks::generate(n, k, seed, model);
        let mut affected: Vec<Vec<u16>> = (0..n).map(|i| vec![i as u16]).collect();
        for i in 0..n {
            for &j in links.of(i) {
                affected[j as usize].push(i as u16);
            }
        }
        for list in &mut affected {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            k,
            seed,
            links,
            affected,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn links(&self) -> &EpistasisLinks {
        &self.links
    }

    /// Contribution of `locus` under `pattern`: the own bit sits in pattern
    /// bit 0, partner bits follow in stored link order. Deterministic, drawn
    /// as if uniform on [0, 1).
    #[inline]
    pub fn contribution(&self, locus: usize, pattern: u64) -> f64 {
        debug_assert!(locus < self.n);
        debug_assert!(pattern < 1u64 << (self.k + 1));
        unit_f64(keyed(self.seed, DOMAIN_CONTRIBUTION, locus as u64, pattern))
    }

    #[inline]
    fn pattern(&self, bits: u32, locus: usize) -> u64 {
        let mut p = (bits >> locus & 1) as u64;
        for (t, &j) in self.links.of(locus).iter().enumerate() {
            p |= ((bits >> j & 1) as u64) << (t + 1);
        }
        p
    }

    #[inline]
    fn contribution_at(&self, bits: u32, locus: usize) -> f64 {
        self.contribution(locus, self.pattern(bits, locus))
    }

    /// The n per-locus contributions of `g`, in locus order.
    pub fn contributions(&self, g: Genotype) -> Result<Vec<f64>> {
        self.check_len(g)?;
        Ok((0..self.n).map(|i| self.contribution_at(g.index(), i)).collect())
    }

    /// Fitness of `g`: the mean per-locus contribution. Always in [0, 1].
    pub fn fitness(&self, g: Genotype) -> Result<f64> {
        self.check_len(g)?;
        Ok(self.fitness_bits(g.index()))
    }

    fn check_len(&self, g: Genotype) -> Result<()> {
        if g.len() != self.n {
            return Err(Error::GenotypeLength {
                expected: self.n,
                got: g.len(),
            });
        }
        Ok(())
    }

    /// Contributions are summed in locus order; `NeighborEvaluator`
    /// reproduces the same order so both paths agree bit for bit.
    #[inline]
    pub(crate) fn fitness_bits(&self, bits: u32) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.n {
            sum += self.contribution_at(bits, i);
        }
        sum / self.n as f64
    }

    /// |S| = 2^n.
    pub fn genotype_count(&self) -> u64 {
        1u64 << self.n
    }

    /// All 2^n genotypes, each exactly once, in ascending integer order of
    /// the packed bit pattern.
    pub fn enumerate(&self) -> impl Iterator<Item = Genotype> + '_ {
        let len = self.n;
        (0..self.genotype_count()).map(move |b| Genotype::from_bits(b as u32, len))
    }

    /// `count` uniform i.i.d. genotypes (with replacement), reproducible from
    /// `sample_seed`.
    pub fn sample(
        &self,
        count: u64,
        sample_seed: u64,
    ) -> Result<impl Iterator<Item = Genotype> + '_> {
        if count == 0 {
            return Err(Error::EmptySample);
        }
        let len = self.n;
        Ok((0..count).map(move |c| Genotype::from_bits(self.sample_bits(sample_seed, c), len)))
    }

    #[inline]
    pub(crate) fn sample_bits(&self, sample_seed: u64, index: u64) -> u32 {
        keyed(sample_seed, DOMAIN_SAMPLE, index, 0) as u32 & loci_mask(self.n)
    }

    /// Plain-text audit descriptor: n, k, seed, link model and every link
    /// list, one `key = value` pair per line.
    pub fn descriptor(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}", self.n);
        let _ = writeln!(out, "k = {}", self.k);
        let _ = writeln!(out, "seed = {}", self.seed);
        let _ = writeln!(out, "link_model = {}", self.links.model());
        for i in 0..self.n {
            let list = self
                .links
                .of(i)
                .iter()
                .map(|j| j.to_string())
                .collect::<Vec<_>>()
                .join(",");
            let _ = writeln!(out, "links_{i} = {list}");
        }
        out
    }

    /// Rebuild a landscape from a descriptor, verifying that the recorded
    /// link lists match the ones regenerated from (n, k, seed, link_model).
    pub fn from_descriptor(text: &str) -> Result<Self> {
        let mut n = None;
        let mut k = None;
        let mut seed = None;
        let mut model = None;
        let mut lists: Vec<(usize, Vec<u16>)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("descriptor line {}: missing '='", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::Parse(format!("descriptor key {key}: {what}"));
            match key {
                "n" => n = Some(value.parse().map_err(|_| bad("not an integer"))?),
                "k" => k = Some(value.parse().map_err(|_| bad("not an integer"))?),
                "seed" => seed = Some(value.parse().map_err(|_| bad("not an integer"))?),
                "link_model" => model = Some(value.parse()?),
                _ => {
                    let i: usize = key
                        .strip_prefix("links_")
                        .and_then(|s| s.parse().ok())
                        .ok_or_else(|| bad("unknown key"))?;
                    let list = if value.is_empty() {
                        Vec::new()
                    } else {
                        value
                            .split(',')
                            .map(|v| v.trim().parse().map_err(|_| bad("bad locus index")))
                            .collect::<Result<Vec<u16>>>()?
                    };
                    lists.push((i, list));
                }
            }
        }
        let missing = |what: &str| Error::Parse(format!("descriptor missing key {what}"));
        let land = NkLandscape::new(
            n.ok_or_else(|| missing("n"))?,
            k.ok_or_else(|| missing("k"))?,
            seed.ok_or_else(|| missing("seed"))?,
            model.ok_or_else(|| missing("link_model"))?,
        )?;
        if lists.len() != land.n {
            return Err(Error::Parse(format!(
                "descriptor lists {} link rows, landscape has {} loci",
                lists.len(),
                land.n
            )));
        }
        for (i, list) in lists {
            if i >= land.n || land.links.of(i) != list.as_slice() {
                return Err(Error::Parse(format!(
                    "descriptor links_{i} do not match the links regenerated from the seed"
                )));
            }
        }
        Ok(land)
    }
}

/// Reusable workspace for evaluating a genotype and all its Hamming-1
/// neighbors without re-hashing unaffected loci.
///
/// `load` fills the per-locus contribution buffer; `neighbor_fitness(j)`
/// re-derives only the contributions that read bit `j`, then re-sums the
/// whole buffer in locus order, so the result is bit-identical to a
/// from-scratch `fitness` call on the flipped genotype.
pub struct NeighborEvaluator<'a> {
    land: &'a NkLandscape,
    bits: u32,
    contribs: Vec<f64>,
    scratch: Vec<f64>,
}

impl<'a> NeighborEvaluator<'a> {
    pub fn new(land: &'a NkLandscape) -> Self {
        Self {
            land,
            bits: 0,
            contribs: vec![0.0; land.n()],
            scratch: vec![0.0; land.n()],
        }
    }

    /// Point the evaluator at `g`; returns f(g).
    pub fn load(&mut self, g: Genotype) -> f64 {
        debug_assert_eq!(g.len(), self.land.n());
        self.load_bits(g.index())
    }

    #[inline]
    pub(crate) fn load_bits(&mut self, bits: u32) -> f64 {
        self.bits = bits;
        let mut sum = 0.0;
        for i in 0..self.land.n {
            let c = self.land.contribution_at(bits, i);
            self.contribs[i] = c;
            sum += c;
        }
        sum / self.land.n as f64
    }

    /// Fitness of the loaded genotype with locus `j` flipped.
    #[inline]
    pub fn neighbor_fitness(&mut self, j: usize) -> f64 {
        debug_assert!(j < self.land.n);
        let flipped = self.bits ^ (1u32 << j);
        self.scratch.copy_from_slice(&self.contribs);
        for &i in &self.land.affected[j] {
            self.scratch[i as usize] = self.land.contribution_at(flipped, i as usize);
        }
        let mut sum = 0.0;
        for &c in &self.scratch {
            sum += c;
        }
        sum / self.land.n as f64
    }

    /// Best neighbor fitness and the lowest flipped-locus index achieving it.
    pub fn best_neighbor(&mut self) -> (usize, f64) {
        let mut best_j = 0;
        let mut best = f64::NEG_INFINITY;
        for j in 0..self.land.n {
            let f = self.neighbor_fitness(j);
            if f > best {
                best = f;
                best_j = j;
            }
        }
        (best_j, best)
    }
}
