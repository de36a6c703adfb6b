//! Independent oracles used by the test suites.
//!
//! The point of these helpers is to check the production code through a
//! different route: [`TableNk`] materializes every contribution table up
//! front and evaluates genotypes by plain lookup and averaging, and the
//! brute-force cloud helpers list every (f, f-bordering) pair explicitly
//! before grouping. Keep them dumb; speed does not matter here.

use fitcloud::{BorderingRule, Genotype, NkLandscape};

/// Explicit-table NK evaluator. Feasible only for small k (the tables hold
/// 2^(k+1) entries per locus), which is exactly the regime the oracle tests
/// run in.
pub struct TableNk {
    n: usize,
    links: Vec<Vec<u16>>,
    tables: Vec<Vec<f64>>,
}

impl TableNk {
    /// Materialize the tables of `land` by querying its contribution
    /// function once per (locus, pattern) cell.
    pub fn new(land: &NkLandscape) -> Self {
        let n = land.n();
        let k = land.k();
        let links: Vec<Vec<u16>> = (0..n).map(|i| land.links().of(i).to_vec()).collect();
        let tables = (0..n)
            .map(|i| (0..1u64 << (k + 1)).map(|p| land.contribution(i, p)).collect())
            .collect();
        Self { n, links, tables }
    }

    /// Fitness by table lookup: assemble each locus pattern from the raw
    /// bits (own bit first, then the stored partners), look it up, average.
    pub fn fitness(&self, g: Genotype) -> f64 {
        assert_eq!(g.len(), self.n);
        let bits = g.index();
        let mut sum = 0.0;
        for i in 0..self.n {
            let mut pattern = (bits >> i & 1) as usize;
            for (t, &j) in self.links[i].iter().enumerate() {
                pattern |= ((bits >> j & 1) as usize) << (t + 1);
            }
            sum += self.tables[i][pattern];
        }
        sum / self.n as f64
    }
}

/// Exhaustive, per-bin summary computed the slow way: list every point,
/// group, then aggregate with two passes.
#[derive(Debug, PartialEq)]
pub struct BruteBin {
    pub phi: f64,
    pub min: f64,
    pub mean: f64,
    pub max: f64,
    pub std: f64,
    pub count: u64,
}

/// Every (f, f-bordering) pair of the full search space under `rule`,
/// evaluated through the table oracle.
pub fn brute_force_points(oracle: &TableNk, n: usize, rule: BorderingRule) -> Vec<(f64, f64)> {
    let mut points = Vec::new();
    for bits in 0..1u64 << n {
        let g = Genotype::new(bits as u32, n).unwrap();
        let f = oracle.fitness(g);
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            let fb = oracle.fitness(g.flip(i));
            match rule {
                BorderingRule::WholeNeighborhood => points.push((f, fb)),
                BorderingRule::GhcBest => {
                    if fb > best {
                        best = fb;
                    }
                }
            }
        }
        if rule == BorderingRule::GhcBest {
            points.push((f, best));
        }
    }
    points
}

/// Group points by floor(f / width) (with 1.0 clamped down) and aggregate.
pub fn brute_force_bins(points: &[(f64, f64)], width: f64) -> Vec<BruteBin> {
    let mut grouped: std::collections::BTreeMap<u64, Vec<f64>> = std::collections::BTreeMap::new();
    for &(f, fb) in points {
        let mut idx = (f / width).floor() as u64;
        if idx > 0 && idx as f64 * width >= 1.0 {
            idx -= 1;
        }
        grouped.entry(idx).or_default().push(fb);
    }
    grouped
        .into_iter()
        .map(|(idx, values)| {
            let count = values.len() as u64;
            let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let mean = values.iter().sum::<f64>() / count as f64;
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / count as f64;
            BruteBin {
                phi: (idx as f64 + 0.5) * width,
                min,
                mean,
                max,
                std: var.sqrt(),
                count,
            }
        })
        .collect()
}

/// Count strict local optima by the obvious nested loop.
pub fn brute_force_optima(oracle: &TableNk, n: usize) -> (u64, u64) {
    let mut optima = 0;
    let mut ties = 0;
    for bits in 0..1u64 << n {
        let g = Genotype::new(bits as u32, n).unwrap();
        let f = oracle.fitness(g);
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            let fb = oracle.fitness(g.flip(i));
            if fb > best {
                best = fb;
            }
        }
        if best < f {
            optima += 1;
        } else if best == f {
            ties += 1;
        }
    }
    (optima, ties)
}
