//! Cross-checks of the production evaluation paths against the explicit-table
//! oracle and point-listing brute forces from the testkit.

use fitcloud::{
    build_cloud_exhaustive, local_optima_census_exhaustive, BorderingRule, LinkModel, NkLandscape,
};
use fitcloud_testkit::{brute_force_bins, brute_force_optima, brute_force_points, TableNk};

/// PRF-based fitness and table-lookup fitness agree bit for bit over the
/// full enumeration, for every small instance the tables can hold.
#[test]
fn prf_fitness_equals_table_oracle_exactly() {
    for n in 1..=8usize {
        for k in 0..=3.min(n - 1) {
            for seed in [1u64, 2] {
                for model in [LinkModel::Random, LinkModel::Adjacent] {
                    let land = NkLandscape::new(n, k, seed, model).unwrap();
                    let oracle = TableNk::new(&land);
                    for g in land.enumerate() {
                        let a = land.fitness(g).unwrap();
                        let b = oracle.fitness(g);
                        assert_eq!(
                            a.to_bits(),
                            b.to_bits(),
                            "n={n} k={k} seed={seed} genotype {g}"
                        );
                    }
                }
            }
        }
    }
}

fn assert_shape_matches_brute_force(n: usize, k: usize, seed: u64, rule: BorderingRule) {
    let land = NkLandscape::new(n, k, seed, LinkModel::Random).unwrap();
    let oracle = TableNk::new(&land);
    let width = 0.002;

    let shape = build_cloud_exhaustive(&land, rule, width).unwrap().shape().unwrap();
    let expected = brute_force_bins(&brute_force_points(&oracle, n, rule), width);

    assert_eq!(shape.rows().len(), expected.len());
    for (row, want) in shape.rows().iter().zip(&expected) {
        assert!((row.phi - want.phi).abs() < 1e-12);
        assert_eq!(row.count, want.count);
        assert_eq!(row.min.to_bits(), want.min.to_bits());
        assert_eq!(row.max.to_bits(), want.max.to_bits());
        // The streaming accumulator and the two-pass brute force take
        // different floating-point routes to the same mean and deviation.
        assert!((row.mean - want.mean).abs() < 1e-12);
        assert!((row.std - want.std).abs() < 1e-12);
    }
}

#[test]
fn shape_table_matches_point_listing_brute_force() {
    assert_shape_matches_brute_force(4, 1, 2026, BorderingRule::GhcBest);
    assert_shape_matches_brute_force(4, 1, 2026, BorderingRule::WholeNeighborhood);
    assert_shape_matches_brute_force(6, 2, 7, BorderingRule::GhcBest);
    assert_shape_matches_brute_force(7, 3, 13, BorderingRule::WholeNeighborhood);
}

#[test]
fn census_matches_brute_force_count() {
    let land = NkLandscape::new(12, 6, 99, LinkModel::Random).unwrap();
    let oracle = TableNk::new(&land);
    let census = local_optima_census_exhaustive(&land, 0.002).unwrap();
    let (optima, ties) = brute_force_optima(&oracle, 12);
    assert_eq!(census.optima, optima);
    assert_eq!(census.ties, ties);
    assert_eq!(census.checked, 1 << 12);
}
