mod common;

use common::{ks_critical_1pct, ks_statistic};
use isac_core::exec::{realization_rng, EstimateWithCI, Execution};
use isac_core::geometry::{
    expected_nth_distance, sample_ppp, sample_ppp_distances, window_radius, DistanceMode,
};
use isac_core::numerics::regularized_upper_gamma;
use std::f64::consts::PI;

const DRAWS: usize = 100_000;

fn nth_distances(lambda: f64, k: usize, seed: u64) -> Vec<Vec<f64>> {
    Execution::Parallel.map_seeded(DRAWS, seed, |rng| {
        sample_ppp(lambda, k, rng).unwrap().distances[..k].to_vec()
    })
}

#[test]
fn nearest_distance_mean_is_one_half() {
    let d = nth_distances(1.0, 1, 11);
    let est = EstimateWithCI::from_samples(&d.iter().map(|v| v[0]).collect::<Vec<_>>());
    assert!(est.within_std_errors(0.5, 3.0), "{est:?}");
}

#[test]
fn ordered_distance_means() {
    for (lambda, seed) in [(1.0, 12), (2.5, 13)] {
        let d = nth_distances(lambda, 20, seed);
        for n in 1..=20 {
            let col: Vec<f64> = d.iter().map(|v| v[n - 1]).collect();
            let est = EstimateWithCI::from_samples(&col);
            let exact = expected_nth_distance(n, lambda, DistanceMode::Exact).unwrap();
            assert!(est.within_std_errors(exact, 3.0), "lambda={lambda} n={n}: {est:?} vs {exact}");
            if n == 20 {
                assert!((est.mean - exact).abs() / exact < 0.005);
            }
        }
    }
}

#[test]
fn window_count_is_poisson() {
    let r = window_radius(1.0, 5);
    let mean = PI * r * r;
    let counts: Vec<usize> = Execution::Parallel.map_seeded(DRAWS, 21, |rng| {
        sample_ppp_distances(1.0, r, 1, rng).unwrap().len()
    });
    // Discrete KS: compare the empirical CDF with the Poisson CDF at integers.
    let mut hist = vec![0usize; 80];
    for c in counts {
        hist[c.min(79)] += 1;
    }
    let mut emp = 0.0;
    let mut worst: f64 = 0.0;
    for (k, h) in hist.iter().enumerate() {
        emp += *h as f64 / DRAWS as f64;
        // P[N <= k] = Q(k + 1, mean).
        let cdf = regularized_upper_gamma(k as f64 + 1.0, mean).unwrap();
        worst = worst.max((emp - cdf).abs());
    }
    assert!(worst < ks_critical_1pct(DRAWS), "KS = {worst}");
}

#[test]
fn distance_ratio_law() {
    let l = 5;
    let mut ratios: Vec<f64> = nth_distances(1.0, l, 31).iter().map(|v| v[0] / v[l - 1]).collect();
    let cdf = |x: f64| 1.0 - (1.0 - x * x).powi(l as i32 - 1);
    let ks = ks_statistic(&mut ratios, cdf);
    assert!(ks < ks_critical_1pct(DRAWS), "KS = {ks}");
}

#[test]
fn bearings_are_uniform() {
    const BINS: usize = 20;
    let angles: Vec<f64> = Execution::Parallel.map_seeded(DRAWS, 41, |rng| sample_ppp(1.0, 1, rng).unwrap().angles[0]);
    let mut hist = [0usize; BINS];
    for a in angles {
        hist[((a / (2.0 * PI)) * BINS as f64) as usize] += 1;
    }
    let expected = DRAWS as f64 / BINS as f64;
    let chi2: f64 = hist.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    // 1% critical value of chi-square with 19 degrees of freedom.
    assert!(chi2 < 36.19, "chi2 = {chi2}");
}

#[test]
fn density_scaling() {
    // The same stream at density λ, rescaled by √λ, reproduces density 1.
    for seed in 0..200 {
        let a = sample_ppp(1.0, 8, &mut realization_rng(seed, 0)).unwrap();
        let b = sample_ppp(4.0, 8, &mut realization_rng(seed, 0)).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.distances.iter().zip(&b.distances) {
            assert!((x - 2.0 * y).abs() <= 1e-12 * x);
        }
        assert_eq!(a.angles, b.angles);
    }
}
