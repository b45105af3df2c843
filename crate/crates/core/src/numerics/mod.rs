//! Special functions, series summation and quadrature.
//!
//! Everything here is a pure function of its arguments.

mod quad;
mod series;
mod special;

pub use quad::{integrate, integrate_semi_infinite, QuadratureSpec};
pub use series::{sum_series, DEFAULT_REL_CUTOFF};
pub use special::{
    incomplete_beta, incomplete_beta_cf, ln_gamma, regularized_upper_gamma, upper_incomplete_gamma,
};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Harmonic number `H_n = 1 + 1/2 + ... + 1/n`, summed smallest-first.
pub fn harmonic(n: u64) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

/// Asymptotic expansion `H_n ≈ ln n + γ + 1/(2n)`.
pub fn harmonic_asymptotic(n: u64) -> f64 {
    let n = n as f64;
    n.ln() + EULER_GAMMA + 0.5 / n
}

/// Pairwise sum; the grouping depends only on the slice length.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 64;
    if values.len() <= BLOCK {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_minus_log_tends_to_gamma() {
        let n = 1_000_000;
        let d = harmonic(n) - (n as f64).ln();
        assert!((d - EULER_GAMMA).abs() < 1e-5, "{d}");
    }

    #[test]
    fn harmonic_asymptotic_is_close() {
        for n in [10, 100, 1000] {
            assert!((harmonic(n) - harmonic_asymptotic(n)).abs() < 1.0 / (12.0 * (n * n) as f64) + 1e-12);
        }
    }
}
