use crate::error::{Error, Result};

/// Default relative cutoff for [`sum_series`].
pub const DEFAULT_REL_CUTOFF: f64 = 1e-12;

const MAX_TERMS: usize = 1_000_000;
const QUIET_RUN: usize = 3;

/// Sums `term(n)` for `n = start, start + 1, ...`.
///
/// Stops once three consecutive terms satisfy `|term| <= rel_cutoff * |sum|`.
/// Terms may grow before they decay; only the tail is required to shrink.
pub fn sum_series<F: Fn(usize) -> f64>(term: F, start: usize, rel_cutoff: f64) -> Result<f64> {
    if !(rel_cutoff > 0.0) {
        return Err(Error::InvalidParams(format!(
            "rel_cutoff must be positive, got {rel_cutoff}"
        )));
    }
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut quiet = 0;
    for n in start..start + MAX_TERMS {
        let t = term(n);
        if !t.is_finite() {
            return Err(crate::error::domain("sum_series", format!("term {n} is not finite")));
        }
        // Kahan summation.
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if t.abs() <= rel_cutoff * sum.abs() {
            quiet += 1;
            if quiet >= QUIET_RUN {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence {
        op: "sum_series",
        estimate: sum,
        abs_error: f64::NAN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ln_gamma;
    use approx::assert_relative_eq;

    #[test]
    fn geometric() {
        let v = sum_series(|n| 0.5f64.powi(n as i32), 1, DEFAULT_REL_CUTOFF).unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn factorial_weighted() {
        // 40-digit mpmath value of sum_{n>=2} e^{-1} / (n n!).
        let expected = 0.116_949_665_824_245_32;
        let v = sum_series(
            |n| (-(n as f64).ln() - ln_gamma(n as f64 + 1.0).unwrap() - 1.0).exp(),
            2,
            DEFAULT_REL_CUTOFF,
        )
        .unwrap();
        assert_relative_eq!(v, expected, max_relative = 1e-12);
    }

    #[test]
    fn zero_terms() {
        assert_eq!(sum_series(|_| 0.0, 0, DEFAULT_REL_CUTOFF).unwrap(), 0.0);
    }

    #[test]
    fn growing_then_decaying_terms() {
        // Poisson(30) pmf from 0: peaks near n = 30 before decaying.
        let x: f64 = 30.0;
        let v = sum_series(
            |n| (n as f64 * x.ln() - x - ln_gamma(n as f64 + 1.0).unwrap()).exp(),
            0,
            DEFAULT_REL_CUTOFF,
        )
        .unwrap();
        assert_relative_eq!(v, 1.0, max_relative = 1e-11);
    }

    #[test]
    fn harmonic_series_hits_cap() {
        let r = sum_series(|n| 1.0 / n as f64, 1, DEFAULT_REL_CUTOFF);
        assert!(matches!(r, Err(Error::Convergence { .. })));
    }
}
