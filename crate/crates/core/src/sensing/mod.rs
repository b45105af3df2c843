//! Localization accuracy of cooperative (distributed MIMO radar) sensing.
//!
//! The `N` base stations nearest to a typical target at the origin act as
//! transceivers. Every transmit/receive pair `(i, j)`, monostatic ones
//! included, contributes a range measurement to the Fisher information
//! of the target position.

mod closed_form;

use serde::{Deserialize, Serialize};

pub use closed_form::{
    crlb_asymptote, crlb_eq13, crlb_prop1, crlb_with_acceptance, CrlbaVariant, Prop1Sum,
    ScalingLaw,
};
pub use crate::load::{acceptance_sensing, SensingAcceptanceForm};

use crate::error::{domain, Error, Result};
use crate::exec::{EstimateWithCI, Execution};
use crate::geometry::{sample_ppp, NetworkRealization};
use crate::params::{SensingGain, SystemParams};

/// Relative determinant threshold below which the FIM counts as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Symmetric 2×2 Fisher information of the target position (1/km²).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FisherInfo {
    pub f_xx: f64,
    pub f_xy: f64,
    pub f_yy: f64,
}

impl FisherInfo {
    pub fn trace(&self) -> f64 {
        self.f_xx + self.f_yy
    }

    pub fn det(&self) -> f64 {
        self.f_xx * self.f_yy - self.f_xy * self.f_xy
    }

    pub fn is_singular(&self) -> bool {
        let half_tr = 0.5 * self.trace();
        self.det() <= SINGULAR_TOL * half_tr * half_tr
    }

    /// `tr(F⁻¹) = tr F / det F`, without the singularity cutoff.
    pub fn trace_of_inverse_raw(&self) -> f64 {
        let det = self.det();
        if det > 0.0 {
            self.trace() / det
        } else {
            f64::INFINITY
        }
    }

    /// Difference `self - other`, used to check PSD ordering.
    pub fn minus(&self, other: &Self) -> Self {
        Self {
            f_xx: self.f_xx - other.f_xx,
            f_xy: self.f_xy - other.f_xy,
            f_yy: self.f_yy - other.f_yy,
        }
    }
}

/// Fisher information of the `n` nearest transceivers:
/// `F = |ζ|² Σ_i Σ_j d_i^{-β} d_j^{-β} [a_ij², a_ij b_ij; a_ij b_ij, b_ij²]`
/// with `a_ij = cos θ_i + cos θ_j` and `b_ij = sin θ_i + sin θ_j`.
pub fn fim(
    realization: &NetworkRealization,
    n: usize,
    gain: &SensingGain,
    beta: f64,
) -> Result<FisherInfo> {
    if n > realization.len() {
        return Err(Error::Size {
            requested: n,
            available: realization.len(),
        });
    }
    if n == 0 {
        return Err(domain("fim", "cluster size must be >= 1"));
    }
    let w: Vec<f64> = realization.distances[..n].iter().map(|d| d.powf(-beta)).collect();
    let (sin, cos): (Vec<f64>, Vec<f64>) = realization.angles[..n].iter().map(|a| a.sin_cos()).unzip();

    let (mut xx, mut xy, mut yy) = (0.0, 0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let a = cos[i] + cos[j];
            let b = sin[i] + sin[j];
            let d = w[i] * w[j];
            xx += d * a * a;
            xy += d * a * b;
            yy += d * b * b;
        }
    }
    let z = gain.zeta_sq;
    Ok(FisherInfo {
        f_xx: z * xx,
        f_xy: z * xy,
        f_yy: z * yy,
    })
}

/// `tr(F⁻¹)`, or `+∞` when the target cannot be localized (e.g. `N = 1`).
pub fn crlb_from_fim(f: &FisherInfo) -> f64 {
    if f.is_singular() {
        f64::INFINITY
    } else {
        f.trace() / f.det()
    }
}

/// `tr(F⁻¹)` from the pairwise expansion of the Fisher information, without
/// forming or inverting the matrix. With `D_ij = d_i^{-β} d_j^{-β}` and the
/// `N²` ordered pairs indexed linearly,
/// `tr F = |ζ|² Σ D_ij (a_ij² + b_ij²)` and
/// `det F = |ζ|⁴ Σ_{p > q} D_p D_q (a_q b_p - a_p b_q)²`.
pub fn crlb_pair_expansion(
    realization: &NetworkRealization,
    n: usize,
    gain: &SensingGain,
    beta: f64,
) -> Result<f64> {
    if n > realization.len() {
        return Err(Error::Size {
            requested: n,
            available: realization.len(),
        });
    }
    if n == 0 {
        return Err(domain("crlb_pair_expansion", "cluster size must be >= 1"));
    }
    let d = &realization.distances;
    let th = &realization.angles;
    let pairs: Vec<(f64, f64, f64)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let w = (d[i] * d[j]).powf(-beta);
            (w, th[i].cos() + th[j].cos(), th[i].sin() + th[j].sin())
        })
        .collect();
    let tr: f64 = pairs.iter().map(|(w, a, b)| w * (a * a + b * b)).sum();
    let mut det = 0.0;
    for (p, &(w1, a1, b1)) in pairs.iter().enumerate() {
        for &(w2, a2, b2) in &pairs[..p] {
            let cross = a2 * b1 - a1 * b2;
            det += w1 * w2 * cross * cross;
        }
    }
    Ok(if det > 0.0 { tr / (gain.zeta_sq * det) } else { f64::INFINITY })
}

/// Monte Carlo CRLB with the fraction of numerically singular realizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrlbEstimate {
    pub estimate: EstimateWithCI,
    pub singular_fraction: f64,
}

/// Per-realization `tr(F⁻¹)` values; realization `i` uses RNG stream `i`.
///
/// Singular realizations keep their raw (huge) `tr F / det F` value so they
/// show up as outliers instead of being dropped.
pub fn crlb_samples(
    params: &SystemParams,
    gain: &SensingGain,
    n: usize,
    n_real: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<(f64, bool)>> {
    params.validate()?;
    if n < 1 || n_real < 1 {
        return Err(domain("crlb_monte_carlo", "need n >= 1 and n_real >= 1"));
    }
    let lambda = params.lambda_b;
    let beta = params.beta;
    let out = exec.map_seeded(n_real, seed, |rng| {
        let r = sample_ppp(lambda, n, rng)?;
        let f = fim(&r, n, gain, beta)?;
        Ok((f.trace_of_inverse_raw(), f.is_singular()))
    });
    out.into_iter().collect()
}

/// `E[tr(F⁻¹)]` over independent PPP deployments.
pub fn crlb_monte_carlo(
    params: &SystemParams,
    gain: &SensingGain,
    n: usize,
    n_real: usize,
    seed: u64,
    exec: Execution,
) -> Result<CrlbEstimate> {
    let samples = crlb_samples(params, gain, n, n_real, seed, exec)?;
    let singular = samples.iter().filter(|(_, s)| *s).count();
    let values: Vec<f64> = samples.into_iter().map(|(v, _)| v).collect();
    Ok(CrlbEstimate {
        estimate: EstimateWithCI::from_samples(&values),
        singular_fraction: singular as f64 / n_real as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn unit() -> SensingGain {
        SensingGain::normalized(1.0).unwrap()
    }

    fn realization(d: &[f64], th: &[f64]) -> NetworkRealization {
        NetworkRealization {
            distances: d.to_vec(),
            angles: th.to_vec(),
            window_radius: 10.0,
        }
    }

    #[test]
    fn single_transceiver() {
        let f = fim(&realization(&[1.0], &[0.0]), 1, &unit(), 2.0).unwrap();
        assert_eq!((f.f_xx, f.f_xy, f.f_yy), (4.0, 0.0, 0.0));
        assert_eq!(crlb_from_fim(&f), f64::INFINITY);
    }

    #[test]
    fn two_orthogonal_transceivers() {
        let f = fim(&realization(&[1.0, 1.0], &[0.0, FRAC_PI_2]), 2, &unit(), 2.0).unwrap();
        assert_relative_eq!(f.f_xx, 6.0, epsilon = 1e-14);
        assert_relative_eq!(f.f_xy, 2.0, epsilon = 1e-14);
        assert_relative_eq!(f.f_yy, 6.0, epsilon = 1e-14);
        assert_relative_eq!(crlb_from_fim(&f), 0.375, max_relative = 1e-14);
    }

    #[test]
    fn distance_homogeneity() {
        let r1 = realization(&[0.4, 0.9, 1.3], &[0.2, 2.0, 4.1]);
        let r2 = realization(&[0.8, 1.8, 2.6], &[0.2, 2.0, 4.1]);
        let f1 = fim(&r1, 3, &unit(), 2.0).unwrap();
        let f2 = fim(&r2, 3, &unit(), 2.0).unwrap();
        assert_relative_eq!(f1.f_xx / 16.0, f2.f_xx, max_relative = 1e-13);
        assert_relative_eq!(f1.f_xy / 16.0, f2.f_xy, max_relative = 1e-13);
        assert_relative_eq!(f1.f_yy / 16.0, f2.f_yy, max_relative = 1e-13);
    }

    #[test]
    fn scaled_identity() {
        let f = FisherInfo { f_xx: 3.0, f_xy: 0.0, f_yy: 3.0 };
        assert_relative_eq!(crlb_from_fim(&f), 2.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn size_error() {
        let r = realization(&[1.0], &[0.0]);
        assert!(matches!(fim(&r, 2, &unit(), 2.0), Err(Error::Size { requested: 2, available: 1 })));
    }

    #[test]
    fn pair_expansion_on_two_orthogonal_transceivers() {
        let r = realization(&[1.0, 1.0], &[0.0, FRAC_PI_2]);
        assert_relative_eq!(crlb_pair_expansion(&r, 2, &unit(), 2.0).unwrap(), 0.375, max_relative = 1e-14);
        assert_eq!(crlb_pair_expansion(&r, 1, &unit(), 2.0).unwrap(), f64::INFINITY);
    }
}
