//! Closed-form CRLB approximations.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::geometry::{expected_nth_distance, DistanceMode};
use crate::load::{acceptance_sensing, SensingAcceptanceForm};
use crate::numerics::{harmonic, harmonic_asymptotic, EULER_GAMMA};
use crate::params::{SensingGain, SystemParams};

/// Which `(l, k)` pairs enter the denominator of the expected-distance
/// approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prop1Sum {
    /// All `l, k = 1..N`.
    #[default]
    Full,
    /// Only `l ≠ k`.
    OffDiagonal,
}

/// `2 / (|ζ|² Σ_l Σ_k E[d_k]^{-β} E[d_l]^{-β})`.
pub fn crlb_prop1(
    params: &SystemParams,
    gain: &SensingGain,
    n: usize,
    sum: Prop1Sum,
    mode: DistanceMode,
) -> Result<f64> {
    if n < 2 {
        return Err(domain("crlb_prop1", "need at least two cooperating transceivers"));
    }
    let w = (1..=n)
        .map(|k| expected_nth_distance(k, params.lambda_b, mode).map(|d| d.powf(-params.beta)))
        .collect::<Result<Vec<f64>>>()?;
    let total: f64 = w.iter().sum();
    let denom = match sum {
        Prop1Sum::Full => total * total,
        Prop1Sum::OffDiagonal => total * total - w.iter().map(|x| x * x).sum::<f64>(),
    };
    Ok(2.0 / (gain.zeta_sq * denom))
}

/// `2 / (|ζ|² (λπ)^β Σ_l Σ_k (kl)^{-β/2})`, i.e. the expected-distance
/// approximation with `E[d_n] ≈ √(n / λπ)`. With `β = 2` this is
/// `2 / (|ζ|² λ² π² H_N²)`.
pub fn crlb_eq13(params: &SystemParams, gain: &SensingGain, n: u64) -> Result<f64> {
    if n < 1 {
        return Err(domain("crlb_eq13", "n must be >= 1"));
    }
    let s: f64 = if params.beta == 2.0 {
        harmonic(n)
    } else {
        (1..=n).rev().map(|k| (k as f64).powf(-params.beta / 2.0)).sum()
    };
    Ok(2.0 / (gain.zeta_sq * (params.lambda_b * PI).powf(params.beta) * s * s))
}

/// Large-`N` behaviour of the CRLB for `β = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingLaw {
    /// `lim CRLB · ln²N` as stated by the scaling theorem: `1 / (|ζ|² λ² π²)`.
    pub theorem_constant: f64,
    /// Limit implied by the harmonic-sum form `2 / (|ζ|² λ² π² H_N²)`:
    /// `2 / (|ζ|² λ² π²)`.
    pub harmonic_constant: f64,
}

impl ScalingLaw {
    /// `theorem_constant / ln²N`.
    pub fn at(&self, n: u64) -> f64 {
        let l = (n as f64).ln();
        self.theorem_constant / (l * l)
    }

    /// Harmonic-sum form with `H_N ≈ ln N + γ + 1/(2N)`.
    pub fn refined(&self, n: u64) -> f64 {
        let h = harmonic_asymptotic(n);
        self.harmonic_constant / (h * h)
    }

    /// Asymptotic `H_N - ln N`.
    pub fn euler_gamma() -> f64 {
        EULER_GAMMA
    }
}

pub fn crlb_asymptote(params: &SystemParams, gain: &SensingGain) -> Result<ScalingLaw> {
    if params.beta != 2.0 {
        return Err(Error::UnsupportedRegime(format!(
            "the ln²N scaling law holds for beta = 2, got beta = {}",
            params.beta
        )));
    }
    let c = 1.0 / (gain.zeta_sq * params.lambda_b * params.lambda_b * PI * PI);
    Ok(ScalingLaw {
        theorem_constant: c,
        harmonic_constant: 2.0 * c,
    })
}

/// CRLB including the sensing acceptance probability.
///
/// The asymptotic form over the harmonic one is `H_N² / (2 ln²N)`: 2.3 at
/// `N = 2`, 0.78 at `N = 12` and 1/2 in the limit. Cluster sizes of
/// interest are small, so the harmonic form is the default.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrlbaVariant {
    /// `1 / (κ_s² |ζ|² λ² π² ln²N)`, the large-`N` scaling law.
    Asymptotic,
    /// `2 / (κ_s² |ζ|² λ² π² H_N²)`, the harmonic-sum CRLB over `κ_s²`.
    #[default]
    Consistent,
}

pub fn crlb_with_acceptance(
    params: &SystemParams,
    gain: &SensingGain,
    n: usize,
    variant: CrlbaVariant,
    form: SensingAcceptanceForm,
) -> Result<f64> {
    if n < 2 {
        return Err(domain("crlb_with_acceptance", "need n >= 2"));
    }
    let law = crlb_asymptote(params, gain)?;
    let kappa = acceptance_sensing(params.psi, params.mu_s(), n, form, DistanceMode::Exact)?;
    let base = match variant {
        CrlbaVariant::Asymptotic => law.at(n as u64),
        CrlbaVariant::Consistent => {
            let h = harmonic(n as u64);
            law.harmonic_constant / (h * h)
        }
    };
    Ok(base / (kappa * kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> SensingGain {
        SensingGain::normalized(1.0).unwrap()
    }

    #[test]
    fn prop1_two_transceivers() {
        // E[d1] = 1/2, E[d2] = 3/4 at λ = 1: weights 4 and 16/9.
        let p = SystemParams::default();
        let w = 4.0 + 16.0 / 9.0;
        let v = crlb_prop1(&p, &unit(), 2, Prop1Sum::Full, DistanceMode::Exact).unwrap();
        assert_relative_eq!(v, 2.0 / (w * w), max_relative = 1e-13);
        let off = crlb_prop1(&p, &unit(), 2, Prop1Sum::OffDiagonal, DistanceMode::Exact).unwrap();
        assert_relative_eq!(off, 2.0 / (2.0 * 4.0 * 16.0 / 9.0), max_relative = 1e-13);
    }

    #[test]
    fn prop1_with_approximate_distances_is_eq13() {
        let p = SystemParams::default();
        for n in 2..25 {
            let a = crlb_prop1(&p, &unit(), n, Prop1Sum::Full, DistanceMode::Approximate).unwrap();
            let b = crlb_eq13(&p, &unit(), n as u64).unwrap();
            let h = harmonic(n as u64);
            assert_relative_eq!(a, b, max_relative = 1e-12);
            assert_relative_eq!(b, 2.0 / (PI * PI * h * h), max_relative = 1e-12);
        }
    }

    #[test]
    fn prop1_decreasing_in_n() {
        let p = SystemParams::default();
        let v: Vec<f64> = (2..40)
            .map(|n| crlb_prop1(&p, &unit(), n, Prop1Sum::Full, DistanceMode::Exact).unwrap())
            .collect();
        assert!(v.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn theorem_constant() {
        let law = crlb_asymptote(&SystemParams::default(), &unit()).unwrap();
        assert_relative_eq!(law.theorem_constant, 0.101_321_183_642_337_77, max_relative = 1e-12);
        assert_relative_eq!(law.harmonic_constant, 2.0 * law.theorem_constant);
    }

    #[test]
    fn asymptote_requires_beta_two() {
        let p = SystemParams { beta: 3.0, ..Default::default() };
        assert!(matches!(crlb_asymptote(&p, &unit()), Err(Error::UnsupportedRegime(_))));
        assert!(crlb_with_acceptance(&p, &unit(), 5, CrlbaVariant::Asymptotic, Default::default()).is_err());
    }

    #[test]
    fn acceptance_scaling() {
        // Vanishing load: κ_s = 1 and CRLB_a reduces to the scaling law.
        let p = SystemParams { lambda_s: 1e-12, ..Default::default() };
        let law = crlb_asymptote(&p, &unit()).unwrap();
        let v = crlb_with_acceptance(&p, &unit(), 9, CrlbaVariant::Asymptotic, Default::default()).unwrap();
        assert_relative_eq!(v, law.at(9), max_relative = 1e-9);

        // κ_s enters squared.
        let p = SystemParams::default();
        let form = SensingAcceptanceForm::LoadModel;
        let k = acceptance_sensing(p.psi, p.mu_s(), 20, form, DistanceMode::Exact).unwrap();
        let v = crlb_with_acceptance(&p, &unit(), 20, CrlbaVariant::Asymptotic, form).unwrap();
        assert_relative_eq!(v * k * k, law.at(20), max_relative = 1e-12);
    }
}
