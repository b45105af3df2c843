//! Poisson point process deployments seen from a typical point at the origin.
//!
//! Points are generated radially: for a homogeneous PPP of density `λ`,
//! the values `λπ d_n²` are the arrival times of a unit-rate Poisson
//! process, so cumulative sums of `Exp(1)` draws give the ordered distances
//! directly. Bearings are i.i.d. uniform and independent of the distances.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numerics::ln_gamma;

/// One sampled deployment: distances `d_1 <= d_2 <= ...` with bearings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkRealization {
    pub distances: Vec<f64>,
    pub angles: Vec<f64>,
    pub window_radius: f64,
}

impl NetworkRealization {
    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    /// Bearing offset by a common rotation, wrapped into `[0, 2π)`.
    pub fn rotated(&self, offset: f64) -> Self {
        Self {
            distances: self.distances.clone(),
            angles: self
                .angles
                .iter()
                .map(|a| (a + offset).rem_euclid(2.0 * PI))
                .collect(),
            window_radius: self.window_radius,
        }
    }

    /// `[[d, θ], ...]` as JSON, for debugging dumps.
    pub fn to_json_pairs(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.distances
                .iter()
                .zip(&self.angles)
                .map(|(d, a)| serde_json::json!([d, a]))
                .collect(),
        )
    }
}

/// Window radius with `λπR² = max(20, 4 k_needed)`.
pub fn window_radius(lambda: f64, k_needed: usize) -> f64 {
    let expected = (4 * k_needed).max(20) as f64;
    (expected / (lambda * PI)).sqrt()
}

fn check_density(op: &'static str, lambda: f64, k_needed: usize) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(domain(op, format!("density must be positive, got {lambda}")));
    }
    if k_needed < 1 {
        return Err(domain(op, "k_needed must be >= 1"));
    }
    Ok(())
}

/// Ordered distances of a PPP inside a disc of radius `radius`, resampled
/// until at least `k_needed` points fall inside.
pub fn sample_ppp_distances<R: Rng + ?Sized>(
    lambda: f64,
    radius: f64,
    k_needed: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    check_density("sample_ppp_distances", lambda, k_needed)?;
    if !(radius > 0.0) {
        return Err(domain("sample_ppp_distances", "radius must be positive"));
    }
    let scale = lambda * PI;
    let horizon = scale * radius * radius;
    let mut out = Vec::with_capacity((horizon * 1.2) as usize + 8);
    loop {
        out.clear();
        let mut t = 0.0;
        loop {
            let e: f64 = rng.sample(Exp1);
            t += e;
            if t > horizon {
                break;
            }
            out.push((t / scale).sqrt());
        }
        if out.len() >= k_needed {
            return Ok(out);
        }
    }
}

/// Samples a deployment whose window holds the `k_needed` nearest points
/// with overwhelming probability (`λπR² >= max(20, 4 k_needed)`).
pub fn sample_ppp<R: Rng + ?Sized>(
    lambda: f64,
    k_needed: usize,
    rng: &mut R,
) -> Result<NetworkRealization> {
    check_density("sample_ppp", lambda, k_needed)?;
    sample_ppp_in_window(lambda, window_radius(lambda, k_needed), k_needed, rng)
}

/// As [`sample_ppp`] with an explicit window radius.
pub fn sample_ppp_in_window<R: Rng + ?Sized>(
    lambda: f64,
    radius: f64,
    k_needed: usize,
    rng: &mut R,
) -> Result<NetworkRealization> {
    let distances = sample_ppp_distances(lambda, radius, k_needed, rng)?;
    let angles = (0..distances.len())
        .map(|_| rng.random::<f64>() * 2.0 * PI)
        .collect();
    Ok(NetworkRealization {
        distances,
        angles,
        window_radius: radius,
    })
}

/// Whether [`expected_nth_distance`] uses the Gamma-ratio formula or the
/// large-`n` approximation `√(n / λπ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMode {
    #[default]
    Exact,
    Approximate,
}

/// `E[d_n] = Γ(n + 1/2) / (√(λπ) Γ(n))`.
pub fn expected_nth_distance(n: usize, lambda: f64, mode: DistanceMode) -> Result<f64> {
    if n < 1 || !(lambda > 0.0) {
        return Err(domain(
            "expected_nth_distance",
            format!("need n >= 1 and lambda > 0, got n={n}, lambda={lambda}"),
        ));
    }
    let root = (lambda * PI).sqrt();
    Ok(match mode {
        DistanceMode::Exact => {
            let nf = n as f64;
            (ln_gamma(nf + 0.5)? - ln_gamma(nf)?).exp() / root
        }
        DistanceMode::Approximate => (n as f64).sqrt() / root,
    })
}

/// `Γ(n + 1/2)² / Γ(n)²`, the mean number of requests per base station per
/// unit density ratio (`N̄` or `L̄`).
pub fn mean_cluster_load(n: usize, mode: DistanceMode) -> Result<f64> {
    if n < 1 {
        return Err(domain("mean_cluster_load", "cluster size must be >= 1"));
    }
    Ok(match mode {
        DistanceMode::Exact => {
            let nf = n as f64;
            (2.0 * (ln_gamma(nf + 0.5)? - ln_gamma(nf)?)).exp()
        }
        DistanceMode::Approximate => n as f64,
    })
}

/// PDF of `η_L = d_1 / d_L`: `2(L-1) x (1-x²)^{L-2}` on `(0, 1)`.
pub fn distance_ratio_pdf(eta: f64, l: usize) -> Result<f64> {
    if l < 2 {
        return Err(domain(
            "distance_ratio_pdf",
            "cluster size 1 is degenerate (ratio is identically 1)",
        ));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(domain("distance_ratio_pdf", format!("eta must lie in (0, 1), got {eta}")));
    }
    let lm1 = (l - 1) as f64;
    Ok(2.0 * lm1 * eta * (1.0 - eta * eta).powi(l as i32 - 2))
}

/// Mean interference, with unit-mean gains, from PPP points beyond `radius`:
/// `∫_R^∞ λ 2π x · x^{-α} dx = 2πλ R^{2-α} / (α - 2)`.
pub fn interference_tail_bound(lambda: f64, radius: f64, alpha: f64) -> f64 {
    2.0 * PI * lambda * radius.powf(2.0 - alpha) / (alpha - 2.0)
}
