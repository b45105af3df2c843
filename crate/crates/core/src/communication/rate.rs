//! Average user rate under cooperative joint transmission.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Bernoulli, Distribution, Exp1, Gamma};
use serde::{Deserialize, Serialize};

use super::laplace::{h1, h2, small_x_slopes};
use crate::error::{domain, Result};
use crate::exec::{EstimateWithCI, Execution};
use crate::geometry::{distance_ratio_pdf, interference_tail_bound, DistanceMode};
use crate::load::acceptance_comm;
use crate::numerics::{integrate, integrate_semi_infinite, QuadratureSpec};
use crate::params::SystemParams;

/// Unit in which a rate is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateUnit {
    #[default]
    Nats,
    Bits,
}

impl RateUnit {
    /// Converts a value in nats into this unit.
    pub fn from_nats(self, v: f64) -> f64 {
        match self {
            RateUnit::Nats => v,
            RateUnit::Bits => v / std::f64::consts::LN_2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateMethod {
    Analytical,
    MonteCarlo,
}

/// Average rate `E[ln(1 + SIR)]` of the typical user, always stored in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateResult {
    pub rate: f64,
    pub kappa_c: f64,
    pub l: usize,
    pub p_c: f64,
    pub method: RateMethod,
    /// 95% half-width for Monte Carlo estimates.
    pub half_width_95: Option<f64>,
    pub n_samples: Option<usize>,
}

impl RateResult {
    pub fn rate_in(&self, unit: RateUnit) -> f64 {
        unit.from_nats(self.rate)
    }
}

/// κ_c for the given cluster size from the load model.
pub fn kappa_c_for(params: &SystemParams, l: usize) -> Result<f64> {
    acceptance_comm(params.psi, params.mu_c(), l, DistanceMode::Exact)
}

fn resolve_kappa(params: &SystemParams, l: usize, kappa_c: Option<f64>) -> Result<f64> {
    match kappa_c {
        Some(k) if (0.0..=1.0).contains(&k) => Ok(k),
        Some(k) => Err(domain("rate", format!("kappa_c must lie in [0, 1], got {k}"))),
        None => kappa_c_for(params, l),
    }
}

/// Integrand cutoff below which the first-order expansion in `z` is used.
const Z_SMALL: f64 = 1e-6;

/// Rate integrand for fixed `(z, η)` after the serving distance has been
/// integrated out: `∫_0^∞ e^{-πλ r² Q} f_r(r) dr = 1 / (1 + Q)`.
pub fn rate_integrand(z: f64, eta: f64, kappa: f64, params: &SystemParams) -> f64 {
    let (alpha, p_c, k) = (params.alpha, params.p_c, params.g_t());
    if z < Z_SMALL {
        // Both fractions are 1 - O(z); the difference over z tends to
        // E[g_1] + d/dz[κ H₁(z p_c, K)] at 0.
        let (c1, _) = small_x_slopes(alpha, eta);
        return k * p_c * (1.0 + kappa * c1);
    }
    let eval = || -> Result<f64> {
        let i1 = (1.0 - kappa) * h1(z, 1.0, alpha, eta)?;
        let i2 = h2(z, alpha, eta)?;
        let u = kappa * h1(z * p_c, k, alpha, eta)?;
        // 1/D - L_g/(D + u) = (u + D (1 - L_g)) / (D (D + u)), with
        // L_g = (1 + p_c z)^{-K}; this form has no cancellation.
        let miss = -(-k * (p_c * z).ln_1p()).exp_m1();
        let d = 1.0 + i1 + i2;
        Ok((u + d * miss) / (d * (d + u) * z))
    };
    eval().unwrap_or(f64::NAN)
}

/// Average rate by nested quadrature: outer `z ∈ (0, ∞)`, inner
/// `η ∈ (0, 1)` weighted by the distance-ratio density. `L = 1` places
/// `η` at 1 (single serving base station, no cluster annulus).
pub fn rate_analytical(
    params: &SystemParams,
    l: usize,
    kappa_c: Option<f64>,
    spec: &QuadratureSpec,
) -> Result<RateResult> {
    params.validate()?;
    if l < 1 {
        return Err(domain("rate_analytical", "cluster size must be >= 1"));
    }
    let kappa = resolve_kappa(params, l, kappa_c)?;
    let inner_spec = QuadratureSpec {
        rel_tol: spec.rel_tol * 0.1,
        abs_tol: spec.abs_tol * 0.1,
        max_subdivisions: spec.max_subdivisions,
    };
    let rate = if params.p_c == 0.0 {
        0.0
    } else if l == 1 {
        integrate_semi_infinite(|z| rate_integrand(z, 1.0, kappa, params), spec)?
    } else {
        integrate_semi_infinite(
            |z| {
                integrate(
                    |eta| distance_ratio_pdf(eta, l).unwrap_or(0.0) * rate_integrand(z, eta, kappa, params),
                    0.0,
                    1.0,
                    &inner_spec,
                )
                .unwrap_or(f64::NAN)
            },
            spec,
        )?
    };
    Ok(RateResult {
        rate: rate.max(0.0),
        kappa_c: kappa,
        l,
        p_c: params.p_c,
        method: RateMethod::Analytical,
        half_width_95: None,
        n_samples: None,
    })
}

/// Truncation of the simulated deployment for rate Monte Carlo.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RateWindow {
    /// Expected number of base stations in the simulation disc.
    pub expected_points: f64,
    /// Adds the mean interference of the infinite exterior
    /// `2πλ R^{2-α} / (α - 2)` to each realization.
    pub tail_correction: bool,
}

impl Default for RateWindow {
    fn default() -> Self {
        Self {
            expected_points: 1000.0,
            tail_correction: true,
        }
    }
}

impl RateWindow {
    pub fn radius(&self, lambda: f64) -> f64 {
        (self.expected_points / (lambda * PI)).sqrt()
    }
}

/// `(d_1 / d)^α` from PPP arrival times `t ∝ d²`.
#[inline]
fn path_ratio(t1: f64, t: f64, half_alpha: f64) -> f64 {
    let q = t1 / t;
    if half_alpha == 2.0 {
        q * q
    } else {
        q.powf(half_alpha)
    }
}

/// One SIR draw: serving base station plus accepted cooperators in the
/// signal, declined cluster members and everything beyond the cluster as
/// interference. Distances are normalized by `d_1`.
fn sample_sir<R: Rng + ?Sized>(
    params: &SystemParams,
    l: usize,
    accept: &Bernoulli,
    desired: Option<&Gamma<f64>>,
    window: &RateWindow,
    rng: &mut R,
) -> f64 {
    let scale = params.lambda_b * PI;
    let radius = window.radius(params.lambda_b);
    let horizon = scale * radius * radius;
    let half_alpha = params.alpha / 2.0;
    loop {
        let mut t: f64 = rng.sample(Exp1);
        if t > horizon {
            continue;
        }
        let t1 = t;
        let mut signal = desired.map_or(0.0, |g| g.sample(rng));
        let mut interference = 0.0;
        let mut count = 1usize;
        loop {
            let e: f64 = rng.sample(Exp1);
            t += e;
            if t > horizon {
                break;
            }
            count += 1;
            let w = path_ratio(t1, t, half_alpha);
            if count <= l && accept.sample(rng) {
                signal += desired.map_or(0.0, |g| g.sample(rng)) * w;
            } else {
                let g: f64 = rng.sample(Exp1);
                interference += g * w;
            }
        }
        if count < l {
            continue;
        }
        if window.tail_correction {
            let r = (t1 / scale).sqrt();
            interference += interference_tail_bound(params.lambda_b, radius, params.alpha) * r.powf(params.alpha);
        }
        return signal / interference;
    }
}

/// Monte Carlo average of `ln(1 + SIR)` over `n_real` deployments.
pub fn rate_monte_carlo(
    params: &SystemParams,
    l: usize,
    kappa_c: Option<f64>,
    n_real: usize,
    seed: u64,
    exec: Execution,
    window: RateWindow,
) -> Result<RateResult> {
    params.validate()?;
    if l < 1 || n_real < 1 {
        return Err(domain("rate_monte_carlo", "need l >= 1 and n_real >= 1"));
    }
    if !(window.expected_points >= (4 * l).max(20) as f64) {
        return Err(domain(
            "rate_monte_carlo",
            format!("window must hold at least max(20, 4L) expected points, got {}", window.expected_points),
        ));
    }
    let kappa = resolve_kappa(params, l, kappa_c)?;
    let accept = Bernoulli::new(kappa).map_err(|e| domain("rate_monte_carlo", e.to_string()))?;
    let desired = if params.p_c > 0.0 {
        Some(Gamma::new(params.g_t(), params.p_c).map_err(|e| domain("rate_monte_carlo", e.to_string()))?)
    } else {
        None
    };
    let samples = exec.map_seeded(n_real, seed, |rng| {
        sample_sir(params, l, &accept, desired.as_ref(), &window, rng).ln_1p()
    });
    let est = EstimateWithCI::from_samples(&samples);
    Ok(RateResult {
        rate: est.mean,
        kappa_c: kappa,
        l,
        p_c: params.p_c,
        method: RateMethod::MonteCarlo,
        half_width_95: Some(est.half_width_95),
        n_samples: Some(est.n_samples),
    })
}
