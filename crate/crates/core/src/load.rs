//! Base-station load and the probability that a cooperation request is accepted.
//!
//! A base station whose association area holds `n ~ Poisson(μ · n̄)` requests
//! (where `n̄ = Γ(k + ½)² / Γ(k)²` for cluster size `k`) can serve at most
//! `ψ` of them. A sensing request is accepted with probability `min(1, ψ/n)`.
//! For communication the base station always keeps its own user and fills
//! the remaining `ψ - 1` slots from the other `n - 1` requests.

use rand::seq::index;
use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::exec::{EstimateWithCI, Execution};
use crate::geometry::{mean_cluster_load, DistanceMode};
use crate::numerics::{ln_gamma, regularized_upper_gamma, sum_series, DEFAULT_REL_CUTOFF};

/// Leading term of the sensing acceptance probability.
///
/// The three variants share the overflow series
/// `Σ_{n > ψ} ψ x^n / (n · n!) e^{-x}` and differ in the probability
/// assigned to the no-overflow event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SensingAcceptanceForm {
    /// `Γ(ψ + 1, x) / ψ! = P[n <= ψ]`, the expectation of the load model.
    #[default]
    LoadModel,
    /// `Γ(ψ, x) / (ψ - 1)! = P[n <= ψ - 1]`.
    MainText,
    /// `Γ(ψ, x) / ψ!`.
    AppendixText,
}

/// Request kind for the load simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RequestKind {
    Sensing,
    Communication,
}

fn check(op: &'static str, psi: u32, mu: f64, k: usize) -> Result<()> {
    if psi < 1 || k < 1 || !(mu >= 0.0) || !mu.is_finite() {
        return Err(domain(
            op,
            format!("need psi >= 1, cluster size >= 1, mu >= 0; got psi={psi}, mu={mu}, k={k}"),
        ));
    }
    Ok(())
}

fn ln_poisson_weight(n: usize, x: f64) -> f64 {
    n as f64 * x.ln() - x - ln_gamma(n as f64 + 1.0).expect("n + 1 > 0")
}

/// Sensing acceptance probability `κ_s` for `ψ` resource blocks, density
/// ratio `μ_s = λ_s / λ_b` and sensing cluster size `n`.
pub fn acceptance_sensing(
    psi: u32,
    mu_s: f64,
    n: usize,
    form: SensingAcceptanceForm,
    load: DistanceMode,
) -> Result<f64> {
    check("acceptance_sensing", psi, mu_s, n)?;
    let x = mu_s * mean_cluster_load(n, load)?;
    if x == 0.0 {
        return Ok(match form {
            SensingAcceptanceForm::AppendixText => 1.0 / f64::from(psi),
            _ => 1.0,
        });
    }
    let psi_f = f64::from(psi);
    let head = match form {
        SensingAcceptanceForm::LoadModel => regularized_upper_gamma(psi_f + 1.0, x)?,
        SensingAcceptanceForm::MainText => regularized_upper_gamma(psi_f, x)?,
        SensingAcceptanceForm::AppendixText => regularized_upper_gamma(psi_f, x)? / psi_f,
    };
    let tail = sum_series(
        |k| (psi_f.ln() - (k as f64).ln() + ln_poisson_weight(k, x)).exp(),
        psi as usize + 1,
        DEFAULT_REL_CUTOFF,
    )?;
    Ok(head + tail)
}

/// Communication acceptance probability
/// `κ_c = Γ(ψ, x)/(ψ-1)! + Σ_{n >= ψ} (ψ-1) x^n / ((n-1) n!) e^{-x}`, `x = μ_c L̄`.
pub fn acceptance_comm(psi: u32, mu_c: f64, l: usize, load: DistanceMode) -> Result<f64> {
    check("acceptance_comm", psi, mu_c, l)?;
    let x = mu_c * mean_cluster_load(l, load)?;
    if x == 0.0 {
        return Ok(1.0);
    }
    let psi_f = f64::from(psi);
    let head = regularized_upper_gamma(psi_f, x)?;
    if psi == 1 {
        // No free slot besides the base station's own user.
        return Ok(head);
    }
    let tail = sum_series(
        |k| ((psi_f - 1.0).ln() - (k as f64 - 1.0).ln() + ln_poisson_weight(k, x)).exp(),
        psi as usize,
        DEFAULT_REL_CUTOFF,
    )?;
    Ok(head + tail)
}

/// Simulates one base station's load and reports whether a tagged request
/// is accepted.
pub fn sample_request_accepted<R: Rng + ?Sized>(
    psi: u32,
    mean_requests: f64,
    kind: RequestKind,
    rng: &mut R,
) -> bool {
    let n = if mean_requests > 0.0 {
        Poisson::new(mean_requests).map(|p| p.sample(rng) as usize).unwrap_or(0)
    } else {
        0
    };
    let psi = psi as usize;
    if n <= psi {
        return true;
    }
    match kind {
        // Request 0 is the tagged one; ψ of the n are kept.
        RequestKind::Sensing => index::sample(rng, n, psi).iter().any(|i| i == 0),
        // Own user always kept; ψ - 1 of the other n - 1 requests are kept.
        RequestKind::Communication => {
            psi > 1 && index::sample(rng, n - 1, psi - 1).iter().any(|i| i == 0)
        }
    }
}

/// Monte Carlo estimate of the acceptance probability under the load model.
///
/// Each draw counts the requests of a density-`μ λ_b` PPP falling in the
/// mean association area `n̄ / λ_b` and applies the random-subset rule.
pub fn acceptance_load_mc(
    psi: u32,
    mu: f64,
    cluster: usize,
    kind: RequestKind,
    n_draws: usize,
    seed: u64,
    exec: Execution,
) -> Result<EstimateWithCI> {
    check("acceptance_load_mc", psi, mu, cluster)?;
    if n_draws < 1 {
        return Err(domain("acceptance_load_mc", "need at least one draw"));
    }
    let mean = mu * mean_cluster_load(cluster, DistanceMode::Exact)?;
    let samples = exec.map_seeded(n_draws, seed, |rng| {
        if sample_request_accepted(psi, mean, kind, rng) {
            1.0
        } else {
            0.0
        }
    });
    Ok(EstimateWithCI::from_samples(&samples))
}
