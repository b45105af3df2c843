//! Sensing/communication tradeoff under a backhaul budget.
//!
//! A configuration `(N, L, p_c)` is feasible when the user rate plus the
//! sensing traffic of `N` base stations fits the backhaul:
//! `R_c + e N <= C`. The sensing gain shrinks with the communication power
//! share (`|ζ|² ∝ p_s = 1 - p_c`).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::communication::rate_analytical;
use crate::error::{domain, Result};
use crate::exec::Execution;
use crate::load::SensingAcceptanceForm;
use crate::numerics::QuadratureSpec;
use crate::params::{SensingGain, SystemParams};
use crate::sensing::{crlb_with_acceptance, CrlbaVariant};

/// One evaluated configuration. `rate` is in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    pub n: usize,
    pub l: usize,
    pub p_c: f64,
    pub rate: f64,
    pub crlb_a: f64,
    pub backhaul_used: f64,
    pub feasible: bool,
}

impl TradeoffPoint {
    /// At least as good on both axes and strictly better on one.
    pub fn dominates(&self, other: &Self) -> bool {
        self.rate >= other.rate
            && self.crlb_a <= other.crlb_a
            && (self.rate > other.rate || self.crlb_a < other.crlb_a)
    }

    /// At least as good on both axes.
    pub fn weakly_dominates(&self, rate: f64, crlb: f64) -> bool {
        self.rate >= rate && self.crlb_a <= crlb
    }
}

/// How the time-sharing baseline mixes the two corner configurations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TimeSharingModel {
    /// `rate = τ R_comm`, `CRLB = CRLB_sense / (1 - τ)`: the Fisher
    /// information grows linearly with sensing time.
    #[default]
    Inverse,
    /// Straight line between the two corners on both axes.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeSharingPoint {
    pub tau: f64,
    pub rate: f64,
    pub crlb: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frontier {
    /// Nondominated feasible points, by increasing rate.
    pub points: Vec<TradeoffPoint>,
    /// Every evaluated grid point.
    pub all: Vec<TradeoffPoint>,
    /// Highest-rate feasible point.
    pub corner_comm: Option<TradeoffPoint>,
    /// Lowest-CRLB feasible point.
    pub corner_sense: Option<TradeoffPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TradeoffOptions {
    pub crlb_variant: CrlbaVariant,
    pub acceptance_form: SensingAcceptanceForm,
    pub quadrature: QuadratureSpec,
}

fn key(l: usize, p_c: f64) -> (usize, u64) {
    (l, p_c.to_bits())
}

/// Memoized analytical rates over the `(L, p_c)` grid.
pub fn rate_table(
    params: &SystemParams,
    l_grid: &[usize],
    pc_grid: &[f64],
    spec: &QuadratureSpec,
    exec: Execution,
) -> Result<HashMap<(usize, u64), f64>> {
    let jobs: Vec<(usize, f64)> = l_grid
        .iter()
        .flat_map(|&l| pc_grid.iter().map(move |&p| (l, p)))
        .collect();
    let rates = exec.map(jobs.len(), |i| {
        let (l, p_c) = jobs[i];
        let p = SystemParams { p_c, ..params.clone() };
        rate_analytical(&p, l, None, spec).map(|r| r.rate)
    });
    jobs.iter()
        .zip(rates)
        .map(|(&(l, p), r)| r.map(|v| (key(l, p), v)))
        .collect()
}

/// Evaluates every grid point, applies the backhaul budget and extracts
/// the nondominated feasible set.
pub fn enumerate_frontier(
    params: &SystemParams,
    n_grid: &[usize],
    l_grid: &[usize],
    pc_grid: &[f64],
    opts: &TradeoffOptions,
    exec: Execution,
) -> Result<Frontier> {
    let rates = rate_table(params, l_grid, pc_grid, &opts.quadrature, exec)?;
    evaluate_with_rates(params, n_grid, l_grid, pc_grid, opts, &rates)
}

/// As [`enumerate_frontier`] with precomputed rates (keyed by `(L, p_c bits)`).
pub fn evaluate_with_rates(
    params: &SystemParams,
    n_grid: &[usize],
    l_grid: &[usize],
    pc_grid: &[f64],
    opts: &TradeoffOptions,
    rates: &HashMap<(usize, u64), f64>,
) -> Result<Frontier> {
    if n_grid.is_empty() || l_grid.is_empty() || pc_grid.is_empty() {
        return Err(domain("enumerate_frontier", "grids must be nonempty"));
    }
    if n_grid.iter().any(|&n| n < 2) || l_grid.iter().any(|&l| l < 1) {
        return Err(domain("enumerate_frontier", "need N >= 2 and L >= 1"));
    }
    if pc_grid.iter().any(|&p| !(0.0..1.0).contains(&p)) {
        return Err(domain("enumerate_frontier", "p_c must lie in [0, 1) so sensing keeps power"));
    }
    let mut all = Vec::with_capacity(n_grid.len() * l_grid.len() * pc_grid.len());
    for &p_c in pc_grid {
        let p = SystemParams { p_c, ..params.clone() };
        let gain = SensingGain::at_sensing_power(&p, 1.0 - p_c)?;
        for &n in n_grid {
            let crlb_a = crlb_with_acceptance(&p, &gain, n, opts.crlb_variant, opts.acceptance_form)?;
            for &l in l_grid {
                let rate = *rates
                    .get(&key(l, p_c))
                    .ok_or_else(|| domain("enumerate_frontier", format!("no rate for L={l}, p_c={p_c}")))?;
                let backhaul_used = rate + params.e_sense * n as f64;
                all.push(TradeoffPoint {
                    n,
                    l,
                    p_c,
                    rate,
                    crlb_a,
                    backhaul_used,
                    feasible: backhaul_used <= params.c_backhaul,
                });
            }
        }
    }
    let feasible: Vec<TradeoffPoint> = all.iter().copied().filter(|p| p.feasible).collect();
    let mut points: Vec<TradeoffPoint> = feasible
        .iter()
        .filter(|a| !feasible.iter().any(|b| b.dominates(a)))
        .copied()
        .collect();
    points.sort_by(|a, b| a.rate.total_cmp(&b.rate).then(a.crlb_a.total_cmp(&b.crlb_a)));
    // Keep one representative of exact ties.
    points.dedup_by(|a, b| a.rate == b.rate && a.crlb_a == b.crlb_a);

    let corner_comm = points.last().copied();
    let corner_sense = points.first().copied();
    Ok(Frontier {
        points,
        all,
        corner_comm,
        corner_sense,
    })
}

/// Time sharing between the communication-optimal and sensing-optimal
/// corners for each `τ` (fraction of time given to communication).
pub fn time_sharing_baseline(
    corner_comm: &TradeoffPoint,
    corner_sense: &TradeoffPoint,
    tau_grid: &[f64],
    model: TimeSharingModel,
) -> Result<Vec<TimeSharingPoint>> {
    if !corner_comm.feasible || !corner_sense.feasible {
        return Err(domain("time_sharing_baseline", "both corners must be feasible"));
    }
    tau_grid
        .iter()
        .map(|&tau| {
            if !(0.0..=1.0).contains(&tau) {
                return Err(domain("time_sharing_baseline", format!("tau must lie in [0, 1], got {tau}")));
            }
            let (rate, crlb) = match model {
                TimeSharingModel::Inverse => (
                    tau * corner_comm.rate,
                    if tau == 1.0 {
                        f64::INFINITY
                    } else {
                        corner_sense.crlb_a / (1.0 - tau)
                    },
                ),
                TimeSharingModel::Linear => (
                    tau * corner_comm.rate + (1.0 - tau) * corner_sense.rate,
                    tau * corner_comm.crlb_a + (1.0 - tau) * corner_sense.crlb_a,
                ),
            };
            Ok(TimeSharingPoint { tau, rate, crlb })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(rate: f64, crlb_a: f64) -> TradeoffPoint {
        TradeoffPoint { n: 2, l: 1, p_c: 0.5, rate, crlb_a, backhaul_used: 0.0, feasible: true }
    }

    #[test]
    fn domination() {
        assert!(pt(2.0, 1.0).dominates(&pt(1.0, 1.0)));
        assert!(pt(2.0, 0.5).dominates(&pt(1.0, 1.0)));
        assert!(!pt(2.0, 1.0).dominates(&pt(2.0, 1.0)));
        assert!(!pt(2.0, 2.0).dominates(&pt(1.0, 1.0)));
    }

    #[test]
    fn baseline_inverse_model() {
        let c = pt(3.0, 0.2);
        let s = pt(1.0, 0.05);
        let b = time_sharing_baseline(&c, &s, &[0.0, 0.5, 1.0], TimeSharingModel::Inverse).unwrap();
        assert_eq!((b[0].rate, b[0].crlb), (0.0, 0.05));
        assert_eq!((b[1].rate, b[1].crlb), (1.5, 0.1));
        assert_eq!((b[2].rate, b[2].crlb), (3.0, f64::INFINITY));
        let lin = time_sharing_baseline(&c, &s, &[0.5], TimeSharingModel::Linear).unwrap();
        assert_eq!((lin[0].rate, lin[0].crlb), (2.0, 0.125));
        assert!(time_sharing_baseline(&c, &s, &[1.5], TimeSharingModel::Inverse).is_err());
    }

    #[test]
    fn frontier_from_fixed_rates() {
        let params = SystemParams { c_backhaul: 4.0, e_sense: 0.5, ..Default::default() };
        let pcs = [0.3, 0.6];
        let mut rates = HashMap::new();
        rates.insert(key(1, 0.3), 1.0);
        rates.insert(key(1, 0.6), 2.0);
        let f = evaluate_with_rates(&params, &[2, 4, 6], &[1], &pcs, &TradeoffOptions::default(), &rates).unwrap();
        assert_eq!(f.all.len(), 6);
        for p in &f.all {
            assert_eq!(p.feasible, p.rate + 0.5 * p.n as f64 <= 4.0);
        }
        for a in &f.points {
            assert!(a.feasible);
            assert!(f.points.iter().all(|b| !b.dominates(a)));
        }
        assert!(f.points.windows(2).all(|w| w[0].rate <= w[1].rate));
    }

    #[test]
    fn empty_feasible_set_is_not_an_error() {
        let params = SystemParams { c_backhaul: 0.1, ..Default::default() };
        let mut rates = HashMap::new();
        rates.insert(key(1, 0.5), 1.0);
        let f = evaluate_with_rates(&params, &[2], &[1], &[0.5], &TradeoffOptions::default(), &rates).unwrap();
        assert!(f.points.is_empty());
        assert!(f.corner_comm.is_none());
    }
}
