//! Oracle suite: every closed form against an independent computation.

use isac_core::communication::{
    h1, h2, kappa_c_for, laplace_i1, laplace_i2, laplace_monte_carlo, laplace_u, rate_analytical,
    rate_monte_carlo, ConditionedDraw, ShotNoise,
};
use isac_core::exec::{realization_rng, Execution};
use isac_core::geometry::{sample_ppp, DistanceMode};
use isac_core::load::{acceptance_comm, acceptance_load_mc, acceptance_sensing, RequestKind};
use isac_core::numerics::{integrate, integrate_semi_infinite, QuadratureSpec};
use isac_core::sensing::{crlb_from_fim, crlb_monte_carlo, crlb_pair_expansion, crlb_prop1, fim};
use isac_core::{SensingGain, SystemParams};
use serde_json::json;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::experiments::Report;
use crate::output::{col, Table};

const EXEC: Execution = Execution::Parallel;
const EXACT: DistanceMode = DistanceMode::Exact;

struct Checks {
    table: Table,
    failed: usize,
}

impl Checks {
    fn new() -> Self {
        Self {
            table: Table::new(vec![
                col("check", "what is compared"),
                col("case", "grid point"),
                col("value", "closed form or fast path"),
                col("reference", "oracle"),
                col("error", "discrepancy in the unit of the tolerance"),
                col("tolerance", "largest accepted error"),
                col("pass", "error <= tolerance"),
            ]),
            failed: 0,
        }
    }

    fn add(&mut self, check: &str, case: String, value: f64, reference: f64, error: f64, tolerance: f64) {
        let pass = error <= tolerance;
        if !pass {
            self.failed += 1;
        }
        self.table.push(vec![
            check.into(),
            case.into(),
            value.into(),
            reference.into(),
            error.into(),
            tolerance.into(),
            pass.into(),
        ]);
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn tight() -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: 1e-12,
        abs_tol: 1e-14,
        max_subdivisions: 2000,
    }
}

/// `2 ∫_1^{1/η} (1 - (1 + x u^{-α})^{-K}) u du` by direct quadrature.
fn h1_quadrature(x: f64, k: f64, alpha: f64, eta: f64) -> Result<f64> {
    if eta == 1.0 {
        return Ok(0.0);
    }
    let f = |u: f64| (1.0 - (1.0 + x * u.powf(-alpha)).powf(-k)) * u;
    Ok(2.0 * integrate(f, 1.0, 1.0 / eta, &tight())?)
}

/// `2 ∫_{1/η}^∞ (1 - (1 + x u^{-α})^{-1}) u du` by direct quadrature.
fn h2_quadrature(x: f64, alpha: f64, eta: f64) -> Result<f64> {
    let lo = 1.0 / eta;
    let f = |v: f64| {
        let u = lo + v;
        let s = x * u.powf(-alpha);
        s / (1.0 + s) * u
    };
    Ok(2.0 * integrate_semi_infinite(f, &tight())?)
}

pub fn run(config: &ExperimentConfig) -> Result<Report> {
    let p = &config.params;
    let g = &config.grids.validate;
    let nr = config.n_realizations;
    let seed = config.seed;
    let mut c = Checks::new();

    // Closed-form CRLB against simulated deployments.
    let gain = SensingGain::from_params(p)?;
    for &n in &g.n {
        let prop1 = crlb_prop1(p, &gain, n, config.options.prop1_sum, EXACT)?;
        let mc = crlb_monte_carlo(p, &gain, n, nr, seed, EXEC)?;
        let tol = if n >= 5 { 0.15 } else { 0.35 };
        c.add("crlb_prop1_vs_monte_carlo", format!("N={n}"), prop1, mc.estimate.mean, rel(prop1, mc.estimate.mean), tol);
    }

    // Pairwise expansion against the matrix inverse, 200 deployments per N.
    let unit = SensingGain::normalized(1.0)?;
    for n in 2..=6usize {
        let errs = EXEC.map(200, |k| -> Result<f64> {
            let r = sample_ppp(p.lambda_b, n, &mut realization_rng(seed, (n * 200 + k) as u64))?;
            let inv = crlb_from_fim(&fim(&r, n, &unit, p.beta)?);
            let sum = crlb_pair_expansion(&r, n, &unit, p.beta)?;
            Ok(rel(inv, sum))
        });
        let worst = errs.into_iter().collect::<Result<Vec<f64>>>()?.into_iter().fold(0.0, f64::max);
        c.add("crlb_pair_expansion_vs_inverse", format!("N={n}, 200 deployments"), worst, 0.0, worst, 1e-9);
    }

    // H functions against their defining integrals.
    for x in [0.01, 0.3, 1.0, 5.0, 40.0] {
        for alpha in [2.5, 4.0] {
            for eta in [0.1, 0.3, 0.5, 0.9, 1.0] {
                for k in [1.0, 3.0] {
                    let closed = h1(x, k, alpha, eta)?;
                    let quad = h1_quadrature(x, k, alpha, eta)?;
                    let err = (closed - quad).abs() / quad.max(1.0);
                    c.add("h1_vs_quadrature", format!("x={x}, K={k}, alpha={alpha}, eta={eta}"), closed, quad, err, 1e-6);
                }
                let closed = h2(x, alpha, eta)?;
                let quad = h2_quadrature(x, alpha, eta)?;
                let err = (closed - quad).abs() / quad.max(1.0);
                c.add("h2_vs_quadrature", format!("x={x}, alpha={alpha}, eta={eta}"), closed, quad, err, 1e-6);
            }
        }
    }

    // Laplace transforms against conditioned shot-noise draws.
    let r = 0.5;
    let kappa = 0.8;
    for (i, &eta) in g.eta.iter().enumerate() {
        let cond = ConditionedDraw {
            r,
            eta,
            kappa_c: kappa,
            exterior_points: 2000.0,
        };
        let s = seed.wrapping_add(1000 + 10 * i as u64);
        let u = laplace_monte_carlo(ShotNoise::Cooperative, &g.z, cond, p, nr, s, EXEC)?;
        let i1 = laplace_monte_carlo(ShotNoise::Declined, &g.z, cond, p, nr, s + 1, EXEC)?;
        let i2 = laplace_monte_carlo(ShotNoise::Exterior, &g.z, cond, p, nr, s + 2, EXEC)?;
        for (k, &z) in g.z.iter().enumerate() {
            let cases = [
                ("laplace_u_vs_monte_carlo", laplace_u(z, r, eta, kappa, p)?, &u[k]),
                ("laplace_i1_vs_monte_carlo", laplace_i1(z, r, eta, kappa, p)?, &i1[k]),
                ("laplace_i2_vs_monte_carlo", laplace_i2(z, r, eta, p)?, &i2[k]),
            ];
            for (name, closed, est) in cases {
                // Standard errors; a zero-variance estimate must match exactly.
                let se = est.std_error();
                let err = if se > 0.0 {
                    (closed - est.mean).abs() / se
                } else if closed == est.mean {
                    0.0
                } else {
                    f64::INFINITY
                };
                c.add(name, format!("r={r}, eta={eta}, z={z}, kappa_c={kappa}"), closed, est.mean, err, 3.0);
            }
        }
    }

    // Acceptance probabilities against the load simulation.
    let a = &config.grids.acceptance;
    let form = config.options.acceptance_form;
    for &psi in &a.psi {
        for &mu in &a.mu {
            for &k in &a.cluster {
                let case = format!("psi={psi}, mu={mu}, k={k}");
                let ks = acceptance_sensing(psi, mu, k, form, EXACT)?;
                let mc = acceptance_load_mc(psi, mu, k, RequestKind::Sensing, nr, seed, EXEC)?;
                c.add("kappa_s_vs_load_monte_carlo", case.clone(), ks, mc.mean, (ks - mc.mean).abs(), 0.02);
                let kc = acceptance_comm(psi, mu, k, EXACT)?;
                let mc = acceptance_load_mc(psi, mu, k, RequestKind::Communication, nr, seed, EXEC)?;
                c.add("kappa_c_vs_load_monte_carlo", case, kc, mc.mean, (kc - mc.mean).abs(), 0.02);
            }
        }
    }

    // Average rate against simulated deployments.
    let opts = &config.options;
    for &l in &g.l {
        let kappa_c = kappa_c_for(p, l)?;
        for &p_c in &g.p_c {
            let q = SystemParams { p_c, ..p.clone() };
            let a = rate_analytical(&q, l, Some(kappa_c), &opts.quadrature)?;
            let mc = rate_monte_carlo(&q, l, Some(kappa_c), nr, seed, EXEC, opts.rate_window)?;
            let err = if a.rate == mc.rate { 0.0 } else { rel(a.rate, mc.rate) };
            c.add("rate_analytical_vs_monte_carlo", format!("L={l}, p_c={p_c}"), a.rate, mc.rate, err, 0.05);
        }
    }

    let total = c.table.rows.len();
    c.table.summary.insert("checks".into(), json!(total));
    c.table.summary.insert("failed".into(), json!(c.failed));
    Ok(Report {
        table: c.table,
        failed_checks: c.failed,
    })
}
