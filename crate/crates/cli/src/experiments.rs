//! One runner per subcommand. Each returns a [`Table`] whose rows depend
//! only on the resolved config.

use isac_core::communication::{acceptance_comm, rate_analytical, rate_monte_carlo, RateUnit};
use isac_core::exec::Execution;
use isac_core::geometry::DistanceMode;
use isac_core::load::{acceptance_load_mc, RequestKind};
use isac_core::sensing::{
    acceptance_sensing, crlb_asymptote, crlb_eq13, crlb_monte_carlo, crlb_prop1, crlb_with_acceptance,
};
use isac_core::tradeoff::{enumerate_frontier, time_sharing_baseline, TradeoffOptions, TradeoffPoint};
use isac_core::{Error as ModelError, SensingGain, SystemParams};
use serde_json::{json, Value};

use crate::config::{Experiment, ExperimentConfig};
use crate::error::Result;
use crate::output::{col, Table};
use crate::validate;

const EXEC: Execution = Execution::Parallel;
const EXACT: DistanceMode = DistanceMode::Exact;

/// Output of a run. `failed_checks` is nonzero only for `validate`.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub failed_checks: usize,
}

impl From<Table> for Report {
    fn from(table: Table) -> Self {
        Self { table, failed_checks: 0 }
    }
}

pub fn run(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    match config.experiment {
        Experiment::SensingCrlb => sensing_crlb(config).map(Report::from),
        Experiment::Acceptance => acceptance(config).map(Report::from),
        Experiment::CommRate => comm_rate(config).map(Report::from),
        Experiment::Tradeoff => tradeoff(config).map(Report::from),
        Experiment::Validate => validate::run(config),
    }
}

/// `None` where the scaling law does not apply (`β ≠ 2`).
fn unless_unsupported(r: isac_core::Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(ModelError::UnsupportedRegime(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn unit_name(u: RateUnit) -> &'static str {
    match u {
        RateUnit::Nats => "nats/s/Hz",
        RateUnit::Bits => "bits/s/Hz",
    }
}

fn sensing_crlb(config: &ExperimentConfig) -> Result<Table> {
    let p = &config.params;
    let o = &config.options;
    let gain = SensingGain::from_params(p)?;
    let law = crlb_asymptote(p, &gain).ok();
    let mut t = Table::new(vec![
        col("N", "sensing cluster size"),
        col("crlb_mc", "Monte Carlo E[tr(F^-1)] (km^2)"),
        col("ci", "95% half-width of crlb_mc"),
        col("crlb_prop1", "expected-distance approximation (km^2)"),
        col("crlb_eq13", "harmonic-sum form 2/(|zeta|^2 (lambda pi)^beta (sum_k k^(-beta/2))^2)"),
        col("crlb_asymptote", "scaling law 1/(|zeta|^2 lambda^2 pi^2 ln^2 N); empty unless beta = 2"),
        col("kappa_s", "sensing acceptance probability"),
        col("crlb_a", "CRLB with acceptance; empty unless beta = 2"),
    ]);
    for &n in &config.grids.sensing_crlb.n {
        let mc = crlb_monte_carlo(p, &gain, n, config.n_realizations, config.seed, EXEC)?;
        let kappa_s = acceptance_sensing(p.psi, p.mu_s(), n, o.acceptance_form, EXACT)?;
        let crlb_a = unless_unsupported(crlb_with_acceptance(p, &gain, n, o.crlb_variant, o.acceptance_form))?;
        t.push(vec![
            n.into(),
            mc.estimate.mean.into(),
            mc.estimate.half_width_95.into(),
            crlb_prop1(p, &gain, n, o.prop1_sum, EXACT)?.into(),
            crlb_eq13(p, &gain, n as u64)?.into(),
            law.map(|l| l.at(n as u64)).into(),
            kappa_s.into(),
            crlb_a.into(),
        ]);
    }
    t.summary.insert("zeta_sq".into(), json!(gain.zeta_sq));
    if let Some(l) = law {
        t.summary.insert(
            "scaling_constants".into(),
            json!({ "theorem": l.theorem_constant, "harmonic_sum": l.harmonic_constant }),
        );
    }
    Ok(t)
}

fn acceptance(config: &ExperimentConfig) -> Result<Table> {
    let g = &config.grids.acceptance;
    let form = config.options.acceptance_form;
    let mut t = Table::new(vec![
        col("psi", "resource blocks per base station"),
        col("mu", "density ratio lambda_s/lambda_b (sensing) and lambda_u/lambda_b (communication)"),
        col("k", "cluster size (N for sensing, L for communication)"),
        col("kappa_s", "sensing acceptance probability"),
        col("kappa_s_mc", "load-model Monte Carlo estimate of kappa_s"),
        col("kappa_s_ci", "95% half-width of kappa_s_mc"),
        col("kappa_c", "communication acceptance probability"),
        col("kappa_c_mc", "load-model Monte Carlo estimate of kappa_c"),
        col("kappa_c_ci", "95% half-width of kappa_c_mc"),
    ]);
    let nr = config.n_realizations;
    for &psi in &g.psi {
        for &mu in &g.mu {
            for &k in &g.cluster {
                let ks = acceptance_sensing(psi, mu, k, form, EXACT)?;
                let ks_mc = acceptance_load_mc(psi, mu, k, RequestKind::Sensing, nr, config.seed, EXEC)?;
                let kc = acceptance_comm(psi, mu, k, EXACT)?;
                let kc_mc = acceptance_load_mc(psi, mu, k, RequestKind::Communication, nr, config.seed, EXEC)?;
                t.push(vec![
                    psi.into(),
                    mu.into(),
                    k.into(),
                    ks.into(),
                    ks_mc.mean.into(),
                    ks_mc.half_width_95.into(),
                    kc.into(),
                    kc_mc.mean.into(),
                    kc_mc.half_width_95.into(),
                ]);
            }
        }
    }
    Ok(t)
}

fn grid_jobs(l: &[usize], p_c: &[f64]) -> Vec<(usize, f64)> {
    l.iter().flat_map(|&l| p_c.iter().map(move |&p| (l, p))).collect()
}

fn comm_rate(config: &ExperimentConfig) -> Result<Table> {
    let g = &config.grids.comm_rate;
    let o = &config.options;
    let units = unit_name(o.units);
    let mut t = Table::new(vec![
        col("L", "communication cluster size"),
        col("p_c", "communication power share"),
        col("kappa_c", "communication acceptance probability"),
        col("rate_analytical", format!("average rate by numerical integration ({units})")),
        col("rate_mc", format!("Monte Carlo average rate ({units})")),
        col("ci", "95% half-width of rate_mc"),
    ]);
    let jobs = grid_jobs(&g.l, &g.p_c);
    let analytic = EXEC.map(jobs.len(), |i| {
        let (l, p_c) = jobs[i];
        rate_analytical(&SystemParams { p_c, ..config.params.clone() }, l, None, &o.quadrature)
    });
    for (&(l, p_c), a) in jobs.iter().zip(analytic) {
        let a = a?;
        let p = SystemParams { p_c, ..config.params.clone() };
        let mc = rate_monte_carlo(&p, l, Some(a.kappa_c), config.n_realizations, config.seed, EXEC, o.rate_window)?;
        t.push(vec![
            l.into(),
            p_c.into(),
            a.kappa_c.into(),
            a.rate_in(o.units).into(),
            mc.rate_in(o.units).into(),
            mc.half_width_95.map(|h| o.units.from_nats(h)).into(),
        ]);
    }
    t.summary.insert("units".into(), json!(units));
    Ok(t)
}

fn point_json(p: &TradeoffPoint, units: RateUnit) -> Value {
    json!({
        "n": p.n,
        "l": p.l,
        "p_c": p.p_c,
        "rate": units.from_nats(p.rate),
        "crlb_a": p.crlb_a,
        "backhaul_used_nats": p.backhaul_used,
    })
}

fn tradeoff(config: &ExperimentConfig) -> Result<Table> {
    let g = &config.grids.tradeoff;
    let o = &config.options;
    let units = unit_name(o.units);
    let opts = TradeoffOptions {
        crlb_variant: o.crlb_variant,
        acceptance_form: o.acceptance_form,
        quadrature: o.quadrature,
    };
    let f = enumerate_frontier(&config.params, &g.n, &g.l, &g.p_c, &opts, EXEC)?;
    let mut t = Table::new(vec![
        col("n", "sensing cluster size"),
        col("l", "communication cluster size"),
        col("p_c", "communication power share"),
        col("rate", format!("average rate ({units})")),
        col("crlb_a", "CRLB with acceptance at sensing power 1 - p_c (km^2)"),
        col("feasible", "rate + e*n <= C_backhaul, with the rate in nats"),
        col("on_frontier", "feasible and not dominated on (rate, crlb_a)"),
    ]);
    let on_frontier = |p: &TradeoffPoint| f.points.iter().any(|q| q.n == p.n && q.l == p.l && q.p_c == p.p_c);
    for p in &f.all {
        t.push(vec![
            p.n.into(),
            p.l.into(),
            p.p_c.into(),
            o.units.from_nats(p.rate).into(),
            p.crlb_a.into(),
            p.feasible.into(),
            on_frontier(p).into(),
        ]);
    }
    let corner = |c: &Option<TradeoffPoint>| c.as_ref().map_or(Value::Null, |p| point_json(p, o.units));
    t.summary.insert("units".into(), json!(units));
    t.summary.insert("corner_comm".into(), corner(&f.corner_comm));
    t.summary.insert("corner_sense".into(), corner(&f.corner_sense));
    if let (Some(c), Some(s)) = (f.corner_comm, f.corner_sense) {
        let baseline = time_sharing_baseline(&c, &s, &g.tau, o.time_sharing)?;
        let dominated = baseline
            .iter()
            .filter(|b| b.tau > 0.0 && b.tau < 1.0)
            .all(|b| f.points.iter().any(|p| p.weakly_dominates(b.rate, b.crlb)));
        let points: Vec<Value> = baseline
            .iter()
            .map(|b| json!({ "tau": b.tau, "rate": o.units.from_nats(b.rate), "crlb": b.crlb }))
            .collect();
        t.summary.insert("time_sharing".into(), Value::Array(points));
        t.summary.insert("time_sharing_dominated".into(), json!(dominated));
    }
    Ok(t)
}
