use std::collections::HashMap;

use isac_core::exec::Execution;
use isac_core::numerics::QuadratureSpec;
use isac_core::tradeoff::{
    evaluate_with_rates, rate_table, time_sharing_baseline, Frontier, TimeSharingModel, TradeoffOptions,
};
use isac_core::SystemParams;

const N_GRID: [usize; 6] = [2, 3, 4, 6, 8, 10];
const L_GRID: [usize; 3] = [1, 2, 3];
const PC_GRID: [f64; 3] = [0.3, 0.6, 0.9];

fn rates(params: &SystemParams) -> HashMap<(usize, u64), f64> {
    rate_table(params, &L_GRID, &PC_GRID, &QuadratureSpec::default(), Execution::Parallel).unwrap()
}

fn frontier(params: &SystemParams, rates: &HashMap<(usize, u64), f64>) -> Frontier {
    evaluate_with_rates(params, &N_GRID, &L_GRID, &PC_GRID, &TradeoffOptions::default(), rates).unwrap()
}

#[test]
fn backhaul_budget_shapes_the_frontier() {
    let base = SystemParams::default();
    let table = rates(&base);

    // Unlimited backhaul: the frontier contains both per-axis optima.
    let open = frontier(&SystemParams { c_backhaul: 1e9, ..base.clone() }, &table);
    let best_rate = open.all.iter().map(|p| p.rate).fold(f64::MIN, f64::max);
    let best_crlb = open.all.iter().map(|p| p.crlb_a).fold(f64::MAX, f64::min);
    assert_eq!(open.corner_comm.unwrap().rate, best_rate);
    assert_eq!(open.corner_sense.unwrap().crlb_a, best_crlb);
    assert!(open.all.iter().all(|p| p.feasible));

    // Expensive sensing traffic leaves only the smallest sensing cluster.
    let tight = frontier(&SystemParams { e_sense: 1e3, c_backhaul: 2005.0, ..base.clone() }, &table);
    assert!(tight.all.iter().filter(|p| p.feasible).all(|p| p.n == 2));
    assert!(!tight.points.is_empty());

    // Larger budgets keep every previously feasible point and never lose ground.
    let mut prev: Option<Frontier> = None;
    for c in [4.0, 6.0, 8.0] {
        let f = frontier(&SystemParams { c_backhaul: c, ..base.clone() }, &table);
        for a in &f.points {
            assert!(f.points.iter().all(|b| !b.dominates(a)));
        }
        if let Some(p) = prev {
            for (old, new) in p.all.iter().zip(&f.all) {
                assert!(!old.feasible || new.feasible);
            }
            for a in &p.points {
                assert!(f.points.iter().any(|b| b.weakly_dominates(a.rate, a.crlb_a)));
            }
        }
        prev = Some(f);
    }
}

#[test]
fn cooperative_frontier_beats_time_sharing() {
    let params = SystemParams::default();
    let f = frontier(&params, &rates(&params));
    let (comm, sense) = (f.corner_comm.unwrap(), f.corner_sense.unwrap());
    let taus: Vec<f64> = (1..20).map(|i| f64::from(i) / 20.0).collect();
    for b in time_sharing_baseline(&comm, &sense, &taus, TimeSharingModel::Inverse).unwrap() {
        assert!(f.points.iter().any(|p| p.weakly_dominates(b.rate, b.crlb)), "{b:?}");
    }
}
