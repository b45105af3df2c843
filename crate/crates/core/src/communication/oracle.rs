//! Conditioned Monte Carlo estimates of the Laplace transforms.
//!
//! The serving distance `r` and the ratio `η` are held fixed. Base stations
//! in the cluster annulus `(r, r/η)` and beyond it are drawn as independent
//! PPPs of density `λ_b`, which is the model behind the closed forms.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, Poisson};

use crate::error::{domain, Result};
use crate::exec::{EstimateWithCI, Execution};
use crate::geometry::interference_tail_bound;
use crate::params::SystemParams;

/// Which Laplace transform a conditioned draw targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShotNoise {
    /// Accepted cooperators, `Γ(M_t - 1, p_c)` gains, thinned by `κ_c`.
    Cooperative,
    /// Declined cluster members, `Γ(1, 1)` gains, thinned by `1 - κ_c`.
    Declined,
    /// Base stations beyond `r/η`, `Γ(1, 1)` gains.
    Exterior,
}

/// Settings shared by the conditioned oracles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionedDraw {
    pub r: f64,
    pub eta: f64,
    pub kappa_c: f64,
    /// Expected number of exterior points inside the simulation disc.
    pub exterior_points: f64,
}

fn annulus_points<R: Rng + ?Sized>(mean: f64, inner: f64, outer: f64, rng: &mut R) -> Vec<f64> {
    let n = if mean > 0.0 {
        Poisson::new(mean).map(|p| p.sample(rng) as usize).unwrap_or(0)
    } else {
        0
    };
    let (a, b) = (inner * inner, outer * outer);
    (0..n).map(|_| (a + rng.random::<f64>() * (b - a)).sqrt()).collect()
}

/// Estimates of `E[e^{-z X}]` for each `z`, with `X` the normalized shot
/// noise selected by `kind`. Every `z` shares the same draws.
pub fn laplace_monte_carlo(
    kind: ShotNoise,
    zs: &[f64],
    cond: ConditionedDraw,
    params: &SystemParams,
    n_draws: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<EstimateWithCI>> {
    params.validate()?;
    let ConditionedDraw { r, eta, kappa_c, exterior_points } = cond;
    if !(r > 0.0) || !(eta > 0.0 && eta <= 1.0) || !(0.0..=1.0).contains(&kappa_c) || n_draws < 1 {
        return Err(domain("laplace_monte_carlo", "need r > 0, eta in (0, 1], kappa_c in [0, 1], n_draws >= 1"));
    }
    let lambda = params.lambda_b;
    let alpha = params.alpha;
    let r_l = r / eta;
    let desired = Gamma::new(params.g_t(), params.p_c.max(f64::MIN_POSITIVE))
        .map_err(|e| domain("laplace_monte_carlo", e.to_string()))?;

    let (inner, outer, density) = match kind {
        ShotNoise::Cooperative => (r, r_l, lambda * kappa_c),
        ShotNoise::Declined => (r, r_l, lambda * (1.0 - kappa_c)),
        ShotNoise::Exterior => {
            let outer = (exterior_points / (lambda * PI) + r_l * r_l).sqrt();
            (r_l, outer, lambda)
        }
    };
    let mean = density * PI * (outer * outer - inner * inner);
    let tail = match kind {
        ShotNoise::Exterior => interference_tail_bound(lambda, outer, alpha) * r.powf(alpha),
        _ => 0.0,
    };

    let per_draw = exec.map_seeded(n_draws, seed, |rng| {
        let pts = annulus_points(mean, inner, outer, rng);
        let x: f64 = pts
            .iter()
            .map(|d| {
                let g: f64 = match kind {
                    ShotNoise::Cooperative => {
                        if params.p_c > 0.0 {
                            desired.sample(rng)
                        } else {
                            0.0
                        }
                    }
                    _ => rng.sample(Exp1),
                };
                g * (d / r).powf(-alpha)
            })
            .sum();
        // First-order PGFL factor of the exterior beyond the disc.
        zs.iter().map(|z| (-z * (x + tail)).exp()).collect::<Vec<f64>>()
    });
    Ok((0..zs.len())
        .map(|k| {
            let col: Vec<f64> = per_draw.iter().map(|v| v[k]).collect();
            EstimateWithCI::from_samples(&col)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::communication::{laplace_i1, laplace_i2, laplace_u};

    #[test]
    fn transforms_match_conditioned_draws() {
        let p = SystemParams::default();
        let cond = ConditionedDraw { r: 0.5, eta: 0.5, kappa_c: 0.6, exterior_points: 300.0 };
        let zs = [1.0];
        let seq = Execution::Sequential;
        let u = laplace_monte_carlo(ShotNoise::Cooperative, &zs, cond, &p, 20_000, 1, seq).unwrap();
        let i1 = laplace_monte_carlo(ShotNoise::Declined, &zs, cond, &p, 20_000, 2, seq).unwrap();
        let i2 = laplace_monte_carlo(ShotNoise::Exterior, &zs, cond, &p, 20_000, 3, seq).unwrap();
        assert!(u[0].within_std_errors(laplace_u(1.0, 0.5, 0.5, 0.6, &p).unwrap(), 4.0), "{u:?}");
        assert!(i1[0].within_std_errors(laplace_i1(1.0, 0.5, 0.5, 0.6, &p).unwrap(), 4.0), "{i1:?}");
        assert!(i2[0].within_std_errors(laplace_i2(1.0, 0.5, 0.5, &p).unwrap(), 4.0), "{i2:?}");
    }
}
