//! Closed-form Laplace transforms of cooperative signal and interference.
//!
//! Distances are normalized by the serving distance `r = d_1`, so a base
//! station at distance `x` contributes `g (x/r)^{-α}` to the normalized
//! signal or interference. With `η = r / r_L` the cluster occupies the
//! annulus `u ∈ (1, 1/η)` and out-of-cluster base stations `u > 1/η`.

use crate::error::{domain, Result};
use crate::numerics::{incomplete_beta_cf, integrate_semi_infinite, QuadratureSpec};
use crate::params::SystemParams;
use std::f64::consts::PI;

fn check_common(op: &'static str, x: f64, alpha: f64, eta: f64) -> Result<()> {
    if !(x >= 0.0) {
        return Err(domain(op, format!("x must be >= 0, got {x}")));
    }
    if !(alpha > 2.0) || !alpha.is_finite() {
        return Err(domain(op, format!("alpha must exceed 2, got {alpha}")));
    }
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(domain(op, format!("eta must lie in (0, 1], got {eta}")));
    }
    Ok(())
}

/// `1 - (1 + y)^{-k}` without cancellation for small `y`.
fn one_minus_pow(y: f64, k: f64) -> f64 {
    -(-k * y.ln_1p()).exp_m1()
}

/// `H₁(x, K, α, η) = 2 ∫_1^{1/η} (1 - (1 + x u^{-α})^{-K}) u du`, evaluated
/// through its incomplete-Beta closed form:
///
/// `η^{-2}(1 - (1+xη^α)^{-K}) + (1+x)^{-K} - 1
///  + K x^{2/α} [B(x/(x+1); 1-2/α, K+2/α) - B(xη^α/(xη^α+1); 1-2/α, K+2/α)]`.
pub fn h1(x: f64, k: f64, alpha: f64, eta: f64) -> Result<f64> {
    check_common("h1", x, alpha, eta)?;
    if !(k >= 1.0) || !k.is_finite() {
        return Err(domain("h1", format!("shape K must be >= 1, got {k}")));
    }
    if x == 0.0 || eta == 1.0 {
        return Ok(0.0);
    }
    let d = 2.0 / alpha;
    let xe = x * eta.powf(alpha);
    let edge = one_minus_pow(xe, k) / (eta * eta) - one_minus_pow(x, k);
    let b = 1.0 - d;
    let c = k + d;
    let beta =
        incomplete_beta_cf(x / (x + 1.0), b, c)? - incomplete_beta_cf(xe / (xe + 1.0), b, c)?;
    Ok((edge + k * x.powf(d) * beta).max(0.0))
}

/// `H₂(x, α, η) = 2 ∫_{1/η}^∞ (1 - (1 + x u^{-α})^{-1}) u du
///  = x^{2/α} B(x/(x+η^{-α}); 1-2/α, 1+2/α) + η^{-2}((1+xη^α)^{-1} - 1)`.
pub fn h2(x: f64, alpha: f64, eta: f64) -> Result<f64> {
    check_common("h2", x, alpha, eta)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let d = 2.0 / alpha;
    let xe = x * eta.powf(alpha);
    let beta = incomplete_beta_cf(xe / (xe + 1.0), 1.0 - d, 1.0 + d)?;
    Ok((x.powf(d) * beta - one_minus_pow(xe, 1.0) / (eta * eta)).max(0.0))
}

/// First-order coefficients `H₁ ≈ K x c₁(η)` and `H₂ ≈ x c₂(η)` at `x → 0`.
pub(crate) fn small_x_slopes(alpha: f64, eta: f64) -> (f64, f64) {
    let e = eta.powf(alpha - 2.0);
    let s = 2.0 / (alpha - 2.0);
    (s * (1.0 - e), s * e)
}

fn check_r(op: &'static str, z: f64, r: f64, kappa_c: f64) -> Result<()> {
    if !(z >= 0.0) || !(r > 0.0) || !r.is_finite() {
        return Err(domain(op, format!("need z >= 0 and r > 0, got z={z}, r={r}")));
    }
    if !(0.0..=1.0).contains(&kappa_c) {
        return Err(domain(op, format!("kappa_c must lie in [0, 1], got {kappa_c}")));
    }
    Ok(())
}

/// `E[e^{-zU}] = exp(-π κ_c λ_b r² H₁(z p_c, M_t - 1, α, η))`: accepted
/// cooperators inside the cluster.
pub fn laplace_u(z: f64, r: f64, eta: f64, kappa_c: f64, params: &SystemParams) -> Result<f64> {
    check_r("laplace_u", z, r, kappa_c)?;
    let h = h1(z * params.p_c, params.g_t(), params.alpha, eta)?;
    Ok((-PI * kappa_c * params.lambda_b * r * r * h).exp())
}

/// `E[e^{-zI₁}] = exp(-π (1 - κ_c) λ_b r² H₁(z, 1, α, η))`: cluster members
/// that declined the request and interfere.
pub fn laplace_i1(z: f64, r: f64, eta: f64, kappa_c: f64, params: &SystemParams) -> Result<f64> {
    check_r("laplace_i1", z, r, kappa_c)?;
    let h = h1(z, 1.0, params.alpha, eta)?;
    Ok((-PI * (1.0 - kappa_c) * params.lambda_b * r * r * h).exp())
}

/// `E[e^{-zI₂}] = exp(-π λ_b r² H₂(z, α, η))`: base stations beyond the cluster.
pub fn laplace_i2(z: f64, r: f64, eta: f64, params: &SystemParams) -> Result<f64> {
    check_r("laplace_i2", z, r, 0.0)?;
    let h = h2(z, params.alpha, eta)?;
    Ok((-PI * params.lambda_b * r * r * h).exp())
}

/// Below this `z` the `(1 - L_X(z)) / z` factor is frozen at its value here.
const HAMDI_Z_SMALL: f64 = 1e-9;

/// `E[ln(1 + X/Y)] = ∫_0^∞ (1 - L_X(z)) L_Y(z) / z dz` for independent
/// nonnegative `X`, `Y` with Laplace transforms `L_X`, `L_Y`.
pub fn hamdi_log_moment<FX, FY>(laplace_x: FX, laplace_y: FY, spec: &QuadratureSpec) -> Result<f64>
where
    FX: Fn(f64) -> f64,
    FY: Fn(f64) -> f64,
{
    let slope_near_zero = (1.0 - laplace_x(HAMDI_Z_SMALL)) / HAMDI_Z_SMALL;
    integrate_semi_infinite(
        |z| {
            let lead = if z < HAMDI_Z_SMALL {
                slope_near_zero
            } else {
                (1.0 - laplace_x(z)) / z
            };
            lead * laplace_y(z)
        },
        spec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate;
    use approx::assert_relative_eq;

    fn h1_quad(x: f64, k: f64, alpha: f64, eta: f64) -> f64 {
        let spec = QuadratureSpec { rel_tol: 1e-12, abs_tol: 1e-15, ..Default::default() };
        2.0 * integrate(|u| one_minus_pow(x * u.powf(-alpha), k) * u, 1.0, 1.0 / eta, &spec).unwrap()
    }

    #[test]
    fn h1_zero_argument_and_collapsed_annulus() {
        assert_eq!(h1(0.0, 3.0, 4.0, 0.5).unwrap(), 0.0);
        assert_eq!(h1(2.0, 3.0, 4.0, 1.0).unwrap(), 0.0);
        // The closed form itself also vanishes at η = 1.
        assert!(h1(2.0, 3.0, 4.0, 1.0 - 1e-12).unwrap() < 1e-9);
    }

    #[test]
    fn h1_matches_defining_integral() {
        assert_relative_eq!(h1(1.0, 1.0, 4.0, 0.5).unwrap(), h1_quad(1.0, 1.0, 4.0, 0.5), max_relative = 1e-9);
        assert_relative_eq!(h1(0.3, 3.0, 3.5, 0.2).unwrap(), h1_quad(0.3, 3.0, 3.5, 0.2), max_relative = 1e-9);
    }

    #[test]
    fn h2_growth_exponent() {
        // H₂ ~ x^{2/α} for large x.
        let a = h2(1e8, 4.0, 1.0).unwrap();
        let b = h2(1e10, 4.0, 1.0).unwrap();
        assert_relative_eq!(b / a, 10.0, max_relative = 1e-3);
    }

    #[test]
    fn small_argument_slopes() {
        let (c1, c2) = small_x_slopes(4.0, 0.4);
        let x = 1e-7;
        assert_relative_eq!(h1(x, 3.0, 4.0, 0.4).unwrap() / x, 3.0 * c1, max_relative = 1e-5);
        assert_relative_eq!(h2(x, 4.0, 0.4).unwrap() / x, c2, max_relative = 1e-5);
    }

    #[test]
    fn domain_errors() {
        assert!(h1(1.0, 0.5, 4.0, 0.5).is_err());
        assert!(h1(1.0, 1.0, 2.0, 0.5).is_err());
        assert!(h2(-1.0, 4.0, 0.5).is_err());
        assert!(h2(1.0, 4.0, 0.0).is_err());
        let p = SystemParams::default();
        assert!(laplace_u(1.0, 0.5, 0.5, 1.5, &p).is_err());
        assert!(laplace_i2(1.0, 0.0, 0.5, &p).is_err());
    }

    #[test]
    fn transforms_at_zero_and_limits() {
        let p = SystemParams::default();
        assert_eq!(laplace_u(0.0, 0.5, 0.5, 0.7, &p).unwrap(), 1.0);
        assert_eq!(laplace_i1(0.0, 0.5, 0.5, 0.7, &p).unwrap(), 1.0);
        assert_eq!(laplace_i2(0.0, 0.5, 0.5, &p).unwrap(), 1.0);
        assert_eq!(laplace_u(3.0, 0.5, 0.5, 0.0, &p).unwrap(), 1.0);
        assert_eq!(laplace_i1(3.0, 0.5, 0.5, 1.0, &p).unwrap(), 1.0);
        assert!(laplace_i2(3.0, 0.5, 1e-4, &p).unwrap() > 1.0 - 1e-6);
        assert!(laplace_i2(3.0, 0.5, 1e-7, &p).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn hamdi_exponential_over_constant() {
        // E[ln(1 + X)], X ~ Exp(1), equals e·E₁(1).
        let v = hamdi_log_moment(|z| 1.0 / (1.0 + z), |z| (-z).exp(), &QuadratureSpec::default()).unwrap();
        assert_relative_eq!(v, 0.596_347_362_323_194_1, max_relative = 1e-8);
        let zero = hamdi_log_moment(|_| 1.0, |z| (-z).exp(), &QuadratureSpec::default()).unwrap();
        assert_eq!(zero, 0.0);
    }
}
