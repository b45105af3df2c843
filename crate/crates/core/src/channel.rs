//! Zero-forcing ISAC precoding and the gain laws it induces.
//!
//! A base station serves one user (channel `h`) and illuminates one target
//! (steering vector `a(θ)`). Stacking `G = [h, a]` (an `M_t × 2` matrix),
//! the zero-forcing precoder `W = G (G^H G)^{-1}` satisfies `G^H W = I₂`,
//! so the communication beam is nulled toward the target and vice versa.
//! Each column is then normalized to unit norm, which keeps the nulls.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Condition number above which `G^H G` is treated as singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Steering vector with entries `e^{jπ(m-1)cos θ}`, `m = 1..M_t`.
pub fn steering_vector(m_t: usize, theta: f64) -> Vec<Complex64> {
    let phase = std::f64::consts::PI * theta.cos();
    (0..m_t)
        .map(|m| Complex64::from_polar(1.0, phase * m as f64))
        .collect()
}

/// `x^H y`.
pub fn inner(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm(x: &[Complex64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Zero-forcing precoder for one base station.
#[derive(Debug, Clone, PartialEq)]
pub struct ZfPrecoder {
    /// Raw zero-forcing columns `[w_c, w_s]` with `G^H W = I₂`.
    pub raw: [Vec<Complex64>; 2],
    /// Unit-norm communication beam.
    pub w_c: Vec<Complex64>,
    /// Unit-norm sensing beam.
    pub w_s: Vec<Complex64>,
    pub steering: Vec<Complex64>,
}

/// Builds `W = G (G^H G)^{-1}` for `G = [h_comm, a(θ)]`.
pub fn zf_precoder(h_comm: &[Complex64], theta: f64) -> Result<ZfPrecoder> {
    let m_t = h_comm.len();
    if m_t < 2 {
        return Err(domain("zf_precoder", "need at least two transmit antennas"));
    }
    let a = steering_vector(m_t, theta);

    // Gram matrix [[h^H h, h^H a], [a^H h, a^H a]] (Hermitian).
    let g11 = inner(h_comm, h_comm).re;
    let g22 = inner(&a, &a).re;
    let g12 = inner(h_comm, &a);
    let det = g11 * g22 - g12.norm_sqr();

    // Eigenvalues of a 2x2 Hermitian matrix.
    let tr = g11 + g22;
    let disc = ((g11 - g22) * (g11 - g22) / 4.0 + g12.norm_sqr()).sqrt();
    let lo = tr / 2.0 - disc;
    let hi = tr / 2.0 + disc;
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) || !(det > 0.0) {
        return Err(Error::DegenerateChannel { condition });
    }

    // (G^H G)^{-1} = (1/det) [[g22, -g12], [-conj(g12), g11]].
    let inv11 = Complex64::new(g22 / det, 0.0);
    let inv12 = -g12 / det;
    let inv21 = -g12.conj() / det;
    let inv22 = Complex64::new(g11 / det, 0.0);

    let w_c: Vec<Complex64> = (0..m_t).map(|m| h_comm[m] * inv11 + a[m] * inv21).collect();
    let w_s: Vec<Complex64> = (0..m_t).map(|m| h_comm[m] * inv12 + a[m] * inv22).collect();
    let nc = norm(&w_c);
    let ns = norm(&w_s);
    Ok(ZfPrecoder {
        w_c: w_c.iter().map(|x| x / nc).collect(),
        w_s: w_s.iter().map(|x| x / ns).collect(),
        raw: [w_c, w_s],
        steering: a,
    })
}

/// `CN(0, I_{M_t})` channel vector.
pub fn sample_channel<R: Rng + ?Sized>(m_t: usize, rng: &mut R) -> Vec<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..m_t)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * s, im * s)
        })
        .collect()
}

/// Gamma laws of the effective channel gains.
///
/// Desired links (serving and cooperating base stations) have gain
/// `Γ(M_t - 1, p_c)`; interfering links are moment matched to `Γ(1, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainModel {
    pub desired_shape: f64,
    pub desired_scale: f64,
    pub interferer_shape: f64,
    pub interferer_scale: f64,
}

impl GainModel {
    pub fn new(m_t: u32, p_c: f64) -> Result<Self> {
        if m_t < 2 {
            return Err(domain("GainModel", "m_t must be >= 2"));
        }
        if !(0.0..=1.0).contains(&p_c) {
            return Err(domain("GainModel", format!("p_c must lie in [0, 1], got {p_c}")));
        }
        Ok(Self {
            desired_shape: f64::from(m_t) - 1.0,
            desired_scale: p_c,
            interferer_shape: 1.0,
            interferer_scale: 1.0,
        })
    }

    /// Laplace transform of the desired gain, `(1 + p_c z)^{1 - M_t}`.
    pub fn desired_laplace(&self, z: f64) -> f64 {
        (1.0 + self.desired_scale * z).powf(-self.desired_shape)
    }

    /// A reusable sampler for the desired gain.
    pub fn desired_sampler(&self) -> DesiredGain {
        DesiredGain(if self.desired_scale > 0.0 {
            Gamma::new(self.desired_shape, self.desired_scale).ok()
        } else {
            None
        })
    }
}

/// Sampler for `Γ(M_t - 1, p_c)`; degenerate at zero when `p_c = 0`.
#[derive(Debug, Clone, Copy)]
pub struct DesiredGain(Option<Gamma<f64>>);

impl DesiredGain {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.0.as_ref().map_or(0.0, |g| g.sample(rng))
    }
}

pub fn sample_desired_gain<R: Rng + ?Sized>(model: &GainModel, rng: &mut R) -> f64 {
    model.desired_sampler().sample(rng)
}

pub fn sample_interferer_gain<R: Rng + ?Sized>(model: &GainModel, rng: &mut R) -> f64 {
    let e: f64 = rng.sample(Exp1);
    e * model.interferer_scale
}

/// Gains realized by one zero-forcing draw.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizedGains {
    /// `p_c |h^H ŵ_c|²` at the served user.
    pub desired: f64,
    /// `p_c |g^H ŵ_c|² + p_s |g^H ŵ_s|²` at an unrelated user with channel `g`.
    pub interferer: f64,
    /// `|a^H(θ) ŵ_s|²`, the transmit beamforming gain toward the target.
    pub sensing: f64,
}

/// Draws a served channel, a foreign user channel and a target bearing,
/// then evaluates the gains of the normalized zero-forcing beams.
pub fn sample_realized_gains<R: Rng + ?Sized>(m_t: usize, p_c: f64, rng: &mut R) -> RealizedGains {
    loop {
        let h = sample_channel(m_t, rng);
        let theta = rng.random::<f64>() * 2.0 * std::f64::consts::PI;
        let Ok(w) = zf_precoder(&h, theta) else {
            continue;
        };
        let other = sample_channel(m_t, rng);
        return RealizedGains {
            desired: p_c * inner(&h, &w.w_c).norm_sqr(),
            interferer: p_c * inner(&other, &w.w_c).norm_sqr()
                + (1.0 - p_c) * inner(&other, &w.w_s).norm_sqr(),
            sensing: inner(&w.steering, &w.w_s).norm_sqr(),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::realization_rng;

    fn check_identity(h: &[Complex64], w: &ZfPrecoder, tol: f64) {
        let a = &w.steering;
        let cols = [&w.raw[0], &w.raw[1]];
        let rows = [h, a.as_slice()];
        for (r, row) in rows.iter().enumerate() {
            for (c, col) in cols.iter().enumerate() {
                let v = inner(row, col);
                let target = if r == c { 1.0 } else { 0.0 };
                assert!((v - target).norm() < tol, "entry ({r},{c}) = {v}");
            }
        }
    }

    #[test]
    fn two_antenna_identity() {
        let h = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
        // cos θ = 0 gives a = [1, 1].
        let w = zf_precoder(&h, std::f64::consts::FRAC_PI_2).unwrap();
        check_identity(&h, &w, 1e-12);
    }

    #[test]
    fn random_channels_null_the_target() {
        let mut rng = realization_rng(5, 0);
        for _ in 0..10_000 {
            let h = sample_channel(4, &mut rng);
            let theta = rng.random::<f64>() * 6.0;
            let w = zf_precoder(&h, theta).unwrap();
            check_identity(&h, &w, 1e-10);
            assert!(inner(&w.steering, &w.w_c).norm_sqr() < 1e-20);
            assert!(inner(&h, &w.w_s).norm_sqr() < 1e-20);
            let n: f64 = w.w_c.iter().map(|x| x.norm_sqr()).sum();
            assert!((n - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn parallel_channel_is_degenerate() {
        let theta = 0.3;
        let h: Vec<Complex64> = steering_vector(4, theta).iter().map(|x| x * 2.0).collect();
        assert!(matches!(zf_precoder(&h, theta), Err(Error::DegenerateChannel { .. })));
    }

    #[test]
    fn zero_power_desired_gain() {
        let m = GainModel::new(4, 0.0).unwrap();
        assert_eq!(sample_desired_gain(&m, &mut realization_rng(1, 1)), 0.0);
        assert_eq!(m.desired_laplace(3.0), 1.0);
    }

    #[test]
    fn desired_laplace_formula() {
        let m = GainModel::new(4, 1.0).unwrap();
        assert!((m.desired_laplace(1.0) - 0.125).abs() < 1e-15);
    }
}
