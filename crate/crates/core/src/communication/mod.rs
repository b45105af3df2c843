//! Rate of a typical user served by non-coherent joint transmission from
//! its `L` nearest base stations.
//!
//! Each base station accepts a cooperation request with probability `κ_c`.
//! Accepted cooperators add to the desired signal, decliners keep serving
//! their own users and interfere. Desired gains follow `Γ(M_t - 1, p_c)`
//! under zero forcing and interfering gains are taken as `Γ(1, 1)`.

mod laplace;
mod oracle;
mod rate;

pub use crate::load::acceptance_comm;
pub use laplace::{h1, h2, hamdi_log_moment, laplace_i1, laplace_i2, laplace_u};
pub use oracle::{laplace_monte_carlo, ConditionedDraw, ShotNoise};
pub use rate::{
    kappa_c_for, rate_analytical, rate_integrand, rate_monte_carlo, RateMethod, RateResult, RateUnit, RateWindow,
};
