//! Network and radio parameters.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the sensing normalizer `|ζ|²` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum ZetaSpec {
    /// `|ζ|²` at full sensing power. Sensing experiments use the value as
    /// is; the tradeoff search scales it by the sensing power share `p_s`.
    Normalized { value: f64 },
    /// `|ζ|² = p_s G_t G_r B² σ / (8π f_c² σ_s²)` from the physical constants.
    Physical,
}

impl Default for ZetaSpec {
    fn default() -> Self {
        ZetaSpec::Normalized { value: 1.0 }
    }
}

/// All physical and network constants of the model.
///
/// Densities are per km², distances in km. Defaults reproduce the
/// evaluation setup: `M_t = 4`, `M_r = 5`, unit densities, `α = 4`,
/// `β = 2`, `σ = 1`, `σ_s² = -80 dB`, `ψ = 15`, `C_backhaul = 6`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemParams {
    pub m_t: u32,
    pub m_r: u32,
    pub lambda_b: f64,
    pub lambda_u: f64,
    pub lambda_s: f64,
    /// Communication pathloss exponent.
    pub alpha: f64,
    /// Sensing pathloss exponent.
    pub beta: f64,
    /// Communication share of the transmit power; sensing gets `1 - p_c`.
    pub p_c: f64,
    pub sigma_rcs: f64,
    pub sigma_s_sq: f64,
    pub b_eff: f64,
    pub f_c: f64,
    /// Maximum number of simultaneously served requests per base station.
    pub psi: u32,
    pub c_backhaul: f64,
    /// Backhaul rate consumed per cooperating sensing base station.
    pub e_sense: f64,
    pub zeta: ZetaSpec,
    /// Receive beamforming gain; `None` uses `M_r`.
    pub g_r: Option<f64>,
}

impl Default for SystemParams {
    fn default() -> Self {
        Self {
            m_t: 4,
            m_r: 5,
            lambda_b: 1.0,
            lambda_u: 1.0,
            lambda_s: 1.0,
            alpha: 4.0,
            beta: 2.0,
            p_c: 0.5,
            sigma_rcs: 1.0,
            sigma_s_sq: 1e-8,
            b_eff: 10e6,
            f_c: 3.5e9,
            psi: 15,
            c_backhaul: 6.0,
            e_sense: 0.5,
            zeta: ZetaSpec::default(),
            g_r: None,
        }
    }
}

impl SystemParams {
    pub fn p_s(&self) -> f64 {
        1.0 - self.p_c
    }

    /// `μ_s = λ_s / λ_b`.
    pub fn mu_s(&self) -> f64 {
        self.lambda_s / self.lambda_b
    }

    /// `μ_c = λ_u / λ_b`.
    pub fn mu_c(&self) -> f64 {
        self.lambda_u / self.lambda_b
    }

    /// Expected transmit beamforming gain of a zero-forcing sensing beam.
    pub fn g_t(&self) -> f64 {
        f64::from(self.m_t) - 1.0
    }

    pub fn g_r(&self) -> f64 {
        self.g_r.unwrap_or(f64::from(self.m_r))
    }

    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        if !(self.lambda_b > 0.0 && self.lambda_u > 0.0 && self.lambda_s > 0.0) {
            bad.push("all densities must be > 0".to_string());
        }
        if !(self.alpha > 2.0) {
            bad.push(format!("alpha must be > 2, got {}", self.alpha));
        }
        if !(self.beta >= 2.0) {
            bad.push(format!("beta must be >= 2, got {}", self.beta));
        }
        if !(0.0..=1.0).contains(&self.p_c) {
            bad.push(format!("p_c must lie in [0, 1], got {}", self.p_c));
        }
        if self.m_t < 2 {
            bad.push(format!("m_t must be >= 2, got {}", self.m_t));
        }
        if self.m_r < 1 {
            bad.push("m_r must be >= 1".to_string());
        }
        if self.psi < 1 {
            bad.push("psi must be >= 1".to_string());
        }
        if !(self.sigma_rcs > 0.0 && self.sigma_s_sq > 0.0 && self.b_eff > 0.0 && self.f_c > 0.0) {
            bad.push("sigma_rcs, sigma_s_sq, b_eff and f_c must be > 0".to_string());
        }
        if !(self.e_sense >= 0.0) || self.c_backhaul.is_nan() {
            bad.push("e_sense must be >= 0 and c_backhaul a number".to_string());
        }
        if let ZetaSpec::Normalized { value } = self.zeta {
            if !(value > 0.0) {
                bad.push(format!("normalized |zeta|^2 must be > 0, got {value}"));
            }
        }
        if let Some(g) = self.g_r {
            if !(g > 0.0) {
                bad.push(format!("g_r must be > 0, got {g}"));
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParams(bad.join("; ")))
        }
    }
}

/// Physical constants entering `|ζ|²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GainComponents {
    pub p_s: f64,
    pub g_t: f64,
    pub g_r: f64,
    pub b_eff: f64,
    pub f_c: f64,
    pub sigma_rcs: f64,
    pub sigma_s_sq: f64,
}

impl GainComponents {
    pub fn zeta_sq(&self) -> f64 {
        self.p_s * self.g_t * self.g_r * self.b_eff * self.b_eff * self.sigma_rcs
            / (8.0 * std::f64::consts::PI * self.f_c * self.f_c * self.sigma_s_sq)
    }
}

/// Scale factor `|ζ|²` of the localization Fisher information.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensingGain {
    pub zeta_sq: f64,
    pub components: Option<GainComponents>,
}

impl SensingGain {
    pub fn normalized(zeta_sq: f64) -> Result<Self> {
        if !(zeta_sq > 0.0) || !zeta_sq.is_finite() {
            return Err(Error::InvalidParams(format!("|zeta|^2 must be > 0, got {zeta_sq}")));
        }
        Ok(Self {
            zeta_sq,
            components: None,
        })
    }

    pub fn from_components(components: GainComponents) -> Result<Self> {
        let zeta_sq = components.zeta_sq();
        if !(zeta_sq > 0.0) || !zeta_sq.is_finite() {
            return Err(Error::InvalidParams(format!(
                "components give |zeta|^2 = {zeta_sq}; sensing power must be > 0"
            )));
        }
        Ok(Self {
            zeta_sq,
            components: Some(components),
        })
    }

    /// Gain at the configured power split.
    pub fn from_params(params: &SystemParams) -> Result<Self> {
        match params.zeta {
            ZetaSpec::Normalized { value } => Self::normalized(value),
            ZetaSpec::Physical => Self::at_sensing_power(params, params.p_s()),
        }
    }

    /// Gain when a share `p_s` of the power goes to sensing.
    pub fn at_sensing_power(params: &SystemParams, p_s: f64) -> Result<Self> {
        match params.zeta {
            ZetaSpec::Normalized { value } => Self::normalized(value * p_s),
            ZetaSpec::Physical => Self::from_components(GainComponents {
                p_s,
                g_t: params.g_t(),
                g_r: params.g_r(),
                b_eff: params.b_eff,
                f_c: params.f_c,
                sigma_rcs: params.sigma_rcs,
                sigma_s_sq: params.sigma_s_sq,
            }),
        }
    }
}
