//! Experiment configuration: a TOML file, a built-in preset and flag overrides.
//!
//! Every field has a default, so an empty file is the evaluation preset.
//! Unknown keys are rejected to catch typos in sweep definitions.

use std::path::{Path, PathBuf};

use isac_core::communication::{RateUnit, RateWindow};
use isac_core::numerics::QuadratureSpec;
use isac_core::sensing::{CrlbaVariant, Prop1Sum, SensingAcceptanceForm};
use isac_core::tradeoff::TimeSharingModel;
use isac_core::SystemParams;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    #[default]
    SensingCrlb,
    Acceptance,
    CommRate,
    Tradeoff,
    Validate,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::SensingCrlb => "sensing-crlb",
            Experiment::Acceptance => "acceptance",
            Experiment::CommRate => "comm-rate",
            Experiment::Tradeoff => "tradeoff",
            Experiment::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SensingGrid {
    /// Sensing cluster sizes.
    pub n: Vec<usize>,
}

impl Default for SensingGrid {
    fn default() -> Self {
        Self { n: (2..=20).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AcceptanceGrid {
    pub psi: Vec<u32>,
    /// Density ratio, used as both `λ_s/λ_b` and `λ_u/λ_b`.
    pub mu: Vec<f64>,
    /// Cluster sizes (`N` for sensing, `L` for communication).
    pub cluster: Vec<usize>,
}

impl Default for AcceptanceGrid {
    fn default() -> Self {
        Self {
            psi: vec![5, 15],
            mu: vec![0.5, 1.0, 2.0],
            cluster: vec![2, 5, 15],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RateGrid {
    pub l: Vec<usize>,
    pub p_c: Vec<f64>,
}

impl Default for RateGrid {
    fn default() -> Self {
        Self {
            l: vec![1, 2, 3, 5],
            p_c: vec![0.3, 0.6, 0.9],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TradeoffGrid {
    pub n: Vec<usize>,
    pub l: Vec<usize>,
    pub p_c: Vec<f64>,
    /// Communication time fractions of the time-sharing baseline.
    pub tau: Vec<f64>,
}

impl Default for TradeoffGrid {
    fn default() -> Self {
        Self {
            n: (2..=12).collect(),
            l: (1..=8).collect(),
            p_c: (1..=9).map(|i| f64::from(i) / 10.0).collect(),
            tau: (1..=19).map(|i| f64::from(i) / 20.0).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateGrid {
    /// Cluster sizes for the closed-form vs Monte Carlo CRLB check.
    pub n: Vec<usize>,
    pub l: Vec<usize>,
    pub p_c: Vec<f64>,
    /// Distance ratios and transform arguments for the Laplace checks.
    pub eta: Vec<f64>,
    pub z: Vec<f64>,
}

impl Default for ValidateGrid {
    fn default() -> Self {
        Self {
            n: vec![2, 3, 4, 5, 8, 10, 15, 20],
            l: vec![1, 2, 3, 5],
            p_c: vec![0.3, 0.6, 0.9],
            eta: vec![0.3, 0.7],
            z: vec![0.1, 1.0, 10.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grids {
    pub sensing_crlb: SensingGrid,
    pub acceptance: AcceptanceGrid,
    pub comm_rate: RateGrid,
    pub tradeoff: TradeoffGrid,
    pub validate: ValidateGrid,
}

/// Modelling choices with more than one defensible reading.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Options {
    pub crlb_variant: CrlbaVariant,
    pub acceptance_form: SensingAcceptanceForm,
    pub prop1_sum: Prop1Sum,
    pub time_sharing: TimeSharingModel,
    pub units: RateUnit,
    pub rate_window: RateWindow,
    pub quadrature: QuadratureSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub n_realizations: usize,
    /// Destination only; left out of the embedded config so the data does
    /// not depend on where it is written.
    #[serde(skip_serializing)]
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub params: SystemParams,
    pub options: Options,
    pub grids: Grids,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: Experiment::default(),
            seed: 1,
            n_realizations: 100_000,
            output_path: None,
            format: Format::default(),
            params: SystemParams::default(),
            options: Options::default(),
            grids: Grids::default(),
        }
    }
}

/// Built-in parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// The evaluation parameter table with the sweeps of the figures.
    Paper,
}

impl ExperimentConfig {
    pub fn preset(preset: Preset, experiment: Experiment) -> Self {
        match preset {
            Preset::Paper => Self {
                experiment,
                ..Self::default()
            },
        }
    }

    /// Parses a config document. `origin` names the source in errors.
    pub fn from_toml(text: &str, origin: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Parse {
            origin: origin.to_string(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text, &path.display().to_string())
    }

    /// Canonical TOML form of the resolved config.
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| CliError::Serialize(e.to_string()))
    }

    /// Checks the parameters and the grids the selected experiment uses,
    /// reporting every violation at once.
    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        if let Err(e) = self.params.validate() {
            bad.push(e.to_string());
        }
        if self.n_realizations < 1 {
            bad.push("n_realizations must be >= 1".to_string());
        }
        if let Err(e) = self.options.quadrature.validate() {
            bad.push(e.to_string());
        }
        let g = &self.grids;
        let mut need = |name: &str, empty: bool| {
            if empty {
                bad.push(format!("grid {name} must be nonempty"));
            }
        };
        match self.experiment {
            Experiment::SensingCrlb => need("sensing_crlb.n", g.sensing_crlb.n.is_empty()),
            Experiment::Acceptance => {
                need("acceptance.psi", g.acceptance.psi.is_empty());
                need("acceptance.mu", g.acceptance.mu.is_empty());
                need("acceptance.cluster", g.acceptance.cluster.is_empty());
            }
            Experiment::CommRate => {
                need("comm_rate.l", g.comm_rate.l.is_empty());
                need("comm_rate.p_c", g.comm_rate.p_c.is_empty());
            }
            Experiment::Tradeoff => {
                need("tradeoff.n", g.tradeoff.n.is_empty());
                need("tradeoff.l", g.tradeoff.l.is_empty());
                need("tradeoff.p_c", g.tradeoff.p_c.is_empty());
            }
            Experiment::Validate => {
                need("validate.n", g.validate.n.is_empty());
                need("validate.l", g.validate.l.is_empty());
                need("validate.p_c", g.validate.p_c.is_empty());
                need("validate.eta", g.validate.eta.is_empty());
                need("validate.z", g.validate.z.is_empty());
            }
        }
        let mut check = |ok: bool, msg: &str| {
            if !ok {
                bad.push(msg.to_string());
            }
        };
        check(g.sensing_crlb.n.iter().all(|&n| n >= 2), "sensing_crlb.n entries must be >= 2");
        check(g.acceptance.psi.iter().all(|&p| p >= 1), "acceptance.psi entries must be >= 1");
        check(g.acceptance.mu.iter().all(|&m| m >= 0.0 && m.is_finite()), "acceptance.mu entries must be >= 0");
        check(g.acceptance.cluster.iter().all(|&k| k >= 1), "acceptance.cluster entries must be >= 1");
        let unit = |v: &[f64]| v.iter().all(|p| (0.0..=1.0).contains(p));
        check(g.comm_rate.l.iter().all(|&l| l >= 1), "comm_rate.l entries must be >= 1");
        check(unit(&g.comm_rate.p_c), "comm_rate.p_c entries must lie in [0, 1]");
        check(g.tradeoff.n.iter().all(|&n| n >= 2), "tradeoff.n entries must be >= 2");
        check(g.tradeoff.l.iter().all(|&l| l >= 1), "tradeoff.l entries must be >= 1");
        check(
            g.tradeoff.p_c.iter().all(|p| (0.0..1.0).contains(p)),
            "tradeoff.p_c entries must lie in [0, 1) so sensing keeps power",
        );
        check(unit(&g.tradeoff.tau), "tradeoff.tau entries must lie in [0, 1]");
        check(g.validate.n.iter().all(|&n| n >= 2), "validate.n entries must be >= 2");
        check(g.validate.l.iter().all(|&l| l >= 1), "validate.l entries must be >= 1");
        check(unit(&g.validate.p_c), "validate.p_c entries must lie in [0, 1]");
        check(
            g.validate.eta.iter().all(|&e| e > 0.0 && e <= 1.0),
            "validate.eta entries must lie in (0, 1]",
        );
        check(g.validate.z.iter().all(|&z| z >= 0.0 && z.is_finite()), "validate.z entries must be >= 0");
        if bad.is_empty() {
            Ok(())
        } else {
            Err(CliError::Invalid(bad))
        }
    }
}
