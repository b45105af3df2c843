//! Experiment runner for the cooperative ISAC network model.
//!
//! A run resolves an [`ExperimentConfig`] (preset, TOML file, flag
//! overrides), evaluates one experiment and renders the rows as CSV or
//! JSON. Output bytes depend only on the resolved config: worker threads
//! (capped by `ISAC_NET_THREADS`) change the speed, never the numbers.

pub mod config;
pub mod error;
pub mod experiments;
pub mod manifest;
pub mod output;
mod validate;

pub use config::{Experiment, ExperimentConfig, Format, Preset};
pub use error::{CliError, Result};
pub use experiments::{run, Report};
pub use manifest::Manifest;

/// Environment variable capping the worker threads (`0` or unset = all cores).
pub const THREADS_ENV: &str = "ISAC_NET_THREADS";

/// Parses a `ISAC_NET_THREADS` value.
pub fn parse_threads(value: Option<&str>) -> Result<usize> {
    match value.map(str::trim) {
        None | Some("") => Ok(0),
        Some(v) => v.parse().map_err(|_| CliError::Threads(v.to_string())),
    }
}

/// A finished run: what produced it, the rows, and the rendered file.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub manifest: Manifest,
    pub report: Report,
    pub bytes: Vec<u8>,
}

/// Validates, runs on at most `threads` workers and renders `config`.
pub fn execute(config: &ExperimentConfig, threads: usize) -> Result<Outcome> {
    config.validate()?;
    let manifest = Manifest::new(config)?;
    let report = isac_core::exec::with_threads(threads, || run(config))?;
    let bytes = output::render(config, &manifest, &report.table)?;
    Ok(Outcome { manifest, report, bytes })
}
