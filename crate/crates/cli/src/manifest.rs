//! Run manifest: what produced a data file.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub experiment: &'static str,
    /// `sha256:` of the canonical config, framed like a git blob
    /// (`blob <len>\0<bytes>`).
    pub config_hash: String,
    pub seed: u64,
    pub n_realizations: usize,
    pub versions: BTreeMap<&'static str, &'static str>,
}

pub fn content_hash(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", bytes.len()).as_bytes());
    h.update(bytes);
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

impl Manifest {
    pub fn new(config: &ExperimentConfig) -> Result<Self> {
        let canonical = config.to_toml()?;
        let versions = BTreeMap::from([
            ("isac-core", isac_core::VERSION),
            ("isac-net", env!("CARGO_PKG_VERSION")),
        ]);
        Ok(Self {
            experiment: config.experiment.name(),
            config_hash: content_hash(canonical.as_bytes()),
            seed: config.seed,
            n_realizations: config.n_realizations,
            versions,
        })
    }
}
