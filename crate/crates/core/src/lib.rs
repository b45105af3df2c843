//! Performance model of cooperative integrated sensing and communication
//! (ISAC) networks.
//!
//! Base stations form a Poisson point process. Each target is localized by
//! its `N` nearest base stations acting as a non-coherent distributed MIMO
//! radar, and each user is served by non-coherent joint transmission from
//! its `L` nearest base stations. The crate provides
//!
//! - closed forms: localization CRLB and its `ln²N` scaling, base-station
//!   acceptance probabilities under limited resource blocks, Laplace
//!   transforms of the cooperative signal and interference, and the
//!   average user rate;
//! - Monte Carlo simulators that check every closed form against sampled
//!   network realizations;
//! - a backhaul-constrained search over `(N, L, p_c)` producing the
//!   sensing/communication tradeoff frontier.
//!
//! Monte Carlo loops run on rayon when the `parallel` feature is enabled
//! (the default) and sequentially otherwise. Every realization draws from
//! its own RNG stream, so estimates do not depend on the thread count.

pub mod channel;
pub mod communication;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod load;
pub mod numerics;
pub mod params;
pub mod sensing;
pub mod tradeoff;

pub use error::{Error, Result};
pub use exec::{EstimateWithCI, Execution};
pub use params::{SensingGain, SystemParams, ZetaSpec};

/// Version of this crate, recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
