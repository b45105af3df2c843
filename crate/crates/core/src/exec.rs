//! Execution of per-realization Monte Carlo work.
//!
//! Realization `i` always draws from RNG stream `i` of the master seed and
//! results are reduced in index order, so an estimate is a function of
//! `(seed, n_realizations)` only. The number of worker threads never
//! changes the output bits.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::numerics::pairwise_sum;

/// How a batch of independent realizations is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Execution {
    /// rayon work-stealing when the `parallel` feature is on, sequential otherwise.
    #[default]
    Parallel,
    Sequential,
}

/// RNG for realization `index` of a run seeded with `seed`.
///
/// Each index selects a distinct ChaCha stream, so realizations are
/// independent and can be generated in any order.
pub fn realization_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

impl Execution {
    /// Evaluates `f(0), ..., f(n - 1)` and returns the results in index order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                (0..n).into_par_iter().map(f).collect()
            }
            _ => (0..n).map(f).collect(),
        }
    }

    /// Like [`Execution::map`] but hands each call its realization RNG.
    pub fn map_seeded<T, F>(self, n: usize, seed: u64, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut ChaCha8Rng) -> T + Sync + Send,
    {
        self.map(n, |i| {
            let mut rng = realization_rng(seed, i as u64);
            f(&mut rng)
        })
    }
}

/// Runs `f` with rayon capped at `threads` workers (`0` keeps the global pool).
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(_threads: usize, f: impl FnOnce() -> R + Send) -> R {
    f()
}

/// Monte Carlo mean with a normal-approximation 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateWithCI {
    pub mean: f64,
    pub half_width_95: f64,
    pub n_samples: usize,
}

impl EstimateWithCI {
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        assert!(n >= 1, "an estimate needs at least one sample");
        let mean = pairwise_sum(samples) / n as f64;
        let half_width_95 = if n > 1 {
            let dev: Vec<f64> = samples.iter().map(|x| (x - mean) * (x - mean)).collect();
            let var = pairwise_sum(&dev) / (n - 1) as f64;
            1.96 * (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            half_width_95,
            n_samples: n,
        }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        self.half_width_95 / 1.96
    }

    /// Whether `value` lies within `k` standard errors of the mean.
    pub fn within_std_errors(&self, value: f64, k: f64) -> bool {
        (value - self.mean).abs() <= k * self.std_error()
    }
}
