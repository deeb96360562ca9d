use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::CompensatedSum;

/// Effective sample sizes below this fraction of the sample count raise a warning.
pub const LOW_ESS_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McOptions {
    pub seed: u64,
    pub samples: usize,
    /// Worker cap; `None` uses the global rayon pool. Never changes results.
    pub threads: Option<usize>,
}

impl McOptions {
    pub fn new(seed: u64, samples: usize) -> Self {
        Self { seed, samples, threads: None }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return domain("at least two samples are needed for a standard error");
        }
        if self.threads == Some(0) {
            return domain("thread count must be positive");
        }
        Ok(())
    }

    /// Maps `f` over sample indices in parallel, returning results in index order.
    pub fn run<T, F>(&self, f: F) -> Result<Vec<T>>
    where
        T: Send,
        F: Fn(u64) -> T + Sync + Send,
    {
        self.validate()?;
        let work = || (0..self.samples as u64).into_par_iter().map(&f).collect();
        match self.threads {
            None => Ok(work()),
            Some(k) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build()
                    .map_err(|e| Error::ThreadPool(e.to_string()))?;
                Ok(pool.install(work))
            }
        }
    }
}

/// A (possibly self-normalized, importance-weighted) Monte Carlo mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    /// `(Σw)² / Σw²`; equals `samples` for unweighted estimates.
    pub effective_sample_size: f64,
    pub low_ess_warning: bool,
}

impl McEstimate {
    /// Plain sample mean with the usual standard error.
    pub fn from_values(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().copied().collect::<CompensatedSum>().value() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).collect::<CompensatedSum>().value() / (n - 1.0);
        Self {
            mean,
            std_error: (var / n).sqrt(),
            samples: values.len(),
            effective_sample_size: n,
            low_ess_warning: false,
        }
    }

    /// Self-normalized estimate `Σ w f / Σ w` from log-weights; `None` weights drop a sample.
    ///
    /// The standard error is the delta-method value `√(Σ w²(f - mean)²) / Σ w`.
    pub fn self_normalized(log_weights: &[Option<f64>], values: &[f64]) -> Self {
        let samples = values.len();
        let shift = log_weights.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
        let weights: Vec<f64> =
            log_weights.iter().map(|lw| lw.map_or(0.0, |lw| if shift.is_finite() { (lw - shift).exp() } else { 0.0 })).collect();
        let sum_w = weights.iter().copied().collect::<CompensatedSum>().value();
        if !(sum_w > 0.0) {
            return Self { mean: f64::NAN, std_error: f64::NAN, samples, effective_sample_size: 0.0, low_ess_warning: true };
        }
        let sum_w2 = weights.iter().map(|w| w * w).collect::<CompensatedSum>().value();
        let mean = weights.iter().zip(values).map(|(w, f)| w * f).collect::<CompensatedSum>().value() / sum_w;
        let spread = weights.iter().zip(values).map(|(w, f)| (w * (f - mean)).powi(2)).collect::<CompensatedSum>().value();
        let ess = sum_w * sum_w / sum_w2;
        Self {
            mean,
            std_error: spread.sqrt() / sum_w,
            samples,
            effective_sample_size: ess,
            low_ess_warning: ess < LOW_ESS_FRACTION * samples as f64,
        }
    }
}
