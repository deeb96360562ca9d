//! Small numerical helpers shared across modules.

use libm::erfc;
use std::f64::consts::{LN_2, SQRT_2};

pub const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    values.into_iter().collect::<CompensatedSum>().value()
}

/// `ln(Σ exp(x_i))` with max-shift; returns `-inf` for an empty or all `-inf` input.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s = compensated_sum(values.iter().map(|v| (v - max).exp()));
    max + s.ln()
}

/// Standard normal density.
#[inline]
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z - LN_SQRT_2PI).exp()
}

/// Standard normal CDF Φ.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / SQRT_2)
}

/// Table of `ln k!` for `k = 0..=max`.
#[derive(Debug, Clone)]
pub struct LnFactorials(Vec<f64>);

impl LnFactorials {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let mut acc = CompensatedSum::new();
        table.push(0.0);
        for k in 1..=max {
            acc.add((k as f64).ln());
            table.push(acc.value());
        }
        Self(table)
    }

    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        self.0[k]
    }

    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        self.get(n) - self.get(k) - self.get(n - k)
    }
}

/// Point probabilities `P(S_m = y)` of the simple random walk for `y ∈ [-m, m]`.
#[derive(Debug, Clone)]
pub struct WalkPointLaw {
    steps: usize,
    probs: Vec<f64>,
}

impl WalkPointLaw {
    pub fn new(steps: usize) -> Self {
        let lf = LnFactorials::new(steps);
        let m = steps as i64;
        let probs = (-m..=m)
            .map(|y| {
                if (y + m) % 2 != 0 {
                    0.0
                } else {
                    let up = ((m + y) / 2) as usize;
                    (lf.ln_binomial(steps, up) - steps as f64 * LN_2).exp()
                }
            })
            .collect();
        Self { steps, probs }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// `P(S_m = y)`; zero outside `[-m, m]` or off parity.
    #[inline]
    pub fn prob(&self, y: i64) -> f64 {
        let m = self.steps as i64;
        if y < -m || y > m {
            0.0
        } else {
            self.probs[(y + m) as usize]
        }
    }
}

/// `(1+x) ln(1+x)` style helper: `x ln x` with `0 ln 0 = 0`.
#[inline]
pub fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let values = [1.0, 1e-16, 1e-16, -1.0];
        assert_eq!(compensated_sum(values), 2e-16);
    }

    #[test]
    fn walk_point_law_normalizes() {
        for m in [0usize, 1, 7, 40, 301] {
            let law = WalkPointLaw::new(m);
            let total = compensated_sum((-(m as i64)..=m as i64).map(|y| law.prob(y)));
            assert!((total - 1.0).abs() < 1e-13, "m = {m}: {total}");
        }
        let law = WalkPointLaw::new(4);
        assert!((law.prob(0) - 6.0 / 16.0).abs() < 1e-15);
        assert_eq!(law.prob(1), 0.0);
        assert_eq!(law.prob(6), 0.0);
    }

    #[test]
    fn log_sum_exp_handles_extremes() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        let v = log_sum_exp(&[-1000.0, -1000.0]);
        assert!((v - (-1000.0 + LN_2)).abs() < 1e-12);
    }

    #[test]
    fn normal_cdf_symmetry() {
        for z in [0.0, 0.3, 1.0, 2.5] {
            assert!((normal_cdf(z) + normal_cdf(-z) - 1.0).abs() < 1e-15);
        }
        assert_eq!(normal_cdf(0.0), 0.5);
    }
}
