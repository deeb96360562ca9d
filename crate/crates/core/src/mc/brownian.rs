use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::estimate::{McEstimate, McOptions};
use super::walk::walk_rng;
use crate::error::{domain, Result};

/// `-ζ(1/2)/√(2π)`: the expected maximum of a Brownian path sampled on a grid of
/// spacing `dt` falls short of the true maximum by this multiple of `√dt`.
const GRID_MAX_BIAS: f64 = 0.582_597_157_939_010_7;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BrownianOptions {
    pub t: f64,
    pub dt: f64,
    /// Range-histogram bins over `[0, range_extent·√t)`.
    pub range_bins: usize,
    pub range_extent: f64,
    /// Joint-histogram bins per axis over `[0, joint_extent·√t)²`.
    pub joint_bins: usize,
    pub joint_extent: f64,
}

impl BrownianOptions {
    pub fn new(t: f64, dt: f64) -> Self {
        Self { t, dt, range_bins: 50, range_extent: 5.0, joint_bins: 40, joint_extent: 4.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub width: f64,
    pub counts: Vec<u64>,
    pub samples: usize,
}

impl Histogram {
    fn new(lo: f64, hi: f64, bins: usize, samples: usize) -> Self {
        Self { lo, width: (hi - lo) / bins as f64, counts: vec![0; bins], samples }
    }

    fn add(&mut self, v: f64) {
        let i = ((v - self.lo) / self.width).floor();
        if i >= 0.0 && (i as usize) < self.counts.len() {
            self.counts[i as usize] += 1;
        }
    }

    pub fn edges(&self, i: usize) -> (f64, f64) {
        (self.lo + i as f64 * self.width, self.lo + (i + 1) as f64 * self.width)
    }

    pub fn density(&self, i: usize) -> f64 {
        self.counts[i] as f64 / (self.samples as f64 * self.width)
    }

    /// Binomial standard error of [`Histogram::density`].
    pub fn std_error(&self, i: usize) -> f64 {
        let p = self.counts[i] as f64 / self.samples as f64;
        (p * (1.0 - p) / self.samples as f64).sqrt() / self.width
    }
}

/// Histogram of `(B_t, R_t)` on `{B_t > 0}`, row-major in `(x, r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram2d {
    pub width: f64,
    pub bins: usize,
    pub counts: Vec<u64>,
    pub samples: usize,
}

impl Histogram2d {
    fn add(&mut self, x: f64, r: f64) {
        let (i, j) = ((x / self.width).floor(), (r / self.width).floor());
        if i >= 0.0 && j >= 0.0 && (i as usize) < self.bins && (j as usize) < self.bins {
            self.counts[i as usize * self.bins + j as usize] += 1;
        }
    }

    /// Bin `(i, j)` containing the point `(x, r)`, if inside the grid.
    pub fn bin_of(&self, x: f64, r: f64) -> Option<(usize, usize)> {
        let (i, j) = ((x / self.width).floor(), (r / self.width).floor());
        (i >= 0.0 && j >= 0.0 && (i as usize) < self.bins && (j as usize) < self.bins).then_some((i as usize, j as usize))
    }

    pub fn density(&self, i: usize, j: usize) -> f64 {
        self.counts[i * self.bins + j] as f64 / (self.samples as f64 * self.width * self.width)
    }

    pub fn std_error(&self, i: usize, j: usize) -> f64 {
        let p = self.counts[i * self.bins + j] as f64 / self.samples as f64;
        (p * (1.0 - p) / self.samples as f64).sqrt() / (self.width * self.width)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BrownianRangeMc {
    pub t: f64,
    pub dt: f64,
    pub steps: usize,
    pub range: Histogram,
    pub joint_positive: Histogram2d,
    /// `P(B_t > 0)`.
    pub positive_fraction: McEstimate,
    /// Mean of the grid range `max - min`; biased low by about `1.165·√dt`.
    pub range_mean: McEstimate,
    /// `range_mean` plus the leading grid correction `2·0.5826·√dt`.
    pub range_mean_corrected: f64,
}

/// Euler paths of standard Brownian motion on `[0, t]` with step `dt`.
pub fn brownian_range_mc(options: BrownianOptions, mc: McOptions) -> Result<BrownianRangeMc> {
    let BrownianOptions { t, dt, range_bins, range_extent, joint_bins, joint_extent } = options;
    if !(t > 0.0 && t.is_finite() && dt > 0.0) {
        return domain(format!("need t > 0 and dt > 0, got t = {t}, dt = {dt}"));
    }
    if dt > t * 1e-4 * (1.0 + 1e-12) {
        return domain(format!("step dt = {dt} must not exceed t/10^4 = {}", t * 1e-4));
    }
    if range_bins == 0 || joint_bins == 0 || !(range_extent > 0.0 && joint_extent > 0.0) {
        return domain("histogram layouts need positive bin counts and extents");
    }
    let steps = (t / dt).round() as usize;
    let sd = (t / steps as f64).sqrt();
    let paths = mc.run(|index| {
        let mut rng = walk_rng(mc.seed, index);
        let (mut b, mut lo, mut hi) = (0.0f64, 0.0f64, 0.0f64);
        for _ in 0..steps {
            let z: f64 = rng.sample(StandardNormal);
            b += sd * z;
            lo = lo.min(b);
            hi = hi.max(b);
        }
        (b, hi - lo)
    })?;

    let st = t.sqrt();
    let samples = paths.len();
    let mut range = Histogram::new(0.0, range_extent * st, range_bins, samples);
    let mut joint_positive = Histogram2d {
        width: joint_extent * st / joint_bins as f64,
        bins: joint_bins,
        counts: vec![0; joint_bins * joint_bins],
        samples,
    };
    let mut positive = Vec::with_capacity(samples);
    let mut ranges = Vec::with_capacity(samples);
    for &(b, r) in &paths {
        range.add(r);
        if b > 0.0 {
            joint_positive.add(b, r);
        }
        positive.push(f64::from(u8::from(b > 0.0)));
        ranges.push(r);
    }
    let range_mean = McEstimate::from_values(&ranges);
    Ok(BrownianRangeMc {
        t,
        dt,
        steps,
        range,
        joint_positive,
        positive_fraction: McEstimate::from_values(&positive),
        range_mean,
        range_mean_corrected: range_mean.mean + 2.0 * GRID_MAX_BIAS * (t / steps as f64).sqrt(),
    })
}
