//! Feller's alternating series for the range of Brownian motion and the
//! companion series for the joint law of endpoint and range.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::{CompensatedSum, LN_SQRT_2PI};

/// Default lower limit `a` of `r/√t` accepted by the series.
pub const DEFAULT_FLOOR: f64 = 0.05;
const MAX_TERMS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesOptions {
    /// Truncation once the next term drops below `tol · |sum|`.
    pub tol: f64,
    /// Smallest `r/√t` accepted; the series is not uniformly convergent near zero.
    pub floor: f64,
}

impl Default for SeriesOptions {
    fn default() -> Self {
        Self { tol: 1e-17, floor: DEFAULT_FLOOR }
    }
}

/// A truncated series value with a bound on the neglected tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesEval {
    pub value: f64,
    pub truncation_bound: f64,
    pub terms_used: usize,
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return domain(format!("time horizon must be positive, got t = {t}"));
    }
    Ok(())
}

/// Density of `R_t = max B - min B` at `r`: `(8/√t) Σ_{k≥1} (-1)^{k-1} k² φ(kr/√t)`.
pub fn range_density(t: f64, r: f64, options: SeriesOptions) -> Result<SeriesEval> {
    range_density_scaled(t, r, 0.0, options)
}

/// `range_density · exp(log_factor)`, with the factor folded into each exponent.
pub(crate) fn range_density_scaled(t: f64, r: f64, log_factor: f64, options: SeriesOptions) -> Result<SeriesEval> {
    check_time(t)?;
    let z = r / t.sqrt();
    if !(z >= options.floor) {
        return domain(format!(
            "r/sqrt(t) = {z} is below the series floor {}; restrict the domain to r >= a sqrt(t)",
            options.floor
        ));
    }
    let term = |k: usize| {
        let kf = k as f64;
        kf * kf * (log_factor - 0.5 * kf * kf * z * z - LN_SQRT_2PI).exp()
    };
    // |terms| decrease for k ≥ √2/z, after which the alternating tail bound holds
    let monotone_from = (2f64.sqrt() / z).ceil() as usize;
    let mut acc = CompensatedSum::new();
    let mut k = 1;
    loop {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        acc.add(sign * term(k));
        let next = term(k + 1);
        if k >= monotone_from && (next <= options.tol * acc.value().abs() || next == 0.0) {
            let scale = 8.0 / t.sqrt();
            return Ok(SeriesEval { value: scale * acc.value(), truncation_bound: scale * next, terms_used: k });
        }
        k += 1;
        if k > MAX_TERMS {
            return domain(format!("range density series did not settle at r/sqrt(t) = {z}"));
        }
    }
}

/// Joint density of `(B_t, R_t)` on `{0 < x < r}`.
pub fn joint_density(t: f64, x: f64, r: f64, options: SeriesOptions) -> Result<SeriesEval> {
    joint_density_scaled(t, x, r, 0.0, options)
}

pub(crate) fn joint_density_scaled(
    t: f64,
    x: f64,
    r: f64,
    log_factor: f64,
    options: SeriesOptions,
) -> Result<SeriesEval> {
    check_time(t)?;
    if !(0.0 < x && x < r) {
        return domain(format!("joint density needs 0 < x < r, got x = {x}, r = {r}"));
    }
    let st = t.sqrt();
    if !(r / st >= options.floor) {
        return domain(format!("r/sqrt(t) = {} is below the series floor {}", r / st, options.floor));
    }
    let gauss = |z: f64| (log_factor - 0.5 * z * z - LN_SQRT_2PI).exp();
    // block k collects the ±k terms of the first sum and the k-th terms of the second
    let block = |k: usize| {
        let kf = k as f64;
        let a = (2.0 * kf * r - x) / st;
        let b = (2.0 * kf * r + x) / st;
        let (ga, gb) = (gauss(a), gauss(b));
        let first = (r - x) / (t * st) * 4.0 * kf * kf * ((a * a - 1.0) * ga + (b * b - 1.0) * gb);
        let second = 4.0 * kf * (kf - 1.0) * a / t * ga - 4.0 * kf * (kf + 1.0) * b / t * gb;
        (first + second, ga)
    };
    let mut acc = CompensatedSum::new();
    let mut k = 1;
    loop {
        acc.add(block(k).0);
        let (next, next_gauss) = block(k + 1);
        if next_gauss <= options.tol * acc.value().abs() || next_gauss == 0.0 {
            return Ok(SeriesEval { value: acc.value(), truncation_bound: 10.0 * next.abs(), terms_used: k });
        }
        k += 1;
        if k > MAX_TERMS {
            return domain(format!("joint density series did not settle at x = {x}, r = {r}"));
        }
    }
}
