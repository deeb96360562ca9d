//! Safeguarded Newton iteration on a sign-changing bracket.
//!
//! Every target in this crate is strictly monotone on its bracket, so the
//! bracket always shrinks and the iteration cannot escape it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 400;

/// Output of a root solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RootResult {
    pub value: f64,
    /// Target function evaluated at `value`.
    pub residual: f64,
    pub iterations: usize,
    /// Final bracket; always contains `value`.
    pub bracket: (f64, f64),
}

/// Finds the root of `f` on `[lo, hi]`, where `f` returns `(value, derivative)`.
///
/// Newton steps are taken from `start` (or the midpoint) whenever they land
/// strictly inside the current bracket; otherwise the bracket is bisected.
/// Stops once `|f| <= tol` or the bracket has collapsed to adjacent floats.
pub fn solve_bracketed<F>(f: F, lo: f64, hi: f64, start: Option<f64>, tol: f64) -> Result<RootResult>
where
    F: Fn(f64) -> (f64, f64),
{
    let (f_lo, _) = f(lo);
    let (f_hi, _) = f(hi);
    if f_lo == 0.0 {
        return Ok(RootResult { value: lo, residual: 0.0, iterations: 0, bracket: (lo, lo) });
    }
    if f_hi == 0.0 {
        return Ok(RootResult { value: hi, residual: 0.0, iterations: 0, bracket: (hi, hi) });
    }
    if f_lo.signum() == f_hi.signum() || !f_lo.is_finite() && !f_hi.is_finite() {
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }
    // orient so that f(neg) < 0 < f(pos)
    let (mut neg, mut pos) = if f_lo < 0.0 { (lo, hi) } else { (hi, lo) };

    let mut x = start.filter(|s| s.is_finite() && inside(*s, neg, pos)).unwrap_or(0.5 * (neg + pos));
    for iteration in 1..=MAX_ITERATIONS {
        let (fx, dfx) = f(x);
        if fx.abs() <= tol {
            return Ok(finish(x, fx, iteration, neg, pos));
        }
        if fx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
        let mid = 0.5 * (neg + pos);
        if mid == neg || mid == pos {
            // bracket exhausted: report the better endpoint
            let (fn_, _) = f(neg);
            let (fp, _) = f(pos);
            let (best, fb) = if fn_.abs() <= fp.abs() { (neg, fn_) } else { (pos, fp) };
            return Ok(finish(best, fb, iteration, neg, pos));
        }
        let newton = x - fx / dfx;
        x = if dfx.is_finite() && dfx != 0.0 && inside(newton, neg, pos) { newton } else { mid };
    }
    let (fx, _) = f(x);
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, residual: fx })
}

fn inside(x: f64, a: f64, b: f64) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    x > lo && x < hi
}

fn finish(value: f64, residual: f64, iterations: usize, a: f64, b: f64) -> RootResult {
    let bracket = if a < b { (a, b) } else { (b, a) };
    RootResult { value, residual, iterations, bracket }
}
