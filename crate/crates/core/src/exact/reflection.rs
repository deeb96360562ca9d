//! Reflection series for the simple random walk confined to a strip.

use crate::error::{domain, Result};
use crate::numeric::{CompensatedSum, WalkPointLaw};

fn check_levels(n: usize, lower: i64, upper: i64, x: i64) -> Result<()> {
    if !(lower <= 0 && 0 <= upper && lower < upper && lower <= x && x <= upper) {
        return domain(format!(
            "need L <= 0 <= U, L < U and L <= X <= U; got L = {lower}, U = {upper}, X = {x}"
        ));
    }
    if n == 0 {
        return domain("walk length must be at least 1");
    }
    Ok(())
}

/// `P(L < min S ≤ max S < U, S_n = X)` over `S_0..S_n`, by the raw alternating series.
pub fn strip_probability(n: usize, lower: i64, upper: i64, x: i64) -> Result<f64> {
    if !(lower <= 0 && 0 <= upper && lower < upper) {
        return domain(format!("need L <= 0 <= U and L < U; got L = {lower}, U = {upper}"));
    }
    let walk = WalkPointLaw::new(n);
    let width = upper - lower;
    let m = n as i64;
    let mut acc = CompensatedSum::new();
    let k_max = (2 * m + upper.abs() + x.abs()) / (2 * width) + 1;
    for k in -k_max..=k_max {
        acc.add(walk.prob(x + 2 * k * width));
        acc.add(-walk.prob(2 * upper - x + 2 * k * width));
    }
    Ok(acc.value().max(0.0))
}

/// `P(min = L, max = U, S_n = X)` over `S_0..S_n`.
///
/// Computed as the mixed second difference of the strip probability in the
/// two levels. Terms that cancel identically between the four strip sums
/// (`k = 0` in the direct series, `k ∈ {0, -1}` in the reflected one) are
/// dropped before summation; the series stops once every shifted argument
/// leaves `[-n, n]`.
pub fn reflection_min_max_endpoint(n: usize, lower: i64, upper: i64, x: i64) -> Result<f64> {
    check_levels(n, lower, upper, x)?;
    if (x - n as i64).rem_euclid(2) != 0 {
        return Ok(0.0);
    }
    Ok(min_max_endpoint(&WalkPointLaw::new(n), lower, upper, x))
}

pub(crate) fn min_max_endpoint(walk: &WalkPointLaw, lower: i64, upper: i64, x: i64) -> f64 {
    let width = upper - lower;
    let mut acc = CompensatedSum::new();
    direct_tail(walk, x, width + 2, 1.0, &mut acc);
    direct_tail(walk, x, width + 1, -2.0, &mut acc);
    direct_tail(walk, x, width, 1.0, &mut acc);
    reflected_tail(walk, x, upper + 1, width + 2, -1.0, &mut acc);
    reflected_tail(walk, x, upper + 1, width + 1, 1.0, &mut acc);
    reflected_tail(walk, x, upper, width + 1, 1.0, &mut acc);
    reflected_tail(walk, x, upper, width, -1.0, &mut acc);
    acc.value().max(0.0)
}

/// `sign · Σ_{k≠0} P(S = x + 2kw)`.
fn direct_tail(walk: &WalkPointLaw, x: i64, w: i64, sign: f64, acc: &mut CompensatedSum) {
    let m = walk.steps() as i64;
    let mut k = 1;
    while x + 2 * k * w <= m {
        acc.add(sign * walk.prob(x + 2 * k * w));
        k += 1;
    }
    let mut k = -1;
    while x + 2 * k * w >= -m {
        acc.add(sign * walk.prob(x + 2 * k * w));
        k -= 1;
    }
}

/// `sign · Σ_{k∉{0,-1}} P(S = 2u - x + 2kw)`.
fn reflected_tail(walk: &WalkPointLaw, x: i64, u: i64, w: i64, sign: f64, acc: &mut CompensatedSum) {
    let m = walk.steps() as i64;
    let base = 2 * u - x;
    let mut k = 1;
    while base + 2 * k * w <= m {
        acc.add(sign * walk.prob(base + 2 * k * w));
        k += 1;
    }
    let mut k = -2;
    while base + 2 * k * w >= -m {
        acc.add(sign * walk.prob(base + 2 * k * w));
        k -= 1;
    }
}
