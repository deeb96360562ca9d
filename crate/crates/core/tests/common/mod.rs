//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

/// `erf` by its Maclaurin series (|x| ≤ 3) or a Lentz continued fraction for `erfc`.
pub fn erf(x: f64) -> f64 {
    if x.abs() <= 3.0 {
        let mut term = x;
        let mut sum = x;
        for n in 1..200 {
            term *= -x * x / n as f64;
            let add = term / (2 * n + 1) as f64;
            sum += add;
            if add.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        2.0 / PI.sqrt() * sum
    } else {
        x.signum() * (1.0 - erfc_cf(x.abs()))
    }
}

/// `erfc(x)` for `x > 0` from `√π e^{x²} erfc(x) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`.
fn erfc_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        d = if d.abs() < tiny { tiny } else { d };
        c = x + a / c;
        c = if c.abs() < tiny { tiny } else { c };
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

pub fn phi_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / 2f64.sqrt()))
}

/// `I(x)` written out directly.
pub fn rate_i(x: f64) -> f64 {
    let xl = |y: f64| if y == 0.0 { 0.0 } else { y * y.ln() };
    0.5 * xl(1.0 + x) + 0.5 * xl(1.0 - x)
}

/// Root of `c² atanh(c) = β` by plain bisection.
pub fn bisect_c_star(beta: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid * mid * mid.atanh() < beta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Minimizes `f` over `[a, b]` on a grid, then by golden section around the best node.
pub fn grid_min(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let n = 20_000;
    let h = (b - a) / n as f64;
    let best = (0..=n).min_by(|&i, &j| f(a + i as f64 * h).total_cmp(&f(a + j as f64 * h))).unwrap();
    let (mut lo, mut hi) = ((a + (best as f64 - 1.0) * h).max(a), (a + (best as f64 + 1.0) * h).min(b));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let (x1, x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
        if f(x1) < f(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    f(0.5 * (lo + hi)).min(f(a)).min(f(b))
}

/// Brute-force `(min, max, endpoint)` counts over all `2^n` paths, keyed by `(L, U, X)`.
pub fn min_max_end_counts(n: usize) -> std::collections::HashMap<(i64, i64, i64), u64> {
    let mut out = std::collections::HashMap::new();
    for bits in 0u64..(1 << n) {
        let (mut s, mut lo, mut hi) = (0i64, 0i64, 0i64);
        for i in 0..n {
            s += if bits >> i & 1 == 1 { 1 } else { -1 };
            lo = lo.min(s);
            hi = hi.max(s);
        }
        *out.entry((lo, hi, s)).or_insert(0) += 1;
    }
    out
}
