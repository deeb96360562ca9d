//! Closed-form and root-solved constants of the discrete range polymer in d = 1.
//!
//! The speed `c*(β)` is the root of `β = c² I'(c)`. For large β the root sits
//! within `2e^{-2β}` of one, so the solver switches to the gap `u = 1 - c` as
//! its unknown and every downstream formula is written in terms of `u` there.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::xlogx;
use crate::roots::{solve_bracketed, RootResult, DEFAULT_TOLERANCE};

/// Smallest gap `1 - c` the solvers will consider.
const MIN_GAP: f64 = 1e-300;
/// Below this speed the solve is done in `c` directly, above it in `1 - c`.
const GAP_SWITCH: f64 = 0.5;

/// Value and slope of a range rate function at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEval {
    pub x: f64,
    pub value: f64,
    /// `+inf` at the right edge of the discrete domain.
    pub derivative: f64,
}

/// Constants of the discrete model at one repelling strength.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolymerConstants {
    pub beta: f64,
    pub c_star: f64,
    /// `1 - c*`, carried separately because it underflows `c*` for large β.
    pub c_star_gap: f64,
    /// Closed form `-c* log((1+c*)/(1-c*)) - ½ log(1 - c*²)`.
    pub g_star: f64,
    /// Infimum form `-(β/c* + I(c*))`.
    pub g_star_infimum: f64,
    pub sigma_star: f64,
    pub c_tilde: f64,
    pub root: RootResult,
}

/// `I(x) = ½(1+x)log(1+x) + ½(1-x)log(1-x)` on `[0, 1]`, with `I'(x) = atanh x`.
pub fn rate_i(x: f64) -> Result<RateEval> {
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("rate I is finite only on [0, 1], got x = {x}"));
    }
    let value = 0.5 * ((1.0 + x) * x.ln_1p() + xlogx(1.0 - x));
    let derivative = if x == 1.0 { f64::INFINITY } else { x.atanh() };
    Ok(RateEval { x, value, derivative })
}

/// `I(1 - u)` evaluated from the gap `u`, accurate as `u → 0`.
fn rate_i_from_gap(u: f64) -> f64 {
    0.5 * (xlogx(2.0 - u) + xlogx(u))
}

/// `atanh(1 - u) = ½ log((2 - u)/u)`.
fn atanh_from_gap(u: f64) -> f64 {
    0.5 * ((2.0 - u).ln() - u.ln())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return domain(format!("repelling strength must be positive and finite, got beta = {beta}"));
    }
    Ok(())
}

/// Solves `β = c² atanh(c)`; returns the root and the gap `1 - c`.
fn speed_root(beta: f64) -> Result<(RootResult, f64)> {
    check_beta(beta)?;
    let target_c = |c: f64| {
        let a = c.atanh();
        (c * c * a - beta, 2.0 * c * a + c * c / (1.0 - c * c))
    };
    if target_c(GAP_SWITCH).0 >= 0.0 {
        let lo = tilde_c_d(beta, 1)?.min(GAP_SWITCH);
        let root = solve_bracketed(target_c, lo, GAP_SWITCH, Some(beta.cbrt()), DEFAULT_TOLERANCE)?;
        return Ok((root, 1.0 - root.value));
    }
    // gap form: f(u) = (1-u)² atanh(1-u) - β, decreasing in u
    let target_u = |u: f64| {
        let c = 1.0 - u;
        let a = atanh_from_gap(u);
        (c * c * a - beta, -2.0 * c * a - c * c / (u * (2.0 - u)))
    };
    let hi = 1.0 - GAP_SWITCH;
    let lo = if target_u(1e-15).0 > 0.0 { 1e-15 } else { MIN_GAP };
    let start = (2.0 * (-2.0 * beta).exp()).clamp(lo, hi);
    let r = solve_bracketed(target_u, lo, hi, Some(start), DEFAULT_TOLERANCE)?;
    let gap = r.value;
    let root = RootResult {
        value: 1.0 - gap,
        residual: r.residual,
        iterations: r.iterations,
        bracket: (1.0 - r.bracket.1, 1.0 - r.bracket.0),
    };
    Ok((root, gap))
}

/// Speed `c*(β)`: the unique root in `(0, 1)` of `c ↦ c² I'(c) - β`.
pub fn speed_c_star(beta: f64) -> Result<RootResult> {
    speed_root(beta).map(|(root, _)| root)
}

/// Free energy `g*(β)` together with the speed, spread and threshold.
pub fn free_energy_g_star(beta: f64) -> Result<PolymerConstants> {
    let (root, gap) = speed_root(beta)?;
    let c = root.value;
    // log((1+c)/(1-c)) and log(1-c²), each from the better-conditioned variable
    let (log_ratio, log_one_minus_sq, rate) = if c < GAP_SWITCH {
        (2.0 * c.atanh(), (-c * c).ln_1p(), rate_i(c)?.value)
    } else {
        ((2.0 - gap).ln() - gap.ln(), gap.ln() + (2.0 - gap).ln(), rate_i_from_gap(gap))
    };
    let g_star = -c * log_ratio - 0.5 * log_one_minus_sq;
    let g_star_infimum = -(beta / c + rate);
    let inv_sigma_sq = 2.0 * beta / (c * c * c) + 1.0 / (gap * (2.0 - gap));
    Ok(PolymerConstants {
        beta,
        c_star: c,
        c_star_gap: gap,
        g_star,
        g_star_infimum,
        sigma_star: inv_sigma_sq.sqrt().recip(),
        c_tilde: tilde_c_d(beta, 1)?,
        root,
    })
}

/// Spread `σ*(β)` with `1/σ*² = 2β/c*³ + 1/(1 - c*²)`.
pub fn sigma_star(beta: f64) -> Result<f64> {
    free_energy_g_star(beta).map(|k| k.sigma_star)
}

/// Lower bound `β / (β + log 2d)` for the range fraction in dimension `d`.
pub fn tilde_c_d(beta: f64, d: u32) -> Result<f64> {
    check_beta(beta)?;
    if d == 0 {
        return domain("dimension must be at least 1");
    }
    Ok(beta / (beta + (2.0 * d as f64).ln()))
}

/// Which formula of a two-branch rate function produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Range pinned to the endpoint (`θ` at or above the branch threshold).
    Pinned,
    /// Interior optimum given by the auxiliary root.
    Auxiliary,
}

impl Branch {
    pub fn id(self) -> u8 {
        match self {
            Branch::Pinned => 1,
            Branch::Auxiliary => 2,
        }
    }
}

/// One evaluation of an endpoint-speed rate function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePoint {
    pub beta: f64,
    pub theta: f64,
    pub rate: f64,
    pub branch: Branch,
    /// Auxiliary root `r̃` (or `r̄`); `None` on the pinned branch.
    pub aux_root: Option<f64>,
    /// Threshold separating the branches.
    pub threshold: f64,
}

/// Endpoint-speed rate `I^β(θ)` under the polymer measure conditioned on `S_n > 0`.
///
/// At `θ = 0` the auxiliary equation `β = 2r² atanh(2r)` is still well posed;
/// the returned value is that limit.
pub fn ldp_rate_discrete(beta: f64, theta: f64) -> Result<RatePoint> {
    check_beta(beta)?;
    let threshold = speed_c_star(beta / 2.0)?.value;
    let branch = if theta >= threshold { Branch::Pinned } else { Branch::Auxiliary };
    ldp_rate_discrete_on(beta, theta, branch)
}

/// Evaluates one branch formula of `I^β` regardless of which side of the threshold `θ` is on.
pub fn ldp_rate_discrete_on(beta: f64, theta: f64, branch: Branch) -> Result<RatePoint> {
    check_beta(beta)?;
    if !(0.0..=1.0).contains(&theta) {
        return domain(format!("endpoint speed must lie in [0, 1], got theta = {theta}"));
    }
    let constants = free_energy_g_star(beta)?;
    let threshold = speed_c_star(beta / 2.0)?.value;
    let (rate, aux_root) = match branch {
        Branch::Pinned => {
            if theta == 0.0 {
                return domain("the pinned branch is singular at theta = 0");
            }
            (beta / theta + rate_i(theta)?.value + constants.g_star, None)
        }
        Branch::Auxiliary => {
            let (r, i_value) = auxiliary_root(beta, theta)?;
            (beta / r + i_value + constants.g_star, Some(r))
        }
    };
    Ok(RatePoint { beta, theta, rate, branch, aux_root, threshold })
}

/// Root `r̃ ∈ (θ/2, (1+θ)/2)` of `β = 2r² I'(2r - θ)`, with `I(2r̃ - θ)`.
fn auxiliary_root(beta: f64, theta: f64) -> Result<(f64, f64)> {
    // unknown s = 2r - θ ∈ (0, 1), or its gap v = 1 - s when s is close to one
    let target_s = |s: f64| {
        let r = 0.5 * (theta + s);
        let a = s.atanh();
        (2.0 * r * r * a - beta, 2.0 * r * a + 2.0 * r * r / (1.0 - s * s))
    };
    if target_s(GAP_SWITCH).0 >= 0.0 {
        let root = solve_bracketed(target_s, 0.0, GAP_SWITCH, None, DEFAULT_TOLERANCE)?;
        let s = root.value;
        return Ok((0.5 * (theta + s), rate_i(s)?.value));
    }
    let target_v = |v: f64| {
        let r = 0.5 * (theta + 1.0 - v);
        let a = atanh_from_gap(v);
        (2.0 * r * r * a - beta, -r * a - 2.0 * r * r / (v * (2.0 - v)))
    };
    let lo = if target_v(1e-15).0 > 0.0 { 1e-15 } else { MIN_GAP };
    let root = solve_bracketed(target_v, lo, 1.0 - GAP_SWITCH, None, DEFAULT_TOLERANCE)?;
    let v = root.value;
    Ok((0.5 * (theta + 1.0 - v), rate_i_from_gap(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn rate_i_examples() {
        assert_eq!(rate_i(0.0).unwrap().value, 0.0);
        assert!((rate_i(1.0).unwrap().value - LN_2).abs() < 1e-15);
        // 50-digit evaluation of ½(1.5 ln 1.5 + 0.5 ln 0.5)
        assert!((rate_i(0.5).unwrap().value - 0.130_812_035_941_136_96).abs() < 1e-15);
        assert!(rate_i(1.0).unwrap().derivative.is_infinite());
        assert!(rate_i(-0.1).is_err());
        assert!(rate_i(1.1).is_err());
    }

    #[test]
    fn rate_i_vanishes_only_at_zero() {
        for k in 1..=1000 {
            let x = k as f64 / 1000.0;
            assert!(rate_i(x).unwrap().value > 0.0);
        }
    }

    #[test]
    fn gap_form_matches_direct() {
        for u in [0.5, 0.1, 1e-3, 1e-8] {
            let direct = rate_i(1.0 - u).unwrap().value;
            assert!((rate_i_from_gap(u) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn speed_rejects_nonpositive_beta() {
        assert!(speed_c_star(0.0).is_err());
        assert!(speed_c_star(-1.0).is_err());
        assert!(speed_c_star(f64::NAN).is_err());
    }

    #[test]
    fn speed_residual_and_bracket() {
        for beta in [1e-8, 1e-3, 0.1, 1.0, 3.0, 10.0, 30.0] {
            let r = speed_c_star(beta).unwrap();
            assert!(r.residual.abs() <= 1e-12, "beta {beta}: residual {}", r.residual);
            assert!(r.bracket.0 <= r.value && r.value <= r.bracket.1);
            let k = free_energy_g_star(beta).unwrap();
            assert!(k.c_tilde <= k.c_star && k.c_star <= 1.0);
        }
    }

    #[test]
    fn large_beta_keeps_gap() {
        let k = free_energy_g_star(40.0).unwrap();
        assert!(k.c_star_gap > 0.0);
        assert!(((40f64 * 2.0).exp() * k.c_star_gap - 2.0).abs() < 1e-6);
        assert!((k.g_star + 40.0 + LN_2).abs() < 1e-9);
    }

    #[test]
    fn tilde_c_d_examples() {
        assert!((tilde_c_d(LN_2, 1).unwrap() - 0.5).abs() < 1e-15);
        assert!((tilde_c_d(4f64.ln(), 2).unwrap() - 0.5).abs() < 1e-15);
        let v = tilde_c_d(100.0, 1).unwrap();
        assert!((0.993..1.0).contains(&v));
        assert!(tilde_c_d(1.0, 0).is_err());
    }

    #[test]
    fn ldp_branch_domain() {
        assert!(ldp_rate_discrete(1.0, -0.1).is_err());
        assert!(ldp_rate_discrete(1.0, 1.1).is_err());
        let at_zero = ldp_rate_discrete(1.0, 0.0).unwrap();
        assert_eq!(at_zero.branch, Branch::Auxiliary);
        assert!(at_zero.rate > 0.0 && at_zero.rate.is_finite());
        let at_one = ldp_rate_discrete(1.0, 1.0).unwrap();
        assert_eq!(at_one.branch, Branch::Pinned);
        assert!(at_one.rate.is_finite());
    }

    #[test]
    fn auxiliary_root_large_beta_small_theta() {
        // 2r̃ - θ sits within ~1e-17 of one here
        let p = ldp_rate_discrete(10.0, 0.05).unwrap();
        let r = p.aux_root.unwrap();
        assert!(r > 0.025 && r < 0.525);
        assert!(p.rate.is_finite() && p.rate > 0.0);
    }
}
