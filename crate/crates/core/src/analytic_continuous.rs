//! Constants of the continuous (Wiener sausage) polymer in d = 1.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::analytic_discrete::{Branch, RateEval, RatePoint};
use crate::error::{domain, Result};
use crate::roots::{solve_bracketed, RootResult, DEFAULT_TOLERANCE};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuousConstants {
    pub beta: f64,
    pub d: u32,
    /// `c** = β^{1/3}`.
    pub c_dstar: f64,
    /// `g** = -(3/2) β^{2/3}`.
    pub g_dstar: f64,
    pub sigma_dstar: f64,
    /// Asymptotic prefactor `8/√3` of the partition function.
    pub prefactor: f64,
    /// `½ (β / w_{d-1})^{1/3}`.
    pub beta_tilde_d: f64,
    /// Volume `w_{d-1}` of the unit ball in dimension `d - 1`.
    pub unit_ball_volume: f64,
    /// Lower bound `-(3/2)(β / w_{d-1})^{2/3}` on the free energy in dimension `d`.
    pub free_energy_lower_bound: f64,
}

/// `J(x) = x²/2` for `x >= 0`.
pub fn rate_j(x: f64) -> Result<RateEval> {
    if !(x >= 0.0) {
        return domain(format!("rate J is defined on [0, inf), got x = {x}"));
    }
    Ok(RateEval { x, value: 0.5 * x * x, derivative: x })
}

/// Volume of the unit ball in `k` dimensions, from `w_k = w_{k-2} 2π/k`.
pub fn unit_ball_volume(k: u32) -> f64 {
    let (mut w, start) = if k % 2 == 0 { (1.0, 2) } else { (2.0, 3) };
    let mut j = start;
    while j <= k {
        w *= 2.0 * PI / j as f64;
        j += 2;
    }
    w
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return domain(format!("repelling strength must be positive and finite, got beta = {beta}"));
    }
    Ok(())
}

pub fn continuous_constants(beta: f64, d: u32) -> Result<ContinuousConstants> {
    check_beta(beta)?;
    if d == 0 {
        return domain("dimension must be at least 1");
    }
    let w = unit_ball_volume(d - 1);
    let scaled = beta / w;
    Ok(ContinuousConstants {
        beta,
        d,
        c_dstar: beta.cbrt(),
        g_dstar: -1.5 * beta.cbrt().powi(2),
        sigma_dstar: 3f64.sqrt().recip(),
        prefactor: 8.0 / 3f64.sqrt(),
        beta_tilde_d: 0.5 * scaled.cbrt(),
        unit_ball_volume: w,
        free_energy_lower_bound: -1.5 * scaled.cbrt().powi(2),
    })
}

/// Positive root of `4r³ - 2θr² - β = 0`, i.e. `β = 2r² (2r - θ)`.
pub fn cubic_aux_root(beta: f64, theta: f64) -> Result<RootResult> {
    check_beta(beta)?;
    if !(theta >= 0.0) {
        return domain(format!("theta must be non-negative, got {theta}"));
    }
    let f = |r: f64| (2.0 * r * r * (2.0 * r - theta) - beta, 12.0 * r * r - 4.0 * theta * r);
    let start = theta.max((beta / 4.0).cbrt());
    let hi = theta + (beta / 2.0).cbrt();
    solve_bracketed(f, 0.5 * theta, hi, Some(start), DEFAULT_TOLERANCE * beta.max(1.0))
}

/// Endpoint-speed rate `J^β(θ)` of the continuous model.
pub fn ldp_rate_continuous(beta: f64, theta: f64) -> Result<RatePoint> {
    check_beta(beta)?;
    let threshold = (beta / 2.0).cbrt();
    let branch = if theta >= threshold { Branch::Pinned } else { Branch::Auxiliary };
    ldp_rate_continuous_on(beta, theta, branch)
}

/// Evaluates one branch formula of `J^β` regardless of the threshold.
pub fn ldp_rate_continuous_on(beta: f64, theta: f64, branch: Branch) -> Result<RatePoint> {
    check_beta(beta)?;
    if !(theta >= 0.0 && theta.is_finite()) {
        return domain(format!("endpoint speed must be non-negative, got theta = {theta}"));
    }
    let g = -1.5 * beta.cbrt().powi(2);
    let (rate, aux_root) = match branch {
        Branch::Pinned => {
            if theta == 0.0 {
                return domain("the pinned branch is singular at theta = 0");
            }
            (beta / theta + 0.5 * theta * theta + g, None)
        }
        Branch::Auxiliary => {
            let r = cubic_aux_root(beta, theta)?.value;
            let s = 2.0 * r - theta;
            (beta / r + 0.5 * s * s + g, Some(r))
        }
    };
    Ok(RatePoint { beta, theta, rate, branch, aux_root, threshold: (beta / 2.0).cbrt() })
}

/// Taylor coefficients `a_0..=a_order` of `c ↦ -(β/c + c²/2)` about `c = β^{1/3}`.
///
/// `a_0 = -(3/2)β^{2/3}`, `a_1 = 0`, `a_2 = -3/2`, and `a_k = (-1)^{k+1} β^{(2-k)/3}` for `k >= 3`.
pub fn laplace_exponent_coeffs(beta: f64, order: usize) -> Result<Vec<f64>> {
    check_beta(beta)?;
    if order < 2 {
        return domain("expansion order must be at least 2");
    }
    let c0 = beta.cbrt();
    let coeffs = (0..=order)
        .map(|k| match k {
            0 => -1.5 * c0 * c0,
            1 => 0.0,
            2 => -1.5,
            _ => {
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * beta / c0.powi(k as i32 + 1)
            }
        })
        .collect();
    Ok(coeffs)
}
