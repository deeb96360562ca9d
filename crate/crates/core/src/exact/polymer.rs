//! Polymer-tilted laws and finite-n checks built on the exact joint law.

use serde::{Deserialize, Serialize};

use super::law::{joint_law_exact, JointEndpointRangeLaw, JointLawOptions};
use crate::analytic_discrete::free_energy_g_star;
use crate::error::{domain, Result};
use crate::numeric::{normal_cdf, CompensatedSum};

/// The walk law reweighted by `exp(-β n²/R_n)`.
#[derive(Debug, Clone)]
pub struct PolymerLaw {
    pub beta: f64,
    pub n: usize,
    tilted: JointEndpointRangeLaw,
    /// `ln Z_n^G`; `Z` itself underflows for large `βn`.
    pub log_partition: f64,
}

impl PolymerLaw {
    pub fn partition(&self) -> f64 {
        self.log_partition.exp()
    }

    pub fn tilted(&self) -> &JointEndpointRangeLaw {
        &self.tilted
    }

    /// Endpoint law conditioned on `S_n > 0`, as `(x, p)` with `x` ascending.
    pub fn positive_endpoint_law(&self) -> Vec<(i64, f64)> {
        let positive: Vec<(i64, f64)> =
            self.tilted.endpoint_marginal().into_iter().filter(|&(x, p)| x > 0 && p > 0.0).collect();
        let total = positive.iter().map(|&(_, p)| p).collect::<CompensatedSum>().value();
        positive.into_iter().map(|(x, p)| (x, p / total)).collect()
    }

    /// `E[S_n / n | S_n > 0]`.
    pub fn conditional_speed_mean(&self) -> f64 {
        let n = self.n as f64;
        self.positive_endpoint_law().iter().map(|&(x, p)| p * x as f64 / n).collect::<CompensatedSum>().value()
    }

    /// `Var(S_n | S_n > 0) / n`.
    pub fn conditional_scaled_variance(&self) -> f64 {
        let law = self.positive_endpoint_law();
        let mean = law.iter().map(|&(x, p)| p * x as f64).collect::<CompensatedSum>().value();
        let var = law.iter().map(|&(x, p)| p * (x as f64 - mean).powi(2)).collect::<CompensatedSum>().value();
        var / self.n as f64
    }

    /// `E[R_n / n]`.
    pub fn range_fraction_mean(&self) -> f64 {
        let n = self.n as f64;
        self.tilted.entries().map(|(_, r, p)| p * r as f64 / n).collect::<CompensatedSum>().value()
    }
}

/// Tilts a joint law by `exp(-β n²/r)`, normalizing in log space.
pub fn polymer_law(beta: f64, base: &JointEndpointRangeLaw) -> Result<PolymerLaw> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return domain(format!("repelling strength must be non-negative and finite, got {beta}"));
    }
    let n = base.n();
    let nf = n as f64;
    let log_weight = |r: usize, p: f64| if p > 0.0 { p.ln() - beta * nf * nf / r as f64 } else { f64::NEG_INFINITY };
    let shift = base.entries().map(|(_, r, p)| log_weight(r, p)).fold(f64::NEG_INFINITY, f64::max);
    let scaled = base.map_probs(|_, r, p| if p > 0.0 { (log_weight(r, p) - shift).exp() } else { 0.0 });
    let total = scaled.total_mass();
    let tilted = scaled.map_probs(|_, _, p| p / total);
    Ok(PolymerLaw { beta, n, tilted, log_partition: shift + total.ln() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergyPoint {
    pub n: usize,
    /// `(1/n) ln Z_n^G`.
    pub free_energy: f64,
}

/// `(1/n) ln Z_n^G` for each requested `n`.
pub fn free_energy_sequence(beta: f64, n_list: &[usize], options: JointLawOptions) -> Result<Vec<FreeEnergyPoint>> {
    n_list
        .iter()
        .map(|&n| {
            let law = joint_law_exact(n, options)?;
            let polymer = polymer_law(beta, &law)?;
            Ok(FreeEnergyPoint { n, free_energy: polymer.log_partition / n as f64 })
        })
        .collect()
}

/// Kolmogorov–Smirnov distance between a normalized lattice law and Φ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub beta: f64,
    pub n: usize,
    pub ks: f64,
    /// Centering `c* n` (zero for the free walk).
    pub center: f64,
    /// Scale `σ* √n` (`√n` for the free walk).
    pub scale: f64,
    /// Diagnostic: largest `|F(x-) + p(x)/2 - Φ(z)|` over atoms, which removes the lattice jump.
    pub ks_midpoint: f64,
    /// Diagnostic: `center - E[S_n]` under the law being tested.
    pub mean_offset: f64,
}

/// KS distance of `(S_n - c* n)/(σ* √n)` given `S_n > 0` from the standard normal.
///
/// For `β = 0` the free walk is used unconditioned, centered at zero with unit spread.
pub fn clt_check_law(polymer: &PolymerLaw) -> Result<KsReport> {
    let n = polymer.n as f64;
    let (law, center, scale) = if polymer.beta == 0.0 {
        (polymer.tilted.endpoint_marginal(), 0.0, n.sqrt())
    } else {
        let k = free_energy_g_star(polymer.beta)?;
        (polymer.positive_endpoint_law(), k.c_star * n, k.sigma_star * n.sqrt())
    };
    let mean = law.iter().map(|&(x, p)| p * x as f64).collect::<CompensatedSum>().value();
    let mut cdf = CompensatedSum::new();
    let (mut ks, mut ks_midpoint) = (0.0f64, 0.0f64);
    for (x, p) in law.into_iter().filter(|&(_, p)| p > 0.0) {
        let z = (x as f64 - center) / scale;
        let phi = normal_cdf(z);
        ks = ks.max((cdf.value() - phi).abs());
        ks_midpoint = ks_midpoint.max((cdf.value() + 0.5 * p - phi).abs());
        cdf.add(p);
        ks = ks.max((cdf.value() - phi).abs());
    }
    Ok(KsReport { beta: polymer.beta, n: polymer.n, ks, center, scale, ks_midpoint, mean_offset: center - mean })
}

pub fn clt_check(beta: f64, n: usize, options: JointLawOptions) -> Result<KsReport> {
    let law = joint_law_exact(n, options)?;
    clt_check_law(&polymer_law(beta, &law)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalRate {
    pub theta: f64,
    /// Lowest lattice endpoint in the window.
    pub x: i64,
    pub probability: f64,
    /// `-(1/n) ln P`; `+inf` for an empty window.
    pub rate: f64,
}

/// Empirical rates `-(1/n) ln P_n^{G,+}(S_n ∈ window(θ))`.
///
/// The window holds `window_points` consecutive endpoints of the right parity,
/// starting at the admissible endpoint nearest `θn`; `window_points = 1` is the
/// narrowest non-empty window.
pub fn ldp_empirical(polymer: &PolymerLaw, theta_grid: &[f64], window_points: usize) -> Result<Vec<EmpiricalRate>> {
    if window_points == 0 {
        return domain("window must contain at least one lattice point");
    }
    let n = polymer.n as i64;
    let law = polymer.positive_endpoint_law();
    let prob_at = |x: i64| law.iter().find(|&&(y, _)| y == x).map_or(0.0, |&(_, p)| p);
    theta_grid
        .iter()
        .map(|&theta| {
            if !(0.0..=1.0).contains(&theta) {
                return domain(format!("theta must lie in [0, 1], got {theta}"));
            }
            let target = theta * n as f64;
            // nearest x ≡ n (mod 2) with x ≥ 1
            let mut x = target.round() as i64;
            if (x - n).rem_euclid(2) != 0 {
                x += if (x as f64) < target { 1 } else { -1 };
            }
            let smallest = if n % 2 == 0 { 2 } else { 1 };
            let x = x.max(smallest);
            let probability: f64 = (0..window_points as i64).map(|k| prob_at(x + 2 * k)).sum();
            let rate = if probability > 0.0 { -probability.ln() / n as f64 } else { f64::INFINITY };
            Ok(EmpiricalRate { theta, x, probability, rate })
        })
        .collect()
}
