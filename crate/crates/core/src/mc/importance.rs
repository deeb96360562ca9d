use rand::Rng;
use serde::{Deserialize, Serialize};

use super::estimate::{McEstimate, McOptions, LOW_ESS_FRACTION};
use super::walk::{walk_rng, walk_with, WalkSample};
use crate::analytic_discrete::{free_energy_g_star, tilde_c_d};
use crate::error::{domain, Result};

/// Functionals of `(S_n, R_n)` estimated under the polymer measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Observable {
    /// `S_n / n` (first coordinate).
    EndpointSpeed,
    /// `S_n / n` given `S_n > 0`.
    PositiveEndpointSpeed,
    /// `R_n / n`.
    RangeFraction,
    /// Euclidean `|S_n|`.
    AbsEndpoint,
    /// `P((S_n - c* n)/(σ* √n) ≤ C | S_n > 0)`.
    PositiveEndpointCdf(f64),
}

impl Observable {
    fn conditional(self) -> bool {
        matches!(self, Self::PositiveEndpointSpeed | Self::PositiveEndpointCdf(_))
    }
}

/// Step law the paths are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Proposal {
    /// Simple random walk on `Z^d`.
    Naive,
    /// One-dimensional walk stepping up with probability `(1 + c)/2`.
    Tilted(f64),
    /// Equal mixture of drifts `+c` and `-c`, for observables not restricted to `S_n > 0`.
    SymmetricTilted(f64),
}

impl Proposal {
    /// Drift `c*(β)`: one-sided for conditional observables, symmetric otherwise; naive at `β = 0`.
    pub fn for_observable(beta: f64, observable: Observable) -> Result<Self> {
        if beta == 0.0 {
            return Ok(Self::Naive);
        }
        let c = free_energy_g_star(beta)?.c_star;
        Ok(if observable.conditional() { Self::Tilted(c) } else { Self::SymmetricTilted(c) })
    }

    fn validate(self, d: usize) -> Result<()> {
        match self {
            Self::Naive => Ok(()),
            Self::Tilted(c) | Self::SymmetricTilted(c) => {
                if d != 1 {
                    return domain("tilted proposals are one-dimensional");
                }
                if !(c > -1.0 && c < 1.0) {
                    return domain(format!("proposal drift must lie in (-1, 1), got {c}"));
                }
                Ok(())
            }
        }
    }
}

/// Draws one path and its log importance weight `-β n²/R_n + ln dP/dQ`.
fn weighted_path(d: usize, n: usize, beta: f64, proposal: Proposal, seed: u64, index: u64) -> Result<(WalkSample, f64)> {
    let mut rng = walk_rng(seed, index);
    let nf = n as f64;
    let (path, log_ratio) = match proposal {
        Proposal::Naive => (walk_with(d, n, &mut rng, |r| r.random_range(0..2 * d))?, 0.0),
        Proposal::Tilted(c) => {
            let up = 0.5 * (1.0 + c);
            let path = walk_with(1, n, &mut rng, |r| usize::from(!r.random_bool(up)))?;
            let ups = path.up_steps as f64;
            let log_q = ups * c.ln_1p() + (nf - ups) * (-c).ln_1p();
            (path, -log_q)
        }
        Proposal::SymmetricTilted(c) => {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let up = 0.5 * (1.0 + sign * c);
            let path = walk_with(1, n, &mut rng, |r| usize::from(!r.random_bool(up)))?;
            let ups = path.up_steps as f64;
            let a = ups * c.ln_1p() + (nf - ups) * (-c).ln_1p();
            let b = ups * (-c).ln_1p() + (nf - ups) * c.ln_1p();
            let m = a.max(b);
            let log_q = m + (0.5 * (a - m).exp() + 0.5 * (b - m).exp()).ln();
            (path, -log_q)
        }
    };
    let log_weight = -beta * nf * nf / path.range as f64 + log_ratio;
    Ok((path, log_weight))
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return domain(format!("repelling strength must be non-negative and finite, got {beta}"));
    }
    Ok(())
}

fn estimate(
    d: usize,
    n: usize,
    beta: f64,
    observable: Observable,
    proposal: Proposal,
    options: McOptions,
) -> Result<McEstimate> {
    check_beta(beta)?;
    proposal.validate(d)?;
    if n == 0 || d == 0 {
        return domain("walks need d >= 1 and n >= 1");
    }
    let nf = n as f64;
    let cdf_scale = match observable {
        Observable::PositiveEndpointCdf(_) => {
            if beta == 0.0 {
                return domain("the endpoint CDF observable is centered at c*(β) and needs β > 0");
            }
            let k = free_energy_g_star(beta)?;
            Some((k.c_star * nf, k.sigma_star * nf.sqrt()))
        }
        _ => None,
    };
    let records = options.run(|index| -> Result<(Option<f64>, f64)> {
        let (path, log_w) = weighted_path(d, n, beta, proposal, options.seed, index)?;
        let s = path.endpoint[0] as f64;
        let value = match observable {
            Observable::EndpointSpeed | Observable::PositiveEndpointSpeed => s / nf,
            Observable::RangeFraction => path.range as f64 / nf,
            Observable::AbsEndpoint => path.endpoint.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt(),
            Observable::PositiveEndpointCdf(c) => {
                let (center, scale) = cdf_scale.expect("set above");
                f64::from(u8::from((s - center) / scale <= c))
            }
        };
        let keep = !observable.conditional() || s > 0.0;
        Ok((keep.then_some(log_w), value))
    })?;
    let (log_weights, values): (Vec<Option<f64>>, Vec<f64>) = records.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip();
    Ok(McEstimate::self_normalized(&log_weights, &values))
}

/// Importance-sampling estimate of `E^{P_n^G}[observable]` for the one-dimensional polymer.
pub fn polymer_estimate_tilted(
    beta: f64,
    n: usize,
    observable: Observable,
    proposal: Proposal,
    options: McOptions,
) -> Result<McEstimate> {
    estimate(1, n, beta, observable, proposal, options)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub beta: f64,
    pub d: usize,
    pub n: usize,
    /// `E^{P_n^G}[R_n/n]` under the naive proposal.
    pub estimate: McEstimate,
    /// `c̃_d(β) = β/(β + ln 2d)`.
    pub bound: f64,
    /// `estimate - 3·std_error ≥ bound - 0.05`.
    pub soft_check_passed: bool,
    /// False once the effective sample size collapses.
    pub reliable: bool,
}

/// Compares the polymer range fraction on `Z^d` against the lower bound `c̃_d(β)`.
pub fn corollary_bound_check(beta: f64, d: usize, n: usize, options: McOptions) -> Result<CorollaryReport> {
    if d < 2 {
        return domain("the range-fraction bound check is for d >= 2");
    }
    let estimate = estimate(d, n, beta, Observable::RangeFraction, Proposal::Naive, options)?;
    let bound = if beta == 0.0 { 0.0 } else { tilde_c_d(beta, d as u32)? };
    Ok(CorollaryReport {
        beta,
        d,
        n,
        estimate,
        bound,
        soft_check_passed: estimate.mean - 3.0 * estimate.std_error >= bound - 0.05,
        reliable: !estimate.low_ess_warning,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloryPoint {
    pub n: usize,
    /// `E^{P_n^G}|S_n|`.
    pub estimate: McEstimate,
    /// Excluded from the fit because the effective sample size collapsed.
    pub dropped: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloryFit {
    pub d: usize,
    pub beta: f64,
    /// Least-squares slope of `ln E|S_n|` against `ln n`.
    pub slope: f64,
    pub intercept: f64,
    pub points: Vec<FloryPoint>,
}

/// Fits the growth exponent of `E^{P_n^G}|S_n|` over `n_grid`.
///
/// In `d = 1` with `β > 0` paths come from the symmetric `c*(β)` proposal; otherwise from the plain walk.
pub fn flory_probe(d: usize, beta: f64, n_grid: &[usize], options: McOptions) -> Result<FloryFit> {
    check_beta(beta)?;
    let proposal = if d == 1 { Proposal::for_observable(beta, Observable::AbsEndpoint)? } else { Proposal::Naive };
    let points = n_grid
        .iter()
        .map(|&n| {
            let estimate = estimate(d, n, beta, Observable::AbsEndpoint, proposal, options)?;
            let dropped = estimate.effective_sample_size < LOW_ESS_FRACTION * options.samples as f64
                || !(estimate.mean > 0.0);
            Ok(FloryPoint { n, estimate, dropped })
        })
        .collect::<Result<Vec<_>>>()?;
    let kept: Vec<(f64, f64)> =
        points.iter().filter(|p| !p.dropped).map(|p| ((p.n as f64).ln(), p.estimate.mean.ln())).collect();
    if kept.len() < 2 {
        return domain("fewer than two usable grid points for the exponent fit");
    }
    let m = kept.len() as f64;
    let (mx, my) = (kept.iter().map(|p| p.0).sum::<f64>() / m, kept.iter().map(|p| p.1).sum::<f64>() / m);
    let sxy: f64 = kept.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = kept.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return domain("exponent fit needs at least two distinct n");
    }
    let slope = sxy / sxx;
    Ok(FloryFit { d, beta, slope, intercept: my - slope * mx, points })
}
