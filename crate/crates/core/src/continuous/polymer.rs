//! Quadratures under the continuous polymer measure `exp(-β t²/ρ(R_t))`.


use serde::{Deserialize, Serialize};

use super::quadrature::{insert_breaks, integrate_panels_n, uniform_breaks, QuadratureResult};
use super::series::{joint_density_scaled, range_density_scaled, SeriesOptions};
use crate::error::{domain, Result};
use crate::numeric::{normal_cdf, LN_SQRT_2PI};

const MAX_PANELS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuousQuadOptions {
    pub series: SeriesOptions,
    /// Panel width in units of `√t`.
    pub panel_width: f64,
    /// The upper cut stops once the integrand falls below this fraction of its peak.
    pub tail_tol: f64,
    /// Weight by `exp(-β t²/(r + 2))` instead of `exp(-β t²/r)`.
    pub use_exact_radius: bool,
}

impl Default for ContinuousQuadOptions {
    fn default() -> Self {
        Self { series: SeriesOptions::default(), panel_width: 0.25, tail_tol: 1e-18, use_exact_radius: false }
    }
}

/// `Z_t^G` reported relative to its leading exponential `exp(g** t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuousPartition {
    pub beta: f64,
    pub t: f64,
    pub use_exact_radius: bool,
    /// Quadrature of `Z_t^G · exp(-g** t)` over `[lower_cut, upper_cut]`.
    pub scaled: QuadratureResult,
    /// `ln Z_t^G`.
    pub log_value: f64,
    /// `Z_t^G / ((8/√3) exp(g** t))`.
    pub ratio_to_asymptote: f64,
    pub lower_cut: f64,
    pub upper_cut: f64,
    /// `ln` of the mass below the lower cut, `-inf` if it underflows.
    pub below_cut_log_mass: f64,
    /// `-2 β^{2/3} t`, the log bound that mass must respect.
    pub below_cut_log_bound: f64,
}

/// A polymer-measure probability next to its Gaussian limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPoint {
    pub c: f64,
    pub probability: f64,
    /// The limiting value (`1 - Φ(C)` for range tails, `Φ(C)` for endpoint CDFs).
    pub reference: f64,
    pub abs_error_estimate: f64,
}

struct Window {
    speed: f64,
    st: f64,
    breaks: Vec<f64>,
    options: ContinuousQuadOptions,
    beta: f64,
    t: f64,
}

impl Window {
    fn radius(&self, r: f64) -> f64 {
        if self.options.use_exact_radius {
            r + 2.0
        } else {
            r
        }
    }

    /// Log of `exp(-β t²/ρ - g** t)`.
    fn log_weight(&self, r: f64) -> f64 {
        -self.beta * self.t * self.t / self.radius(r) + 1.5 * self.speed * self.speed * self.t
    }

    fn range_weight(&self, r: f64) -> Result<f64> {
        Ok(range_density_scaled(self.t, r, self.log_weight(r), self.options.series)?.value)
    }
}

fn check(beta: f64, t: f64, options: &ContinuousQuadOptions) -> Result<()> {
    if !(beta > 0.0 && beta.is_finite()) {
        return domain(format!("repelling strength must be positive and finite, got beta = {beta}"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return domain(format!("time horizon must be positive, got t = {t}"));
    }
    if !(options.panel_width > 0.0 && options.tail_tol > 0.0) {
        return domain("panel width and tail tolerance must be positive");
    }
    Ok(())
}

/// Lower cut `½β^{1/3}t`, then panels of width `panel_width·√t` past the saddle until the tail is negligible.
fn window(beta: f64, t: f64, options: ContinuousQuadOptions) -> Result<Window> {
    check(beta, t, &options)?;
    let speed = beta.cbrt();
    let st = t.sqrt();
    let lo = 0.5 * speed * t;
    if lo / st < options.series.floor {
        return domain(format!(
            "lower cut ½β^(1/3)t = {lo} lies below the series floor {} √t; increase t",
            options.series.floor
        ));
    }
    let mut win = Window { speed, st, breaks: vec![lo], options, beta, t };
    let width = options.panel_width * st;
    let mut peak = win.range_weight(lo)?.abs();
    let mut r = lo;
    for _ in 0..MAX_PANELS {
        r += width;
        win.breaks.push(r);
        let h = win.range_weight(r)?.abs();
        peak = peak.max(h);
        if r > speed * t && h <= options.tail_tol * peak {
            return Ok(win);
        }
    }
    domain("upper cut of the range quadrature did not settle")
}

/// Continuous partition function `E exp(-β t²/ρ(R_t))`, restricted to `R_t ≥ ½β^{1/3}t`.
pub fn partition_function_continuous(beta: f64, t: f64, options: ContinuousQuadOptions) -> Result<ContinuousPartition> {
    let win = window(beta, t, options)?;
    let ([value], [err], nodes) = integrate_panels_n(|r| Ok([win.range_weight(r)?]), &win.breaks)?;
    let (lower_cut, upper_cut) = (win.breaks[0], win.breaks[win.breaks.len() - 1]);
    let g = -1.5 * win.speed * win.speed;

    // mass below the cut, scaled by exp(2β^{2/3}t) so that the bound reads ≤ 1
    let below_shift = 2.0 * win.speed * win.speed * t;
    let floor_r = options.series.floor * win.st;
    let below = if lower_cut > floor_r {
        let breaks = uniform_breaks(floor_r, lower_cut, options.panel_width * win.st, &[]);
        let weight = |r: f64| {
            let log_w = -beta * t * t / win.radius(r) + below_shift;
            Ok([range_density_scaled(t, r, log_w, options.series)?.value.max(0.0)])
        };
        integrate_panels_n(weight, &breaks)?.0[0]
    } else {
        0.0
    };

    Ok(ContinuousPartition {
        beta,
        t,
        use_exact_radius: options.use_exact_radius,
        scaled: QuadratureResult { value, abs_error_estimate: err, nodes, domain: vec![(lower_cut, upper_cut)] },
        log_value: value.ln() + g * t,
        ratio_to_asymptote: value * 3f64.sqrt() / 8.0,
        lower_cut,
        upper_cut,
        below_cut_log_mass: below.ln() - below_shift,
        below_cut_log_bound: -below_shift,
    })
}

/// `P_t^G((R_t - β^{1/3}t)/(√t/√3) > C)`, compared against `1 - Φ(C)`.
pub fn range_second_order_cdf(beta: f64, t: f64, c: f64, options: ContinuousQuadOptions) -> Result<TailPoint> {
    if c.is_nan() {
        return domain("C must not be NaN");
    }
    let mut win = window(beta, t, options)?;
    let cut = win.speed * t + c * win.st / 3f64.sqrt();
    insert_breaks(&mut win.breaks, &[cut]);
    let ([total, tail], [e_total, e_tail], _) = integrate_panels_n(
        |r| {
            let h = win.range_weight(r)?;
            Ok([h, if r > cut { h } else { 0.0 }])
        },
        &win.breaks,
    )?;
    let probability = (tail / total).clamp(0.0, 1.0);
    Ok(TailPoint {
        c,
        probability,
        reference: 1.0 - normal_cdf(c),
        abs_error_estimate: (e_tail + probability * e_total) / total,
    })
}

/// Inner breakpoints in `x ∈ (0, r)`, graded toward `x = r` where the joint density concentrates.
fn inner_breaks(r: f64, scale: f64, extra: f64) -> Vec<f64> {
    const GRADES: [f64; 8] = [0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0];
    let mut breaks = vec![0.0, r];
    let mut u = 0.0;
    let mut offsets: Vec<f64> = GRADES.iter().map(|g| g * scale).collect();
    while u < r {
        u = offsets.last().copied().unwrap_or(scale) * 1.5;
        offsets.push(u);
    }
    let points: Vec<f64> = offsets.iter().map(|o| r - o).chain(std::iter::once(extra)).collect();
    insert_breaks(&mut breaks, &points);
    breaks
}

/// `P_t^G((B_t - β^{1/3}t)/(√t/√3) ≤ C | B_t > 0)`, compared against `Φ(C)`.
///
/// Two-dimensional quadrature of the joint density of `(B_t, R_t)` over
/// `0 < x < r`, with `r` in the same window as the partition function.
pub fn endpoint_clt_continuous(beta: f64, t: f64, c: f64, options: ContinuousQuadOptions) -> Result<TailPoint> {
    endpoint_clt_with(beta, t, c, options, |win, r, x_cut| {
        let log_w = win.log_weight(r);
        let inner = inner_breaks(r, t / r, x_cut);
        let ([total, below], [e_total, e_below], _) = integrate_panels_n(
            |x| {
                let f = joint_density_scaled(t, x, r, log_w, win.options.series)?.value;
                Ok([f, if x < x_cut { f } else { 0.0 }])
            },
            &inner,
        )?;
        Ok([total, below, e_total, e_below])
    })
}

/// The same probability keeping only the leading Gaussian term of the joint density,
/// whose `x`-integral is in closed form.
pub fn endpoint_clt_leading_term(beta: f64, t: f64, c: f64, options: ContinuousQuadOptions) -> Result<TailPoint> {
    endpoint_clt_with(beta, t, c, options, |win, r, x_cut| {
        let log_w = win.log_weight(r);
        // antiderivative in u = 2r - x of (u - r)(u²/t - 1)φ(u/√t)
        let anti = |u: f64| (log_w - 0.5 * u * u / t - LN_SQRT_2PI).exp() * (-u * u + r * u - t);
        let scale = 4.0 / (t * win.st);
        let total = scale * (anti(2.0 * r) - anti(r));
        let upper = x_cut.clamp(0.0, r);
        let below = scale * (anti(2.0 * r) - anti(2.0 * r - upper));
        Ok([total, below, 0.0, 0.0])
    })
}

fn endpoint_clt_with<F>(beta: f64, t: f64, c: f64, options: ContinuousQuadOptions, inner: F) -> Result<TailPoint>
where
    F: Fn(&Window, f64, f64) -> Result<[f64; 4]>,
{
    if c.is_nan() {
        return domain("C must not be NaN");
    }
    let win = window(beta, t, options)?;
    let x_cut = win.speed * t + c * win.st / 3f64.sqrt();
    // worst relative error of the inner x-integrals over all outer nodes
    let mut inner_rel = 0.0f64;
    let ([total, below, _, _], [e_total, e_below, _, _], _) = integrate_panels_n(
        |r| {
            let v = inner(&win, r, x_cut)?;
            if v[0] != 0.0 {
                inner_rel = inner_rel.max((v[2] + v[3]) / v[0].abs());
            }
            Ok(v)
        },
        &win.breaks,
    )?;
    let probability = (below / total).clamp(0.0, 1.0);
    Ok(TailPoint {
        c,
        probability,
        reference: normal_cdf(c),
        abs_error_estimate: (e_below + probability * e_total) / total + 2.0 * inner_rel,
    })
}
