//! Composite Gauss–Legendre quadrature with a panel-halving error estimate.

use std::sync::OnceLock;

use gauss_quad::legendre::GaussLegendre;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::numeric::CompensatedSum;

/// Nodes per panel.
pub const GL_ORDER: usize = 20;
const ROUNDING_ULPS: f64 = 16.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    /// Value on the halved panels.
    pub value: f64,
    /// `|fine - coarse|` between the panel grid and its halving, plus a rounding floor.
    pub abs_error_estimate: f64,
    /// Integrand evaluations of the fine pass.
    pub nodes: usize,
    pub domain: Vec<(f64, f64)>,
}

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(GL_ORDER).expect("order >= 2")).as_node_weight_pairs()
}

fn panel<const N: usize, F>(
    f: &mut F,
    a: f64,
    b: f64,
    acc: &mut [CompensatedSum; N],
    magnitude: Option<&mut [CompensatedSum; N]>,
) -> Result<()>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
    let mut magnitude = magnitude;
    for &(x, w) in rule() {
        let v = f(mid + half * x)?;
        for (i, vi) in v.into_iter().enumerate() {
            acc[i].add(half * w * vi);
            if let Some(m) = magnitude.as_deref_mut() {
                m[i].add((half * w * vi).abs());
            }
        }
    }
    Ok(())
}

/// Integrates `N` functions at once over consecutive panels `[breaks[i], breaks[i+1]]`.
///
/// Returns the fine values, their error estimates and the fine node count.
pub(crate) fn integrate_panels_n<const N: usize, F>(mut f: F, breaks: &[f64]) -> Result<([f64; N], [f64; N], usize)>
where
    F: FnMut(f64) -> Result<[f64; N]>,
{
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[0] < w[1])) {
        return domain("quadrature breakpoints must be strictly increasing with at least two entries");
    }
    let mut coarse: [CompensatedSum; N] = std::array::from_fn(|_| CompensatedSum::new());
    let mut fine: [CompensatedSum; N] = std::array::from_fn(|_| CompensatedSum::new());
    let mut magnitude: [CompensatedSum; N] = std::array::from_fn(|_| CompensatedSum::new());
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let m = 0.5 * (a + b);
        panel(&mut f, a, b, &mut coarse, None)?;
        panel(&mut f, a, m, &mut fine, Some(&mut magnitude))?;
        panel(&mut f, m, b, &mut fine, Some(&mut magnitude))?;
    }
    let value: [f64; N] = std::array::from_fn(|i| fine[i].value());
    // integrand values carry a few ulps of rounding each
    let error: [f64; N] = std::array::from_fn(|i| {
        (fine[i].value() - coarse[i].value()).abs() + ROUNDING_ULPS * f64::EPSILON * magnitude[i].value()
    });
    Ok((value, error, 2 * GL_ORDER * (breaks.len() - 1)))
}

/// Integrates `f` over the panels delimited by `breaks`.
pub fn integrate_panels<F>(mut f: F, breaks: &[f64]) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let ([value], [abs_error_estimate], nodes) = integrate_panels_n(|x| Ok([f(x)?]), breaks)?;
    Ok(QuadratureResult { value, abs_error_estimate, nodes, domain: vec![(breaks[0], breaks[breaks.len() - 1])] })
}

/// Breakpoints covering `[a, b]` with panels no wider than `width`, plus any interior `extra` points.
pub(crate) fn uniform_breaks(a: f64, b: f64, width: f64, extra: &[f64]) -> Vec<f64> {
    let panels = ((b - a) / width).ceil().max(1.0) as usize;
    let mut breaks: Vec<f64> = (0..=panels).map(|i| a + (b - a) * i as f64 / panels as f64).collect();
    *breaks.last_mut().expect("non-empty") = b;
    insert_breaks(&mut breaks, extra);
    breaks
}

pub(crate) fn insert_breaks(breaks: &mut Vec<f64>, extra: &[f64]) {
    let (a, b) = (breaks[0], breaks[breaks.len() - 1]);
    breaks.extend(extra.iter().copied().filter(|&e| e > a && e < b));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
}
