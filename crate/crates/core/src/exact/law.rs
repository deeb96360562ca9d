use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::reflection::min_max_endpoint;
use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, WalkPointLaw};

/// Default ceiling on `n` for the reflection route.
pub const DEFAULT_EXACT_CAP: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointLawOptions {
    pub cap: usize,
}

impl Default for JointLawOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_EXACT_CAP }
    }
}

/// Probability table over `(x, r)`: endpoint `x = S_n`, range `r` of `S_0..S_{n-1}`.
///
/// Stored densely over `x ∈ [-n, n]`, `r ∈ [1, n]`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointEndpointRangeLaw {
    n: usize,
    probs: Vec<f64>,
}

impl JointEndpointRangeLaw {
    pub(crate) fn zeros(n: usize) -> Self {
        Self { n, probs: vec![0.0; (2 * n + 1) * n] }
    }

    pub(crate) fn from_columns(n: usize, columns: Vec<Vec<f64>>) -> Self {
        let mut law = Self::zeros(n);
        for (ri, column) in columns.into_iter().enumerate() {
            for (xi, p) in column.into_iter().enumerate() {
                law.probs[xi * n + ri] = p;
            }
        }
        law
    }

    #[inline]
    fn index(&self, x: i64, r: usize) -> Option<usize> {
        let n = self.n as i64;
        if x < -n || x > n || r == 0 || r > self.n {
            None
        } else {
            Some((x + n) as usize * self.n + (r - 1))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: i64, r: usize) -> f64 {
        self.index(x, r).map_or(0.0, |i| self.probs[i])
    }

    pub(crate) fn set(&mut self, x: i64, r: usize, p: f64) {
        let i = self.index(x, r).expect("entry outside the support grid");
        self.probs[i] = p;
    }

    /// Non-zero entries `(x, r, p)`, ordered by `x` then `r`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, usize, f64)> + '_ {
        let n = self.n;
        self.probs.iter().enumerate().filter(|(_, p)| **p != 0.0).map(move |(i, &p)| {
            let x = (i / n) as i64 - n as i64;
            (x, i % n + 1, p)
        })
    }

    pub fn total_mass(&self) -> f64 {
        self.probs.iter().copied().collect::<CompensatedSum>().value()
    }

    /// `P(S_n = x)` for `x ∈ [-n, n]`.
    pub fn endpoint_marginal(&self) -> Vec<(i64, f64)> {
        let n = self.n as i64;
        (-n..=n)
            .map(|x| {
                let row = (x + n) as usize * self.n;
                let p = self.probs[row..row + self.n].iter().copied().collect::<CompensatedSum>();
                (x, p.value())
            })
            .collect()
    }

    /// `P(R_n = r)` for `r ∈ [1, n]`.
    pub fn range_marginal(&self) -> Vec<(usize, f64)> {
        let n = self.n as i64;
        (1..=self.n)
            .map(|r| (r, (-n..=n).map(|x| self.get(x, r)).collect::<CompensatedSum>().value()))
            .collect()
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "laws at different n");
        self.probs.iter().zip(&other.probs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub(crate) fn map_probs(&self, f: impl Fn(i64, usize, f64) -> f64) -> Self {
        let n = self.n;
        let probs = self
            .probs
            .iter()
            .enumerate()
            .map(|(i, &p)| f((i / n) as i64 - n as i64, i % n + 1, p))
            .collect();
        Self { n, probs }
    }
}

/// Exact joint law of `(S_n, R_n)` via the reflection series.
///
/// The law of `(min, max, S_{n-1})` is summed over level pairs of equal width;
/// the last step moves the endpoint without touching the range. Columns of
/// constant range are built in parallel and each entry is summed in a fixed
/// order, so the table does not depend on the thread count.
pub fn joint_law_exact(n: usize, options: JointLawOptions) -> Result<JointEndpointRangeLaw> {
    if n == 0 {
        return Err(Error::Domain("walk length must be at least 1".into()));
    }
    if n > options.cap {
        return Err(Error::ResourceCap { what: "n", value: n, cap: options.cap });
    }
    let m = n - 1;
    let ni = n as i64;
    if m == 0 {
        let mut law = JointEndpointRangeLaw::zeros(1);
        law.set(-1, 1, 0.5);
        law.set(1, 1, 0.5);
        return Ok(law);
    }
    let walk = WalkPointLaw::new(m);
    let columns: Vec<Vec<f64>> = (1..=n)
        .into_par_iter()
        .map(|r| {
            let mut column = vec![CompensatedSum::new(); 2 * n + 1];
            let width = (r - 1) as i64;
            if width == 0 {
                return vec![0.0; 2 * n + 1];
            }
            for lower in -width..=0 {
                let upper = lower + width;
                // X ≡ m (mod 2)
                let first = if (lower - m as i64).rem_euclid(2) == 0 { lower } else { lower + 1 };
                let mut x = first;
                while x <= upper {
                    let q = min_max_endpoint(&walk, lower, upper, x);
                    if q > 0.0 {
                        column[(x + 1 + ni) as usize].add(0.5 * q);
                        column[(x - 1 + ni) as usize].add(0.5 * q);
                    }
                    x += 2;
                }
            }
            column.into_iter().map(|c| c.value()).collect()
        })
        .collect();
    Ok(JointEndpointRangeLaw::from_columns(n, columns))
}
