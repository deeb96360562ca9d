use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::CompensatedSum;

/// Largest number of prefixes `(2d)^{n-1}` walked by [`exhaustive_range_fraction`].
pub const EXHAUSTIVE_CAP: u64 = 1 << 24;

/// Independent stream for sample `index`; the stream does not depend on how samples are scheduled.
pub fn walk_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkSample {
    pub endpoint: Vec<i64>,
    /// Sites visited by `S_0..S_{n-1}`.
    pub range: usize,
    /// Steps in a positive coordinate direction.
    pub up_steps: usize,
}

/// Visited-site set over coordinates packed into one integer; exact since `|S_i| ≤ n`.
struct VisitedSet {
    set: FxHashSet<u64>,
    offset: i64,
    bits: u32,
}

impl VisitedSet {
    fn new(d: usize, n: usize) -> Result<Self> {
        let bits = 64 - (2 * n as u64).leading_zeros();
        if bits as usize * d > 64 {
            return domain(format!("cannot pack {d} coordinates of magnitude {n} into 64 bits"));
        }
        let mut set = FxHashSet::default();
        set.reserve(n);
        Ok(Self { set, offset: n as i64, bits })
    }

    fn insert(&mut self, site: &[i64]) {
        let key = site.iter().fold(0u64, |k, &c| (k << self.bits) | (c + self.offset) as u64);
        self.set.insert(key);
    }
}

/// Runs `n` steps with directions from `step`: `2j` moves coordinate `j` up, `2j + 1` down.
pub(crate) fn walk_with<R: Rng>(
    d: usize,
    n: usize,
    rng: &mut R,
    mut step: impl FnMut(&mut R) -> usize,
) -> Result<WalkSample> {
    if d == 0 || n == 0 {
        return domain("walks need d >= 1 and n >= 1");
    }
    let mut visited = VisitedSet::new(d, n)?;
    let mut site = vec![0i64; d];
    let (mut lo, mut hi) = (0i64, 0i64);
    let mut up_steps = 0;
    for i in 0..n {
        visited.insert(&site);
        if d == 1 {
            lo = lo.min(site[0]);
            hi = hi.max(site[0]);
        }
        if i + 1 == n {
            break;
        }
        let dir = step(rng);
        site[dir / 2] += if dir % 2 == 0 { 1 } else { -1 };
        up_steps += usize::from(dir % 2 == 0);
    }
    // the final step moves the endpoint without entering the range
    let dir = step(rng);
    site[dir / 2] += if dir % 2 == 0 { 1 } else { -1 };
    up_steps += usize::from(dir % 2 == 0);

    let range = visited.set.len();
    if d == 1 {
        assert_eq!(range as i64, hi - lo + 1, "a one-dimensional trace must be an interval");
    }
    Ok(WalkSample { endpoint: site, range, up_steps })
}

/// Simple random walk of `n` steps on `Z^d` from stream `index` of `seed`.
pub fn sample_walk(d: usize, n: usize, seed: u64, index: u64) -> Result<WalkSample> {
    let mut rng = walk_rng(seed, index);
    walk_with(d, n, &mut rng, |r| r.random_range(0..2 * d))
}

/// Exact `E^{P_n^G}[R_n/n]` on `Z^d` by walking every prefix `S_1..S_{n-1}`.
pub fn exhaustive_range_fraction(d: usize, beta: f64, n: usize) -> Result<f64> {
    if d == 0 || n == 0 {
        return domain("walks need d >= 1 and n >= 1");
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return domain(format!("repelling strength must be non-negative and finite, got {beta}"));
    }
    let paths = (2 * d as u64).checked_pow(n as u32 - 1).filter(|&p| p <= EXHAUSTIVE_CAP);
    if paths.is_none() {
        return Err(Error::ResourceCap { what: "exhaustive walk prefixes", value: n, cap: EXHAUSTIVE_CAP as usize });
    }
    let side = 2 * n + 1;
    let mut visits = vec![0u8; side.pow(d as u32)];
    let mut counts = vec![0u64; n + 1];
    let index = |site: &[usize]| site.iter().fold(0, |k, &c| k * side + c);
    let mut site = vec![n; d];
    visits[index(&site)] = 1;
    fn dfs(
        depth: usize,
        n: usize,
        distinct: usize,
        site: &mut Vec<usize>,
        visits: &mut [u8],
        counts: &mut [u64],
        index: &dyn Fn(&[usize]) -> usize,
    ) {
        if depth + 1 == n {
            counts[distinct] += 1;
            return;
        }
        for j in 0..site.len() {
            for up in [true, false] {
                if up { site[j] += 1 } else { site[j] -= 1 }
                let k = index(site);
                let fresh = visits[k] == 0;
                visits[k] += 1;
                dfs(depth + 1, n, distinct + usize::from(fresh), site, visits, counts, index);
                visits[k] -= 1;
                if up { site[j] -= 1 } else { site[j] += 1 }
            }
        }
    }
    dfs(0, n, 1, &mut site, &mut visits, &mut counts, &index);

    let nf = n as f64;
    let log_w = |r: usize| (counts[r] as f64).ln() - beta * nf * nf / r as f64;
    let shift = (1..=n).filter(|&r| counts[r] > 0).map(log_w).fold(f64::NEG_INFINITY, f64::max);
    let mut num = CompensatedSum::new();
    let mut den = CompensatedSum::new();
    for r in (1..=n).filter(|&r| counts[r] > 0) {
        let w = (log_w(r) - shift).exp();
        num.add(w * r as f64 / nf);
        den.add(w);
    }
    Ok(num.value() / den.value())
}
