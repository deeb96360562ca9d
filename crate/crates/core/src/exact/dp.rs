use super::law::JointEndpointRangeLaw;
use crate::error::{Error, Result};

/// Largest `n` accepted by the dynamic-programming route.
pub const DP_CAP: usize = 200;

/// Exact joint law by a forward recursion over `(−min, max, position − min)`.
///
/// Only additions of non-negative numbers are involved, so this route has no
/// cancellation and serves as an independent check of the reflection series.
/// Cost grows like `n⁴/24`.
pub fn min_max_dp_law(n: usize) -> Result<JointEndpointRangeLaw> {
    if n == 0 {
        return Err(Error::Domain("walk length must be at least 1".into()));
    }
    if n > DP_CAP {
        return Err(Error::ResourceCap { what: "n (dynamic program)", value: n, cap: DP_CAP });
    }
    let m = n - 1;
    let side = m + 2;
    let idx = |l: usize, u: usize, p: usize| (l * side + u) * side + p;
    let mut cur = vec![0.0f64; side * side * side];
    let mut next = cur.clone();
    cur[idx(0, 0, 0)] = 1.0;
    for t in 0..m {
        next.iter_mut().for_each(|v| *v = 0.0);
        for l in 0..=t {
            for u in 0..=(t - l) {
                for p in 0..=(l + u) {
                    let q = cur[idx(l, u, p)];
                    if q == 0.0 {
                        continue;
                    }
                    let half = 0.5 * q;
                    if p == l + u {
                        next[idx(l, u + 1, p + 1)] += half;
                    } else {
                        next[idx(l, u, p + 1)] += half;
                    }
                    if p == 0 {
                        next[idx(l + 1, u, 0)] += half;
                    } else {
                        next[idx(l, u, p - 1)] += half;
                    }
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let mut law = JointEndpointRangeLaw::zeros(n);
    for l in 0..=m {
        for u in 0..=(m - l) {
            for p in 0..=(l + u) {
                let q = cur[idx(l, u, p)];
                if q == 0.0 {
                    continue;
                }
                let r = l + u + 1;
                let x = p as i64 - l as i64;
                law.set(x + 1, r, law.get(x + 1, r) + 0.5 * q);
                law.set(x - 1, r, law.get(x - 1, r) + 0.5 * q);
            }
        }
    }
    Ok(law)
}
