use std::collections::BTreeMap;

use super::law::JointEndpointRangeLaw;
use crate::error::{Error, Result};

/// Largest `n` accepted by exhaustive enumeration.
pub const ENUMERATION_CAP: usize = 24;

/// Path counts keyed by `(x, r)`; they sum to `2^n`.
pub fn enumerate_counts(n: usize) -> Result<BTreeMap<(i64, usize), u64>> {
    if n == 0 {
        return Err(Error::Domain("walk length must be at least 1".into()));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::ResourceCap { what: "n (enumeration)", value: n, cap: ENUMERATION_CAP });
    }
    let mut counts = BTreeMap::new();
    // walk S_0..S_{n-1}, then branch on the final step
    visit(n - 1, 0, 0, 0, &mut counts);
    Ok(counts)
}

fn visit(remaining: usize, pos: i64, min: i64, max: i64, counts: &mut BTreeMap<(i64, usize), u64>) {
    if remaining == 0 {
        let r = (max - min + 1) as usize;
        *counts.entry((pos - 1, r)).or_insert(0) += 1;
        *counts.entry((pos + 1, r)).or_insert(0) += 1;
        return;
    }
    for step in [-1, 1] {
        let next = pos + step;
        visit(remaining - 1, next, min.min(next), max.max(next), counts);
    }
}

/// Exact joint law by brute force over all `2^n` paths.
pub fn enumerate_joint_law(n: usize) -> Result<JointEndpointRangeLaw> {
    let counts = enumerate_counts(n)?;
    let scale = 0.5f64.powi(n as i32);
    let mut law = JointEndpointRangeLaw::zeros(n);
    for ((x, r), c) in counts {
        law.set(x, r, c as f64 * scale);
    }
    Ok(law)
}
