//! Exact finite-n laws of the one-dimensional walk.
//!
//! Three independent routes produce the joint law of `(S_n, R_n)`, where
//! `R_n` counts the sites visited by `S_0..S_{n-1}`:
//!
//! * [`enumerate_joint_law`]: exhaustive path enumeration with integer counts (n ≤ 24);
//! * [`joint_law_exact`]: the reflection series for `(min, max, S_{n-1})`
//!   aggregated over level pairs, then one free step to `S_n`;
//! * [`min_max_dp_law`]: forward dynamic program over `(min, max, position)`.

mod dp;
mod enumerate;
mod law;
mod polymer;
mod reflection;

pub use dp::{min_max_dp_law, DP_CAP};
pub use enumerate::{enumerate_counts, enumerate_joint_law, ENUMERATION_CAP};
pub use law::{joint_law_exact, JointEndpointRangeLaw, JointLawOptions, DEFAULT_EXACT_CAP};
pub use polymer::{
    clt_check, clt_check_law, free_energy_sequence, ldp_empirical, polymer_law, EmpiricalRate,
    FreeEnergyPoint, KsReport, PolymerLaw,
};
pub use reflection::{reflection_min_max_endpoint, strip_probability};
