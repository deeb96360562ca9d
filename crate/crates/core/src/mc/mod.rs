//! Seeded Monte Carlo: lattice walks with range tracking, importance sampling
//! of the polymer measure, and discretized Brownian paths.

mod brownian;
mod estimate;
mod importance;
mod walk;

pub use brownian::{brownian_range_mc, BrownianOptions, BrownianRangeMc, Histogram, Histogram2d};
pub use estimate::{McEstimate, McOptions, LOW_ESS_FRACTION};
pub use importance::{
    corollary_bound_check, flory_probe, polymer_estimate_tilted, CorollaryReport, FloryFit, FloryPoint, Observable,
    Proposal,
};
pub use walk::{exhaustive_range_fraction, sample_walk, walk_rng, WalkSample, EXHAUSTIVE_CAP};
