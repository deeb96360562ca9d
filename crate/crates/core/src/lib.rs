//! Numerical laboratory for range-based self-repelling polymers.
//!
//! The discrete model reweights the simple random walk by `exp(-β n²/R_n)`,
//! where `R_n` is the number of sites visited by `S_0..S_{n-1}`; the
//! continuous model reweights Brownian motion by `exp(-β t²/R_t¹)` with the
//! radius-one Wiener sausage. Modules:
//!
//! * [`analytic_discrete`] / [`analytic_continuous`]: speeds, free energies,
//!   spreads and endpoint rate functions;
//! * [`exact`]: exact finite-n joint laws of endpoint and range;
//! * [`continuous`]: Feller's range density, the joint endpoint/range
//!   density and quadratures of the continuous polymer;
//! * [`mc`]: seeded Monte Carlo with exponentially tilted proposals;
//! * [`export`]: CSV/JSON writers and run manifests.

pub mod analytic_continuous;
pub mod analytic_discrete;
pub mod continuous;
pub mod error;
pub mod exact;
pub mod export;
pub mod mc;
pub mod numeric;
pub mod roots;

pub use analytic_continuous::{continuous_constants, ldp_rate_continuous, ContinuousConstants};
pub use analytic_discrete::{
    free_energy_g_star, ldp_rate_discrete, rate_i, sigma_star, speed_c_star, tilde_c_d, Branch,
    PolymerConstants, RateEval, RatePoint,
};
pub use error::{Error, Result};
pub use exact::{JointEndpointRangeLaw, PolymerLaw};
pub use roots::RootResult;
pub use continuous::{QuadratureResult, SeriesEval};
pub use mc::McEstimate;
