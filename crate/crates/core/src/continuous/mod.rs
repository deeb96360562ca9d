//! Brownian range densities and quadratures of the continuous polymer.

mod polymer;
mod quadrature;
mod series;

pub use polymer::{
    endpoint_clt_continuous, endpoint_clt_leading_term, partition_function_continuous,
    range_second_order_cdf, ContinuousPartition, ContinuousQuadOptions, TailPoint,
};
pub use quadrature::{integrate_panels, QuadratureResult, GL_ORDER};
pub use series::{joint_density, range_density, SeriesEval, SeriesOptions, DEFAULT_FLOOR};
