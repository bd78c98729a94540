//! Exact frequencies, trigonometric polynomials, mean values and the
//! mean-value seminorms computed on a torus lift.

pub mod base;
pub mod frequency;
pub mod mean;
pub mod torus;
pub mod trigpoly;

pub use base::RealBase;
pub use frequency::Frequency;
pub use mean::{numeric_mean, scaled_average, Bump1d, CubeRule, MeanEstimate, MeanSample, TensorBump};
pub use torus::{
    besicovitch_norm, besicovitch_norm_on, ess_sup, ess_sup_on, excess_mean, excess_mean_on, value_range, TorusGrid,
    TorusIntegral, TorusSampler,
};
pub use trigpoly::TrigPoly;
