//! Piecewise polynomial fluxes, wave-speed bounds, the non-degeneracy test and
//! traveling-wave solutions for degenerate directions.

pub mod counterexample;
pub mod nd;
pub mod piecewise;
pub mod poly;
pub mod scalar;

pub use counterexample::{make_counterexample, TravelingWave};
pub use nd::{is_affine_on_piece, nd_check, nd_check_f64, NdReport, NdWitness, Verdict};
pub use piecewise::PiecewiseFlux;
pub use scalar::ScalarFlux;
