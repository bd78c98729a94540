//! Entropy solutions of scalar conservation laws with almost-periodic initial
//! data, computed on a torus lift of the data's frequency group.
//!
//! Data are trigonometric polynomials with exact rational frequencies over a
//! declared real base ([`apcore`]). Their frequency groups and rational bases
//! are exact lattice objects ([`specgroup`]). A [`lift::LiftSpec`] maps the data
//! to a periodic problem on the m-torus, which the [`solver`] advances with a
//! monotone finite-volume scheme. [`flux`] decides the non-degeneracy
//! condition and builds traveling-wave solutions when it fails, and
//! [`diagnostics`] runs decay and contraction experiments.

pub mod apcore;
pub mod diagnostics;
pub mod error;
pub mod fejer;
pub mod flux;
pub mod lift;
pub mod quadrature;
pub mod rational;
pub mod schema;
pub mod solver;
pub mod specgroup;

pub use apcore::{Frequency, RealBase, TrigPoly};
pub use error::{Error, Result};
pub use fejer::{bochner_fejer, fejer_weights, kernel_eval, FejerPlan};
pub use flux::{make_counterexample, nd_check, NdReport, PiecewiseFlux};
pub use lift::LiftSpec;
pub use solver::{lift_initial, solve, CellField, RunConfig, Stepper};
pub use specgroup::{group_generated, qlinear_basis, spectrum, FreqGroup, QBasis};
