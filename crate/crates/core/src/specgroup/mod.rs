//! Spectra, the additive groups they generate, and rational bases.

pub mod group;
pub mod hnf;
pub mod qbasis;

pub use group::{group_generated, group_generated_in, spectrum, FreqGroup, Membership};
pub use qbasis::{qlinear_basis, QBasis};
