//! Finite-volume solver for the lifted equation on the m-torus.

pub mod field;
pub mod run;
pub mod scheme;

pub use field::{lift_initial, restrict_to_line, CellField};
pub use run::{run_field, run_pair, solve, PairRun, PairStep, RunConfig, RunRecord, StepObserver, StepRecord};
pub use scheme::{LiftedFlux, Scheme, Stepper, DEFAULT_CFL};
