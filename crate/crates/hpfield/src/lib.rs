//! Variational toolkit for first-order classical field theories.
//!
//! The crate is organized bottom-up:
//!
//! * [`exterior`]: sparse pointwise exterior algebra (wedge, evaluation,
//!   interior products) on a single chart;
//! * [`jet`]: chart layouts for first-order jet data with momenta, Lagrangian
//!   models, pointwise momentum maps, and grid prolongation;
//! * [`dirac`]: canonical multisymplectic forms, closed-form contractions,
//!   graded pairings, and membership/isotropy tests;
//! * [`theories`]: the bundled example models (scalar wave, electromagnetic
//!   field, constrained particle mechanics, linear elastostatics);
//! * [`solver`]: discrete sections on uniform grids, residual assembly,
//!   damped Newton, explicit time marching, and a DAE step for constrained
//!   mechanics.
//!
//! All randomized suites are seeded and single-threaded; identical inputs
//! give bitwise-identical results.

pub mod dirac;
pub mod error;
pub mod exterior;
pub mod jet;
pub mod solver;
pub mod theories;
pub mod tol;

pub use error::{Error, Result};
pub use exterior::{ExteriorElement, Variance};
pub use jet::{ChartSpec, Lagrangian, PontryaginPoint};
