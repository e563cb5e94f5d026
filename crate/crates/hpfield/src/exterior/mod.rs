//! Pointwise exterior algebra over a single chart.
//!
//! Elements are sparse maps from basis blades (strictly increasing index
//! tuples) to coefficients, tagged with a grade and a variance. Forms act on
//! multivectors by the determinant convention with no 1/k! factor. The two
//! interior products are fixed by duality:
//!
//! * left: `(X _| alpha)(X') = alpha(X /\ X')`,
//! * right: `(X |_ beta) _| gamma = (beta /\ gamma)(X)`.
//!
//! Everything here is exact combinatorics plus f64 arithmetic; no geometry,
//! no metric.

mod blade;
mod element;
pub mod sample;
pub mod suite;

pub use blade::{enumerate_blades, Blade};
pub use element::{
    basis_elements, evaluate, interior_left, interior_right, interior_right_decomposable, wedge,
    DecomposableMultivector, ExteriorElement, Variance,
};
