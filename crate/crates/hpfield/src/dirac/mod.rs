//! Canonical multisymplectic structure on the extended chart and the
//! membership machinery built on it: the tautological and canonical forms,
//! left contraction against frame lifts (closed form and kernel expansion,
//! kept as independent code paths), graded pairings with their sampled
//! isotropy suite, graph and constrained membership residuals, and the
//! pointwise field-equation check.
//!
//! Sign conventions are fixed by the exterior kernel's determinant pairing;
//! every closed-form expression here is cross-checked against the kernel in
//! tests rather than trusted.

pub mod contract;
pub mod forms;
pub mod lagrange;
pub mod membership;
pub mod pairing;
pub mod suite;

pub use contract::{
    contract_frame_closed, contract_frame_expanded, frame_contraction_sign, FrameLift,
};
pub use forms::{
    canonical_omega, canonical_theta, exterior_derivative_fd, horizontal_volume,
    horizontal_volume_contracted, omega_extended,
};
pub use lagrange::{
    energy_contraction, exact_lift, lagrange_dirac_residual, lagrange_dirac_residual_norm,
    ContractionPath,
};
pub use membership::{
    constrained_membership, graph_residual, ConstraintSubspace, MembershipResiduals,
};
pub use pairing::{
    pairing_minus, pairing_plus, relation_residual, relation_residual_normalized, GradedPair,
};
pub use suite::{isotropy_suite, BidegreeCheck, ChartIsotropy, IsotropySuiteReport};
