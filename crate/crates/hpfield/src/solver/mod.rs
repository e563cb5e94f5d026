//! Discrete machinery over rectangular lattices: sections of the
//! momentum-extended bundle, first-order-system residuals, the discrete
//! action they make stationary, a damped Newton boundary-value solver, an
//! explicit marcher for hyperbolic models, an implicit-midpoint integrator
//! for velocity-constrained mechanics, and the per-node energy and
//! field-equation-membership sweeps.

mod action;
mod energy;
mod lift;
mod march;
mod newton;
mod nonholonomic;
mod residual;
mod section;

pub use action::hp_action;
pub use energy::{energy_report, EnergyReport};
pub use lift::{
    frame_lift_at, section_derivatives, section_membership, SectionDerivatives,
    SectionMembershipReport,
};
pub use march::{march_hyperbolic, MarchSpec};
pub use newton::{newton_root, newton_solve, NewtonReport};
pub use nonholonomic::{
    mechanical_energy, nonholonomic_solve, nonholonomic_step, Trajectory,
};
pub use residual::{
    assemble_residual, pack_unknowns, residual_grids, unknowns_per_node, unpack_unknowns,
    ResidualGrids,
};
pub use section::DiscreteSection;
