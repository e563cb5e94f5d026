//! Numeric tolerances and iteration constants used across the crate.
//!
//! Every acceptance-facing threshold lives here so the values are pinned in
//! one place and referenced by name from library code, tests, and the CLI.

/// Relative residual allowed in the exterior-algebra identity suite.
pub const ALGEBRA_IDENTITY_REL: f64 = 1e-12;

/// Sup-norm slack for graph/constrained membership tests on exact inputs.
pub const MEMBERSHIP_SUP: f64 = 1e-10;

/// Sup-norm slack for pointwise generalized-energy elimination.
pub const ENERGY_SUP: f64 = 1e-14;

/// Step used by finite-difference cross-checks of analytic partials.
pub const PARTIALS_FD_EPS: f64 = 1e-6;

/// Relative mismatch allowed between analytic partials and the
/// finite-difference cross-check.
pub const PARTIALS_REL: f64 = 1e-5;

/// Window accepted for observed second-order convergence rates.
pub const ORDER_WINDOW: (f64, f64) = (1.8, 2.2);

/// Grid-derived checks pass when below `GRID_SAFETY * h^2 * ||field||_inf`.
pub const GRID_SAFETY: f64 = 10.0;

/// Sup-norm tolerance for the 1D rod solve against the linear closed form.
pub const ROD_SUP: f64 = 1e-8;

/// Sup-norm tolerance for the 2D uniform-stress patch solve.
pub const PATCH_SUP: f64 = 1e-8;

/// Sup-norm tolerance for the traction rows of a converged solve.
pub const TRACTION_SUP: f64 = 1e-10;

/// Allowed per-step violation of the affine velocity constraint.
pub const CONSTRAINT_PER_STEP: f64 = 1e-10;

/// Newton stopping criterion on the residual sup-norm.
pub const NEWTON_TOL: f64 = 1e-10;

/// Newton stopping criterion for the small per-step systems of the
/// constrained time integrator; tighter than the field solves so the
/// per-step constraint budget is met with margin.
pub const STEP_TOL: f64 = 1e-12;

/// Newton iteration cap.
pub const NEWTON_MAX_ITER: usize = 50;

/// Step used by the dense finite-difference Jacobian.
pub const NEWTON_FD_EPS: f64 = 1e-7;

/// Damping is halved until the residual drops or it falls below this floor.
pub const NEWTON_MIN_DAMPING: f64 = 1.0 / (1u64 << 20) as f64;

/// Default PRNG seed for every sampled suite.
pub const DEFAULT_SEED: u64 = 42;
