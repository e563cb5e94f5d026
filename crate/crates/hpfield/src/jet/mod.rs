//! Jet-bundle data model: chart layouts for the extended phase space,
//! Lagrangian densities with their analytic partials, the momentum-map
//! construction, and uniform grids with second-order stencil calculus.
//!
//! A chart over an `(n+1)`-dimensional base with `N` fields orders its
//! coordinates as base positions, field values, first-jet velocities
//! (field-major), the scalar covelocity `p`, and the momenta `p[A]^mu`
//! (field-major). Everything downstream indexes through [`ChartSpec`]
//! rather than hard-coding offsets.

pub mod chart;
pub mod grid;
pub mod model;
pub mod ops;
pub mod prolong;

pub use chart::ChartSpec;
pub use grid::{read_grid_csv, read_grid_meta, write_grid_csv, write_grid_meta, GridMeta, ScalarGrid};
pub use model::{AffineConstraint, BoundarySpec, FaceCondition, JetSlots, Lagrangian, PontryaginPoint};
pub use ops::{check_partials, d_generalized_energy, generalized_energy, legendre_transform};
pub use prolong::prolong_section;
