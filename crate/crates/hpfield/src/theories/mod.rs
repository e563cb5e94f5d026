//! Concrete field theories: scalar waves, electromagnetism, linear
//! elastostatics, and constrained particle mechanics. Each model implements
//! [`Lagrangian`] over its own chart; hyperbolic models additionally expose
//! the source term of their second-order evolution form so the explicit
//! marcher can advance them.

mod elasto;
mod maxwell;
mod mechanics;
mod wave;

pub use elasto::{boundary_form, ElastoModel};
pub use maxwell::{transverse_plane_wave, MaxwellModel};
pub use mechanics::{shear_closed_form, FreeParticle, PlaneShearConstrained};
pub use wave::{dispersive_wave, standing_wave, WaveModel};

use crate::jet::Lagrangian;
use crate::{Error, Result};

/// A model whose field equations reduce to
/// `d_tt y[a] = sum_axes d_aa y[a] + source[a]` on a chart whose first base
/// coordinate is time. The marcher treats every remaining base axis as
/// periodic space.
pub trait Hyperbolic: Lagrangian {
    /// Right-hand side beyond the spatial Laplacian, evaluated pointwise on
    /// the field values.
    fn second_order_source(&self, fields: &[f64]) -> Vec<f64>;
}

/// Adjustable constants for the bundled examples.
#[derive(Debug, Clone)]
pub struct ExampleParams {
    /// Mass in the dispersive scalar model.
    pub mass: f64,
    /// Wave number for travelling-wave initial data.
    pub wave_number: f64,
    /// First elastic modulus.
    pub lambda: f64,
    /// Shear elastic modulus.
    pub mu: f64,
    /// Boundary pull for the elastostatic examples.
    pub traction: f64,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams {
            mass: 1.0,
            wave_number: 1.0,
            lambda: 1.0,
            mu: 1.0,
            traction: 0.1,
        }
    }
}

/// A bundled example model, dispatched by name.
#[derive(Debug, Clone)]
pub enum ExampleModel {
    Wave(WaveModel),
    Maxwell(MaxwellModel),
    Elasto(ElastoModel),
    Shear(PlaneShearConstrained),
    Free(FreeParticle),
}

impl ExampleModel {
    pub fn as_lagrangian(&self) -> &dyn Lagrangian {
        match self {
            ExampleModel::Wave(m) => m,
            ExampleModel::Maxwell(m) => m,
            ExampleModel::Elasto(m) => m,
            ExampleModel::Shear(m) => m,
            ExampleModel::Free(m) => m,
        }
    }

    /// The model as an explicit evolution problem, when it is one.
    pub fn as_hyperbolic(&self) -> Option<&dyn Hyperbolic> {
        match self {
            ExampleModel::Wave(m) => Some(m),
            ExampleModel::Maxwell(m) => Some(m),
            _ => None,
        }
    }
}

/// Names accepted by [`make_example`].
pub const EXAMPLE_IDS: [&str; 8] = [
    "wave",
    "kg",
    "maxwell",
    "maxwell2d",
    "rod",
    "patch",
    "patch-confined",
    "shear",
];

/// Builds a bundled example by name.
pub fn make_example(id: &str, params: &ExampleParams) -> Result<ExampleModel> {
    match id {
        "wave" => Ok(ExampleModel::Wave(WaveModel::free())),
        "kg" => Ok(ExampleModel::Wave(WaveModel::klein_gordon(params.mass))),
        "maxwell" => Ok(ExampleModel::Maxwell(MaxwellModel::new(3))),
        "maxwell2d" => Ok(ExampleModel::Maxwell(MaxwellModel::new(2))),
        "rod" => Ok(ExampleModel::Elasto(ElastoModel::rod(params.mu, params.traction))),
        "patch" => Ok(ExampleModel::Elasto(ElastoModel::patch(params.mu, params.traction))),
        "patch-confined" => Ok(ExampleModel::Elasto(ElastoModel::patch_confined(
            params.lambda,
            params.mu,
            params.traction,
        ))),
        "shear" => Ok(ExampleModel::Shear(PlaneShearConstrained::new())),
        "free" => Ok(ExampleModel::Free(FreeParticle::new())),
        other => Err(Error::Parse(format!(
            "unknown example '{other}'; expected one of {}",
            EXAMPLE_IDS.join(", ")
        ))),
    }
}
