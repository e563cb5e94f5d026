use super::lift::{frame_lift_at, section_derivatives};
use super::section::DiscreteSection;
use crate::dirac::energy_contraction;
use crate::jet::{generalized_energy, Lagrangian};
use crate::Result;

/// Pointwise energy diagnostics of a section.
#[derive(Debug, Clone, serde::Serialize)]
pub struct EnergyReport {
    /// Largest `|E|` over every stored node. Sections built through the
    /// momentum map store the scalar momentum that zeroes `E`, so this
    /// measures internal consistency of the grids.
    pub max_abs_energy: f64,
    /// Largest sup-norm of `X |- dE` over interior nodes, with `X` the
    /// tangent lift of the section graph. Zero for exact solutions;
    /// `O(h^2)` under stencil differencing of a solution section.
    pub max_flux_contraction: f64,
    /// Interior margin used for the flux sweep.
    pub margin: usize,
    pub nodes_checked: usize,
}

/// Sweeps the section for the two pointwise energy statements: the
/// generalized energy at stored nodes, and the contraction of the lifted
/// frame with the energy differential at interior nodes.
pub fn energy_report(
    model: &dyn Lagrangian,
    section: &DiscreteSection,
    margin: usize,
) -> Result<EnergyReport> {
    let derivs = section_derivatives(section)?;
    let mut idx = vec![0usize; section.chart.base_dim()];
    let mut max_abs_energy: f64 = 0.0;
    let mut max_flux: f64 = 0.0;
    let mut nodes_checked = 0;
    for flat in 0..section.node_count() {
        section.p.unflatten(flat, &mut idx);
        let pt = section.point_at(&idx);
        max_abs_energy = max_abs_energy.max(generalized_energy(model, &pt).abs());
        if section.is_interior(&idx, margin) {
            let lift = frame_lift_at(section, &derivs, &idx);
            max_flux = max_flux.max(energy_contraction(model, &pt, &lift)?.sup_norm());
            nodes_checked += 1;
        }
    }
    Ok(EnergyReport {
        max_abs_energy,
        max_flux_contraction: max_flux,
        margin,
        nodes_checked,
    })
}
