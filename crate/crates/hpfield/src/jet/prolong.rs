use crate::error::Result;
use crate::jet::grid::ScalarGrid;

/// Lifts sampled fields to first-jet data by differencing: returns
/// `v[field][axis]`, each a grid of the same shape as the inputs.
///
/// Interior nodes use central differences, non-periodic faces use the
/// one-sided three-point stencil, so every slot is second-order accurate.
pub fn prolong_section(
    fields: &[ScalarGrid],
    spacing: &[f64],
    periodic: &[bool],
) -> Result<Vec<Vec<ScalarGrid>>> {
    let mut out = Vec::with_capacity(fields.len());
    for field in fields {
        let mut per_axis = Vec::with_capacity(spacing.len());
        for (axis, &h) in spacing.iter().enumerate() {
            per_axis.push(field.derivative(axis, h, periodic[axis])?);
        }
        out.push(per_axis);
    }
    Ok(out)
}
