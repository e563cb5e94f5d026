use super::section::DiscreteSection;
use crate::dirac::{lagrange_dirac_residual_norm, ContractionPath, FrameLift};
use crate::jet::{Lagrangian, ScalarGrid};
use crate::{tol, Result};

/// Stencil derivatives of a section's stored grids, precomputed once so the
/// per-node lift assembly is a table lookup.
#[derive(Debug, Clone)]
pub struct SectionDerivatives {
    /// `[a][mu]`: derivative of field `a` along axis `mu`.
    pub dy: Vec<Vec<ScalarGrid>>,
    /// `[a][nu][mu]`: derivative of polymomentum slot `(a, nu)` along `mu`.
    pub dpmom: Vec<Vec<Vec<ScalarGrid>>>,
    /// `[mu]`: derivative of the scalar momentum along `mu`.
    pub dp: Vec<ScalarGrid>,
}

pub fn section_derivatives(section: &DiscreteSection) -> Result<SectionDerivatives> {
    let b = section.chart.base_dim();
    let f = section.chart.fiber_dim();
    let deriv = |grid: &ScalarGrid, mu: usize| {
        grid.derivative(mu, section.meta.spacing[mu], section.periodic[mu])
    };
    let mut dy = Vec::with_capacity(f);
    let mut dpmom = Vec::with_capacity(f);
    for a in 0..f {
        let mut dy_row = Vec::with_capacity(b);
        for mu in 0..b {
            dy_row.push(deriv(&section.y[a], mu)?);
        }
        dy.push(dy_row);
        let mut block = Vec::with_capacity(b);
        for nu in 0..b {
            let mut row = Vec::with_capacity(b);
            for mu in 0..b {
                row.push(deriv(&section.pmom[a][nu], mu)?);
            }
            block.push(row);
        }
        dpmom.push(block);
    }
    let mut dp = Vec::with_capacity(b);
    for mu in 0..b {
        dp.push(deriv(&section.p, mu)?);
    }
    Ok(SectionDerivatives { dy, dpmom, dp })
}

/// Tangent lift of the section graph at one node: factor `mu` moves along
/// base axis `mu` and carries the stencil derivatives of every stored grid.
pub fn frame_lift_at(
    section: &DiscreteSection,
    derivs: &SectionDerivatives,
    idx: &[usize],
) -> FrameLift {
    let b = section.chart.base_dim();
    let f = section.chart.fiber_dim();
    let mut lift = FrameLift::zeros(&section.chart);
    for a in 0..f {
        for mu in 0..b {
            lift.c_y[a][mu] = derivs.dy[a][mu].get(idx);
            for nu in 0..b {
                lift.c_pmom[a][nu][mu] = derivs.dpmom[a][nu][mu].get(idx);
            }
        }
    }
    for mu in 0..b {
        lift.c_p[mu] = derivs.dp[mu].get(idx);
    }
    lift
}

/// Field-equation membership of a whole section: the worst
/// Lagrange-Dirac residual over nodes at least `margin` from non-periodic
/// faces, against the grid-truncation bound
/// `GRID_SAFETY * h^2 * ||fields||_inf` with `h` the largest spacing and the
/// norm taken over the stored field grids.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SectionMembershipReport {
    pub max_residual: f64,
    pub bound: f64,
    pub nodes_checked: usize,
}

impl SectionMembershipReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.bound
    }
}

pub fn section_membership(
    model: &dyn Lagrangian,
    section: &DiscreteSection,
    margin: usize,
    path: ContractionPath,
) -> Result<SectionMembershipReport> {
    let derivs = section_derivatives(section)?;
    let mut idx = vec![0usize; section.chart.base_dim()];
    let mut max_residual: f64 = 0.0;
    let mut nodes_checked = 0;
    for flat in 0..section.node_count() {
        section.p.unflatten(flat, &mut idx);
        if !section.is_interior(&idx, margin) {
            continue;
        }
        let pt = section.point_at(&idx);
        let lift = frame_lift_at(section, &derivs, &idx);
        max_residual = max_residual.max(lagrange_dirac_residual_norm(model, &pt, &lift, path)?);
        nodes_checked += 1;
    }

    let h = section
        .meta
        .spacing
        .iter()
        .fold(0.0f64, |acc, &s| acc.max(s));
    let field_sup = section
        .y
        .iter()
        .fold(0.0f64, |acc, grid| acc.max(grid.sup_norm()));
    Ok(SectionMembershipReport {
        max_residual,
        bound: tol::GRID_SAFETY * h * h * field_sup,
        nodes_checked,
    })
}
