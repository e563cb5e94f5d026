use nalgebra::DVector;

use super::section::DiscreteSection;
use crate::jet::{FaceCondition, JetSlots, Lagrangian, ScalarGrid};
use crate::{Error, Result};

/// Pointwise first-order-system residuals of a section, one grid per
/// equation. Each slot is named after the unknown it governs, because at
/// interior nodes the slot equals the partial derivative of the discrete
/// action with respect to that unknown, divided by the node's quadrature
/// weight times the cell volume:
///
/// ```text
/// field_slot[a]        = dL/dy^a - D_mu pmom[a][mu]   (balance law)
/// velocity_slot[a][mu] = dL/dv^a_mu - pmom[a][mu]     (momentum map)
/// momentum_slot[a][mu] = D_mu y^a - v^a_mu            (jet condition)
/// ```
#[derive(Debug, Clone)]
pub struct ResidualGrids {
    pub field_slot: Vec<ScalarGrid>,
    pub velocity_slot: Vec<Vec<ScalarGrid>>,
    pub momentum_slot: Vec<Vec<ScalarGrid>>,
}

impl ResidualGrids {
    /// Largest residual magnitude over nodes at least `margin` from every
    /// non-periodic face, across all three slot families.
    pub fn interior_sup(&self, section: &DiscreteSection, margin: usize) -> f64 {
        let mut worst: f64 = 0.0;
        let mut idx = vec![0usize; section.chart.base_dim()];
        for flat in 0..section.node_count() {
            section.p.unflatten(flat, &mut idx);
            if !section.is_interior(&idx, margin) {
                continue;
            }
            for grid in &self.field_slot {
                worst = worst.max(grid.get_flat(flat).abs());
            }
            for row in self.velocity_slot.iter().chain(self.momentum_slot.iter()) {
                for grid in row {
                    worst = worst.max(grid.get_flat(flat).abs());
                }
            }
        }
        worst
    }
}

/// Evaluates all three residual families over the whole lattice. Derivatives
/// use the section's stencils (central inside, one-sided on non-periodic
/// faces), so boundary rows are meaningful but only second-order accurate.
pub fn residual_grids(model: &dyn Lagrangian, section: &DiscreteSection) -> Result<ResidualGrids> {
    let chart = &section.chart;
    let b = chart.base_dim();
    let f = chart.fiber_dim();
    let extents = &section.meta.extents;

    // Stencil derivatives of the stored grids.
    let mut dy = Vec::with_capacity(f);
    let mut div_pmom = Vec::with_capacity(f);
    for a in 0..f {
        let mut per_axis = Vec::with_capacity(b);
        let mut div = ScalarGrid::zeros(extents);
        for mu in 0..b {
            per_axis.push(section.y[a].derivative(
                mu,
                section.meta.spacing[mu],
                section.periodic[mu],
            )?);
            let d = section.pmom[a][mu].derivative(
                mu,
                section.meta.spacing[mu],
                section.periodic[mu],
            )?;
            for flat in 0..div.len() {
                div.set_flat(flat, div.get_flat(flat) + d.get_flat(flat));
            }
        }
        dy.push(per_axis);
        div_pmom.push(div);
    }

    let zeros = ScalarGrid::zeros(extents);
    let mut out = ResidualGrids {
        field_slot: vec![zeros.clone(); f],
        velocity_slot: vec![vec![zeros.clone(); b]; f],
        momentum_slot: vec![vec![zeros.clone(); b]; f],
    };

    let mut idx = vec![0usize; b];
    for flat in 0..section.node_count() {
        section.p.unflatten(flat, &mut idx);
        let x = section.coords(&idx);
        let y: Vec<f64> = (0..f).map(|a| section.y[a].get_flat(flat)).collect();
        let v: JetSlots = (0..f)
            .map(|a| (0..b).map(|mu| section.v[a][mu].get_flat(flat)).collect())
            .collect();
        let dl_dy = model.dl_dy(&x, &y, &v);
        let dl_dv = model.dl_dv(&x, &y, &v);
        for a in 0..f {
            out.field_slot[a].set_flat(flat, dl_dy[a] - div_pmom[a].get_flat(flat));
            for mu in 0..b {
                out.velocity_slot[a][mu]
                    .set_flat(flat, dl_dv[a][mu] - section.pmom[a][mu].get_flat(flat));
                out.momentum_slot[a][mu]
                    .set_flat(flat, dy[a][mu].get_flat(flat) - v[a][mu]);
            }
        }
    }
    Ok(out)
}

/// Number of unknowns (and equations) per node: fields, derivative slots,
/// and polymomentum slots.
pub fn unknowns_per_node(section: &DiscreteSection) -> usize {
    let b = section.chart.base_dim();
    let f = section.chart.fiber_dim();
    f * (1 + 2 * b)
}

/// Flattens the adjustable grids (y, v, pmom; not p) into one vector,
/// node-major with per-node order `[y, v, pmom]`.
pub fn pack_unknowns(section: &DiscreteSection) -> DVector<f64> {
    let b = section.chart.base_dim();
    let f = section.chart.fiber_dim();
    let stride = unknowns_per_node(section);
    let mut out = DVector::zeros(section.node_count() * stride);
    for flat in 0..section.node_count() {
        let mut k = flat * stride;
        for a in 0..f {
            out[k] = section.y[a].get_flat(flat);
            k += 1;
        }
        for a in 0..f {
            for mu in 0..b {
                out[k] = section.v[a][mu].get_flat(flat);
                k += 1;
            }
        }
        for a in 0..f {
            for mu in 0..b {
                out[k] = section.pmom[a][mu].get_flat(flat);
                k += 1;
            }
        }
    }
    out
}

/// Writes a packed unknown vector back into the section's grids.
pub fn unpack_unknowns(section: &mut DiscreteSection, packed: &DVector<f64>) {
    let b = section.chart.base_dim();
    let f = section.chart.fiber_dim();
    let stride = unknowns_per_node(section);
    for flat in 0..section.node_count() {
        let mut k = flat * stride;
        for a in 0..f {
            section.y[a].set_flat(flat, packed[k]);
            k += 1;
        }
        for a in 0..f {
            for mu in 0..b {
                section.v[a][mu].set_flat(flat, packed[k]);
                k += 1;
            }
        }
        for a in 0..f {
            for mu in 0..b {
                section.pmom[a][mu].set_flat(flat, packed[k]);
                k += 1;
            }
        }
    }
}

/// The face whose condition governs a boundary node: clamped faces win over
/// traction faces, lower axes win ties. Returns `(axis, side)`.
fn governing_face(
    section: &DiscreteSection,
    boundary: &crate::jet::BoundarySpec,
    idx: &[usize],
) -> Option<(usize, usize)> {
    let mut traction: Option<(usize, usize)> = None;
    for (axis, &i) in idx.iter().enumerate() {
        if section.periodic[axis] {
            continue;
        }
        let side = if i == 0 {
            0
        } else if i + 1 == section.meta.extents[axis] {
            1
        } else {
            continue;
        };
        match boundary.face(axis, side) {
            FaceCondition::Clamped => return Some((axis, side)),
            FaceCondition::Traction(_) => {
                if traction.is_none() {
                    traction = Some((axis, side));
                }
            }
        }
    }
    traction
}

/// Assembles the square nonlinear system for a boundary-value solve: one
/// row per unknown in [`pack_unknowns`] order. Interior field rows carry the
/// balance law; at each non-periodic boundary node they are replaced by the
/// governing face condition (pinned fields when clamped, the normal stress
/// against the prescribed load when pulled). Velocity and momentum rows are
/// kept everywhere.
pub fn assemble_residual(
    model: &dyn Lagrangian,
    section: &DiscreteSection,
) -> Result<DVector<f64>> {
    let chart = &section.chart;
    let b = chart.base_dim();
    let f = chart.fiber_dim();
    let boundary = model.boundary();
    if section.periodic.iter().any(|&p| !p) && boundary.is_none() {
        return Err(Error::Invalid(
            "non-periodic lattice requires boundary conditions".into(),
        ));
    }

    let grids = residual_grids(model, section)?;
    let stride = unknowns_per_node(section);
    let mut out = DVector::zeros(section.node_count() * stride);
    let mut idx = vec![0usize; b];
    for flat in 0..section.node_count() {
        section.p.unflatten(flat, &mut idx);
        let face = boundary.and_then(|spec| governing_face(section, spec, &idx));
        let mut k = flat * stride;
        match face {
            None => {
                for a in 0..f {
                    out[k] = grids.field_slot[a].get_flat(flat);
                    k += 1;
                }
            }
            Some((axis, side)) => match model.boundary().unwrap().face(axis, side) {
                FaceCondition::Clamped => {
                    for a in 0..f {
                        out[k] = section.y[a].get_flat(flat);
                        k += 1;
                    }
                }
                FaceCondition::Traction(tau) => {
                    let n = crate::jet::BoundarySpec::normal_component(side);
                    for a in 0..f {
                        out[k] = section.pmom[a][axis].get_flat(flat) * n - tau[a];
                        k += 1;
                    }
                }
            },
        }
        for a in 0..f {
            for mu in 0..b {
                out[k] = grids.velocity_slot[a][mu].get_flat(flat);
                k += 1;
            }
        }
        for a in 0..f {
            for mu in 0..b {
                out[k] = grids.momentum_slot[a][mu].get_flat(flat);
                k += 1;
            }
        }
    }
    Ok(out)
}
