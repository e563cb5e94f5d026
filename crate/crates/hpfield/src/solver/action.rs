use super::section::DiscreteSection;
use crate::jet::{FaceCondition, JetSlots, Lagrangian};
use crate::Result;

/// Discrete first-order action of a section: trapezoid quadrature of
/// `L(x, y, v) + pmom . (D y - v)` over the lattice, minus the boundary
/// work `integral tau . y dS` over every traction face. Its partial
/// derivative with respect to any unknown at a node far from non-periodic
/// faces equals the like-named residual slot times the node's quadrature
/// weight times the cell volume, which is what makes the first-order system
/// the stationarity condition of this functional.
pub fn hp_action(model: &dyn Lagrangian, section: &DiscreteSection) -> Result<f64> {
    let chart = &section.chart;
    let b = chart.base_dim();
    let f = chart.fiber_dim();
    let vol = section.cell_volume();

    // Stencil derivatives of the fields, matching the residual's jet rows.
    let mut dy = Vec::with_capacity(f);
    for a in 0..f {
        let mut per_axis = Vec::with_capacity(b);
        for mu in 0..b {
            per_axis.push(section.y[a].derivative(
                mu,
                section.meta.spacing[mu],
                section.periodic[mu],
            )?);
        }
        dy.push(per_axis);
    }

    let mut action = 0.0;
    let mut idx = vec![0usize; b];
    for flat in 0..section.node_count() {
        section.p.unflatten(flat, &mut idx);
        let x = section.coords(&idx);
        let y: Vec<f64> = (0..f).map(|a| section.y[a].get_flat(flat)).collect();
        let v: JetSlots = (0..f)
            .map(|a| (0..b).map(|mu| section.v[a][mu].get_flat(flat)).collect())
            .collect();
        let mut density = model.lagrangian(&x, &y, &v);
        for a in 0..f {
            for mu in 0..b {
                density += section.pmom[a][mu].get_flat(flat)
                    * (dy[a][mu].get_flat(flat) - v[a][mu]);
            }
        }
        action += section.quadrature_weight(&idx) * vol * density;
    }

    if let Some(boundary) = model.boundary() {
        action -= boundary_work(section, boundary)?;
    }
    Ok(action)
}

/// Work done by the prescribed boundary loads on the section's fields:
/// for every traction face, the face-trapezoid quadrature of `tau . y`.
fn boundary_work(
    section: &DiscreteSection,
    boundary: &crate::jet::BoundarySpec,
) -> Result<f64> {
    let b = section.chart.base_dim();
    let f = section.chart.fiber_dim();
    let mut work = 0.0;
    for axis in 0..b {
        if section.periodic[axis] {
            continue;
        }
        for side in 0..2 {
            let tau = match boundary.face(axis, side) {
                FaceCondition::Traction(tau) => tau.clone(),
                FaceCondition::Clamped => continue,
            };
            let face_area: f64 = (0..b)
                .filter(|&t| t != axis)
                .map(|t| section.meta.spacing[t])
                .product();
            let pinned = if side == 0 {
                0
            } else {
                section.meta.extents[axis] - 1
            };
            let mut idx = vec![0usize; b];
            for flat in 0..section.node_count() {
                section.p.unflatten(flat, &mut idx);
                if idx[axis] != pinned {
                    continue;
                }
                // Trapezoid weight over the tangent axes only.
                let mut w = 1.0;
                for (t, &i) in idx.iter().enumerate() {
                    if t != axis
                        && !section.periodic[t]
                        && (i == 0 || i + 1 == section.meta.extents[t])
                    {
                        w *= 0.5;
                    }
                }
                for a in 0..f {
                    work += w * face_area * tau[a] * section.y[a].get_flat(flat);
                }
            }
        }
    }
    Ok(work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::residual::{pack_unknowns, residual_grids, unpack_unknowns};
    use crate::jet::GridMeta;
    use crate::theories::{ElastoModel, WaveModel};

    #[test]
    fn gradient_matches_residual_slots_at_deep_interior_nodes() {
        let model = WaveModel::klein_gordon(0.7);
        let m = 12usize;
        let h = std::f64::consts::TAU / m as f64;
        let meta = GridMeta {
            extents: vec![9, m],
            spacing: vec![0.4 * h, h],
            origin: vec![0.0, 0.0],
        };
        let mut section = DiscreteSection::from_fields(
            &model,
            meta,
            vec![false, true],
            &|x| vec![x[1].sin() * (0.9 * x[0]).cos() + 0.3 * (2.0 * x[1]).cos()],
            None,
        )
        .unwrap();
        // Desynchronize v and pmom from the fields so no residual is zero.
        for grid in section.v.iter_mut().flatten() {
            for flat in 0..grid.len() {
                grid.set_flat(flat, grid.get_flat(flat) + 0.05 * ((flat % 7) as f64 - 3.0));
            }
        }
        for grid in section.pmom.iter_mut().flatten() {
            for flat in 0..grid.len() {
                grid.set_flat(flat, grid.get_flat(flat) + 0.04 * ((flat % 5) as f64 - 2.0));
            }
        }

        let grids = residual_grids(&model, &section).unwrap();
        let vol = section.cell_volume();
        let x0 = pack_unknowns(&section);
        let mut scratch = section.clone();
        let mut action_at = |x: &nalgebra::DVector<f64>| {
            unpack_unknowns(&mut scratch, x);
            hp_action(&model, &scratch).unwrap()
        };

        // One deep-interior node: time index 4 of 9, any spatial index.
        let idx = [4usize, 5];
        let flat = section.p.flatten(&idx);
        let stride = super::super::residual::unknowns_per_node(&section);
        let eps = 1e-6;
        let expected = [
            grids.field_slot[0].get_flat(flat),
            grids.velocity_slot[0][0].get_flat(flat),
            grids.velocity_slot[0][1].get_flat(flat),
            grids.momentum_slot[0][0].get_flat(flat),
            grids.momentum_slot[0][1].get_flat(flat),
        ];
        for (offset, want) in expected.iter().enumerate() {
            let j = flat * stride + offset;
            let mut xp = x0.clone();
            xp[j] += eps;
            let mut xm = x0.clone();
            xm[j] -= eps;
            let grad = (action_at(&xp) - action_at(&xm)) / (2.0 * eps) / vol;
            assert!(
                (grad - want).abs() < 1e-7,
                "slot {offset}: grad {grad:.9} vs residual {want:.9}"
            );
        }
    }

    #[test]
    fn boundary_work_of_uniform_pull_is_load_times_average_displacement() {
        let (mu, tau) = (0.5, 0.2);
        let model = ElastoModel::rod(mu, tau);
        let meta = GridMeta {
            extents: vec![5],
            spacing: vec![0.25],
            origin: vec![0.0],
        };
        let section = DiscreteSection::from_fields(
            &model,
            meta,
            vec![false],
            &|x| vec![tau * x[0] / (2.0 * mu)],
            None,
        )
        .unwrap();
        // For the exact linear solution the residual term vanishes, so the
        // action is the stored energy minus the end-point work:
        // mu a^2 L - tau a L with a = tau / (2 mu) and L = 1.
        let a = tau / (2.0 * mu);
        let want = mu * a * a - tau * a;
        let got = hp_action(&model, &section).unwrap();
        assert!((got - want).abs() < 1e-12, "{got} vs {want}");
    }
}
