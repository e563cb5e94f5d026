use super::section::DiscreteSection;
use crate::jet::{GridMeta, ScalarGrid};
use crate::theories::Hyperbolic;
use crate::{Error, Result};

/// Lattice and time-stepping description for an explicit hyperbolic march:
/// time is axis 0 (non-periodic), every spatial axis is periodic.
#[derive(Debug, Clone)]
pub struct MarchSpec {
    pub steps: usize,
    pub dt: f64,
    pub t0: f64,
    pub spatial_extents: Vec<usize>,
    pub spatial_spacing: Vec<f64>,
    pub spatial_origin: Vec<f64>,
}

impl MarchSpec {
    /// Square periodic box `[0, 2 pi)^d` with `m` nodes per axis and time
    /// step `dt`, marched for `steps` steps from `t = 0`.
    pub fn periodic_box(d: usize, m: usize, dt: f64, steps: usize) -> Self {
        MarchSpec {
            steps,
            dt,
            t0: 0.0,
            spatial_extents: vec![m; d],
            spatial_spacing: vec![std::f64::consts::TAU / m as f64; d],
            spatial_origin: vec![0.0; d],
        }
    }

    /// The stability ratio `dt * sqrt(sum 1/h^2)`; must not exceed 1.
    pub fn cfl_ratio(&self) -> f64 {
        let inv_sq: f64 = self.spatial_spacing.iter().map(|h| 1.0 / (h * h)).sum();
        self.dt * inv_sq.sqrt()
    }
}

/// Advances a hyperbolic model with the explicit central-time scheme
///
/// ```text
/// y[j+1] = 2 y[j] - y[j-1] + dt^2 (sum_axes D_aa y[j] + source(y[j]))
/// ```
///
/// on a periodic spatial lattice, seeding the first two time levels from
/// `initial` evaluated at full base coordinates `(t, x...)`. The returned
/// section stores the marched fields, derivative slots by stencil
/// differencing (so the jet rows vanish identically), polymomenta through
/// the momentum map, and the scalar momentum zeroing the generalized energy.
pub fn march_hyperbolic(
    model: &dyn Hyperbolic,
    spec: &MarchSpec,
    initial: &dyn Fn(&[f64]) -> Vec<f64>,
) -> Result<DiscreteSection> {
    let chart = model.chart();
    let b = chart.base_dim();
    let f = chart.fiber_dim();
    if spec.spatial_extents.len() + 1 != b {
        return Err(Error::DimensionMismatch {
            left: spec.spatial_extents.len() + 1,
            right: b,
        });
    }
    if spec.steps < 1 {
        return Err(Error::Invalid("march needs at least one step".into()));
    }
    let ratio = spec.cfl_ratio();
    if ratio > 1.0 + 1e-12 {
        return Err(Error::CflViolation { ratio });
    }

    let mut extents = vec![spec.steps + 1];
    extents.extend_from_slice(&spec.spatial_extents);
    let mut spacing = vec![spec.dt];
    spacing.extend_from_slice(&spec.spatial_spacing);
    let mut origin = vec![spec.t0];
    origin.extend_from_slice(&spec.spatial_origin);
    let meta = GridMeta {
        extents: extents.clone(),
        spacing,
        origin,
    };
    let mut periodic = vec![false];
    periodic.extend(std::iter::repeat(true).take(b - 1));

    let mut y: Vec<ScalarGrid> = (0..f).map(|_| ScalarGrid::zeros(&extents)).collect();

    // Seed levels 0 and 1 exactly.
    let space = ScalarGrid::zeros(&spec.spatial_extents);
    let mut sp_idx = vec![0usize; b - 1];
    let mut coords = vec![0.0; b];
    let mut full_idx = vec![0usize; b];
    for level in 0..2 {
        coords[0] = spec.t0 + spec.dt * level as f64;
        full_idx[0] = level;
        for flat in 0..space.len() {
            space.unflatten(flat, &mut sp_idx);
            for axis in 0..b - 1 {
                coords[axis + 1] =
                    spec.spatial_origin[axis] + spec.spatial_spacing[axis] * sp_idx[axis] as f64;
                full_idx[axis + 1] = sp_idx[axis];
            }
            let values = initial(&coords);
            for a in 0..f {
                y[a].set(&full_idx, values[a]);
            }
        }
    }

    // Central-time update with the compact periodic spatial Laplacian.
    let dt2 = spec.dt * spec.dt;
    let mut fields = vec![0.0; f];
    let mut here = vec![0usize; b];
    let mut shifted = vec![0usize; b];
    for j in 1..spec.steps {
        for flat in 0..space.len() {
            space.unflatten(flat, &mut sp_idx);
            here[0] = j;
            here[1..].copy_from_slice(&sp_idx);
            for a in 0..f {
                fields[a] = y[a].get(&here);
            }
            let source = model.second_order_source(&fields);
            for a in 0..f {
                let mut laplacian = 0.0;
                for axis in 0..b - 1 {
                    let m = spec.spatial_extents[axis];
                    let h = spec.spatial_spacing[axis];
                    shifted.copy_from_slice(&here);
                    shifted[axis + 1] = (sp_idx[axis] + 1) % m;
                    let plus = y[a].get(&shifted);
                    shifted[axis + 1] = (sp_idx[axis] + m - 1) % m;
                    let minus = y[a].get(&shifted);
                    laplacian += (plus - 2.0 * fields[a] + minus) / (h * h);
                }
                here[0] = j - 1;
                let prev = y[a].get(&here);
                here[0] = j + 1;
                let next = 2.0 * fields[a] - prev + dt2 * (laplacian + source[a]);
                y[a].set(&here, next);
                here[0] = j;
            }
        }
    }

    DiscreteSection::from_marched_fields(model as &dyn crate::jet::Lagrangian, meta, periodic, y)
}
