use std::path::Path;

use crate::jet::{
    legendre_transform, prolong_section, read_grid_csv, read_grid_meta, write_grid_csv,
    write_grid_meta, ChartSpec, GridMeta, JetSlots, Lagrangian, PontryaginPoint, ScalarGrid,
};
use crate::{Error, Result};

/// A sampled section of the momentum-extended bundle: one grid per field,
/// per derivative slot, per polymomentum slot, and one for the scalar
/// momentum, all over a shared rectangular base lattice.
#[derive(Debug, Clone)]
pub struct DiscreteSection {
    pub chart: ChartSpec,
    pub meta: GridMeta,
    pub periodic: Vec<bool>,
    pub y: Vec<ScalarGrid>,
    /// Derivative slots, indexed `[field][axis]`.
    pub v: Vec<Vec<ScalarGrid>>,
    /// Polymomentum slots, indexed `[field][axis]`.
    pub pmom: Vec<Vec<ScalarGrid>>,
    pub p: ScalarGrid,
}

impl DiscreteSection {
    /// Samples `y_of_x` over the lattice and fills the remaining grids:
    /// derivative slots from `v_of_x` when given (otherwise by stencil
    /// differencing of the sampled fields), polymomenta by the pointwise
    /// momentum map, and the scalar momentum by zeroing the generalized
    /// energy.
    pub fn from_fields(
        model: &dyn Lagrangian,
        meta: GridMeta,
        periodic: Vec<bool>,
        y_of_x: &dyn Fn(&[f64]) -> Vec<f64>,
        v_of_x: Option<&dyn Fn(&[f64]) -> JetSlots>,
    ) -> Result<Self> {
        let chart = model.chart().clone();
        let b = chart.base_dim();
        let f = chart.fiber_dim();
        if meta.extents.len() != b || periodic.len() != b {
            return Err(Error::DimensionMismatch {
                left: meta.extents.len(),
                right: b,
            });
        }

        let fill = |slot: usize, from: &dyn Fn(&[f64]) -> Vec<f64>| {
            let mut coords = vec![0.0; b];
            ScalarGrid::from_fn(&meta.extents, |idx| {
                for (axis, &i) in idx.iter().enumerate() {
                    coords[axis] = meta.coordinate(axis, i);
                }
                from(&coords)[slot]
            })
        };

        let y: Vec<ScalarGrid> = (0..f).map(|a| fill(a, y_of_x)).collect();

        let v: Vec<Vec<ScalarGrid>> = match v_of_x {
            Some(v_fn) => (0..f)
                .map(|a| {
                    (0..b)
                        .map(|mu| {
                            let mut coords = vec![0.0; b];
                            ScalarGrid::from_fn(&meta.extents, |idx| {
                                for (axis, &i) in idx.iter().enumerate() {
                                    coords[axis] = meta.coordinate(axis, i);
                                }
                                v_fn(&coords)[a][mu]
                            })
                        })
                        .collect()
                })
                .collect(),
            None => prolong_section(&y, &meta.spacing, &periodic)?,
        };

        let zeros = ScalarGrid::zeros(&meta.extents);
        let mut section = DiscreteSection {
            chart,
            meta,
            periodic,
            y,
            v,
            pmom: vec![vec![zeros.clone(); b]; f],
            p: zeros,
        };
        section.refresh_momenta(model);
        Ok(section)
    }

    /// Wraps already-computed field grids into a section: derivative slots
    /// by stencil differencing, polymomenta through the momentum map, and
    /// the scalar momentum zeroing the generalized energy.
    pub fn from_marched_fields(
        model: &dyn Lagrangian,
        meta: GridMeta,
        periodic: Vec<bool>,
        y: Vec<ScalarGrid>,
    ) -> Result<Self> {
        let chart = model.chart().clone();
        let v = prolong_section(&y, &meta.spacing, &periodic)?;
        let b = chart.base_dim();
        let f = chart.fiber_dim();
        let zeros = ScalarGrid::zeros(&meta.extents);
        let mut section = DiscreteSection {
            chart,
            meta,
            periodic,
            y,
            v,
            pmom: vec![vec![zeros.clone(); b]; f],
            p: zeros,
        };
        section.refresh_momenta(model);
        Ok(section)
    }

    pub fn node_count(&self) -> usize {
        self.p.len()
    }

    /// Base coordinates of the node at `idx`.
    pub fn coords(&self, idx: &[usize]) -> Vec<f64> {
        idx.iter()
            .enumerate()
            .map(|(axis, &i)| self.meta.coordinate(axis, i))
            .collect()
    }

    /// Assembles the full momentum-extended point stored at a node.
    pub fn point_at(&self, idx: &[usize]) -> PontryaginPoint {
        let b = self.chart.base_dim();
        let f = self.chart.fiber_dim();
        let mut pt = PontryaginPoint::zeros(&self.chart);
        pt.x = self.coords(idx);
        for a in 0..f {
            pt.y[a] = self.y[a].get(idx);
            for mu in 0..b {
                pt.v[a][mu] = self.v[a][mu].get(idx);
                pt.pmom[a][mu] = self.pmom[a][mu].get(idx);
            }
        }
        pt.p = self.p.get(idx);
        pt
    }

    /// Recomputes every polymomentum grid by the pointwise momentum map and
    /// the scalar-momentum grid by zeroing the generalized energy.
    pub fn refresh_momenta(&mut self, model: &dyn Lagrangian) {
        let b = self.chart.base_dim();
        let f = self.chart.fiber_dim();
        let mut idx = vec![0usize; b];
        for flat in 0..self.node_count() {
            self.p.unflatten(flat, &mut idx);
            let x = self.coords(&idx);
            let y: Vec<f64> = (0..f).map(|a| self.y[a].get_flat(flat)).collect();
            let v: JetSlots = (0..f)
                .map(|a| (0..b).map(|mu| self.v[a][mu].get_flat(flat)).collect())
                .collect();
            let (pmom, p) = legendre_transform(model, &x, &y, &v);
            for a in 0..f {
                for mu in 0..b {
                    self.pmom[a][mu].set_flat(flat, pmom[a][mu]);
                }
            }
            self.p.set_flat(flat, p);
        }
    }

    /// True when `idx` is at least `margin` nodes away from every
    /// non-periodic face.
    pub fn is_interior(&self, idx: &[usize], margin: usize) -> bool {
        idx.iter().enumerate().all(|(axis, &i)| {
            self.periodic[axis]
                || (i >= margin && i + margin < self.meta.extents[axis])
        })
    }

    /// Trapezoid quadrature weight of the node: 1/2 per non-periodic face
    /// the node sits on, 1 otherwise, multiplied over axes.
    pub fn quadrature_weight(&self, idx: &[usize]) -> f64 {
        let mut w = 1.0;
        for (axis, &i) in idx.iter().enumerate() {
            if !self.periodic[axis] && (i == 0 || i + 1 == self.meta.extents[axis]) {
                w *= 0.5;
            }
        }
        w
    }

    /// Product of the lattice spacings (cell volume).
    pub fn cell_volume(&self) -> f64 {
        self.meta.spacing.iter().product()
    }

    /// Writes all grids of the section to `dir`: the fields under their
    /// chart names, derivative slots as `v_<name>_d<axis>`, polymomenta as
    /// `pmom_<name>_d<axis>`, the scalar momentum as `p`, and the geometry
    /// sidecar `grid.txt`.
    pub fn write_csv(&self, dir: &Path) -> Result<()> {
        write_grid_meta(dir, &self.meta)?;
        for (a, name) in self.chart.fiber_names().iter().enumerate() {
            write_grid_csv(dir, name, &self.y[a], &self.meta)?;
            for mu in 0..self.chart.base_dim() {
                write_grid_csv(dir, &format!("v_{name}_d{mu}"), &self.v[a][mu], &self.meta)?;
                write_grid_csv(
                    dir,
                    &format!("pmom_{name}_d{mu}"),
                    &self.pmom[a][mu],
                    &self.meta,
                )?;
            }
        }
        write_grid_csv(dir, "p", &self.p, &self.meta)?;
        Ok(())
    }

    /// Reads a section previously written by [`DiscreteSection::write_csv`].
    /// Periodicity is not persisted, so the caller supplies it.
    pub fn read_csv(model: &dyn Lagrangian, dir: &Path, periodic: Vec<bool>) -> Result<Self> {
        let chart = model.chart().clone();
        let meta = read_grid_meta(dir)?;
        if meta.extents.len() != chart.base_dim() {
            return Err(Error::DimensionMismatch {
                left: meta.extents.len(),
                right: chart.base_dim(),
            });
        }
        let b = chart.base_dim();
        let mut y = Vec::new();
        let mut v = Vec::new();
        let mut pmom = Vec::new();
        for name in chart.fiber_names() {
            y.push(read_grid_csv(dir, name, &meta)?);
            let mut v_row = Vec::new();
            let mut pm_row = Vec::new();
            for mu in 0..b {
                v_row.push(read_grid_csv(dir, &format!("v_{name}_d{mu}"), &meta)?);
                pm_row.push(read_grid_csv(dir, &format!("pmom_{name}_d{mu}"), &meta)?);
            }
            v.push(v_row);
            pmom.push(pm_row);
        }
        let p = read_grid_csv(dir, "p", &meta)?;
        Ok(DiscreteSection {
            chart,
            meta,
            periodic,
            y,
            v,
            pmom,
            p,
        })
    }
}
