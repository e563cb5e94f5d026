use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// A scalar field sampled on a uniform structured grid, stored row-major
/// with the last axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarGrid {
    extents: Vec<usize>,
    data: Vec<f64>,
}

impl ScalarGrid {
    pub fn zeros(extents: &[usize]) -> Self {
        let len = extents.iter().product();
        ScalarGrid {
            extents: extents.to_vec(),
            data: vec![0.0; len],
        }
    }

    /// Fills the grid from a function of the multi-index.
    pub fn from_fn(extents: &[usize], mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut out = ScalarGrid::zeros(extents);
        let mut idx = vec![0usize; extents.len()];
        for flat in 0..out.data.len() {
            out.unflatten(flat, &mut idx);
            out.data[flat] = f(&idx);
        }
        out
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn rank(&self) -> usize {
        self.extents.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.extents.len());
        let mut flat = 0usize;
        for (i, &e) in idx.iter().zip(&self.extents) {
            debug_assert!(*i < e);
            flat = flat * e + i;
        }
        flat
    }

    pub fn unflatten(&self, mut flat: usize, idx: &mut [usize]) {
        for axis in (0..self.extents.len()).rev() {
            idx[axis] = flat % self.extents[axis];
            flat /= self.extents[axis];
        }
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let flat = self.flatten(idx);
        self.data[flat] = value;
    }

    pub fn get_flat(&self, flat: usize) -> f64 {
        self.data[flat]
    }

    pub fn set_flat(&mut self, flat: usize, value: f64) {
        self.data[flat] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn sup_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Visits every multi-index in row-major order.
    pub fn for_each_index(&self, mut f: impl FnMut(&[usize])) {
        let mut idx = vec![0usize; self.extents.len()];
        for flat in 0..self.data.len() {
            self.unflatten(flat, &mut idx);
            f(&idx);
        }
    }

    /// Second-order derivative along one axis: central differences inside,
    /// one-sided three-point stencils on the ends, or wraparound when the
    /// axis is periodic.
    pub fn derivative(&self, axis: usize, h: f64, periodic: bool) -> Result<ScalarGrid> {
        let m = self.extents[axis];
        if m < 3 {
            return Err(Error::Invalid(format!(
                "axis {axis} has extent {m}; stencils need >= 3 points"
            )));
        }
        let mut out = ScalarGrid::zeros(&self.extents);
        let mut idx = vec![0usize; self.extents.len()];
        for flat in 0..self.data.len() {
            self.unflatten(flat, &mut idx);
            let i = idx[axis];
            let at = |j: usize| {
                let mut idx2 = idx.clone();
                idx2[axis] = j;
                self.get(&idx2)
            };
            let d = if periodic {
                (at((i + 1) % m) - at((i + m - 1) % m)) / (2.0 * h)
            } else if i == 0 {
                (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * h)
            } else if i == m - 1 {
                (3.0 * at(m - 1) - 4.0 * at(m - 2) + at(m - 3)) / (2.0 * h)
            } else {
                (at(i + 1) - at(i - 1)) / (2.0 * h)
            };
            out.data[flat] = d;
        }
        Ok(out)
    }

    /// True when `idx` touches any non-periodic face.
    pub fn on_boundary(&self, idx: &[usize], periodic: &[bool]) -> bool {
        idx.iter().enumerate().any(|(axis, &i)| {
            !periodic.get(axis).copied().unwrap_or(false)
                && (i == 0 || i + 1 == self.extents[axis])
        })
    }
}

/// Geometry sidecar written next to every grid dump.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMeta {
    pub extents: Vec<usize>,
    pub spacing: Vec<f64>,
    pub origin: Vec<f64>,
}

impl GridMeta {
    pub fn coordinate(&self, axis: usize, i: usize) -> f64 {
        self.origin[axis] + self.spacing[axis] * i as f64
    }
}

/// Writes `field.csv` with header `x0,...,xn,<name>`, one row per grid node
/// in row-major order.
pub fn write_grid_csv(dir: &Path, name: &str, grid: &ScalarGrid, meta: &GridMeta) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut file = std::fs::File::create(dir.join(format!("{name}.csv")))?;
    let header: Vec<String> = (0..grid.rank()).map(|a| format!("x{a}")).collect();
    writeln!(file, "{},{}", header.join(","), name)?;
    let mut idx = vec![0usize; grid.rank()];
    for flat in 0..grid.len() {
        grid.unflatten(flat, &mut idx);
        let coords: Vec<String> = idx
            .iter()
            .enumerate()
            .map(|(a, &i)| format!("{}", meta.coordinate(a, i)))
            .collect();
        writeln!(file, "{},{}", coords.join(","), grid.get_flat(flat))?;
    }
    Ok(())
}

/// Writes the `grid.txt` sidecar holding extents, spacings, and origin.
pub fn write_grid_meta(dir: &Path, meta: &GridMeta) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut file = std::fs::File::create(dir.join("grid.txt"))?;
    let join_us = |v: &[usize]| {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let join_f = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    writeln!(file, "# grid geometry")?;
    writeln!(file, "extents={}", join_us(&meta.extents))?;
    writeln!(file, "spacing={}", join_f(&meta.spacing))?;
    writeln!(file, "origin={}", join_f(&meta.origin))?;
    Ok(())
}

pub fn read_grid_meta(dir: &Path) -> Result<GridMeta> {
    let file = std::fs::File::open(dir.join("grid.txt"))?;
    let mut extents = None;
    let mut spacing = None;
    let mut origin = None;
    for line in BufReader::new(file).lines() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{line}`")))?;
        match key.trim() {
            "extents" => {
                extents = Some(
                    value
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|e| Error::Parse(e.to_string()))?,
                )
            }
            "spacing" => spacing = Some(parse_f64_list(value)?),
            "origin" => origin = Some(parse_f64_list(value)?),
            other => return Err(Error::Parse(format!("unknown grid key `{other}`"))),
        }
    }
    match (extents, spacing, origin) {
        (Some(extents), Some(spacing), Some(origin)) => Ok(GridMeta {
            extents,
            spacing,
            origin,
        }),
        _ => Err(Error::Parse(
            "grid.txt must define extents, spacing, origin".into(),
        )),
    }
}

fn parse_f64_list(value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(e.to_string()))
        })
        .collect()
}

/// Reads `name.csv` assuming the geometry in `meta`; validates the header
/// and row count.
pub fn read_grid_csv(dir: &Path, name: &str, meta: &GridMeta) -> Result<ScalarGrid> {
    let file = std::fs::File::open(dir.join(format!("{name}.csv")))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty csv".into()))??;
    let cols: Vec<&str> = header.split(',').collect();
    if cols.len() != meta.extents.len() + 1 || cols[meta.extents.len()] != name {
        return Err(Error::Parse(format!(
            "unexpected csv header `{header}` for field `{name}`"
        )));
    }
    let mut grid = ScalarGrid::zeros(&meta.extents);
    let mut flat = 0usize;
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let value = line
            .rsplit(',')
            .next()
            .ok_or_else(|| Error::Parse("short csv row".into()))?
            .trim()
            .parse::<f64>()
            .map_err(|e| Error::Parse(e.to_string()))?;
        if flat >= grid.len() {
            return Err(Error::Parse("csv has more rows than grid nodes".into()));
        }
        grid.set_flat(flat, value);
        flat += 1;
    }
    if flat != grid.len() {
        return Err(Error::Parse(format!(
            "csv has {flat} rows, grid needs {}",
            grid.len()
        )));
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_round_trips() {
        let g = ScalarGrid::zeros(&[3, 4, 5]);
        let mut idx = vec![0; 3];
        for flat in 0..g.len() {
            g.unflatten(flat, &mut idx);
            assert_eq!(g.flatten(&idx), flat);
        }
    }

    #[test]
    fn derivative_exact_on_linear_fields() {
        let g = ScalarGrid::from_fn(&[5, 5], |idx| 2.0 * idx[0] as f64 - 3.0 * idx[1] as f64);
        let dx = g.derivative(0, 1.0, false).unwrap();
        let dy = g.derivative(1, 1.0, false).unwrap();
        for flat in 0..g.len() {
            assert!((dx.get_flat(flat) - 2.0).abs() < 1e-13);
            assert!((dy.get_flat(flat) + 3.0).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_second_order_on_smooth_fields() {
        let err_at = |m: usize| {
            let h = 1.0 / (m - 1) as f64;
            let g = ScalarGrid::from_fn(&[m], |idx| (idx[0] as f64 * h).sin());
            let d = g.derivative(0, h, false).unwrap();
            let mut err: f64 = 0.0;
            for i in 0..m {
                err = err.max((d.get(&[i]) - (i as f64 * h).cos()).abs());
            }
            err
        };
        let order = (err_at(33) / err_at(65)).log2();
        assert!(order > 1.8 && order < 2.2, "observed order {order}");
    }

    #[test]
    fn periodic_derivative_wraps() {
        let m = 64;
        let h = std::f64::consts::TAU / m as f64;
        let g = ScalarGrid::from_fn(&[m], |idx| (idx[0] as f64 * h).sin());
        let d = g.derivative(0, h, true).unwrap();
        for i in 0..m {
            assert!((d.get(&[i]) - (i as f64 * h).cos()).abs() < h * h);
        }
    }

    #[test]
    fn csv_round_trip() {
        let dir = std::env::temp_dir().join("hpfield_grid_io_test");
        let meta = GridMeta {
            extents: vec![4, 3],
            spacing: vec![0.5, 0.25],
            origin: vec![0.0, -1.0],
        };
        let grid = ScalarGrid::from_fn(&[4, 3], |idx| (idx[0] * 10 + idx[1]) as f64 / 7.0);
        write_grid_meta(&dir, &meta).unwrap();
        write_grid_csv(&dir, "phi", &grid, &meta).unwrap();
        let meta2 = read_grid_meta(&dir).unwrap();
        assert_eq!(meta, meta2);
        let grid2 = read_grid_csv(&dir, "phi", &meta2).unwrap();
        assert_eq!(grid, grid2);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn rejects_unknown_meta_keys() {
        let dir = std::env::temp_dir().join("hpfield_grid_meta_bad");
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join("grid.txt"), "extents=2\nspacing=1\norigin=0\nbogus=1\n").unwrap();
        assert!(read_grid_meta(&dir).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }
}
