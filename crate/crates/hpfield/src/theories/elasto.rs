use crate::jet::{BoundarySpec, ChartSpec, FaceCondition, JetSlots, Lagrangian};

/// Linear elastostatics on a 1- or 2-dimensional box: displacement fields
/// over purely spatial base coordinates, stored energy density
/// `W = lambda tr(e)^2 / 2 + mu e:e` with strain `e = (v + v^T) / 2`, and
/// stress `sigma = dW/dv = lambda tr(e) I + 2 mu e`. The balance law is
/// `d_I sigma[i][I] = 0` with clamped or traction faces.
#[derive(Debug, Clone)]
pub struct ElastoModel {
    chart: ChartSpec,
    pub lambda: f64,
    pub mu: f64,
    boundary: BoundarySpec,
}

impl ElastoModel {
    /// Clamped rod stretched by an end traction `tau`: exact displacement
    /// `u = tau x / (2 mu)` when `lambda = 0` (so the stiffness is `2 mu`).
    pub fn rod(mu: f64, tau: f64) -> Self {
        ElastoModel {
            chart: ChartSpec::new(["x"], ["u"]).expect("static chart"),
            lambda: 0.0,
            mu,
            boundary: BoundarySpec::new(vec![
                FaceCondition::Clamped,
                FaceCondition::Traction(vec![tau]),
            ]),
        }
    }

    /// Plane patch with the left face clamped, the right face pulled by
    /// `(tau, 0)`, and free top and bottom. With `lambda = 0` the exact
    /// displacement is `u = (tau x / (2 mu), 0)`.
    pub fn patch(mu: f64, tau: f64) -> Self {
        ElastoModel {
            chart: ChartSpec::new(["x", "z"], ["u0", "u1"]).expect("static chart"),
            lambda: 0.0,
            mu,
            boundary: BoundarySpec::new(vec![
                FaceCondition::Clamped,
                FaceCondition::Traction(vec![tau, 0.0]),
                FaceCondition::Traction(vec![0.0, 0.0]),
                FaceCondition::Traction(vec![0.0, 0.0]),
            ]),
        }
    }

    /// Plane patch with nonzero `lambda`, confined so the exact displacement
    /// stays uniaxial: `u = (a x, 0)` with `a = tau / (lambda + 2 mu)`
    /// requires tractions `(0, -lambda a)` and `(0, lambda a)` on the bottom
    /// and top faces.
    pub fn patch_confined(lambda: f64, mu: f64, tau: f64) -> Self {
        let a = tau / (lambda + 2.0 * mu);
        ElastoModel {
            chart: ChartSpec::new(["x", "z"], ["u0", "u1"]).expect("static chart"),
            lambda,
            mu,
            boundary: BoundarySpec::new(vec![
                FaceCondition::Clamped,
                FaceCondition::Traction(vec![tau, 0.0]),
                FaceCondition::Traction(vec![0.0, -lambda * a]),
                FaceCondition::Traction(vec![0.0, lambda * a]),
            ]),
        }
    }

    pub fn spatial_dim(&self) -> usize {
        self.chart.base_dim()
    }

    pub fn strain(&self, v: &JetSlots) -> Vec<Vec<f64>> {
        let d = self.spatial_dim();
        let mut e = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..d {
                e[i][j] = 0.5 * (v[i][j] + v[j][i]);
            }
        }
        e
    }

    pub fn stress(&self, v: &JetSlots) -> Vec<Vec<f64>> {
        let d = self.spatial_dim();
        let e = self.strain(v);
        let tr: f64 = (0..d).map(|i| e[i][i]).sum();
        let mut s = vec![vec![0.0; d]; d];
        for i in 0..d {
            for j in 0..d {
                s[i][j] = 2.0 * self.mu * e[i][j];
                if i == j {
                    s[i][j] += self.lambda * tr;
                }
            }
        }
        s
    }

    /// The rank-4 stiffness contracting strain to stress:
    /// `c[i][j][k][l] = lambda d_ij d_kl + mu (d_ik d_jl + d_il d_jk)`.
    pub fn stiffness(&self) -> Vec<Vec<Vec<Vec<f64>>>> {
        let d = self.spatial_dim();
        let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
        let mut c = vec![vec![vec![vec![0.0; d]; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        c[i][j][k][l] = self.lambda * delta(i, j) * delta(k, l)
                            + self.mu * (delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k));
                    }
                }
            }
        }
        c
    }
}

impl Lagrangian for ElastoModel {
    fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    fn lagrangian(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> f64 {
        let d = self.spatial_dim();
        let e = self.strain(v);
        let tr: f64 = (0..d).map(|i| e[i][i]).sum();
        let mut ee = 0.0;
        for i in 0..d {
            for j in 0..d {
                ee += e[i][j] * e[i][j];
            }
        }
        0.5 * self.lambda * tr * tr + self.mu * ee
    }

    fn dl_dx(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0; self.spatial_dim()]
    }

    fn dl_dy(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0; self.chart.fiber_dim()]
    }

    fn dl_dv(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> JetSlots {
        self.stress(v)
    }

    fn boundary(&self) -> Option<&BoundarySpec> {
        Some(&self.boundary)
    }
}

/// The boundary two-point data `B[i][I] = tau_i n^I` for a traction `tau`
/// over a unit outward normal `n`; contracting back with the normal returns
/// the traction exactly.
pub fn boundary_form(traction: &[f64], normal: &[f64]) -> Vec<Vec<f64>> {
    traction
        .iter()
        .map(|&t| normal.iter().map(|&n| t * n).collect())
        .collect()
}
