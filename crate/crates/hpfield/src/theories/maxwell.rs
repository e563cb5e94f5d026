use crate::jet::{ChartSpec, JetSlots, Lagrangian};
use crate::theories::Hyperbolic;

/// Electromagnetic potential on a flat base of dimension 2 or 3 with metric
/// `diag(+1, -1, ...)`, density `L = -F_{mn} F^{mn} / 4`, and field strength
/// `F_{mn} = dA_m/dx^n - dA_n/dx^m` built from the jet slots. The momenta
/// `dL/dv[m][n] = -F^{mn}` are antisymmetric, which is the structural
/// invariant the suite pins down; the sign itself is part of the reported
/// convention.
#[derive(Debug, Clone)]
pub struct MaxwellModel {
    chart: ChartSpec,
    metric: Vec<f64>,
}

impl MaxwellModel {
    /// `base_dim` is the full spacetime dimension (one time plus
    /// `base_dim - 1` space); supported sizes are 2 and 3.
    pub fn new(base_dim: usize) -> Self {
        let (base, fiber): (Vec<&str>, Vec<&str>) = match base_dim {
            2 => (vec!["t", "x"], vec!["A0", "A1"]),
            3 => (vec!["t", "x", "z"], vec!["A0", "A1", "A2"]),
            other => panic!("unsupported base dimension {other}; use 2 or 3"),
        };
        let mut metric = vec![-1.0; base_dim];
        metric[0] = 1.0;
        MaxwellModel {
            chart: ChartSpec::new(base, fiber).expect("static chart"),
            metric,
        }
    }

    pub fn base_dim(&self) -> usize {
        self.metric.len()
    }

    /// `F_{mn} = v[m][n] - v[n][m]`, indices down.
    pub fn field_strength(&self, v: &JetSlots) -> Vec<Vec<f64>> {
        let d = self.base_dim();
        let mut f = vec![vec![0.0; d]; d];
        for m in 0..d {
            for n in 0..d {
                f[m][n] = v[m][n] - v[n][m];
            }
        }
        f
    }

    fn field_strength_up(&self, v: &JetSlots) -> Vec<Vec<f64>> {
        let d = self.base_dim();
        let low = self.field_strength(v);
        let mut up = vec![vec![0.0; d]; d];
        for m in 0..d {
            for n in 0..d {
                up[m][n] = self.metric[m] * self.metric[n] * low[m][n];
            }
        }
        up
    }
}

impl Lagrangian for MaxwellModel {
    fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    fn lagrangian(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> f64 {
        let d = self.base_dim();
        let low = self.field_strength(v);
        let up = self.field_strength_up(v);
        let mut s = 0.0;
        for m in 0..d {
            for n in 0..d {
                s += low[m][n] * up[m][n];
            }
        }
        -0.25 * s
    }

    fn dl_dx(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0; self.base_dim()]
    }

    fn dl_dy(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0; self.base_dim()]
    }

    fn dl_dv(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> JetSlots {
        let up = self.field_strength_up(v);
        up.iter()
            .map(|row| row.iter().map(|&g| -g).collect())
            .collect()
    }
}

impl Hyperbolic for MaxwellModel {
    /// In the Lorenz gauge every component obeys the free wave equation.
    fn second_order_source(&self, fields: &[f64]) -> Vec<f64> {
        vec![0.0; fields.len()]
    }
}

/// Transverse plane wave on the 3-dimensional base: only the component
/// orthogonal to the propagation plane is excited, `A_2 = sin(k (x - t))`.
/// Satisfies the field equations and the Lorenz gauge exactly.
pub fn transverse_plane_wave(k: f64, t: f64, x: f64) -> Vec<f64> {
    vec![0.0, 0.0, (k * (x - t)).sin()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::check_partials;
    use crate::tol;

    #[test]
    fn momenta_are_antisymmetric() {
        for d in [2, 3] {
            let m = MaxwellModel::new(d);
            let v: JetSlots = (0..d)
                .map(|a| (0..d).map(|mu| ((a * d + mu) as f64 * 0.37).sin()).collect())
                .collect();
            let pmom = m.dl_dv(&vec![0.0; d], &vec![0.0; d], &v);
            for a in 0..d {
                for mu in 0..d {
                    assert!(
                        (pmom[a][mu] + pmom[mu][a]).abs() < 1e-14,
                        "pmom[{a}][{mu}] not antisymmetric"
                    );
                }
            }
        }
    }

    #[test]
    fn momentum_sign_convention() {
        // With only v[2][1] = c nonzero: F_{21} = c, F^{21} = (-1)(-1) c = c,
        // so pmom[2][1] = -c.
        let m = MaxwellModel::new(3);
        let mut v: JetSlots = vec![vec![0.0; 3]; 3];
        v[2][1] = 0.6;
        let pmom = m.dl_dv(&vec![0.0; 3], &vec![0.0; 3], &v);
        assert!((pmom[2][1] + 0.6).abs() < 1e-15);
        assert!((pmom[1][2] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn partials_match_finite_differences() {
        for d in [2, 3] {
            let m = MaxwellModel::new(d);
            assert!(check_partials(&m, tol::DEFAULT_SEED, 60) < tol::PARTIALS_REL);
        }
    }

    #[test]
    fn plane_wave_balances_momentum_divergence() {
        // d_mu pmom[a][mu] must vanish on the plane wave; check it by
        // central differences of the analytic momenta.
        let m = MaxwellModel::new(3);
        let k = 1.7;
        let eps = 1e-5;
        let jet_at = |t: f64, x: f64| -> JetSlots {
            let mut v = vec![vec![0.0; 3]; 3];
            // Only A2 varies, in t and x.
            v[2][0] = -k * (k * (x - t)).cos();
            v[2][1] = k * (k * (x - t)).cos();
            v
        };
        let pm = |t: f64, x: f64| m.dl_dv(&[t, x, 0.0], &[0.0; 3], &jet_at(t, x));
        let (t0, x0) = (0.35, 0.8);
        for a in 0..3 {
            let div = (pm(t0 + eps, x0)[a][0] - pm(t0 - eps, x0)[a][0]) / (2.0 * eps)
                + (pm(t0, x0 + eps)[a][1] - pm(t0, x0 - eps)[a][1]) / (2.0 * eps);
            assert!(div.abs() < 1e-6, "component {a}: divergence {div}");
        }
    }
}
