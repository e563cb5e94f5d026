use crate::jet::{ChartSpec, JetSlots, Lagrangian};
use crate::theories::Hyperbolic;

/// Scalar field on a (1+1)-dimensional base with density
/// `L = (v_t^2 - v_x^2) / 2 + V(phi)`, where the potential is a polynomial
/// in the field value. The balance law is `phi_tt = phi_xx + V'(phi)`.
#[derive(Debug, Clone)]
pub struct WaveModel {
    chart: ChartSpec,
    /// Coefficients of `V`, lowest power first.
    potential: Vec<f64>,
}

impl WaveModel {
    pub fn new(potential: Vec<f64>) -> Self {
        WaveModel {
            chart: ChartSpec::new(["t", "x"], ["phi"]).expect("static chart"),
            potential,
        }
    }

    /// Free wave: `V = 0`, so `phi_tt = phi_xx`.
    pub fn free() -> Self {
        WaveModel::new(Vec::new())
    }

    /// Massive linear field: `V = -m^2 phi^2 / 2`, so `phi_tt = phi_xx
    /// - m^2 phi` and plane waves obey `omega^2 = k^2 + m^2`.
    pub fn klein_gordon(mass: f64) -> Self {
        WaveModel::new(vec![0.0, 0.0, -0.5 * mass * mass])
    }

    pub fn potential(&self, phi: f64) -> f64 {
        let mut acc = 0.0;
        for &c in self.potential.iter().rev() {
            acc = acc * phi + c;
        }
        acc
    }

    pub fn potential_prime(&self, phi: f64) -> f64 {
        let mut acc = 0.0;
        for (k, &c) in self.potential.iter().enumerate().skip(1).rev() {
            acc = acc * phi + k as f64 * c;
        }
        acc
    }
}

impl Lagrangian for WaveModel {
    fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    fn lagrangian(&self, _x: &[f64], y: &[f64], v: &JetSlots) -> f64 {
        0.5 * (v[0][0] * v[0][0] - v[0][1] * v[0][1]) + self.potential(y[0])
    }

    fn dl_dx(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0, 0.0]
    }

    fn dl_dy(&self, _x: &[f64], y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![self.potential_prime(y[0])]
    }

    fn dl_dv(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> JetSlots {
        vec![vec![v[0][0], -v[0][1]]]
    }
}

impl Hyperbolic for WaveModel {
    fn second_order_source(&self, fields: &[f64]) -> Vec<f64> {
        vec![self.potential_prime(fields[0])]
    }
}

/// Standing free wave `sin(x) cos(t)`: the half-sum of two traveling
/// profiles, and the reference for the free-wave convergence study.
pub fn standing_wave(t: f64, x: f64) -> f64 {
    x.sin() * t.cos()
}

/// Traveling massive plane wave `sin(k x - omega t)` with
/// `omega = sqrt(k^2 + m^2)`; the reference for the dispersion study.
pub fn dispersive_wave(mass: f64, k: f64, t: f64, x: f64) -> f64 {
    let omega = (k * k + mass * mass).sqrt();
    (k * x - omega * t).sin()
}
