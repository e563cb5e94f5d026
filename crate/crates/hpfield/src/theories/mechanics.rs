use crate::jet::{AffineConstraint, ChartSpec, JetSlots, Lagrangian};

/// Free particle in the plane: `L = |v|^2 / 2` over a one-dimensional base.
#[derive(Debug, Clone)]
pub struct FreeParticle {
    chart: ChartSpec,
}

impl FreeParticle {
    pub fn new() -> Self {
        FreeParticle {
            chart: ChartSpec::new(["t"], ["qx", "qy"]).expect("static chart"),
        }
    }
}

impl Default for FreeParticle {
    fn default() -> Self {
        FreeParticle::new()
    }
}

impl Lagrangian for FreeParticle {
    fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    fn lagrangian(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> f64 {
        0.5 * (v[0][0] * v[0][0] + v[1][0] * v[1][0])
    }

    fn dl_dx(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0]
    }

    fn dl_dy(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0, 0.0]
    }

    fn dl_dv(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> JetSlots {
        vec![vec![v[0][0]], vec![v[1][0]]]
    }
}

/// Free particle in the plane whose velocity is forced onto a rotating line:
/// `vy = t vx`, written as the affine row `(-t) vx + (1) vy + 0 = 0`. The
/// Lagrange-multiplier equations close in quadratures; see
/// [`shear_closed_form`].
#[derive(Debug, Clone)]
pub struct PlaneShearConstrained {
    chart: ChartSpec,
    constraint: ShearConstraint,
}

#[derive(Debug, Clone)]
struct ShearConstraint;

impl AffineConstraint for ShearConstraint {
    fn rows(&self) -> usize {
        1
    }

    fn coefficients(&self, t: f64, _q: &[f64]) -> (Vec<Vec<f64>>, Vec<f64>) {
        (vec![vec![-t, 1.0]], vec![0.0])
    }
}

impl PlaneShearConstrained {
    pub fn new() -> Self {
        PlaneShearConstrained {
            chart: ChartSpec::new(["t"], ["qx", "qy"]).expect("static chart"),
            constraint: ShearConstraint,
        }
    }
}

impl Default for PlaneShearConstrained {
    fn default() -> Self {
        PlaneShearConstrained::new()
    }
}

impl Lagrangian for PlaneShearConstrained {
    fn chart(&self) -> &ChartSpec {
        &self.chart
    }

    fn lagrangian(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> f64 {
        0.5 * (v[0][0] * v[0][0] + v[1][0] * v[1][0])
    }

    fn dl_dx(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0]
    }

    fn dl_dy(&self, _x: &[f64], _y: &[f64], _v: &JetSlots) -> Vec<f64> {
        vec![0.0, 0.0]
    }

    fn dl_dv(&self, _x: &[f64], _y: &[f64], v: &JetSlots) -> JetSlots {
        vec![vec![v[0][0]], vec![v[1][0]]]
    }

    fn constraint(&self) -> Option<&dyn AffineConstraint> {
        Some(&self.constraint)
    }
}

/// Exact trajectory of [`PlaneShearConstrained`] started from the origin
/// with `v(0) = (1, 0)`: returns `(q, v, lambda)` at time `t`. The speed
/// stays exactly 1, so the energy `|v|^2 / 2` is conserved.
pub fn shear_closed_form(t: f64) -> ([f64; 2], [f64; 2], f64) {
    let s = (1.0 + t * t).sqrt();
    let q = [t.asinh(), s - 1.0];
    let v = [1.0 / s, t / s];
    // Multiplier from m vdot = lambda A^T: vdot_y = lambda, and
    // d/dt (t / s) = 1 / s^3.
    let lambda = 1.0 / (s * s * s);
    (q, v, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::check_partials;
    use crate::tol;

    #[test]
    fn closed_form_satisfies_constraint_and_dynamics() {
        for &t in &[0.0, 0.3, 1.0, 2.5] {
            let (_q, v, lambda) = shear_closed_form(t);
            // Constraint row: -t vx + vy = 0.
            assert!((-t * v[0] + v[1]).abs() < 1e-14);
            // Unit speed, hence conserved energy.
            assert!((v[0] * v[0] + v[1] * v[1] - 1.0).abs() < 1e-14);
            // Multiplier equations: vdot_x = -lambda t, vdot_y = lambda,
            // checked against centered differences of the closed form.
            let h = 1e-5;
            let (_, vp, _) = shear_closed_form(t + h);
            let (_, vm, _) = shear_closed_form(t - h);
            let vdot = [(vp[0] - vm[0]) / (2.0 * h), (vp[1] - vm[1]) / (2.0 * h)];
            assert!((vdot[0] + lambda * t).abs() < 1e-8);
            assert!((vdot[1] - lambda).abs() < 1e-8);
        }
    }

    #[test]
    fn position_derivative_matches_velocity() {
        let h = 1e-5;
        for &t in &[0.2, 0.9, 1.7] {
            let (_, v, _) = shear_closed_form(t);
            let (qp, _, _) = shear_closed_form(t + h);
            let (qm, _, _) = shear_closed_form(t - h);
            assert!(((qp[0] - qm[0]) / (2.0 * h) - v[0]).abs() < 1e-9);
            assert!(((qp[1] - qm[1]) / (2.0 * h) - v[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn partials_match_finite_differences() {
        assert!(check_partials(&PlaneShearConstrained::new(), tol::DEFAULT_SEED, 40) < tol::PARTIALS_REL);
        assert!(check_partials(&FreeParticle::new(), tol::DEFAULT_SEED, 40) < tol::PARTIALS_REL);
    }
}
