use nalgebra::DVector;

use super::newton::newton_root;
use super::section::DiscreteSection;
use crate::jet::{GridMeta, JetSlots, Lagrangian, ScalarGrid};
use crate::{tol, Error, Result};

/// Time history of a constrained mechanical solve.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// Configuration at each node, `[node][coordinate]`.
    pub q: Vec<Vec<f64>>,
    /// Velocity at each node.
    pub v: Vec<Vec<f64>>,
    /// Constraint multiplier on each interval, evaluated at its midpoint.
    pub lambda: Vec<Vec<f64>>,
}

impl Trajectory {
    /// Worst violation of `A(t, q) v + B(t, q) = 0` over the stored nodes.
    pub fn max_constraint_violation(&self, model: &dyn Lagrangian) -> f64 {
        let constraint = model
            .constraint()
            .expect("trajectory produced by a constrained solve");
        let mut worst: f64 = 0.0;
        for j in 0..self.times.len() {
            let (a, b) = constraint.coefficients(self.times[j], &self.q[j]);
            for (row, offset) in a.iter().zip(&b) {
                let value: f64 = row
                    .iter()
                    .zip(&self.v[j])
                    .map(|(&c, &vj)| c * vj)
                    .sum::<f64>()
                    + offset;
                worst = worst.max(value.abs());
            }
        }
        worst
    }
}

fn as_jet(v: &[f64]) -> JetSlots {
    v.iter().map(|&c| vec![c]).collect()
}

/// Mechanical energy `v . dL/dv - L` at one state of a one-dimensional-base
/// model. Conserved along constrained solutions whenever the density has no
/// explicit time dependence and the constraint is homogeneous.
pub fn mechanical_energy(model: &dyn Lagrangian, t: f64, q: &[f64], v: &[f64]) -> f64 {
    let vj = as_jet(v);
    let pmom = model.dl_dv(&[t], q, &vj);
    let kinetic: f64 = pmom.iter().zip(v).map(|(row, &c)| row[0] * c).sum();
    kinetic - model.lagrangian(&[t], q, &vj)
}

/// One implicit-midpoint step of the constrained momentum balance:
/// solves for `(q1, v1, lambda)` such that
///
/// ```text
/// q1 = q0 + dt (v0 + v1) / 2
/// dL/dv|1 - dL/dv|0 = dt (dL/dq|mid + lambda^T A|mid)
/// A(t1, q1) v1 + B(t1, q1) = 0
/// ```
///
/// with the midpoint state `(t0 + dt/2, (q0 + q1)/2, (v0 + v1)/2)`.
pub fn nonholonomic_step(
    model: &dyn Lagrangian,
    t0: f64,
    q0: &[f64],
    v0: &[f64],
    dt: f64,
    lambda_guess: &[f64],
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let constraint = model
        .constraint()
        .ok_or_else(|| Error::Invalid("model has no velocity constraint".into()))?;
    let f = model.chart().fiber_dim();
    let r = constraint.rows();
    let t1 = t0 + dt;
    let th = t0 + 0.5 * dt;
    let pmom0 = model.dl_dv(&[t0], q0, &as_jet(v0));

    let mut residual = |z: &DVector<f64>| -> Result<DVector<f64>> {
        let q1: Vec<f64> = (0..f).map(|a| z[a]).collect();
        let v1: Vec<f64> = (0..f).map(|a| z[f + a]).collect();
        let lambda: Vec<f64> = (0..r).map(|k| z[2 * f + k]).collect();
        let qh: Vec<f64> = (0..f).map(|a| 0.5 * (q0[a] + q1[a])).collect();
        let vh: Vec<f64> = (0..f).map(|a| 0.5 * (v0[a] + v1[a])).collect();
        let pmom1 = model.dl_dv(&[t1], &q1, &as_jet(&v1));
        let dl_dq_mid = model.dl_dy(&[th], &qh, &as_jet(&vh));
        let (a_mid, _) = constraint.coefficients(th, &qh);
        let (a_end, b_end) = constraint.coefficients(t1, &q1);
        let mut out = DVector::zeros(2 * f + r);
        for a in 0..f {
            out[a] = q1[a] - q0[a] - dt * vh[a];
            let mut force = dl_dq_mid[a];
            for k in 0..r {
                force += lambda[k] * a_mid[k][a];
            }
            out[f + a] = pmom1[a][0] - pmom0[a][0] - dt * force;
        }
        for k in 0..r {
            let mut c = b_end[k];
            for a in 0..f {
                c += a_end[k][a] * v1[a];
            }
            out[2 * f + k] = c;
        }
        Ok(out)
    };

    let mut z0 = DVector::zeros(2 * f + r);
    for a in 0..f {
        z0[a] = q0[a] + dt * v0[a];
        z0[f + a] = v0[a];
    }
    for k in 0..r {
        z0[2 * f + k] = lambda_guess[k];
    }
    let (z, _) = newton_root(&mut residual, &z0, tol::STEP_TOL, tol::NEWTON_MAX_ITER)?;
    Ok((
        (0..f).map(|a| z[a]).collect(),
        (0..f).map(|a| z[f + a]).collect(),
        (0..r).map(|k| z[2 * f + k]).collect(),
    ))
}

/// Marches the constrained system and returns both the raw trajectory and a
/// one-dimensional-base section holding the integrator states verbatim
/// (velocities are the solver's, not re-differenced), with polymomenta from
/// the momentum map and the scalar momentum zeroing the generalized energy.
pub fn nonholonomic_solve(
    model: &dyn Lagrangian,
    t0: f64,
    q0: &[f64],
    v0: &[f64],
    steps: usize,
    dt: f64,
) -> Result<(Trajectory, DiscreteSection)> {
    let constraint = model
        .constraint()
        .ok_or_else(|| Error::Invalid("model has no velocity constraint".into()))?;
    let f = model.chart().fiber_dim();
    let r = constraint.rows();
    let mut trajectory = Trajectory {
        times: vec![t0],
        q: vec![q0.to_vec()],
        v: vec![v0.to_vec()],
        lambda: Vec::with_capacity(steps),
    };
    let mut lambda_guess = vec![0.0; r];
    for j in 0..steps {
        let t = t0 + dt * j as f64;
        let (q1, v1, lambda) = nonholonomic_step(
            model,
            t,
            &trajectory.q[j],
            &trajectory.v[j],
            dt,
            &lambda_guess,
        )?;
        lambda_guess = lambda.clone();
        trajectory.times.push(t + dt);
        trajectory.q.push(q1);
        trajectory.v.push(v1);
        trajectory.lambda.push(lambda);
    }

    let meta = GridMeta {
        extents: vec![steps + 1],
        spacing: vec![dt],
        origin: vec![t0],
    };
    let y: Vec<ScalarGrid> = (0..f)
        .map(|a| ScalarGrid::from_fn(&[steps + 1], |idx| trajectory.q[idx[0]][a]))
        .collect();
    let v: Vec<Vec<ScalarGrid>> = (0..f)
        .map(|a| vec![ScalarGrid::from_fn(&[steps + 1], |idx| trajectory.v[idx[0]][a])])
        .collect();
    let zeros = ScalarGrid::zeros(&[steps + 1]);
    let mut section = DiscreteSection {
        chart: model.chart().clone(),
        meta,
        periodic: vec![false],
        y,
        v,
        pmom: vec![vec![zeros.clone()]; f],
        p: zeros,
    };
    section.refresh_momenta(model);
    Ok((trajectory, section))
}
