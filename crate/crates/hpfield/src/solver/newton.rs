use nalgebra::{DMatrix, DVector};

use super::residual::{assemble_residual, pack_unknowns, unpack_unknowns};
use super::section::DiscreteSection;
use crate::jet::Lagrangian;
use crate::{tol, Error, Result};

/// Outcome of a converged Newton iteration.
#[derive(Debug, Clone, Copy)]
pub struct NewtonReport {
    pub iterations: usize,
    pub residual_sup: f64,
}

/// Damped Newton iteration on a square root-finding problem with a dense
/// forward-difference Jacobian. Steps are halved until the residual sup norm
/// decreases (down to a floor, after which the step is taken anyway and the
/// outer loop continues).
pub fn newton_root(
    f: &mut dyn FnMut(&DVector<f64>) -> Result<DVector<f64>>,
    x0: &DVector<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<(DVector<f64>, NewtonReport)> {
    let n = x0.len();
    let mut x = x0.clone();
    let mut r = f(&x)?;
    if r.len() != n {
        return Err(Error::DimensionMismatch {
            left: r.len(),
            right: n,
        });
    }
    for iteration in 0..max_iter {
        let sup = r.amax();
        if sup < tol {
            return Ok((
                x,
                NewtonReport {
                    iterations: iteration,
                    residual_sup: sup,
                },
            ));
        }
        let mut jacobian = DMatrix::zeros(n, n);
        for j in 0..n {
            let eps = tol::NEWTON_FD_EPS * (1.0 + x[j].abs());
            let mut xp = x.clone();
            xp[j] += eps;
            let rp = f(&xp)?;
            for i in 0..n {
                jacobian[(i, j)] = (rp[i] - r[i]) / eps;
            }
        }
        let lu = jacobian.lu();
        let delta = lu.solve(&r).ok_or(Error::SingularJacobian { size: n })?;
        let mut scale = 1.0;
        loop {
            let xn = &x - &delta * scale;
            let rn = f(&xn)?;
            if rn.amax() < sup || scale < tol::NEWTON_MIN_DAMPING {
                x = xn;
                r = rn;
                break;
            }
            scale *= 0.5;
        }
    }
    let sup = r.amax();
    if sup < tol {
        Ok((
            x,
            NewtonReport {
                iterations: max_iter,
                residual_sup: sup,
            },
        ))
    } else {
        Err(Error::NonConvergence {
            residual: sup,
            iterations: max_iter,
        })
    }
}

/// Solves the boundary-value first-order system in place, starting from the
/// section's current grids. On success the adjustable grids hold the root,
/// the polymomenta are refreshed through the momentum map (so the momentum
/// rows are satisfied exactly), and the scalar momentum zeroes the
/// generalized energy.
pub fn newton_solve(model: &dyn Lagrangian, section: &mut DiscreteSection) -> Result<NewtonReport> {
    let x0 = pack_unknowns(section);
    let mut scratch = section.clone();
    let mut eval = |x: &DVector<f64>| {
        unpack_unknowns(&mut scratch, x);
        assemble_residual(model, &scratch)
    };
    let (x, report) = newton_root(&mut eval, &x0, tol::NEWTON_TOL, tol::NEWTON_MAX_ITER)?;
    unpack_unknowns(section, &x);
    section.refresh_momenta(model);
    Ok(report)
}
