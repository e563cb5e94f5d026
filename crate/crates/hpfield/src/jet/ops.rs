use rand::RngExt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{JetSlots, Lagrangian, PontryaginPoint};
use crate::exterior::{ExteriorElement, Variance};
use crate::tol;

/// Pointwise momentum map: polymomenta `p_A^mu = dL/dv^A_mu` and the scalar
/// momentum `p = L - (dL/dv^A_mu) v^A_mu`.
pub fn legendre_transform(
    model: &dyn Lagrangian,
    x: &[f64],
    y: &[f64],
    v: &JetSlots,
) -> (JetSlots, f64) {
    let pmom = model.dl_dv(x, y, v);
    let l = model.lagrangian(x, y, v);
    let mut contracted = 0.0;
    for (a, row) in pmom.iter().enumerate() {
        for (mu, &pm) in row.iter().enumerate() {
            contracted += pm * v[a][mu];
        }
    }
    (pmom, l - contracted)
}

/// Generalized energy `E = p + p_A^mu v^A_mu - L`; zero exactly on the image
/// of the momentum map.
pub fn generalized_energy(model: &dyn Lagrangian, pt: &PontryaginPoint) -> f64 {
    let mut e = pt.p - model.lagrangian(&pt.x, &pt.y, &pt.v);
    for (a, row) in pt.pmom.iter().enumerate() {
        for (mu, &pm) in row.iter().enumerate() {
            e += pm * pt.v[a][mu];
        }
    }
    e
}

/// Exterior derivative of the generalized energy at one point, as a grade-1
/// form on the momentum-extended chart:
///
/// ```text
/// dE = (-dL/dx^mu) dx^mu + (-dL/dy^A) dy^A
///    + (p_A^mu - dL/dv^A_mu) dv^A_mu + v^A_mu dp_A^mu + dp
/// ```
pub fn d_generalized_energy(model: &dyn Lagrangian, pt: &PontryaginPoint) -> ExteriorElement {
    let chart = model.chart();
    let dim = chart.pontryagin_dim();
    let dl_dx = model.dl_dx(&pt.x, &pt.y, &pt.v);
    let dl_dy = model.dl_dy(&pt.x, &pt.y, &pt.v);
    let dl_dv = model.dl_dv(&pt.x, &pt.y, &pt.v);
    let mut out = ExteriorElement::zero(dim, 1, Variance::Covariant);
    for mu in 0..chart.base_dim() {
        out.add_term_unsorted(&[chart.idx_x(mu)], -dl_dx[mu])
            .expect("chart index");
    }
    for a in 0..chart.fiber_dim() {
        out.add_term_unsorted(&[chart.idx_y(a)], -dl_dy[a])
            .expect("chart index");
        for mu in 0..chart.base_dim() {
            out.add_term_unsorted(&[chart.idx_v(a, mu)], pt.pmom[a][mu] - dl_dv[a][mu])
                .expect("chart index");
            out.add_term_unsorted(&[chart.idx_pmom(a, mu)], pt.v[a][mu])
                .expect("chart index");
        }
    }
    out.add_term_unsorted(&[chart.idx_p()], 1.0)
        .expect("chart index");
    out
}

/// Worst relative mismatch between the analytic partials of `model` and a
/// central finite-difference cross-check at `points` seeded random jet
/// points with coordinates in [-1, 1].
pub fn check_partials(model: &dyn Lagrangian, seed: u64, points: usize) -> f64 {
    let chart = model.chart();
    let b = chart.base_dim();
    let f = chart.fiber_dim();
    let eps = tol::PARTIALS_FD_EPS;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut record = |analytic: f64, lo: f64, hi: f64| {
        let fd = (hi - lo) / (2.0 * eps);
        let err = (analytic - fd).abs() / analytic.abs().max(1.0);
        if err > worst {
            worst = err;
        }
    };
    for _ in 0..points {
        let x: Vec<f64> = (0..b).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let y: Vec<f64> = (0..f).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let v: JetSlots = (0..f)
            .map(|_| (0..b).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect();

        let dl_dx = model.dl_dx(&x, &y, &v);
        for mu in 0..b {
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[mu] += eps;
            xm[mu] -= eps;
            record(
                dl_dx[mu],
                model.lagrangian(&xm, &y, &v),
                model.lagrangian(&xp, &y, &v),
            );
        }

        let dl_dy = model.dl_dy(&x, &y, &v);
        for a in 0..f {
            let mut yp = y.clone();
            let mut ym = y.clone();
            yp[a] += eps;
            ym[a] -= eps;
            record(
                dl_dy[a],
                model.lagrangian(&x, &ym, &v),
                model.lagrangian(&x, &yp, &v),
            );
        }

        let dl_dv = model.dl_dv(&x, &y, &v);
        for a in 0..f {
            for mu in 0..b {
                let mut vp = v.clone();
                let mut vm = v.clone();
                vp[a][mu] += eps;
                vm[a][mu] -= eps;
                record(
                    dl_dv[a][mu],
                    model.lagrangian(&x, &y, &vm),
                    model.lagrangian(&x, &y, &vp),
                );
            }
        }
    }
    worst
}
