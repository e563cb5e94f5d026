use crate::error::Result;
use crate::exterior::{interior_left, wedge, ExteriorElement, Variance};
use crate::jet::{ChartSpec, Lagrangian, PontryaginPoint};
use crate::jet::ops::d_generalized_energy;

/// The base volume form pulled up to the full chart: the wedge of all base
/// coordinate differentials, in index order, with unit coefficient.
pub fn horizontal_volume(chart: &ChartSpec) -> Result<ExteriorElement> {
    let indices: Vec<usize> = (0..chart.base_dim()).collect();
    ExteriorElement::basis(chart.pontryagin_dim(), Variance::Covariant, &indices, 1.0)
}

/// The volume form with one base direction contracted away:
/// `vol_mu = e_mu -| vol`, so `vol_0 = dx^1 ^ ... ` up to sign.
pub fn horizontal_volume_contracted(chart: &ChartSpec, mu: usize) -> Result<ExteriorElement> {
    let vol = horizontal_volume(chart)?;
    let e_mu = ExteriorElement::basis(
        chart.pontryagin_dim(),
        Variance::Contravariant,
        &[chart.idx_x(mu)],
        1.0,
    )?;
    interior_left(&e_mu, &vol)
}

/// The canonical tautological form at a point: momenta paired with field
/// differentials against the contracted volume, plus the covelocity times
/// the full volume.
pub fn canonical_theta(chart: &ChartSpec, pt: &PontryaginPoint) -> Result<ExteriorElement> {
    let dim = chart.pontryagin_dim();
    let mut theta = horizontal_volume(chart)?.scale(pt.p);
    for a in 0..chart.fiber_dim() {
        for mu in 0..chart.base_dim() {
            let coeff = pt.pmom[a][mu];
            if coeff == 0.0 {
                continue;
            }
            let dy = ExteriorElement::basis(dim, Variance::Covariant, &[chart.idx_y(a)], 1.0)?;
            let vol_mu = horizontal_volume_contracted(chart, mu)?;
            theta = theta.add(&wedge(&dy, &vol_mu)?.scale(coeff))?;
        }
    }
    Ok(theta)
}

/// The canonical multisymplectic form, with constant coefficients:
/// `sum_{A,mu} dy^A ^ dpmom[A]^mu ^ vol_mu - dp ^ vol`. Equal to minus the
/// exterior derivative of [`canonical_theta`].
pub fn canonical_omega(chart: &ChartSpec) -> Result<ExteriorElement> {
    let dim = chart.pontryagin_dim();
    let vol = horizontal_volume(chart)?;
    let dp = ExteriorElement::basis(dim, Variance::Covariant, &[chart.idx_p()], 1.0)?;
    let mut omega = wedge(&dp, &vol)?.scale(-1.0);
    for a in 0..chart.fiber_dim() {
        for mu in 0..chart.base_dim() {
            let dy = ExteriorElement::basis(dim, Variance::Covariant, &[chart.idx_y(a)], 1.0)?;
            let dpm =
                ExteriorElement::basis(dim, Variance::Covariant, &[chart.idx_pmom(a, mu)], 1.0)?;
            let vol_mu = horizontal_volume_contracted(chart, mu)?;
            omega = omega.add(&wedge(&wedge(&dy, &dpm)?, &vol_mu)?)?;
        }
    }
    Ok(omega)
}

/// The extended form that also carries the generalized-energy differential:
/// `canonical_omega + dE ^ vol`, evaluated at a point because `dE` has
/// point-dependent coefficients.
pub fn omega_extended(model: &dyn Lagrangian, pt: &PontryaginPoint) -> Result<ExteriorElement> {
    let chart = model.chart();
    let omega = canonical_omega(&chart)?;
    let de = d_generalized_energy(model, pt);
    omega.add(&wedge(&de, &horizontal_volume(&chart)?)?)
}

/// Exterior derivative of a form-valued map by central differences in each
/// chart coordinate: `d(sum f_I dz^I) = sum (df_I/dz^j) dz^j ^ dz^I`.
/// Exact (up to roundoff) whenever the coefficients are affine in the
/// coordinates; otherwise second-order accurate in `eps`.
pub fn exterior_derivative_fd(
    f: &dyn Fn(&[f64]) -> Result<ExteriorElement>,
    point: &[f64],
    eps: f64,
) -> Result<ExteriorElement> {
    let sample = f(point)?;
    let dim = sample.dim();
    let mut out = ExteriorElement::zero(dim, sample.grade() + 1, Variance::Covariant);
    for j in 0..dim {
        let mut plus = point.to_vec();
        plus[j] += eps;
        let mut minus = point.to_vec();
        minus[j] -= eps;
        let diff = f(&plus)?.sub(&f(&minus)?)?.scale(1.0 / (2.0 * eps));
        let dz = ExteriorElement::basis(dim, Variance::Covariant, &[j], 1.0)?;
        out = out.add(&wedge(&dz, &diff)?)?;
    }
    Ok(out)
}
