use rand::RngExt;

use crate::dirac::forms::canonical_omega;
use crate::error::Result;
use crate::exterior::{interior_left, DecomposableMultivector, ExteriorElement, Variance};
use crate::jet::ChartSpec;

/// Vertical coefficients of a decomposable multivector field whose factors
/// cover the base frame: factor `mu` is the base direction `d/dx^mu` plus
/// field, momentum, and covelocity components. Velocity directions never
/// appear; that omission is what makes the contraction detect momentum-map
/// violations.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameLift {
    /// `[a][mu]`: coefficient of `d/dy^a` in factor `mu`.
    pub c_y: Vec<Vec<f64>>,
    /// `[a][nu][mu]`: coefficient of `d/dpmom[a]^nu` in factor `mu`.
    pub c_pmom: Vec<Vec<Vec<f64>>>,
    /// `[mu]`: coefficient of `d/dp` in factor `mu`.
    pub c_p: Vec<f64>,
}

impl FrameLift {
    pub fn zeros(chart: &ChartSpec) -> Self {
        let b = chart.base_dim();
        let f = chart.fiber_dim();
        FrameLift {
            c_y: vec![vec![0.0; b]; f],
            c_pmom: vec![vec![vec![0.0; b]; b]; f],
            c_p: vec![0.0; b],
        }
    }

    pub fn random(chart: &ChartSpec, rng: &mut impl RngExt) -> Self {
        let mut lift = FrameLift::zeros(chart);
        for row in &mut lift.c_y {
            for c in row {
                *c = rng.random_range(-1.0..=1.0);
            }
        }
        for block in &mut lift.c_pmom {
            for row in block {
                for c in row {
                    *c = rng.random_range(-1.0..=1.0);
                }
            }
        }
        for c in &mut lift.c_p {
            *c = rng.random_range(-1.0..=1.0);
        }
        lift
    }

    /// Builds the decomposable multivector with factors
    /// `d/dx^mu + c_y[a][mu] d/dy^a + c_pmom[a][nu][mu] d/dpmom[a]^nu
    ///  + c_p[mu] d/dp`.
    pub fn expand(&self, chart: &ChartSpec) -> Result<DecomposableMultivector> {
        let dim = chart.pontryagin_dim();
        let mut factors = Vec::with_capacity(chart.base_dim());
        for mu in 0..chart.base_dim() {
            let mut f = ExteriorElement::basis(dim, Variance::Contravariant, &[chart.idx_x(mu)], 1.0)?;
            for a in 0..chart.fiber_dim() {
                f = f.add(&ExteriorElement::basis(
                    dim,
                    Variance::Contravariant,
                    &[chart.idx_y(a)],
                    self.c_y[a][mu],
                )?)?;
                for nu in 0..chart.base_dim() {
                    f = f.add(&ExteriorElement::basis(
                        dim,
                        Variance::Contravariant,
                        &[chart.idx_pmom(a, nu)],
                        self.c_pmom[a][nu][mu],
                    )?)?;
                }
            }
            f = f.add(&ExteriorElement::basis(
                dim,
                Variance::Contravariant,
                &[chart.idx_p()],
                self.c_p[mu],
            )?)?;
            factors.push(f);
        }
        DecomposableMultivector::new(factors)
    }
}

/// Sign `(-1)^(b+1)` relating the kernel contraction of the canonical form
/// against a frame lift to its slotwise closed form, where `b` is the base
/// dimension.
pub fn frame_contraction_sign(chart: &ChartSpec) -> f64 {
    if (chart.base_dim() + 1) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Closed-form left contraction of the canonical multisymplectic form with a
/// frame lift, derived slot by slot under the determinant pairing:
///
/// ```text
/// X -| omega = sign * [ (c_y[a][mu] tr_a - sum_l c_y[a][l] c_pmom[a][l][mu]
///                        - c_p[mu]) dx^mu
///                      - (sum_mu c_pmom[a][mu][mu]) dy^a
///                      + c_y[a][mu] dpmom[a]^mu
///                      + dp ]
/// ```
///
/// with `tr_a = sum_l c_pmom[a][l][l]` and `sign` from
/// [`frame_contraction_sign`]. The velocity slots are identically zero.
pub fn contract_frame_closed(chart: &ChartSpec, lift: &FrameLift) -> Result<ExteriorElement> {
    let dim = chart.pontryagin_dim();
    let sign = frame_contraction_sign(chart);
    let mut out = ExteriorElement::zero(dim, 1, Variance::Covariant);
    let b = chart.base_dim();
    let f = chart.fiber_dim();
    let trace: Vec<f64> = (0..f)
        .map(|a| (0..b).map(|l| lift.c_pmom[a][l][l]).sum())
        .collect();
    for mu in 0..b {
        let mut coeff = -lift.c_p[mu];
        for a in 0..f {
            coeff += lift.c_y[a][mu] * trace[a];
            for l in 0..b {
                coeff -= lift.c_y[a][l] * lift.c_pmom[a][l][mu];
            }
        }
        out.add_term_unsorted(&[chart.idx_x(mu)], sign * coeff)?;
    }
    for a in 0..f {
        let diag: f64 = (0..b).map(|mu| lift.c_pmom[a][mu][mu]).sum();
        out.add_term_unsorted(&[chart.idx_y(a)], -sign * diag)?;
        for mu in 0..b {
            out.add_term_unsorted(&[chart.idx_pmom(a, mu)], sign * lift.c_y[a][mu])?;
        }
    }
    out.add_term_unsorted(&[chart.idx_p()], sign)?;
    Ok(out)
}

/// Reference contraction path: expand the lift into a sparse multivector and
/// feed it through the generic kernel against [`canonical_omega`]. Must agree
/// with [`contract_frame_closed`] to roundoff; the equivalence is part of the
/// acceptance gate.
pub fn contract_frame_expanded(chart: &ChartSpec, lift: &FrameLift) -> Result<ExteriorElement> {
    let omega = canonical_omega(chart)?;
    let mv = lift.expand(chart)?;
    interior_left(mv.as_element(), &omega)
}
