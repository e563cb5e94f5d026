use crate::error::{Error, Result};
use crate::exterior::{interior_left, ExteriorElement, Variance};

/// A multivector together with a form, graded so that the two degrees sum to
/// the degree of the ambient closed form: pairs `(X, Sigma)` with `X` of
/// grade `r` and `Sigma` of grade `total - r`.
#[derive(Debug, Clone)]
pub struct GradedPair {
    pub mv: ExteriorElement,
    pub form: ExteriorElement,
}

impl GradedPair {
    pub fn new(mv: ExteriorElement, form: ExteriorElement) -> Result<Self> {
        if mv.variance() != Variance::Contravariant {
            return Err(Error::VarianceMismatch {
                expected: Variance::Contravariant,
            });
        }
        if form.variance() != Variance::Covariant {
            return Err(Error::VarianceMismatch {
                expected: Variance::Covariant,
            });
        }
        if mv.dim() != form.dim() {
            return Err(Error::DimensionMismatch {
                left: mv.dim(),
                right: form.dim(),
            });
        }
        Ok(GradedPair { mv, form })
    }

    /// The graph pair of `mv` against a closed form: `(mv, mv -| omega)`.
    pub fn graph(mv: ExteriorElement, omega: &ExteriorElement) -> Result<Self> {
        let form = interior_left(&mv, omega)?;
        GradedPair::new(mv, form)
    }

    pub fn degree(&self) -> usize {
        self.mv.grade()
    }

    /// Combined degree `r + grade(Sigma)`; the same for every pair over one
    /// ambient form.
    pub fn total_degree(&self) -> usize {
        self.mv.grade() + self.form.grade()
    }
}

fn check_compatible(a: &GradedPair, b: &GradedPair) -> Result<()> {
    if a.mv.dim() != b.mv.dim() {
        return Err(Error::DimensionMismatch {
            left: a.mv.dim(),
            right: b.mv.dim(),
        });
    }
    if a.total_degree() != b.total_degree() {
        return Err(Error::GradeMismatch {
            left: a.total_degree(),
            right: b.total_degree(),
        });
    }
    Ok(())
}

fn cross_contract(a: &GradedPair, b: &GradedPair) -> Result<(ExteriorElement, ExteriorElement)> {
    // i_{Xb} Sigma_a and i_{Xa} Sigma_b; both grade total - r - s.
    let lhs = interior_left(&b.mv, &a.form)?;
    let rhs = interior_left(&a.mv, &b.form)?;
    Ok((lhs, rhs))
}

fn sign_rs(a: &GradedPair, b: &GradedPair) -> f64 {
    if (a.degree() * b.degree()) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Antisymmetrized graded pairing
/// `<<(X,S),(Xb,Sb)>>_- = (i_Xb S - (-1)^(rs) i_X Sb) / 2`.
/// Zero (as a 0-form) when `r + s` exceeds the total degree, because both
/// contractions then vanish. Graph pairs of one closed form pair to zero,
/// which is the isotropy property the suite samples.
pub fn pairing_minus(a: &GradedPair, b: &GradedPair) -> Result<ExteriorElement> {
    check_compatible(a, b)?;
    if a.degree() + b.degree() > a.total_degree() {
        return Ok(ExteriorElement::zero(a.mv.dim(), 0, Variance::Covariant));
    }
    let (lhs, rhs) = cross_contract(a, b)?;
    lhs.sub(&rhs.scale(sign_rs(a, b)))
        .map(|e| e.scale(0.5))
}

/// Symmetrized counterpart `(i_Xb S + (-1)^(rs) i_X Sb) / 2`. On graph pairs
/// it reduces to the double contraction `i_Xb i_X omega`.
pub fn pairing_plus(a: &GradedPair, b: &GradedPair) -> Result<ExteriorElement> {
    check_compatible(a, b)?;
    if a.degree() + b.degree() > a.total_degree() {
        return Ok(ExteriorElement::zero(a.mv.dim(), 0, Variance::Covariant));
    }
    let (lhs, rhs) = cross_contract(a, b)?;
    lhs.add(&rhs.scale(sign_rs(a, b))).map(|e| e.scale(0.5))
}

/// Sup norm of the unhalved antisymmetric combination
/// `i_Xb S - (-1)^(rs) i_X Sb`. This is what the isotropy suite reports: a
/// single-blade perturbation of size `eps` on one form shows up here with
/// residual exactly `eps` when the partner multivector hits it.
pub fn relation_residual(a: &GradedPair, b: &GradedPair) -> Result<f64> {
    check_compatible(a, b)?;
    if a.degree() + b.degree() > a.total_degree() {
        return Ok(0.0);
    }
    let (lhs, rhs) = cross_contract(a, b)?;
    Ok(lhs.sub(&rhs.scale(sign_rs(a, b)))?.sup_norm())
}

/// [`relation_residual`] scaled by `1 + max` of the two contraction norms,
/// so dense high-dimensional samples are judged relative to the sizes of the
/// quantities that must cancel.
pub fn relation_residual_normalized(a: &GradedPair, b: &GradedPair) -> Result<f64> {
    check_compatible(a, b)?;
    if a.degree() + b.degree() > a.total_degree() {
        return Ok(0.0);
    }
    let (lhs, rhs) = cross_contract(a, b)?;
    let scale = 1.0 + lhs.sup_norm().max(rhs.sup_norm());
    Ok(lhs.sub(&rhs.scale(sign_rs(a, b)))?.sup_norm() / scale)
}
