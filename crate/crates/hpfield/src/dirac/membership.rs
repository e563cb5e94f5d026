use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::exterior::{
    enumerate_blades, interior_left, wedge, Blade, ExteriorElement, Variance,
};

/// Residual of the graph relation `Sigma = X -| omega` in the sup norm.
pub fn graph_residual(
    mv: &ExteriorElement,
    form: &ExteriorElement,
    omega: &ExteriorElement,
) -> Result<f64> {
    Ok(form.sub(&interior_left(mv, omega)?)?.sup_norm())
}

fn dense_coords(element: &ExteriorElement, blades: &[Blade]) -> DVector<f64> {
    DVector::from_iterator(blades.len(), blades.iter().map(|b| element.coefficient(b)))
}

/// Least-squares distance from `target` to the span of `columns`, reported
/// as the sup norm of the unexplained part. An empty span leaves the whole
/// target unexplained.
fn span_residual(columns: &[ExteriorElement], target: &ExteriorElement) -> f64 {
    let blades = enumerate_blades(target.dim(), target.grade());
    let t = dense_coords(target, &blades);
    let nonzero: Vec<&ExteriorElement> = columns.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return target.sup_norm();
    }
    let a = DMatrix::from_columns(
        &nonzero
            .iter()
            .map(|c| dense_coords(c, &blades))
            .collect::<Vec<_>>(),
    );
    let svd = a.clone().svd(true, true);
    let coeffs = svd.solve(&t, 1e-12).expect("svd solve");
    let miss = &t - &a * coeffs;
    miss.amax()
}

/// A linear subspace of the degree-one directions at a point, given by
/// independent spanning vectors; keeps the annihilating one-forms alongside.
#[derive(Debug, Clone)]
pub struct ConstraintSubspace {
    dim: usize,
    generators: Vec<ExteriorElement>,
    annihilator: Vec<ExteriorElement>,
}

impl ConstraintSubspace {
    /// Builds the subspace and its annihilator basis. Fails with
    /// `DegenerateSubspace` when the generators are linearly dependent.
    pub fn new(generators: Vec<ExteriorElement>) -> Result<Self> {
        let dim = generators
            .first()
            .map(|g| g.dim())
            .ok_or_else(|| Error::Invalid("constraint subspace needs >= 1 generator".into()))?;
        for g in &generators {
            if g.grade() != 1 || g.variance() != Variance::Contravariant || g.dim() != dim {
                return Err(Error::Invalid(
                    "constraint generators must be grade-1 contravariant on one chart".into(),
                ));
            }
        }
        let blades = enumerate_blades(dim, 1);
        let m = DMatrix::from_columns(
            &generators
                .iter()
                .map(|g| dense_coords(g, &blades))
                .collect::<Vec<_>>(),
        );
        let svd = m.clone().svd(false, false);
        let tol = 1e-10 * svd.singular_values.max().max(1.0);
        let rank = svd.singular_values.iter().filter(|s| **s > tol).count();
        if rank < generators.len() {
            return Err(Error::DegenerateSubspace {
                rank,
                count: generators.len(),
            });
        }
        let annihilator = complete_annihilator(&m, rank, dim)?;
        Ok(ConstraintSubspace {
            dim,
            generators,
            annihilator,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[ExteriorElement] {
        &self.generators
    }

    /// Basis of one-forms vanishing on every generator.
    pub fn annihilator(&self) -> &[ExteriorElement] {
        &self.annihilator
    }

    /// Distance of a single vector from the subspace, in the sup norm.
    pub fn vector_residual(&self, v: &ExteriorElement) -> f64 {
        span_residual(&self.generators, v)
    }
}

fn complete_annihilator(
    m: &DMatrix<f64>,
    rank: usize,
    dim: usize,
) -> Result<Vec<ExteriorElement>> {
    // Orthonormalize the generator columns, then extend with the standard
    // basis; the extension spans the Euclidean complement, read as one-forms
    // through the index pairing.
    let mut ortho: Vec<DVector<f64>> = Vec::new();
    for j in 0..m.ncols() {
        let mut v = m.column(j).into_owned();
        for q in &ortho {
            let proj = q.dot(&v);
            v -= q * proj;
        }
        let n = v.norm();
        if n > 1e-12 {
            ortho.push(v / n);
        }
    }
    let mut basis: Vec<DVector<f64>> = Vec::new();
    for i in 0..dim {
        let mut e = DVector::zeros(dim);
        e[i] = 1.0;
        // Two projection sweeps keep the complement orthogonal to roundoff.
        for _ in 0..2 {
            for q in ortho.iter().chain(basis.iter()) {
                let proj = q.dot(&e);
                e -= q * proj;
            }
        }
        let n = e.norm();
        if n > 1e-10 {
            basis.push(e / n);
        }
        if basis.len() == dim - rank {
            break;
        }
    }
    basis
        .into_iter()
        .map(|v| {
            let mut alpha = ExteriorElement::zero(dim, 1, Variance::Covariant);
            for i in 0..dim {
                alpha.add_term_unsorted(&[i], v[i])?;
            }
            Ok(alpha)
        })
        .collect()
}

/// Residuals of the two constrained-membership conditions for a pair
/// `(X, Sigma)` of degree `r` against a closed form and a constraint
/// subspace `S`:
///
/// 1. `X` must carry at least one factor along `S`: sup-norm distance of `X`
///    from the span of `{ s_i ^ e_J }` over generators `s_i` and all
///    `(r-1)`-blades `e_J`.
/// 2. `Sigma - X -| omega` must be built from annihilating one-forms only:
///    sup-norm distance from the span of wedges of `annihilator` basis
///    elements of matching grade.
#[derive(Debug, Clone, Copy)]
pub struct MembershipResiduals {
    pub generator_span: f64,
    pub conormal: f64,
}

pub fn constrained_membership(
    mv: &ExteriorElement,
    form: &ExteriorElement,
    omega: &ExteriorElement,
    subspace: &ConstraintSubspace,
) -> Result<MembershipResiduals> {
    let dim = mv.dim();
    let r = mv.grade();
    if r == 0 {
        return Err(Error::GradeMismatch { left: 0, right: 1 });
    }

    let mut columns = Vec::new();
    for s in subspace.generators() {
        for blade in enumerate_blades(dim, r - 1) {
            let e = single_blade_element(dim, &blade, Variance::Contravariant)?;
            columns.push(wedge(s, &e)?);
        }
    }
    let generator_span = span_residual(&columns, mv);

    let residual_form = form.sub(&interior_left(mv, omega)?)?;
    let k = residual_form.grade();
    let conormal = if k == 0 {
        // Scalars always qualify.
        0.0
    } else if k > subspace.annihilator().len() {
        residual_form.sup_norm()
    } else {
        let mut wedges = Vec::new();
        for combo in enumerate_blades(subspace.annihilator().len(), k) {
            let mut w = ExteriorElement::scalar(dim, Variance::Covariant, 1.0);
            for &i in combo.indices() {
                w = wedge(&w, &subspace.annihilator()[i as usize])?;
            }
            wedges.push(w);
        }
        span_residual(&wedges, &residual_form)
    };

    Ok(MembershipResiduals {
        generator_span,
        conormal,
    })
}

fn single_blade_element(dim: usize, blade: &Blade, variance: Variance) -> Result<ExteriorElement> {
    let indices: Vec<usize> = blade.indices().iter().map(|&i| i as usize).collect();
    ExteriorElement::basis(dim, variance, &indices, 1.0)
}
