use std::collections::BTreeMap;
use std::fmt;

use super::blade::{enumerate_blades, Blade};
use crate::error::{Error, Result};

/// Whether an element eats vectors (covariant, a form) or is built from them
/// (contravariant, a multivector).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A sparse homogeneous element of the exterior algebra over one chart.
///
/// Canonical form is maintained on every mutation: no zero coefficients are
/// stored and terms iterate in lexicographic blade order. `grade` may exceed
/// `dim`, in which case the element is necessarily zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorElement {
    dim: usize,
    grade: usize,
    variance: Variance,
    coeffs: BTreeMap<Blade, f64>,
}

impl ExteriorElement {
    pub fn zero(dim: usize, grade: usize, variance: Variance) -> Self {
        ExteriorElement {
            dim,
            grade,
            variance,
            coeffs: BTreeMap::new(),
        }
    }

    /// Single-term element `coefficient * e_indices`.
    pub fn basis(
        dim: usize,
        variance: Variance,
        indices: &[usize],
        coefficient: f64,
    ) -> Result<Self> {
        let blade = Blade::new(indices.iter().map(|&i| i as u8).collect(), dim)?;
        let mut out = ExteriorElement::zero(dim, blade.grade(), variance);
        out.add_term(blade, coefficient)?;
        Ok(out)
    }

    /// Grade-0 element holding a plain scalar.
    pub fn scalar(dim: usize, variance: Variance, value: f64) -> Self {
        let mut out = ExteriorElement::zero(dim, 0, variance);
        out.add_term(Blade::scalar(), value).expect("scalar blade");
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of one blade (zero when absent).
    pub fn coefficient(&self, blade: &Blade) -> f64 {
        self.coeffs.get(blade).copied().unwrap_or(0.0)
    }

    /// Convenience lookup by raw indices; the tuple must already be sorted.
    pub fn coefficient_at(&self, indices: &[usize]) -> f64 {
        match Blade::new(indices.iter().map(|&i| i as u8).collect(), self.dim) {
            Ok(b) => self.coefficient(&b),
            Err(_) => 0.0,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, f64)> {
        self.coeffs.iter().map(|(b, &c)| (b, c))
    }

    /// Adds `coefficient` to one blade, preserving canonical form.
    pub fn add_term(&mut self, blade: Blade, coefficient: f64) -> Result<()> {
        if blade.grade() != self.grade {
            return Err(Error::GradeMismatch {
                left: blade.grade(),
                right: self.grade,
            });
        }
        if let Some(&i) = blade.indices().last() {
            if i as usize >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: i as usize,
                    dim: self.dim,
                });
            }
        }
        let entry = self.coeffs.entry(blade.clone()).or_insert(0.0);
        *entry += coefficient;
        if *entry == 0.0 {
            self.coeffs.remove(&blade);
        }
        Ok(())
    }

    /// Adds an index tuple in arbitrary order, folding in the permutation
    /// sign. Tuples with repeated indices contribute nothing.
    pub fn add_term_unsorted(&mut self, indices: &[usize], coefficient: f64) -> Result<()> {
        let raw: Vec<u8> = indices.iter().map(|&i| i as u8).collect();
        match Blade::sort_with_sign(raw, self.dim)? {
            Some((blade, sign)) => self.add_term(blade, sign * coefficient),
            None => Ok(()),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                left: self.grade,
                right: other.grade,
            });
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch {
                expected: self.variance,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b.clone(), -c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = ExteriorElement::zero(self.dim, self.grade, self.variance);
        if factor != 0.0 {
            for (b, c) in self.terms() {
                out.coeffs.insert(b.clone(), c * factor);
            }
        }
        out
    }

    /// Largest coefficient magnitude (zero for the zero element).
    pub fn sup_norm(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Plain-text dump: one `indices:coefficient` line per term, sorted
    /// lexicographically by indices. Stable across runs; used as a fixture
    /// format in tests.
    pub fn debug_dump(&self) -> String {
        let mut out = String::new();
        for (blade, c) in self.terms() {
            let ix: Vec<String> = blade.indices().iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("{}:{}\n", ix.join(","), c));
        }
        out
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.variance {
            Variance::Covariant => "form",
            Variance::Contravariant => "multivector",
        };
        write!(
            f,
            "{} grade {} dim {} ({} terms)",
            tag,
            self.grade,
            self.dim,
            self.coeffs.len()
        )
    }
}

/// Exterior product. Both arguments must live on the same chart and have the
/// same variance; the result has grade `a.grade + b.grade`.
pub fn wedge(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    if a.variance != b.variance {
        return Err(Error::VarianceMismatch {
            expected: a.variance,
        });
    }
    let mut out = ExteriorElement::zero(a.dim, a.grade + b.grade, a.variance);
    for (bi, ci) in a.terms() {
        for (bj, cj) in b.terms() {
            if let Some((blade, sign)) = bi.merge(bj) {
                out.add_term(blade, sign * ci * cj)?;
            }
        }
    }
    Ok(out)
}

/// Pairing of a form with an equal-grade multivector under the determinant
/// convention (no 1/k! factor): on sorted basis blades the pairing matrix is
/// the identity.
pub fn evaluate(form: &ExteriorElement, mv: &ExteriorElement) -> Result<f64> {
    if form.variance != Variance::Covariant {
        return Err(Error::VarianceMismatch {
            expected: Variance::Covariant,
        });
    }
    if mv.variance != Variance::Contravariant {
        return Err(Error::VarianceMismatch {
            expected: Variance::Contravariant,
        });
    }
    if form.dim != mv.dim {
        return Err(Error::DimensionMismatch {
            left: form.dim,
            right: mv.dim,
        });
    }
    if form.grade != mv.grade {
        return Err(Error::GradeMismatch {
            left: form.grade,
            right: mv.grade,
        });
    }
    let mut acc = 0.0;
    // Iterate the sparser operand for the lookups.
    if form.num_terms() <= mv.num_terms() {
        for (b, c) in form.terms() {
            acc += c * mv.coefficient(b);
        }
    } else {
        for (b, c) in mv.terms() {
            acc += c * form.coefficient(b);
        }
    }
    Ok(acc)
}

/// Left interior product `X _| alpha`, defined by
/// `(X _| alpha)(X') = alpha(X /\ X')` for every multivector `X'`.
/// Requires `grade(X) <= grade(alpha)`; the result is a form of grade
/// `grade(alpha) - grade(X)`.
pub fn interior_left(mv: &ExteriorElement, form: &ExteriorElement) -> Result<ExteriorElement> {
    if mv.variance != Variance::Contravariant {
        return Err(Error::VarianceMismatch {
            expected: Variance::Contravariant,
        });
    }
    if form.variance != Variance::Covariant {
        return Err(Error::VarianceMismatch {
            expected: Variance::Covariant,
        });
    }
    if mv.dim != form.dim {
        return Err(Error::DimensionMismatch {
            left: mv.dim,
            right: form.dim,
        });
    }
    if mv.grade > form.grade {
        return Err(Error::GradeMismatch {
            left: mv.grade,
            right: form.grade,
        });
    }
    let mut out = ExteriorElement::zero(form.dim, form.grade - mv.grade, Variance::Covariant);
    for (fi, cf) in form.terms() {
        for (mj, cm) in mv.terms() {
            if mj.is_subset_of(fi) {
                let rest = mj.complement_in(fi);
                // Sign of reordering (mj ++ rest) into fi.
                let (_, sign) = mj.merge(&rest).expect("disjoint by construction");
                out.add_term(rest, sign * cf * cm)?;
            }
        }
    }
    Ok(out)
}

/// Right interior product `X |_ beta`, defined by
/// `(X |_ beta) _| gamma = (beta /\ gamma)(X)` for every form `gamma` of
/// grade `grade(X) - grade(beta)`. Requires `grade(beta) <= grade(X)`; the
/// result is a multivector of grade `grade(X) - grade(beta)`.
pub fn interior_right(mv: &ExteriorElement, form: &ExteriorElement) -> Result<ExteriorElement> {
    if mv.variance != Variance::Contravariant {
        return Err(Error::VarianceMismatch {
            expected: Variance::Contravariant,
        });
    }
    if form.variance != Variance::Covariant {
        return Err(Error::VarianceMismatch {
            expected: Variance::Covariant,
        });
    }
    if mv.dim != form.dim {
        return Err(Error::DimensionMismatch {
            left: mv.dim,
            right: form.dim,
        });
    }
    if form.grade > mv.grade {
        return Err(Error::GradeMismatch {
            left: form.grade,
            right: mv.grade,
        });
    }
    let mut out = ExteriorElement::zero(mv.dim, mv.grade - form.grade, Variance::Contravariant);
    for (mj, cm) in mv.terms() {
        for (fi, cf) in form.terms() {
            if fi.is_subset_of(mj) {
                let rest = fi.complement_in(mj);
                let (_, sign) = fi.merge(&rest).expect("disjoint by construction");
                out.add_term(rest, sign * cf * cm)?;
            }
        }
    }
    Ok(out)
}

/// An ordered list of grade-1 factors with the cached wedge of all of them.
#[derive(Debug, Clone)]
pub struct DecomposableMultivector {
    factors: Vec<ExteriorElement>,
    expanded: ExteriorElement,
}

impl DecomposableMultivector {
    /// All factors must be grade-1 contravariant elements on one chart.
    pub fn new(factors: Vec<ExteriorElement>) -> Result<Self> {
        let dim = factors
            .first()
            .map(|f| f.dim())
            .ok_or_else(|| Error::Invalid("decomposable multivector needs >= 1 factor".into()))?;
        let mut expanded = ExteriorElement::scalar(dim, Variance::Contravariant, 1.0);
        for f in &factors {
            if f.grade() != 1 {
                return Err(Error::GradeMismatch {
                    left: f.grade(),
                    right: 1,
                });
            }
            expanded = wedge(&expanded, f)?;
        }
        Ok(DecomposableMultivector { factors, expanded })
    }

    pub fn factors(&self) -> &[ExteriorElement] {
        &self.factors
    }

    pub fn grade(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.expanded.dim()
    }

    /// The expanded wedge as a plain sparse element.
    pub fn as_element(&self) -> &ExteriorElement {
        &self.expanded
    }

    /// Wedge of all factors except the one at `skip`, in order.
    pub fn wedge_omitting(&self, skip: usize) -> Result<ExteriorElement> {
        let mut out = ExteriorElement::scalar(self.dim(), Variance::Contravariant, 1.0);
        for (i, f) in self.factors.iter().enumerate() {
            if i != skip {
                out = wedge(&out, f)?;
            }
        }
        Ok(out)
    }
}

/// Right interior product of a decomposable multivector with a 1-form via
/// factor deletion: sum over factors of the pairing times the deleted wedge,
/// with alternating sign.
pub fn interior_right_decomposable(
    mv: &DecomposableMultivector,
    form: &ExteriorElement,
) -> Result<ExteriorElement> {
    if form.grade() != 1 {
        return Err(Error::GradeMismatch {
            left: form.grade(),
            right: 1,
        });
    }
    let mut out = ExteriorElement::zero(mv.dim(), mv.grade() - 1, Variance::Contravariant);
    for (mu, factor) in mv.factors().iter().enumerate() {
        let weight = evaluate(form, factor)?;
        if weight == 0.0 {
            continue;
        }
        let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
        let hat = mv.wedge_omitting(mu)?;
        out = out.add(&hat.scale(sign * weight))?;
    }
    Ok(out)
}

/// All blades of `grade` on a `dim`-chart, as single-term elements. Handy for
/// oracle-style exhaustive checks.
pub fn basis_elements(dim: usize, grade: usize, variance: Variance) -> Vec<ExteriorElement> {
    enumerate_blades(dim, grade)
        .into_iter()
        .map(|b| {
            let mut e = ExteriorElement::zero(dim, grade, variance);
            e.add_term(b, 1.0).expect("enumerated blade fits");
            e
        })
        .collect()
}
