//! Seeded random elements for property suites and benchmarks.

use rand::{Rng, RngExt};

use super::{enumerate_blades, ExteriorElement, Variance};

/// Dense random element: every blade of the grade gets a coefficient drawn
/// uniformly from [-1, 1].
pub fn random_element<R: Rng>(
    rng: &mut R,
    dim: usize,
    grade: usize,
    variance: Variance,
) -> ExteriorElement {
    let mut out = ExteriorElement::zero(dim, grade, variance);
    for blade in enumerate_blades(dim, grade) {
        out.add_term(blade, rng.random_range(-1.0..=1.0))
            .expect("enumerated blade fits");
    }
    out
}

/// Sparse random element: at most `max_terms` distinct blades get uniform
/// [-1, 1] coefficients. Used on charts too large for dense sampling.
pub fn random_element_sparse<R: Rng>(
    rng: &mut R,
    dim: usize,
    grade: usize,
    variance: Variance,
    max_terms: usize,
) -> ExteriorElement {
    let blades = enumerate_blades(dim, grade);
    let mut out = ExteriorElement::zero(dim, grade, variance);
    if blades.is_empty() {
        return out;
    }
    for _ in 0..max_terms {
        let pick = rng.random_range(0..blades.len());
        out.add_term(blades[pick].clone(), rng.random_range(-1.0..=1.0))
            .expect("enumerated blade fits");
    }
    out
}
