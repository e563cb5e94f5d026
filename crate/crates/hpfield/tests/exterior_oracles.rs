//! Independent oracles for the exterior kernel.
//!
//! Every check here recomputes a kernel operation through a different
//! representation: dense alternating tensors with explicit permutation sums
//! for the wedge, hand-rolled Laplace determinants for evaluation, slot
//! insertion for the left interior product, and full-basis pairing for the
//! right interior product. None of these paths share code with the sparse
//! blade implementation.

use hpfield::exterior::sample::random_element;
use hpfield::exterior::{
    enumerate_blades, evaluate, interior_left, interior_right, wedge, DecomposableMultivector,
    ExteriorElement, Variance,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense grade-k tensor on dim coordinates: `data[i1 + i2 d + ... + ik d^(k-1)]`.
struct DenseTensor {
    dim: usize,
    data: Vec<f64>,
}

impl DenseTensor {
    fn zeros(dim: usize, grade: usize) -> Self {
        DenseTensor {
            dim,
            data: vec![0.0; dim.pow(grade as u32).max(1)],
        }
    }

    fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().rev().fold(0, |acc, &i| acc * self.dim + i)
    }

    fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.flat(idx)]
    }

    fn set(&mut self, idx: &[usize], value: f64) {
        let at = self.flat(idx);
        self.data[at] = value;
    }

    /// Expands a sparse element into the dense alternating tensor: each
    /// blade coefficient is scattered over all permutations of its indices
    /// with the permutation sign.
    fn from_element(el: &ExteriorElement) -> Self {
        let mut out = DenseTensor::zeros(el.dim(), el.grade());
        for (blade, c) in el.terms() {
            let indices = blade.indices();
            let mut idx: Vec<usize> = indices.iter().map(|&i| i as usize).collect();
            permutations(&mut idx, &mut |perm, sign| {
                out.set(perm, sign * c);
            });
        }
        out
    }
}

/// Heap's algorithm; calls `visit(permutation, sign)` for every arrangement.
fn permutations(items: &mut [usize], visit: &mut dyn FnMut(&[usize], f64)) {
    fn heap(k: usize, items: &mut [usize], sign: &mut f64, visit: &mut dyn FnMut(&[usize], f64)) {
        if k == 1 {
            visit(items, *sign);
            return;
        }
        for i in 0..k {
            heap(k - 1, items, sign, visit);
            let (p, q) = if k % 2 == 0 { (i, k - 1) } else { (0, k - 1) };
            if p != q {
                items.swap(p, q);
                *sign = -*sign;
            }
        }
    }
    if items.is_empty() {
        visit(items, 1.0);
        return;
    }
    let mut sign = 1.0;
    let n = items.len();
    heap(n, items, &mut sign, visit);
}

/// Laplace cofactor expansion along the first row; no external linear
/// algebra involved.
fn laplace_det(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0.0;
    for (j, &pivot) in m[0].iter().enumerate() {
        if pivot == 0.0 {
            continue;
        }
        let minor: Vec<Vec<f64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        det += sign * pivot * laplace_det(&minor);
    }
    det
}

fn blades_as_usize(dim: usize, grade: usize) -> Vec<Vec<usize>> {
    enumerate_blades(dim, grade)
        .into_iter()
        .map(|b| b.indices().iter().map(|&i| i as usize).collect())
        .collect()
}

#[test]
fn wedge_matches_dense_alternation() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0usize;
    for dim in 2..=5 {
        for k in 1..dim {
            for l in 1..=(dim - k) {
                for _ in 0..20 {
                    let a = random_element(&mut rng, dim, k, Variance::Covariant);
                    let b = random_element(&mut rng, dim, l, Variance::Covariant);
                    let product = wedge(&a, &b).unwrap();
                    let da = DenseTensor::from_element(&a);
                    let db = DenseTensor::from_element(&b);
                    // (a /\ b)[J] = (1 / (k! l!)) sum_sigma sign(sigma)
                    //              a[J_sigma(first k)] b[J_sigma(rest)],
                    // the alternation of the tensor product scaled by the
                    // determinant-convention binomial factor.
                    let norm = 1.0 / (factorial(k) * factorial(l));
                    for blade in blades_as_usize(dim, k + l) {
                        let mut idx = blade.clone();
                        let mut total = 0.0;
                        permutations(&mut idx, &mut |perm, sign| {
                            total += sign * da.get(&perm[..k]) * db.get(&perm[k..]);
                        });
                        let want = norm * total;
                        let got = product.coefficient_at(&blade).to_owned();
                        assert!(
                            (got - want).abs() <= 1e-12 * (1.0 + want.abs()),
                            "dim {dim} k {k} l {l} blade {blade:?}: {got} vs {want}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 1000, "only {checked} coefficients checked");
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product::<f64>().max(1.0)
}

#[test]
fn evaluation_matches_laplace_determinants() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for dim in 2..=6 {
        for k in 1..=dim.min(4) {
            for _ in 0..25 {
                let form = random_element(&mut rng, dim, k, Variance::Covariant);
                // Random decomposable argument from k plain vectors.
                let vectors: Vec<Vec<f64>> = (0..k)
                    .map(|_| (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect())
                    .collect();
                let factors: Vec<ExteriorElement> = vectors
                    .iter()
                    .map(|v| {
                        let mut el = ExteriorElement::zero(dim, 1, Variance::Contravariant);
                        for (i, &c) in v.iter().enumerate() {
                            el.add_term_unsorted(&[i], c).unwrap();
                        }
                        el
                    })
                    .collect();
                let mv = DecomposableMultivector::new(factors).unwrap();
                let got = evaluate(&form, mv.as_element()).unwrap();

                // alpha(v_1, ..., v_k) = sum_B c_B det(v_c[B_r]).
                let mut want = 0.0;
                for (blade, c) in form.terms() {
                    let matrix: Vec<Vec<f64>> = blade
                        .indices()
                        .iter()
                        .map(|&row| (0..k).map(|col| vectors[col][row as usize]).collect())
                        .collect();
                    want += c * laplace_det(&matrix);
                }
                assert!(
                    (got - want).abs() <= 1e-12 * (1.0 + want.abs()),
                    "dim {dim} k {k}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn left_interior_matches_slot_insertion() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for dim in 2..=5 {
        for l in 1..=dim {
            for k in 1..=l {
                for _ in 0..15 {
                    let mv = random_element(&mut rng, dim, k, Variance::Contravariant);
                    let form = random_element(&mut rng, dim, l, Variance::Covariant);
                    let got = interior_left(&mv, &form).unwrap();
                    let dense = DenseTensor::from_element(&form);
                    // (X _| alpha)[J] = sum_G X_G alpha[G, J].
                    for blade in blades_as_usize(dim, l - k) {
                        let mut want = 0.0;
                        for (g, c) in mv.terms() {
                            let mut slots: Vec<usize> =
                                g.indices().iter().map(|&i| i as usize).collect();
                            slots.extend_from_slice(&blade);
                            if has_duplicates(&slots) {
                                continue;
                            }
                            want += c * dense.get(&slots);
                        }
                        let have = got.coefficient_at(&blade);
                        assert!(
                            (have - want).abs() <= 1e-12 * (1.0 + want.abs()),
                            "dim {dim} l {l} k {k} blade {blade:?}: {have} vs {want}"
                        );
                    }
                }
            }
        }
    }
}

fn has_duplicates(indices: &[usize]) -> bool {
    let mut seen = indices.to_vec();
    seen.sort_unstable();
    seen.windows(2).any(|w| w[0] == w[1])
}

#[test]
fn right_interior_matches_full_basis_pairing() {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    for dim in 2..=5 {
        for g in 1..=dim {
            for s in 1..=g {
                for _ in 0..15 {
                    let mv = random_element(&mut rng, dim, g, Variance::Contravariant);
                    let form = random_element(&mut rng, dim, s, Variance::Covariant);
                    let got = interior_right(&mv, &form).unwrap();
                    // Defining identity ((X |_ beta) _| gamma) = (beta /\ gamma)(X)
                    // with gamma running over the dual basis reads off every
                    // coefficient: w_G = (beta /\ dx^G)(X).
                    for blade in blades_as_usize(dim, g - s) {
                        let mut dual = ExteriorElement::zero(dim, g - s, Variance::Covariant);
                        dual.add_term_unsorted(&blade, 1.0).unwrap();
                        let want = evaluate(&wedge(&form, &dual).unwrap(), &mv).unwrap();
                        let have = got.coefficient_at(&blade);
                        assert!(
                            (have - want).abs() <= 1e-12 * (1.0 + want.abs()),
                            "dim {dim} g {g} s {s} blade {blade:?}: {have} vs {want}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn frozen_small_cases() {
    // (dx0 + 2 dx1) /\ (dx1 - dx2) = dx01 - dx02 - 2 dx12.
    let mut a = ExteriorElement::zero(3, 1, Variance::Covariant);
    a.add_term_unsorted(&[0], 1.0).unwrap();
    a.add_term_unsorted(&[1], 2.0).unwrap();
    let mut b = ExteriorElement::zero(3, 1, Variance::Covariant);
    b.add_term_unsorted(&[1], 1.0).unwrap();
    b.add_term_unsorted(&[2], -1.0).unwrap();
    let product = wedge(&a, &b).unwrap();
    assert_eq!(product.debug_dump(), "0,1:1\n0,2:-1\n1,2:-2\n");

    // dx02 on (e0 + 2 e2) /\ (3 e0 - e2) = det [[1, 3], [2, -1]] = -7.
    let mut form = ExteriorElement::zero(3, 2, Variance::Covariant);
    form.add_term_unsorted(&[0, 2], 1.0).unwrap();
    let mut v1 = ExteriorElement::zero(3, 1, Variance::Contravariant);
    v1.add_term_unsorted(&[0], 1.0).unwrap();
    v1.add_term_unsorted(&[2], 2.0).unwrap();
    let mut v2 = ExteriorElement::zero(3, 1, Variance::Contravariant);
    v2.add_term_unsorted(&[0], 3.0).unwrap();
    v2.add_term_unsorted(&[2], -1.0).unwrap();
    let x = wedge(&v1, &v2).unwrap();
    assert_eq!(evaluate(&form, &x).unwrap(), -7.0);

    // No 1/k! factor: the dual pairing of matching blades is exactly 1.
    let mut vol = ExteriorElement::zero(4, 4, Variance::Covariant);
    vol.add_term_unsorted(&[0, 1, 2, 3], 1.0).unwrap();
    let mut frame = ExteriorElement::zero(4, 4, Variance::Contravariant);
    frame.add_term_unsorted(&[0, 1, 2, 3], 1.0).unwrap();
    assert_eq!(evaluate(&vol, &frame).unwrap(), 1.0);

    // e1 _| dx01 = -dx0.
    let mut e1 = ExteriorElement::zero(3, 1, Variance::Contravariant);
    e1.add_term_unsorted(&[1], 1.0).unwrap();
    let mut dx01 = ExteriorElement::zero(3, 2, Variance::Covariant);
    dx01.add_term_unsorted(&[0, 1], 1.0).unwrap();
    let hooked = interior_left(&e1, &dx01).unwrap();
    assert_eq!(hooked.debug_dump(), "0:-1\n");
}

#[test]
fn permutation_helper_reports_inversion_parity() {
    for n in 1..=5 {
        let mut items: Vec<usize> = (0..n).collect();
        let mut seen = std::collections::HashSet::new();
        permutations(&mut items, &mut |perm, sign| {
            let mut inversions = 0usize;
            for i in 0..perm.len() {
                for j in i + 1..perm.len() {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            let parity = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(sign, parity, "perm {perm:?}");
            assert!(seen.insert(perm.to_vec()), "repeated {perm:?}");
        });
        assert_eq!(seen.len(), (1..=n).product::<usize>());
    }
}
