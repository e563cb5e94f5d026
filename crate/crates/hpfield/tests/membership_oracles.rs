//! Independent oracles for the constrained-membership residuals.
//!
//! The implementation decides both membership conditions through dense
//! least-squares distances to explicit spanning sets. The oracles here use
//! the dual characterizations instead: a multivector carries a factor along
//! the subspace exactly when every wedge of annihilating one-forms pairs to
//! zero against it, and a form is built from annihilating one-forms exactly
//! when it contracts to zero against every subspace generator. The
//! annihilator basis is recomputed from scratch with Gaussian elimination,
//! so no span or orthogonalization code is shared with the implementation.

use hpfield::dirac::{canonical_omega, constrained_membership, graph_residual, ConstraintSubspace};
use hpfield::exterior::{evaluate, interior_left, wedge, ExteriorElement, Variance};
use hpfield::jet::ChartSpec;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn vector(dim: usize, coeffs: &[f64]) -> ExteriorElement {
    let mut el = ExteriorElement::zero(dim, 1, Variance::Contravariant);
    for (i, &c) in coeffs.iter().enumerate() {
        el.add_term_unsorted(&[i], c).unwrap();
    }
    el
}

fn one_form(dim: usize, coeffs: &[f64]) -> ExteriorElement {
    let mut el = ExteriorElement::zero(dim, 1, Variance::Covariant);
    for (i, &c) in coeffs.iter().enumerate() {
        el.add_term_unsorted(&[i], c).unwrap();
    }
    el
}

fn random_coeffs(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-1.0..=1.0)).collect()
}

fn wedge_all(factors: &[ExteriorElement]) -> ExteriorElement {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| wedge(&acc, f).unwrap())
}

/// Random linear combination of the given elements.
fn combination(rng: &mut ChaCha8Rng, elements: &[ExteriorElement]) -> ExteriorElement {
    let mut acc = elements[0].scale(rng.random_range(-1.0..=1.0));
    for el in &elements[1..] {
        acc = acc.add(&el.scale(rng.random_range(-1.0..=1.0))).unwrap();
    }
    acc
}

/// Nullspace of the matrix with the given rows, by Gaussian elimination with
/// partial pivoting; the free-column basis is orthonormalized so wedges of
/// the returned vectors keep unit scale.
fn nullspace(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = rows.len();
    let n = rows[0].len();
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        let best = (r..m).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()));
        let best = match best {
            Some(i) if a[i][c].abs() > 1e-10 => i,
            _ => continue,
        };
        a.swap(r, best);
        let p = a[r][c];
        for j in 0..n {
            a[r][j] /= p;
        }
        for i in 0..m {
            if i != r {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] -= f * a[r][j];
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for c in 0..n {
        if pivot_cols.contains(&c) {
            continue;
        }
        let mut v = vec![0.0; n];
        v[c] = 1.0;
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[row][c];
        }
        // Two modified Gram-Schmidt sweeps against the vectors found so far.
        for _ in 0..2 {
            for q in &basis {
                let proj: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        basis.push(v.into_iter().map(|x| x / norm).collect());
    }
    basis
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Largest pairing of any wedge of `r` annihilator one-forms against `mv`;
/// zero exactly when `mv` carries a factor along the subspace.
fn annihilator_pairing_residual(
    annihilator: &[ExteriorElement],
    mv: &ExteriorElement,
    r: usize,
) -> f64 {
    let mut worst = 0.0f64;
    for combo in subsets(annihilator.len(), r) {
        let factors: Vec<ExteriorElement> = combo.iter().map(|&i| annihilator[i].clone()).collect();
        let pairing = evaluate(&wedge_all(&factors), mv).unwrap();
        worst = worst.max(pairing.abs());
    }
    worst
}

/// Largest contraction of any generator into `form`; zero exactly when
/// `form` is built from annihilating one-forms.
fn generator_contraction_residual(generators: &[ExteriorElement], form: &ExteriorElement) -> f64 {
    generators
        .iter()
        .map(|g| interior_left(g, form).unwrap().sup_norm())
        .fold(0.0f64, f64::max)
}

#[test]
fn factor_condition_agrees_with_annihilator_pairings() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for dim in 4..=6 {
        for rank in 1..=3usize.min(dim - 1) {
            for r in 1..=3usize.min(dim) {
                for _ in 0..6 {
                    let gen_coeffs: Vec<Vec<f64>> =
                        (0..rank).map(|_| random_coeffs(&mut rng, dim)).collect();
                    let generators: Vec<ExteriorElement> =
                        gen_coeffs.iter().map(|c| vector(dim, c)).collect();
                    let subspace = ConstraintSubspace::new(generators.clone()).unwrap();

                    // Independent annihilator: one-forms from the nullspace of
                    // the generator rows. Sanity-check it kills every generator.
                    let ann_coeffs = nullspace(&gen_coeffs);
                    assert_eq!(ann_coeffs.len(), dim - rank);
                    let annihilator: Vec<ExteriorElement> =
                        ann_coeffs.iter().map(|c| one_form(dim, c)).collect();
                    for alpha in &annihilator {
                        for g in &generators {
                            assert!(evaluate(alpha, g).unwrap().abs() < 1e-9);
                        }
                    }

                    // Member: sum of terms each wedging a subspace direction
                    // with random remaining factors.
                    let mut member = ExteriorElement::zero(dim, r, Variance::Contravariant);
                    for _ in 0..2 {
                        let mut factors = vec![combination(&mut rng, &generators)];
                        for _ in 1..r {
                            factors.push(vector(dim, &random_coeffs(&mut rng, dim)));
                        }
                        member = member.add(&wedge_all(&factors)).unwrap();
                    }

                    let zero_form = ExteriorElement::zero(dim, 0, Variance::Covariant);
                    let zero_omega = ExteriorElement::zero(dim, r, Variance::Covariant);
                    let res =
                        constrained_membership(&member, &zero_form, &zero_omega, &subspace)
                            .unwrap();
                    let oracle = annihilator_pairing_residual(&annihilator, &member, r);
                    assert!(
                        res.generator_span < 1e-10,
                        "dim {dim} rank {rank} r {r}: span {}",
                        res.generator_span
                    );
                    assert!(oracle < 1e-10, "dim {dim} rank {rank} r {r}: oracle {oracle}");

                    let codim = dim - rank;
                    if codim >= r {
                        // Pure-complement wedge: flagged by both paths. The
                        // orthonormal basis makes the oracle read the
                        // perturbation weight exactly.
                        let complement: Vec<ExteriorElement> = ann_coeffs[..r]
                            .iter()
                            .map(|c| vector(dim, c))
                            .collect();
                        let spoiled = member.add(&wedge_all(&complement).scale(0.5)).unwrap();
                        let res_bad =
                            constrained_membership(&spoiled, &zero_form, &zero_omega, &subspace)
                                .unwrap();
                        let oracle_bad =
                            annihilator_pairing_residual(&annihilator, &spoiled, r);
                        assert!(
                            res_bad.generator_span > 0.05,
                            "dim {dim} rank {rank} r {r}: span {}",
                            res_bad.generator_span
                        );
                        assert!(
                            (oracle_bad - 0.5).abs() < 1e-6,
                            "dim {dim} rank {rank} r {r}: oracle {oracle_bad}"
                        );
                    } else {
                        // Codimension below the grade: every multivector
                        // carries a subspace factor and the oracle check is
                        // vacuous. Both paths must accept arbitrary input.
                        let factors: Vec<ExteriorElement> = (0..r)
                            .map(|_| vector(dim, &random_coeffs(&mut rng, dim)))
                            .collect();
                        let any = wedge_all(&factors);
                        let res_any =
                            constrained_membership(&any, &zero_form, &zero_omega, &subspace)
                                .unwrap();
                        assert!(res_any.generator_span < 1e-10);
                        assert_eq!(annihilator_pairing_residual(&annihilator, &any, r), 0.0);
                    }
                }
            }
        }
    }
}

#[test]
fn conormal_condition_agrees_with_generator_contractions() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for dim in 5..=6 {
        for rank in 1..=2usize {
            for k in 1..=3usize {
                for _ in 0..6 {
                    let gen_coeffs: Vec<Vec<f64>> =
                        (0..rank).map(|_| random_coeffs(&mut rng, dim)).collect();
                    let generators: Vec<ExteriorElement> =
                        gen_coeffs.iter().map(|c| vector(dim, c)).collect();
                    let subspace = ConstraintSubspace::new(generators.clone()).unwrap();
                    let annihilator: Vec<ExteriorElement> = nullspace(&gen_coeffs)
                        .iter()
                        .map(|c| one_form(dim, c))
                        .collect();

                    // Grade-k form built from annihilating one-forms only.
                    let mut sigma = ExteriorElement::zero(dim, k, Variance::Covariant);
                    for _ in 0..2 {
                        let factors: Vec<ExteriorElement> = (0..k)
                            .map(|_| combination(&mut rng, &annihilator))
                            .collect();
                        sigma = sigma.add(&wedge_all(&factors)).unwrap();
                    }

                    // A zero closed form isolates the conormal condition:
                    // the graph residual form is then sigma itself.
                    let x = generators[0].clone();
                    let zero_omega = ExteriorElement::zero(dim, 1 + k, Variance::Covariant);
                    let res = constrained_membership(&x, &sigma, &zero_omega, &subspace).unwrap();
                    let oracle = generator_contraction_residual(&generators, &sigma);
                    assert!(res.conormal < 1e-10, "conormal {}", res.conormal);
                    assert!(oracle < 1e-12, "oracle {oracle}");

                    // Inject a factor dual to a generator: flagged by both.
                    let dual = one_form(dim, &gen_coeffs[0]);
                    let mut factors = vec![dual];
                    for _ in 1..k {
                        factors.push(combination(&mut rng, &annihilator));
                    }
                    let spoiled = sigma.add(&wedge_all(&factors).scale(0.5)).unwrap();
                    let res_bad =
                        constrained_membership(&x, &spoiled, &zero_omega, &subspace).unwrap();
                    let oracle_bad = generator_contraction_residual(&generators, &spoiled);
                    assert!(res_bad.conormal > 1e-4, "conormal {}", res_bad.conormal);
                    assert!(oracle_bad > 1e-4, "oracle {oracle_bad}");
                }
            }
        }
    }
}

#[test]
fn canonical_form_membership_agrees_end_to_end() {
    // Coordinate subspace on the extended chart of a 1+1 scalar field (base,
    // field, velocity, p, momenta: 2 + 1 + 2 + 1 + 2 slots), so the
    // annihilator is known exactly: S = span(e0, e1, e2) has annihilator
    // dx3 through dx7.
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    let chart = ChartSpec::new(["t", "x"], ["phi"]).unwrap();
    let dim = chart.pontryagin_dim();
    assert_eq!(dim, 8);
    let omega = canonical_omega(&chart).unwrap();

    let generators: Vec<ExteriorElement> = (0..3)
        .map(|i| {
            let mut c = vec![0.0; dim];
            c[i] = 1.0;
            vector(dim, &c)
        })
        .collect();
    let subspace = ConstraintSubspace::new(generators.clone()).unwrap();
    let annihilator: Vec<ExteriorElement> = (3..dim)
        .map(|i| {
            let mut c = vec![0.0; dim];
            c[i] = 1.0;
            one_form(dim, &c)
        })
        .collect();

    for _ in 0..10 {
        // Member pair: a bivector with one factor in S, and the matching
        // contraction offset by an annihilator one-form. The offset keeps the
        // graph residual visibly nonzero, so membership is genuinely weaker
        // than graph equality.
        let x = wedge(
            &combination(&mut rng, &generators),
            &vector(dim, &random_coeffs(&mut rng, dim)),
        )
        .unwrap();
        let offset = combination(&mut rng, &annihilator).scale(0.3);
        let sigma = interior_left(&x, &omega).unwrap().add(&offset).unwrap();

        let res = constrained_membership(&x, &sigma, &omega, &subspace).unwrap();
        assert!(res.generator_span < 1e-10, "span {}", res.generator_span);
        assert!(res.conormal < 1e-10, "conormal {}", res.conormal);
        assert!(annihilator_pairing_residual(&annihilator, &x, 2) < 1e-12);
        let residual_form = sigma.sub(&interior_left(&x, &omega).unwrap()).unwrap();
        assert!(generator_contraction_residual(&generators, &residual_form) < 1e-12);
        assert!(graph_residual(&x, &sigma, &omega).unwrap() > 1e-3);

        // Spoil the multivector with a pure-complement plane: the frozen
        // pairing against dx3 ^ dx4 reads the perturbation size exactly.
        let mut c3 = vec![0.0; dim];
        c3[3] = 1.0;
        let mut c4 = vec![0.0; dim];
        c4[4] = 1.0;
        let e3 = vector(dim, &c3);
        let e4 = vector(dim, &c4);
        let x_bad = x.add(&wedge(&e3, &e4).unwrap().scale(0.5)).unwrap();
        let res_bad = constrained_membership(&x_bad, &sigma, &omega, &subspace).unwrap();
        assert!(res_bad.generator_span > 0.05, "span {}", res_bad.generator_span);
        let plane = wedge(&annihilator[0], &annihilator[1]).unwrap();
        let direct = evaluate(&plane, &x_bad).unwrap() - evaluate(&plane, &x).unwrap();
        assert!((direct - 0.5).abs() < 1e-12);

        // Spoil the form with dt, which pairs with e0: both paths see 0.4.
        let mut c0 = vec![0.0; dim];
        c0[0] = 1.0;
        let dt = one_form(dim, &c0);
        let sigma_bad = sigma.add(&dt.scale(0.4)).unwrap();
        let res_form = constrained_membership(&x, &sigma_bad, &omega, &subspace).unwrap();
        assert!(res_form.conormal > 0.05, "conormal {}", res_form.conormal);
        let bad_residual = sigma_bad.sub(&interior_left(&x, &omega).unwrap()).unwrap();
        let contraction = interior_left(&generators[0], &bad_residual).unwrap();
        assert!((contraction.coefficient_at(&[]) - 0.4).abs() < 1e-12);
    }
}
