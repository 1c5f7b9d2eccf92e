//! Property tests for the matrix kernels, variation counts and finite-matrix checks.

mod common;

use std::collections::BTreeSet;

use common::{q, rng, totally_nonnegative};
use proptest::prelude::*;
use varbound::linalg::matrix::det_cofactor;
use varbound::linalg::{lex_tuples, IndexTuple, Matrix, Rational, Sign};
use varbound::lti::spectrum::spectrum_of_values;
use varbound::lti::{eigen_sorted, LtiSystem};
use varbound::oracle::{falsify_matrix_vb, replay};
use varbound::signcons::{
    initial_minor_certificate, k_columns_independent, pena_transform, reduced_check, sign_consistent,
};
use varbound::variation::{gauss_smoother, v_minus, v_plus};

fn matrix(rows: usize, cols: usize, lo: i64, hi: i64) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(lo..=hi, rows * cols)
        .prop_map(move |v| Matrix::new(rows, cols, v.into_iter().map(q).collect()).unwrap())
}

fn signed_vector(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-3i64..=3).prop_map(|x| x as f64), 0..max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lower_variation_never_exceeds_upper(u in signed_vector(12)) {
        prop_assert!(v_minus(&u) <= v_plus(&u));
    }

    #[test]
    fn variation_ignores_scaling_and_negation(u in signed_vector(12), s in 0.01f64..100.0) {
        let scaled: Vec<f64> = u.iter().map(|x| x * s).collect();
        let negated: Vec<f64> = u.iter().map(|x| -x).collect();
        prop_assert_eq!(v_minus(&scaled), v_minus(&u));
        prop_assert_eq!(v_plus(&scaled), v_plus(&u));
        prop_assert_eq!(v_minus(&negated), v_minus(&u));
        prop_assert_eq!(v_plus(&negated), v_plus(&u));
    }

    #[test]
    fn compound_of_product_is_product_of_compounds(
        (f, g) in (1usize..=4, 1usize..=4, 1usize..=4)
            .prop_flat_map(|(n, p, m)| (matrix(n, p, -3, 3), matrix(p, m, -3, 3)))
    ) {
        let fg = f.matmul(&g).unwrap();
        for r in 1..=f.rows().min(f.cols()).min(g.cols()) {
            let lhs = fg.compound(r).unwrap();
            let rhs = f.compound(r).unwrap().matmul(&g.compound(r).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn compound_commutes_with_transpose(x in matrix(4, 3, -4, 4), r in 1usize..=3) {
        prop_assert_eq!(x.transpose().compound(r).unwrap(), x.compound(r).unwrap().transpose());
    }

    #[test]
    fn compound_entries_are_minors(x in matrix(4, 4, -3, 3), r in 1usize..=4) {
        let c = x.compound(r).unwrap();
        for (i, rows) in lex_tuples(4, r).iter().enumerate() {
            for (j, cols) in lex_tuples(4, r).iter().enumerate() {
                let direct = det_cofactor(&x.select(&rows.zero_based(), &cols.zero_based()));
                prop_assert_eq!(&c[(i, j)], &direct);
            }
        }
    }

    #[test]
    fn pena_index_map_is_a_bijection_onto_top_minors(x in matrix(5, 2, -4, 4)) {
        let head = x.select(&[0, 1], &[0, 1]);
        prop_assume!(head.det().unwrap() != q(0));
        let p = pena_transform(&x).unwrap();
        let cols = IndexTuple::consecutive(2, 1, 2).unwrap();
        let mut seen = BTreeSet::new();
        for r in 1..=2 {
            for alpha in lex_tuples(3, r) {
                for beta in lex_tuples(2, r) {
                    let gamma = p.gamma(&alpha, &beta).unwrap();
                    let matched = p.c.minor(&alpha, &beta).unwrap();
                    prop_assert_eq!(x.minor(&gamma, &cols).unwrap(), p.head_det.clone() * matched);
                    prop_assert!(seen.insert(gamma.elems().to_vec()));
                }
            }
        }
        prop_assert_eq!(seen.len(), 9);
        prop_assert!(!seen.contains(&vec![1, 2]));
    }

    #[test]
    fn reduced_family_decides_strict_sign_consistency(
        (x, k) in (4usize..=6, 2usize..=3)
            .prop_flat_map(|(n, m)| (matrix(n, m, -1, 3), 1..=m))
    ) {
        let reduced = reduced_check(&x, k, true).unwrap();
        let full = sign_consistent(&x, k, true).unwrap();
        prop_assert_eq!(reduced.holds, full.holds);
    }

    #[test]
    fn impulse_response_matches_matrix_powers(a in matrix(3, 3, -2, 2), b in matrix(3, 1, -2, 2), c in matrix(1, 3, -2, 2)) {
        let sys = LtiSystem::new(a.clone(), b.col(0), c.row(0)).unwrap();
        let g = sys.impulse_response(10);
        for t in 1..=10 {
            let direct = c.matmul(&a.pow(t - 1).unwrap()).unwrap().matmul(&b).unwrap();
            prop_assert_eq!(&g[t - 1], &direct[(0, 0)]);
        }
    }

    #[test]
    fn spectrum_is_invariant_under_permutation_similarity(x in matrix(4, 4, -3, 3), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..4).collect();
        perm.shuffle(&mut rng(seed));
        let xf = x.to_f64();
        let permuted = xf.select(&perm, &perm);
        let s1 = eigen_sorted(&xf).unwrap();
        let s2 = eigen_sorted(&permuted).unwrap();
        let resorted = spectrum_of_values(&s1.eigenvalues);
        prop_assert_eq!(&s1.eigenvalues, &resorted.eigenvalues);
        for (a, b) in s1.eigenvalues.iter().zip(&s2.eigenvalues) {
            prop_assert!((a - b).norm() <= 1e-8 * a.norm().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn strict_initial_minor_pass_means_every_minor_positive(seed in any::<u64>()) {
        let x: Matrix<Rational> = totally_nonnegative(4, 4, 6, true, &mut rng(seed));
        if initial_minor_certificate(&x, true).unwrap().holds == Some(true) {
            for r in 1..=4 {
                prop_assert!(x.compound(r).unwrap().signs().iter().all(|s| *s == Sign::Positive));
            }
        }
    }

    #[test]
    fn smoothing_makes_sign_consistency_strict(seed in any::<u64>()) {
        let x: Matrix<Rational> = totally_nonnegative(6, 3, 4, true, &mut rng(seed));
        prop_assume!(sign_consistent(&x, 2, false).unwrap().holds == Some(true));
        prop_assume!(k_columns_independent(&x, 2).unwrap());
        // Exact product with the binary smoother entries: far-off minors fall below any
        // absolute float tolerance.
        let smoothed = gauss_smoother(6, 1.0).to_rational().matmul(&x).unwrap();
        let signs = smoothed.compound(2).unwrap().signs();
        prop_assert!(signs.iter().all(|s| *s == Sign::Positive) || signs.iter().all(|s| *s == Sign::Negative));
    }

    #[test]
    fn smoothing_never_adds_sign_changes(u in prop::collection::vec(-3i64..=3, 1..8)) {
        let u: Vec<f64> = u.into_iter().map(|x| x as f64).collect();
        for sigma in [1.0, 10.0, 100.0] {
            let tu = gauss_smoother(u.len(), sigma).mul_vec(&u).unwrap();
            prop_assert!(v_plus(&tu) <= v_plus(&u), "sigma {sigma}: {tu:?}");
        }
        // Close to the identity the smoothed vector keeps every sign change.
        for sigma in [10.0, 100.0] {
            let tu = gauss_smoother(u.len(), sigma).mul_vec(&u).unwrap();
            prop_assert!(v_minus(&u) <= v_minus(&tu), "sigma {sigma}: {tu:?}");
        }
    }

    #[test]
    fn strictly_sign_consistent_matrices_bound_variation(seed in any::<u64>(), k in 1usize..=4) {
        let x: Matrix<f64> = totally_nonnegative(6, 4, 10, false, &mut rng(seed));
        prop_assume!(sign_consistent(&x, k, true).unwrap().holds == Some(true));
        prop_assert_eq!(falsify_matrix_vb(&x, k, true, 1000, seed).violation_count(), 0);
    }
}

#[test]
fn oracle_violations_replay_from_seed_and_trial() {
    let x = Matrix::<f64>::from_i64_rows(&[&[1, -2, 1], &[-1, 1, 2], &[3, -1, -1], &[1, 1, 1]]).unwrap();
    let report = falsify_matrix_vb(&x, 2, false, 500, 42);
    assert!(report.violation_count() > 0);
    for v in &report.violations {
        assert_eq!(replay(3, 2, 42, v.trial), v.input);
        assert!(v_minus(&v.input) <= 1);
    }
}
