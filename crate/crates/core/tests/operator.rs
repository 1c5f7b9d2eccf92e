//! Observability-operator certificates checked against finite truncations, the oracle and
//! the eigenvalue screen on random observable pairs.

mod common;

use common::{load_system, observable_pair, q, rng};
use varbound::linalg::{Matrix, Rational};
use varbound::lti::{observability_matrix, LtiSystem};
use varbound::obsv::{
    certify, certify_controllability, certify_hankel, certify_svb, eigen_necessary_check, impulse_variation_bound,
    Conclusion, PropertyKind,
};
use varbound::oracle::falsify_operator_vb;
use varbound::signcons::sign_consistent;

/// Random pairs scaled down so that long horizons stay well inside float range.
fn scaled_pairs(count: usize, seed: u64) -> Vec<(Matrix<Rational>, Vec<Rational>)> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let (a, c) = observable_pair(1 + i % 4, &mut rng);
            (a.scale(&Rational::new(1.into(), 4.into())), c)
        })
        .collect()
}

#[test]
fn strict_certificate_agrees_with_truncated_operator() {
    let mut decisive = 0;
    for (i, (a, c)) in scaled_pairs(50, 5).iter().enumerate() {
        let o12 = observability_matrix(a, c, 12).unwrap();
        for k in 1..=a.rows() {
            let cert = certify_svb(a, c, k, 12).unwrap();
            let finite = sign_consistent(&o12, k, true).unwrap();
            if finite.holds == Some(false) {
                assert_eq!(cert.conclusion, Conclusion::Refuted, "pair {i}, k = {k}");
                decisive += 1;
            }
            if cert.conclusion == Conclusion::Certified {
                assert_eq!(finite.holds, Some(true), "pair {i}, k = {k}");
                decisive += 1;
            }
        }
    }
    assert!(decisive > 20);
}

#[test]
fn certified_bounds_survive_the_oracle() {
    let mut certified = 0;
    for (i, (a, c)) in scaled_pairs(50, 17).iter().enumerate() {
        for k in 1..=a.rows() {
            if certify_svb(a, c, k, 40).unwrap().conclusion != Conclusion::Certified {
                continue;
            }
            certified += 1;
            let report = falsify_operator_vb(a, c, k, true, 40, 1000, i as u64).unwrap();
            assert_eq!(report.violation_count(), 0, "pair {i}, k = {k}: {:?}", report.violations.first());
        }
    }
    assert!(certified > 0);
}

#[test]
fn certified_diagonalizable_pairs_pass_the_eigen_screen() {
    for (i, (a, c)) in scaled_pairs(50, 23).iter().enumerate() {
        for k in 1..=a.rows() {
            if certify_svb(a, c, k, 40).unwrap().conclusion != Conclusion::Certified {
                continue;
            }
            let screen = eigen_necessary_check(a, k).unwrap();
            if screen.diagonalizable == Some(true) {
                assert!(screen.passes, "pair {i}, k = {k}: {:?}", screen.dominant);
            }
        }
    }
}

#[test]
fn controllability_matches_observability_of_the_transpose() {
    for (a, c) in scaled_pairs(12, 31) {
        let at = a.transpose();
        for k in 1..=a.rows() {
            let direct = certify(&at, &c, PropertyKind::Svb, k, 30);
            let wrapped = certify_controllability(&a, &c, PropertyKind::Svb, k, 30);
            match (direct, wrapped) {
                (Ok(d), Ok(w)) => assert_eq!(d.conclusion, w.conclusion),
                (Err(d), Err(w)) => assert_eq!(d, w),
                (d, w) => panic!("{d:?} vs {w:?}"),
            }
        }
    }
}

#[test]
fn example1_orders() {
    let sys = load_system("example1.json").system::<Rational>().unwrap();
    let conclusion = |p, k| certify(&sys.a, &sys.c, p, k, 50).unwrap().conclusion;
    assert_eq!(conclusion(PropertyKind::KPositive, 2), Conclusion::Certified);
    assert_eq!(conclusion(PropertyKind::Svb, 1), Conclusion::Certified);
    assert_eq!(conclusion(PropertyKind::Svb, 2), Conclusion::Certified);
    // det A < 0, so the full-order minors alternate in sign.
    assert_eq!(conclusion(PropertyKind::Svb, 3), Conclusion::Refuted);
    assert_eq!(conclusion(PropertyKind::Vb, 3), Conclusion::Inconclusive);
}

#[test]
fn example1_impulse_bound() {
    let sys = load_system("example1.json").system::<Rational>().unwrap();
    let report = impulse_variation_bound(&sys, 50).unwrap();
    assert_eq!(report.input_variation, 1);
    assert_eq!(report.bound, Some(1));
    assert_eq!(report.certified_by, Some((PropertyKind::KPositive, 2)));
    assert!(report.measured <= 1);
}

#[test]
fn hankel_needs_both_factors() {
    let sys = load_system("example2.json").system::<Rational>().unwrap();
    let cert = certify_hankel(&sys, PropertyKind::Svb, 2, 50).unwrap();
    assert_eq!(cert.factors.len(), 2);
    let both = cert.factors.iter().all(|f| f.conclusion == Conclusion::Certified);
    assert_eq!(cert.conclusion == Conclusion::Certified, both);
    assert_ne!(cert.conclusion, Conclusion::Refuted);
}

#[test]
fn positive_diagonal_system_is_certified_at_every_order() {
    let a = Matrix::from_fn(3, 3, |i, j| if i == j { Rational::new((3 - i as i64).into(), 4.into()) } else { q(0) });
    let c = vec![q(1), q(1), q(1)];
    let sys = LtiSystem::new(a.clone(), vec![q(1), q(0), q(0)], c.clone()).unwrap();
    assert_eq!(certify(&a, &c, PropertyKind::Vd, 3, 40).unwrap().conclusion, Conclusion::Certified);
    assert_eq!(impulse_variation_bound(&sys, 40).unwrap().bound, Some(0));
    assert!(eigen_necessary_check(&a, 3).unwrap().passes);
}
