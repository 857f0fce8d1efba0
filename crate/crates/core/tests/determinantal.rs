use hgfmat::determinantal::{
    calibrate_c21, calibration_probes, closed_form_candidate, eval_one_det, eval_two_det, hadamard_det2, vandermonde,
};
use hgfmat::gammafact::{rising_factorial, ConeParameter};
use hgfmat::matrixhgf::{evaluate, evaluate_two, EigenSpectrum, HgfParams};
use hgfmat::scalar::{ratio, relative_difference, Rational};
use hgfmat::series::TruncationPolicy;
use proptest::prelude::*;

fn params() -> HgfParams<f64> {
    HgfParams::new(2.5, 3.1, 5.0, ConeParameter::hermitian())
}

fn spec(v: &[f64]) -> EigenSpectrum<f64> {
    EigenSpectrum::new(v.to_vec()).unwrap()
}

/// `∏_{r<m} r! (c-m+1)_r / ((a-m+1)_r (b-m+1)_r)`, the exact value of the constant.
fn exact_constant(p: &HgfParams<f64>, m: usize) -> f64 {
    let s = (m - 1) as f64;
    (0..m as u32)
        .map(|r| {
            let fact: f64 = (1..=r).map(f64::from).product();
            fact * rising_factorial(&(p.c - s), r) / (rising_factorial(&(p.a - s), r) * rising_factorial(&(p.b - s), r))
        })
        .product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hadamard_det2_matches_direct_determinant(v in prop::collection::vec((-30i64..30, 1i64..12), 8)) {
        let q: Vec<Rational> = v.iter().map(|&(n, d)| ratio(n, d)).collect();
        let a = [[q[0].clone(), q[1].clone()], [q[2].clone(), q[3].clone()]];
        let b = [[q[4].clone(), q[5].clone()], [q[6].clone(), q[7].clone()]];
        let direct = &q[0] * &q[4] * &q[3] * &q[7] - &q[1] * &q[5] * &q[2] * &q[6];
        prop_assert_eq!(hadamard_det2(&a, &b), direct);
    }
}

#[test]
fn vandermonde_of_arithmetic_progression() {
    let x: Vec<Rational> = (0..4).map(|i| ratio(i, 1)).collect();
    // ∏_{i<j} (i - j) for 0..4 = (-1)^6 · 1!2!3!
    assert_eq!(vandermonde(&x), ratio(12, 1));
}

#[test]
fn two_argument_at_fixed_points() {
    let p = params();
    let c21 = calibrate_c21(&p, 2, &calibration_probes(2, 5, 3), &TruncationPolicy::default()).unwrap();
    let (x, y) = (spec(&[0.3, 0.1]), spec(&[0.4, 0.2]));
    let det = eval_two_det(&p, &x, &y, &c21).unwrap();
    let series = evaluate_two(&p, &x, &y, &TruncationPolicy::default()).unwrap().value;
    assert!(relative_difference(det, series) < 1e-10, "{det} vs {series}");
}

#[test]
fn confluent_two_argument_limit() {
    let p = params();
    let c21 = calibrate_c21(&p, 2, &calibration_probes(2, 5, 4), &TruncationPolicy::default()).unwrap();
    let y = spec(&[0.5, 0.2]);
    let at = eval_two_det(&p, &spec(&[0.3, 0.3]), &y, &c21).unwrap();
    let near = eval_two_det(&p, &spec(&[0.3 + 1e-4, 0.3 - 1e-4]), &y, &c21).unwrap();
    assert!(relative_difference(at, near) < 1e-7, "{at} vs {near}");
    let series = evaluate_two(&p, &spec(&[0.3, 0.3]), &y, &TruncationPolicy::default()).unwrap().value;
    assert!(relative_difference(at, series) < 1e-10);
}

#[test]
fn second_argument_near_identity_reduces_to_one_argument() {
    let p = params();
    let c21 = calibrate_c21(&p, 2, &calibration_probes(2, 5, 5), &TruncationPolicy::default()).unwrap();
    let x = spec(&[0.35, 0.15]);
    let near = eval_two_det(&p, &x, &spec(&[1.0 - 1e-4, 1.0 - 2e-4]), &c21).unwrap();
    let one = eval_one_det(&p, &x).unwrap();
    assert!(relative_difference(near, one) < 1e-3);
    let exact_one = eval_two_det(&p, &x, &EigenSpectrum::ones(2), &c21).unwrap();
    assert!(relative_difference(exact_one, one) < 1e-7, "{exact_one} vs {one}");
}

#[test]
fn one_argument_against_series() {
    let p = params();
    for x in [spec(&[0.4, 0.1]), spec(&[0.45, 0.3, 0.05]), spec(&[0.2, 0.2, 0.1])] {
        let det = eval_one_det(&p, &x).unwrap();
        let series = evaluate(&p, &x, &TruncationPolicy::new(80, 1e-17)).unwrap().value;
        assert!(relative_difference(det, series) < 1e-10, "{x}: {det} vs {series}");
    }
}

#[test]
fn calibration_is_probe_independent_and_exact() {
    let p = params();
    for m in 2..=3 {
        let t = TruncationPolicy::default();
        let first = calibrate_c21(&p, m, &calibration_probes(m, 5, 10), &t).unwrap();
        let second = calibrate_c21(&p, m, &calibration_probes(m, 5, 900), &t).unwrap();
        assert!(relative_difference(first.value, second.value) < 1e-8);
        assert!(relative_difference(first.value, exact_constant(&p, m)) < 1e-9);
    }
}

#[test]
fn candidate_differs_from_calibrated_by_known_factor() {
    let p = params();
    let t = TruncationPolicy::default();
    let two = calibrate_c21(&p, 2, &calibration_probes(2, 5, 1), &t).unwrap();
    assert!((two.beta_estimate - 1.0).abs() < 1e-8);
    assert!(relative_difference(two.value, (p.c - 1.0) / ((p.a - 1.0) * (p.b - 1.0))) < 1e-10);
    let three = calibrate_c21(&p, 3, &calibration_probes(3, 5, 1), &t).unwrap();
    assert!((three.beta_estimate - 0.25).abs() < 1e-8);
    assert_eq!(three.candidate, closed_form_candidate(&p, 3));
}

#[test]
fn non_hermitian_is_rejected() {
    let p = HgfParams::new(2.5, 3.1, 5.0, ConeParameter::real_symmetric());
    assert!(eval_one_det(&p, &spec(&[0.3, 0.1])).is_err());
    assert!(calibrate_c21(&p, 2, &calibration_probes(2, 3, 0), &TruncationPolicy::default()).is_err());
}
