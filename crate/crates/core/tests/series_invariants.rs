use hgfmat::gammafact::ConeParameter;
use hgfmat::matrixhgf::{evaluate, evaluate_two, EigenSpectrum, HgfParams};
use hgfmat::scalar::{ratio, relative_difference, Rational};
use hgfmat::series::TruncationPolicy;
use proptest::prelude::*;

fn cone() -> impl Strategy<Value = ConeParameter> {
    prop::sample::select(vec![(1, 4), (1, 2), (1, 1), (2, 1)]).prop_map(|(p, q)| ConeParameter::from_ratio(p, q).unwrap())
}

fn spectrum(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.02f64..0.45, m)
}

fn det_power(x: &[f64], e: f64) -> f64 {
    x.iter().map(|v| (1.0 - v).powf(e)).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn permutation_invariance(d in cone(), x in spectrum(3), a in -2.0f64..3.0, b in -2.0f64..3.0, c in 0.6f64..4.0) {
        let p = HgfParams::new(a, b, c, d);
        let t = TruncationPolicy::default();
        let base = evaluate(&p, &EigenSpectrum::new(x.clone()).unwrap(), &t).unwrap().value;
        let rotated = vec![x[2], x[0], x[1]];
        let other = evaluate(&p, &EigenSpectrum::new(rotated).unwrap(), &t).unwrap().value;
        prop_assert!(relative_difference(base, other) < 1e-12);
    }

    #[test]
    fn binomial_case(d in cone(), x in spectrum(2), a in -2.0f64..3.0, b in 0.6f64..4.0) {
        // c = b collapses the series to det(I - X)^{-a}
        let p = HgfParams::new(a, b, b, d);
        let f = evaluate(&p, &EigenSpectrum::new(x.clone()).unwrap(), &TruncationPolicy::new(80, 1e-17)).unwrap().value;
        prop_assert!(relative_difference(f, det_power(&x, -a)) < 1e-10, "{} vs {}", f, det_power(&x, -a));
    }

    #[test]
    fn euler_transformation(d in cone(), x in spectrum(2), a in -1.0f64..2.0, b in -1.0f64..2.0, c in 1.5f64..4.0) {
        let t = TruncationPolicy::new(80, 1e-17);
        let xs = EigenSpectrum::new(x.clone()).unwrap();
        let lhs = evaluate(&HgfParams::new(a, b, c, d.clone()), &xs, &t).unwrap().value;
        let rhs = det_power(&x, c - a - b) * evaluate(&HgfParams::new(c - a, c - b, c, d), &xs, &t).unwrap().value;
        prop_assert!(relative_difference(lhs, rhs) < 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn identity_second_argument(d in cone(), x in spectrum(3), a in -2.0f64..3.0, b in -2.0f64..3.0, c in 0.6f64..4.0) {
        let p = HgfParams::new(a, b, c, d);
        let t = TruncationPolicy::default();
        let xs = EigenSpectrum::new(x).unwrap();
        let one = evaluate(&p, &xs, &t).unwrap().value;
        let two = evaluate_two(&p, &xs, &EigenSpectrum::ones(3), &t).unwrap().value;
        prop_assert!(relative_difference(one, two) < 1e-12);
    }

    #[test]
    fn positive_series_has_increasing_partial_sums(d in cone(), x in spectrum(3), a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.1f64..4.0) {
        // every factor (t - (i-1)d)_k of [t]_κ is positive once t > (m-1)d
        let shift = 2.0 * d.to_f64();
        let r = evaluate(&HgfParams::new(a + shift, b + shift, c + shift, d), &EigenSpectrum::new(x).unwrap(), &TruncationPolicy::default()).unwrap();
        prop_assert!(r.shells.iter().all(|s| *s >= 0.0));
        let mut partial = 0.0;
        for s in &r.shells {
            let next = partial + s;
            prop_assert!(next >= partial);
            partial = next;
        }
    }
}

#[test]
fn exact_and_float_backends_agree_on_polynomials() {
    let d = ConeParameter::from_ratio(1, 2).unwrap();
    let exact = HgfParams::new(ratio(-3, 1), ratio(2, 5), ratio(7, 3), d.clone());
    let float = exact.to_f64();
    let x = vec![ratio(1, 3), ratio(1, 7), ratio(1, 11)];
    let e = evaluate(&exact, &EigenSpectrum::new(x.clone()).unwrap(), &TruncationPolicy::default()).unwrap();
    let f = evaluate(&float, &EigenSpectrum::<Rational>::new(x).unwrap().to_f64(), &TruncationPolicy::default()).unwrap();
    assert!(e.terminated && f.terminated);
    let ev: f64 = num_traits::ToPrimitive::to_f64(&e.value).unwrap();
    assert!(relative_difference(ev, f.value) < 1e-13);
}

#[test]
fn zero_argument_gives_one() {
    let p = HgfParams::new(1.5, -0.3, 2.2, ConeParameter::real_symmetric());
    let r = evaluate(&p, &EigenSpectrum::zeros(4), &TruncationPolicy::default()).unwrap();
    assert_eq!(r.value, 1.0);
}
