use super::*;
use crate::numerics::{harmonic, int, rat, Enclosure, ExtendedValue, Rational, SeqTerm};
use crate::sets::{Interval, IntervalFamily, LeftFn, TailDescriptor};
use proptest::prelude::*;

fn set_a() -> IntervalFamily {
    let t = TailDescriptor::new(1, LeftFn::linear(2, int(0)), SeqTerm::power(int(1), 2)).unwrap();
    IntervalFamily::from_tail(t)
}

fn finite_value(v: &ExtendedValue) -> Enclosure {
    v.as_finite().unwrap_or_else(|| panic!("expected finite, got {v:?}")).clone()
}

#[test]
fn evaluate_examples() {
    let e = evaluate(&FunctionSpec::SqrtPeriodic, &rat(9, 4)).unwrap();
    assert_eq!(e, Enclosure::exact(rat(1, 2)));
    assert_eq!(evaluate(&FunctionSpec::f1(), &int(7)).unwrap(), Enclosure::exact(int(7)));
    let v = evaluate(&FunctionSpec::f2(), &(int(3) + rat(1, 100))).unwrap();
    assert_eq!(v, Enclosure::exact(int(3)));
    assert_eq!(
        evaluate(&FunctionSpec::f2(), &(int(3) + rat(1, 9))).unwrap(),
        Enclosure::zero()
    );
    assert!(evaluate(&FunctionSpec::Reciprocal, &int(0)).is_err());
    assert!(evaluate(&FunctionSpec::SqrtPeriodicDeriv, &int(4)).is_err());
    assert!(evaluate(&FunctionSpec::SqrtPeriodicDeriv, &int(3)).is_ok());
}

#[test]
fn sqrt_periodic_is_periodic_and_peaks_at_odd_integers() {
    let f = FunctionSpec::SqrtPeriodic;
    for k in -3..4 {
        assert_eq!(evaluate(&f, &int(2 * k)).unwrap(), Enclosure::zero());
        assert_eq!(evaluate(&f, &int(2 * k + 1)).unwrap(), Enclosure::exact(int(1)));
        assert_eq!(
            evaluate(&f, &(int(2 * k) - rat(1, 4))).unwrap(),
            Enclosure::exact(rat(1, 2))
        );
    }
}

#[test]
fn derivative_examples() {
    let d = derivative(&FunctionSpec::f1()).unwrap();
    assert_eq!(d.function, FunctionSpec::constant(int(1)));
    assert!(d.reconstructs);
    assert_eq!(
        derivative(&FunctionSpec::SqrtPeriodic).unwrap().function,
        FunctionSpec::SqrtPeriodicDeriv
    );
    let s = FunctionSpec::scale(int(3), FunctionSpec::f1()).unwrap();
    assert_eq!(derivative(&s).unwrap().function, FunctionSpec::constant(int(3)));
    let step = derivative(&FunctionSpec::f2()).unwrap();
    assert_eq!(step.function, FunctionSpec::constant(int(0)));
    assert!(!step.reconstructs);
    assert!(derivative(&FunctionSpec::SqrtPeriodicDeriv).is_err());
    assert_eq!(
        derivative(&FunctionSpec::Reciprocal).unwrap().function.to_string(),
        "scale(-1, pow_abs(-2))"
    );
    assert_eq!(
        derivative(&FunctionSpec::pow_abs(rat(1, 2)).unwrap())
            .unwrap()
            .function
            .to_string(),
        "scale(1/2, signed_pow(-1/2))"
    );
}

#[test]
fn breakpoint_examples() {
    let p = monotone_breakpoints(&FunctionSpec::SqrtPeriodic, &int(0), &int(3)).unwrap();
    assert_eq!(p.points(), &[int(0), int(1), int(2), int(3)]);
    let p = monotone_breakpoints(&FunctionSpec::affine(int(2), int(1)), &int(-5), &int(5)).unwrap();
    assert_eq!(p.points(), &[int(-5), int(5)]);
    let f = FunctionSpec::pow_abs(rat(1, 2)).unwrap();
    let p = monotone_breakpoints(&f, &int(-1), &int(1)).unwrap();
    assert_eq!(p.points(), &[int(-1), int(0), int(1)]);
    assert!(monotone_breakpoints(&FunctionSpec::f2(), &int(0), &int(3)).is_err());
    assert!(monotone_breakpoints(&FunctionSpec::f1(), &int(1), &int(1)).is_err());
}

#[test]
fn variation_examples() {
    let tv = total_variation(&FunctionSpec::SqrtPeriodic, &int(0), &int(2)).unwrap();
    assert_eq!(finite_value(&tv), Enclosure::exact(int(2)));
    let tv = total_variation(&FunctionSpec::affine(int(3), int(0)), &int(0), &int(4)).unwrap();
    assert_eq!(finite_value(&tv), Enclosure::exact(int(12)));
    let tv = total_variation(&FunctionSpec::SqrtPeriodic, &int(2), &(int(2) + rat(1, 4))).unwrap();
    assert_eq!(finite_value(&tv), Enclosure::exact(rat(1, 2)));
    // [1,2) and [2,9/4) touch: 0 -> 1 -> 2 -> 0.
    let tv = total_variation(&FunctionSpec::f2(), &int(0), &rat(5, 2)).unwrap();
    assert_eq!(finite_value(&tv), Enclosure::exact(int(4)));
    assert!(total_variation(&FunctionSpec::f1(), &int(2), &int(1)).is_err());
}

#[test]
fn variation_near_singularity_is_certified_infinite() {
    let tv = total_variation(&FunctionSpec::Reciprocal, &int(-1), &int(1)).unwrap();
    assert!(tv.certificate().unwrap().verify());
    let tv = total_variation(&FunctionSpec::SqrtPeriodicDeriv, &int(1), &int(3)).unwrap();
    assert!(tv.is_infinite());
    let cancel = FunctionSpec::sum(
        FunctionSpec::Reciprocal,
        FunctionSpec::scale(int(-1), FunctionSpec::Reciprocal).unwrap(),
    );
    assert!(total_variation(&cancel, &int(-1), &int(1)).unwrap().is_unknown());
}

#[test]
fn sign_is_monotone_with_jump() {
    let f = FunctionSpec::signed_pow(int(0));
    let tv = total_variation(&f, &int(-1), &int(1)).unwrap();
    assert_eq!(finite_value(&tv), Enclosure::exact(int(2)));
}

#[test]
fn integral_over_set_a_is_harmonic() {
    let r = integral_abs_over(&FunctionSpec::SqrtPeriodicDeriv, &set_a(), 50);
    assert!(r.value.certificate().unwrap().verify());
    assert_eq!(r.ledger.len(), 50);
    for e in &r.ledger {
        assert_eq!(e.contribution, Enclosure::exact(Rational::new(1, e.index as i64)));
        assert_eq!(e.partial_sum, Enclosure::exact(harmonic(e.index)));
    }
}

#[test]
fn integral_examples() {
    let fam = IntervalFamily::finite(vec![Interval::closed_open(int(0), int(5))]).unwrap();
    let r = integral_abs_over(&FunctionSpec::constant(int(1)), &fam, 10);
    assert_eq!(finite_value(&r.value), Enclosure::exact(int(5)));

    let t = TailDescriptor::new(2, LeftFn::linear(1, int(0)), SeqTerm::power(int(1), 2)).unwrap();
    let r = integral_abs_over(&FunctionSpec::f2(), &IntervalFamily::from_tail(t), 100);
    assert!(r.value.certificate().unwrap().verify());

    // ∫_{-1}^{2} |x| = 1/2 + 2.
    let fam = IntervalFamily::finite(vec![Interval::closed(int(-1), int(2))]).unwrap();
    let r = integral_abs_over(&FunctionSpec::f1(), &fam, 1);
    assert_eq!(finite_value(&r.value), Enclosure::exact(rat(5, 2)));
}

#[test]
fn reciprocal_integral_diverges_at_zero() {
    let fam = IntervalFamily::finite(vec![
        Interval::closed_open(int(-1), int(0)),
        Interval::new(Some(int(0)), Some(int(1)), false, true).unwrap(),
    ])
    .unwrap();
    let r = integral_abs_over(&FunctionSpec::Reciprocal, &fam, 1);
    assert!(r.value.certificate().unwrap().verify());
    // Away from 0 it is ln 2.
    let v = integral_abs_interval(&FunctionSpec::Reciprocal, &int(1), &int(2));
    assert!(finite_value(&v).contains_f64(std::f64::consts::LN_2));
}

#[test]
fn integrable_singularity_is_finite() {
    let f = FunctionSpec::pow_abs(rat(-1, 2)).unwrap();
    let v = integral_abs_interval(&f, &int(-1), &int(4));
    assert_eq!(finite_value(&v), Enclosure::exact(int(6)));
}

#[test]
fn periodic_integrals_over_long_ranges() {
    let v = integral_abs_interval(&FunctionSpec::SqrtPeriodic, &int(0), &int(1000));
    assert_eq!(finite_value(&v), Enclosure::exact(Rational::new(2000, 3)));
    let v = integral_abs_interval(&FunctionSpec::SqrtPeriodicDeriv, &int(-3), &int(5));
    assert_eq!(finite_value(&v), Enclosure::exact(int(8)));
}

#[test]
fn summable_tails_get_finite_enclosures() {
    // ∫ over A of a bounded function: at most sup·μ(A).
    let r = integral_abs_over(&FunctionSpec::SqrtPeriodic, &set_a(), 20);
    let e = finite_value(&r.value);
    assert!(e.hi() <= &int(2));
    // |x|^{-1/2} on [n, n+1) ∪ … decays, widths 1/n^2.
    let t = TailDescriptor::new(1, LeftFn::linear(1, int(0)), SeqTerm::power(int(1), 2)).unwrap();
    let f = FunctionSpec::pow_abs(rat(-1, 2)).unwrap();
    assert!(integral_abs_over(&f, &IntervalFamily::from_tail(t), 20).value.is_finite());
}

#[test]
fn rays_diverge_for_non_decaying_functions() {
    let fam = IntervalFamily::finite(vec![Interval::ray_up(int(1))]).unwrap();
    assert!(integral_abs_over(&FunctionSpec::f1(), &fam, 1).value.is_infinite());
    assert!(integral_abs_over(&FunctionSpec::SqrtPeriodic, &fam, 1).value.is_infinite());
    let zero = FunctionSpec::constant(int(0));
    assert!(integral_abs_over(&zero, &fam, 1).value.is_finite());
}

#[test]
fn canonical_text() {
    assert_eq!(FunctionSpec::f1().to_string(), "affine(1, 0)");
    assert_eq!(
        FunctionSpec::f2().to_string(),
        "step_series(coef=n, left=n, width=1/n^2, from=1)"
    );
    assert_eq!(FunctionSpec::f3().to_string(), "reciprocal");
}

#[test]
fn attributes_compose() {
    let sum = FunctionSpec::sum(FunctionSpec::f1(), FunctionSpec::SqrtPeriodic);
    assert_eq!(sum.attributes().ac_loc, Status::In);
    let mixed = FunctionSpec::sum(FunctionSpec::f1(), FunctionSpec::f2());
    assert_eq!(mixed.attributes().ac_loc, Status::Out);
    let both = FunctionSpec::sum(FunctionSpec::f2(), FunctionSpec::f3());
    assert_eq!(both.attributes().ac_loc, Status::Unknown);
}

fn ac_catalog() -> Vec<FunctionSpec> {
    vec![
        FunctionSpec::affine(rat(-3, 2), int(2)),
        FunctionSpec::SqrtPeriodic,
        FunctionSpec::pow_abs(rat(1, 2)).unwrap(),
        FunctionSpec::pow_abs(int(2)).unwrap(),
        FunctionSpec::scale(rat(-2, 3), FunctionSpec::SqrtPeriodic).unwrap(),
        FunctionSpec::sum(FunctionSpec::f1(), FunctionSpec::pow_abs(int(3)).unwrap()),
    ]
}

fn interval() -> impl Strategy<Value = (Rational, Rational)> {
    (-40i64..40, 1i64..40, 1i64..5).prop_map(|(a, len, den)| (rat(a, den), rat(a + len, den)))
}

proptest! {
    #[test]
    fn variation_matches_integral_of_derivative((a, b) in interval(), which in 0usize..6) {
        let f = &ac_catalog()[which];
        let tv = total_variation(f, &a, &b).unwrap();
        let d = derivative(f).unwrap().function;
        let int_d = integral_abs_interval(&d, &a, &b);
        let (tv, int_d) = (finite_value(&tv), finite_value(&int_d));
        prop_assert!(tv.intersects(&int_d), "{f}: {tv} vs {int_d}");
    }

    #[test]
    fn variation_is_additive((a, b) in interval(), cut in 1i64..100, which in 0usize..6) {
        let f = &ac_catalog()[which];
        let c = &a + (&b - &a) * rat(cut, 101);
        let whole = finite_value(&total_variation(f, &a, &b).unwrap());
        let parts = finite_value(&total_variation(f, &a, &c).unwrap())
            + finite_value(&total_variation(f, &c, &b).unwrap());
        prop_assert!(whole.intersects(&parts));
        if whole.is_exact() && parts.is_exact() {
            prop_assert_eq!(whole, parts);
        }
    }

    #[test]
    fn step_variation_is_additive((a, b) in interval(), cut in 1i64..100) {
        let f = FunctionSpec::f2();
        let c = &a + (&b - &a) * rat(cut, 101);
        let whole = finite_value(&total_variation(&f, &a, &b).unwrap());
        let parts = finite_value(&total_variation(&f, &a, &c).unwrap())
            + finite_value(&total_variation(&f, &c, &b).unwrap());
        prop_assert_eq!(whole, parts);
    }
}
