use super::*;
use crate::functions::FunctionSpec;
use crate::numerics::{harmonic, int, rat, Enclosure, Rational};
use crate::sets::Interval;

#[test]
fn ac_failure_four_pairs() {
    let w = ac_failure_intervals(&rat(1, 4), 4).unwrap();
    assert_eq!(w.length_sum, Enclosure::exact(rat(205, 576)));
    assert!(w.variation_sum.contains(&rat(25, 24)));
    assert!(w.variation_sum.width() < rat(1, 1_000_000));
    verify_ac_failure(&w).unwrap();
}

#[test]
fn ac_failure_single_pair() {
    let w = ac_failure_intervals(&rat(1, 4), 1).unwrap();
    assert_eq!(w.pairs, vec![(int(2), rat(9, 4))]);
    assert!(w.variation_sum.contains(&rat(1, 2)));
}

#[test]
fn ac_failure_harmonic_growth() {
    let w = ac_failure_intervals(&rat(9, 100), 10).unwrap();
    let expected = rat(3, 10) * harmonic(10);
    assert_eq!(w.variation_sum, Enclosure::exact(expected));
}

#[test]
fn ac_failure_lengths_stay_below_two_delta() {
    for delta in [rat(1, 4), rat(1, 8), rat(1, 100)] {
        for k in 1..=50 {
            let w = ac_failure_intervals(&delta, k).unwrap();
            assert!(w.length_sum.hi() < &(int(2) * &delta));
            verify_ac_failure(&w).unwrap();
        }
    }
}

#[test]
fn ac_failure_rejects_bad_delta() {
    assert!(ac_failure_intervals(&rat(1, 2), 3).is_err());
    assert!(ac_failure_intervals(&int(0), 3).is_err());
}

#[test]
fn set_a_diverges_harmonically() {
    let w = application_set_a(10);
    verify_set_a(&w).unwrap();
    let last = w.integral.ledger.last().unwrap();
    assert!(last.partial_sum.lo() >= &harmonic(10));
    assert_eq!(w.ac.status, crate::functions::Status::Out);
}

#[test]
fn adversary_three_families() {
    let l = theorem1_adversary(&FunctionSpec::SqrtPeriodic, 3, &rat(1, 2)).unwrap();
    assert_eq!(l.families.len(), 3);
    for (i, b) in l.lower_bounds.iter().enumerate() {
        let n = i as i64 + 1;
        assert!(*b >= rat(1, 2) * (int(1) - rat(1, n * n)));
        assert!(l.measures[i].hi() <= &rat(1, n * n));
    }
    assert!(l.certificate.is_some());
    verify_adversary(&l).unwrap();
}

#[test]
fn adversary_depth_one_has_no_certificate() {
    let l = theorem1_adversary(&FunctionSpec::SqrtPeriodic, 1, &rat(1, 2)).unwrap();
    assert!(l.certificate.is_none());
    verify_adversary(&l).unwrap();
}

#[test]
fn adversary_scaled_generator() {
    let f = FunctionSpec::scale(int(3), FunctionSpec::SqrtPeriodic).unwrap();
    let l = theorem1_adversary(&f, 5, &int(1)).unwrap();
    verify_adversary(&l).unwrap();
}

#[test]
fn adversary_rejects_lipschitz() {
    let err = theorem1_adversary(&FunctionSpec::constant(int(1)), 3, &rat(1, 2)).unwrap_err();
    assert!(matches!(err, WitnessError::BudgetInfeasible { n: 1, .. }));
    let err = theorem1_adversary(&FunctionSpec::affine(int(4), int(0)), 3, &int(1)).unwrap_err();
    match err {
        WitnessError::BudgetInfeasible { n, achievable, .. } => {
            assert_eq!(n, 3);
            assert_eq!(*achievable, rat(4, 9));
        }
        e => panic!("{e}"),
    }
    assert!(matches!(
        theorem1_adversary(&FunctionSpec::Reciprocal, 3, &int(1)),
        Err(WitnessError::NoGenerator(_))
    ));
}

#[test]
fn adversary_partial_sums_grow_linearly() {
    for n in [2u64, 10, 50] {
        let eps = rat(1, 3);
        let l = theorem1_adversary(&FunctionSpec::SqrtPeriodic, n, &eps).unwrap();
        let total: Rational = l.lower_bounds.iter().sum();
        assert!(total >= &eps * int(n as i64) * rat(1, 2));
        verify_adversary(&l).unwrap();
    }
}

#[test]
fn theorem2_identity_pieces() {
    let l = theorem2_construction(&FunctionSpec::f1(), 3).unwrap();
    let heads: Vec<Vec<Interval>> = l.pieces.iter().map(|g| g.head().to_vec()).collect();
    assert_eq!(heads[0], vec![Interval::closed(int(1), int(2))]);
    assert_eq!(
        heads[1],
        vec![Interval::new(Some(int(2)), Some(rat(9, 4)), false, true).unwrap()]
    );
    assert_eq!(heads[2], vec![Interval::closed(int(3), rat(28, 9))]);
    assert_eq!(l.integral_lower_bounds, vec![int(1), rat(1, 2), rat(1, 3)]);
    verify_theorem2(&l).unwrap();
}

#[test]
fn theorem2_periodic_derivative() {
    let l = theorem2_construction(&FunctionSpec::SqrtPeriodicDeriv, 2).unwrap();
    verify_theorem2(&l).unwrap();
    assert_eq!(l.measures, vec![int(1), rat(1, 4)]);
}

#[test]
fn theorem2_needs_l1h_failure() {
    assert!(matches!(
        theorem2_construction(&FunctionSpec::constant(int(1)), 3),
        Err(WitnessError::NotApplicable(_))
    ));
}

#[test]
fn theorem2_harmonic_lower_bounds() {
    let l = theorem2_construction(&FunctionSpec::f1(), 100).unwrap();
    verify_theorem2(&l).unwrap();
    for (i, s) in l.partial_sums.iter().enumerate() {
        assert!(*s >= harmonic(i as u64 + 1));
    }
}

#[test]
fn verifiers_catch_tampering() {
    let mut l = theorem2_construction(&FunctionSpec::f1(), 3).unwrap();
    l.integral_lower_bounds[1] = int(5);
    assert!(verify_theorem2(&l).is_err());
    let mut a = theorem1_adversary(&FunctionSpec::SqrtPeriodic, 3, &rat(1, 2)).unwrap();
    a.lower_bounds[2] = int(9);
    assert!(verify_adversary(&a).is_err());
}
