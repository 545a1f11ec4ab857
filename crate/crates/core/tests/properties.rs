use acreal::classifier::{classify, lattice_violations, Certificate, Config, SpaceId, VennPlacement};
use acreal::functions::{evaluate, integral_abs_over, FunctionSpec, Status, StepCoef};
use acreal::numerics::{
    divergence_by_comparison, int, rat, series_tail_with, Enclosure, Rational, SeqTerm,
};
use acreal::plot::emit_plot;
use acreal::sets::{Interval, IntervalFamily, LeftFn, TailDescriptor};
use acreal::witnesses::{
    ac_failure_intervals, theorem1_adversary, theorem2_construction, verify_ac_failure,
    verify_adversary, verify_theorem2,
};
use proptest::prelude::*;

fn arb_rational(span: i64) -> impl Strategy<Value = Rational> {
    (-span * 8..=span * 8, 1i64..=8).prop_map(|(n, d)| rat(n, d))
}

fn arb_nonzero(span: i64) -> impl Strategy<Value = Rational> {
    arb_rational(span).prop_filter("nonzero", |r| !r.is_zero())
}

fn arb_leaf() -> impl Strategy<Value = FunctionSpec> {
    prop_oneof![
        (arb_rational(3), arb_rational(3)).prop_map(|(a, b)| FunctionSpec::affine(a, b)),
        arb_nonzero(3).prop_map(|p| FunctionSpec::pow_abs(p).unwrap()),
        arb_rational(3).prop_map(FunctionSpec::signed_pow),
        Just(FunctionSpec::Reciprocal),
        Just(FunctionSpec::SqrtPeriodic),
        Just(FunctionSpec::SqrtPeriodicDeriv),
        Just(FunctionSpec::f2()),
        (1i64..4, 0i64..3, 1u64..3, 0i64..4, 1i64..4).prop_map(|(alpha, beta, from, p, c)| {
            let placement =
                TailDescriptor::new(from, LeftFn::linear(alpha, int(beta)), SeqTerm::power(int(1), p))
                    .unwrap();
            FunctionSpec::step_series(StepCoef::Decay(SeqTerm::power(int(c), 1)), placement).unwrap()
        }),
    ]
}

fn arb_function() -> impl Strategy<Value = FunctionSpec> {
    arb_leaf().prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (arb_nonzero(3), inner.clone()).prop_map(|(r, f)| FunctionSpec::scale(r, f).unwrap()),
            (inner.clone(), inner).prop_map(|(l, r)| FunctionSpec::sum(l, r)),
        ]
    })
}

/// Finite-measure families: a few bounded intervals and optionally a summable tail.
fn arb_finite_measure_family() -> impl Strategy<Value = IntervalFamily> {
    (
        proptest::collection::btree_set(-60i64..60, 0..6),
        any::<bool>(),
        2i64..4,
        1i64..4,
    )
        .prop_map(|(cuts, tail, p, alpha)| {
            let cuts: Vec<i64> = cuts.into_iter().collect();
            let head = cuts
                .chunks_exact(2)
                .map(|w| Interval::closed_open(rat(w[0], 3), rat(w[1], 3)))
                .collect();
            let tail = tail.then(|| {
                TailDescriptor::new(1, LeftFn::linear(alpha, int(31)), SeqTerm::power(int(1), p))
                    .unwrap()
            });
            IntervalFamily::new(head, tail).unwrap()
        })
}

fn place(f: &FunctionSpec) -> VennPlacement {
    classify(f, &Config::default()).unwrap_or_else(|e| panic!("{f}: {e}"))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn enclosure_sums_are_sound(
        a in arb_rational(20), wa in 0i64..20, b in arb_rational(20), wb in 0i64..20,
        ta in 0i64..=4, tb in 0i64..=4, k in arb_rational(5),
    ) {
        let x = Enclosure::new(a.clone(), &a + rat(wa, 7));
        let y = Enclosure::new(b.clone(), &b + rat(wb, 5));
        let px = x.lo() + (x.width() * rat(ta, 4));
        let py = y.lo() + (y.width() * rat(tb, 4));
        prop_assert!((&x + &y).contains(&(&px + &py)));
        prop_assert!((&x - &y).contains(&(&px - &py)));
        prop_assert!(x.scale(&k).contains(&(&px * &k)));
    }

    #[test]
    fn series_tails_nest(c in 1i64..10, p in 2i64..5, from in 1u64..20, n in 1u64..200) {
        let term = SeqTerm::power(int(c), p);
        let coarse = series_tail_with(&term, from, n);
        let fine = series_tail_with(&term, from, 2 * n);
        prop_assert!(fine.as_finite().unwrap().is_subset_of(coarse.as_finite().unwrap()));
    }

    #[test]
    fn divergence_certificates_dominate(
        c in 1i64..10, q in 0i64..3, len in 2usize..400, noise in proptest::collection::vec(0i64..5, 400),
    ) {
        let bounds: Vec<(u64, Rational)> = (1..=len as u64)
            .map(|n| (n, rat(c, 1) / int(n as i64).pow(q) + rat(noise[n as usize - 1], 100)))
            .collect();
        if let Ok(cert) = divergence_by_comparison(&bounds) {
            prop_assert!(cert.verify());
            let p = cert.term.exponent.clone();
            let demanded: Rational = bounds
                .iter()
                .map(|(n, _)| &cert.term.coefficient / int(*n as i64).pow(if p.is_zero() { 0 } else { 1 }))
                .sum();
            let supplied: Rational = bounds.iter().map(|(_, b)| b.clone()).sum();
            prop_assert!(supplied >= demanded);
        }
        if q >= 2 && noise.iter().all(|x| *x == 0) {
            prop_assert!(divergence_by_comparison(&bounds).is_err());
        }
    }

    #[test]
    fn placements_respect_the_lattice(f in arb_function()) {
        let p = place(&f);
        prop_assert!(lattice_violations(&p).is_empty());
    }

    #[test]
    fn theorem1_verdict_is_acloc_and_derivative_in_l1g(f in arb_function()) {
        let p = place(&f);
        let ac = &p.verdicts[&SpaceId::AC];
        if let Certificate::Theorem1 { ac_loc, derivative_l1g, .. } = &ac.certificate {
            let l1g = derivative_l1g.as_ref().map(|v| v.status);
            let expected = match (ac_loc.status, l1g) {
                (Status::Out, _) | (_, Some(Status::Out)) => Status::Out,
                (Status::In, Some(Status::In)) => Status::In,
                _ => Status::Unknown,
            };
            prop_assert_eq!(ac.status, expected);
        } else {
            prop_assert_eq!(ac.status, Status::Unknown);
        }
    }

    #[test]
    fn l1g_members_integrate_over_finite_measure_sets(
        f in arb_function(),
        fams in proptest::collection::vec(arb_finite_measure_family(), 50),
    ) {
        let p = place(&f);
        let v = &p.verdicts[&SpaceId::L1G];
        if v.status == Status::In {
            let split = match &v.certificate {
                Certificate::Threshold { level, tail_integral: Some(t), .. } => {
                    Some((level.clone(), t.as_finite().unwrap().hi().clone()))
                }
                _ => None,
            };
            for fam in &fams {
                let r = integral_abs_over(&f, fam, 100).value;
                let e = r.as_finite();
                prop_assert!(e.is_some(), "{} over {}: {:?}", f, fam, r);
                if let Some((m, tail)) = &split {
                    let mu = fam.measure().as_finite().unwrap().hi().clone();
                    prop_assert!(e.unwrap().hi() <= &(m * mu + tail));
                }
            }
        }
    }

    #[test]
    fn plotted_values_lie_in_their_enclosures(f in arb_function(), a in -20i64..20, len in 1i64..20, n in 2u64..60) {
        let t = emit_plot(&f, &int(a), &int(a + len), n, None).unwrap();
        for s in &t.samples {
            prop_assert!(s.enclosure.contains_f64(s.y));
            prop_assert_eq!(evaluate(&f, &s.x).unwrap(), s.enclosure.clone());
        }
    }

    #[test]
    fn ac_failure_ledgers_verify(num in 1i64..50, k in 1u64..40) {
        let w = ac_failure_intervals(&rat(num, 101), k).unwrap();
        prop_assert!(verify_ac_failure(&w).is_ok());
    }

    #[test]
    fn adversary_ledgers_verify(num in 1i64..8, den in 1i64..8, n in 2u64..12, r in 1i64..4) {
        let f = FunctionSpec::scale(int(r), FunctionSpec::SqrtPeriodic).unwrap();
        let eps = rat(num, den);
        let l = theorem1_adversary(&f, n, &eps).unwrap();
        prop_assert!(verify_adversary(&l).is_ok());
        let total: Rational = l.lower_bounds.iter().sum();
        let budget: Rational = (1..=n as i64).map(|k| rat(1, k * k)).sum();
        prop_assert!(total >= &eps * (int(n as i64) - budget));
    }
}

#[test]
fn theorem2_ledgers_verify_across_catalog() {
    let fs = [
        FunctionSpec::f1(),
        FunctionSpec::affine(rat(-2, 3), int(5)),
        FunctionSpec::pow_abs(rat(1, 2)).unwrap(),
        FunctionSpec::SqrtPeriodicDeriv,
        FunctionSpec::scale(int(-2), FunctionSpec::SqrtPeriodicDeriv).unwrap(),
    ];
    for f in &fs {
        let l = theorem2_construction(f, 30).unwrap_or_else(|e| panic!("{f}: {e}"));
        verify_theorem2(&l).unwrap_or_else(|e| panic!("{f}: {e:?}"));
    }
}
