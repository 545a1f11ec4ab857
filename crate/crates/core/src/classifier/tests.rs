use super::*;
use crate::functions::{integral_abs_over, FunctionSpec, StepCoef, Status};
use crate::numerics::{int, rat, Enclosure, SeqTerm};
use crate::sets::{Interval, IntervalFamily, LeftFn, TailDescriptor};
use proptest::prelude::*;

fn place(f: &FunctionSpec) -> VennPlacement {
    classify(f, &Config::default()).unwrap()
}

fn statuses(p: &VennPlacement) -> Vec<Status> {
    SpaceId::ALL.iter().map(|s| p.status(*s)).collect()
}

use Status::{In, Out};

#[test]
fn venn_f1() {
    // L1 Linf L1loc L1H L1G ACloc AC
    assert_eq!(statuses(&place(&FunctionSpec::f1())), vec![Out, Out, In, Out, Out, In, In]);
}

#[test]
fn venn_f2() {
    let p = place(&FunctionSpec::f2());
    assert_eq!(statuses(&p), vec![Out, Out, In, In, Out, Out, Out]);
    match &p.verdicts[&SpaceId::L1G].certificate {
        Certificate::DivergentFamily {
            family,
            measure,
            certificate,
            ..
        } => {
            assert!(measure.is_finite());
            assert_eq!(family.tail().unwrap().from_index, 1);
            assert!(certificate.verify());
        }
        other => panic!("unexpected certificate {other:?}"),
    }
}

#[test]
fn venn_f3() {
    let p = place(&FunctionSpec::f3());
    assert_eq!(statuses(&p), vec![Out, Out, Out, In, Out, Out, Out]);
    match &p.verdicts[&SpaceId::L1H].certificate {
        Certificate::Threshold { level, measure, .. } => {
            assert_eq!(level, &int(1));
            assert_eq!(measure.as_finite().unwrap(), &Enclosure::exact(int(2)));
        }
        other => panic!("unexpected certificate {other:?}"),
    }
}

#[test]
fn superlevel_examples() {
    let s = superlevel(&FunctionSpec::Reciprocal, &int(1)).unwrap();
    assert_eq!(s.family.to_string(), "{[-1,0) (0,1]}");
    assert_eq!(s.family.measure().as_finite().unwrap(), &Enclosure::exact(int(2)));
    let s = superlevel(&FunctionSpec::constant(int(1)), &int(2)).unwrap();
    assert!(s.family.is_empty());
    let s = superlevel(&FunctionSpec::f2(), &int(2)).unwrap();
    assert_eq!(s.family.tail().unwrap().from_index, 2);
    let m = s.family.measure();
    assert!(m.as_finite().unwrap().contains_f64(std::f64::consts::PI.powi(2) / 6.0 - 1.0));
    assert!(superlevel(&FunctionSpec::f1(), &int(0)).is_err());
}

#[test]
fn membership_examples() {
    let v = membership(&FunctionSpec::f1(), SpaceId::L1H).unwrap();
    assert_eq!(v.status, Out);
    let v = membership(&FunctionSpec::f3(), SpaceId::L1loc).unwrap();
    assert_eq!(v.status, Out);
    let v = membership(&FunctionSpec::constant(int(1)), SpaceId::L1G).unwrap();
    assert_eq!(v.status, In);
    match v.certificate {
        Certificate::Threshold { level, superlevel, .. } => {
            assert_eq!(level, int(2));
            assert!(superlevel.is_empty());
        }
        other => panic!("unexpected certificate {other:?}"),
    }
}

#[test]
fn theorem1_examples() {
    let c = Config::default();
    assert_eq!(ac_via_theorem1(&FunctionSpec::f1(), &c).unwrap().status, In);
    let v = ac_via_theorem1(&FunctionSpec::SqrtPeriodic, &c).unwrap();
    assert_eq!(v.status, Out);
    match v.certificate {
        Certificate::Theorem1 {
            derivative_l1g: Some(g),
            ..
        } => assert!(matches!(g.certificate, Certificate::Implication { from: SpaceId::L1H, .. })),
        other => panic!("unexpected certificate {other:?}"),
    }
    assert_eq!(ac_via_theorem1(&FunctionSpec::f2(), &c).unwrap().status, Out);
    assert_eq!(ac_via_theorem1(&FunctionSpec::SqrtPeriodicDeriv, &c).unwrap().status, Out);
    let no_derivative = FunctionSpec::sum(FunctionSpec::SqrtPeriodicDeriv, FunctionSpec::f3());
    assert!(ac_via_theorem1(&no_derivative, &c).is_err());
}

#[test]
fn power_placements() {
    let half = FunctionSpec::pow_abs(rat(-1, 2)).unwrap();
    assert_eq!(statuses(&place(&half))[..5], [Out, Out, In, In, In]);
    let sq = FunctionSpec::pow_abs(int(-2)).unwrap();
    assert_eq!(statuses(&place(&sq))[..5], [Out, Out, Out, In, Out]);
    let root = FunctionSpec::pow_abs(rat(1, 2)).unwrap();
    let p = place(&root);
    assert_eq!(statuses(&p)[..5], [Out, Out, In, Out, Out]);
    // f' = (1/2) sign(x)|x|^{-1/2} is in L1G, so sqrt|x| is AC on R.
    assert_eq!(p.status(SpaceId::AC), In);
}

#[test]
fn bounded_and_integrable_steps() {
    let t = TailDescriptor::new(1, LeftFn::linear(1, int(0)), SeqTerm::power(int(1), 2)).unwrap();
    let f = FunctionSpec::step_series(StepCoef::Decay(SeqTerm::power(int(3), 1)), t).unwrap();
    assert_eq!(statuses(&place(&f))[..5], [In, In, In, In, In]);
}

#[test]
fn sums_compose() {
    let s = FunctionSpec::sum(FunctionSpec::SqrtPeriodic, FunctionSpec::f3());
    let p = place(&s);
    assert_eq!(p.status(SpaceId::Linf), Out);
    assert_eq!(p.status(SpaceId::L1H), In);
    assert_eq!(p.status(SpaceId::L1G), Out);
}

#[test]
fn variation_bound_examples() {
    let fam = IntervalFamily::finite(vec![Interval::closed_open(int(0), int(3))]).unwrap();
    let b = l1g_bound_via_variation(&FunctionSpec::f1(), &fam, &int(1)).unwrap();
    assert_eq!(b.n0, Some(6));
    assert_eq!(b.bound, int(7));
    assert_eq!(b.total, Enclosure::exact(int(3)));

    let b = l1g_bound_via_variation(&FunctionSpec::constant(int(5)), &fam, &int(1)).unwrap();
    assert_eq!(b.bound, int(7));
    assert_eq!(b.total, Enclosure::zero());

    let short = IntervalFamily::finite(vec![Interval::closed_open(int(0), rat(1, 4))]).unwrap();
    let b = l1g_bound_via_variation(&FunctionSpec::f1(), &short, &int(1)).unwrap();
    assert_eq!(b.case, BoundCase::Short);
    assert_eq!(b.bound, int(1));

    let steep = FunctionSpec::affine(int(5), int(0));
    assert!(matches!(
        l1g_bound_via_variation(&steep, &fam, &int(1)),
        Err(ClassifyError::ModulusViolation { .. })
    ));
    assert!(l1g_bound_via_variation(&FunctionSpec::f1(), &fam, &int(0)).is_err());
}

#[test]
fn space_names_round_trip() {
    for s in SpaceId::ALL {
        assert_eq!(s.name().parse::<SpaceId>().unwrap(), s);
    }
}

fn catalog() -> Vec<FunctionSpec> {
    let t = TailDescriptor::new(1, LeftFn::linear(1, int(0)), SeqTerm::power(int(1), 2)).unwrap();
    vec![
        FunctionSpec::f1(),
        FunctionSpec::f2(),
        FunctionSpec::f3(),
        FunctionSpec::SqrtPeriodic,
        FunctionSpec::SqrtPeriodicDeriv,
        FunctionSpec::constant(rat(3, 2)),
        FunctionSpec::pow_abs(rat(-1, 2)).unwrap(),
        FunctionSpec::pow_abs(rat(3, 2)).unwrap(),
        FunctionSpec::step_series(StepCoef::Decay(SeqTerm::power(int(1), 0)), t).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn superlevels_shrink_with_level(which in 0usize..9, k in 0u32..4, extra in 1i64..4) {
        let f = &catalog()[which];
        let m = int(2).pow(k as i64) * rat(1, 2);
        let m2 = &m * int(extra);
        let (lo, hi) = (superlevel(f, &m).unwrap(), superlevel(f, &m2).unwrap());
        prop_assert!(lo.family.covers(&hi.family, 30));
        match (lo.family.measure().as_finite(), hi.family.measure().as_finite()) {
            (Some(a), Some(b)) => prop_assert!(b.lo() <= a.hi()),
            (None, Some(_)) | (None, None) => {}
            (Some(_), None) => prop_assert!(false, "measure grew with the level"),
        }
    }

    #[test]
    fn l1g_members_split_at_their_threshold(which in 0usize..9, a in -20i64..20, len in 1i64..12, den in 1i64..4) {
        let f = &catalog()[which];
        let v = membership(f, SpaceId::L1G).unwrap();
        if let Certificate::Threshold { level, tail_integral: Some(ti), .. } = v.certificate {
            let fam = IntervalFamily::finite(vec![Interval::closed_open(rat(a, den), rat(a + len, den))]).unwrap();
            let got = integral_abs_over(f, &fam, 1).value;
            let got = got.as_finite().unwrap();
            let cap = &level * fam.measure().as_finite().unwrap().hi() + ti.as_finite().unwrap().hi();
            prop_assert!(got.hi() <= &cap);
        }
    }
}

