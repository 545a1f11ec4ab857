//! The built-in acceptance suite, shared by `acreal verify` and the test target.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifier::{
    classify, l1g_bound_via_variation, BoundCase, Certificate, ClassifyError, Config, SpaceId,
};
use crate::functions::{
    derivative, integral_abs_over, singular_points, total_variation, FunctionSpec, Status,
    StepCoef,
};
use crate::numerics::{harmonic, int, rat, Enclosure, Rational, SeqTerm};
use crate::report::CriterionOutcome;
use crate::sets::{Interval, IntervalFamily, LeftFn, TailDescriptor};
use crate::witnesses::{
    ac_failure_intervals, set_a, theorem1_adversary, theorem2_construction, verify_adversary,
    verify_theorem2,
};

const SEED: u64 = 0x005e_edac;
const TIME_LIMIT: Duration = Duration::from_secs(1);

pub const CRITERIA: [(u32, &str); 9] = [
    (1, "venn placement of f1, f2, f3"),
    (2, "periodic square root fails AC"),
    (3, "set A: finite measure, divergent integral"),
    (4, "superlevel pieces for the identity"),
    (5, "adversarial families for the periodic square root"),
    (6, "inclusion lattice over random catalog draws"),
    (7, "variation matches integral of the derivative"),
    (8, "variation bound for the identity"),
    (9, "midpoint estimates inside certified enclosures"),
];

pub fn run_criterion(id: u32) -> CriterionOutcome {
    let started = Instant::now();
    let result = match id {
        1 => venn(),
        2 => ac_failure(),
        3 => set_a_criterion(),
        4 => theorem2(),
        5 => theorem1(),
        6 => lattice(),
        7 => ftc(),
        8 => bound(),
        9 => soundness(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = started.elapsed();
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown", |(_, n)| n)
        .to_string();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionOutcome {
        id,
        name,
        passed,
        detail: format!("{detail} ({} ms)", elapsed.as_millis()),
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id)).collect()
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn venn() -> Check {
    use Status::*;
    let started = Instant::now();
    let config = Config::default();
    let expected = [
        (FunctionSpec::f1(), [Out, Out, In, Out, Out, In, In]),
        (FunctionSpec::f2(), [Out, Out, In, In, Out, Out, Out]),
        (FunctionSpec::f3(), [Out, Out, Out, In, Out, Out, Out]),
    ];
    let mut summaries = Vec::new();
    for (f, want) in expected {
        let p = classify(&f, &config).map_err(|e| e.to_string())?;
        for (space, status) in SpaceId::ALL.iter().zip(want) {
            ensure(p.status(*space) == status, || {
                format!("{f}: {space} is {:?}, expected {status:?}", p.status(*space))
            })?;
        }
        summaries.push(p.summary());
    }
    ensure(started.elapsed() < TIME_LIMIT, || {
        format!("took {} ms", started.elapsed().as_millis())
    })?;
    Ok(summaries.join("; "))
}

fn ac_failure() -> Check {
    let w = ac_failure_intervals(&rat(1, 4), 10).map_err(|e| e.to_string())?;
    ensure(w.length_sum.hi() < &rat(1, 2), || format!("length sum {}", w.length_sum))?;
    let target = rat(1, 2) * rat(7381, 2520);
    ensure(target == rat(1, 2) * harmonic(10), || "H_10 mismatch".into())?;
    ensure(
        w.variation_sum.contains(&target) && w.variation_sum.width() <= rat(1, 1_000_000),
        || format!("variation sum {} misses {target}", w.variation_sum),
    )?;
    let p = classify(&FunctionSpec::SqrtPeriodic, &Config::default()).map_err(|e| e.to_string())?;
    let ac = &p.verdicts[&SpaceId::AC];
    ensure(ac.status == Status::Out, || format!("AC is {:?}", ac.status))?;
    let via_l1h = match &ac.certificate {
        Certificate::Theorem1 {
            derivative_l1g: Some(v),
            ..
        } => matches!(
            &v.certificate,
            Certificate::Implication { from: SpaceId::L1H, premise } if premise.status == Status::Out
        ),
        _ => false,
    };
    ensure(via_l1h, || "AC verdict does not go through f' outside L1H".into())?;
    Ok(format!(
        "length {} < 1/2, variation {} = H_10/2",
        w.length_sum, w.variation_sum
    ))
}

fn set_a_criterion() -> Check {
    let started = Instant::now();
    let a = set_a();
    let m = a.measure_with_depth(100);
    let m = m.as_finite().ok_or("measure of A is not finite")?;
    let pi2_6 = 1.6449340668482264;
    ensure(m.contains_f64(pi2_6) && m.width() <= rat(1, 50), || {
        format!("measure enclosure {m}")
    })?;
    let fprime = derivative(&FunctionSpec::SqrtPeriodic).unwrap().function;
    let r = integral_abs_over(&fprime, &a, 100);
    let cert = r.value.certificate().ok_or("integral is not proven infinite")?;
    ensure(cert.verify(), || "certificate rejected".into())?;
    ensure(r.ledger.len() == 100, || format!("{} ledger entries", r.ledger.len()))?;
    for e in &r.ledger {
        ensure(e.partial_sum == Enclosure::exact(harmonic(e.index)), || {
            format!("partial sum {} is {}", e.index, e.partial_sum)
        })?;
    }
    ensure(started.elapsed() < TIME_LIMIT, || {
        format!("took {} ms", started.elapsed().as_millis())
    })?;
    Ok(format!("measure in {m}, ledger ends at H_100"))
}

fn theorem2() -> Check {
    let l = theorem2_construction(&FunctionSpec::f1(), 100).map_err(|e| e.to_string())?;
    for (i, m) in l.measures.iter().enumerate() {
        let n = i as i64 + 1;
        ensure(*m >= rat(1, n * n) && *m <= rat(2, n * n), || {
            format!("mu(G_{n}) = {m}")
        })?;
    }
    let total = l.partial_sums.last().unwrap();
    ensure(*total >= harmonic(100), || format!("sum {total} < H_100"))?;
    verify_theorem2(&l).map_err(|e| e.join("; "))?;
    Ok(format!("sum of lower bounds {:.4} >= H_100", total.to_f64()))
}

fn theorem1() -> Check {
    let l = theorem1_adversary(&FunctionSpec::SqrtPeriodic, 20, &rat(1, 2)).map_err(|e| e.to_string())?;
    ensure(l.families.len() == 20, || format!("{} families", l.families.len()))?;
    let budget: Rational = (1..=20).map(|n| rat(1, n * n)).sum();
    ensure(l.union_measure.hi() <= &budget, || {
        format!("union measure {}", l.union_measure)
    })?;
    for (i, b) in l.lower_bounds.iter().enumerate() {
        let n = i as i64 + 1;
        ensure(*b >= rat(1, 2) * (int(1) - rat(1, n * n)), || format!("bound {n} is {b}"))?;
    }
    let cert = l.certificate.as_ref().ok_or("no divergence certificate")?;
    ensure(cert.verify(), || "certificate rejected".into())?;
    verify_adversary(&l).map_err(|e| e.join("; "))?;
    Ok(format!("union measure {} <= {budget}", l.union_measure))
}

fn small_rational(rng: &mut ChaCha8Rng, span: i64, denom: i64) -> Rational {
    rat(rng.gen_range(-span * denom..=span * denom), rng.gen_range(1..=denom))
}

fn nonzero_rational(rng: &mut ChaCha8Rng, span: i64, denom: i64) -> Rational {
    loop {
        let r = small_rational(rng, span, denom);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_step_series(rng: &mut ChaCha8Rng) -> FunctionSpec {
    let alpha = rng.gen_range(1..=4);
    let p = rng.gen_range(0..=3);
    let w = rat(rng.gen_range(1..=alpha), rng.gen_range(1..=3));
    let placement = TailDescriptor::new(
        rng.gen_range(1..=3),
        LeftFn::linear(alpha, small_rational(rng, 3, 2)),
        SeqTerm::power(w, p),
    )
    .expect("width at most the gap");
    let coef = if rng.gen_bool(0.5) {
        StepCoef::Linear(nonzero_rational(rng, 3, 2))
    } else {
        StepCoef::Decay(SeqTerm::power(rat(rng.gen_range(1..=5), rng.gen_range(1..=3)), rng.gen_range(0..=3)))
    };
    FunctionSpec::step_series(coef, placement).unwrap()
}

/// One draw from every constructor in turn, `kind` selecting which.
fn random_function(rng: &mut ChaCha8Rng, kind: usize) -> FunctionSpec {
    match kind % 9 {
        0 => FunctionSpec::affine(small_rational(rng, 4, 3), small_rational(rng, 4, 3)),
        1 => FunctionSpec::pow_abs(nonzero_rational(rng, 3, 4)).unwrap(),
        2 => FunctionSpec::signed_pow(small_rational(rng, 3, 4)),
        3 => FunctionSpec::Reciprocal,
        4 => FunctionSpec::SqrtPeriodic,
        5 => FunctionSpec::SqrtPeriodicDeriv,
        6 => random_step_series(rng),
        7 => {
            let (r, inner) = (nonzero_rational(rng, 3, 2), rng.gen_range(0..7));
            FunctionSpec::scale(r, random_function(rng, inner)).unwrap()
        }
        _ => {
            let (a, b) = (rng.gen_range(0..7), rng.gen_range(0..7));
            FunctionSpec::sum(random_function(rng, a), random_function(rng, b))
        }
    }
}

fn lattice() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let config = Config::default();
    let scales = [rat(1, 2), int(1), int(3)];
    let (mut checked, mut unknown) = (0, 0);
    for draw in 0..200 {
        let f = random_function(&mut rng, draw);
        for r in &scales {
            let g = if *r == int(1) {
                f.clone()
            } else {
                FunctionSpec::scale(r.clone(), f.clone()).unwrap()
            };
            match classify(&g, &config) {
                Ok(p) => {
                    unknown += p.verdicts.values().filter(|v| v.status == Status::Unknown).count();
                }
                Err(ClassifyError::LatticeViolation(m)) => return Err(m),
                Err(e) => return Err(format!("{g}: {e}")),
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} placements, 0 violations, {unknown} unknown verdicts"))
}

fn random_interval(rng: &mut ChaCha8Rng, max_len: i64) -> (Rational, Rational) {
    let a = rat(rng.gen_range(-80..80), 8);
    let len = rat(rng.gen_range(1..=max_len * 8), 8);
    let b = (&a + len).min(int(10));
    (a, b)
}

fn ftc() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let fs = [
        FunctionSpec::affine(rat(3, 2), int(-1)),
        FunctionSpec::SqrtPeriodic,
        FunctionSpec::pow_abs(rat(1, 2)).unwrap(),
    ];
    let mut widest = Rational::zero();
    for f in &fs {
        let fprime = derivative(f).map_err(|e| e.to_string())?.function;
        for _ in 0..100 {
            let (a, b) = random_interval(&mut rng, 20);
            let tv = total_variation(f, &a, &b).map_err(|e| e.to_string())?;
            let fam = IntervalFamily::finite(vec![Interval::closed(a.clone(), b.clone())]).unwrap();
            let integral = integral_abs_over(&fprime, &fam, 1).value;
            let (tv, integral) = match (tv.as_finite(), integral.as_finite()) {
                (Some(x), Some(y)) => (x.clone(), y.clone()),
                _ => return Err(format!("{f} on [{a}, {b}]: non-finite enclosure")),
            };
            let meet = tv.intersection(&integral).ok_or_else(|| {
                format!("{f} on [{a}, {b}]: variation {tv} misses integral {integral}")
            })?;
            ensure(meet.width() <= rat(1, 1_000_000), || {
                format!("{f} on [{a}, {b}]: overlap {meet} too wide")
            })?;
            widest = widest.max(meet.width());
        }
    }
    Ok(format!("300 intervals, widest overlap {:.2e}", widest.to_f64()))
}

fn bound() -> Check {
    let fam = IntervalFamily::finite(vec![Interval::closed_open(int(0), int(3))]).unwrap();
    let b = l1g_bound_via_variation(&FunctionSpec::f1(), &fam, &int(1)).map_err(|e| e.to_string())?;
    ensure(b.case == BoundCase::Chopped && b.bound == int(7), || {
        format!("case {:?}, bound {}", b.case, b.bound)
    })?;
    ensure(b.total == Enclosure::exact(int(3)) && b.total.hi() <= &b.bound, || {
        format!("total {}", b.total)
    })?;
    let short = IntervalFamily::finite(vec![
        Interval::closed_open(int(0), rat(1, 4)),
        Interval::closed_open(int(5), rat(11, 2)),
    ])
    .unwrap();
    let s = l1g_bound_via_variation(&FunctionSpec::f1(), &short, &int(1)).map_err(|e| e.to_string())?;
    ensure(s.case == BoundCase::Short && s.bound == int(1), || {
        format!("short case {:?}, bound {}", s.case, s.bound)
    })?;
    Ok(format!("n0 + 1 = {}, total {}; short bound {}", b.bound, b.total, s.bound))
}

/// Plain floating point evaluation, written independently of the exact evaluator.
fn eval_f64(f: &FunctionSpec, x: f64) -> Option<f64> {
    use FunctionSpec::*;
    let periodic = |x: f64| x - 2.0 * ((x + 1.0) / 2.0).floor();
    Some(match f {
        Affine { slope, intercept } => slope.to_f64() * x + intercept.to_f64(),
        PowerAbs { exponent } => {
            if x == 0.0 && exponent.is_negative() {
                return None;
            }
            x.abs().powf(exponent.to_f64())
        }
        SignedPower { exponent } => {
            if x == 0.0 {
                if exponent.is_negative() {
                    return None;
                }
                0.0
            } else {
                x.signum() * x.abs().powf(exponent.to_f64())
            }
        }
        Reciprocal => {
            if x == 0.0 {
                return None;
            }
            1.0 / x
        }
        SqrtPeriodic => periodic(x).abs().sqrt(),
        SqrtPeriodicDeriv => {
            let t = periodic(x);
            if t == 0.0 {
                return None;
            }
            t.signum() / (2.0 * t.abs().sqrt())
        }
        StepSeries { coef, placement } => {
            let mut n = placement.from_index;
            loop {
                let a = placement.left_fn.at(n).to_f64();
                if a > x {
                    break 0.0;
                }
                if x < a + placement.width_at(n).to_f64() {
                    break coef.at(n).to_f64();
                }
                n += 1;
            }
        }
        Scale { factor, inner } => factor.to_f64() * eval_f64(inner, x)?,
        SumOf(l, r) => eval_f64(l, x)? + eval_f64(r, x)?,
    })
}

fn soundness_members() -> Vec<FunctionSpec> {
    let decay = FunctionSpec::step_series(
        StepCoef::Decay(SeqTerm::power(int(3), 1)),
        TailDescriptor::new(1, LeftFn::linear(1, rat(-8, 1)), SeqTerm::power(rat(1, 2), 1)).unwrap(),
    )
    .unwrap();
    vec![
        FunctionSpec::affine(rat(3, 2), int(-2)),
        FunctionSpec::pow_abs(rat(1, 2)).unwrap(),
        FunctionSpec::pow_abs(rat(-1, 2)).unwrap(),
        FunctionSpec::pow_abs(int(2)).unwrap(),
        FunctionSpec::signed_pow(rat(3, 2)),
        FunctionSpec::Reciprocal,
        FunctionSpec::SqrtPeriodic,
        FunctionSpec::SqrtPeriodicDeriv,
        FunctionSpec::f2(),
        decay,
        FunctionSpec::scale(int(-3), FunctionSpec::SqrtPeriodic).unwrap(),
        FunctionSpec::sum(FunctionSpec::f1(), FunctionSpec::pow_abs(rat(1, 2)).unwrap()),
        FunctionSpec::sum(FunctionSpec::SqrtPeriodic, FunctionSpec::f2()),
    ]
}

const SAMPLES: usize = 10_000;

/// A family of one to four disjoint intervals in `[-10, 10]` avoiding the singular points of `f`.
fn random_family(rng: &mut ChaCha8Rng, f: &FunctionSpec) -> Vec<(Rational, Rational)> {
    let count = rng.gen_range(1..=4);
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    while out.len() < count {
        let (a, b) = random_interval(rng, 3);
        let clear = out.iter().all(|(c, d)| b <= *c || *d <= a);
        if a < b && clear && singular_points(f, &a, &b).is_empty() {
            out.push((a, b));
        }
    }
    out.sort();
    out
}

fn soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let mut families = 0;
    for f in soundness_members() {
        for _ in 0..100 {
            let pieces = random_family(&mut rng, &f);
            let total_len: f64 = pieces.iter().map(|(a, b)| (b - a).to_f64()).sum();
            let mut estimate = 0.0;
            let mut slack = 0.0;
            for (a, b) in &pieces {
                let (lo, hi) = (a.to_f64(), b.to_f64());
                let cells = (((hi - lo) / total_len) * SAMPLES as f64).ceil().max(1.0) as usize;
                let h = (hi - lo) / cells as f64;
                let mut s = 0.0;
                for j in 0..cells {
                    let x = lo + (j as f64 + 0.5) * h;
                    s += eval_f64(&f, x).ok_or_else(|| format!("{f} undefined at {x}"))?.abs();
                }
                estimate += s * h;
                // A Riemann sum of a function of bounded variation V is within h·V of its integral.
                let tv = total_variation(&f, a, b).map_err(|e| e.to_string())?;
                let tv = tv.as_finite().ok_or_else(|| format!("{f}: no variation bound on [{a}, {b}]"))?;
                slack += h * tv.hi().to_f64();
            }
            let fam = IntervalFamily::finite(
                pieces.iter().map(|(a, b)| Interval::closed(a.clone(), b.clone())).collect(),
            )
            .unwrap();
            let certified = integral_abs_over(&f, &fam, 1).value;
            let e = certified
                .as_finite()
                .ok_or_else(|| format!("{f} over {fam}: {certified:?}"))?;
            let tol = slack + 1e-9 * (1.0 + estimate.abs());
            ensure(
                e.lo().to_f64() - tol <= estimate && estimate <= e.hi().to_f64() + tol,
                || format!("{f} over {fam}: estimate {estimate} escapes {e} (slack {slack})"),
            )?;
            families += 1;
        }
    }
    Ok(format!("{families} families, 0 escapes"))
}
