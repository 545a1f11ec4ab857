use serde::Serialize;

use super::{finish, Verification};
use crate::classifier::{Certificate, SpaceId, Verdict};
use crate::functions::{derivative, integral_abs_over, FunctionSpec, IntegralReport, Status};
use crate::numerics::{harmonic, int, rat, Enclosure, ExtendedValue, SeqTerm};
use crate::sets::{IntervalFamily, LeftFn, TailDescriptor};

/// `A = ⋃ [2n, 2n + 1/n²)`: finite measure, yet `∫_A |f'| = ∞` for the
/// periodic square root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SetAWitness {
    pub family: IntervalFamily,
    pub measure: ExtendedValue,
    pub integral: IntegralReport,
    pub derivative_l1g: Verdict,
    pub ac: Verdict,
}

pub fn set_a() -> IntervalFamily {
    let tail = TailDescriptor::new(1, LeftFn::linear(2, int(0)), SeqTerm::power(int(1), 2))
        .expect("2n + 1/n^2 < 2n + 2");
    IntervalFamily::from_tail(tail)
}

pub fn application_set_a(depth: u64) -> SetAWitness {
    let family = set_a();
    let measure = family.measure_with_depth(depth);
    let fprime = derivative(&FunctionSpec::SqrtPeriodic)
        .expect("catalog derivative")
        .function;
    let integral = integral_abs_over(&fprime, &family, depth);
    let derivative_l1g = match (&measure, &integral.value) {
        (ExtendedValue::Finite { .. }, ExtendedValue::ProvenInfinite { certificate }) => {
            Verdict::new(
                SpaceId::L1G,
                Status::Out,
                Certificate::DivergentFamily {
                    family: family.clone(),
                    measure: measure.clone(),
                    ledger: integral.ledger.clone(),
                    certificate: certificate.clone(),
                },
            )
        }
        _ => Verdict::unknown(SpaceId::L1G, "set A did not produce a divergent family"),
    };
    let ac_loc = Verdict::new(
        SpaceId::ACloc,
        FunctionSpec::SqrtPeriodic.attributes().ac_loc,
        Certificate::Attribute {
            justification: FunctionSpec::SqrtPeriodic.attributes().ac_loc_justification,
        },
    );
    let ac = Verdict::new(
        SpaceId::AC,
        if derivative_l1g.status == Status::Out {
            Status::Out
        } else {
            Status::Unknown
        },
        Certificate::Theorem1 {
            ac_loc: Box::new(ac_loc),
            derivative: Some(fprime),
            derivative_l1g: Some(Box::new(derivative_l1g.clone())),
        },
    );
    SetAWitness {
        family,
        measure,
        integral,
        derivative_l1g,
        ac,
    }
}

pub fn verify_set_a(w: &SetAWitness) -> Verification {
    let mut bad = Vec::new();
    if w.family != set_a() {
        bad.push(format!("family {} is not A", w.family));
    }
    match w.family.measure().as_finite() {
        Some(m) if m.hi() <= &int(2) && m.lo() >= &int(1) => {}
        other => bad.push(format!("measure of A recomputes to {other:?}")),
    }
    for e in &w.integral.ledger {
        let n = e.index as i64;
        if e.contribution != Enclosure::exact(rat(1, n)) {
            bad.push(format!("contribution {n} is {}, expected 1/{n}", e.contribution));
        }
        if e.partial_sum != Enclosure::exact(harmonic(e.index)) {
            bad.push(format!("partial sum {n} is not H_{n}"));
        }
        if e.interval != w.family.tail().unwrap().interval_at(e.index) {
            bad.push(format!("ledger interval {n} is not [2n, 2n + 1/n^2)"));
        }
    }
    match w.integral.value.certificate() {
        Some(c) if c.verify() => {}
        _ => bad.push("integral of |f'| over A lacks a valid divergence certificate".into()),
    }
    if w.derivative_l1g.status != Status::Out || w.ac.status != Status::Out {
        bad.push("verdicts do not place f' outside L1G and f outside AC".into());
    }
    finish(bad)
}
