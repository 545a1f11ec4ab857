use serde::Serialize;

use super::{finish, Verification, WitnessError};
use crate::functions::{derivative, integral_abs_over, FunctionSpec};
use crate::numerics::{
    divergence_by_comparison, int, series_tail, DivergenceCertificate, Enclosure, Rational,
    SeqTerm,
};
use crate::sets::{Interval, IntervalFamily};

/// Families `A_1, …, A_N` of total measure at most `Σ 1/n²` on each of
/// which `∫|f'| >= ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdversaryLedger {
    pub function: FunctionSpec,
    pub derivative: FunctionSpec,
    pub epsilon: Rational,
    pub budget: SeqTerm,
    /// `L_{n-1}`: every interval of `A_n` lies beyond it.
    pub cutoffs: Vec<Rational>,
    pub families: Vec<IntervalFamily>,
    /// Number of intervals and their common width in `A_n`.
    pub runs: Vec<(u64, Rational)>,
    pub measures: Vec<Enclosure>,
    pub lower_bounds: Vec<Rational>,
    /// `ε(1 − 1/n²)`.
    pub proof_bounds: Vec<Rational>,
    pub deltas: Vec<Rational>,
    pub m: Vec<Rational>,
    pub union_measure: Enclosure,
    pub budget_sum: Enclosure,
    pub certificate: Option<DivergenceCertificate>,
}

enum Generator {
    /// `r · √|x − 2k|`; copies of the cusp sit at every even integer.
    Periodic(Rational),
    /// Slope bound of an affine map.
    Bounded(Rational),
}

fn generator(f: &FunctionSpec) -> Result<Generator, WitnessError> {
    use FunctionSpec::*;
    match f {
        SqrtPeriodic => Ok(Generator::Periodic(int(1))),
        Affine { slope, .. } => Ok(Generator::Bounded(slope.abs())),
        Scale { factor, inner } => Ok(match generator(inner)? {
            Generator::Periodic(s) => Generator::Periodic(s * factor.abs()),
            Generator::Bounded(s) => Generator::Bounded(s * factor.abs()),
        }),
        _ => Err(WitnessError::NoGenerator(f.to_string())),
    }
}

fn r(n: u64) -> Rational {
    Rational::new(1, (n * n) as i64)
}

/// First `n` at which `slope · r_n < ε`.
fn first_infeasible(slope: &Rational, epsilon: &Rational) -> u64 {
    let mut n = 1u64;
    while slope * r(n) >= *epsilon {
        n += 1;
    }
    n
}

/// `j²` intervals `[2i, 2i + 1/(n² j²)]` at consecutive even integers beyond `cutoff`.
fn run(n: u64, j: u64, cutoff: &Rational) -> IntervalFamily {
    let start = Rational::from(cutoff.floor() / 2 * 2) + int(2);
    let width = Rational::new(1, (n * n * j * j) as i64);
    let head = (0..j * j)
        .map(|i| {
            let a = &start + int(2 * i as i64);
            Interval::closed(a.clone(), a + &width)
        })
        .collect();
    IntervalFamily::finite(head).expect("separated runs")
}

pub fn theorem1_adversary(
    f: &FunctionSpec,
    depth: u64,
    epsilon: &Rational,
) -> Result<AdversaryLedger, WitnessError> {
    if depth == 0 || !epsilon.is_positive() {
        return Err(WitnessError::InvalidParameter(
            "need depth >= 1 and epsilon > 0".into(),
        ));
    }
    let scale = match generator(f)? {
        Generator::Periodic(s) => s,
        Generator::Bounded(slope) => {
            // ∫_A |f'| <= |a| μ(A) <= |a|/n², which falls below ε.
            let n = first_infeasible(&slope, epsilon);
            return Err(WitnessError::BudgetInfeasible {
                n,
                achievable: Box::new(slope * r(n)),
                epsilon: Box::new(epsilon.clone()),
            });
        }
    };
    let fprime = derivative(f)
        .map_err(|e| WitnessError::Construction(e.to_string()))?
        .function;
    let mut ledger = AdversaryLedger {
        function: f.clone(),
        derivative: fprime.clone(),
        epsilon: epsilon.clone(),
        budget: SeqTerm::power(int(1), 2),
        cutoffs: Vec::new(),
        families: Vec::new(),
        runs: Vec::new(),
        measures: Vec::new(),
        lower_bounds: Vec::new(),
        proof_bounds: Vec::new(),
        deltas: Vec::new(),
        m: Vec::new(),
        union_measure: Enclosure::zero(),
        budget_sum: Enclosure::zero(),
        certificate: None,
    };
    let mut cutoff = Rational::zero();
    for n in 1..=depth {
        let j: u64 = (epsilon * int(n as i64) / &scale)
            .ceil()
            .try_into()
            .map_err(|_| WitnessError::Construction("run length overflow".into()))?;
        let j = j.max(1);
        let fam = run(n, j, &cutoff);
        let measure = fam.measure().as_finite().expect("finite run").clone();
        let integral = integral_abs_over(&fprime, &fam, 1).value;
        let lower = integral
            .as_finite()
            .ok_or_else(|| WitnessError::Construction(format!("integral over A_{n}: {integral:?}")))?
            .lo()
            .clone();
        ledger.cutoffs.push(cutoff.clone());
        cutoff = fam.extent(1);
        ledger.runs.push((j * j, Rational::new(1, (n * n * j * j) as i64)));
        ledger.union_measure = &ledger.union_measure + &measure;
        ledger.budget_sum = &ledger.budget_sum + &Enclosure::exact(r(n));
        ledger.measures.push(measure);
        ledger.lower_bounds.push(lower);
        ledger.proof_bounds.push(epsilon * (int(1) - r(n)));
        ledger.deltas.push(r(n));
        ledger.m.push(r(n));
        ledger.families.push(fam);
    }
    ledger.certificate = certify(&ledger);
    Ok(ledger)
}

/// Comparison certificate from the actual bounds, else from `ε(1 − 1/n²)`, `n >= 2`.
fn certify(ledger: &AdversaryLedger) -> Option<DivergenceCertificate> {
    let actual: Vec<(u64, Rational)> = ledger
        .lower_bounds
        .iter()
        .enumerate()
        .map(|(i, b)| (i as u64 + 1, b.clone()))
        .collect();
    divergence_by_comparison(&actual).ok().or_else(|| {
        let shaped: Vec<(u64, Rational)> = ledger
            .proof_bounds
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, b)| (i as u64 + 1, b.clone()))
            .collect();
        divergence_by_comparison(&shaped).ok()
    })
}

pub fn verify_adversary(l: &AdversaryLedger) -> Verification {
    let mut bad = Vec::new();
    match derivative(&l.function) {
        Ok(d) if d.function == l.derivative => {}
        _ => bad.push("stored derivative does not match the function".into()),
    }
    let mut union = Enclosure::zero();
    let mut previous_extent = Rational::zero();
    for (i, fam) in l.families.iter().enumerate() {
        let n = i as u64 + 1;
        let m = fam.measure().as_finite().cloned().unwrap_or_else(|| {
            bad.push(format!("A_{n} has no finite measure"));
            Enclosure::zero()
        });
        if m.hi() > &r(n) || m != l.measures[i] {
            bad.push(format!("measure of A_{n} is {m}, budget 1/{}", n * n));
        }
        if l.cutoffs[i] < previous_extent {
            bad.push(format!("cutoff L_{} is inside an earlier family", n - 1));
        }
        if fam.head().iter().any(|iv| iv.left().unwrap() <= &l.cutoffs[i]) {
            bad.push(format!("A_{n} reaches back to L_{}", n - 1));
        }
        previous_extent = fam.extent(1);
        let got = integral_abs_over(&l.derivative, fam, 1).value;
        match got.as_finite() {
            Some(e) if e.lo() >= &l.lower_bounds[i] && e.lo() >= &l.proof_bounds[i] => {}
            _ => bad.push(format!("integral over A_{n} recomputes to {got:?}")),
        }
        if l.proof_bounds[i] != &l.epsilon * (int(1) - r(n)) {
            bad.push(format!("proof bound {n} is not eps(1 - 1/n^2)"));
        }
        if l.m[i] != l.deltas[i].clone().min(r(n)) {
            bad.push(format!("m_{n} is not min(delta_n, r_n)"));
        }
        union = &union + &m;
    }
    let budget: Rational = (1..=l.families.len() as u64).map(r).sum();
    if union != l.union_measure || union.hi() > &budget {
        bad.push(format!("union measure {union} exceeds budget {budget}"));
    }
    if let Some(series) = series_tail(&l.budget, 1).as_finite() {
        if union.hi() > series.hi() {
            bad.push("union measure exceeds the sum of all r_n".into());
        }
    }
    let total: Rational = l.lower_bounds.iter().sum();
    let n = l.families.len() as i64;
    if total < &l.epsilon * (int(n) - &budget) {
        bad.push("sum of lower bounds is below eps(N - sum 1/n^2)".into());
    }
    if let Some(c) = &l.certificate {
        let mut sum = Rational::zero();
        let partial: Vec<Rational> = l
            .lower_bounds
            .iter()
            .map(|b| {
                sum += b;
                sum.clone()
            })
            .collect();
        let start: Rational = l.lower_bounds[..c.from_index as usize - 1].iter().sum();
        let sound = c.checked_prefix.iter().all(|(i, s)| {
            let idx = *i as usize - 1;
            idx < partial.len() && &partial[idx] - &start >= *s
        });
        if !c.verify() || !sound {
            bad.push("divergence certificate does not check against the ledger".into());
        }
    } else if l.families.len() >= 2 {
        bad.push("missing divergence certificate".into());
    }
    finish(bad)
}
