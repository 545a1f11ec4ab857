use serde::Serialize;

use super::{finish, Verification, WitnessError};
use crate::functions::{evaluate, FunctionSpec};
use crate::numerics::{int, rat, Enclosure, Rational};
use crate::sets::{Interval, IntervalFamily};

/// Pairs `x_i = 2i`, `y_i = 2i + δ/i²` on which `√|x − 2k|` moves by `√δ/i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ACFailureWitness {
    pub delta: Rational,
    pub pairs: Vec<(Rational, Rational)>,
    pub length_sum: Enclosure,
    pub variation_sum: Enclosure,
    pub epsilon_claim: Rational,
}

impl ACFailureWitness {
    pub fn family(&self) -> IntervalFamily {
        let head = self
            .pairs
            .iter()
            .map(|(x, y)| Interval::closed(x.clone(), y.clone()))
            .collect();
        IntervalFamily::finite(head).expect("pairs are disjoint")
    }
}

fn variation(pairs: &[(Rational, Rational)]) -> Enclosure {
    let f = FunctionSpec::SqrtPeriodic;
    pairs
        .iter()
        .map(|(x, y)| {
            let fx = evaluate(&f, x).expect("total");
            let fy = evaluate(&f, y).expect("total");
            (&fy - &fx).abs()
        })
        .sum()
}

pub fn ac_failure_intervals(delta: &Rational, count: u64) -> Result<ACFailureWitness, WitnessError> {
    if !delta.is_positive() || *delta >= rat(1, 2) {
        return Err(WitnessError::InvalidParameter(format!(
            "delta must lie in (0, 1/2), got {delta}"
        )));
    }
    if count == 0 {
        return Err(WitnessError::InvalidParameter("count must be >= 1".into()));
    }
    let pairs: Vec<(Rational, Rational)> = (1..=count as i64)
        .map(|i| {
            let x = int(2 * i);
            let y = &x + delta / int(i * i);
            (x, y)
        })
        .collect();
    let length_sum = Enclosure::exact(pairs.iter().map(|(x, y)| y - x).sum());
    let variation_sum = variation(&pairs);
    let epsilon_claim = Rational::from((variation_sum.lo() * int(1000)).floor()) / int(1000);
    Ok(ACFailureWitness {
        delta: delta.clone(),
        pairs,
        length_sum,
        variation_sum,
        epsilon_claim,
    })
}

pub fn verify_ac_failure(w: &ACFailureWitness) -> Verification {
    let mut bad = Vec::new();
    for (i, (x, y)) in w.pairs.iter().enumerate() {
        let i = i as i64 + 1;
        if *x != int(2 * i) || *y != &w.delta / int(i * i) + x {
            bad.push(format!("pair {i} is not (2i, 2i + delta/i^2)"));
        }
    }
    if w.pairs.windows(2).any(|p| p[0].1 >= p[1].0) {
        bad.push("pairs overlap".into());
    }
    let len: Rational = w.pairs.iter().map(|(x, y)| y - x).sum();
    if Enclosure::exact(len.clone()) != w.length_sum {
        bad.push(format!("length sum {} recomputes to {len}", w.length_sum));
    }
    if len >= &w.delta * int(2) {
        bad.push(format!("length sum {len} is not below 2 delta"));
    }
    let v = variation(&w.pairs);
    if !v.intersects(&w.variation_sum) {
        bad.push(format!("variation {} recomputes to {v}", w.variation_sum));
    }
    if v.lo() < &w.epsilon_claim {
        bad.push(format!("epsilon claim {} exceeds variation {v}", w.epsilon_claim));
    }
    finish(bad)
}
