use std::collections::BTreeSet;

use serde::Serialize;

use super::eval::evaluate;
use super::{FnError, FunctionSpec};
use crate::numerics::{
    divergence_by_comparison, int, rat, Enclosure, ExtendedValue, Rational,
};
use crate::sets::TailDescriptor;

/// Number of dyadic shells probed when certifying unbounded variation.
const SHELLS: u32 = 30;

/// Ordered breakpoints `a = p₀ < p₁ < … < p_m = b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    points: Vec<Rational>,
}

impl Partition {
    fn from_set(a: &Rational, b: &Rational, interior: BTreeSet<Rational>) -> Self {
        let mut points = vec![a.clone()];
        points.extend(interior.into_iter().filter(|p| p > a && p < b));
        points.push(b.clone());
        Partition { points }
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }
}

fn check_range(a: &Rational, b: &Rational) -> Result<(), FnError> {
    if a >= b {
        return Err(FnError::InvalidRange(a.to_string(), b.to_string()));
    }
    Ok(())
}

fn integers_in(a: &Rational, b: &Rational) -> impl Iterator<Item = Rational> {
    let lo: i64 = a.ceil().try_into().expect("range fits i64");
    let hi: i64 = b.floor().try_into().expect("range fits i64");
    (lo..=hi).map(int)
}

/// Points of `[a, b]` near which `|f|` is unbounded.
pub fn singular_points(f: &FunctionSpec, a: &Rational, b: &Rational) -> Vec<Rational> {
    use FunctionSpec::*;
    let zero_if_inside = || {
        let z = Rational::zero();
        if a <= &z && &z <= b {
            vec![z]
        } else {
            vec![]
        }
    };
    match f {
        PowerAbs { exponent } | SignedPower { exponent } if exponent.is_negative() => {
            zero_if_inside()
        }
        Reciprocal => zero_if_inside(),
        SqrtPeriodicDeriv => integers_in(a, b)
            .filter(|k| (k / int(2)).is_integer())
            .collect(),
        Scale { inner, .. } => singular_points(inner, a, b),
        SumOf(l, r) => {
            let mut s: BTreeSet<Rational> = singular_points(l, a, b).into_iter().collect();
            s.extend(singular_points(r, a, b));
            s.into_iter().collect()
        }
        _ => vec![],
    }
}

/// Left endpoints and right ends of the steps meeting `[a, b]`.
pub(crate) fn step_endpoints(p: &TailDescriptor, a: &Rational, b: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    let start = p
        .left_fn
        .first_index_above(a, p.from_index)
        .saturating_sub(1)
        .max(p.from_index);
    let mut n = start;
    while p.left_fn.at(n) <= *b {
        let iv = p.interval_at(n);
        out.push(iv.left().unwrap().clone());
        out.push(iv.right().unwrap().clone());
        n += 1;
    }
    out
}

/// Interior breakpoints on which `f` is monotone piecewise.
fn breaks(f: &FunctionSpec, a: &Rational, b: &Rational) -> Result<BTreeSet<Rational>, FnError> {
    use FunctionSpec::*;
    if let Some(s) = singular_points(f, a, b).first() {
        return Err(FnError::NotPiecewiseMonotone(format!(
            "{f} is unbounded near {s}"
        )));
    }
    Ok(match f {
        Affine { .. } | SignedPower { .. } | Reciprocal | SqrtPeriodicDeriv => BTreeSet::new(),
        PowerAbs { .. } => [Rational::zero()].into_iter().collect(),
        SqrtPeriodic => integers_in(a, b).collect(),
        StepSeries { .. } => {
            return Err(FnError::NotPiecewiseMonotone(format!(
                "{f} jumps at every step endpoint"
            )))
        }
        Scale { inner, .. } => breaks(inner, a, b)?,
        SumOf(l, r) => {
            let mut merged = breaks(l, a, b)?;
            merged.extend(breaks(r, a, b)?);
            let part = Partition::from_set(a, b, merged.clone());
            for (p, q) in part.pieces() {
                let dl = direction(l, p, q)?;
                let dr = direction(r, p, q)?;
                if dl * dr < 0 {
                    return Err(FnError::NotPiecewiseMonotone(format!(
                        "summands of {f} move in opposite directions on [{p}, {q}]"
                    )));
                }
            }
            merged
        }
    })
}

/// Certified sign of `g(q) − g(p)` for `g` monotone on `[p, q]`.
fn direction(g: &FunctionSpec, p: &Rational, q: &Rational) -> Result<i32, FnError> {
    let d = &evaluate(g, q)? - &evaluate(g, p)?;
    if d.lo().is_positive() {
        Ok(1)
    } else if d.hi().is_negative() {
        Ok(-1)
    } else if d.is_exact() {
        Ok(0)
    } else {
        Err(FnError::NotPiecewiseMonotone(format!(
            "direction of {g} on [{p}, {q}] is not resolved"
        )))
    }
}

/// Partition of `[a, b]` into pieces on which `f` is monotone.
pub fn monotone_breakpoints(
    f: &FunctionSpec,
    a: &Rational,
    b: &Rational,
) -> Result<Partition, FnError> {
    check_range(a, b)?;
    Ok(Partition::from_set(a, b, breaks(f, a, b)?))
}

/// `Σ |f(p_{i+1}) − f(p_i)|` over defined points; a lower bound for the variation.
fn increments(f: &FunctionSpec, points: &[Rational]) -> Enclosure {
    let values: Vec<Enclosure> = points.iter().filter_map(|x| evaluate(f, x).ok()).collect();
    values.windows(2).map(|w| (&w[1] - &w[0]).abs()).sum()
}

/// Points worth probing for a lower bound on the variation of `f`.
fn probe_points(f: &FunctionSpec, a: &Rational, b: &Rational) -> Vec<Rational> {
    fn collect(f: &FunctionSpec, a: &Rational, b: &Rational, out: &mut BTreeSet<Rational>) {
        use FunctionSpec::*;
        match f {
            StepSeries { placement, .. } => out.extend(step_endpoints(placement, a, b)),
            SqrtPeriodic | SqrtPeriodicDeriv => out.extend(integers_in(a, b)),
            PowerAbs { .. } | SignedPower { .. } => {
                out.insert(Rational::zero());
            }
            Scale { inner, .. } => collect(inner, a, b, out),
            SumOf(l, r) => {
                collect(l, a, b, out);
                collect(r, a, b, out);
            }
            Affine { .. } | Reciprocal => {}
        }
    }
    let mut set = BTreeSet::new();
    collect(f, a, b, &mut set);
    let part = Partition::from_set(a, b, set);
    let mut points = Vec::with_capacity(2 * part.points.len());
    for (p, q) in part.pieces() {
        points.push(p.clone());
        points.push((p + q) / int(2));
    }
    points.push(b.clone());
    points
}

/// Lower bounds of `|Δf|` along points marching into the singular point `s`.
fn unbounded_variation(f: &FunctionSpec, a: &Rational, b: &Rational, s: &Rational) -> ExtendedValue {
    let (anchor, toward_left) = if s > a {
        (a.clone().max(s - rat(1, 2)), true)
    } else {
        (b.clone().min(s + rat(1, 2)), false)
    };
    let h = (s - &anchor).abs();
    let points: Vec<Rational> = (0..=SHELLS)
        .map(|k| {
            let off = &h / int(2).pow(k as i64);
            if toward_left {
                s - off
            } else {
                s + off
            }
        })
        .collect();
    let mut bounds = Vec::new();
    for (k, w) in points.windows(2).enumerate() {
        match (evaluate(f, &w[0]), evaluate(f, &w[1])) {
            (Ok(u), Ok(v)) => bounds.push((k as u64 + 1, (&v - &u).abs().lo().clone())),
            _ => return ExtendedValue::unknown(format!("{f} undefined near {s}")),
        }
    }
    match divergence_by_comparison(&bounds) {
        Ok(cert) => ExtendedValue::infinite(cert),
        Err(e) => ExtendedValue::unknown(format!("variation of {f} near {s}: {e}")),
    }
}

/// Total variation of `f` over `[a, b]`.
pub fn total_variation(
    f: &FunctionSpec,
    a: &Rational,
    b: &Rational,
) -> Result<ExtendedValue, FnError> {
    use FunctionSpec::*;
    check_range(a, b)?;
    if let Some(s) = singular_points(f, a, b).first() {
        if let SumOf(l, r) = f {
            if !singular_points(l, a, b).is_empty() && !singular_points(r, a, b).is_empty() {
                return Ok(ExtendedValue::unknown(format!(
                    "both summands of {f} are unbounded near {s}; they may cancel"
                )));
            }
        }
        return Ok(unbounded_variation(f, a, b, s));
    }
    Ok(match f {
        Scale { factor, inner } => total_variation(inner, a, b)?.scale_nonneg(&factor.abs()),
        StepSeries { .. } => ExtendedValue::finite(increments(f, &probe_points(f, a, b))),
        _ => match monotone_breakpoints(f, a, b) {
            Ok(part) => ExtendedValue::finite(increments(f, part.points())),
            Err(FnError::NotPiecewiseMonotone(_)) => {
                let SumOf(l, r) = f else {
                    unreachable!("only sums fail to decompose here")
                };
                let lower = increments(f, &probe_points(f, a, b));
                match total_variation(l, a, b)?.add_nonneg(total_variation(r, a, b)?) {
                    ExtendedValue::Finite { enclosure } => ExtendedValue::finite(Enclosure::new(
                        lower.lo().clone(),
                        enclosure.hi().clone().max(lower.lo().clone()),
                    )),
                    _ => ExtendedValue::unknown(format!(
                        "variation of a summand of {f} is not finite"
                    )),
                }
            }
            Err(e) => return Err(e),
        },
    })
}
