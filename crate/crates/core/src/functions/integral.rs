use serde::Serialize;

use super::eval::{abs_pow, evaluate};
use super::{FunctionSpec, StepCoef};
use crate::numerics::{
    divergence_by_comparison, int, ln_enclosure, pow_enclosure, series_tail, sqrt_enclosure,
    Enclosure, ExtendedValue, Rational, SeqTerm, DEFAULT_ROOT_BITS,
};
use crate::sets::{Interval, IntervalFamily, TailDescriptor};

/// Dyadic shells probed when certifying a non-integrable singularity.
const SHELLS: u64 = 24;
/// Unit pieces probed along a ray.
const RAY_PIECES: u64 = 24;
const LN_BITS: u32 = 60;
/// Explicit terms allowed before a tail envelope becomes valid.
const MAX_WARMUP: u64 = 10_000;

/// One tail interval of a family and the certified `∫|f|` over it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralLedgerEntry {
    pub index: u64,
    pub interval: Interval,
    pub contribution: Enclosure,
    pub partial_sum: Enclosure,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralReport {
    pub value: ExtendedValue,
    pub head: ExtendedValue,
    /// Per-index contributions of the tail, with running sums over the tail only.
    pub ledger: Vec<IntegralLedgerEntry>,
}

/// `contribution(n) <= coefficient / n^exponent` for all `n >= valid_from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Envelope {
    pub coefficient: Rational,
    pub exponent: Rational,
    pub valid_from: u64,
}

fn exact(r: Rational) -> ExtendedValue {
    ExtendedValue::finite(Enclosure::exact(r))
}

/// `∫_u^v t^α dt` for `0 <= u < v`; `None` when it diverges at `u = 0`.
fn power_piece(alpha: &Rational, u: &Rational, v: &Rational) -> Option<Enclosure> {
    let e = alpha + int(1);
    if e.is_positive() {
        let diff = &abs_pow(v, &e) - &abs_pow(u, &e);
        return Some(diff.scale(&e.recip()).clamp_nonneg());
    }
    if u.is_zero() {
        return None;
    }
    if e.is_zero() {
        return Some(ln_enclosure(&(v / u), LN_BITS).clamp_nonneg());
    }
    let diff = &abs_pow(u, &e) - &abs_pow(v, &e);
    Some(diff.scale(&(-e).recip()).clamp_nonneg())
}

/// Divergence of `∫_0^v t^α` from shells `[v/2^(k+1), v/2^k]`.
fn singular_shells(alpha: &Rational, v: &Rational) -> ExtendedValue {
    let bounds: Vec<(u64, Rational)> = (0..SHELLS)
        .map(|k| {
            let hi = v / int(2).pow(k as i64);
            let lo = &hi / int(2);
            let c = power_piece(alpha, &lo, &hi).expect("shell away from 0");
            (k + 1, c.lo().clone())
        })
        .collect();
    match divergence_by_comparison(&bounds) {
        Ok(cert) => ExtendedValue::infinite(cert),
        Err(e) => ExtendedValue::unknown(e.to_string()),
    }
}

/// `∫_l^r |x|^α dx`.
fn abs_power_integral(alpha: &Rational, l: &Rational, r: &Rational) -> ExtendedValue {
    let zero = Rational::zero();
    let mut pieces = Vec::new();
    if l < &zero {
        pieces.push((-(r.clone().min(zero.clone())), -l.clone()));
    }
    if r > &zero {
        pieces.push((l.clone().max(zero.clone()), r.clone()));
    }
    let mut total = ExtendedValue::finite(Enclosure::zero());
    for (u, v) in pieces {
        if u == v {
            continue;
        }
        let part = match power_piece(alpha, &u, &v) {
            Some(e) => ExtendedValue::finite(e),
            None => singular_shells(alpha, &v),
        };
        total = total.add_nonneg(part);
    }
    total
}

/// `∫ g(t) dt` over `t ∈ [t1, t2] ⊂ [0, 1]` for the periodic profiles.
fn profile_piece(deriv: bool, t1: &Rational, t2: &Rational) -> Enclosure {
    let anti = |t: &Rational| {
        if deriv {
            sqrt_enclosure(t)
        } else {
            pow_enclosure(t, &Rational::new(3, 2), DEFAULT_ROOT_BITS).scale(&Rational::new(2, 3))
        }
    };
    (&anti(t2) - &anti(t1)).clamp_nonneg()
}

/// `∫_l^r` of `√|t|` (or `1/(2√|t|)` when `deriv`) with `t` the offset to the
/// nearest even integer; whole unit cells contribute `2/3` (or `1`).
fn periodic_integral(deriv: bool, l: &Rational, r: &Rational) -> Enclosure {
    let cell = |m: &Rational, u: &Rational, v: &Rational| {
        if (m / int(2)).is_integer() {
            profile_piece(deriv, &(u - m), &(v - m))
        } else {
            let top = m + int(1);
            profile_piece(deriv, &(&top - v), &(&top - u))
        }
    };
    let m0 = Rational::from(l.floor());
    let m1 = Rational::from(r.ceil()) - int(1);
    if m0 >= m1 {
        return cell(&m0, l, r);
    }
    let first = cell(&m0, l, &(&m0 + int(1)));
    let last = cell(&m1, &m1, r);
    let full = &m1 - &m0 - int(1);
    let per_cell = if deriv { int(1) } else { Rational::new(2, 3) };
    &(&first + &last) + &Enclosure::exact(full * per_cell)
}

fn step_integral(coef: &StepCoef, p: &TailDescriptor, l: &Rational, r: &Rational) -> Rational {
    let mut n = p
        .left_fn
        .first_index_above(l, p.from_index)
        .saturating_sub(1)
        .max(p.from_index);
    let mut total = Rational::zero();
    while p.left_fn.at(n) < *r {
        total += coef.abs_at(n) * p.interval_at(n).overlap_length(l, r);
        n += 1;
    }
    total
}

/// Certified sign of `f` on `[l, r]`: `1` if `f >= 0`, `-1` if `f <= 0`.
fn sign_on(f: &FunctionSpec, l: &Rational, r: &Rational) -> Option<i32> {
    use FunctionSpec::*;
    let by_side = || {
        if !l.is_negative() {
            Some(1)
        } else if !r.is_positive() {
            Some(-1)
        } else {
            None
        }
    };
    match f {
        Affine { .. } => {
            let (u, v) = (evaluate(f, l).ok()?, evaluate(f, r).ok()?);
            let (u, v) = (u.lo().clone(), v.lo().clone());
            if !u.is_negative() && !v.is_negative() {
                Some(1)
            } else if !u.is_positive() && !v.is_positive() {
                Some(-1)
            } else {
                None
            }
        }
        PowerAbs { .. } | SqrtPeriodic => Some(1),
        SignedPower { .. } | Reciprocal => by_side(),
        SqrtPeriodicDeriv => {
            let m = Rational::from(l.floor());
            if *r > &m + int(1) {
                return None;
            }
            Some(if (&m / int(2)).is_integer() { 1 } else { -1 })
        }
        StepSeries { coef, .. } => match coef {
            StepCoef::Linear(c) => Some(c.signum()),
            StepCoef::Decay(_) => Some(1),
        },
        Scale { factor, inner } => sign_on(inner, l, r).map(|s| s * factor.signum()),
        SumOf(a, b) => match (sign_on(a, l, r)?, sign_on(b, l, r)?) {
            (x, y) if x == y => Some(x),
            _ => None,
        },
    }
}

/// Certified `∫_l^r |f|` for `l <= r`.
pub fn integral_abs_interval(f: &FunctionSpec, l: &Rational, r: &Rational) -> ExtendedValue {
    use FunctionSpec::*;
    assert!(l <= r, "integration bounds out of order");
    if l == r {
        return exact(Rational::zero());
    }
    match f {
        Affine { slope, intercept } => {
            let signed = |u: &Rational, v: &Rational| {
                (slope * (v * v - u * u) / int(2) + intercept * (v - u)).abs()
            };
            if slope.is_zero() {
                return exact(signed(l, r));
            }
            let z = -(intercept / slope);
            if l < &z && &z < r {
                exact(signed(l, &z) + signed(&z, r))
            } else {
                exact(signed(l, r))
            }
        }
        PowerAbs { exponent } => abs_power_integral(exponent, l, r),
        SignedPower { exponent } if exponent.is_zero() => exact(r - l),
        SignedPower { exponent } => abs_power_integral(exponent, l, r),
        Reciprocal => abs_power_integral(&int(-1), l, r),
        SqrtPeriodic => ExtendedValue::finite(periodic_integral(false, l, r)),
        SqrtPeriodicDeriv => ExtendedValue::finite(periodic_integral(true, l, r)),
        StepSeries { coef, placement } => exact(step_integral(coef, placement, l, r)),
        Scale { factor, inner } => integral_abs_interval(inner, l, r).scale_nonneg(&factor.abs()),
        SumOf(a, b) => {
            let (ia, ib) = (integral_abs_interval(a, l, r), integral_abs_interval(b, l, r));
            if sign_on(a, l, r).is_some() && sign_on(a, l, r) == sign_on(b, l, r) {
                return ia.add_nonneg(ib);
            }
            match (ia.as_finite(), ib.as_finite()) {
                (Some(x), Some(y)) => {
                    let lower = (x.lo() - y.hi())
                        .max(y.lo() - x.hi())
                        .max(Rational::zero());
                    ExtendedValue::finite(Enclosure::new(lower, x.hi() + y.hi()))
                }
                _ => ExtendedValue::unknown(format!(
                    "a summand of {f} is not integrable on [{l}, {r}]; cancellation not analysed"
                )),
            }
        }
    }
}

/// `∫|f|` over an unbounded interval: unit pieces along the ray feed the
/// comparison test.
fn ray_integral(f: &FunctionSpec, iv: &Interval) -> ExtendedValue {
    if *f == FunctionSpec::constant(Rational::zero()) {
        return exact(Rational::zero());
    }
    let (start, dir) = match (iv.left(), iv.right()) {
        (Some(a), None) => (a.clone(), int(1)),
        (None, Some(b)) => (b.clone(), int(-1)),
        _ => (Rational::zero(), int(1)),
    };
    let mut bounds = Vec::new();
    for k in 1..=RAY_PIECES {
        let u = &start + &dir * int(k as i64 - 1);
        let v = &start + &dir * int(k as i64);
        let (u, v) = if u <= v { (u, v) } else { (v, u) };
        match integral_abs_interval(f, &u, &v) {
            ExtendedValue::Finite { enclosure } => bounds.push((k, enclosure.lo().clone())),
            other => return other,
        }
    }
    match divergence_by_comparison(&bounds) {
        Ok(cert) => ExtendedValue::infinite(cert),
        Err(e) => ExtendedValue::unknown(format!("integral of {f} over {iv}: {e}")),
    }
}

fn interval_integral(f: &FunctionSpec, iv: &Interval) -> ExtendedValue {
    match (iv.left(), iv.right()) {
        (Some(a), Some(b)) => integral_abs_interval(f, a, b),
        _ => ray_integral(f, iv),
    }
}

/// `(L, d)` with `|x| <= L n^d` on the `n`-th step.
fn reach(tail: &TailDescriptor) -> (Rational, i64) {
    let lf = &tail.left_fn;
    (
        int(lf.alpha) + lf.beta.abs() + tail.width.coefficient.clone(),
        lf.degree(),
    )
}

/// `sup |f|` over the `n`-th step is at most `K n^e` for `n >= valid_from`.
fn sup_bound(f: &FunctionSpec, tail: &TailDescriptor) -> Option<(Rational, Rational, u64)> {
    use FunctionSpec::*;
    let (reach_c, d) = reach(tail);
    let from = tail.from_index;
    let upper_pow = |x: &Rational, e: &Rational| abs_pow(x, e).hi().clone();
    let decaying = |alpha: &Rational| {
        // a(n) >= m n^d > 0 for n >= n1.
        let lf = &tail.left_fn;
        let n1 = lf.first_index_above(&Rational::zero(), from);
        let m = int(lf.alpha).min(lf.at(n1) / int(n1 as i64).pow(d));
        Some((upper_pow(&m, alpha), alpha * int(d), n1))
    };
    match f {
        Affine { slope, intercept } if slope.is_zero() => Some((intercept.abs(), int(0), from)),
        Affine { slope, intercept } => {
            Some((slope.abs() * &reach_c + intercept.abs(), int(d), from))
        }
        PowerAbs { exponent } | SignedPower { exponent } if exponent.is_positive() => {
            Some((upper_pow(&reach_c, exponent), exponent * int(d), from))
        }
        SignedPower { exponent } if exponent.is_zero() => Some((int(1), int(0), from)),
        PowerAbs { exponent } | SignedPower { exponent } => decaying(exponent),
        Reciprocal => decaying(&int(-1)),
        SqrtPeriodic => Some((int(1), int(0), from)),
        SqrtPeriodicDeriv => None,
        StepSeries { coef, placement } => match coef {
            StepCoef::Decay(t) => Some((t.coefficient.clone(), int(0), from)),
            StepCoef::Linear(c) => Some((
                c.abs() * (&reach_c + placement.left_fn.beta.abs()),
                int(d),
                from,
            )),
        },
        Scale { factor, inner } => {
            sup_bound(inner, tail).map(|(k, e, v)| (k * factor.abs(), e, v))
        }
        SumOf(a, b) => {
            let (ka, ea, va) = sup_bound(a, tail)?;
            let (kb, eb, vb) = sup_bound(b, tail)?;
            Some((ka + kb, ea.max(eb), va.max(vb)))
        }
    }
}

/// Bound `∫_{step n} |f| <= K / n^q` for the steps of `tail`.
pub fn contribution_envelope(f: &FunctionSpec, tail: &TailDescriptor) -> Option<Envelope> {
    use FunctionSpec::*;
    let w = &tail.width;
    match f {
        SqrtPeriodicDeriv => {
            // An interval of length w <= 1 collects at most √(2w).
            let mut n = tail.from_index;
            while tail.width_at(n) > int(1) {
                if n - tail.from_index > MAX_WARMUP || w.exponent.is_zero() {
                    return None;
                }
                n += 1;
            }
            Some(Envelope {
                coefficient: sqrt_enclosure(&(&w.coefficient * int(2))).hi().clone(),
                exponent: &w.exponent / int(2),
                valid_from: n,
            })
        }
        Scale { factor, inner } => contribution_envelope(inner, tail).map(|e| Envelope {
            coefficient: e.coefficient * factor.abs(),
            ..e
        }),
        SumOf(a, b) => {
            let (x, y) = (contribution_envelope(a, tail)?, contribution_envelope(b, tail)?);
            Some(Envelope {
                coefficient: x.coefficient + y.coefficient,
                exponent: x.exponent.min(y.exponent),
                valid_from: x.valid_from.max(y.valid_from),
            })
        }
        _ => {
            let (k, e, valid_from) = sup_bound(f, tail)?;
            Some(Envelope {
                coefficient: k * &w.coefficient,
                exponent: &w.exponent - e,
                valid_from,
            })
        }
    }
}

fn tail_contribution(f: &FunctionSpec, tail: &TailDescriptor, n: u64) -> (Interval, ExtendedValue) {
    let iv = tail.interval_at(n);
    let v = integral_abs_interval(f, iv.left().unwrap(), iv.right().unwrap());
    (iv, v)
}

/// Certified `∫_fam |f|`, materializing `depth` tail intervals into a ledger.
pub fn integral_abs_over(f: &FunctionSpec, fam: &IntervalFamily, depth: u64) -> IntegralReport {
    assert!(depth >= 1);
    let head = fam
        .head()
        .iter()
        .fold(exact(Rational::zero()), |acc, iv| acc.add_nonneg(interval_integral(f, iv)));
    let Some(tail) = fam.tail() else {
        return IntegralReport {
            value: head.clone(),
            head,
            ledger: Vec::new(),
        };
    };
    let mut ledger = Vec::with_capacity(depth as usize);
    let mut partial = Enclosure::zero();
    let last = tail.from_index + depth - 1;
    for n in tail.from_index..=last {
        let (interval, v) = tail_contribution(f, tail, n);
        let contribution = match v {
            ExtendedValue::Finite { enclosure } => enclosure,
            other => {
                return IntegralReport {
                    value: head.clone().add_nonneg(other),
                    head,
                    ledger,
                }
            }
        };
        partial = &partial + &contribution;
        ledger.push(IntegralLedgerEntry {
            index: n,
            interval,
            contribution,
            partial_sum: partial.clone(),
        });
    }
    let tail_value = converge_tail(f, tail, last, &partial).unwrap_or_else(|| {
        let bounds: Vec<(u64, Rational)> = ledger
            .iter()
            .map(|e| (e.index, e.contribution.lo().clone()))
            .collect();
        match divergence_by_comparison(&bounds) {
            Ok(cert) => ExtendedValue::infinite(cert),
            Err(e) => ExtendedValue::unknown(format!(
                "depth {depth} exhausted without a convergence or divergence certificate ({})",
                e.reason
            )),
        }
    });
    IntegralReport {
        value: head.clone().add_nonneg(tail_value),
        head,
        ledger,
    }
}

/// Finite enclosure of the tail sum when a summable envelope exists.
fn converge_tail(
    f: &FunctionSpec,
    tail: &TailDescriptor,
    last: u64,
    partial: &Enclosure,
) -> Option<ExtendedValue> {
    let env = contribution_envelope(f, tail)?;
    if env.exponent <= int(1) || env.valid_from > last + 1 + MAX_WARMUP {
        return None;
    }
    let mut sum = partial.clone();
    let mut n = last + 1;
    while n < env.valid_from {
        sum = &sum + tail_contribution(f, tail, n).1.as_finite()?;
        n += 1;
    }
    let rest = series_tail(&SeqTerm::new(env.coefficient, env.exponent), n);
    let rest = rest.as_finite()?;
    Some(ExtendedValue::finite(Enclosure::new(
        sum.lo().clone(),
        sum.hi() + rest.hi(),
    )))
}
