use num_bigint::BigInt;

use super::{FnError, FunctionSpec, StepCoef};
use crate::numerics::{int, pow_enclosure, sqrt_enclosure, Enclosure, Rational, DEFAULT_ROOT_BITS};
use crate::sets::TailDescriptor;

/// Offset `t = x − 2k` of `x` from the even integer `2k` with `x ∈ [2k−1, 2k+1)`.
pub(crate) fn periodic_offset(x: &Rational) -> (BigInt, Rational) {
    let k = ((x + int(1)) / int(2)).floor();
    let t = x - Rational::from(&k * 2);
    (k, t)
}

/// Index of the step of `placement` containing `x`, if any.
pub(crate) fn step_index(placement: &TailDescriptor, x: &Rational) -> Option<u64> {
    let from = placement.from_index;
    if placement.left_fn.at(from) > *x {
        return None;
    }
    let n = placement.left_fn.first_index_above(x, from) - 1;
    placement.interval_at(n).contains_point(x).then_some(n)
}

fn undefined(f: &FunctionSpec, x: &Rational) -> FnError {
    FnError::UndefinedAtPoint {
        function: f.to_string(),
        x: x.to_string(),
    }
}

/// `|x|^α` for `x ≠ 0` (or `α > 0`).
pub(crate) fn abs_pow(x: &Rational, alpha: &Rational) -> Enclosure {
    if x.is_zero() {
        return Enclosure::zero();
    }
    if alpha.is_integer() {
        let p: i64 = alpha.numer().try_into().expect("exponent fits i64");
        return Enclosure::exact(x.abs().pow(p));
    }
    pow_enclosure(&x.abs(), alpha, DEFAULT_ROOT_BITS)
}

/// Certified value of `f(x)`.
pub fn evaluate(f: &FunctionSpec, x: &Rational) -> Result<Enclosure, FnError> {
    use FunctionSpec::*;
    Ok(match f {
        Affine { slope, intercept } => Enclosure::exact(slope * x + intercept),
        PowerAbs { exponent } => {
            if x.is_zero() && exponent.is_negative() {
                return Err(undefined(f, x));
            }
            abs_pow(x, exponent)
        }
        SignedPower { exponent } => {
            if x.is_zero() {
                if exponent.is_negative() {
                    return Err(undefined(f, x));
                }
                Enclosure::zero()
            } else {
                abs_pow(x, exponent).scale(&int(x.signum() as i64))
            }
        }
        Reciprocal => {
            if x.is_zero() {
                return Err(undefined(f, x));
            }
            Enclosure::exact(x.recip())
        }
        SqrtPeriodic => sqrt_enclosure(&periodic_offset(x).1.abs()),
        SqrtPeriodicDeriv => {
            let t = periodic_offset(x).1;
            if t.is_zero() {
                return Err(undefined(f, x));
            }
            let root = sqrt_enclosure(&t.abs()).scale(&int(2));
            root.recip()
                .expect("positive root")
                .scale(&int(t.signum() as i64))
        }
        StepSeries { coef, placement } => match step_index(placement, x) {
            Some(n) => Enclosure::exact(coef.at(n)),
            None => Enclosure::zero(),
        },
        Scale { factor, inner } => evaluate(inner, x)?.scale(factor),
        SumOf(l, r) => &evaluate(l, x)? + &evaluate(r, x)?,
    })
}

impl StepCoef {
    pub(crate) fn abs_at(&self, n: u64) -> Rational {
        self.at(n).abs()
    }
}
