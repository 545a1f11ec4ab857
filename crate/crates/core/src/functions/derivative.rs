use serde::Serialize;

use super::{FnError, FunctionSpec, Status};
use crate::numerics::{int, Rational};

/// An a.e. derivative. `reconstructs` is false when `f` is not AC_loc, in
/// which case `f(b) − f(a) = ∫_a^b f'` fails and the derivative is only
/// usable as an integrand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Derivative {
    pub function: FunctionSpec,
    pub reconstructs: bool,
}

fn zero() -> FunctionSpec {
    FunctionSpec::constant(Rational::zero())
}

/// `r·g` with constant folding.
pub(crate) fn scaled(r: Rational, g: FunctionSpec) -> FunctionSpec {
    use FunctionSpec::*;
    if r == int(1) {
        return g;
    }
    match g {
        Affine { slope, intercept } => FunctionSpec::affine(&r * slope, &r * intercept),
        Scale { factor, inner } => scaled(&r * factor, *inner),
        g => Scale {
            factor: r,
            inner: Box::new(g),
        },
    }
}

/// `|x|^e`, or the constant 1 when `e = 0`.
fn abs_power(e: Rational) -> FunctionSpec {
    if e.is_zero() {
        FunctionSpec::constant(int(1))
    } else {
        FunctionSpec::PowerAbs { exponent: e }
    }
}

fn raw(f: &FunctionSpec) -> Result<FunctionSpec, FnError> {
    use FunctionSpec::*;
    Ok(match f {
        Affine { slope, .. } => FunctionSpec::constant(slope.clone()),
        PowerAbs { exponent } => scaled(
            exponent.clone(),
            FunctionSpec::signed_pow(exponent - int(1)),
        ),
        SignedPower { exponent } if exponent.is_zero() => zero(),
        SignedPower { exponent } => scaled(exponent.clone(), abs_power(exponent - int(1))),
        Reciprocal => scaled(int(-1), abs_power(int(-2))),
        SqrtPeriodic => SqrtPeriodicDeriv,
        SqrtPeriodicDeriv => return Err(FnError::NoDerivativeInCatalog(f.to_string())),
        StepSeries { .. } => zero(),
        Scale { factor, inner } => scaled(factor.clone(), raw(inner)?),
        SumOf(l, r) => match (raw(l)?, raw(r)?) {
            (
                Affine {
                    slope: a,
                    intercept: b,
                },
                Affine {
                    slope: c,
                    intercept: d,
                },
            ) => FunctionSpec::affine(a + c, b + d),
            (l, r) => FunctionSpec::sum(l, r),
        },
    })
}

/// The a.e. derivative of `f` as a catalog member.
pub fn derivative(f: &FunctionSpec) -> Result<Derivative, FnError> {
    Ok(Derivative {
        function: raw(f)?,
        reconstructs: f.attributes().ac_loc == Status::In,
    })
}
