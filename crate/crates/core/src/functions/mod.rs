//! The closed catalog of real functions: evaluation, a.e. derivatives,
//! monotone decomposition, total variation and certified `∫|f|`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::numerics::{int, Rational, SeqTerm};
use crate::sets::TailDescriptor;

mod derivative;
mod eval;
mod integral;
mod variation;

pub use derivative::{derivative, Derivative};
pub use eval::evaluate;
pub use integral::{
    contribution_envelope, integral_abs_interval, integral_abs_over, Envelope, IntegralLedgerEntry,
    IntegralReport,
};
pub use variation::{monotone_breakpoints, singular_points, total_variation, Partition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FnError {
    #[error("{function} is undefined at x = {x}")]
    UndefinedAtPoint { function: String, x: String },
    #[error("no a.e. derivative of {0} in the catalog")]
    NoDerivativeInCatalog(String),
    #[error("{0} is not piecewise monotone on the requested range")]
    NotPiecewiseMonotone(String),
    #[error("invalid range: need a < b, got [{0}, {1}]")]
    InvalidRange(String, String),
    #[error("invalid constructor: {0}")]
    InvalidConstructor(String),
}

/// Coefficient sequence of a step series.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum StepCoef {
    /// `n ↦ c·n`, `c ≠ 0`
    Linear(Rational),
    /// `n ↦ c/n^p` with integer `p`
    Decay(SeqTerm),
}

impl StepCoef {
    pub fn at(&self, n: u64) -> Rational {
        match self {
            StepCoef::Linear(c) => c * int(n as i64),
            StepCoef::Decay(t) => t.exact_at(n).expect("integer decay exponent"),
        }
    }
}

impl fmt::Debug for StepCoef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for StepCoef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepCoef::Linear(c) if *c == int(1) => write!(f, "n"),
            StepCoef::Linear(c) if c.is_integer() => write!(f, "{c}n"),
            StepCoef::Linear(c) => write!(f, "{c}*n"),
            StepCoef::Decay(t) => write!(f, "{t}"),
        }
    }
}

/// Closed catalog of functions on the real line.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FunctionSpec {
    /// `x ↦ slope·x + intercept`
    Affine { slope: Rational, intercept: Rational },
    /// `x ↦ |x|^α`, `α ≠ 0`; undefined at 0 when `α < 0`.
    PowerAbs { exponent: Rational },
    /// `x ↦ sign(x)·|x|^β`; arises as a derivative of `PowerAbs`.
    SignedPower { exponent: Rational },
    /// `x ↦ 1/x`, undefined at 0.
    Reciprocal,
    /// `√|x − 2k|` on `[2k−1, 2k+1)` for every integer `k`.
    SqrtPeriodic,
    /// `sign(x − 2k) / (2√|x − 2k|)` on `[2k−1, 2k+1)`, undefined at even integers.
    SqrtPeriodicDeriv,
    /// `Σ_n c(n)·χ_[a(n), a(n)+w(n))`.
    StepSeries {
        coef: StepCoef,
        placement: TailDescriptor,
    },
    /// `x ↦ factor·inner(x)`, `factor ≠ 0`.
    Scale {
        factor: Rational,
        inner: Box<FunctionSpec>,
    },
    SumOf(Box<FunctionSpec>, Box<FunctionSpec>),
}

impl FunctionSpec {
    pub fn affine(slope: Rational, intercept: Rational) -> Self {
        FunctionSpec::Affine { slope, intercept }
    }

    pub fn identity() -> Self {
        FunctionSpec::affine(int(1), int(0))
    }

    pub fn constant(c: Rational) -> Self {
        FunctionSpec::affine(int(0), c)
    }

    pub fn pow_abs(exponent: Rational) -> Result<Self, FnError> {
        if exponent.is_zero() {
            return Err(FnError::InvalidConstructor(
                "pow_abs exponent must be nonzero".into(),
            ));
        }
        Ok(FunctionSpec::PowerAbs { exponent })
    }

    pub fn signed_pow(exponent: Rational) -> Self {
        FunctionSpec::SignedPower { exponent }
    }

    pub fn step_series(coef: StepCoef, placement: TailDescriptor) -> Result<Self, FnError> {
        match &coef {
            StepCoef::Linear(c) if c.is_zero() => {
                return Err(FnError::InvalidConstructor(
                    "step coefficient must be nonzero".into(),
                ))
            }
            StepCoef::Decay(t) if !t.exponent.is_integer() => {
                return Err(FnError::InvalidConstructor(
                    "step coefficient exponent must be an integer".into(),
                ))
            }
            _ => {}
        }
        Ok(FunctionSpec::StepSeries { coef, placement })
    }

    pub fn scale(factor: Rational, inner: FunctionSpec) -> Result<Self, FnError> {
        if factor.is_zero() {
            return Err(FnError::InvalidConstructor(
                "scale factor must be nonzero".into(),
            ));
        }
        Ok(FunctionSpec::Scale {
            factor,
            inner: Box::new(inner),
        })
    }

    pub fn sum(left: FunctionSpec, right: FunctionSpec) -> Self {
        FunctionSpec::SumOf(Box::new(left), Box::new(right))
    }

    /// The identity `f₁(x) = x`.
    pub fn f1() -> Self {
        FunctionSpec::identity()
    }

    /// `f₂ = Σ_n n·χ_[n, n + 1/n²)`.
    pub fn f2() -> Self {
        let placement = TailDescriptor::new(
            1,
            crate::sets::LeftFn::linear(1, int(0)),
            SeqTerm::power(int(1), 2),
        )
        .expect("valid placement");
        FunctionSpec::step_series(StepCoef::Linear(int(1)), placement).expect("valid step series")
    }

    /// `f₃(x) = 1/x`.
    pub fn f3() -> Self {
        FunctionSpec::Reciprocal
    }

    pub fn attributes(&self) -> CatalogAttributes {
        attributes(self)
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Affine { slope, intercept } => write!(f, "affine({slope}, {intercept})"),
            FunctionSpec::PowerAbs { exponent } => write!(f, "pow_abs({exponent})"),
            FunctionSpec::SignedPower { exponent } => write!(f, "signed_pow({exponent})"),
            FunctionSpec::Reciprocal => write!(f, "reciprocal"),
            FunctionSpec::SqrtPeriodic => write!(f, "sqrt_periodic"),
            FunctionSpec::SqrtPeriodicDeriv => write!(f, "deriv(sqrt_periodic)"),
            FunctionSpec::StepSeries { coef, placement } => write!(
                f,
                "step_series(coef={coef}, left={}, width={}, from={})",
                placement.left_fn, placement.width, placement.from_index
            ),
            FunctionSpec::Scale { factor, inner } => write!(f, "scale({factor}, {inner})"),
            FunctionSpec::SumOf(l, r) => write!(f, "sum({l}, {r})"),
        }
    }
}

impl fmt::Debug for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FunctionSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Three-valued membership status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    In,
    Out,
    Unknown,
}

/// Per-constructor analytic facts, composed through `Scale` and `SumOf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogAttributes {
    pub ac_loc: Status,
    pub ac_loc_justification: String,
    pub continuous: bool,
    pub derivative_known: bool,
}

fn attributes(f: &FunctionSpec) -> CatalogAttributes {
    use FunctionSpec::*;
    let leaf = |ac: bool, why: &str, continuous: bool| CatalogAttributes {
        ac_loc: if ac { Status::In } else { Status::Out },
        ac_loc_justification: why.to_string(),
        continuous,
        derivative_known: true,
    };
    match f {
        Affine { .. } => leaf(true, "affine maps are Lipschitz", true),
        PowerAbs { exponent } if exponent.is_positive() => leaf(
            true,
            "|x|^a with a > 0 is continuous and monotone on each side of 0 with integrable derivative",
            true,
        ),
        PowerAbs { .. } => leaf(false, "|x|^a with a < 0 is unbounded near 0", false),
        SignedPower { exponent } if exponent.is_positive() => leaf(
            true,
            "sign(x)|x|^b with b > 0 is continuous and increasing with integrable derivative",
            true,
        ),
        SignedPower { exponent } if exponent.is_zero() => {
            leaf(false, "sign(x) jumps at 0", false)
        }
        SignedPower { .. } => leaf(false, "sign(x)|x|^b with b < 0 is unbounded near 0", false),
        Reciprocal => leaf(false, "1/x is unbounded near 0", false),
        SqrtPeriodic => leaf(
            true,
            "sqrt|x - 2k| is AC on every compact: monotone pieces with integrable derivative 1/(2 sqrt t)",
            true,
        ),
        SqrtPeriodicDeriv => CatalogAttributes {
            derivative_known: false,
            ..leaf(false, "unbounded near every even integer", false)
        },
        StepSeries { .. } => leaf(false, "step functions jump at every step endpoint", false),
        Scale { inner, .. } => {
            let a = attributes(inner);
            CatalogAttributes {
                ac_loc_justification: format!("nonzero multiple: {}", a.ac_loc_justification),
                ..a
            }
        }
        SumOf(l, r) => {
            let (a, b) = (attributes(l), attributes(r));
            let (ac_loc, why) = match (a.ac_loc, b.ac_loc) {
                (Status::In, Status::In) => (Status::In, "sum of two AC_loc functions".to_string()),
                (Status::In, Status::Out) | (Status::Out, Status::In) => (
                    Status::Out,
                    "AC_loc summand plus non-AC_loc summand is not AC_loc".to_string(),
                ),
                _ => (
                    Status::Unknown,
                    "both summands fail AC_loc; the sum may or may not".to_string(),
                ),
            };
            CatalogAttributes {
                ac_loc,
                ac_loc_justification: why,
                continuous: a.continuous && b.continuous,
                derivative_known: a.derivative_known && b.derivative_known,
            }
        }
    }
}

#[cfg(test)]
mod tests;
