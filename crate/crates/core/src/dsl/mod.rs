//! Text syntax for catalog functions and interval families.
//!
//! ```text
//! expr     := name | name "(" args ")"
//! args     := arg ("," arg)*
//! arg      := key "=" value | value
//! value    := rational | seqterm | expr
//! seqterm  := rational "/n^" integer | "n"
//! set      := "{" interval* "}" ["++" "tail" "(" ... ")"]
//! interval := ("[" | "(") rational "," rational (")" | "]")
//! ```

use std::fmt;

use serde::Serialize;

use crate::functions::{derivative, FnError, FunctionSpec, StepCoef};
use crate::numerics::Rational;
use crate::sets::{IntervalFamily, TailDescriptor};

mod lexer;
mod parser;

use parser::Parser;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub line: usize,
    /// 1-based; one past the last character at end of input.
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.message {
            Some(m) => write!(f, "{m} at {}", self.found),
            None => write!(f, "expected {}, found {}", self.expected.join(" or "), self.found),
        }
    }
}

impl std::error::Error for ParseError {}

/// Syntax tree of a function expression; one node per constructor.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    Affine { slope: Rational, intercept: Rational },
    PowAbs(Rational),
    SignedPow(Rational),
    Reciprocal,
    SqrtPeriodic,
    /// `f1`, `f2` or `f3`.
    Preset(String),
    Deriv(Box<Ast>),
    StepSeries {
        coef: StepCoef,
        placement: TailDescriptor,
    },
    Scale(Rational, Box<Ast>),
    Sum(Box<Ast>, Box<Ast>),
}

impl Ast {
    pub fn lower(&self) -> Result<FunctionSpec, FnError> {
        Ok(match self {
            Ast::Affine { slope, intercept } => FunctionSpec::affine(slope.clone(), intercept.clone()),
            Ast::PowAbs(p) => FunctionSpec::pow_abs(p.clone())?,
            Ast::SignedPow(p) => FunctionSpec::signed_pow(p.clone()),
            Ast::Reciprocal => FunctionSpec::Reciprocal,
            Ast::SqrtPeriodic => FunctionSpec::SqrtPeriodic,
            Ast::Preset(name) => match name.as_str() {
                "f1" => FunctionSpec::f1(),
                "f2" => FunctionSpec::f2(),
                "f3" => FunctionSpec::f3(),
                _ => return Err(FnError::InvalidConstructor(format!("unknown preset {name}"))),
            },
            Ast::Deriv(inner) => derivative(&inner.lower()?)?.function,
            Ast::StepSeries { coef, placement } => {
                FunctionSpec::step_series(coef.clone(), placement.clone())?
            }
            Ast::Scale(r, inner) => FunctionSpec::scale(r.clone(), inner.lower()?)?,
            Ast::Sum(l, r) => FunctionSpec::sum(l.lower()?, r.lower()?),
        })
    }
}

impl From<&FunctionSpec> for Ast {
    fn from(f: &FunctionSpec) -> Self {
        match f {
            FunctionSpec::Affine { slope, intercept } => Ast::Affine {
                slope: slope.clone(),
                intercept: intercept.clone(),
            },
            FunctionSpec::PowerAbs { exponent } => Ast::PowAbs(exponent.clone()),
            FunctionSpec::SignedPower { exponent } => Ast::SignedPow(exponent.clone()),
            FunctionSpec::Reciprocal => Ast::Reciprocal,
            FunctionSpec::SqrtPeriodic => Ast::SqrtPeriodic,
            FunctionSpec::SqrtPeriodicDeriv => Ast::Deriv(Box::new(Ast::SqrtPeriodic)),
            FunctionSpec::StepSeries { coef, placement } => Ast::StepSeries {
                coef: coef.clone(),
                placement: placement.clone(),
            },
            FunctionSpec::Scale { factor, inner } => {
                Ast::Scale(factor.clone(), Box::new(Ast::from(inner.as_ref())))
            }
            FunctionSpec::SumOf(l, r) => {
                Ast::Sum(Box::new(Ast::from(l.as_ref())), Box::new(Ast::from(r.as_ref())))
            }
        }
    }
}

/// Canonical form; `parse_ast` reads it back unchanged.
impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ast::Affine { slope, intercept } => write!(f, "affine({slope}, {intercept})"),
            Ast::PowAbs(p) => write!(f, "pow_abs({p})"),
            Ast::SignedPow(p) => write!(f, "signed_pow({p})"),
            Ast::Reciprocal => write!(f, "reciprocal"),
            Ast::SqrtPeriodic => write!(f, "sqrt_periodic"),
            Ast::Preset(name) => write!(f, "{name}"),
            Ast::Deriv(inner) => write!(f, "deriv({inner})"),
            Ast::StepSeries { coef, placement } => write!(
                f,
                "step_series(coef={coef}, left={}, width={}, from={})",
                placement.left_fn, placement.width, placement.from_index
            ),
            Ast::Scale(r, inner) => write!(f, "scale({r}, {inner})"),
            Ast::Sum(l, r) => write!(f, "sum({l}, {r})"),
        }
    }
}

pub fn parse_ast(text: &str) -> Result<Ast, ParseError> {
    let mut p = Parser::new(text)?;
    let ast = p.function()?;
    p.finish()?;
    Ok(ast)
}

pub fn parse_function(text: &str) -> Result<FunctionSpec, ParseError> {
    let ast = parse_ast(text)?;
    // The parser validates every constructor, so lowering cannot fail.
    Ok(ast.lower().expect("validated during parsing"))
}

pub fn parse_set(text: &str) -> Result<IntervalFamily, ParseError> {
    let mut p = Parser::new(text)?;
    let set = p.set()?;
    p.finish()?;
    Ok(set)
}
