use num_bigint::BigInt;

use super::lexer::{lex, Tok, Token};
use super::{Ast, ParseError};
use crate::functions::{derivative, StepCoef};
use crate::numerics::{int, Rational, SeqTerm};
use crate::sets::{Interval, IntervalFamily, LeftFn, TailDescriptor};

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    pub(crate) fn new(src: &str) -> PResult<Self> {
        Ok(Parser {
            toks: lex(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
            message: None,
        }
    }

    /// An error at the token `at` that is not about the next expected token.
    fn invalid(&self, at: usize, message: impl Into<String>) -> ParseError {
        let t = &self.toks[at];
        ParseError {
            line: t.line,
            column: t.column,
            expected: Vec::new(),
            found: t.tok.describe(),
            message: Some(message.into()),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(&[&format!("`{}`", tok.symbol())]))
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn expect_ident(&mut self, name: &str) -> PResult<()> {
        if self.is_ident(name) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{name}`")]))
        }
    }

    pub(crate) fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            Err(self.error(&["end of input"]))
        }
    }

    fn uint(&mut self, what: &str) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn small_uint(&mut self, what: &str) -> PResult<u64> {
        let at = self.pos;
        let n = self.uint(what)?;
        u64::try_from(n).map_err(|_| self.invalid(at, format!("{what} is too large")))
    }

    /// `[-] int [/ int]`; a `/` followed by anything but an integer is left alone.
    fn rational(&mut self) -> PResult<Rational> {
        let negative = self.eat(&Tok::Minus);
        let numer = self.uint("rational")?;
        let mut value = Rational::from(numer);
        if *self.peek() == Tok::Slash && matches!(self.peek_at(1), Tok::Int(_)) {
            self.bump();
            let at = self.pos;
            let denom = self.uint("integer")?;
            if denom == BigInt::from(0) {
                return Err(self.invalid(at, "zero denominator"));
            }
            value = value / Rational::from(denom);
        }
        Ok(if negative { -value } else { value })
    }

    fn starts_rational(&self) -> bool {
        matches!(self.peek(), Tok::Int(_)) || *self.peek() == Tok::Minus
    }

    /// `c/n^p`, or a bare positive rational for a constant sequence.
    fn seqterm(&mut self) -> PResult<SeqTerm> {
        let at = self.pos;
        let c = self.rational()?;
        self.seqterm_after(at, c)
    }

    fn seqterm_after(&mut self, at: usize, c: Rational) -> PResult<SeqTerm> {
        if !c.is_positive() {
            return Err(self.invalid(at, "sequence coefficient must be positive"));
        }
        if !self.eat(&Tok::Slash) {
            return Ok(SeqTerm::constant(c));
        }
        self.expect_ident("n")?;
        self.expect(Tok::Caret)?;
        let at = self.pos;
        let p = self.rational()?;
        if p.is_negative() {
            return Err(self.invalid(at, "sequence exponent must be nonnegative"));
        }
        Ok(SeqTerm::new(c, p))
    }

    /// `n | c n | c*n | c/n^p | c`
    fn step_coef(&mut self) -> PResult<StepCoef> {
        if self.eat(&Tok::Ident("n".into())) {
            return Ok(StepCoef::Linear(int(1)));
        }
        if !self.starts_rational() {
            return Err(self.error(&["`n`", "rational"]));
        }
        let at = self.pos;
        let c = self.rational()?;
        if self.eat(&Tok::Star) {
            self.expect_ident("n")?;
            return Ok(StepCoef::Linear(c));
        }
        if self.eat(&Tok::Ident("n".into())) {
            return Ok(StepCoef::Linear(c));
        }
        Ok(StepCoef::Decay(self.seqterm_after(at, c)?))
    }

    /// `[α] n [^2] [(+|-) β]` with integer `α > 0`.
    fn left_fn(&mut self) -> PResult<LeftFn> {
        let at = self.pos;
        let alpha = match self.peek().clone() {
            Tok::Int(a) => {
                self.bump();
                i64::try_from(a).map_err(|_| self.invalid(at, "coefficient is too large"))?
            }
            Tok::Ident(s) if s == "n" => 1,
            _ => return Err(self.error(&["`n`", "integer"])),
        };
        if alpha <= 0 {
            return Err(self.invalid(at, "leading coefficient must be positive"));
        }
        self.expect_ident("n")?;
        let quadratic = if self.eat(&Tok::Caret) {
            let at = self.pos;
            if self.uint("`2`")? != BigInt::from(2) {
                return Err(self.invalid(at, "only n and n^2 are supported"));
            }
            true
        } else {
            false
        };
        // A leading minus is consumed by the rational itself.
        let beta = if self.eat(&Tok::Plus) || *self.peek() == Tok::Minus {
            self.rational()?
        } else {
            Rational::zero()
        };
        Ok(if quadratic {
            LeftFn::quadratic(alpha, beta)
        } else {
            LeftFn::linear(alpha, beta)
        })
    }

    fn key(&mut self, allowed: &[&str]) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) if allowed.contains(&s.as_str()) => {
                self.bump();
                self.expect(Tok::Eq)?;
                Ok(s)
            }
            _ => {
                let expected: Vec<String> = allowed.iter().map(|k| format!("`{k}`")).collect();
                let refs: Vec<&str> = expected.iter().map(|s| s.as_str()).collect();
                Err(self.error(&refs))
            }
        }
    }

    /// Keyword arguments `left=, width=, from=` (plus `coef=` for step series)
    /// in any order; `from` defaults to 1.
    fn placement(&mut self, with_coef: bool) -> PResult<(Option<StepCoef>, TailDescriptor)> {
        let start = self.pos;
        let keys: &[&str] = if with_coef {
            &["coef", "left", "width", "from"]
        } else {
            &["left", "width", "from"]
        };
        let (mut coef, mut left, mut width, mut from) = (None, None, None, None);
        loop {
            let at = self.pos;
            let key = self.key(keys)?;
            let seen = match key.as_str() {
                "coef" => coef.replace(self.step_coef()?).is_some(),
                "left" => left.replace(self.left_fn()?).is_some(),
                "width" => width.replace(self.seqterm()?).is_some(),
                _ => {
                    let at = self.pos;
                    let n = self.small_uint("integer")?;
                    if n == 0 {
                        return Err(self.invalid(at, "indices start at 1"));
                    }
                    from.replace(n).is_some()
                }
            };
            if seen {
                return Err(self.invalid(at, format!("duplicate key `{key}`")));
            }
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        let missing = |name: &str| self.invalid(start, format!("missing key `{name}`"));
        if with_coef && coef.is_none() {
            return Err(missing("coef"));
        }
        let left = left.ok_or_else(|| missing("left"))?;
        let width = width.ok_or_else(|| missing("width"))?;
        let tail = TailDescriptor::new(from.unwrap_or(1), left, width)
            .map_err(|e| self.invalid(start, e.to_string()))?;
        Ok((coef, tail))
    }

    pub(crate) fn function(&mut self) -> PResult<Ast> {
        let at = self.pos;
        let name = match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                s
            }
            _ => return Err(self.error(&["function"])),
        };
        let ast = match name.as_str() {
            "reciprocal" => Ast::Reciprocal,
            "sqrt_periodic" => Ast::SqrtPeriodic,
            "f1" | "f2" | "f3" => Ast::Preset(name),
            "affine" => {
                self.expect(Tok::LParen)?;
                let slope = self.rational()?;
                self.expect(Tok::Comma)?;
                let intercept = self.rational()?;
                self.expect(Tok::RParen)?;
                Ast::Affine { slope, intercept }
            }
            "pow_abs" | "signed_pow" => {
                self.expect(Tok::LParen)?;
                let arg = self.pos;
                let p = self.rational()?;
                self.expect(Tok::RParen)?;
                if name == "pow_abs" {
                    if p.is_zero() {
                        return Err(self.invalid(arg, "pow_abs exponent must be nonzero"));
                    }
                    Ast::PowAbs(p)
                } else {
                    Ast::SignedPow(p)
                }
            }
            "deriv" => {
                self.expect(Tok::LParen)?;
                let inner = self.function()?;
                self.expect(Tok::RParen)?;
                let f = inner.lower().map_err(|e| self.invalid(at, e.to_string()))?;
                derivative(&f).map_err(|e| self.invalid(at, e.to_string()))?;
                Ast::Deriv(Box::new(inner))
            }
            "scale" => {
                self.expect(Tok::LParen)?;
                let arg = self.pos;
                let r = self.rational()?;
                if r.is_zero() {
                    return Err(self.invalid(arg, "scale factor must be nonzero"));
                }
                self.expect(Tok::Comma)?;
                let inner = self.function()?;
                self.expect(Tok::RParen)?;
                Ast::Scale(r, Box::new(inner))
            }
            "sum" => {
                self.expect(Tok::LParen)?;
                let l = self.function()?;
                self.expect(Tok::Comma)?;
                let r = self.function()?;
                self.expect(Tok::RParen)?;
                Ast::Sum(Box::new(l), Box::new(r))
            }
            "step_series" => {
                self.expect(Tok::LParen)?;
                let (coef, placement) = self.placement(true)?;
                self.expect(Tok::RParen)?;
                let coef = coef.expect("checked");
                if matches!(&coef, StepCoef::Linear(c) if c.is_zero()) {
                    return Err(self.invalid(at, "step coefficient must be nonzero"));
                }
                if matches!(&coef, StepCoef::Decay(t) if !t.exponent.is_integer()) {
                    return Err(self.invalid(at, "step coefficient exponent must be an integer"));
                }
                Ast::StepSeries { coef, placement }
            }
            _ => return Err(self.invalid(at, format!("unknown function `{name}`"))),
        };
        Ok(ast)
    }

    fn endpoint(&mut self, infinite: &str) -> PResult<Option<Rational>> {
        if self.is_ident("inf") && infinite == "inf" {
            self.bump();
            return Ok(None);
        }
        if *self.peek() == Tok::Minus && matches!(self.peek_at(1), Tok::Ident(s) if s == "inf")
            && infinite == "-inf" {
                self.bump();
                self.bump();
                return Ok(None);
            }
        if self.starts_rational() {
            return self.rational().map(Some);
        }
        Err(self.error(&["rational", &format!("`{infinite}`")]))
    }

    fn interval(&mut self) -> PResult<Interval> {
        let at = self.pos;
        let left_closed = match self.bump() {
            Tok::LBracket => true,
            Tok::LParen => false,
            _ => {
                self.pos = at;
                return Err(self.error(&["`[`", "`(`"]));
            }
        };
        let left = self.endpoint("-inf")?;
        self.expect(Tok::Comma)?;
        let right = self.endpoint("inf")?;
        let right_closed = match self.peek() {
            Tok::RBracket => true,
            Tok::RParen => false,
            _ => return Err(self.error(&["`]`", "`)`"])),
        };
        self.bump();
        Interval::new(left, right, left_closed, right_closed)
            .ok_or_else(|| self.invalid(at, "interval endpoints are out of order"))
    }

    /// `{ interval* } [++ tail(left=..., width=..., from=...)]`
    pub(crate) fn set(&mut self) -> PResult<IntervalFamily> {
        let at = self.pos;
        self.expect(Tok::LBrace)?;
        let mut head = Vec::new();
        while !self.eat(&Tok::RBrace) {
            if !matches!(self.peek(), Tok::LBracket | Tok::LParen) {
                return Err(self.error(&["`[`", "`(`", "`}`"]));
            }
            head.push(self.interval()?);
            self.eat(&Tok::Comma);
        }
        let tail = if self.eat(&Tok::PlusPlus) {
            self.expect_ident("tail")?;
            self.expect(Tok::LParen)?;
            let (_, t) = self.placement(false)?;
            self.expect(Tok::RParen)?;
            Some(t)
        } else {
            None
        };
        IntervalFamily::new(head, tail).map_err(|e| self.invalid(at, e.to_string()))
    }
}
