use std::fmt;

use serde::Serialize;

use super::interval::Interval;
use super::SetError;
use crate::numerics::{int, Rational, SeqTerm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeftFnKind {
    /// `α n + β`
    Linear,
    /// `α n² + β`
    Quadratic,
}

/// Left endpoint map `n ↦ a(n)` of a symbolic tail: `α n + β` or `α n² + β`
/// with integer `α > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LeftFn {
    pub kind: LeftFnKind,
    pub alpha: i64,
    pub beta: Rational,
}

impl LeftFn {
    pub fn linear(alpha: i64, beta: Rational) -> Self {
        assert!(alpha > 0, "left_fn slope must be positive");
        LeftFn {
            kind: LeftFnKind::Linear,
            alpha,
            beta,
        }
    }

    pub fn quadratic(alpha: i64, beta: Rational) -> Self {
        assert!(alpha > 0, "left_fn leading coefficient must be positive");
        LeftFn {
            kind: LeftFnKind::Quadratic,
            alpha,
            beta,
        }
    }

    pub fn at(&self, n: u64) -> Rational {
        let n = n as i64;
        let lead = match self.kind {
            LeftFnKind::Linear => int(self.alpha * n),
            LeftFnKind::Quadratic => int(self.alpha) * int(n) * int(n),
        };
        lead + &self.beta
    }

    /// `a(n+1) - a(n)`, which is nondecreasing in `n` for both forms.
    pub fn gap(&self, n: u64) -> Rational {
        self.at(n + 1) - self.at(n)
    }

    /// Smallest `n >= from` with `a(n) > x`.
    pub fn first_index_above(&self, x: &Rational, from: u64) -> u64 {
        let mut n = from;
        if self.at(n) > *x {
            return n;
        }
        // Exponential search then bisection; a(n) is increasing.
        let mut step = 1u64;
        while self.at(n + step) <= *x {
            n += step;
            step *= 2;
        }
        let (mut lo, mut hi) = (n, n + step);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.at(mid) > *x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Integer `d` with `|a(n)| <= (|α| + |β|) n^d` for `n >= 1`.
    pub fn degree(&self) -> i64 {
        match self.kind {
            LeftFnKind::Linear => 1,
            LeftFnKind::Quadratic => 2,
        }
    }
}

impl fmt::Display for LeftFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha != 1 {
            write!(f, "{}", self.alpha)?;
        }
        match self.kind {
            LeftFnKind::Linear => write!(f, "n")?,
            LeftFnKind::Quadratic => write!(f, "n^2")?,
        }
        if self.beta.is_positive() {
            write!(f, "+{}", self.beta)?;
        } else if self.beta.is_negative() {
            write!(f, "{}", self.beta)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LeftFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The symbolic family `n ↦ [a(n), a(n) + w(n))` for `n >= from_index`,
/// with `w(n) = c / n^p` and integer `p` so every endpoint is rational.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TailDescriptor {
    pub from_index: u64,
    pub left_fn: LeftFn,
    pub width: SeqTerm,
}

impl TailDescriptor {
    pub fn new(from_index: u64, left_fn: LeftFn, width: SeqTerm) -> Result<Self, SetError> {
        if from_index == 0 {
            return Err(SetError::InvalidParameter(
                "tail indices start at 1".to_string(),
            ));
        }
        if !width.exponent.is_integer() {
            return Err(SetError::InvalidParameter(format!(
                "tail width exponent must be an integer, got {}",
                width.exponent
            )));
        }
        let tail = TailDescriptor {
            from_index,
            left_fn,
            width,
        };
        // Widths are nonincreasing and gaps nondecreasing, so checking the
        // first index decides disjointness for all of them.
        if tail.left_fn.gap(from_index) < tail.width_at(from_index) {
            return Err(SetError::Overlap(format!(
                "tail intervals overlap: a({0}+1) < a({0}) + w({0})",
                from_index
            )));
        }
        Ok(tail)
    }

    pub fn width_at(&self, n: u64) -> Rational {
        self.width.exact_at(n).expect("integer tail exponent")
    }

    pub fn interval_at(&self, n: u64) -> Interval {
        assert!(n >= self.from_index);
        let a = self.left_fn.at(n);
        let b = &a + self.width_at(n);
        Interval::closed_open(a, b)
    }

    pub fn starting_at(&self, from_index: u64) -> TailDescriptor {
        assert!(from_index >= self.from_index);
        TailDescriptor {
            from_index,
            left_fn: self.left_fn.clone(),
            width: self.width.clone(),
        }
    }
}

impl fmt::Display for TailDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tail(left={}, width={}, from={})",
            self.left_fn, self.width, self.from_index
        )
    }
}

impl fmt::Debug for TailDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rat;

    #[test]
    fn left_fn_display_and_values() {
        let a = LeftFn::linear(2, int(0));
        assert_eq!(a.to_string(), "2n");
        assert_eq!(a.at(3), int(6));
        let q = LeftFn::quadratic(1, rat(-1, 4));
        assert_eq!(q.to_string(), "n^2-1/4");
        assert_eq!(q.at(2), rat(15, 4));
        assert_eq!(LeftFn::linear(1, int(3)).to_string(), "n+3");
    }

    #[test]
    fn first_index_above() {
        let a = LeftFn::linear(2, int(0));
        assert_eq!(a.first_index_above(&int(7), 1), 4);
        assert_eq!(a.first_index_above(&int(8), 1), 5);
        assert_eq!(a.first_index_above(&int(-3), 2), 2);
        let q = LeftFn::quadratic(1, int(0));
        assert_eq!(q.first_index_above(&int(1_000_000), 1), 1001);
    }

    #[test]
    fn overlapping_tail_rejected() {
        let w = SeqTerm::power(int(3), 0);
        assert!(TailDescriptor::new(1, LeftFn::linear(2, int(0)), w).is_err());
        let ok = TailDescriptor::new(1, LeftFn::linear(2, int(0)), SeqTerm::power(int(1), 2));
        assert_eq!(
            ok.unwrap().to_string(),
            "tail(left=2n, width=1/n^2, from=1)"
        );
    }

    #[test]
    fn fractional_width_exponent_rejected() {
        let w = SeqTerm::new(int(1), rat(3, 2));
        assert!(TailDescriptor::new(1, LeftFn::linear(1, int(0)), w).is_err());
    }
}
