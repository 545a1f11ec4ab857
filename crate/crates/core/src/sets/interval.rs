use std::cmp::Ordering;
use std::fmt;

use crate::numerics::Rational;

/// An interval of the real line with rational (or infinite) endpoints.
///
/// `None` on the left means −∞, `None` on the right means +∞. Closedness is
/// tracked for printing and pointwise membership; it never changes a measure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    left: Option<Rational>,
    right: Option<Rational>,
    left_closed: bool,
    right_closed: bool,
}

impl Interval {
    pub fn new(
        left: Option<Rational>,
        right: Option<Rational>,
        left_closed: bool,
        right_closed: bool,
    ) -> Option<Self> {
        if let (Some(l), Some(r)) = (&left, &right) {
            if l > r {
                return None;
            }
        }
        Some(Interval {
            left_closed: left_closed && left.is_some(),
            right_closed: right_closed && right.is_some(),
            left,
            right,
        })
    }

    /// `[a, b)`
    pub fn closed_open(a: Rational, b: Rational) -> Self {
        Interval::new(Some(a), Some(b), true, false).expect("left <= right")
    }

    /// `[a, b]`
    pub fn closed(a: Rational, b: Rational) -> Self {
        Interval::new(Some(a), Some(b), true, true).expect("left <= right")
    }

    /// `(a, b)`
    pub fn open(a: Rational, b: Rational) -> Self {
        Interval::new(Some(a), Some(b), false, false).expect("left <= right")
    }

    /// `[a, ∞)`
    pub fn ray_up(a: Rational) -> Self {
        Interval::new(Some(a), None, true, false).unwrap()
    }

    /// `(−∞, b]`
    pub fn ray_down(b: Rational) -> Self {
        Interval::new(None, Some(b), false, true).unwrap()
    }

    pub fn whole_line() -> Self {
        Interval::new(None, None, false, false).unwrap()
    }

    pub fn left(&self) -> Option<&Rational> {
        self.left.as_ref()
    }

    pub fn right(&self) -> Option<&Rational> {
        self.right.as_ref()
    }

    pub fn left_closed(&self) -> bool {
        self.left_closed
    }

    pub fn right_closed(&self) -> bool {
        self.right_closed
    }

    pub fn is_bounded(&self) -> bool {
        self.left.is_some() && self.right.is_some()
    }

    /// Length, or `None` for an unbounded interval.
    pub fn length(&self) -> Option<Rational> {
        match (&self.left, &self.right) {
            (Some(l), Some(r)) => Some(r - l),
            _ => None,
        }
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        let left_ok = match &self.left {
            None => true,
            Some(l) => x > l || (self.left_closed && x == l),
        };
        let right_ok = match &self.right {
            None => true,
            Some(r) => x < r || (self.right_closed && x == r),
        };
        left_ok && right_ok
    }

    /// Length of the overlap with the bounded interval `[a, b]`.
    pub fn overlap_length(&self, a: &Rational, b: &Rational) -> Rational {
        let lo = match &self.left {
            Some(l) => l.clone().max(a.clone()),
            None => a.clone(),
        };
        let hi = match &self.right {
            Some(r) => r.clone().min(b.clone()),
            None => b.clone(),
        };
        if hi > lo {
            hi - lo
        } else {
            Rational::zero()
        }
    }

    /// True when the interiors intersect.
    pub fn interiors_overlap(&self, other: &Interval) -> bool {
        let left_before_right = |l: &Option<Rational>, r: &Option<Rational>| match (l, r) {
            (Some(l), Some(r)) => l < r,
            _ => true,
        };
        left_before_right(&self.left, &other.right) && left_before_right(&other.left, &self.right)
    }

    /// Same set with different closedness flags.
    pub fn with_closedness(&self, left_closed: bool, right_closed: bool) -> Interval {
        Interval::new(self.left.clone(), self.right.clone(), left_closed, right_closed).unwrap()
    }

    /// Ordering by left endpoint, −∞ first.
    pub fn cmp_left(&self, other: &Interval) -> Ordering {
        match (&self.left, &other.left) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.left_closed { '[' } else { '(' };
        let close = if self.right_closed { ']' } else { ')' };
        let left = self
            .left
            .as_ref()
            .map_or_else(|| "-inf".to_string(), |l| l.to_string());
        let right = self
            .right
            .as_ref()
            .map_or_else(|| "inf".to_string(), |r| r.to_string());
        write!(f, "{open}{left},{right}{close}")
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{int, rat};

    #[test]
    fn display_forms() {
        assert_eq!(Interval::closed_open(int(0), rat(1, 2)).to_string(), "[0,1/2)");
        assert_eq!(Interval::ray_down(int(-2)).to_string(), "(-inf,-2]");
        assert_eq!(Interval::whole_line().to_string(), "(-inf,inf)");
    }

    #[test]
    fn membership_respects_closedness() {
        let iv = Interval::closed_open(int(0), int(1));
        assert!(iv.contains_point(&int(0)));
        assert!(!iv.contains_point(&int(1)));
        assert!(Interval::ray_up(int(3)).contains_point(&int(1000)));
    }

    #[test]
    fn overlap() {
        let a = Interval::closed_open(int(0), int(2));
        assert_eq!(a.overlap_length(&int(1), &int(5)), int(1));
        assert!(!a.interiors_overlap(&Interval::closed(int(2), int(3))));
        assert!(a.interiors_overlap(&Interval::ray_down(int(1))));
        assert!(Interval::new(Some(int(2)), Some(int(1)), true, true).is_none());
    }
}
