use std::fmt;

use serde::{Serialize, Serializer};

use super::interval::Interval;
use super::tail::TailDescriptor;
use super::SetError;
use crate::numerics::{
    int, series_tail_with, DivergenceCertificate, Enclosure, ExtendedValue, Rational, SeqTerm,
    DEFAULT_TRUNCATION,
};

/// A finite union of interiors-disjoint intervals, optionally followed by a
/// symbolic tail `⋃_{n >= n0} [a(n), a(n) + w(n))`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalFamily {
    head: Vec<Interval>,
    tail: Option<TailDescriptor>,
}

impl IntervalFamily {
    /// Sorts the head and checks pairwise disjointness, including against
    /// every tail interval.
    pub fn new(mut head: Vec<Interval>, tail: Option<TailDescriptor>) -> Result<Self, SetError> {
        head.sort_by(|a, b| a.cmp_left(b));
        for pair in head.windows(2) {
            if pair[0].interiors_overlap(&pair[1]) {
                return Err(SetError::Overlap(format!("{} and {}", pair[0], pair[1])));
            }
        }
        if let Some(t) = &tail {
            for iv in &head {
                match iv.right() {
                    None => {
                        return Err(SetError::Overlap(format!(
                            "{iv} meets every interval of {t}"
                        )))
                    }
                    Some(r) => {
                        let stop = t.left_fn.first_index_above(r, t.from_index);
                        for n in t.from_index..stop {
                            let ti = t.interval_at(n);
                            if iv.interiors_overlap(&ti) {
                                return Err(SetError::Overlap(format!("{iv} and {ti}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(IntervalFamily { head, tail })
    }

    pub fn empty() -> Self {
        IntervalFamily::default()
    }

    pub fn finite(head: Vec<Interval>) -> Result<Self, SetError> {
        IntervalFamily::new(head, None)
    }

    pub fn from_tail(tail: TailDescriptor) -> Self {
        IntervalFamily {
            head: Vec::new(),
            tail: Some(tail),
        }
    }

    pub fn head(&self) -> &[Interval] {
        &self.head
    }

    pub fn tail(&self) -> Option<&TailDescriptor> {
        self.tail.as_ref()
    }

    pub fn is_empty(&self) -> bool {
        self.head.is_empty() && self.tail.is_none()
    }

    pub fn is_finite_union(&self) -> bool {
        self.tail.is_none()
    }

    pub fn has_unbounded(&self) -> bool {
        self.head.iter().any(|iv| !iv.is_bounded())
    }

    /// The first `depth` tail intervals, in order.
    pub fn tail_intervals(&self, depth: u64) -> Vec<Interval> {
        match &self.tail {
            None => Vec::new(),
            Some(t) => (t.from_index..t.from_index + depth)
                .map(|n| t.interval_at(n))
                .collect(),
        }
    }

    /// Measure with the default number of explicitly summed tail terms.
    pub fn measure(&self) -> ExtendedValue {
        self.measure_with_depth(DEFAULT_TRUNCATION)
    }

    /// Exact head measure plus a certified enclosure of the tail widths.
    pub fn measure_with_depth(&self, terms: u64) -> ExtendedValue {
        if self.has_unbounded() {
            return ExtendedValue::infinite(unbounded_certificate());
        }
        let head: Rational = self.head.iter().filter_map(|iv| iv.length()).sum();
        let head = ExtendedValue::finite(Enclosure::exact(head));
        match &self.tail {
            None => head,
            Some(t) => head.add_nonneg(series_tail_with(&t.width, t.from_index, terms)),
        }
    }

    /// Materializes tail indices `n0 .. n0 + depth - 1` into the head.
    pub fn truncate(&self, depth: u64) -> IntervalFamily {
        assert!(depth >= 1, "truncation depth must be positive");
        let mut head = self.head.clone();
        head.extend(self.tail_intervals(depth));
        IntervalFamily::new(head, None).expect("truncation of a valid family is valid")
    }

    /// Removes the window `[-cutoff, cutoff]`, clipping intervals that straddle it.
    pub fn restrict_beyond(&self, cutoff: &Rational) -> IntervalFamily {
        assert!(!cutoff.is_negative(), "cutoff must be nonnegative");
        let mut head: Vec<Interval> = self
            .head
            .iter()
            .flat_map(|iv| minus_window(iv, cutoff))
            .collect();
        let tail = self.tail.as_ref().map(|t| {
            let first_beyond = t.left_fn.first_index_above(cutoff, t.from_index);
            for n in t.from_index..first_beyond {
                head.extend(minus_window(&t.interval_at(n), cutoff));
            }
            t.starting_at(first_beyond)
        });
        IntervalFamily::new(head, tail).expect("subset of a valid family is valid")
    }

    /// `fam ∩ [-cutoff, cutoff]`; always a finite union.
    pub fn intersect_window(&self, cutoff: &Rational) -> IntervalFamily {
        let neg = -cutoff.clone();
        let mut head: Vec<Interval> = self
            .head
            .iter()
            .filter_map(|iv| clip(iv, &neg, cutoff))
            .collect();
        if let Some(t) = &self.tail {
            let stop = t.left_fn.first_index_above(cutoff, t.from_index);
            for n in t.from_index..stop {
                if let Some(iv) = clip(&t.interval_at(n), &neg, cutoff) {
                    head.push(iv);
                }
            }
        }
        IntervalFamily::new(head, None).expect("subset of a valid family is valid")
    }

    /// Splits every piece longer than `δ/2` into equal pieces whose lengths
    /// lie in `(δ/2, δ]`; shorter pieces pass through unchanged.
    pub fn chop(&self, delta: &Rational) -> Result<IntervalFamily, SetError> {
        if !delta.is_positive() {
            return Err(SetError::InvalidParameter(format!(
                "chop width must be positive, got {delta}"
            )));
        }
        if self.tail.is_some() {
            return Err(SetError::InvalidParameter(
                "chop needs a family without a tail".into(),
            ));
        }
        let half = delta / int(2);
        let mut pieces = Vec::new();
        for iv in &self.head {
            let len = iv
                .length()
                .ok_or_else(|| SetError::InvalidParameter(format!("cannot chop {iv}")))?;
            if len <= half {
                pieces.push(iv.clone());
                continue;
            }
            let count = (&len / delta).ceil();
            let count_r = Rational::from(count.clone());
            let step = &len / &count_r;
            let left = iv.left().unwrap().clone();
            let k: u64 = count.try_into().expect("piece count fits u64");
            for i in 0..k {
                let a = &left + &step * int(i as i64);
                let b = if i + 1 == k {
                    iv.right().unwrap().clone()
                } else {
                    &left + &step * int(i as i64 + 1)
                };
                let lc = if i == 0 { iv.left_closed() } else { true };
                let rc = if i + 1 == k { iv.right_closed() } else { false };
                pieces.push(Interval::new(Some(a), Some(b), lc, rc).unwrap());
            }
        }
        IntervalFamily::new(pieces, None)
    }

    /// Measure of the overlap with the bounded interval `[a, b]`.
    pub fn overlap_with(&self, a: &Rational, b: &Rational) -> Rational {
        let mut total: Rational = self.head.iter().map(|iv| iv.overlap_length(a, b)).sum();
        if let Some(t) = &self.tail {
            let stop = t.left_fn.first_index_above(b, t.from_index);
            for n in t.from_index..stop {
                total += t.interval_at(n).overlap_length(a, b);
            }
        }
        total
    }

    /// Whether every interval of `other` (its tail checked to `depth`
    /// indices) lies inside `self` up to a null set.
    pub fn covers(&self, other: &IntervalFamily, depth: u64) -> bool {
        let mut pieces = other.head.clone();
        pieces.extend(other.tail_intervals(depth));
        pieces.iter().all(|iv| self.covers_interval(iv))
    }

    fn covers_interval(&self, iv: &Interval) -> bool {
        // Split unbounded pieces at a point beyond every finite endpoint of
        // self's head; the far part must sit inside one of self's rays.
        let mut anchors: Vec<Rational> = self
            .head
            .iter()
            .flat_map(|h| [h.left().cloned(), h.right().cloned()])
            .flatten()
            .collect();
        anchors.extend(iv.left().cloned());
        anchors.extend(iv.right().cloned());
        let far = anchors.iter().map(|r| r.abs()).max().unwrap_or_else(Rational::zero) + int(1);
        let near_lo = iv.left().cloned().unwrap_or_else(|| -far.clone());
        let near_hi = iv.right().cloned().unwrap_or_else(|| far.clone());
        let near_len = &near_hi - &near_lo;
        if self.overlap_with(&near_lo, &near_hi) != near_len {
            return false;
        }
        let up_ok = iv.right().is_some()
            || self
                .head
                .iter()
                .any(|h| h.right().is_none() && h.left().is_none_or(|l| l <= &far));
        let down_ok = iv.left().is_some()
            || self
                .head
                .iter()
                .any(|h| h.left().is_none() && h.right().is_none_or(|r| r >= &-far.clone()));
        up_ok && down_ok
    }

    /// Pointwise membership (tail searched exactly).
    pub fn contains_point(&self, x: &Rational) -> bool {
        if self.head.iter().any(|iv| iv.contains_point(x)) {
            return true;
        }
        match &self.tail {
            None => false,
            Some(t) => {
                // Only the last interval starting at or before x can hold it.
                let stop = t.left_fn.first_index_above(x, t.from_index);
                stop > t.from_index && t.interval_at(stop - 1).contains_point(x)
            }
        }
    }

    /// Largest absolute finite endpoint among head intervals and the first
    /// `depth` tail intervals.
    pub fn extent(&self, depth: u64) -> Rational {
        let mut pieces = self.head.clone();
        pieces.extend(self.tail_intervals(depth));
        pieces
            .iter()
            .flat_map(|iv| [iv.left().cloned(), iv.right().cloned()])
            .flatten()
            .map(|r| r.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Union of two families whose supports are disjoint.
    pub fn disjoint_union(&self, other: &IntervalFamily) -> Result<IntervalFamily, SetError> {
        let tail = match (&self.tail, &other.tail) {
            (Some(_), Some(_)) => {
                return Err(SetError::InvalidParameter(
                    "union of two tailed families".into(),
                ))
            }
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        let mut head = self.head.clone();
        head.extend(other.head.iter().cloned());
        IntervalFamily::new(head, tail)
    }
}

/// Unit-length pieces of a ray, each of measure one.
fn unbounded_certificate() -> DivergenceCertificate {
    DivergenceCertificate {
        term: SeqTerm::constant(int(1)),
        from_index: 1,
        checked_prefix: (1..=4).map(|n| (n, int(n as i64))).collect(),
    }
}

fn clip(iv: &Interval, lo: &Rational, hi: &Rational) -> Option<Interval> {
    let (l, lc) = match iv.left() {
        Some(l) if l >= lo => (l.clone(), iv.left_closed()),
        _ => (lo.clone(), true),
    };
    let (r, rc) = match iv.right() {
        Some(r) if r <= hi => (r.clone(), iv.right_closed()),
        _ => (hi.clone(), true),
    };
    if l > r {
        return None;
    }
    if l == r && !(lc && rc) {
        return None;
    }
    Interval::new(Some(l), Some(r), lc, rc)
}

/// `iv ∖ [-c, c]` as at most two pieces.
fn minus_window(iv: &Interval, c: &Rational) -> Vec<Interval> {
    let neg = -c.clone();
    let mut out = Vec::new();
    let starts_below = iv.left().is_none_or(|l| l < &neg);
    if starts_below {
        let (right, rc) = match iv.right() {
            Some(r) if r < &neg => (Some(r.clone()), iv.right_closed()),
            _ => (Some(neg.clone()), false),
        };
        if let Some(piece) = Interval::new(iv.left().cloned(), right, iv.left_closed(), rc) {
            out.push(piece);
        }
    }
    let ends_above = iv.right().is_none_or(|r| r > c);
    if ends_above {
        let (left, lc) = match iv.left() {
            Some(l) if l > c => (Some(l.clone()), iv.left_closed()),
            _ => (Some(c.clone()), false),
        };
        if let Some(piece) = Interval::new(left, iv.right().cloned(), lc, iv.right_closed()) {
            out.push(piece);
        }
    }
    out
}

impl fmt::Display for IntervalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, iv) in self.head.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{iv}")?;
        }
        write!(f, "}}")?;
        if let Some(t) = &self.tail {
            write!(f, " ++ {t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for IntervalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IntervalFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
