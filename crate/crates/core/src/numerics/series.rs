//! Series `Σ c/n^p`: certified tail enclosures and comparison-based
//! divergence certificates.

use std::fmt;

use serde::Serialize;

use super::bracket::{pow_enclosure, DEFAULT_ROOT_BITS};
use super::enclosure::{Enclosure, DEFAULT_GRID_BITS};
use super::rational::{int, Rational};

/// Number of terms summed explicitly before the integral-test bound takes over.
pub const DEFAULT_TRUNCATION: u64 = 100;

/// Partial sums recorded in a certificate produced by [`series_tail`].
const PREFIX_LEN: u64 = 10;

/// The sequence `n ↦ c / n^p` with `c > 0`, `p >= 0`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SeqTerm {
    pub coefficient: Rational,
    pub exponent: Rational,
}

impl SeqTerm {
    pub fn new(coefficient: Rational, exponent: Rational) -> Self {
        assert!(coefficient.is_positive(), "SeqTerm coefficient must be > 0");
        assert!(!exponent.is_negative(), "SeqTerm exponent must be >= 0");
        SeqTerm {
            coefficient,
            exponent,
        }
    }

    /// `c / n^p` with integer `p`.
    pub fn power(c: Rational, p: i64) -> Self {
        SeqTerm::new(c, int(p))
    }

    pub fn constant(c: Rational) -> Self {
        SeqTerm::new(c, Rational::zero())
    }

    pub fn is_summable(&self) -> bool {
        self.exponent > int(1)
    }

    /// Certified value of the `n`-th term.
    pub fn value_at(&self, n: u64) -> Enclosure {
        assert!(n >= 1);
        let n = int(n as i64);
        if self.exponent.is_integer() {
            let p: i64 = self.exponent.numer().try_into().expect("exponent fits i64");
            Enclosure::exact(&self.coefficient / n.pow(p))
        } else {
            pow_enclosure(&n, &-self.exponent.clone(), DEFAULT_ROOT_BITS).scale(&self.coefficient)
        }
    }

    /// Exact value when the exponent is an integer.
    pub fn exact_at(&self, n: u64) -> Option<Rational> {
        let v = self.value_at(n);
        v.is_exact().then(|| v.lo().clone())
    }
}

impl fmt::Display for SeqTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/n^{}", self.coefficient, self.exponent)
    }
}

impl fmt::Debug for SeqTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Evidence that a nonnegative series diverges: on every listed index the
/// quantity dominates `term`, whose series diverges because `term.p <= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivergenceCertificate {
    pub term: SeqTerm,
    pub from_index: u64,
    /// `(index, lower bound of the partial sum up to that index)`.
    pub checked_prefix: Vec<(u64, Rational)>,
}

impl DivergenceCertificate {
    /// Re-checks the certificate: `p <= 1`, `c > 0`, and every recorded
    /// partial sum dominates the comparison series summed over the same indices.
    pub fn verify(&self) -> bool {
        if self.term.exponent > int(1) || !self.term.coefficient.is_positive() {
            return false;
        }
        let mut comparison = Rational::zero();
        let mut last_index = 0u64;
        let mut last_sum: Option<&Rational> = None;
        for (index, bound) in &self.checked_prefix {
            if *index < self.from_index || *index <= last_index && last_index != 0 {
                return false;
            }
            comparison += self.term.value_at(*index).lo();
            if bound < &comparison {
                return false;
            }
            if let Some(prev) = last_sum {
                if bound < prev {
                    return false;
                }
            }
            last_sum = Some(bound);
            last_index = *index;
        }
        true
    }

    pub fn last_partial_sum(&self) -> Option<&Rational> {
        self.checked_prefix.last().map(|(_, s)| s)
    }
}

/// A certified real in `[0, ∞]`, or an explicit admission of ignorance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtendedValue {
    Finite { enclosure: Enclosure },
    ProvenInfinite { certificate: DivergenceCertificate },
    Unknown { reason: String },
}

impl ExtendedValue {
    pub fn finite(e: Enclosure) -> Self {
        ExtendedValue::Finite { enclosure: e }
    }

    pub fn infinite(certificate: DivergenceCertificate) -> Self {
        ExtendedValue::ProvenInfinite { certificate }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        ExtendedValue::Unknown {
            reason: reason.into(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedValue::Finite { .. })
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedValue::ProvenInfinite { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, ExtendedValue::Unknown { .. })
    }

    pub fn as_finite(&self) -> Option<&Enclosure> {
        match self {
            ExtendedValue::Finite { enclosure } => Some(enclosure),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&DivergenceCertificate> {
        match self {
            ExtendedValue::ProvenInfinite { certificate } => Some(certificate),
            _ => None,
        }
    }

    /// Sum of two nonnegative extended values: infinity absorbs everything,
    /// then ignorance absorbs finite values.
    pub fn add_nonneg(self, other: ExtendedValue) -> ExtendedValue {
        use ExtendedValue::*;
        match (self, other) {
            (inf @ ProvenInfinite { .. }, _) | (_, inf @ ProvenInfinite { .. }) => inf,
            (u @ Unknown { .. }, _) | (_, u @ Unknown { .. }) => u,
            (Finite { enclosure: a }, Finite { enclosure: b }) => ExtendedValue::finite(&a + &b),
        }
    }

    pub fn scale_nonneg(self, r: &Rational) -> ExtendedValue {
        assert!(!r.is_negative());
        match self {
            ExtendedValue::Finite { enclosure } => ExtendedValue::finite(enclosure.scale(r)),
            other if r.is_zero() => match other {
                ExtendedValue::Unknown { .. } => other,
                _ => ExtendedValue::finite(Enclosure::zero()),
            },
            ExtendedValue::ProvenInfinite { certificate } => {
                ExtendedValue::infinite(scale_certificate(&certificate, r))
            }
            other => other,
        }
    }
}

fn scale_certificate(cert: &DivergenceCertificate, r: &Rational) -> DivergenceCertificate {
    DivergenceCertificate {
        term: SeqTerm::new(&cert.term.coefficient * r, cert.term.exponent.clone()),
        from_index: cert.from_index,
        checked_prefix: cert
            .checked_prefix
            .iter()
            .map(|(i, s)| (*i, s * r))
            .collect(),
    }
}

/// Encloses `Σ_{n >= from} c/n^p` using the default truncation.
pub fn series_tail(term: &SeqTerm, from: u64) -> ExtendedValue {
    series_tail_with(term, from, DEFAULT_TRUNCATION)
}

/// Encloses `Σ_{n >= from} c/n^p`, summing `terms` terms explicitly.
///
/// For `p > 1` the remainder after `N = from + terms - 1` is bounded by the
/// integral test, `c N^(1-p) / (p-1)`. For `p <= 1` the series diverges and
/// a comparison certificate against the series itself is returned.
pub fn series_tail_with(term: &SeqTerm, from: u64, terms: u64) -> ExtendedValue {
    assert!(from >= 1 && terms >= 1);
    if !term.is_summable() {
        return ExtendedValue::infinite(self_comparison_certificate(term, from));
    }
    let last = from + terms - 1;
    // Terms are rounded outward onto a dyadic grid so the partial sums keep
    // small denominators; the added width is at most terms * 2^-64.
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for n in from..=last {
        let t = term.value_at(n);
        lo += t.lo().floor_dyadic(DEFAULT_GRID_BITS);
        hi += t.hi().ceil_dyadic(DEFAULT_GRID_BITS);
    }
    let partial = Enclosure::new(lo, hi);
    let p_minus_one = &term.exponent - int(1);
    let tail = pow_enclosure(&int(last as i64), &-p_minus_one.clone(), DEFAULT_ROOT_BITS)
        .scale(&(&term.coefficient / &p_minus_one));
    let hi = partial.hi() + tail.hi();
    ExtendedValue::finite(Enclosure::new(partial.lo().clone(), hi))
}

fn self_comparison_certificate(term: &SeqTerm, from: u64) -> DivergenceCertificate {
    let mut sum = Rational::zero();
    let mut prefix = Vec::new();
    for n in from..from + PREFIX_LEN {
        sum += term.value_at(n).lo();
        prefix.push((n, sum.clone()));
    }
    DivergenceCertificate {
        term: term.clone(),
        from_index: from,
        checked_prefix: prefix,
    }
}

/// Why [`divergence_by_comparison`] declined to certify.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error, Serialize)]
#[error("no divergence certificate: {reason}")]
pub struct Rejection {
    pub reason: String,
}

fn reject(reason: impl Into<String>) -> Rejection {
    Rejection {
        reason: reason.into(),
    }
}

/// Tries to certify divergence of `Σ b_n` from termwise lower bounds `b_n`.
///
/// Each comparison exponent `p ∈ {0, 1}` is tried in turn. The scaled values
/// `b_n · n^p` must not decay: the minimum over the later half of the
/// indices must be at least the minimum over the earlier half. When that
/// holds, `c = min b_n · n^p > 0` and every supplied bound dominates `c/n^p`.
/// Summable-looking bounds (e.g. `1/n²`) fail both tests and are rejected.
pub fn divergence_by_comparison(
    lower_bounds: &[(u64, Rational)],
) -> Result<DivergenceCertificate, Rejection> {
    if lower_bounds.is_empty() {
        return Err(reject("no lower bounds supplied"));
    }
    if lower_bounds.iter().any(|(i, _)| *i == 0) {
        return Err(reject("indices start at 1"));
    }
    if lower_bounds.windows(2).any(|w| w[0].0 >= w[1].0) {
        return Err(reject("indices must be strictly increasing"));
    }
    if lower_bounds.len() < 2 {
        return Err(reject("need at least two indices to compare growth"));
    }
    let half = lower_bounds.len() / 2;
    for p in [0i64, 1] {
        let scaled: Vec<Rational> = lower_bounds
            .iter()
            .map(|(n, b)| b * int(*n as i64).pow(p))
            .collect();
        let early = scaled[..half].iter().min().unwrap();
        let late = scaled[half..].iter().min().unwrap();
        if !early.is_positive() || late < early {
            continue;
        }
        let c = scaled.iter().min().unwrap().clone();
        let term = SeqTerm::power(c, p);
        let mut sum = Rational::zero();
        let checked_prefix = lower_bounds
            .iter()
            .map(|(n, b)| {
                sum += b;
                (*n, sum.clone())
            })
            .collect();
        let cert = DivergenceCertificate {
            term,
            from_index: lower_bounds[0].0,
            checked_prefix,
        };
        debug_assert!(cert.verify());
        return Ok(cert);
    }
    Err(reject(
        "bounds decay faster than every divergent comparison c/n^p (p <= 1)",
    ))
}

/// Harmonic number `H_n` as an exact rational.
pub fn harmonic(n: u64) -> Rational {
    (1..=n).map(|k| Rational::new(1, k as i64)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    #[test]
    fn basel_enclosure() {
        let t = SeqTerm::power(int(1), 2);
        let v = series_tail(&t, 1);
        let e = v.as_finite().unwrap();
        let pi2_6 = std::f64::consts::PI.powi(2) / 6.0;
        assert!(e.contains_f64(pi2_6));
        assert!(e.width() <= rat(2, 100));
        let tail = series_tail(&t, 2);
        assert!(tail.as_finite().unwrap().contains_f64(pi2_6 - 1.0));
    }

    #[test]
    fn harmonic_is_infinite() {
        let v = series_tail(&SeqTerm::power(int(1), 1), 1);
        let cert = v.certificate().unwrap();
        assert!(cert.verify());
        assert_eq!(cert.checked_prefix[3], (4, rat(25, 12)));
    }

    #[test]
    fn refinement_nests() {
        let t = SeqTerm::power(rat(3, 2), 3);
        let coarse = series_tail_with(&t, 1, 20);
        let fine = series_tail_with(&t, 1, 40);
        assert!(fine
            .as_finite()
            .unwrap()
            .is_subset_of(coarse.as_finite().unwrap()));
    }

    #[test]
    fn fractional_exponent() {
        let t = SeqTerm::new(int(1), rat(3, 2));
        let e = series_tail(&t, 1);
        // ζ(3/2) = 2.6123753486854883...
        assert!(e.as_finite().unwrap().contains_f64(2.612_375_348_685_488));
    }

    #[test]
    fn comparison_examples() {
        let harmonic: Vec<_> = (1..=50).map(|n| (n, rat(1, n as i64))).collect();
        let cert = divergence_by_comparison(&harmonic).unwrap();
        assert_eq!(cert.term, SeqTerm::power(int(1), 1));

        let basel: Vec<_> = (1..=50).map(|n| (n, rat(1, (n * n) as i64))).collect();
        assert!(divergence_by_comparison(&basel).is_err());

        let eps = rat(1, 2);
        let adv: Vec<_> = (2..=20)
            .map(|n| (n, &eps * (int(1) - rat(1, (n * n) as i64))))
            .collect();
        let cert = divergence_by_comparison(&adv).unwrap();
        assert_eq!(cert.term, SeqTerm::constant(rat(3, 8)));
        assert!(cert.verify());
    }

    #[test]
    fn comparison_rejects_bad_input() {
        assert!(divergence_by_comparison(&[]).is_err());
        assert!(divergence_by_comparison(&[(2, int(1)), (2, int(1))]).is_err());
        assert!(divergence_by_comparison(&[(1, int(1))]).is_err());
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(10), rat(7381, 2520));
        assert_eq!(harmonic(5), rat(137, 60));
    }
}
