use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use super::rational::Rational;

/// Bits of the dyadic grid used when an inexact enclosure is simplified.
pub const DEFAULT_GRID_BITS: u32 = 64;

/// A rational interval `[lo, hi]` certified to contain some real quantity.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct Enclosure {
    lo: Rational,
    hi: Rational,
    exact: bool,
}

impl Enclosure {
    pub fn exact(value: Rational) -> Self {
        Enclosure {
            lo: value.clone(),
            hi: value,
            exact: true,
        }
    }

    /// Builds `[lo, hi]`; collapses to an exact enclosure when the ends coincide.
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "enclosure with lo > hi: [{lo}, {hi}]");
        let exact = lo == hi;
        Enclosure { lo, hi, exact }
    }

    pub fn zero() -> Self {
        Enclosure::exact(Rational::zero())
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::integer(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo.to_f64() <= x && x <= self.hi.to_f64()
    }

    pub fn intersects(&self, other: &Enclosure) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersection(&self, other: &Enclosure) -> Option<Enclosure> {
        if !self.intersects(other) {
            return None;
        }
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        Some(Enclosure::new(lo, hi))
    }

    /// True when `self` lies inside `other`.
    pub fn is_subset_of(&self, other: &Enclosure) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    pub fn scale(&self, r: &Rational) -> Enclosure {
        let a = &self.lo * r;
        let b = &self.hi * r;
        if r.is_negative() {
            Enclosure::new(b, a)
        } else {
            Enclosure::new(a, b)
        }
    }

    pub fn abs(&self) -> Enclosure {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self.clone()
        } else {
            Enclosure::new(Rational::zero(), self.hi.clone().max(-self.lo.clone()))
        }
    }

    /// Reciprocal of an enclosure that excludes zero.
    pub fn recip(&self) -> Option<Enclosure> {
        if self.contains(&Rational::zero()) {
            return None;
        }
        Some(Enclosure::new(self.hi.recip(), self.lo.recip()))
    }

    /// Clamps the lower end at zero; for quantities known to be nonnegative.
    pub fn clamp_nonneg(&self) -> Enclosure {
        if self.lo.is_negative() {
            Enclosure::new(Rational::zero(), self.hi.clone().max(Rational::zero()))
        } else {
            self.clone()
        }
    }

    /// Rounds an inexact enclosure outward onto the `2^-bits` grid so that
    /// long chains of arithmetic keep small denominators. Exact values are kept.
    pub fn round_outward(&self, bits: u32) -> Enclosure {
        if self.exact {
            return self.clone();
        }
        Enclosure::new(self.lo.floor_dyadic(bits), self.hi.ceil_dyadic(bits))
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

impl fmt::Display for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{:.9}, {:.9}]", self.lo.to_f64(), self.hi.to_f64())
        }
    }
}

impl Add for Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: Enclosure) -> Enclosure {
        &self + &rhs
    }
}

impl<'b> Add<&'b Enclosure> for &Enclosure {
    type Output = Enclosure;
    fn add(self, rhs: &'b Enclosure) -> Enclosure {
        Enclosure::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl<'b> Sub<&'b Enclosure> for &Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: &'b Enclosure) -> Enclosure {
        Enclosure::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Sub for Enclosure {
    type Output = Enclosure;
    fn sub(self, rhs: Enclosure) -> Enclosure {
        &self - &rhs
    }
}

impl<'b> Mul<&'b Enclosure> for &Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: &'b Enclosure) -> Enclosure {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().cloned().unwrap();
        let hi = products.iter().max().cloned().unwrap();
        Enclosure::new(lo, hi)
    }
}

impl Mul for Enclosure {
    type Output = Enclosure;
    fn mul(self, rhs: Enclosure) -> Enclosure {
        &self * &rhs
    }
}

impl Neg for Enclosure {
    type Output = Enclosure;
    fn neg(self) -> Enclosure {
        Enclosure::new(-self.hi, -self.lo)
    }
}

impl std::iter::Sum for Enclosure {
    fn sum<I: Iterator<Item = Enclosure>>(iter: I) -> Self {
        iter.fold(Enclosure::zero(), |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn samples(e: &Enclosure) -> Vec<Rational> {
        vec![e.lo().clone(), e.hi().clone(), e.midpoint()]
    }

    #[test]
    fn arithmetic_contains_endpoint_and_midpoint_combinations() {
        let xs = [
            Enclosure::new(rat(-3, 2), rat(1, 3)),
            Enclosure::new(rat(2, 7), rat(5, 2)),
            Enclosure::exact(rat(-4, 9)),
        ];
        for a in &xs {
            for b in &xs {
                let sum = a + b;
                let diff = a - b;
                let prod = a * b;
                for x in samples(a) {
                    for y in samples(b) {
                        assert!(sum.contains(&(&x + &y)));
                        assert!(diff.contains(&(&x - &y)));
                        assert!(prod.contains(&(&x * &y)));
                    }
                }
            }
        }
    }

    #[test]
    fn scale_negative_flips() {
        let e = Enclosure::new(int(1), int(2));
        let s = e.scale(&int(-3));
        assert_eq!(s.lo(), &int(-6));
        assert_eq!(s.hi(), &int(-3));
    }

    #[test]
    fn exact_flag_tracks_degeneracy() {
        assert!(Enclosure::new(int(1), int(1)).is_exact());
        assert!(!Enclosure::new(int(1), int(2)).is_exact());
        let r = Enclosure::new(rat(1, 3), rat(1, 2)).round_outward(8);
        assert!(r.contains(&rat(1, 3)) && r.contains(&rat(1, 2)));
    }

    #[test]
    fn abs_and_recip() {
        let e = Enclosure::new(int(-2), int(1));
        assert_eq!(e.abs(), Enclosure::new(int(0), int(2)));
        assert!(e.recip().is_none());
        let p = Enclosure::new(int(2), int(4)).recip().unwrap();
        assert_eq!(p, Enclosure::new(rat(1, 4), rat(1, 2)));
    }
}
