//! Certified bracketing of irrational quantities: k-th roots, rational
//! powers, and natural logarithms of positive rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::enclosure::Enclosure;
use super::rational::{int, rat, Rational};

/// Grid used for root brackets: width `2^-40` (about 9.1e-13).
pub const DEFAULT_ROOT_BITS: u32 = 40;

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow::Pow::pow(&r, k) == *n {
        Some(r)
    } else {
        None
    }
}

/// Encloses `x^(1/k)` for `x >= 0` with width at most `2^-bits`.
///
/// Perfect powers come back exact. Otherwise the bracket is
/// `[r, r + 1] / 2^bits` where `r` is the integer floor root of
/// `floor(x * 2^(bits*k))`.
pub fn root_enclosure(x: &Rational, k: u32, bits: u32) -> Enclosure {
    assert!(!x.is_negative(), "root of negative rational {x}");
    assert!(k >= 1);
    if k == 1 || x.is_zero() {
        return Enclosure::exact(x.clone());
    }
    if let (Some(n), Some(d)) = (exact_root(x.numer(), k), exact_root(x.denom(), k)) {
        return Enclosure::exact(Rational::new(n, d));
    }
    let scale = BigInt::one() << (bits as usize * k as usize);
    let scaled = (x.numer() * scale) / x.denom();
    let r = scaled.nth_root(k);
    let denom = BigInt::one() << bits;
    Enclosure::new(
        Rational::new(r.clone(), denom.clone()),
        Rational::new(r + 1, denom),
    )
}

pub fn sqrt_enclosure(x: &Rational) -> Enclosure {
    root_enclosure(x, 2, DEFAULT_ROOT_BITS)
}

/// Encloses `x^(1/2)` to at most the requested width.
pub fn sqrt_with_width(x: &Rational, width: &Rational) -> Enclosure {
    root_enclosure(x, 2, bits_for_width(width))
}

/// Smallest `b` with `2^-b <= width`.
pub fn bits_for_width(width: &Rational) -> u32 {
    assert!(width.is_positive());
    let mut bits = 0u32;
    let mut step = int(1);
    while &step > width {
        step = step / int(2);
        bits += 1;
    }
    bits
}

/// Encloses `x^p` for rational `p`; requires `x > 0` when `p <= 0`
/// and `x >= 0` otherwise.
pub fn pow_enclosure(x: &Rational, p: &Rational, bits: u32) -> Enclosure {
    if p.is_zero() {
        return Enclosure::exact(int(1));
    }
    assert!(!x.is_negative(), "rational power of negative base");
    let num: i64 = p.numer().try_into().expect("exponent numerator fits i64");
    let den: u32 = p.denom().try_into().expect("exponent denominator fits u32");
    if num > 0 {
        let base = x.pow(num);
        root_enclosure(&base, den, bits)
    } else {
        assert!(x.is_positive(), "negative power of zero");
        // x^(-m/d) = (1/x)^(m/d) needs no reciprocal of a bracket that may touch 0.
        root_enclosure(&x.recip().pow(-num), den, bits)
    }
}

/// Encloses `atanh(z) = z + z^3/3 + z^5/5 + ...` for `|z| <= 1/2`.
fn atanh_enclosure(z: &Rational, bits: u32) -> Enclosure {
    assert!(z.abs() <= rat(1, 2));
    if z.is_zero() {
        return Enclosure::zero();
    }
    let z2 = z * z;
    let one_minus = int(1) - &z2;
    let target = Rational::new(1, BigInt::one() << (bits + 2));
    let mut power = z.clone();
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    let mut k: i64 = 0;
    loop {
        let term = &power / int(2 * k + 1);
        lo += term.floor_dyadic(bits + 8);
        hi += term.ceil_dyadic(bits + 8);
        power = &power * &z2;
        // Remainder after this term is bounded by |z|^(2k+3) / ((2k+3)(1 - z^2)).
        let tail = power.abs() / int(2 * k + 3) / &one_minus;
        if tail < target {
            if z.is_positive() {
                hi += tail;
            } else {
                lo -= &tail;
            }
            break;
        }
        k += 1;
    }
    Enclosure::new(lo, hi)
}

/// Encloses `ln 2`.
pub fn ln2_enclosure(bits: u32) -> Enclosure {
    atanh_enclosure(&rat(1, 3), bits).scale(&int(2))
}

/// Encloses `ln q` for `q > 0` with width of order `2^-bits` (times the
/// binary exponent of `q`).
pub fn ln_enclosure(q: &Rational, bits: u32) -> Enclosure {
    assert!(q.is_positive(), "logarithm of nonpositive rational {q}");
    if *q == int(1) {
        return Enclosure::zero();
    }
    // q = 2^m * r with r in [2/3, 4/3].
    let mut m: i64 = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut r = q / &int(2).pow(m);
    while r > rat(4, 3) {
        r = r / int(2);
        m += 1;
    }
    while r < rat(2, 3) {
        r = r * int(2);
        m -= 1;
    }
    let extra = 64 - (m.unsigned_abs().max(1)).leading_zeros();
    let z = (&r - int(1)) / (&r + int(1));
    let head = atanh_enclosure(&z, bits + extra).scale(&int(2));
    let shift = ln2_enclosure(bits + extra).scale(&int(m));
    (&head + &shift).round_outward(bits + 4)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_powers_are_exact() {
        assert_eq!(sqrt_enclosure(&rat(1, 4)), Enclosure::exact(rat(1, 2)));
        assert_eq!(sqrt_enclosure(&rat(9, 100)), Enclosure::exact(rat(3, 10)));
        assert_eq!(
            root_enclosure(&rat(8, 27), 3, 20),
            Enclosure::exact(rat(2, 3))
        );
    }

    #[test]
    fn sqrt_two_bracket() {
        let e = sqrt_enclosure(&int(2));
        assert!((e.lo() * e.lo()) <= int(2));
        assert!((e.hi() * e.hi()) >= int(2));
        assert!(e.width() <= rat(1, 1_000_000_000));
    }

    #[test]
    fn width_request_honoured() {
        let w = rat(1, 1000);
        let e = sqrt_with_width(&int(3), &w);
        assert!(e.width() <= w);
        assert!(e.contains_f64(3f64.sqrt()));
    }

    #[test]
    fn negative_power() {
        let e = pow_enclosure(&int(4), &rat(-3, 2), 30);
        assert!(e.contains(&rat(1, 8)));
        let f = pow_enclosure(&int(3), &rat(-1, 2), 30);
        assert!(f.contains_f64(1.0 / 3f64.sqrt()));
        assert!(f.width() < rat(1, 1 << 28));
    }

    #[test]
    fn logarithms() {
        let l2 = ln2_enclosure(50);
        assert!(l2.contains_f64(std::f64::consts::LN_2));
        for (n, d) in [(1, 7), (3, 2), (1000, 1), (1, 1_000_000), (22, 7)] {
            let q = rat(n, d);
            let e = ln_enclosure(&q, 40);
            let expect = (n as f64 / d as f64).ln();
            assert!(e.lo().to_f64() <= expect + 1e-12 && expect - 1e-12 <= e.hi().to_f64());
            assert!(e.width() < rat(1, 1 << 30), "{q}: {e:?}");
        }
        assert!(ln_enclosure(&rat(1, 2), 40).hi().is_negative());
    }
}
