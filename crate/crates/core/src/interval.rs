//! Directed-rounding enclosures with exact rational endpoints.
//!
//! A [`BoundValue`] is a closed interval `[lower, upper]` whose endpoints are
//! arbitrary-precision rationals. Arithmetic rounds outward, so any real
//! quantity enclosed by the operands stays enclosed by the result. Square
//! roots and k-th roots round to dyadic rationals at a caller-chosen bit
//! precision; everything else is exact.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Rat = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// A closed interval `[lower, upper]` enclosing a real value.
#[derive(Clone, PartialEq)]
pub struct BoundValue {
    lower: Rat,
    upper: Rat,
}

impl fmt::Debug for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lower, self.upper)
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_pair();
        if lo == hi {
            write!(f, "{lo}")
        } else {
            write!(f, "[{lo}, {hi}]")
        }
    }
}

impl BoundValue {
    pub fn new(lower: Rat, upper: Rat) -> Self {
        assert!(lower <= upper, "inverted interval endpoints");
        BoundValue { lower, upper }
    }

    /// The degenerate interval `[x, x]`.
    pub fn exact(x: Rat) -> Self {
        BoundValue {
            lower: x.clone(),
            upper: x,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::exact(rint(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn lower(&self) -> &Rat {
        &self.lower
    }

    pub fn upper(&self) -> &Rat {
        &self.upper
    }

    pub fn width(&self) -> Rat {
        &self.upper - &self.lower
    }

    pub fn midpoint(&self) -> Rat {
        (&self.upper + &self.lower) / rint(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lower <= *x && *x <= self.upper
    }

    pub fn contains_interval(&self, other: &BoundValue) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &BoundValue) -> BoundValue {
        BoundValue {
            lower: self.lower.clone().min(other.lower.clone()),
            upper: self.upper.clone().max(other.upper.clone()),
        }
    }

    pub fn intersect(&self, other: &BoundValue) -> Option<BoundValue> {
        let lo = self.lower.clone().max(other.lower.clone());
        let hi = self.upper.clone().min(other.upper.clone());
        if lo <= hi {
            Some(BoundValue { lower: lo, upper: hi })
        } else {
            None
        }
    }

    pub fn add(&self, other: &BoundValue) -> BoundValue {
        BoundValue {
            lower: &self.lower + &other.lower,
            upper: &self.upper + &other.upper,
        }
    }

    pub fn sub(&self, other: &BoundValue) -> BoundValue {
        BoundValue {
            lower: &self.lower - &other.upper,
            upper: &self.upper - &other.lower,
        }
    }

    pub fn neg(&self) -> BoundValue {
        BoundValue {
            lower: -self.upper.clone(),
            upper: -self.lower.clone(),
        }
    }

    pub fn mul(&self, other: &BoundValue) -> BoundValue {
        let candidates = [
            &self.lower * &other.lower,
            &self.lower * &other.upper,
            &self.upper * &other.lower,
            &self.upper * &other.upper,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        BoundValue { lower: lo, upper: hi }
    }

    pub fn scale(&self, c: &Rat) -> BoundValue {
        if c.is_negative() {
            BoundValue {
                lower: &self.upper * c,
                upper: &self.lower * c,
            }
        } else {
            BoundValue {
                lower: &self.lower * c,
                upper: &self.upper * c,
            }
        }
    }

    /// Reciprocal; requires the interval not to straddle zero.
    pub fn recip(&self) -> BoundValue {
        assert!(
            !self.straddles_zero(),
            "reciprocal of an interval containing zero"
        );
        BoundValue {
            lower: self.upper.recip(),
            upper: self.lower.recip(),
        }
    }

    pub fn div(&self, other: &BoundValue) -> BoundValue {
        self.mul(&other.recip())
    }

    pub fn straddles_zero(&self) -> bool {
        !self.lower.is_positive() && !self.upper.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lower.is_positive()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.lower.is_negative()
    }

    pub fn abs(&self) -> BoundValue {
        if self.lower.is_negative() && self.upper.is_positive() {
            BoundValue {
                lower: Rat::zero(),
                upper: (-self.lower.clone()).max(self.upper.clone()),
            }
        } else if self.upper.is_negative() || self.upper.is_zero() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Integer power with outward rounding.
    pub fn powi(&self, k: u32) -> BoundValue {
        if k == 0 {
            return BoundValue::one();
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Square of the interval (always nonnegative lower endpoint when the
    /// interval straddles zero).
    pub fn square(&self) -> BoundValue {
        let a = self.abs();
        BoundValue {
            lower: &a.lower * &a.lower,
            upper: &a.upper * &a.upper,
        }
    }

    /// Square root with outward dyadic rounding at `bits` fractional bits.
    /// Requires a nonnegative upper endpoint; a slightly negative lower
    /// endpoint (from earlier rounding) is clamped to zero.
    pub fn sqrt(&self, bits: u32) -> BoundValue {
        assert!(
            !self.upper.is_negative(),
            "square root of a negative interval"
        );
        let lo = if self.lower.is_negative() {
            Rat::zero()
        } else {
            sqrt_rational_floor(&self.lower, bits)
        };
        let hi = sqrt_rational_ceil(&self.upper, bits);
        BoundValue { lower: lo, upper: hi }
    }

    /// k-th root (k >= 1) of a nonnegative interval, outward dyadic rounding.
    pub fn nth_root(&self, k: u32, bits: u32) -> BoundValue {
        assert!(k >= 1);
        assert!(!self.lower.is_negative(), "k-th root of negative interval");
        if k == 1 {
            return self.clone();
        }
        BoundValue {
            lower: nth_root_rational_floor(&self.lower, k, bits),
            upper: nth_root_rational_ceil(&self.upper, k, bits),
        }
    }

    /// Rounds both endpoints outward to dyadics with denominator `2^bits`,
    /// bounding coefficient growth in long computations.
    pub fn round_out(&self, bits: u32) -> BoundValue {
        BoundValue {
            lower: dyadic_floor(&self.lower, bits),
            upper: dyadic_ceil(&self.upper, bits),
        }
    }

    /// True if every point of `self` is `<=` every point of `other`.
    pub fn certainly_le(&self, other: &BoundValue) -> bool {
        self.upper <= other.lower
    }

    pub fn certainly_lt(&self, other: &BoundValue) -> bool {
        self.upper < other.lower
    }

    /// Compare against an exact rational threshold: `Less` / `Greater` when
    /// certain, `Equal` when the interval straddles it.
    pub fn classify_vs(&self, threshold: &Rat) -> Ordering {
        if self.upper <= *threshold {
            Ordering::Less
        } else if self.lower > *threshold {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    pub fn min(&self, other: &BoundValue) -> BoundValue {
        BoundValue {
            lower: self.lower.clone().min(other.lower.clone()),
            upper: self.upper.clone().min(other.upper.clone()),
        }
    }

    pub fn max(&self, other: &BoundValue) -> BoundValue {
        BoundValue {
            lower: self.lower.clone().max(other.lower.clone()),
            upper: self.upper.clone().max(other.upper.clone()),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rat_to_f64(&self.lower), rat_to_f64(&self.upper))
    }

    /// Midpoint as f64, for reporting only.
    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.to_f64_pair();
        0.5 * (lo + hi)
    }
}

/// Rational to f64 that survives numerators/denominators far outside the f64
/// exponent range (BigRational::to_f64 handles this, with a scaling fallback).
pub fn rat_to_f64(x: &Rat) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() || x.numer().bits() > 1000 {
            return v;
        }
    }
    // scale by a power of two to bring into range
    let shift = x.numer().bits() as i64 - x.denom().bits() as i64;
    let adj = Rat::new(BigInt::one() << 400u32, BigInt::one());
    if shift > 0 {
        (x / &adj).to_f64().map(|v| v * 2f64.powi(400)).unwrap_or(f64::INFINITY)
    } else {
        (x * &adj).to_f64().map(|v| v * 2f64.powi(-400)).unwrap_or(0.0)
    }
}

/// Base-2 logarithm of a positive rational, accurate to roughly f64 precision
/// regardless of magnitude. Used for bit lengths (reporting, never for exact
/// comparisons).
pub fn log2_rational(x: &Rat) -> f64 {
    assert!(x.is_positive(), "log2 of a non-positive rational");
    let n = x.numer();
    let d = x.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    // mantissas scaled near 1
    let nm = Rat::new(n.clone(), BigInt::one() << (nb.max(1) - 1) as u64);
    let dm = Rat::new(d.clone(), BigInt::one() << (db.max(1) - 1) as u64);
    let frac = rat_to_f64(&nm).log2() - rat_to_f64(&dm).log2();
    (nb - db) as f64 + frac
}

fn dyadic_floor(x: &Rat, bits: u32) -> Rat {
    let scaled = x * Rat::from_integer(BigInt::one() << bits);
    Rat::new(scaled.floor().to_integer(), BigInt::one() << bits)
}

fn dyadic_ceil(x: &Rat, bits: u32) -> Rat {
    let scaled = x * Rat::from_integer(BigInt::one() << bits);
    Rat::new(scaled.ceil().to_integer(), BigInt::one() << bits)
}

/// Largest dyadic `s / 2^bits` with `s^2/4^bits <= x`. Requires `x >= 0`.
pub fn sqrt_rational_floor(x: &Rat, bits: u32) -> Rat {
    assert!(!x.is_negative());
    if x.is_zero() {
        return Rat::zero();
    }
    // floor(sqrt(floor(x * 4^bits))) / 2^bits
    let scaled = (x * Rat::from_integer(BigInt::one() << (2 * bits)))
        .floor()
        .to_integer();
    Rat::new(scaled.sqrt(), BigInt::one() << bits)
}

/// Smallest dyadic `s / 2^bits` with `s^2/4^bits >= x`. Requires `x >= 0`.
pub fn sqrt_rational_ceil(x: &Rat, bits: u32) -> Rat {
    assert!(!x.is_negative());
    if x.is_zero() {
        return Rat::zero();
    }
    let scaled_rat = x * Rat::from_integer(BigInt::one() << (2 * bits));
    let scaled = scaled_rat.ceil().to_integer();
    let r = scaled.sqrt();
    let r = if &r * &r >= scaled { r } else { r + BigInt::one() };
    Rat::new(r, BigInt::one() << bits)
}

fn nth_root_rational_floor(x: &Rat, k: u32, bits: u32) -> Rat {
    assert!(!x.is_negative());
    if x.is_zero() {
        return Rat::zero();
    }
    let scaled = (x * Rat::from_integer(BigInt::one() << (k * bits)))
        .floor()
        .to_integer();
    Rat::new(scaled.nth_root(k), BigInt::one() << bits)
}

fn nth_root_rational_ceil(x: &Rat, k: u32, bits: u32) -> Rat {
    assert!(!x.is_negative());
    if x.is_zero() {
        return Rat::zero();
    }
    let scaled = (x * Rat::from_integer(BigInt::one() << (k * bits)))
        .ceil()
        .to_integer();
    let r = scaled.nth_root(k);
    let r = if r.pow(k) >= scaled { r } else { r + BigInt::one() };
    Rat::new(r, BigInt::one() << bits)
}

/// Exact square root of a rational if it is a perfect square.
pub fn exact_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let (sn, sd) = (n.sqrt(), d.sqrt());
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Sign of `a - b*sqrt(c)` for rationals `a, b` and nonnegative rational `c`,
/// decided exactly.
pub fn cmp_rational_vs_sqrt(a: &Rat, b: &Rat, c: &Rat) -> Ordering {
    assert!(!c.is_negative());
    // compare a with b*sqrt(c)
    let rhs_sign = if c.is_zero() {
        Sign::NoSign
    } else {
        b.numer().sign()
    };
    let lhs_sign = a.numer().sign();
    match (lhs_sign, rhs_sign) {
        (Sign::Minus, Sign::Plus) => return Ordering::Less,
        (Sign::Plus, Sign::Minus) => return Ordering::Greater,
        (Sign::NoSign, Sign::Plus) => return Ordering::Less,
        (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
        (Sign::Minus, Sign::NoSign) => return Ordering::Less,
        (Sign::Plus, Sign::NoSign) => return Ordering::Greater,
        (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
        _ => {}
    }
    // both sides share a strict sign; compare squares, flipping if negative
    let a2 = a * a;
    let rhs2 = b * b * c;
    let cmp = a2.cmp(&rhs2);
    if lhs_sign == Sign::Minus {
        cmp.reverse()
    } else {
        cmp
    }
}

/// gcd of a slice of big integers.
pub fn gcd_slice(xs: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in xs {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}
