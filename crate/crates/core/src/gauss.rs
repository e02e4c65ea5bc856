//! Gauss integers and Gauss rationals: exact ring and field arithmetic,
//! Euclidean gcd by norm descent, and canonical unit normalization.

use crate::interval::{Rat, rint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An element of `Z[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `a^2 + b^2`, always nonnegative.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn mul_i(&self) -> GaussInt {
        GaussInt {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    /// The four unit multiples `z, iz, -z, -iz`.
    pub fn associates(&self) -> [GaussInt; 4] {
        let a = self.clone();
        let b = self.mul_i();
        let c = -a.clone();
        let d = -b.clone();
        [a, b, c, d]
    }

    /// The unique associate in the half-open quadrant `re > 0, im >= 0`
    /// (or zero itself). Fixes a deterministic representative among the four
    /// unit multiples.
    pub fn canonical_associate(&self) -> GaussInt {
        if self.is_zero() {
            return GaussInt::zero();
        }
        for cand in self.associates() {
            if cand.re.is_positive() && !cand.im.is_negative() {
                return cand;
            }
        }
        unreachable!("one associate lies in the canonical quadrant");
    }

    /// Rounded quotient `self / other`, with remainder of smaller norm.
    fn div_round(&self, other: &GaussInt) -> GaussInt {
        let n = other.norm();
        let num = self * &other.conj();
        GaussInt {
            re: round_div(&num.re, &n),
            im: round_div(&num.im, &n),
        }
    }
}

/// Nearest-integer division of big integers, ties toward even quotients are
/// unnecessary: any nearest value keeps the Euclidean remainder small.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two_a: BigInt = a * 2;
    let two_b: BigInt = b * 2;
    let (q, r) = two_a.div_mod_floor(&two_b);
    // r in [0, 2b); round up when r >= b
    if &r >= b {
        q + 1
    } else {
        q
    }
}

impl Add for &GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Euclidean gcd in `Z[i]` by norm descent, returned as the canonical
/// associate. `gcd(0, 0) = 0`.
pub fn gauss_gcd(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let mut x = a.clone();
    let mut y = b.clone();
    while !y.is_zero() {
        let q = x.div_round(&y);
        let r = &x - &(&q * &y);
        debug_assert!(r.norm() < y.norm(), "norm must strictly descend");
        x = y;
        y = r;
    }
    x.canonical_associate()
}

/// gcd of a slice, canonical associate; unit results mean the slice is
/// coprime.
pub fn gauss_gcd_slice(xs: &[GaussInt]) -> GaussInt {
    let mut g = GaussInt::zero();
    for x in xs {
        g = gauss_gcd(&g, x);
        if g.is_unit() {
            break;
        }
    }
    g
}

/// Exact division; panics if `b` does not divide `a`.
pub fn gauss_div_exact(a: &GaussInt, b: &GaussInt) -> GaussInt {
    assert!(!b.is_zero(), "division by zero");
    let n = b.norm();
    let num = a * &b.conj();
    let (qr, rr) = num.re.div_rem(&n);
    let (qi, ri) = num.im.div_rem(&n);
    assert!(rr.is_zero() && ri.is_zero(), "inexact Gauss division");
    GaussInt { re: qr, im: qi }
}

/// An element of `Q[i]` with exact rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(re: i64, im: i64) -> Self {
        GaussRat {
            re: rint(re),
            im: rint(im),
        }
    }

    pub fn from_gauss_int(z: &GaussInt) -> Self {
        GaussRat {
            re: BigRational::from_integer(z.re.clone()),
            im: BigRational::from_integer(z.im.clone()),
        }
    }

    pub fn zero() -> Self {
        GaussRat::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(Rat::one(), Rat::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> GaussRat {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|^2`, exact.
    pub fn norm_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn add(&self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    pub fn sub(&self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    pub fn mul(&self, rhs: &GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    pub fn scale(&self, c: &Rat) -> GaussRat {
        GaussRat {
            re: &self.re * c,
            im: &self.im * c,
        }
    }

    pub fn neg(&self) -> GaussRat {
        GaussRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn div(&self, rhs: &GaussRat) -> GaussRat {
        let n = rhs.norm_sq();
        assert!(!n.is_zero(), "division by zero");
        self.mul(&rhs.conj()).scale(&n.recip())
    }

    /// Least common denominator of the real and imaginary parts.
    pub fn denominator(&self) -> BigInt {
        self.re.denom().lcm(self.im.denom())
    }

    pub fn to_f64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(
            crate::interval::rat_to_f64(&self.re),
            crate::interval::rat_to_f64(&self.im),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_small_cases() {
        // gcd(2, 2+2i) = associate of 2*gcd(1, 1+i) = ... = 1+i times unit? direct:
        // 2 = -i (1+i)^2, 2+2i = 2(1+i) = -i(1+i)^3, so gcd is (1+i)^2 ~ 2
        let g = gauss_gcd(&GaussInt::new(2, 0), &GaussInt::new(2, 2));
        assert_eq!(g.norm(), BigInt::from(4));
        // gcd(1+i, 1-i): 1-i = -i(1+i), so gcd ~ 1+i, norm 2
        let g = gauss_gcd(&GaussInt::new(1, 1), &GaussInt::new(1, -1));
        assert_eq!(g.norm(), BigInt::from(2));
        // coprime pair
        let g = gauss_gcd(&GaussInt::new(1, 0), &GaussInt::new(0, 1));
        assert!(g.is_unit());
    }

    #[test]
    fn canonical_associate_is_unique_fixed_point() {
        for re in -3i64..=3 {
            for im in -3i64..=3 {
                if re == 0 && im == 0 {
                    continue;
                }
                let z = GaussInt::new(re, im);
                let c = z.canonical_associate();
                assert!(c.re.is_positive() && !c.im.is_negative());
                assert_eq!(c.canonical_associate(), c);
                // exactly one associate is canonical
                let hits = z
                    .associates()
                    .iter()
                    .filter(|a| a.re.is_positive() && !a.im.is_negative())
                    .count();
                assert_eq!(hits, 1, "z = {z}");
            }
        }
    }

    /// Reference gcd: descend norms by trying all remainder candidates.
    fn gcd_oracle(a: &GaussInt, b: &GaussInt) -> BigInt {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            // brute-force a remainder of smaller norm
            let n = y.norm();
            let num = &x * &y.conj();
            let base_re = num.re.div_floor(&n);
            let base_im = num.im.div_floor(&n);
            let mut best: Option<GaussInt> = None;
            for dr in 0..=1i64 {
                for di in 0..=1i64 {
                    let q = GaussInt {
                        re: &base_re + BigInt::from(dr),
                        im: &base_im + BigInt::from(di),
                    };
                    let r = &x - &(&q * &y);
                    if r.norm() < n {
                        if best.as_ref().map_or(true, |b| r.norm() < b.norm()) {
                            best = Some(r);
                        }
                    }
                }
            }
            x = y;
            y = best.expect("some rounding gives a smaller remainder");
        }
        x.norm()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2500))]
        #[test]
        fn gcd_agrees_with_norm_descent_oracle(
            ar in -40i64..40, ai in -40i64..40, br in -40i64..40, bi in -40i64..40
        ) {
            let a = GaussInt::new(ar, ai);
            let b = GaussInt::new(br, bi);
            prop_assume!(!a.is_zero() || !b.is_zero());
            let g = gauss_gcd(&a, &b);
            prop_assert_eq!(g.norm(), gcd_oracle(&a, &b));
            // the gcd divides both inputs
            if !a.is_zero() {
                let q = gauss_div_exact(&a, &g);
                prop_assert_eq!(&(&q * &g), &a);
            }
            if !b.is_zero() {
                let q = gauss_div_exact(&b, &g);
                prop_assert_eq!(&(&q * &g), &b);
            }
        }
    }
}
