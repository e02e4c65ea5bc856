//! Projective points over the rationals and the Gauss rationals: visibility
//! tests, canonical integer representatives, and the two height functions.
//!
//! A nonzero lattice point is *visible* when no smaller lattice point lies on
//! the segment to the origin; equivalently its coordinate gcd is a unit.
//! Every rational projective point has a visible integer representative,
//! unique up to sign over `Z` and up to the four units over `Z[i]`. Heights
//! are stored as exact squared values; the infinite product over places
//! collapses to the representative's norm once the representative is visible,
//! so no prime factorization is ever needed.

use crate::gauss::{gauss_div_exact, gauss_gcd_slice, GaussInt, GaussRat};
use crate::interval::{gcd_slice, log2_rational, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PointError {
    #[error("the zero vector defines no projective point")]
    ZeroVector,
    #[error("coordinate count {got} does not match the expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}

/// True when the nonzero integer vector is visible from the origin, i.e. its
/// coordinate gcd is 1.
pub fn is_visible(coords: &[BigInt]) -> Result<bool, PointError> {
    if coords.iter().all(|c| c.is_zero()) {
        return Err(PointError::ZeroVector);
    }
    Ok(gcd_slice(coords).is_one())
}

/// True when the nonzero Gauss-integer vector has unit gcd in `Z[i]`.
pub fn is_c_visible(coords: &[GaussInt]) -> Result<bool, PointError> {
    if coords.iter().all(|c| c.is_zero()) {
        return Err(PointError::ZeroVector);
    }
    Ok(gauss_gcd_slice(coords).is_unit())
}

/// A rational projective point held as its canonical visible integer
/// representative: coprime coordinates, first nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<BigInt>,
}

impl ProjectivePoint {
    /// Canonicalizes an arbitrary nonzero rational vector: clears
    /// denominators, divides by the integer gcd, and normalizes the sign of
    /// the first nonzero coordinate.
    pub fn from_rational(coords: &[Rat]) -> Result<Self, PointError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(PointError::ZeroVector);
        }
        let mut lcm = BigInt::one();
        for c in coords {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let g = gcd_slice(&ints);
        for v in &mut ints {
            *v /= &g;
        }
        let flip = ints
            .iter()
            .find(|v| !v.is_zero())
            .map(|v| v.is_negative())
            .unwrap_or(false);
        if flip {
            for v in &mut ints {
                *v = -v.clone();
            }
        }
        Ok(ProjectivePoint { coords: ints })
    }

    pub fn from_integers(coords: &[BigInt]) -> Result<Self, PointError> {
        let rats: Vec<Rat> = coords.iter().map(|c| Rat::from_integer(c.clone())).collect();
        Self::from_rational(&rats)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Squared Euclidean norm of the representative; this is the squared
    /// height of the projective point.
    pub fn height_squared(&self) -> Rat {
        let s: BigInt = self.coords.iter().map(|c| c * c).sum();
        Rat::from_integer(s)
    }

    pub fn height(&self) -> HeightRecord {
        HeightRecord::from_squared(self.height_squared())
    }
}

/// A `Q[i]` projective point held as its canonical visible representative:
/// unit coordinate gcd, with the representative fixed among its four unit
/// multiples by requiring the first nonzero coordinate to lie in the
/// half-open quadrant `re > 0, im >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussProjectivePoint {
    coords: Vec<GaussInt>,
}

impl GaussProjectivePoint {
    pub fn from_gauss_rational(coords: &[GaussRat]) -> Result<Self, PointError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(PointError::ZeroVector);
        }
        let mut lcm = BigInt::one();
        for c in coords {
            lcm = lcm.lcm(&c.denominator());
        }
        let ints: Vec<GaussInt> = coords
            .iter()
            .map(|c| {
                let re = c.re.numer() * (&lcm / c.re.denom());
                let im = c.im.numer() * (&lcm / c.im.denom());
                GaussInt { re, im }
            })
            .collect();
        Self::from_gauss_integers(&ints)
    }

    pub fn from_gauss_integers(coords: &[GaussInt]) -> Result<Self, PointError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(PointError::ZeroVector);
        }
        let g = gauss_gcd_slice(coords);
        let mut ints: Vec<GaussInt> = coords.iter().map(|c| gauss_div_exact(c, &g)).collect();
        // rotate so the first nonzero coordinate is canonical
        let lead = ints.iter().find(|c| !c.is_zero()).unwrap().clone();
        let target = lead.canonical_associate();
        let mut rotations = 0;
        let mut probe = lead;
        while probe != target {
            probe = probe.mul_i();
            rotations += 1;
            assert!(rotations < 4);
        }
        for _ in 0..rotations {
            for c in &mut ints {
                *c = c.mul_i();
            }
        }
        Ok(GaussProjectivePoint { coords: ints })
    }

    pub fn coords(&self) -> &[GaussInt] {
        &self.coords
    }

    /// All four visible representatives of this point.
    pub fn unit_orbit(&self) -> [Vec<GaussInt>; 4] {
        let a = self.coords.clone();
        let b: Vec<GaussInt> = a.iter().map(|c| c.mul_i()).collect();
        let c: Vec<GaussInt> = b.iter().map(|c| c.mul_i()).collect();
        let d: Vec<GaussInt> = c.iter().map(|c| c.mul_i()).collect();
        [a, b, c, d]
    }

    /// Squared scaled norm `sum w_i^2 |z_i|^2` for caller-provided rational
    /// squared weights; this is the squared scaled height of the point.
    pub fn weighted_height_squared(&self, weights_sq: &[Rat]) -> Result<Rat, PointError> {
        if weights_sq.len() != self.coords.len() {
            return Err(PointError::DimensionMismatch {
                got: self.coords.len(),
                expected: weights_sq.len(),
            });
        }
        let mut s = Rat::zero();
        for (z, w2) in self.coords.iter().zip(weights_sq) {
            s += Rat::from_integer(z.norm()) * w2;
        }
        Ok(s)
    }

    /// Squared Euclidean norm of the representative (plain height, squared).
    pub fn height_squared(&self) -> Rat {
        let s: BigInt = self.coords.iter().map(|c| c.norm()).sum();
        Rat::from_integer(s)
    }
}

/// A height together with its bit length. The squared height is exact; the
/// bit length `log2(height) = log2(height_squared)/2` is a float for
/// reporting only.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightRecord {
    pub height_squared: Rat,
    pub bit_length: f64,
}

impl HeightRecord {
    pub fn from_squared(height_squared: Rat) -> Self {
        assert!(height_squared.is_positive());
        let bit_length = 0.5 * log2_rational(&height_squared);
        HeightRecord {
            height_squared,
            bit_length,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{rat, rint};
    use proptest::prelude::*;

    fn bi(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn visibility_by_gcd() {
        assert!(is_visible(&bi(&[1, 2, 3, 4])).unwrap());
        assert!(!is_visible(&bi(&[2, 4, 6, 8])).unwrap());
        assert!(!is_visible(&bi(&[0, 0, 5])).unwrap());
        assert_eq!(is_visible(&bi(&[0, 0, 0])), Err(PointError::ZeroVector));
    }

    #[test]
    fn c_visibility_cases() {
        let v = vec![GaussInt::new(1, 0), GaussInt::new(0, 1)];
        assert!(is_c_visible(&v).unwrap());
        // both divisible by 2 up to units
        let v = vec![GaussInt::new(2, 0), GaussInt::new(2, 2)];
        assert!(!is_c_visible(&v).unwrap());
        // both divisible by the ramified prime 1+i
        let v = vec![GaussInt::new(1, 1), GaussInt::new(1, -1)];
        assert!(!is_c_visible(&v).unwrap());
        assert_eq!(
            is_c_visible(&[GaussInt::zero()]),
            Err(PointError::ZeroVector)
        );
    }

    #[test]
    fn canonicalization_cases() {
        let p = ProjectivePoint::from_rational(&[rat(1, 2), rat(1, 3)]).unwrap();
        assert_eq!(p.coords(), &bi(&[3, 2])[..]);
        let p = ProjectivePoint::from_rational(&[rint(2), rint(4)]).unwrap();
        assert_eq!(p.coords(), &bi(&[1, 2])[..]);
        let p = ProjectivePoint::from_rational(&[rint(-1), rint(0)]).unwrap();
        assert_eq!(p.coords(), &bi(&[1, 0])[..]);
    }

    #[test]
    fn heights_of_small_points() {
        let p = ProjectivePoint::from_rational(&[rint(3), rint(2)]).unwrap();
        assert_eq!(p.height_squared(), rint(13));
        let h = p.height();
        assert!((h.bit_length - 0.5 * 13f64.log2()).abs() < 1e-12);

        let p = ProjectivePoint::from_rational(&[rint(1), rint(0), rint(0)]).unwrap();
        assert_eq!(p.height_squared(), rint(1));
        assert_eq!(p.height().bit_length, 0.0);

        let p = ProjectivePoint::from_rational(&[rint(1), rint(2), rint(2)]).unwrap();
        assert_eq!(p.height_squared(), rint(9));
    }

    #[test]
    fn visible_representative_minimizes_norm() {
        // brute force over scalar multiples up to 10
        let p = ProjectivePoint::from_rational(&[rint(3), rint(-5), rint(7)]).unwrap();
        let base = p.height_squared();
        for k in 1..=10i64 {
            let scaled: Vec<Rat> = p.coords().iter().map(|c| Rat::from_integer(c * k)).collect();
            let q = ProjectivePoint::from_rational(&scaled).unwrap();
            assert_eq!(q.height_squared(), base);
            let norm: BigInt = scaled.iter().map(|c| c.numer() * c.numer()).sum();
            assert!(Rat::from_integer(norm) >= base);
        }
    }

    #[test]
    fn gauss_canonical_representative_cases() {
        // (2, 2+2i) has gcd of norm 4; dividing leaves a visible point
        let p = GaussProjectivePoint::from_gauss_integers(&[
            GaussInt::new(2, 0),
            GaussInt::new(2, 2),
        ])
        .unwrap();
        assert!(is_c_visible(p.coords()).unwrap());
        let lead = p.coords().iter().find(|c| !c.is_zero()).unwrap();
        assert!(lead.re.is_positive() && !lead.im.is_negative());

        // the four unit multiples all canonicalize identically
        let orbit = p.unit_orbit();
        for rep in &orbit {
            let q = GaussProjectivePoint::from_gauss_integers(rep).unwrap();
            assert_eq!(q, p);
        }
    }

    proptest! {
        #[test]
        fn canonicalization_is_idempotent_and_projective(
            a in -30i64..30, b in -30i64..30, c in -30i64..30,
            num in 1i64..7, den in 1i64..7
        ) {
            prop_assume!(a != 0 || b != 0 || c != 0);
            let v = [rint(a), rint(b), rint(c)];
            let p = ProjectivePoint::from_rational(&v).unwrap();
            // idempotent
            let again = ProjectivePoint::from_integers(p.coords()).unwrap();
            prop_assert_eq!(&again, &p);
            // invariant under nonzero rational scaling, including negative
            for sign in [1i64, -1] {
                let s = rat(sign * num, den);
                let scaled: Vec<Rat> = v.iter().map(|x| x * &s).collect();
                let q = ProjectivePoint::from_rational(&scaled).unwrap();
                prop_assert_eq!(&q, &p);
            }
        }

        #[test]
        fn gauss_canonicalization_kills_units_and_scalars(
            ar in -9i64..9, ai in -9i64..9, br in -9i64..9, bi2 in -9i64..9,
            sr in -3i64..3, si in -3i64..3
        ) {
            prop_assume!((ar, ai) != (0, 0) || (br, bi2) != (0, 0));
            prop_assume!((sr, si) != (0, 0));
            let v = [GaussInt::new(ar, ai), GaussInt::new(br, bi2)];
            let p = GaussProjectivePoint::from_gauss_integers(&v).unwrap();
            let s = GaussInt::new(sr, si);
            let scaled: Vec<GaussInt> = v.iter().map(|z| z * &s).collect();
            let q = GaussProjectivePoint::from_gauss_integers(&scaled).unwrap();
            prop_assert_eq!(q, p);
        }
    }
}
