//! Exact linear algebra for small square matrices: Frobenius and operator
//! norms, certified singular-value enclosures, condition numbers, and the
//! Fubini-Study distance to the singular variety.
//!
//! Singular values are located through the characteristic polynomial of the
//! Gram matrix, with Sturm-sequence sign counting over the rationals. That
//! makes threshold comparisons like `sigma_min <= eps * frobenius` exact
//! rational decisions, which the censuses rely on.

use crate::interval::{rat, rint, BoundValue, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix text is malformed: {0}")]
    Parse(String),
    #[error("row lengths differ or matrix is not square")]
    Shape,
}

/// A square matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    pub n: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(n: usize, entries: Vec<Rat>) -> Result<Self, MatrixError> {
        if entries.len() != n * n || n == 0 {
            return Err(MatrixError::Shape);
        }
        Ok(RatMatrix { n, entries })
    }

    pub fn from_i64(n: usize, vals: &[i64]) -> Self {
        RatMatrix::new(n, vals.iter().map(|&v| rint(v)).collect()).unwrap()
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix {
            n,
            entries: vec![Rat::zero(); n * n],
        };
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                *out.at_mut(i, j) = self.at(j, i).clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = RatMatrix {
            n,
            entries: vec![Rat::zero(); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a * rhs.at(k, j);
                    *out.at_mut(i, j) += t;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        RatMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn trace(&self) -> Rat {
        (0..self.n).map(|i| self.at(i, i).clone()).sum()
    }

    /// Exact squared Frobenius norm.
    pub fn frobenius_sq(&self) -> Rat {
        self.entries.iter().map(|e| e * e).sum()
    }

    /// Frobenius norm enclosure.
    pub fn frobenius(&self, bits: u32) -> BoundValue {
        BoundValue::exact(self.frobenius_sq()).sqrt(bits)
    }

    /// Exact determinant by fraction-free style expansion (sizes are small).
    pub fn det(&self) -> Rat {
        let n = self.n;
        match n {
            1 => self.at(0, 0).clone(),
            2 => self.at(0, 0) * self.at(1, 1) - self.at(0, 1) * self.at(1, 0),
            _ => {
                // Laplace expansion along the first row
                let mut acc = Rat::zero();
                for j in 0..n {
                    if self.at(0, j).is_zero() {
                        continue;
                    }
                    let minor = self.minor(0, j);
                    let term = self.at(0, j) * minor.det();
                    if j % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            }
        }
    }

    fn minor(&self, row: usize, col: usize) -> RatMatrix {
        let n = self.n;
        let mut e = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == row {
                continue;
            }
            for j in 0..n {
                if j == col {
                    continue;
                }
                e.push(self.at(i, j).clone());
            }
        }
        RatMatrix {
            n: n - 1,
            entries: e,
        }
    }

    /// Gram matrix `M^T M`.
    pub fn gram(&self) -> RatMatrix {
        self.transpose().mul(self)
    }

    /// Characteristic polynomial coefficients of `self`, little-endian:
    /// `p(x) = c[0] + c[1] x + ... + c[n] x^n` with `c[n] = 1`.
    /// Faddeev-LeVerrier over the rationals.
    pub fn char_poly(&self) -> Vec<Rat> {
        let n = self.n;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut m = RatMatrix::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let c = -m.trace() / rint(k as i64);
            coeffs[n - k] = c.clone();
            for i in 0..n {
                *m.at_mut(i, i) += &c;
            }
        }
        coeffs
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.at(i, j).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}

impl FromStr for RatMatrix {
    type Err = MatrixError;

    /// Rows separated by `;`, entries by `,`, rational entries as `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rows: Vec<&str> = s.trim().split(';').collect();
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let cells: Vec<&str> = row.trim().split(',').collect();
            if cells.len() != n {
                return Err(MatrixError::Shape);
            }
            for cell in cells {
                let value = parse_rational(cell.trim())
                    .ok_or_else(|| MatrixError::Parse(cell.trim().to_string()))?;
                entries.push(value);
            }
        }
        RatMatrix::new(n, entries)
    }
}

pub fn parse_rational(s: &str) -> Option<Rat> {
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).ok()?;
        let d = BigInt::from_str(den.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n = BigInt::from_str(s).ok()?;
        Some(Rat::from_integer(n))
    }
}

// ---------------------------------------------------------------------------
// Sturm sequences over the rationals
// ---------------------------------------------------------------------------

/// Dense rational polynomial, little-endian coefficients.
pub type RatPoly = Vec<Rat>;

pub fn poly_eval(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn poly_derivative(p: &[Rat]) -> RatPoly {
    if p.len() <= 1 {
        return vec![Rat::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rint(i as i64))
        .collect()
}

fn poly_trim(mut p: RatPoly) -> RatPoly {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn poly_is_zero(p: &[Rat]) -> bool {
    p.iter().all(|c| c.is_zero())
}

/// Remainder of polynomial division.
fn poly_rem(num: &[Rat], den: &[Rat]) -> RatPoly {
    let den = poly_trim(den.to_vec());
    assert!(!poly_is_zero(&den));
    let mut rem = poly_trim(num.to_vec());
    let dd = den.len() - 1;
    let lead = den.last().unwrap().clone();
    while rem.len() - 1 >= dd && !poly_is_zero(&rem) {
        let shift = rem.len() - 1 - dd;
        let factor = rem.last().unwrap() / &lead;
        for i in 0..=dd {
            let t = &den[i] * &factor;
            rem[i + shift] -= t;
        }
        rem = poly_trim(rem);
        if rem.len() - 1 < dd || (rem.len() == 1 && rem[0].is_zero()) {
            break;
        }
    }
    rem
}

/// Sturm chain of `p`.
pub fn sturm_chain(p: &[Rat]) -> Vec<RatPoly> {
    let p0 = poly_trim(p.to_vec());
    let mut chain = vec![p0.clone()];
    if p0.len() <= 1 {
        return chain;
    }
    let mut prev = p0;
    let mut cur = poly_trim(poly_derivative(&prev));
    while !poly_is_zero(&cur) {
        chain.push(cur.clone());
        let mut r = poly_rem(&prev, &cur);
        for c in &mut r {
            *c = -c.clone();
        }
        let r = poly_trim(r);
        prev = cur;
        if poly_is_zero(&r) {
            break;
        }
        cur = r;
    }
    chain
}

fn sign_variations(chain: &[RatPoly], x: &Rat) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = poly_eval(p, x);
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(prev) = last {
            if prev != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

/// Number of distinct real roots of the chain's polynomial in `(a, b]`.
pub fn sturm_count_roots(chain: &[RatPoly], a: &Rat, b: &Rat) -> usize {
    assert!(a <= b);
    sign_variations(chain, a) - sign_variations(chain, b)
}

/// Certified enclosure of the smallest root of `p` inside `[lo_init, hi_init]`
/// (which must bracket all roots of interest), refined to width
/// `<= (hi_init - lo_init) * 2^-bits`. Returns `None` when `p` has no root in
/// the window.
pub fn smallest_root_enclosure(
    p: &[Rat],
    lo_init: &Rat,
    hi_init: &Rat,
    bits: u32,
) -> Option<BoundValue> {
    let chain = sturm_chain(p);
    // exact hit at the left endpoint
    if poly_eval(p, lo_init).is_zero() {
        return Some(BoundValue::exact(lo_init.clone()));
    }
    if sturm_count_roots(&chain, lo_init, hi_init) == 0 {
        return None;
    }
    let mut lo = lo_init.clone();
    let mut hi = hi_init.clone();
    let tol = (hi_init - lo_init) * rat(1, 2).pow(bits as i32);
    while &hi - &lo > tol {
        let mid = (&hi + &lo) / rint(2);
        if poly_eval(p, &mid).is_zero() {
            return Some(BoundValue::exact(mid));
        }
        if sturm_count_roots(&chain, &lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(BoundValue::new(lo, hi))
}

/// Certified enclosure of the largest root of `p` inside `[lo_init, hi_init]`.
pub fn largest_root_enclosure(
    p: &[Rat],
    lo_init: &Rat,
    hi_init: &Rat,
    bits: u32,
) -> Option<BoundValue> {
    // mirror x -> -x and take the smallest root
    let mirrored: RatPoly = p
        .iter()
        .enumerate()
        .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
        .collect();
    let r = smallest_root_enclosure(&mirrored, &-hi_init.clone(), &-lo_init.clone(), bits)?;
    Some(r.neg())
}

// ---------------------------------------------------------------------------
// Singular values and condition numbers
// ---------------------------------------------------------------------------

/// A condition number, possibly infinite at singular inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum ConditionNumber {
    Finite(BoundValue),
    Infinite,
}

impl ConditionNumber {
    pub fn as_finite(&self) -> Option<&BoundValue> {
        match self {
            ConditionNumber::Finite(v) => Some(v),
            ConditionNumber::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ConditionNumber::Infinite)
    }
}

impl fmt::Display for ConditionNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionNumber::Finite(v) => write!(f, "{v}"),
            ConditionNumber::Infinite => write!(f, "inf"),
        }
    }
}

/// Certified enclosures of the extreme singular values of `m`. For singular
/// matrices the lower extreme is exactly zero.
pub fn singular_extremes(m: &RatMatrix, bits: u32) -> (BoundValue, BoundValue) {
    if m.is_zero() {
        return (BoundValue::zero(), BoundValue::zero());
    }
    let gram = m.gram();
    let p = gram.char_poly();
    let hi = gram.trace(); // upper bound for every eigenvalue of the Gram matrix
    let det = m.det();
    let lambda_min = if det.is_zero() {
        BoundValue::zero()
    } else {
        smallest_root_enclosure(&p, &Rat::zero(), &hi, bits + 8)
            .expect("Gram matrix has eigenvalues in [0, trace]")
    };
    let lambda_max = largest_root_enclosure(&p, &Rat::zero(), &hi, bits + 8)
        .expect("Gram matrix has eigenvalues in [0, trace]");
    (lambda_min.sqrt(bits), lambda_max.sqrt(bits))
}

/// Operator condition number `sigma_max / sigma_min`.
pub fn condition_k(m: &RatMatrix, bits: u32) -> ConditionNumber {
    if m.det().is_zero() {
        return ConditionNumber::Infinite;
    }
    let (smin, smax) = singular_extremes(m, bits + 16);
    ConditionNumber::Finite(smax.div(&smin).round_out(bits))
}

/// Frobenius-scaled condition number `frobenius / sigma_min`.
pub fn condition_mu(m: &RatMatrix, bits: u32) -> ConditionNumber {
    if m.det().is_zero() {
        return ConditionNumber::Infinite;
    }
    let (smin, _) = singular_extremes(m, bits + 16);
    let frob = m.frobenius(bits + 16);
    ConditionNumber::Finite(frob.div(&smin).round_out(bits))
}

/// Fubini-Study distance of the projective class of `m` to the singular
/// variety: `sigma_min / frobenius`, the reciprocal of the scaled condition
/// number. Zero for singular matrices.
pub fn fs_distance_to_singular(m: &RatMatrix, bits: u32) -> BoundValue {
    assert!(!m.is_zero(), "distance undefined for the zero matrix");
    if m.det().is_zero() {
        return BoundValue::zero();
    }
    let (smin, _) = singular_extremes(m, bits + 16);
    let frob = m.frobenius(bits + 16);
    smin.div(&frob).round_out(bits)
}

/// Full conditioning summary of a matrix.
#[derive(Debug, Clone)]
pub struct ConditionRecord {
    pub sigma_min: BoundValue,
    pub sigma_max: BoundValue,
    pub frobenius: BoundValue,
    pub k: ConditionNumber,
    pub mu: ConditionNumber,
}

pub fn condition_record(m: &RatMatrix, bits: u32) -> ConditionRecord {
    let (sigma_min, sigma_max) = singular_extremes(m, bits);
    let frobenius = m.frobenius(bits);
    ConditionRecord {
        sigma_min,
        sigma_max,
        frobenius,
        k: condition_k(m, bits),
        mu: condition_mu(m, bits),
    }
}

/// Exact decision of `sigma_min(M)^2 <= c` via root counting of the Gram
/// characteristic polynomial on `[0, c]`.
pub fn sigma_min_sq_leq(m: &RatMatrix, c: &Rat) -> bool {
    if c.is_negative() {
        return false;
    }
    let gram = m.gram();
    let p = gram.char_poly();
    if poly_eval(&p, &Rat::zero()).is_zero() {
        return true; // singular
    }
    let chain = sturm_chain(&p);
    sturm_count_roots(&chain, &Rat::zero(), c) >= 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(v: &BoundValue, x: f64, tol: f64) {
        let (lo, hi) = v.to_f64_pair();
        assert!(lo - tol <= x && x <= hi + tol, "{x} not in [{lo}, {hi}]");
    }

    #[test]
    fn frobenius_small_cases() {
        let i2 = RatMatrix::identity(2);
        close(&i2.frobenius(64), 2f64.sqrt(), 1e-15);
        let d = RatMatrix::from_i64(2, &[3, 0, 0, 4]);
        assert_eq!(d.frobenius_sq(), rint(25));
        close(&d.frobenius(64), 5.0, 0.0);
        let z = RatMatrix::from_i64(2, &[0, 0, 0, 0]);
        assert_eq!(z.frobenius_sq(), rint(0));
    }

    #[test]
    fn singular_extremes_diagonal() {
        let d = RatMatrix::from_i64(2, &[3, 0, 0, 4]);
        let (lo, hi) = singular_extremes(&d, 64);
        assert!(lo.contains(&rint(3)));
        assert!(hi.contains(&rint(4)));
    }

    #[test]
    fn singular_extremes_rank_deficient() {
        let m = RatMatrix::from_i64(2, &[1, 0, 0, 0]);
        let (lo, hi) = singular_extremes(&m, 64);
        assert!(lo.contains(&rint(0)));
        assert!(lo.width().is_zero());
        assert!(hi.contains(&rint(1)));
    }

    #[test]
    fn condition_numbers_small_cases() {
        let bits = 64;
        let i3 = RatMatrix::identity(3);
        close(condition_k(&i3, bits).as_finite().unwrap(), 1.0, 1e-15);
        let d = RatMatrix::from_i64(2, &[2, 0, 0, 1]);
        close(condition_k(&d, bits).as_finite().unwrap(), 2.0, 1e-15);
        close(condition_mu(&d, bits).as_finite().unwrap(), 5f64.sqrt(), 1e-12);
        let big = RatMatrix::from_i64(2, &[1000, 0, 0, 1]);
        close(condition_k(&big, bits).as_finite().unwrap(), 1000.0, 1e-9);
        let i2 = RatMatrix::identity(2);
        close(condition_mu(&i2, bits).as_finite().unwrap(), 2f64.sqrt(), 1e-12);
        assert!(condition_k(&RatMatrix::from_i64(2, &[1, 1, 1, 1]), bits).is_infinite());
    }

    #[test]
    fn fs_distance_cases() {
        let bits = 64;
        let i2 = RatMatrix::identity(2);
        close(&fs_distance_to_singular(&i2, bits), 1.0 / 2f64.sqrt(), 1e-12);
        let d = RatMatrix::from_i64(2, &[2, 0, 0, 1]);
        close(&fs_distance_to_singular(&d, bits), 1.0 / 5f64.sqrt(), 1e-12);
        let s = RatMatrix::from_i64(2, &[1, 2, 2, 4]);
        assert_eq!(fs_distance_to_singular(&s, bits), BoundValue::zero());
    }

    #[test]
    fn record_invariants() {
        for vals in [
            [1i64, 2, 3, 4],
            [5, -1, 2, 2],
            [7, 0, 0, 7],
            [1, 1, 0, 1],
        ] {
            let m = RatMatrix::from_i64(2, &vals);
            let r = condition_record(&m, 64);
            assert!(r.sigma_min.lower() <= r.sigma_max.upper());
            assert!(r.frobenius.upper() >= r.sigma_max.lower());
            if let (ConditionNumber::Finite(k), ConditionNumber::Finite(mu)) = (&r.k, &r.mu) {
                assert!(k.lower() <= mu.upper(), "k <= mu must hold");
            }
        }
    }

    #[test]
    fn scale_invariance_of_condition_numbers() {
        let bits = 80;
        let m = RatMatrix::from_i64(3, &[2, 1, 0, -1, 3, 2, 4, 0, 1]);
        let s = m.scale(&rat(-7, 3));
        let k1 = condition_k(&m, bits);
        let k2 = condition_k(&s, bits);
        let overlap = k1
            .as_finite()
            .unwrap()
            .intersect(k2.as_finite().unwrap());
        assert!(overlap.is_some());
        let m1 = condition_mu(&m, bits);
        let m2 = condition_mu(&s, bits);
        assert!(m1.as_finite().unwrap().intersect(m2.as_finite().unwrap()).is_some());
    }

    #[test]
    fn sturm_oracle_on_random_3x3() {
        // singular extremes must match high-precision re-evaluation
        let m = RatMatrix::new(
            3,
            vec![
                rat(1, 2), rint(3), rat(-2, 5),
                rint(1), rat(7, 3), rint(0),
                rat(4, 7), rint(-1), rat(5, 2),
            ],
        )
        .unwrap();
        let (lo1, hi1) = singular_extremes(&m, 48);
        let (lo2, hi2) = singular_extremes(&m, 120);
        assert!(lo1.contains_interval(&lo2));
        assert!(hi1.contains_interval(&hi2));
        assert!(lo2.width() < rat(1, 1i64 << 40));
        // determinant sanity: smin * smax <= |det| <= smax^n (n = 3 needs all three;
        // check the weak two-sided bound smin^3 <= |det| <= smax^3)
        let det = m.det();
        let d = det.abs();
        assert!(lo2.powi(3).lower() <= &d);
        assert!(hi2.powi(3).upper() >= &d);
    }

    #[test]
    fn sigma_min_threshold_matches_enclosure() {
        let m = RatMatrix::from_i64(2, &[3, 1, -2, 4]);
        let (smin, _) = singular_extremes(&m, 96);
        let s2 = smin.square();
        let below = s2.lower() - rat(1, 1000);
        let above = s2.upper() + rat(1, 1000);
        assert!(!sigma_min_sq_leq(&m, &below));
        assert!(sigma_min_sq_leq(&m, &above));
        // det-zero case
        let s = RatMatrix::from_i64(2, &[1, 2, 2, 4]);
        assert!(sigma_min_sq_leq(&s, &Rat::zero()));
    }

    #[test]
    fn matrix_text_roundtrip() {
        let m: RatMatrix = "1/2,3;-2,5/7".parse().unwrap();
        assert_eq!(m.at(0, 0), &rat(1, 2));
        assert_eq!(m.at(1, 1), &rat(5, 7));
        let s = m.to_string();
        let again: RatMatrix = s.parse().unwrap();
        assert_eq!(again, m);
        assert!("1,2;3".parse::<RatMatrix>().is_err());
        assert!("a,2;3,4".parse::<RatMatrix>().is_err());
    }

    #[test]
    fn det_bounds_by_singular_values_2x2() {
        for vals in [[2i64, 1, 0, 3], [1, -4, 2, 2], [5, 5, 5, 4]] {
            let m = RatMatrix::from_i64(2, &vals);
            let (lo, hi) = singular_extremes(&m, 96);
            let d = m.det().abs();
            // sigma_min * sigma_max = |det| for 2x2
            let prod = lo.mul(&hi);
            assert!(prod.contains(&d));
            assert!(hi.square().upper() >= &d);
        }
    }
}
