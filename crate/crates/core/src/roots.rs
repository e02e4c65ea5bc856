//! Univariate polynomials over the Gauss rationals with certified complex
//! root isolation.
//!
//! Multiple roots of low-degree exact polynomials are themselves Gauss
//! rationals and are extracted exactly through gcd structure. Simple roots
//! are located by a floating-point solver and then certified and refined by
//! the interval Newton operator: when `N(Z) = m - p(m)/p'(Z)` maps a box `Z`
//! into its own interior, `Z` contains exactly one root, and the iteration
//! contracts quadratically.

use crate::cbox::CBox;
use crate::gauss::GaussRat;
use crate::interval::Rat;
use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootError {
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("root certification failed to converge")]
    CertificationFailed,
}

/// Dense univariate polynomial over `Q[i]`, little-endian coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussPoly {
    pub coeffs: Vec<GaussRat>,
}

impl GaussPoly {
    pub fn new(coeffs: Vec<GaussRat>) -> Self {
        let mut p = GaussPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero() {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: &GaussRat) -> GaussRat {
        let mut acc = GaussRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    pub fn eval_box(&self, z: &CBox) -> CBox {
        let mut acc = CBox::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&CBox::exact(c));
        }
        acc
    }

    pub fn eval_f64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_f64();
        }
        acc
    }

    pub fn derivative(&self) -> GaussPoly {
        if self.coeffs.len() <= 1 {
            return GaussPoly::new(vec![GaussRat::zero()]);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rat::from_integer(i.into())))
            .collect();
        GaussPoly::new(coeffs)
    }

    pub fn sub(&self, other: &GaussPoly) -> GaussPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![GaussRat::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].add(c);
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] = coeffs[i].sub(c);
        }
        GaussPoly::new(coeffs)
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self) -> GaussPoly {
        assert!(!self.is_zero());
        let lead = self.coeffs.last().unwrap().clone();
        GaussPoly::new(self.coeffs.iter().map(|c| c.div(&lead)).collect())
    }

    fn rem(&self, den: &GaussPoly) -> GaussPoly {
        assert!(!den.is_zero());
        let mut rem = self.clone();
        let dd = den.degree();
        let lead = den.coeffs.last().unwrap().clone();
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let factor = rem.coeffs.last().unwrap().div(&lead);
            for i in 0..=dd {
                let t = den.coeffs[i].mul(&factor);
                rem.coeffs[i + shift] = rem.coeffs[i + shift].sub(&t);
            }
            // force the leading coefficient to cancel exactly
            rem.coeffs.pop();
            rem.trim();
            if rem.degree() < dd {
                break;
            }
        }
        rem
    }

    /// Monic gcd by the Euclidean algorithm over `Q[i]`.
    pub fn gcd(&self, other: &GaussPoly) -> GaussPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// The square-free part `p / gcd(p, p')`, monic.
    pub fn squarefree_part(&self) -> GaussPoly {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        self.div_exact(&g).monic()
    }

    /// Exact quotient; panics when the division is inexact.
    pub fn div_exact(&self, den: &GaussPoly) -> GaussPoly {
        assert!(!den.is_zero());
        let mut rem = self.clone();
        let dd = den.degree();
        let lead = den.coeffs.last().unwrap().clone();
        let mut q = vec![GaussRat::zero(); self.degree().saturating_sub(dd) + 1];
        while !rem.is_zero() && rem.degree() >= dd {
            let shift = rem.degree() - dd;
            let factor = rem.coeffs.last().unwrap().div(&lead);
            q[shift] = factor.clone();
            for i in 0..=dd {
                let t = den.coeffs[i].mul(&factor);
                rem.coeffs[i + shift] = rem.coeffs[i + shift].sub(&t);
            }
            rem.coeffs.pop();
            rem.trim();
        }
        assert!(rem.is_zero(), "inexact polynomial division");
        GaussPoly::new(q)
    }

    /// True when the polynomial has a repeated complex root.
    pub fn has_multiple_root(&self) -> bool {
        if self.degree() <= 1 {
            return false;
        }
        self.gcd(&self.derivative()).degree() >= 1
    }

    /// Multiplicity of the exact value `r` as a root.
    pub fn multiplicity_at(&self, r: &GaussRat) -> usize {
        let mut m = 0;
        let mut p = self.clone();
        while !p.is_zero() && p.eval(r).is_zero() {
            m += 1;
            // deflate by (x - r)
            p = p.deflate(r);
        }
        m
    }

    fn deflate(&self, r: &GaussRat) -> GaussPoly {
        // synthetic division by (x - r); remainder must vanish
        let n = self.degree();
        if n == 0 {
            return GaussPoly::new(vec![GaussRat::zero()]);
        }
        let mut q = vec![GaussRat::zero(); n];
        let mut carry = GaussRat::zero();
        for i in (0..=n).rev() {
            let v = self.coeffs[i].add(&carry);
            if i == 0 {
                assert!(v.is_zero(), "deflation at a non-root");
            } else {
                q[i - 1] = v.clone();
                carry = v.mul(r);
            }
        }
        GaussPoly::new(q)
    }
}

/// Where a certified root lives.
#[derive(Debug, Clone, PartialEq)]
pub enum RootLocation {
    /// An exact Gauss-rational value.
    Exact(GaussRat),
    /// A box certified to contain exactly one root of the square-free factor.
    Boxed(CBox),
}

/// A certified root of a polynomial with its multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedRoot {
    pub location: RootLocation,
    pub multiplicity: usize,
}

impl CertifiedRoot {
    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.location, RootLocation::Exact(_))
    }

    pub fn as_box(&self) -> CBox {
        match &self.location {
            RootLocation::Exact(value) => CBox::exact(value),
            RootLocation::Boxed(enclosure) => enclosure.clone(),
        }
    }
}

/// Square-free decomposition `p = prod f_i^i` with pairwise coprime,
/// square-free `f_i` (Yun's algorithm). Returns the nonconstant factors as
/// `(f_i, i)` pairs.
pub fn squarefree_decomposition(p: &GaussPoly) -> Vec<(GaussPoly, usize)> {
    assert!(!p.is_zero());
    let p = p.monic();
    if p.degree() == 0 {
        return Vec::new();
    }
    let dp = p.derivative();
    let g = p.gcd(&dp);
    if g.degree() == 0 {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut c = p.div_exact(&g);
    let mut d = dp.div_exact(&g).sub(&c.derivative());
    let mut i = 1usize;
    while c.degree() >= 1 {
        let f = c.gcd(&if d.is_zero() {
            GaussPoly::new(vec![GaussRat::zero()])
        } else {
            d.clone()
        });
        if f.degree() >= 1 {
            out.push((f.clone(), i));
        }
        c = c.div_exact(&f);
        d = d.div_exact(&f).sub(&c.derivative());
        i += 1;
    }
    out
}

/// All complex roots of `p` with multiplicity, certified. Total multiplicity
/// equals the degree. Intended for desk-scale degrees (<= 6 or so).
pub fn isolate_roots(p: &GaussPoly, bits: u32) -> Result<Vec<CertifiedRoot>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    let mut roots: Vec<CertifiedRoot> = Vec::new();
    for (factor, mult) in squarefree_decomposition(p) {
        for mut root in isolate_simple_roots(&factor, bits)? {
            root.multiplicity = mult;
            roots.push(root);
        }
    }
    debug_assert_eq!(
        roots.iter().map(|r| r.multiplicity).sum::<usize>(),
        p.degree()
    );
    Ok(roots)
}

/// Roots of a square-free polynomial, each certified simple.
fn isolate_simple_roots(p: &GaussPoly, bits: u32) -> Result<Vec<CertifiedRoot>, RootError> {
    let deg = p.degree();
    if deg == 0 {
        return Ok(Vec::new());
    }
    if deg == 1 {
        let r = p.coeffs[0].neg().div(&p.coeffs[1]);
        return Ok(vec![CertifiedRoot {
            location: RootLocation::Exact(r),
            multiplicity: 1,
        }]);
    }
    let approx = durand_kerner(p);
    let dp = p.derivative();
    let mut out = Vec::new();
    for z0 in approx {
        let cert = certify_and_refine(p, &dp, z0, bits)?;
        out.push(cert);
    }
    // certified boxes must be pairwise disjoint, otherwise two approximations
    // converged to the same root
    for i in 0..out.len() {
        for j in (i + 1)..out.len() {
            if out[i].as_box().intersect(&out[j].as_box()).is_some() {
                return Err(RootError::CertificationFailed);
            }
        }
    }
    Ok(out)
}

/// Durand-Kerner iteration in f64; good starting points for certification.
fn durand_kerner(p: &GaussPoly) -> Vec<Complex64> {
    let deg = p.degree();
    let lead = p.coeffs[deg].to_f64();
    let mut zs: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::new(0.4, 0.9).powu(k as u32 + 1))
        .collect();
    for _ in 0..600 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let mut denom = lead;
            for j in 0..deg {
                if i != j {
                    denom *= zs[i] - zs[j];
                }
            }
            if denom.norm() < 1e-300 {
                continue;
            }
            let delta = p.eval_f64(zs[i]) / denom;
            zs[i] -= delta;
            moved = moved.max(delta.norm());
        }
        if moved < 1e-14 {
            break;
        }
    }
    zs
}

/// Interval Newton certification: grows a box around `z0` until the Newton
/// image contracts into it, then iterates the contraction down to `2^-bits`
/// width. Falls back through larger initial radii if the first attempt fails.
fn certify_and_refine(
    p: &GaussPoly,
    dp: &GaussPoly,
    z0: Complex64,
    bits: u32,
) -> Result<CertifiedRoot, RootError> {
    let mut radius = 1e-12_f64.max(z0.norm() * 1e-13);
    for _attempt in 0..40 {
        let z = CBox::from_f64_with_radius(z0, radius);
        if let Some(cert) = newton_contract(p, dp, &z) {
            let refined = newton_refine(p, dp, cert, bits);
            // an exact rational root reveals itself by the residual at the
            // midpoint being exactly zero
            let mid = refined.midpoint();
            if p.eval(&mid).is_zero() {
                return Ok(CertifiedRoot {
                    location: RootLocation::Exact(mid),
                    multiplicity: 1,
                });
            }
            return Ok(CertifiedRoot {
                location: RootLocation::Boxed(refined),
                multiplicity: 1,
            });
        }
        radius *= 8.0;
        if radius > 1e3 {
            break;
        }
    }
    Err(RootError::CertificationFailed)
}

/// One interval Newton step; `Some(contracted)` certifies a unique root.
fn newton_contract(p: &GaussPoly, dp: &GaussPoly, z: &CBox) -> Option<CBox> {
    let d = dp.eval_box(z);
    if d.abs_sq().lower() <= &Rat::zero() {
        return None;
    }
    let m = CBox::exact(&z.midpoint());
    let image = m.sub(&p.eval_box(&m.clone()).div(&d));
    // strict containment in the interior certifies existence and uniqueness
    if z.contains_box(&image)
        && image.re.lower() > z.re.lower()
        && image.re.upper() < z.re.upper()
        && image.im.lower() > z.im.lower()
        && image.im.upper() < z.im.upper()
    {
        Some(image)
    } else {
        None
    }
}

/// Contract a certified box until its half-width drops below `2^-bits`.
fn newton_refine(p: &GaussPoly, dp: &GaussPoly, mut z: CBox, bits: u32) -> CBox {
    let tol = Rat::new(1.into(), num_bigint::BigInt::from(1) << bits);
    for _ in 0..(bits as usize + 8) {
        if z.radius() < tol {
            break;
        }
        let d = dp.eval_box(&z);
        if !d.abs_sq().is_positive() {
            break;
        }
        let m = CBox::exact(&z.midpoint());
        let image = m.sub(&p.eval_box(&m).div(&d));
        match image.intersect(&z) {
            Some(next) => z = next.round_out(4 * bits),
            None => break,
        }
    }
    z
}

/// Refine an already-certified enclosure further (used when a census
/// comparison straddles and needs more precision).
pub fn refine_enclosure(p: &GaussPoly, z: &CBox, bits: u32) -> CBox {
    newton_refine(p, &p.derivative(), z.clone(), bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    fn gi(re: i64, im: i64) -> GaussRat {
        GaussRat::from_int(re, im)
    }

    fn poly(coeffs: &[(i64, i64)]) -> GaussPoly {
        GaussPoly::new(coeffs.iter().map(|&(a, b)| gi(a, b)).collect())
    }

    #[test]
    fn linear_roots_are_exact() {
        // 2x - (1 + i) = 0 -> x = (1+i)/2
        let p = poly(&[(-1, -1), (2, 0)]);
        let roots = isolate_roots(&p, 64).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 1);
        match &roots[0].location {
            RootLocation::Exact(value) => {
                assert_eq!(value, &GaussRat::new(rat(1, 2), rat(1, 2)));
            }
            _ => panic!("expected exact root"),
        }
    }

    #[test]
    fn quadratic_with_simple_integer_roots() {
        // x^2 - 1
        let p = poly(&[(-1, 0), (0, 0), (1, 0)]);
        let roots = isolate_roots(&p, 64).unwrap();
        assert_eq!(roots.len(), 2);
        let mut found = [false, false];
        for r in &roots {
            let b = r.as_box();
            if b.contains_value(&gi(1, 0)) {
                found[0] = true;
            }
            if b.contains_value(&gi(-1, 0)) {
                found[1] = true;
            }
        }
        assert!(found[0] && found[1]);
    }

    #[test]
    fn double_root_detected_exactly() {
        // (x - 1)^2 = x^2 - 2x + 1
        let p = poly(&[(1, 0), (-2, 0), (1, 0)]);
        assert!(p.has_multiple_root());
        let roots = isolate_roots(&p, 64).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        match &roots[0].location {
            RootLocation::Exact(value) => assert_eq!(value, &gi(1, 0)),
            _ => panic!("expected exact double root"),
        }
    }

    #[test]
    fn repeated_irrational_factor() {
        // (x^2 - 2)^2: two distinct boxed roots of multiplicity 2
        let p = poly(&[(4, 0), (0, 0), (-4, 0), (0, 0), (1, 0)]);
        let roots = isolate_roots(&p, 80).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert_eq!(r.multiplicity, 2);
            let v = r.as_box().to_f64();
            assert!((v.re.abs() - 2f64.sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn triple_root_of_cubic() {
        // (x + i)^3 = x^3 + 3i x^2 - 3x - i
        let p = poly(&[(0, -1), (-3, 0), (0, 3), (1, 0)]);
        let roots = isolate_roots(&p, 64).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity(), 3);
    }

    #[test]
    fn irrational_roots_get_tight_boxes() {
        // x^2 - 2
        let p = poly(&[(-2, 0), (0, 0), (1, 0)]);
        let roots = isolate_roots(&p, 96).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            match r {
                CertifiedRoot::Simple { enclosure } => {
                    assert!(enclosure.radius() < rat(1, 1i64 << 62));
                    let v = enclosure.to_f64();
                    assert!((v.re.abs() - 2f64.sqrt()).abs() < 1e-12);
                    assert!(v.im.abs() < 1e-12);
                }
                _ => panic!("sqrt(2) is not Gauss-rational"),
            }
        }
    }

    #[test]
    fn complex_conjugate_pair() {
        // x^2 + 1: roots +-i are Gauss-rational and should come out exact
        let p = poly(&[(1, 0), (0, 0), (1, 0)]);
        let roots = isolate_roots(&p, 64).unwrap();
        assert_eq!(roots.len(), 2);
        let mut seen = 0;
        for r in &roots {
            let b = r.as_box();
            if b.contains_value(&gi(0, 1)) || b.contains_value(&gi(0, -1)) {
                seen += 1;
            }
        }
        assert_eq!(seen, 2);
    }

    #[test]
    fn bezout_count_with_multiplicity() {
        // x^3 - x^2: roots 0 (double), 1 (simple)
        let p = poly(&[(0, 0), (0, 0), (-1, 0), (1, 0)]);
        let roots = isolate_roots(&p, 64).unwrap();
        let total: usize = roots.iter().map(|r| r.multiplicity()).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let p = GaussPoly::new(vec![GaussRat::zero()]);
        assert_eq!(isolate_roots(&p, 32), Err(RootError::ZeroPolynomial));
    }

    #[test]
    fn gcd_and_squarefree() {
        // p = (x-1)^2 (x+2), p' shares (x-1)
        let p = poly(&[(2, 0), (-3, 0), (0, 0), (1, 0)]);
        let sf = p.squarefree_part();
        assert_eq!(sf.degree(), 2);
        assert!(sf.eval(&gi(1, 0)).is_zero());
        assert!(sf.eval(&gi(-2, 0)).is_zero());
    }
}
