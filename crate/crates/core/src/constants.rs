//! Closed-form constants appearing in the tail bounds: unit-ball volumes,
//! Davenport projection constants, zeta values, component-count constants,
//! and the assembled bound formulas for the linear and polynomial censuses.
//!
//! Every real-valued constant is produced as a [`BoundValue`] enclosure;
//! integer constants (the component-count towers) are exact big integers.

use crate::interval::{rat, rint, BoundValue, Rat};
use crate::monomial::{binomial, homogeneous_exponents, multinomial};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Default working precision, in fractional bits, for enclosures.
pub const DEFAULT_BITS: u32 = 128;

/// Enclosure of pi via Machin's formula, rounded outward to `bits`.
pub fn pi(bits: u32) -> BoundValue {
    static CACHE: OnceLock<Mutex<HashMap<u32, BoundValue>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&bits) {
        return v.clone();
    }
    let work = bits + 16;
    let a = arctan_recip(5, work).scale(&rint(16));
    let b = arctan_recip(239, work).scale(&rint(4));
    let value = a.sub(&b).round_out(bits);
    cache.lock().unwrap().insert(bits, value.clone());
    value
}

/// Enclosure of `arctan(1/k)` from the alternating Gregory series; the first
/// omitted term bounds the truncation error.
fn arctan_recip(k: i64, bits: u32) -> BoundValue {
    let kk = rint(k * k);
    let mut term = rat(1, k);
    let mut sum = Rat::zero();
    let mut j = 0u32;
    loop {
        let contrib = &term / rint(2 * j as i64 + 1);
        if j % 2 == 0 {
            sum += &contrib;
        } else {
            sum -= &contrib;
        }
        term /= &kk;
        j += 1;
        let next = &term / rint(2 * j as i64 + 1);
        if next < rat(1, 2).pow((bits + 2) as i32) {
            // alternating series: result is between sum and sum +/- next
            return if j % 2 == 0 {
                BoundValue::new(sum.clone(), sum + next)
            } else {
                BoundValue::new(&sum - &next, sum)
            };
        }
    }
}

/// Enclosure of Euler's number.
pub fn euler_e(bits: u32) -> BoundValue {
    exp_rational(&rint(1), bits)
}

/// Enclosure of `exp(x)` for rational `x >= 0` from the Taylor series with an
/// explicit geometric tail bound.
pub fn exp_rational(x: &Rat, bits: u32) -> BoundValue {
    assert!(!x.is_negative(), "exp_rational requires x >= 0");
    let mut term = Rat::one();
    let mut sum = Rat::one();
    let mut k = 1u32;
    loop {
        term = term * x / rint(k as i64);
        sum += &term;
        k += 1;
        // once k > 2*x the ratio of successive terms is < 1/2
        let ratio_ok = rint(k as i64) > x * rint(2);
        if ratio_ok {
            let tail = &term * x / rint(k as i64) * rint(2);
            if tail < rat(1, 2).pow(bits as i32) {
                return BoundValue::new(sum.clone(), sum + tail).round_out(bits + 8);
            }
        }
        assert!(k < 10_000, "exp series failed to converge");
    }
}

/// Partial-sum cap for zeta enclosures. Tail width at the cap is about
/// `5e-7` for `s = 2` and below `1e-12` for `s >= 3`.
const ZETA_SUM_CAP: u64 = 2_000_000;

/// Enclosure of the Riemann zeta function at an integer `s >= 2`, from the
/// partial sum plus the integral tail bound `M^(1-s)/(s-1)`. The partial sum
/// length is chosen from `bits` but capped, so very high requested precisions
/// degrade gracefully to the cap's tail width (the enclosure stays rigorous).
pub fn zeta(s: u32, bits: u32) -> Result<BoundValue, ConstantError> {
    if s < 2 {
        return Err(ConstantError::ZetaArgumentTooSmall(s));
    }
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), BoundValue>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(s, bits)) {
        return Ok(v.clone());
    }

    // choose M with M^(1-s)/(s-1) <= 2^-bits, capped
    let target = 2f64.powi(-(bits.min(60) as i32));
    let m_needed = (1.0 / (target * (s as f64 - 1.0))).powf(1.0 / (s as f64 - 1.0));
    let m_cap = m_needed.min(ZETA_SUM_CAP as f64).max(16.0) as u64;

    let p = bits + 64;
    let scale = BigInt::one() << p;
    let mut lower_sum = BigInt::zero();
    let mut terms = 0u64;
    let mut m = 1u64;
    while m <= m_cap {
        let denom = BigInt::from(m).pow(s);
        if denom > scale {
            break;
        }
        lower_sum += &scale / denom;
        terms += 1;
        m += 1;
    }
    let m_stop = m; // first unsummed index
    let lower = Rat::new(lower_sum.clone(), scale.clone());
    // each floored term undershoots by < 2^-p
    let upper_partial = Rat::new(lower_sum + BigInt::from(terms), scale);
    // integral tail bound for m >= m_stop: sum_{m >= M} m^-s <= M^(1-s)/(s-1) + ... ;
    // use sum_{m > M-1} m^-s <= integral_{M-1}^inf x^-s dx = (M-1)^(1-s)/(s-1)
    let m_tail = rint((m_stop - 1) as i64);
    let tail = m_tail.pow(-((s as i32) - 1)) / rint((s - 1) as i64);
    let value = BoundValue::new(lower, upper_partial + tail);
    cache.lock().unwrap().insert((s, bits), value.clone());
    Ok(value)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConstantError {
    #[error("zeta enclosure requires s >= 2, got {0}")]
    ZetaArgumentTooSmall(u32),
}

/// Volume of the unit ball in `R^ell` as `r * pi^j` with exact rational `r`:
/// `j = floor(ell/2)`, and `r = 1/j!` for even `ell`,
/// `r = 2 * 4^j * j! / ell!` for odd `ell`.
fn ball_volume_parts(ell: u32) -> (Rat, u32) {
    if ell == 0 {
        return (Rat::one(), 0);
    }
    let j = ell / 2;
    if ell % 2 == 0 {
        (Rat::new(BigInt::one(), factorial(j)), j)
    } else {
        let num = BigInt::from(2) * BigInt::from(4).pow(j) * factorial(j);
        (Rat::new(num, factorial(ell)), j)
    }
}

fn factorial(n: u32) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

/// Enclosure of the volume `K_ell` of the unit ball in `R^ell`; `K_0 = 1`.
pub fn unit_ball_volume(ell: u32, bits: u32) -> BoundValue {
    let (r, j) = ball_volume_parts(ell);
    pi(bits + 16).powi(j).scale(&r).round_out(bits)
}

/// Davenport projection constant for Euclidean balls: the sum over proper
/// coordinate subsets of the projected unit-ball volumes,
/// `sum_{ell=0}^{m-1} C(m, ell) K_ell`.
pub fn davenport_ball_constant(m: u32, bits: u32) -> BoundValue {
    assert!(m >= 1);
    let work = bits + 16;
    let pi_iv = pi(work);
    // group by power of pi
    let mut coeff: Vec<Rat> = vec![Rat::zero(); (m as usize) / 2 + 1];
    for ell in 0..m {
        let (r, j) = ball_volume_parts(ell);
        let c = Rat::from_integer(binomial(m as u64, ell as u64));
        coeff[j as usize] += r * c;
    }
    let mut acc = BoundValue::zero();
    let mut pw = BoundValue::one();
    for c in coeff {
        acc = acc.add(&pw.scale(&c));
        pw = pw.mul(&pi_iv);
    }
    acc.round_out(bits)
}

/// Connected-component count bound for the regions of the linear census:
/// `(2 max(4, n))^(2n^4 + 4n^2)`, exact.
pub fn component_bound_linear(n: u32) -> BigInt {
    let base = BigInt::from(2 * n.max(4));
    let expo = 2 * n.pow(4) + 4 * n.pow(2);
    base.pow(expo)
}

/// Connected-component count bound for the regions of the polynomial census:
/// `max(8, 4(D+1))^(4 [N^2 + 3 (n+2)^2 (N+1)])`, exact.
pub fn component_bound_polysys(degrees: &[u32]) -> BigInt {
    let shape = DegreeShape::new(degrees);
    let n = shape.nvars as u32;
    let nn = shape.proj_dim as u32;
    let base = BigInt::from(8u32.max(4 * (shape.max_degree + 1)));
    let expo = 4 * (nn * nn + 3 * (n + 2) * (n + 2) * (nn + 1));
    base.pow(expo)
}

/// Dimensional data derived from a degree list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeShape {
    pub degrees: Vec<u32>,
    /// number of equations = number of affine variables
    pub nvars: usize,
    /// max degree
    pub max_degree: u32,
    /// Bezout number, product of the degrees
    pub bezout: BigInt,
    /// coefficient counts per equation
    pub coeff_counts: Vec<usize>,
    /// complex projective dimension: total coefficient count minus one
    pub proj_dim: usize,
}

impl DegreeShape {
    pub fn new(degrees: &[u32]) -> Self {
        assert!(!degrees.is_empty(), "empty degree list");
        assert!(degrees.iter().all(|&d| d >= 1), "degrees must be >= 1");
        let nvars = degrees.len();
        let coeff_counts: Vec<usize> = degrees
            .iter()
            .map(|&d| homogeneous_exponents(nvars + 1, d).len())
            .collect();
        let total: usize = coeff_counts.iter().sum();
        DegreeShape {
            degrees: degrees.to_vec(),
            nvars,
            max_degree: *degrees.iter().max().unwrap(),
            bezout: degrees.iter().fold(BigInt::one(), |a, &d| a * BigInt::from(d)),
            coeff_counts,
            proj_dim: total - 1,
        }
    }

    /// Real determinant of the weight matrix of the scaled inner product:
    /// the product over all monomials of `1/multinomial`, squared exponents
    /// coming from the real embedding of each complex coordinate. Exact.
    pub fn weight_det_real(&self) -> Rat {
        let mut det = Rat::one();
        for &d in &self.degrees {
            for exps in homogeneous_exponents(self.nvars + 1, d) {
                det /= Rat::from_integer(multinomial(&exps));
            }
        }
        det
    }

    /// Condition-tube volume constant `n^3 (n+1) N (N-1) * prod d_i`, exact.
    pub fn tube_volume_constant(&self) -> BigInt {
        let n = BigInt::from(self.nvars);
        let nn = BigInt::from(self.proj_dim);
        n.pow(3) * (BigInt::from(self.nvars) + 1) * &nn * (&nn - 1) * &self.bezout
    }
}

/// `n^(5/2)` as an enclosure.
pub fn n_five_halves(n: u32, bits: u32) -> BoundValue {
    BoundValue::from_int((n * n) as i64).mul(&BoundValue::from_int(n as i64).sqrt(bits))
}

/// Constants of the linear-case tail bound at matrix size `n` and threshold
/// `epsilon`.
#[derive(Debug, Clone)]
pub struct LinearBoundConstants {
    pub n: u32,
    pub epsilon: Rat,
    /// component-count constant, exact
    pub component_bound: BigInt,
    /// numerator constant of the discrepancy term
    pub b: BoundValue,
    /// offset constant of the discrepancy term
    pub c: BoundValue,
    /// projective-count discrepancy constant at threshold one
    pub l_one: BoundValue,
    /// projective-count discrepancy constant at threshold `epsilon`
    pub l_eps: BoundValue,
}

/// Evaluates the linear tail-bound constants:
/// `B(eps, n) = zeta(n^2) [ (T_n + eps n^(5/2)) S^(n^2) / (K_{n^2} zeta(n^2-1))
///              + 2 eps n^(5/2) + 2 / K_{n^2} ]`,
/// `C(n) = zeta(n^2) [ S^(n^2) / (K_{n^2} zeta(n^2-1)) + 1 + 1/K_{n^2} ]`,
/// `L(1, n) = S^(n^2) / (2 zeta(n^2-1)) + K_{n^2}/2`,
/// `L(eps, n) = T_n S^(n^2) / (2 zeta(n^2-1)) + eps n^(5/2) K_{n^2} / 2`.
pub fn linear_bound_constants(
    n: u32,
    epsilon: &Rat,
    bits: u32,
) -> Result<LinearBoundConstants, ConstantError> {
    assert!(n >= 2, "matrix size must be at least 2");
    assert!(epsilon.is_positive() || epsilon.is_zero());
    let m = n * n;
    let t_n = component_bound_linear(n);
    let t_iv = BoundValue::exact(Rat::from_integer(t_n.clone()));
    let k = unit_ball_volume(m, bits);
    let s = davenport_ball_constant(m, bits);
    let z_m = zeta(m, bits)?;
    let z_m1 = zeta(m - 1, bits)?;
    let en = n_five_halves(n, bits).scale(epsilon);
    let s_over_kz = s.div(&k.mul(&z_m1));

    let b = z_m.mul(
        &t_iv
            .add(&en)
            .mul(&s_over_kz)
            .add(&en.scale(&rint(2)))
            .add(&k.recip().scale(&rint(2))),
    );
    let c = z_m.mul(&s_over_kz.add(&BoundValue::one()).add(&k.recip()));
    let l_one = s.div(&z_m1.scale(&rint(2))).add(&k.scale(&rat(1, 2)));
    let l_eps = t_iv
        .mul(&s)
        .div(&z_m1.scale(&rint(2)))
        .add(&en.mul(&k).scale(&rat(1, 2)));

    Ok(LinearBoundConstants {
        n,
        epsilon: epsilon.clone(),
        component_bound: t_n,
        b: b.round_out(bits),
        c: c.round_out(bits),
        l_one: l_one.round_out(bits),
        l_eps: l_eps.round_out(bits),
    })
}

/// Full linear tail bound `eps n^(5/2) + B(eps, n) / (H - C(n))`.
/// Returns `None` when `H <= C(n)`, where the bound degenerates.
pub fn linear_tail_bound(
    constants: &LinearBoundConstants,
    h: &Rat,
    bits: u32,
) -> Option<BoundValue> {
    let lead = n_five_halves(constants.n, bits).scale(&constants.epsilon);
    let denom = BoundValue::exact(h.clone()).sub(&constants.c);
    if !denom.is_positive() {
        return None;
    }
    Some(lead.add(&constants.b.div(&denom)).round_out(bits))
}

/// Constants of the polynomial-case tail bound for a degree list and
/// threshold `epsilon`.
#[derive(Debug, Clone)]
pub struct PolyBoundConstants {
    pub shape: DegreeShape,
    pub epsilon: Rat,
    /// component-count constant, exact
    pub component_bound: BigInt,
    /// tube volume constant, exact
    pub tube_constant: BigInt,
    /// real determinant of the weight matrix, exact
    pub weight_det: Rat,
    /// lattice tube-volume constant of the counting bound
    pub d_frak: BoundValue,
    /// offset constant of the discrepancy term
    pub g_cal: BoundValue,
    /// numerator constant of the discrepancy term
    pub f_cal: BoundValue,
}

/// Evaluates the polynomial tail-bound constants:
/// `G(N) = S^(2N+2) / (det zeta(2N+1) K_{2N+2}) + 1/K_{2N+2} + 2`,
/// `F(eps, N) = (Tbar + eps^4 C) S^(2N+2) / (det zeta(2N+1) K_{2N+2})
///              + (eps^4 C + 1)/K_{2N+2} + 4 eps^4 C`,
/// `Dfrak = K_{2N+2} C / det`,
/// with `det` the real determinant of the weight matrix.
pub fn poly_bound_constants(
    degrees: &[u32],
    epsilon: &Rat,
    bits: u32,
) -> Result<PolyBoundConstants, ConstantError> {
    let shape = DegreeShape::new(degrees);
    let two_n2 = (2 * shape.proj_dim + 2) as u32;
    let t_bar = component_bound_polysys(degrees);
    let c_tube = shape.tube_volume_constant();
    let det = shape.weight_det_real();
    let k = unit_ball_volume(two_n2, bits);
    let s = davenport_ball_constant(two_n2, bits);
    let z_hi = zeta(two_n2, bits)?;
    let z_lo = zeta(two_n2 - 1, bits)?;
    let eps4c = BoundValue::exact(epsilon.pow(4) * Rat::from_integer(c_tube.clone()));
    let s_over_dzk = s.div(&k.mul(&z_lo).scale(&det));

    let g_cal = s_over_dzk
        .add(&k.recip())
        .add(&BoundValue::from_int(2));
    let f_cal = BoundValue::exact(Rat::from_integer(t_bar.clone()))
        .add(&eps4c)
        .mul(&s_over_dzk)
        .add(&eps4c.add(&BoundValue::one()).div(&k))
        .add(&eps4c.scale(&rint(4)));
    let d_frak = k.scale(&(Rat::from_integer(c_tube.clone()) / &det));
    let _ = z_hi; // the full bound uses it; constants themselves do not

    Ok(PolyBoundConstants {
        shape,
        epsilon: epsilon.clone(),
        component_bound: t_bar,
        tube_constant: c_tube,
        weight_det: det,
        d_frak: d_frak.round_out(bits),
        g_cal: g_cal.round_out(bits),
        f_cal: f_cal.round_out(bits),
    })
}

/// Full polynomial tail bound
/// `eps^4 C + F(eps, N) / (zeta(2N+2)^-1 H - G(N))`.
/// Returns `None` when the denominator is not positive.
pub fn poly_tail_bound(
    constants: &PolyBoundConstants,
    h: &Rat,
    bits: u32,
) -> Option<BoundValue> {
    let two_n2 = (2 * constants.shape.proj_dim + 2) as u32;
    let z_hi = zeta(two_n2, bits).ok()?;
    let lead = BoundValue::exact(
        constants.epsilon.pow(4) * Rat::from_integer(constants.tube_constant.clone()),
    );
    let denom = BoundValue::exact(h.clone())
        .div(&z_hi)
        .sub(&constants.g_cal);
    if !denom.is_positive() {
        return None;
    }
    Some(lead.add(&constants.f_cal.div(&denom)).round_out(bits))
}

/// Outcome of a certified inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    Fails,
    /// enclosures overlap; neither direction is certified
    Indeterminate,
}

/// Certified check of `S^(m) <= (1 + sqrt(2 e pi))^m / sqrt(pi)` for all
/// `1 <= m <= m_max`.
pub fn ball_constant_growth_check(m_max: u32, bits: u32) -> bool {
    let e = euler_e(bits + 16);
    let p = pi(bits + 16);
    let sqrt_pi = p.sqrt(bits + 8);
    let base = BoundValue::one().add(&e.mul(&p).scale(&rint(2)).sqrt(bits + 8));
    for m in 1..=m_max {
        let lhs = davenport_ball_constant(m, bits);
        let rhs = base.powi(m).div(&sqrt_pi);
        if !lhs.certainly_le(&rhs) {
            return false;
        }
    }
    true
}

/// Report row for the second gamma-function growth estimate
/// `S^(m)/K_m <= e^(2/3) m^(m/2) e^(m/12)`, whose grouping is ambiguous in
/// its source; checked and reported rather than asserted.
#[derive(Debug, Clone)]
pub struct GrowthReportRow {
    pub m: u32,
    pub ratio: BoundValue,
    pub bound: BoundValue,
    pub outcome: CheckOutcome,
}

pub fn ball_ratio_growth_report(m_max: u32, bits: u32) -> Vec<GrowthReportRow> {
    let e23 = exp_rational(&rat(2, 3), bits + 16);
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let ratio = davenport_ball_constant(m, bits).div(&unit_ball_volume(m, bits));
        // m^(m/2): exact integer power for even m, else m^((m-1)/2) sqrt(m)
        let mm = if m % 2 == 0 {
            BoundValue::exact(rint(m as i64).pow((m / 2) as i32))
        } else {
            BoundValue::exact(rint(m as i64).pow(((m - 1) / 2) as i32))
                .mul(&BoundValue::from_int(m as i64).sqrt(bits + 8))
        };
        let em12 = exp_rational(&rat(m as i64, 12), bits + 16);
        let bound = e23.mul(&mm).mul(&em12);
        let outcome = if ratio.certainly_le(&bound) {
            CheckOutcome::Holds
        } else if bound.certainly_lt(&ratio) {
            CheckOutcome::Fails
        } else {
            CheckOutcome::Indeterminate
        };
        rows.push(GrowthReportRow {
            m,
            ratio: ratio.round_out(bits),
            bound: bound.round_out(bits),
            outcome,
        });
    }
    rows
}
