//! Rectangular complex interval arithmetic: a box `re x im` of rational
//! intervals enclosing a complex value. Supports the ring operations plus
//! division by boxes excluding zero, which is all that certified Newton
//! refinement needs.

use crate::gauss::GaussRat;
use crate::interval::{BoundValue, Rat};

#[derive(Debug, Clone, PartialEq)]
pub struct CBox {
    pub re: BoundValue,
    pub im: BoundValue,
}

impl CBox {
    pub fn new(re: BoundValue, im: BoundValue) -> Self {
        CBox { re, im }
    }

    pub fn exact(z: &GaussRat) -> Self {
        CBox {
            re: BoundValue::exact(z.re.clone()),
            im: BoundValue::exact(z.im.clone()),
        }
    }

    pub fn zero() -> Self {
        CBox {
            re: BoundValue::zero(),
            im: BoundValue::zero(),
        }
    }

    pub fn from_f64_with_radius(z: num_complex::Complex64, radius: f64) -> Self {
        let r = |x: f64| Rat::from_float(x).expect("finite float");
        CBox {
            re: BoundValue::new(r(z.re - radius), r(z.re + radius)),
            im: BoundValue::new(r(z.im - radius), r(z.im + radius)),
        }
    }

    pub fn midpoint(&self) -> GaussRat {
        GaussRat::new(self.re.midpoint(), self.im.midpoint())
    }

    /// Componentwise containment.
    pub fn contains_box(&self, other: &CBox) -> bool {
        self.re.contains_interval(&other.re) && self.im.contains_interval(&other.im)
    }

    pub fn contains_value(&self, z: &GaussRat) -> bool {
        self.re.contains(&z.re) && self.im.contains(&z.im)
    }

    pub fn contains_zero(&self) -> bool {
        self.re.straddles_zero() && self.im.straddles_zero()
    }

    pub fn intersect(&self, other: &CBox) -> Option<CBox> {
        Some(CBox {
            re: self.re.intersect(&other.re)?,
            im: self.im.intersect(&other.im)?,
        })
    }

    pub fn add(&self, other: &CBox) -> CBox {
        CBox {
            re: self.re.add(&other.re),
            im: self.im.add(&other.im),
        }
    }

    pub fn sub(&self, other: &CBox) -> CBox {
        CBox {
            re: self.re.sub(&other.re),
            im: self.im.sub(&other.im),
        }
    }

    pub fn neg(&self) -> CBox {
        CBox {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, other: &CBox) -> CBox {
        CBox {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    pub fn conj(&self) -> CBox {
        CBox {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn scale(&self, c: &Rat) -> CBox {
        CBox {
            re: self.re.scale(c),
            im: self.im.scale(c),
        }
    }

    /// `|z|^2` as a real interval.
    pub fn abs_sq(&self) -> BoundValue {
        self.re.square().add(&self.im.square())
    }

    /// Division by a box that certainly excludes zero.
    pub fn div(&self, other: &CBox) -> CBox {
        let denom = other.abs_sq();
        assert!(
            denom.is_positive(),
            "division by a complex box containing zero"
        );
        let num = self.mul(&other.conj());
        CBox {
            re: num.re.div(&denom),
            im: num.im.div(&denom),
        }
    }

    /// Maximum half-width of the two components.
    pub fn radius(&self) -> Rat {
        let rw = self.re.width();
        let iw = self.im.width();
        rw.max(iw) / Rat::from_integer(2.into())
    }

    pub fn round_out(&self, bits: u32) -> CBox {
        CBox {
            re: self.re.round_out(bits),
            im: self.im.round_out(bits),
        }
    }

    pub fn to_f64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    fn gr(a: i64, b: i64, c: i64, d: i64) -> GaussRat {
        GaussRat::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn box_arithmetic_contains_exact_values() {
        let x = gr(1, 2, -3, 4);
        let y = gr(2, 3, 5, 7);
        let bx = CBox::exact(&x);
        let by = CBox::exact(&y);
        assert!(bx.mul(&by).contains_value(&x.mul(&y)));
        assert!(bx.add(&by).contains_value(&x.add(&y)));
        assert!(bx.sub(&by).contains_value(&x.sub(&y)));
        assert!(bx.div(&by).contains_value(&x.div(&y)));
    }

    #[test]
    fn division_by_zero_box_panics() {
        let z = CBox::new(
            BoundValue::new(rat(-1, 2), rat(1, 2)),
            BoundValue::new(rat(-1, 2), rat(1, 2)),
        );
        let one = CBox::exact(&GaussRat::one());
        assert!(std::panic::catch_unwind(|| one.div(&z)).is_err());
    }
}
