use std::ops::{Add, Mul, Neg, Sub};

use super::field::FieldScalar;
use super::interval::RationalInterval;

/// `a + b·√r` with `a, b, r` in Q(√2, √3) and `r ≥ 0`.
///
/// Used for points of a unit circle cut by a border line, which live in a
/// quadratic extension of the coordinate field. Arithmetic is only defined
/// between values sharing the same radicand (or where one side has `b = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    pub a: FieldScalar,
    pub b: FieldScalar,
    pub r: FieldScalar,
}

impl Surd {
    pub fn field(a: FieldScalar) -> Self {
        Surd {
            a,
            b: FieldScalar::zero(),
            r: FieldScalar::zero(),
        }
    }

    pub fn new(a: FieldScalar, b: FieldScalar, r: FieldScalar) -> Self {
        debug_assert!(r.sign() >= 0, "negative radicand");
        if b.is_zero() || r.is_zero() {
            return Surd::field(a);
        }
        if let Some(root) = r.rational_sqrt() {
            return Surd::field(&a + &(&b * &root));
        }
        Surd { a, b, r }
    }

    pub fn zero() -> Self {
        Surd::field(FieldScalar::zero())
    }

    pub fn is_field(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_field(&self) -> Option<&FieldScalar> {
        self.is_field().then_some(&self.a)
    }

    fn radicand_with<'a>(&'a self, other: &'a Surd) -> &'a FieldScalar {
        if self.is_field() {
            &other.r
        } else {
            if !other.is_field() {
                assert_eq!(self.r, other.r, "mixing surds with different radicands");
            }
            &self.r
        }
    }

    /// Exact sign.
    pub fn sign(&self) -> i32 {
        let sa = self.a.sign();
        let sb = self.b.sign();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        let t = &self.a.square() - &(&self.b.square() * &self.r);
        sa * t.sign()
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    pub fn scale(&self, k: &FieldScalar) -> Surd {
        Surd::new(&self.a * k, &self.b * k, self.r.clone())
    }

    pub fn square(&self) -> Surd {
        self * self
    }

    pub fn enclosure(&self, bits: u32) -> RationalInterval {
        let a = self.a.enclosure(bits + 2);
        if self.is_field() {
            return a;
        }
        // |b|·√r scales the error of √r; a few guard bits cover modest |b|
        let guard = 8 + (self.b.to_f64().abs().log2().max(0.0) as u32);
        let b = self.b.enclosure(bits + guard);
        let r = self.r.enclosure(bits + guard).clamp_nonneg();
        let s = r.sqrt(bits + guard);
        &a + &(&b * &s)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.r.to_f64().max(0.0).sqrt()
    }
}

impl RationalInterval {
    fn clamp_nonneg(self) -> RationalInterval {
        use num_traits::{Signed, Zero};
        if self.lo().is_negative() {
            let hi = if self.hi().is_negative() {
                super::Rational::zero()
            } else {
                self.hi().clone()
            };
            RationalInterval::new(super::Rational::zero(), hi)
        } else {
            self
        }
    }
}

impl From<FieldScalar> for Surd {
    fn from(a: FieldScalar) -> Self {
        Surd::field(a)
    }
}

impl<'a> Add<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let r = self.radicand_with(rhs).clone();
        Surd::new(&self.a + &rhs.a, &self.b + &rhs.b, r)
    }
}

impl<'a> Sub<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let r = self.radicand_with(rhs).clone();
        Surd::new(&self.a - &rhs.a, &self.b - &rhs.b, r)
    }
}

impl<'a> Mul<&'a Surd> for &'a Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let r = self.radicand_with(rhs).clone();
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &r);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        Surd::new(a, b, r)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            a: -&self.a,
            b: -&self.b,
            r: self.r.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_of_mixed_terms() {
        // 1 - √2 < 0
        let s = Surd::new(FieldScalar::one(), -FieldScalar::one(), FieldScalar::from_int(2));
        assert_eq!(s.sign(), -1);
        // 3 - √5 > 0
        let s = Surd::new(FieldScalar::from_int(3), -FieldScalar::one(), FieldScalar::from_int(5));
        assert_eq!(s.sign(), 1);
        // √4 folds into the field
        let s = Surd::new(FieldScalar::zero(), FieldScalar::one(), FieldScalar::from_int(4));
        assert!(s.is_field());
        assert_eq!(s.a, FieldScalar::from_int(2));
    }

    #[test]
    fn product_closes_over_radicand() {
        let r = FieldScalar::from_int(5);
        let x = Surd::new(FieldScalar::one(), FieldScalar::one(), r.clone());
        let y = Surd::new(FieldScalar::one(), -FieldScalar::one(), r);
        assert_eq!(&x * &y, Surd::field(FieldScalar::from_int(-4)));
    }
}
