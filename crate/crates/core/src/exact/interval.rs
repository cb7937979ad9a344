use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::Rational;

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval with lo > hi");
        RationalInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RationalInterval { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(sign)` when the interval excludes zero.
    pub fn strict_sign(&self) -> Option<i32> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// Outward-rounded square root of a nonnegative interval at `bits`
    /// binary digits.
    pub fn sqrt(&self, bits: u32) -> RationalInterval {
        assert!(!self.lo.is_negative(), "sqrt of interval reaching below zero");
        let scale = BigInt::from(1) << bits;
        let scale_sq = BigInt::from(1) << (2 * bits);
        let lo_scaled = (&self.lo * Rational::from_integer(scale_sq.clone())).floor().to_integer();
        let hi_scaled = (&self.hi * Rational::from_integer(scale_sq)).ceil().to_integer();
        let lo = lo_scaled.sqrt();
        let hi = hi_scaled.sqrt() + 1;
        RationalInterval::new(
            Rational::new(lo, scale.clone()),
            Rational::new(hi, scale),
        )
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }
}

impl Add for &RationalInterval {
    type Output = RationalInterval;
    fn add(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &RationalInterval {
    type Output = RationalInterval;
    fn sub(self, rhs: &RationalInterval) -> RationalInterval {
        RationalInterval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &RationalInterval {
    type Output = RationalInterval;
    fn neg(self) -> RationalInterval {
        RationalInterval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &RationalInterval {
    type Output = RationalInterval;
    fn mul(self, rhs: &RationalInterval) -> RationalInterval {
        let cands = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        if lo.is_zero() && hi.is_zero() {
            return RationalInterval::point(Rational::zero());
        }
        RationalInterval::new(lo, hi)
    }
}
