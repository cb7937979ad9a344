use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::RationalInterval;
use super::Rational;

/// An exact element `a + b·√2 + c·√3 + d·√6` of the field Q(√2, √3).
///
/// Stored as four integer numerators over one positive common denominator,
/// fully reduced, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldScalar {
    num: [BigInt; 4],
    den: BigInt,
}

/// Radicands of the basis elements 1, √2, √3, √6.
const RADICANDS: [u32; 4] = [1, 2, 3, 6];

impl FieldScalar {
    pub fn zero() -> Self {
        FieldScalar {
            num: [BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        let mut x = Self::zero();
        x.num[0] = BigInt::from(v);
        x
    }

    /// `n / d` as a rational element. Panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::from_parts(
            [r.numer().clone(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
            r.denom().clone(),
        )
    }

    /// Builds `a + b√2 + c√3 + d√6` from rational coefficients.
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        let coeffs = [a, b, c, d];
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coeffs
            .map(|q| q.numer() * (&den / q.denom()));
        Self::from_parts(num, den)
    }

    pub fn sqrt2() -> Self {
        Self::basis(1)
    }

    pub fn sqrt3() -> Self {
        Self::basis(2)
    }

    pub fn sqrt6() -> Self {
        Self::basis(3)
    }

    fn basis(i: usize) -> Self {
        let mut x = Self::zero();
        x.num[i] = BigInt::one();
        x
    }

    fn from_parts(mut num: [BigInt; 4], mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for n in num.iter_mut() {
                *n = -std::mem::take(n);
            }
        }
        let mut g = den.clone();
        for n in num.iter() {
            g = g.gcd(n);
        }
        if !g.is_one() {
            for n in num.iter_mut() {
                *n = &*n / &g;
            }
            den = &den / &g;
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        }
        FieldScalar { num, den }
    }

    /// Rational coefficient of the `i`-th basis element (1, √2, √3, √6).
    pub fn coeff(&self, i: usize) -> Rational {
        Rational::new(self.num[i].clone(), self.den.clone())
    }

    pub fn coeffs(&self) -> [Rational; 4] {
        [self.coeff(0), self.coeff(1), self.coeff(2), self.coeff(3)]
    }

    /// Syntactic zero test.
    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff(0))
    }

    /// Conjugate under √2 ↦ −√2.
    fn conj2(&self) -> Self {
        FieldScalar {
            num: [
                self.num[0].clone(),
                -&self.num[1],
                self.num[2].clone(),
                -&self.num[3],
            ],
            den: self.den.clone(),
        }
    }

    /// Conjugate under √3 ↦ −√3.
    fn conj3(&self) -> Self {
        FieldScalar {
            num: [
                self.num[0].clone(),
                self.num[1].clone(),
                -&self.num[2],
                -&self.num[3],
            ],
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let c3 = self.conj3();
        let in_q2 = self * &c3;
        let c2 = in_q2.conj2();
        let norm = &in_q2 * &c2;
        debug_assert!(norm.is_rational());
        let n = norm.coeff(0);
        let numer = &c3 * &c2;
        Some(numer.scale(&n.recip()))
    }

    /// Multiplies by a rational.
    pub fn scale(&self, r: &Rational) -> Self {
        Self::from_parts(
            self.num.clone().map(|n| n * r.numer()),
            &self.den * r.denom(),
        )
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Sign of the real value.
    ///
    /// Zero is decided syntactically. Nonzero values are bracketed by
    /// integer enclosures of √2, √3, √6 at doubling precision until the
    /// bracket excludes zero; a nonzero element is bounded away from zero,
    /// so the loop terminates.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return sign_of(&self.num[0]);
        }
        let mut bits = 64u32;
        loop {
            let (lo, hi) = self.scaled_bracket(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Integer bracket `[lo, hi]` of `numerator_value · 2^bits` where the
    /// value equals `numerator_value / den`.
    #[allow(clippy::needless_range_loop)]
    fn scaled_bracket(&self, bits: u32) -> (BigInt, BigInt) {
        let mut lo = &self.num[0] << bits;
        let mut hi = lo.clone();
        for i in 1..4 {
            let c = &self.num[i];
            if c.is_zero() {
                continue;
            }
            let s = scaled_sqrt_floor(RADICANDS[i], bits);
            let a = c * &s;
            let b = c * (&s + 1u32);
            if c.is_positive() {
                lo += a;
                hi += b;
            } else {
                lo += b;
                hi += a;
            }
        }
        (lo, hi)
    }

    /// Rational interval containing the value, of width at most `2^-bits`.
    pub fn enclosure(&self, bits: u32) -> RationalInterval {
        if self.is_rational() {
            let v = self.coeff(0);
            return RationalInterval::point(v);
        }
        let spread: BigInt = self.num[1..].iter().map(|c| c.abs()).sum();
        // width = spread / (den · 2^k) ≤ 2^-bits
        let extra = spread.bits().saturating_sub(self.den.bits()) as u32 + 1;
        let k = bits.max(1) + extra;
        let (lo, hi) = self.scaled_bracket(k);
        let scale = &self.den << k;
        RationalInterval::new(
            Rational::new(lo, scale.clone()),
            Rational::new(hi, scale),
        )
    }

    /// Nearest-ish `f64`, for rendering and search bounds only.
    pub fn to_f64(&self) -> f64 {
        let iv = self.enclosure(60);
        let mid = (iv.lo() + iv.hi()) / Rational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }

    /// Largest integer `n` with `n ≤ self`.
    pub fn floor(&self) -> BigInt {
        let iv = self.enclosure(8);
        let mut n = iv.lo().floor().to_integer();
        loop {
            let next = FieldScalar::from_rational(&Rational::from_integer(&n + 1));
            if (&next - self).sign() <= 0 {
                n += 1;
                continue;
            }
            let cur = FieldScalar::from_rational(&Rational::from_integer(n.clone()));
            if (&cur - self).sign() > 0 {
                n -= 1;
                continue;
            }
            return n;
        }
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn max_value<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self.cmp_value(other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn min_value<'a>(&'a self, other: &'a Self) -> &'a Self {
        if self.cmp_value(other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact square root when `self` is a nonnegative rational square.
    pub fn rational_sqrt(&self) -> Option<Self> {
        let r = self.as_rational()?;
        if r.is_negative() {
            return None;
        }
        let n = r.numer().sqrt();
        let d = r.denom().sqrt();
        (&n * &n == *r.numer() && &d * &d == *r.denom())
            .then(|| FieldScalar::from_rational(&Rational::new(n, d)))
    }
}

fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // very large magnitudes; good enough for display purposes
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// `floor(√radicand · 2^bits)`.
pub(crate) fn scaled_sqrt_floor(radicand: u32, bits: u32) -> BigInt {
    static CACHE: OnceLock<[BigInt; 4]> = OnceLock::new();
    if bits == 64 {
        let cache = CACHE.get_or_init(|| RADICANDS.map(|r| (BigInt::from(r) << 128u32).sqrt()));
        let idx = RADICANDS.iter().position(|&r| r == radicand);
        if let Some(i) = idx {
            return cache[i].clone();
        }
    }
    (BigInt::from(radicand) << (2 * bits)).sqrt()
}

impl Default for FieldScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<Rational> for FieldScalar {
    fn from(r: Rational) -> Self {
        Self::from_rational(&r)
    }
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        if self.den == rhs.den {
            let num = [0, 1, 2, 3].map(|i| &self.num[i] + &rhs.num[i]);
            return FieldScalar::from_parts(num, self.den.clone());
        }
        let num = [0, 1, 2, 3].map(|i| &self.num[i] * &rhs.den + &rhs.num[i] * &self.den);
        FieldScalar::from_parts(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        if self.den == rhs.den {
            let num = [0, 1, 2, 3].map(|i| &self.num[i] - &rhs.num[i]);
            return FieldScalar::from_parts(num, self.den.clone());
        }
        let num = [0, 1, 2, 3].map(|i| &self.num[i] * &rhs.den - &rhs.num[i] * &self.den);
        FieldScalar::from_parts(num, &self.den * &rhs.den)
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        let [a0, a1, a2, a3] = &self.num;
        let [b0, b1, b2, b3] = &rhs.num;
        if self.is_rational() && rhs.is_rational() {
            let mut num = FieldScalar::zero().num;
            num[0] = a0 * b0;
            return FieldScalar::from_parts(num, &self.den * &rhs.den);
        }
        let c0 = a0 * b0 + (a1 * b1) * 2u32 + (a2 * b2) * 3u32 + (a3 * b3) * 6u32;
        let c1 = a0 * b1 + a1 * b0 + (a2 * b3 + a3 * b2) * 3u32;
        let c2 = a0 * b2 + a2 * b0 + (a1 * b3 + a3 * b1) * 2u32;
        let c3 = a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1;
        FieldScalar::from_parts([c0, c1, c2, c3], &self.den * &rhs.den)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn div(self, rhs: &FieldScalar) -> FieldScalar {
        let inv = rhs.inv().expect("division by zero FieldScalar");
        self * &inv
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar {
            num: self.num.clone().map(|n| -n),
            den: self.den.clone(),
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: &FieldScalar) -> FieldScalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<FieldScalar> for &'a FieldScalar {
            type Output = FieldScalar;
            fn $m(self, rhs: FieldScalar) -> FieldScalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Text form: four reduced fractions separated by spaces.
impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write_rational(f, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({self} ≈ {:.6})", self.to_f64())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("expected 4 coefficients, found {0}")]
    WrongArity(usize),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("`{0}` is not an integer or fraction")]
    NotAFraction(String),
}

/// Parses one `p` or `p/q` token.
pub fn parse_rational(tok: &str) -> Result<Rational, ScalarParseError> {
    let bad = || ScalarParseError::NotAFraction(tok.to_string());
    let (n, d) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(tok.to_string()));
    }
    Ok(Rational::new(n, d))
}

impl FieldScalar {
    pub fn parse_tokens(toks: &[&str]) -> Result<Self, ScalarParseError> {
        if toks.len() != 4 {
            return Err(ScalarParseError::WrongArity(toks.len()));
        }
        let mut cs = Vec::with_capacity(4);
        for t in toks {
            cs.push(parse_rational(t)?);
        }
        let d = cs.pop().unwrap();
        let c = cs.pop().unwrap();
        let b = cs.pop().unwrap();
        let a = cs.pop().unwrap();
        Ok(FieldScalar::new(a, b, c, d))
    }
}

impl FromStr for FieldScalar {
    type Err = ScalarParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        Self::parse_tokens(&toks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(a: i64, b: i64, c: i64, d: i64) -> FieldScalar {
        let r = |v: i64| Rational::from_integer(BigInt::from(v));
        FieldScalar::new(r(a), r(b), r(c), r(d))
    }

    #[test]
    fn add_and_mul_basis() {
        assert_eq!(&fs(1, 0, 0, 0) + &fs(0, 1, 0, 0), fs(1, 1, 0, 0));
        assert_eq!(&fs(0, 1, 0, 0) * &fs(0, 0, 1, 0), fs(0, 0, 0, 1));
        assert_eq!(&fs(0, 1, 0, 0) * &fs(0, 1, 0, 0), fs(2, 0, 0, 0));
        assert_eq!(&fs(0, 1, 0, 0) * &fs(0, 0, 0, 1), fs(0, 0, 2, 0));
        assert_eq!(&fs(0, 0, 1, 0) * &fs(0, 0, 0, 1), fs(0, 3, 0, 0));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(FieldScalar::zero().sign(), 0);
        assert_eq!(fs(1, 1, -1, 0).sign(), 1);
        assert_eq!(fs(-1, -1, 1, 0).sign(), -1);
        // 5 - 2√6 = (√3 - √2)^2 > 0, tiny
        assert_eq!(fs(5, 0, 0, -2).sign(), 1);
        let half = FieldScalar::frac(1, 2);
        let d = &half + &half;
        assert_eq!((&(&d * &d) - &FieldScalar::one()).sign(), 0);
    }

    #[test]
    fn inverse_roundtrip() {
        let x = fs(1, 2, -3, 4);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, FieldScalar::one());
        assert!(FieldScalar::zero().inv().is_none());
    }

    #[test]
    fn enclosure_width_and_containment() {
        let s2 = FieldScalar::sqrt2();
        let iv = s2.enclosure(20);
        assert!(iv.width() <= Rational::new(BigInt::one(), BigInt::one() << 20u32));
        assert!(rational_to_f64(iv.lo()) <= std::f64::consts::SQRT_2);
        assert!(rational_to_f64(iv.hi()) >= std::f64::consts::SQRT_2);
        let z = FieldScalar::zero().enclosure(10);
        assert!(z.lo().is_zero() && z.hi().is_zero());
    }

    #[test]
    fn floor_of_irrationals() {
        assert_eq!(FieldScalar::sqrt2().floor(), BigInt::from(1));
        assert_eq!((-FieldScalar::sqrt3()).floor(), BigInt::from(-2));
        assert_eq!(FieldScalar::from_int(3).floor(), BigInt::from(3));
    }

    #[test]
    fn text_form() {
        let x: FieldScalar = "1/2 0 -3/4 2".parse().unwrap();
        assert_eq!(x.to_string(), "1/2 0 -3/4 2");
        assert_eq!("2/4 0 0 0".parse::<FieldScalar>().unwrap().to_string(), "1/2 0 0 0");
        assert!(matches!(
            "1/0 0 0 0".parse::<FieldScalar>(),
            Err(ScalarParseError::ZeroDenominator(_))
        ));
        assert!("1 2 3".parse::<FieldScalar>().is_err());
    }
}
