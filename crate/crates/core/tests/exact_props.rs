use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use polycolor::exact::{FieldScalar, Rational};
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

prop_compose! {
    fn scalar()(c in prop::array::uniform4((-60i64..60, 1i64..12))) -> FieldScalar {
        FieldScalar::new(r(c[0].0, c[0].1), r(c[1].0, c[1].1), r(c[2].0, c[2].1), r(c[3].0, c[3].1))
    }
}

/// Sign of `p + q·√2` by comparing squares.
fn sign_q2(p: &Rational, q: &Rational) -> i32 {
    let sp = sgn(p);
    let sq = sgn(q);
    if sq == 0 || sp == sq {
        return if sp == 0 { sq } else { sp };
    }
    if sp == 0 {
        return sq;
    }
    let diff = p * p - q * q * r(2, 1);
    sp * sgn(&diff)
}

fn sgn(x: &Rational) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `x + y·√3` with `x = a + b√2`, `y = c + d√2`, deciding the
/// mixed case through `x² − 3y²` in Q(√2).
fn oracle_sign(v: &FieldScalar) -> i32 {
    let [a, b, c, d] = v.coeffs();
    let sx = sign_q2(&a, &b);
    let sy = sign_q2(&c, &d);
    if sy == 0 || sx == sy {
        return if sx == 0 { sy } else { sx };
    }
    if sx == 0 {
        return sy;
    }
    // x² = a² + 2b² + 2ab√2; 3y² = 3c² + 6d² + 6cd√2
    let p = &a * &a + r(2, 1) * &b * &b - r(3, 1) * &c * &c - r(6, 1) * &d * &d;
    let q = r(2, 1) * &a * &b - r(6, 1) * &c * &d;
    sx * sign_q2(&p, &q)
}

proptest! {
    #[test]
    fn ring_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
    }

    #[test]
    fn difference_is_zero_iff_equal(x in scalar(), y in scalar()) {
        prop_assert_eq!((&x - &y).is_zero(), x.coeffs() == y.coeffs());
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn sign_matches_algebraic_oracle(x in scalar()) {
        prop_assert_eq!(x.sign(), oracle_sign(&x));
    }

    #[test]
    fn sign_matches_enclosure(x in scalar()) {
        let e = x.enclosure(64);
        if let Some(s) = e.strict_sign() {
            prop_assert_eq!(x.sign(), s);
            prop_assert!(e.contains(&e.midpoint()));
        }
    }

    #[test]
    fn squares_are_nonnegative(x in scalar()) {
        let s = x.square().sign();
        prop_assert!(s >= 0);
        prop_assert_eq!(s == 0, x.is_zero());
    }

    #[test]
    fn inverse(x in scalar()) {
        match x.inv() {
            Some(i) => prop_assert_eq!(&x * &i, FieldScalar::one()),
            None => prop_assert!(x.is_zero()),
        }
    }

    #[test]
    fn text_round_trip(x in scalar()) {
        prop_assert_eq!(x.to_string().parse::<FieldScalar>().unwrap(), x);
    }
}

#[test]
fn near_cancellation() {
    // (√3 − √2)^16 ≈ 1e-8 with coefficients near 1e7
    let base = &FieldScalar::sqrt3() - &FieldScalar::sqrt2();
    let mut x = FieldScalar::one();
    for _ in 0..16 {
        x = &x * &base;
    }
    assert_eq!(x.sign(), 1);
    assert_eq!(oracle_sign(&x), 1);
    assert_eq!((-&x).sign(), -1);
    let z = &(&FieldScalar::sqrt2() * &FieldScalar::sqrt3()) - &FieldScalar::sqrt6();
    assert!(z.is_zero());
}
