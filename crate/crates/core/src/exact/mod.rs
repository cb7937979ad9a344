//! Exact arithmetic over Q(√2, √3) and its quadratic extensions.

mod field;
mod interval;
mod surd;

pub use field::{parse_rational, FieldScalar, ScalarParseError};
pub use interval::RationalInterval;
pub use surd::Surd;

pub(crate) use field::rational_to_f64;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;
