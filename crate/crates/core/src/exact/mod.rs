//! Exact scalars: rationals, sparse polynomials, rational functions.

mod gcd;
mod poly;
mod ratfunc;

pub use gcd::{coefficients_in, poly_gcd};
pub use poly::{Monomial, MultiPoly};
pub use ratfunc::RatFunc;

/// Arbitrary-precision rational; always stored reduced with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: {left} vs {right} variables")]
    DimensionMismatch { left: usize, right: usize },
    #[error("variable index {var} out of range for {nvars} variables")]
    VariableOutOfRange { var: usize, nvars: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
}

/// Shorthand for the rational `a/b`.
pub fn rat(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Shorthand for the integer `a` as a rational.
pub fn int(a: i64) -> Rational {
    Rational::from_integer(a.into())
}
