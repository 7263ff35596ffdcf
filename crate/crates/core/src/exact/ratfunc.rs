use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::poly_gcd;
use super::{ExactError, MultiPoly, Rational};

/// Quotient of two polynomials. Reduction is lazy: arithmetic keeps
/// denominators as small as cheaply possible, `normalize` cancels fully.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, ExactError> {
        if num.nvars() != den.nvars() {
            return Err(ExactError::DimensionMismatch { left: num.nvars(), right: den.nvars() });
        }
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::assemble(num, den))
    }

    /// Constant denominators are folded into the numerator; the denominator
    /// keeps a positive leading coefficient.
    fn assemble(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RatFunc { num, den: MultiPoly::one(n) };
        }
        if let Some(c) = den.constant_value() {
            return RatFunc { num: num.scale(&(Rational::one() / c)), den: MultiPoly::one(n) };
        }
        if den.leading_is_positive() {
            RatFunc { num, den }
        } else {
            RatFunc { num: -num, den: -den }
        }
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc { num: MultiPoly::zero(nvars), den: MultiPoly::one(nvars) }
    }

    pub fn one(nvars: usize) -> Self {
        RatFunc { num: MultiPoly::one(nvars), den: MultiPoly::one(nvars) }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        RatFunc { num: p, den: MultiPoly::one(n) }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_poly(MultiPoly::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_poly(MultiPoly::from_int(nvars, c))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, i))
    }

    /// Sum that is well defined on an empty iterator.
    pub fn sum_in(nvars: usize, iter: impl IntoIterator<Item = RatFunc>) -> RatFunc {
        iter.into_iter().fold(RatFunc::zero(nvars), |acc, x| &acc + &x)
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The engine's exact identity test.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Fully reduced form with monic denominator.
    pub fn normalize(&self) -> RatFunc {
        if self.den.is_one() {
            return self.clone();
        }
        let g = poly_gcd(&self.num, &self.den);
        let num = self.num.div_exact(&g).expect("gcd divides numerator");
        let den = self.den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading_coefficient();
        let inv = Rational::one() / lc;
        Self::assemble(num.scale(&inv), den.scale(&inv))
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc, ExactError> {
        if self.nvars() != other.nvars() {
            return Err(ExactError::DimensionMismatch { left: self.nvars(), right: other.nvars() });
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.den == other.den {
            return Ok(Self::assemble(&self.num + &other.num, self.den.clone()));
        }
        if self.den.is_one() {
            return Ok(Self::assemble(&(&self.num * &other.den) + &other.num, other.den.clone()));
        }
        if other.den.is_one() {
            return Ok(Self::assemble(&self.num + &(&other.num * &self.den), self.den.clone()));
        }
        let g = poly_gcd(&self.den, &other.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = other.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&other.num * &a);
        Ok(Self::assemble(num, &a * &other.den))
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc, ExactError> {
        if self.nvars() != other.nvars() {
            return Err(ExactError::DimensionMismatch { left: self.nvars(), right: other.nvars() });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(RatFunc::zero(self.nvars()));
        }
        match (self.den.is_one(), other.den.is_one()) {
            (true, true) => Ok(RatFunc::from_poly(&self.num * &other.num)),
            (true, false) => Ok(Self::cancel_into(&self.num, &other.num, &other.den)),
            (false, true) => Ok(Self::cancel_into(&other.num, &self.num, &self.den)),
            (false, false) => Ok(Self::assemble(&self.num * &other.num, &self.den * &other.den)),
        }
    }

    /// `p * (n / d)`, cancelling `d` against `p` when it divides exactly.
    fn cancel_into(p: &MultiPoly, n: &MultiPoly, d: &MultiPoly) -> RatFunc {
        match p.div_exact(d) {
            Some(q) => RatFunc::from_poly(&q * n),
            None => Self::assemble(p * n, d.clone()),
        }
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, ExactError> {
        if other.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let inv = Self::assemble(other.den.clone(), other.num.clone());
        self.checked_mul(&inv)
    }

    pub fn recip(&self) -> Result<RatFunc, ExactError> {
        RatFunc::one(self.nvars()).checked_div(self)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: i64) -> RatFunc {
        self.scale(&Rational::from_integer(c.into()))
    }

    pub fn pow(&self, k: u32) -> RatFunc {
        let mut acc = RatFunc::one(self.nvars());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Result<RatFunc, ExactError> {
        let dn = self.num.partial_derivative(var)?;
        if self.den.is_one() {
            return Ok(RatFunc::from_poly(dn));
        }
        let dd = self.den.partial_derivative(var)?;
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Ok(Self::assemble(num, &self.den * &self.den))
    }

    /// Derivative with a chart-supplied index.
    pub fn d(&self, var: usize) -> RatFunc {
        self.partial_derivative(var).expect("variable index within chart")
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ExactError> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(ExactError::Pole);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        self.num.evaluate_f64(point) / self.den.evaluate_f64(point)
    }

    pub fn extend_vars(&self, nvars: usize) -> RatFunc {
        RatFunc { num: self.num.extend_vars(nvars), den: self.den.extend_vars(nvars) }
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let f = self.normalize();
        if f.den.is_one() {
            f.num.format_with(names)
        } else {
            format!("({})/({})", f.num.format_with(names), f.den.format_with(names))
        }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.format_with(&names))
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&RatFunc> for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                $body(self, rhs)
            }
        }
        impl $trait<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                $body(&self, &rhs)
            }
        }
        impl $trait<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                $body(&self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RatFunc, b: &RatFunc| a.checked_add(b).expect("operands share nvars"));
forward_binop!(Sub, sub, |a: &RatFunc, b: &RatFunc| a.checked_add(&-b).expect("operands share nvars"));
forward_binop!(Mul, mul, |a: &RatFunc, b: &RatFunc| a.checked_mul(b).expect("operands share nvars"));

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl std::iter::Sum for RatFunc {
    fn sum<I: Iterator<Item = RatFunc>>(mut iter: I) -> RatFunc {
        let first = iter.next().expect("sum of RatFunc needs at least one term for nvars");
        iter.fold(first, |acc, x| &acc + &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let x = MultiPoly::var(1, 0);
        let one = MultiPoly::one(1);
        let f = RatFunc::new(&(&x * &x) - &one, &x - &one).unwrap().normalize();
        assert!(f.is_polynomial());
        assert_eq!(f.numerator(), &(&x + &one));
    }

    #[test]
    fn self_difference_is_zero() {
        let x = RatFunc::var(2, 0);
        let y = RatFunc::var(2, 1);
        let f = (&x + &y).checked_div(&(&x - &y)).unwrap();
        assert!((&f - &f).is_zero());
        assert!((&(&x * &y) - &(&y * &x)).is_zero());
    }

    #[test]
    fn evaluation_and_poles() {
        let x = RatFunc::var(2, 0);
        let y = RatFunc::var(2, 1);
        let f = (&x + &y).scale(&q(1, 2));
        assert_eq!(f.evaluate(&[q(1, 1), q(3, 1)]).unwrap(), q(2, 1));
        let inv = RatFunc::var(1, 0).recip().unwrap();
        assert!(matches!(inv.evaluate(&[q(0, 1)]), Err(ExactError::Pole)));
    }

    #[test]
    fn division_by_zero_polynomial() {
        let x = RatFunc::var(1, 0);
        assert!(matches!(x.checked_div(&RatFunc::zero(1)), Err(ExactError::DivisionByZero)));
        assert!(RatFunc::new(MultiPoly::one(1), MultiPoly::zero(1)).is_err());
    }

    #[test]
    fn denominator_sign_convention() {
        let x = MultiPoly::var(1, 0);
        let f = RatFunc::new(MultiPoly::one(1), -&x).unwrap();
        assert!(f.denominator().leading_is_positive());
        assert_eq!(f.numerator(), &MultiPoly::from_int(1, -1));
    }

    #[test]
    fn quotient_rule() {
        let x = RatFunc::var(1, 0);
        let f = x.recip().unwrap();
        let df = f.d(0);
        let expect = (&x * &x).recip().unwrap().scale(&q(-1, 1));
        assert_eq!(df, expect);
    }
}
