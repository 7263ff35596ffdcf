use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, Rational};

/// Exponent vector of a monomial. Ordered graded-lexicographically: total
/// degree first, then lexicographically from the first variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn quotient(&self, divisor: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable {i} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, i), Rational::one());
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, merging
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, ExactError>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(ExactError::DimensionMismatch { left: nvars, right: exps.len() });
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// Value of a constant polynomial; `None` if it depends on a variable.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Highest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    fn check_same(&self, other: &MultiPoly) -> Result<(), ExactError> {
        if self.nvars != other.nvars {
            Err(ExactError::DimensionMismatch { left: self.nvars, right: other.nvars })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, ExactError> {
        self.check_same(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies by the monomial `var^k`.
    pub fn shift(&self, var: usize, k: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[var] += k;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> Result<MultiPoly, ExactError> {
        if var >= self.nvars {
            return Err(ExactError::VariableOutOfRange { var, nvars: self.nvars });
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[var] -= 1;
                out.add_term(Monomial(exps), c * Rational::from_integer(BigInt::from(e)));
            }
        }
        Ok(out)
    }

    /// Derivative that panics on an out-of-range variable; used on paths where
    /// the index comes from the chart itself.
    pub fn d(&self, var: usize) -> MultiPoly {
        self.partial_derivative(var).expect("variable index within chart")
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, ExactError> {
        if point.len() != self.nvars {
            return Err(ExactError::DimensionMismatch { left: self.nvars, right: point.len() });
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        Ok(total)
    }

    pub fn evaluate_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "point length must equal nvars");
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.to_f64().unwrap_or(f64::NAN);
                for (x, &e) in point.iter().zip(&m.0) {
                    t *= x.powi(e as i32);
                }
                t
            })
            .sum()
    }

    /// Embeds into a ring with `nvars >= self.nvars()` by appending variables.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        MultiPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() || self.nvars != divisor.nvars {
            return None;
        }
        let (lm_b, lc_b) = divisor.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut q = MultiPoly::zero(self.nvars);
        let mut r = self.clone();
        while let Some((lm_r, lc_r)) = r.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            if !lm_b.divides(&lm_r) {
                return None;
            }
            let t = MultiPoly {
                nvars: self.nvars,
                terms: BTreeMap::from([(lm_r.quotient(&lm_b), lc_r / &lc_b)]),
            };
            r = &r - &(&t * divisor);
            q = &q + &t;
        }
        Some(q)
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> MultiPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(Rational::one() / c)),
        }
    }

    pub fn leading_is_positive(&self) -> bool {
        self.leading_term().is_none_or(|(_, c)| c.is_positive())
    }

    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in m.0.iter().enumerate() {
                let name = names.get(v).cloned().unwrap_or_else(|| format!("x{}", v + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.format_with(&names))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("operands share nvars")
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$checked(&rhs).expect("operands share nvars")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}
