//! Multivariate polynomial gcd over the rationals by recursive primitive
//! pseudo-remainder sequences.

use super::MultiPoly;

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    let var = (0..n)
        .rev()
        .find(|&v| a.uses_var(v) || b.uses_var(v))
        .expect("non-constant polynomial uses a variable");
    if !a.uses_var(var) {
        return poly_gcd(a, &content(b, var));
    }
    if !b.uses_var(var) {
        return poly_gcd(&content(a, var), b);
    }
    let ca = content(a, var);
    let cb = content(b, var);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let c = poly_gcd(&ca, &cb);

    let (mut r0, mut r1) = if pa.degree_in(var) >= pb.degree_in(var) { (pa, pb) } else { (pb, pa) };
    let g = loop {
        let r = pseudo_remainder(&r0, &r1, var);
        if r.is_zero() {
            break primitive_part(&r1, var);
        }
        if !r.uses_var(var) {
            break MultiPoly::one(n);
        }
        r0 = r1;
        r1 = primitive_part(&r, var);
    };
    (&c * &g).monic()
}

/// Coefficients of `p` viewed as a polynomial in `var`, lowest power first.
pub fn coefficients_in(p: &MultiPoly, var: usize) -> Vec<MultiPoly> {
    let n = p.nvars();
    let deg = p.degree_in(var) as usize;
    let mut buckets: Vec<Vec<(Vec<u32>, crate::exact::Rational)>> = vec![Vec::new(); deg + 1];
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        let k = e[var] as usize;
        e[var] = 0;
        buckets[k].push((e, c.clone()));
    }
    buckets
        .into_iter()
        .map(|t| MultiPoly::from_terms(n, t).expect("exponent length preserved"))
        .collect()
}

fn content(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(p.nvars());
    for c in coefficients_in(p, var) {
        if c.is_zero() {
            continue;
        }
        g = poly_gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(p: &MultiPoly, var: usize) -> MultiPoly {
    let c = content(p, var);
    p.div_exact(&c).expect("content divides").monic()
}

fn pseudo_remainder(a: &MultiPoly, b: &MultiPoly, var: usize) -> MultiPoly {
    let db = b.degree_in(var);
    let lb = coefficients_in(b, var).pop().expect("b nonzero");
    let mut r = a.clone();
    while !r.is_zero() && r.uses_var(var) && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lr = coefficients_in(&r, var).pop().expect("r nonzero");
        r = &(&lb * &r) - &(&lr * &b.shift(var, dr - db));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;
    use num_bigint::BigInt;

    fn r(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    #[test]
    fn univariate_gcd() {
        let x = MultiPoly::var(1, 0);
        let one = MultiPoly::one(1);
        let a = &(&x - &one) * &(&x + &one);
        let b = &(&x - &one) * &(&x + &MultiPoly::from_int(1, 2));
        assert_eq!(poly_gcd(&a, &b), &x - &one);
    }

    #[test]
    fn multivariate_gcd() {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let z = MultiPoly::var(3, 2);
        let common = &(&x * &y) + &z.scale(&r(3));
        let a = &common * &(&x + &y);
        let b = &common * &(&(&z * &z) - &y);
        let g = poly_gcd(&a, &b);
        assert_eq!(g, common.monic());
    }

    #[test]
    fn coprime_is_one() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        assert!(poly_gcd(&(&x + &y), &(&x - &y)).is_one());
        assert!(poly_gcd(&x.scale(&r(4)), &MultiPoly::from_int(2, 6)).is_one());
    }
}
