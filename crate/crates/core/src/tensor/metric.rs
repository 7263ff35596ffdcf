use super::{Connection, TensorField, Variance};
use crate::exact::{RatFunc, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricError {
    #[error("metric is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("metric is singular on the chart")]
    Singular,
    #[error("metric must be a rank-2 covariant tensor")]
    WrongValence,
    #[error("conformal factor vanishes identically")]
    ZeroFactor,
}

/// Symmetric nondegenerate `g_ab` together with its exact inverse.
#[derive(Clone, Debug)]
pub struct Metric {
    g: TensorField,
    inv: TensorField,
}

impl Metric {
    pub fn new(g: TensorField) -> Result<Self, MetricError> {
        if g.valence() != [Variance::Down, Variance::Down] {
            return Err(MetricError::WrongValence);
        }
        let d = g.dim();
        for a in 0..d {
            for b in (a + 1)..d {
                if g.get(&[a, b]) != g.get(&[b, a]) {
                    return Err(MetricError::NotSymmetric(a, b));
                }
            }
        }
        let inv = block_inverse(&g).map(Ok).unwrap_or_else(|| gauss_inverse(&g))?;
        Ok(Metric { g: g.with_weight_twice(4), inv: inv.with_weight_twice(-4) })
    }

    pub fn g(&self) -> &TensorField {
        &self.g
    }

    pub fn inverse(&self) -> &TensorField {
        &self.inv
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn nvars(&self) -> usize {
        self.g.nvars()
    }

    pub fn gab(&self, a: usize, b: usize) -> &RatFunc {
        self.g.get(&[a, b])
    }

    pub fn ginv(&self, a: usize, b: usize) -> &RatFunc {
        self.inv.get(&[a, b])
    }

    /// `Γ^c_ab = ½ g^cd (∂_a g_bd + ∂_b g_ad − ∂_d g_ab)`.
    pub fn levi_civita(&self) -> Connection {
        let d = self.dim();
        let n = self.nvars();
        let dg = self.g.gradient();
        let half = Rational::new(1.into(), 2.into());
        let lowered: Vec<RatFunc> = super::multi_indices(d, 3)
            .map(|i| {
                let (dd, a, b) = (i[0], i[1], i[2]);
                (dg.get(&[a, b, dd]) + dg.get(&[b, a, dd]) - dg.get(&[dd, a, b])).scale(&half)
            })
            .collect();
        let gamma = TensorField::from_fn(d, n, vec![Variance::Up, Variance::Down, Variance::Down], |i| {
            let (c, a, b) = (i[0], i[1], i[2]);
            let mut acc = RatFunc::zero(n);
            for dd in 0..d {
                let gi = self.ginv(c, dd);
                if gi.is_zero() {
                    continue;
                }
                let l = &lowered[(dd * d + a) * d + b];
                if !l.is_zero() {
                    acc = &acc + &(gi * l);
                }
            }
            acc
        });
        Connection::new(gamma).expect("Levi-Civita symbols are symmetric")
    }

    /// `Ω² g`.
    pub fn rescale(&self, omega: &RatFunc) -> Result<Metric, MetricError> {
        if omega.is_zero() {
            return Err(MetricError::ZeroFactor);
        }
        let o2 = omega * omega;
        let inv_o2 = o2.recip().map_err(|_| MetricError::ZeroFactor)?;
        Ok(Metric { g: self.g.mul_scalar(&o2), inv: self.inv.mul_scalar(&inv_o2) })
    }

    pub fn inner(&self, u: &[RatFunc], v: &[RatFunc]) -> RatFunc {
        let d = self.dim();
        let mut acc = RatFunc::zero(self.nvars());
        for a in 0..d {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..d {
                let gab = self.gab(a, b);
                if !gab.is_zero() && !v[b].is_zero() {
                    acc = &acc + &(&(&u[a] * gab) * &v[b]);
                }
            }
        }
        acc
    }

    /// `v_a = g_ab v^b`.
    pub fn flat(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        contract_rows(&self.g, v)
    }

    /// `w^a = g^ab w_b`.
    pub fn sharp(&self, w: &[RatFunc]) -> Vec<RatFunc> {
        contract_rows(&self.inv, w)
    }

    /// Exact numeric signature `(positive, negative)` at a rational point.
    pub fn signature_at(&self, point: &[Rational]) -> Option<(usize, usize)> {
        let d = self.dim();
        let mut m: Vec<Vec<Rational>> = (0..d)
            .map(|a| (0..d).map(|b| self.gab(a, b).evaluate(point).ok()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        crate::linalg::symmetric_signature(&mut m)
    }
}

fn contract_rows(m: &TensorField, v: &[RatFunc]) -> Vec<RatFunc> {
    let d = m.dim();
    (0..d)
        .map(|a| {
            let mut acc = RatFunc::zero(m.nvars());
            for (b, vb) in v.iter().enumerate() {
                let c = m.get(&[a, b]);
                if !c.is_zero() && !vb.is_zero() {
                    acc = &acc + &(c * vb);
                }
            }
            acc
        })
        .collect()
}

/// Fast path for `[[A, I], [I, 0]]`, whose inverse is `[[0, I], [I, −A]]`.
fn block_inverse(g: &TensorField) -> Option<TensorField> {
    let d = g.dim();
    if !d.is_multiple_of(2) {
        return None;
    }
    let n = d / 2;
    for i in 0..n {
        for j in 0..n {
            let id = if i == j { 1 } else { 0 };
            if !g.get(&[n + i, n + j]).is_zero()
                || g.get(&[i, n + j]).constant_value() != Some(Rational::from_integer(id.into()))
            {
                return None;
            }
        }
    }
    let nv = g.nvars();
    Some(TensorField::from_fn(d, nv, vec![Variance::Up, Variance::Up], |i| {
        let (a, b) = (i[0], i[1]);
        match (a < n, b < n) {
            (true, true) => RatFunc::zero(nv),
            (true, false) | (false, true) => {
                if a % n == b % n {
                    RatFunc::one(nv)
                } else {
                    RatFunc::zero(nv)
                }
            }
            (false, false) => -g.get(&[a - n, b - n]),
        }
    }))
}

fn gauss_inverse(g: &TensorField) -> Result<TensorField, MetricError> {
    let d = g.dim();
    let nv = g.nvars();
    let mut a: Vec<Vec<RatFunc>> = (0..d).map(|i| (0..d).map(|j| g.get(&[i, j]).clone()).collect()).collect();
    let mut inv: Vec<Vec<RatFunc>> =
        (0..d).map(|i| (0..d).map(|j| if i == j { RatFunc::one(nv) } else { RatFunc::zero(nv) }).collect()).collect();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !a[r][col].is_zero()).ok_or(MetricError::Singular)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip().map_err(|_| MetricError::Singular)?;
        for j in 0..d {
            a[col][j] = (&a[col][j] * &p).normalize();
            inv[col][j] = (&inv[col][j] * &p).normalize();
        }
        for r in 0..d {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..d {
                let ta = &a[r][j] - &(&f * &a[col][j]);
                a[r][j] = ta.normalize();
                let ti = &inv[r][j] - &(&f * &inv[col][j]);
                inv[r][j] = ti.normalize();
            }
        }
    }
    Ok(TensorField::from_fn(d, nv, vec![Variance::Up, Variance::Up], |i| inv[i[0]][i[1]].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_metric_has_flat_connection() {
        let g = TensorField::from_fn(2, 2, vec![Variance::Down, Variance::Down], |i| {
            RatFunc::from_int(2, if i[0] == i[1] { 2 } else { 1 })
        });
        let m = Metric::new(g).unwrap();
        assert!(m.levi_civita().christoffel().is_zero());
    }

    #[test]
    fn gaussian_inverse_is_inverse() {
        let x = RatFunc::var(2, 0);
        let g = TensorField::from_fn(2, 2, vec![Variance::Down, Variance::Down], |i| match (i[0], i[1]) {
            (0, 0) => &x + &RatFunc::one(2),
            (1, 1) => RatFunc::from_int(2, -1),
            _ => RatFunc::var(2, 1),
        });
        let m = Metric::new(g.clone()).unwrap();
        let prod = g.tensor(m.inverse()).contract(1, 2).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let want = if a == b { 1 } else { 0 };
                assert_eq!(prod.get(&[a, b]), &RatFunc::from_int(2, want));
            }
        }
    }

    #[test]
    fn singular_metric_rejected() {
        let g = TensorField::zeros(2, 2, vec![Variance::Down, Variance::Down]);
        assert!(matches!(Metric::new(g), Err(MetricError::Singular)));
    }
}
