use super::{TensorError, TensorField, Variance};
use crate::exact::RatFunc;

/// Torsion-free affine connection given by Christoffel symbols `Γ^c_ab`,
/// stored with valence (up, down, down).
#[derive(Clone, Debug)]
pub struct Connection {
    gamma: TensorField,
}

impl Connection {
    /// Accepts `Γ^c_ab` indexed `[c, a, b]`; rejects asymmetric input.
    pub fn new(gamma: TensorField) -> Result<Self, TensorError> {
        if gamma.valence() != [Variance::Up, Variance::Down, Variance::Down] {
            return Err(TensorError::Incompatible("Christoffel symbols need valence (up, down, down)".into()));
        }
        let d = gamma.dim();
        for c in 0..d {
            for a in 0..d {
                for b in (a + 1)..d {
                    if gamma.get(&[c, a, b]) != gamma.get(&[c, b, a]) {
                        return Err(TensorError::Incompatible(format!(
                            "Γ^{c}_{{{a}{b}}} differs from Γ^{c}_{{{b}{a}}}"
                        )));
                    }
                }
            }
        }
        Ok(Connection { gamma })
    }

    pub fn flat(dim: usize, nvars: usize) -> Self {
        Connection { gamma: TensorField::zeros(dim, nvars, vec![Variance::Up, Variance::Down, Variance::Down]) }
    }

    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    pub fn nvars(&self) -> usize {
        self.gamma.nvars()
    }

    pub fn christoffel(&self) -> &TensorField {
        &self.gamma
    }

    /// `Γ^c_ab`.
    pub fn g(&self, c: usize, a: usize, b: usize) -> &RatFunc {
        self.gamma.get(&[c, a, b])
    }

    /// `∇_a T`, with the new index in front. Densities are trivialized by the
    /// scale the connection belongs to, so only tensor indices pick up `Γ`.
    pub fn covariant_derivative(&self, t: &TensorField) -> Result<TensorField, TensorError> {
        if t.dim() != self.dim() || t.nvars() != self.nvars() {
            return Err(TensorError::Incompatible("tensor and connection live on different charts".into()));
        }
        let d = self.dim();
        let rank = t.rank();
        let grad = t.gradient();
        let mut valence = vec![Variance::Down];
        valence.extend_from_slice(t.valence());
        let out = TensorField::from_fn(d, self.nvars(), valence, |idx| {
            let a = idx[0];
            let rest = &idx[1..];
            let mut acc = grad.get(idx).clone();
            let mut src = rest.to_vec();
            for p in 0..rank {
                let orig = rest[p];
                for s in 0..d {
                    let (coef, sign) = match t.valence()[p] {
                        Variance::Up => (self.g(orig, a, s), 1),
                        Variance::Down => (self.g(s, a, orig), -1),
                    };
                    if coef.is_zero() {
                        continue;
                    }
                    src[p] = s;
                    let term = coef * t.get(&src);
                    acc = if sign > 0 { &acc + &term } else { &acc - &term };
                }
                src[p] = orig;
            }
            acc
        });
        Ok(out.with_weight_twice(t.weight_twice()))
    }

    /// `R_ab^c_d`, fixed by `(∇_a∇_b − ∇_b∇_a)ξ^c = R_ab^c_d ξ^d`.
    pub fn riemann(&self) -> TensorField {
        let d = self.dim();
        let dg = self.gamma.gradient();
        TensorField::from_fn(d, self.nvars(), vec![Variance::Down, Variance::Down, Variance::Up, Variance::Down], |i| {
            let (a, b, c, dd) = (i[0], i[1], i[2], i[3]);
            if a == b {
                return RatFunc::zero(self.nvars());
            }
            let mut acc = dg.get(&[a, c, b, dd]) - dg.get(&[b, c, a, dd]);
            for e in 0..d {
                let l = self.g(c, a, e);
                if !l.is_zero() {
                    acc = &acc + &(l * self.g(e, b, dd));
                }
                let r = self.g(c, b, e);
                if !r.is_zero() {
                    acc = &acc - &(r * self.g(e, a, dd));
                }
            }
            acc
        })
    }

    /// `Ric_bd = R_ab^a_d`.
    pub fn ricci(&self) -> TensorField {
        let r = self.riemann();
        r.contract(0, 2).expect("valence of Riemann admits this trace")
    }

    /// `Γ^a_ab`, the divergence obstruction to preserving `dx¹∧…∧dxⁿ`.
    pub fn trace_form(&self) -> Vec<RatFunc> {
        let d = self.dim();
        (0..d)
            .map(|b| (0..d).fold(RatFunc::zero(self.nvars()), |acc, a| &acc + self.g(a, a, b)))
            .collect()
    }

    /// Component-wise change `Γ^c_ab + δΓ^c_ab`.
    pub fn shifted(&self, delta: &TensorField) -> Result<Connection, TensorError> {
        Connection::new(self.gamma.checked_add(delta)?)
    }

    pub fn is_flat_symbols(&self) -> bool {
        self.gamma.is_zero()
    }

    /// Applies `∇_Y Z` for vector fields given by components.
    pub fn along(&self, y: &[RatFunc], z: &[RatFunc]) -> Vec<RatFunc> {
        let d = self.dim();
        let n = self.nvars();
        (0..d)
            .map(|c| {
                let mut acc = RatFunc::zero(n);
                for (a, ya) in y.iter().enumerate() {
                    if ya.is_zero() {
                        continue;
                    }
                    let mut inner = z[c].d(a);
                    for (e, ze) in z.iter().enumerate() {
                        let gce = self.g(c, a, e);
                        if !gce.is_zero() && !ze.is_zero() {
                            inner = &inner + &(gce * ze);
                        }
                    }
                    acc = &acc + &(ya * &inner);
                }
                acc
            })
            .collect()
    }
}
