use crate::exact::{RatFunc, Rational};

/// Spinor in the model `Λ•ℝⁿ`: component `S` is the coefficient of
/// `e_S`, with bit `a` of `S` standing for `e_{a+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorField {
    n: usize,
    nvars: usize,
    /// Twice the density weight.
    weight2: i32,
    comps: Vec<RatFunc>,
}

fn sign_before(mask: usize, a: usize) -> bool {
    (mask & ((1 << a) - 1)).count_ones() % 2 == 1
}

impl SpinorField {
    pub fn zero(n: usize, nvars: usize) -> Self {
        SpinorField { n, nvars, weight2: 0, comps: vec![RatFunc::zero(nvars); 1 << n] }
    }

    pub fn basis(n: usize, nvars: usize, mask: usize) -> Self {
        let mut s = Self::zero(n, nvars);
        s.comps[mask] = RatFunc::one(nvars);
        s
    }

    /// `e₁∧…∧eₙ`.
    pub fn volume(n: usize, nvars: usize) -> Self {
        Self::basis(n, nvars, (1 << n) - 1)
    }

    pub fn from_components(n: usize, comps: Vec<RatFunc>) -> Self {
        assert_eq!(comps.len(), 1 << n);
        let nvars = comps[0].nvars();
        SpinorField { n, nvars, weight2: 0, comps }
    }

    pub fn with_weight_twice(mut self, w2: i32) -> Self {
        self.weight2 = w2;
        self
    }

    pub fn weight_twice(&self) -> i32 {
        self.weight2
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn component(&self, mask: usize) -> &RatFunc {
        &self.comps[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }

    /// `Some(0)` for even, `Some(1)` for odd, `None` if mixed or zero.
    pub fn parity(&self) -> Option<u32> {
        let mut seen = None;
        for (m, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = m.count_ones() % 2;
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        seen
    }

    fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        SpinorField { comps: self.comps.iter().map(f).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn mul_scalar(&self, f: &RatFunc) -> Self {
        if f.is_zero() {
            return SpinorField::zero(self.n, self.nvars).with_weight_twice(self.weight2);
        }
        self.map(|x| if x.is_zero() { x.clone() } else { x * f })
    }

    pub fn add(&self, other: &SpinorField) -> Self {
        SpinorField { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(), ..self.clone() }
    }

    pub fn sub(&self, other: &SpinorField) -> Self {
        SpinorField { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(), ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| -x)
    }

    /// `ε_a`: left wedge with `e_{a+1}`.
    pub fn wedge(&self, a: usize) -> Self {
        let mut out = SpinorField::zero(self.n, self.nvars).with_weight_twice(self.weight2);
        for (m, c) in self.comps.iter().enumerate() {
            if c.is_zero() || m & (1 << a) != 0 {
                continue;
            }
            out.comps[m | (1 << a)] = if sign_before(m, a) { -c } else { c.clone() };
        }
        out
    }

    /// `ι_a`: contraction with the dual of `e_{a+1}`.
    pub fn contract(&self, a: usize) -> Self {
        let mut out = SpinorField::zero(self.n, self.nvars).with_weight_twice(self.weight2);
        for (m, c) in self.comps.iter().enumerate() {
            if c.is_zero() || m & (1 << a) == 0 {
                continue;
            }
            out.comps[m & !(1 << a)] = if sign_before(m, a) { -c } else { c.clone() };
        }
        out
    }

    /// Applies `Σ_a w_a ε_a − Σ_a c_a ι_a`.
    pub fn clifford(&self, wedge: &[RatFunc], contract: &[RatFunc]) -> Self {
        let mut out = SpinorField::zero(self.n, self.nvars).with_weight_twice(self.weight2);
        for a in 0..self.n {
            if !wedge[a].is_zero() {
                out = out.add(&self.wedge(a).mul_scalar(&wedge[a]));
            }
            if !contract[a].is_zero() {
                out = out.sub(&self.contract(a).mul_scalar(&contract[a]));
            }
        }
        out
    }

    pub fn d(&self, var: usize) -> Self {
        self.map(|x| x.d(var))
    }

    pub fn normalize(&self) -> Self {
        self.map(RatFunc::normalize)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Option<Vec<Rational>> {
        self.comps.iter().map(|c| c.evaluate(point).ok()).collect()
    }
}

/// Linear functional on spinors, `⟨α, e_S⟩ = α_S`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualSpinor {
    n: usize,
    comps: Vec<RatFunc>,
}

impl DualSpinor {
    pub fn new(n: usize, comps: Vec<RatFunc>) -> Self {
        assert_eq!(comps.len(), 1 << n);
        DualSpinor { n, comps }
    }

    /// `c · e_S^*`.
    pub fn basis(n: usize, nvars: usize, mask: usize, c: Rational) -> Self {
        let mut comps = vec![RatFunc::zero(nvars); 1 << n];
        comps[mask] = RatFunc::constant(nvars, c);
        DualSpinor { n, comps }
    }

    pub fn apply(&self, s: &SpinorField) -> RatFunc {
        let mut acc = RatFunc::zero(s.nvars());
        for (a, b) in self.comps.iter().zip(s.components()) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    /// `α ∘ A` for an operator given by its action on basis spinors.
    pub fn compose(&self, op: impl Fn(&SpinorField) -> SpinorField, nvars: usize) -> DualSpinor {
        let comps = (0..(1usize << self.n)).map(|m| self.apply(&op(&SpinorField::basis(self.n, nvars, m)))).collect();
        DualSpinor { n: self.n, comps }
    }

    pub fn components(&self) -> &[RatFunc] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(RatFunc::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DualSpinor { n: self.n, comps: self.comps.iter().map(|x| x.scale(c)).collect() }
    }

    pub fn add(&self, other: &DualSpinor) -> Self {
        DualSpinor { n: self.n, comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &DualSpinor) -> Self {
        DualSpinor { n: self.n, comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn mul_scalar(&self, f: &RatFunc) -> Self {
        DualSpinor { n: self.n, comps: self.comps.iter().map(|x| x * f).collect() }
    }
}
