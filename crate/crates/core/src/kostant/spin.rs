use super::model::{LieMatrix, Model};
use super::KostantError;
use crate::exact::{int, rat, Rational};
use crate::tractor::Sqrt2Scaled;
use num_traits::{One, Zero};

/// Chirality of a spinor in `Λ•ℝ^{n+1}`: even forms span `Δ_−`, odd forms `Δ_+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// Element of `Λ•ℝ^{n+1}`; component `S` is the coefficient of `e_S` for a
/// bitmask `S` of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinVector {
    comps: Vec<Rational>,
}

impl SpinVector {
    pub fn zero(n: usize) -> Self {
        SpinVector { comps: vec![Rational::zero(); 1 << (n + 1)] }
    }

    pub fn basis(n: usize, mask: usize) -> Self {
        let mut s = Self::zero(n);
        s.comps[mask] = Rational::one();
        s
    }

    pub fn from_components(comps: Vec<Rational>) -> Self {
        assert!(comps.len().is_power_of_two(), "spinor length must be a power of two");
        SpinVector { comps }
    }

    pub fn components(&self) -> &[Rational] {
        &self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for (mask, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                if mask.count_ones() % 2 == 0 {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (true, true) => Parity::Mixed,
            (false, true) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn add(&self, o: &SpinVector) -> SpinVector {
        SpinVector { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &SpinVector) -> SpinVector {
        SpinVector { comps: self.comps.iter().zip(&o.comps).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> SpinVector {
        SpinVector { comps: self.comps.iter().map(|a| a * c).collect() }
    }

    /// `e_i ∧ s`.
    pub fn wedge_generator(&self, i: usize) -> SpinVector {
        let mut out = vec![Rational::zero(); self.comps.len()];
        for (mask, c) in self.comps.iter().enumerate() {
            if c.is_zero() || mask & (1 << i) != 0 {
                continue;
            }
            out[mask | (1 << i)] = if below(mask, i).is_multiple_of(2) { c.clone() } else { -c.clone() };
        }
        SpinVector { comps: out }
    }

    /// Interior product `ι_i s` with the dual generator.
    pub fn contract_generator(&self, i: usize) -> SpinVector {
        let mut out = vec![Rational::zero(); self.comps.len()];
        for (mask, c) in self.comps.iter().enumerate() {
            if c.is_zero() || mask & (1 << i) == 0 {
                continue;
            }
            out[mask & !(1 << i)] = if below(mask, i).is_multiple_of(2) { c.clone() } else { -c.clone() };
        }
        SpinVector { comps: out }
    }
}

fn below(mask: usize, i: usize) -> u32 {
    (mask & ((1 << i) - 1)).count_ones()
}

/// Sign of `e_A ∧ e_B` relative to `e_{A∪B}`, or `None` if they overlap.
fn merge_sign(a: usize, b: usize) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0;
    let mut bits = b;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        swaps += (a >> (j + 1)).count_ones();
        bits &= bits - 1;
    }
    Some(swaps % 2 == 0)
}

/// Spin representation of `so(n+1, n+1)` on `Λ•E`, `E = ℝ^{n+1}`.
#[derive(Clone, Debug)]
pub struct SpinModule {
    n: usize,
}

impl SpinModule {
    pub fn new(n: usize) -> Self {
        SpinModule { n }
    }

    pub fn dim(&self) -> usize {
        1 << (self.n + 1)
    }

    /// `γ'(X) = X·/√2`: `e_i` wedges, `f_i` contracts with a minus sign, so
    /// that `γ'(X)γ'(Y) + γ'(Y)γ'(X) = −h(X, Y)`.
    pub fn gamma_prime(&self, x: &[Rational], s: &SpinVector) -> SpinVector {
        let m = self.n + 1;
        let mut out = SpinVector::zero(self.n);
        for i in 0..m {
            if !x[i].is_zero() {
                out = out.add(&s.wedge_generator(i).scale(&x[i]));
            }
            if !x[m + i].is_zero() {
                out = out.sub(&s.contract_generator(i).scale(&x[m + i]));
            }
        }
        out
    }

    /// Clifford multiplication `X · s`, tagged with its factor `√2`.
    pub fn clifford(&self, x: &[Rational], s: &SpinVector) -> Sqrt2Scaled<SpinVector> {
        Sqrt2Scaled { value: self.gamma_prime(x, s), power: 1 }
    }

    /// `A • s = −¼ Σ_I (A e_I) · (e^I · s)`, with `e^I` the `h`-dual basis.
    pub fn act(&self, a: &LieMatrix, s: &SpinVector) -> SpinVector {
        let m = self.n + 1;
        let size = 2 * m;
        let mut out = SpinVector::zero(self.n);
        for i in 0..size {
            let col: Vec<Rational> = (0..size).map(|r| a.0[r][i].clone()).collect();
            if col.iter().all(Zero::is_zero) {
                continue;
            }
            let mut dual = vec![Rational::zero(); size];
            dual[(i + m) % size] = Rational::one();
            let inner = self.gamma_prime(&dual, s);
            if inner.is_zero() {
                continue;
            }
            out = out.add(&self.gamma_prime(&col, &inner));
        }
        // √2 · √2 = 2 from the two Clifford factors.
        out.scale(&rat(-1, 2))
    }

    /// Invariant pairing `⟨α, β⟩ = [αᵗ ∧ β]_top` with `ᵗ` the reversal.
    pub fn pairing(&self, a: &SpinVector, b: &SpinVector) -> Rational {
        let top = self.dim() - 1;
        let mut acc = Rational::zero();
        for (ma, ca) in a.comps.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let mb = top ^ ma;
            let cb = &b.comps[mb];
            if cb.is_zero() {
                continue;
            }
            let p = ma.count_ones();
            let rev = (p * p.saturating_sub(1) / 2) % 2 == 0;
            let merge = merge_sign(ma, mb).unwrap_or(true);
            let term = ca * cb;
            acc += if rev == merge { term } else { -term };
        }
        acc
    }

    /// `s_F = 1`, annihilated by Clifford multiplication with `F`.
    pub fn s_f(&self) -> SpinVector {
        SpinVector::basis(self.n, 0)
    }

    /// `s_E`, a multiple of `e_0 ∧ … ∧ e_n` normalized by `⟨s_E, s_F⟩ = −½`.
    pub fn s_e(&self) -> SpinVector {
        let top = SpinVector::basis(self.n, self.dim() - 1);
        let c = self.pairing(&top, &self.s_f());
        top.scale(&(rat(-1, 2) / c))
    }

    /// `(X ∧ Y) · s = X·Y·s + h(X, Y) s`.
    pub fn bivector_action(&self, h: &LieMatrix, x: &[Rational], y: &[Rational], s: &SpinVector) -> SpinVector {
        let hxy: Rational = h.apply(y).iter().zip(x).map(|(a, b)| a * b).sum();
        self.gamma_prime(x, &self.gamma_prime(y, s)).scale(&int(2)).add(&s.scale(&hxy))
    }
}

/// `A • s` for `A ∈ g̃`.
pub fn spin_action(model: &Model, a: &LieMatrix, s: &SpinVector) -> Result<SpinVector, KostantError> {
    if !model.in_g_tilde(a) {
        return Err(KostantError::NotInAlgebra("so(h)"));
    }
    Ok(model.spin.act(a, s))
}

/// `X · s` for `X ∈ ℝ^{n+1,n+1}`.
pub fn spin_clifford(model: &Model, x: &[Rational], s: &SpinVector) -> Sqrt2Scaled<SpinVector> {
    model.spin.clifford(x, s)
}
