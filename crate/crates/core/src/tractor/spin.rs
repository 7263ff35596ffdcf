use super::adjoint::Endo;
use super::standard::StdTractor;
use crate::conformal::{DualSpinor, SpinGeometry, SpinorField};
use crate::exact::{RatFunc, Rational};
use crate::linalg::rank_ratfunc;

/// A value times `√2^power`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sqrt2Scaled<T> {
    pub value: T,
    pub power: u32,
}

/// Spin tractor `(τ; χ)` with `τ` of weight `−½` and `χ` of weight `½`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinTractor {
    pub tau: SpinorField,
    pub chi: SpinorField,
}

impl SpinTractor {
    pub fn zero(n: usize, nvars: usize) -> Self {
        SpinTractor {
            tau: SpinorField::zero(n, nvars).with_weight_twice(-1),
            chi: SpinorField::zero(n, nvars).with_weight_twice(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.tau.is_zero() && self.chi.is_zero()
    }

    pub fn add(&self, o: &SpinTractor) -> SpinTractor {
        SpinTractor { tau: self.tau.add(&o.tau), chi: self.chi.add(&o.chi) }
    }

    pub fn sub(&self, o: &SpinTractor) -> SpinTractor {
        SpinTractor { tau: self.tau.sub(&o.tau), chi: self.chi.sub(&o.chi) }
    }

    pub fn scale(&self, c: &Rational) -> SpinTractor {
        SpinTractor { tau: self.tau.scale(c), chi: self.chi.scale(c) }
    }

    pub fn normalize(&self) -> SpinTractor {
        SpinTractor { tau: self.tau.normalize(), chi: self.chi.normalize() }
    }

    /// Components `τ` then `χ`.
    pub fn components(&self) -> Vec<RatFunc> {
        self.tau.components().iter().chain(self.chi.components()).cloned().collect()
    }
}

/// Dual spin tractor `(η̄; η)` paired with `(τ; χ)` as `η̄(χ) + η(τ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualSpinTractor {
    pub eta_bar: DualSpinor,
    pub eta: DualSpinor,
}

impl DualSpinTractor {
    pub fn pair(&self, s: &SpinTractor) -> RatFunc {
        (&self.eta_bar.apply(&s.chi) + &self.eta.apply(&s.tau)).normalize()
    }
}

/// `∇_c (τ; χ) = (D_cτ + Ρ_cp γ'^p χ; D_cχ + γ'_c τ)`.
pub fn spin_connection(g: &SpinGeometry, s: &SpinTractor, dir: usize) -> SpinTractor {
    let p = g.data().schouten();
    let row: Vec<RatFunc> = (0..g.dim()).map(|q| p.get(&[dir, q]).clone()).collect();
    let tau = g.covariant_derivative(dir, &s.tau).add(&g.gamma_covector(&row, &s.chi));
    let chi = g.covariant_derivative(dir, &s.chi).add(&g.gamma_low(dir, &s.tau));
    SpinTractor { tau, chi }.normalize()
}

/// `L_0 χ = ((1/n) D̸'χ; χ)`.
pub fn l0_spin(g: &SpinGeometry, chi: &SpinorField) -> SpinTractor {
    let c = Rational::new(1.into(), (g.n() as i64).into());
    SpinTractor { tau: g.dirac(chi).scale(&c).with_weight_twice(-1), chi: chi.clone() }
}

/// `T · S = √2 (−φ_a γ'^a τ + ρ χ; φ_a γ'^a χ − σ τ)`.
pub fn tractor_clifford(g: &SpinGeometry, t: &StdTractor, s: &SpinTractor) -> Sqrt2Scaled<SpinTractor> {
    let tau = g.gamma_covector(&t.phi, &s.tau).neg().add(&s.chi.mul_scalar(&t.rho));
    let chi = g.gamma_covector(&t.phi, &s.chi).sub(&s.tau.mul_scalar(&t.sigma));
    Sqrt2Scaled {
        value: SpinTractor { tau: tau.with_weight_twice(-1), chi: chi.with_weight_twice(1) }.normalize(),
        power: 1,
    }
}

/// Basis `E_I` and its `h`-dual `E^I`, in slot order `[ν, ω_a, σ]`.
pub fn tractor_frame(g: &SpinGeometry) -> (Vec<StdTractor>, Vec<StdTractor>) {
    let d = g.dim();
    let nv = g.nvars();
    let basis: Vec<StdTractor> = (0..d + 2).map(|i| StdTractor::basis(d, nv, i)).collect();
    let m = g.data().metric();
    let dual = (0..d + 2)
        .map(|i| {
            if i == 0 {
                basis[d + 1].clone()
            } else if i == d + 1 {
                basis[0].clone()
            } else {
                let mut t = StdTractor::zero(d, nv);
                t.phi = (0..d).map(|b| m.gab(i - 1, b).clone()).collect();
                t
            }
        })
        .collect();
    (basis, dual)
}

/// `A • S = −¼ Σ_I (A E_I) · (E^I · S)`.
pub fn adjoint_spin_action(g: &SpinGeometry, a: &Endo, s: &SpinTractor) -> SpinTractor {
    let (basis, dual) = tractor_frame(g);
    let mut out = SpinTractor::zero(g.n(), g.nvars());
    for (e, f) in basis.iter().zip(&dual) {
        let ae = a.apply(e);
        if ae.is_zero() {
            continue;
        }
        let inner = tractor_clifford(g, f, s).value;
        if inner.is_zero() {
            continue;
        }
        out = out.add(&tractor_clifford(g, &ae, &inner).value);
    }
    // Two Clifford factors contribute √2² = 2.
    out.scale(&Rational::new((-1).into(), 2.into())).normalize()
}

/// Dimension of `{T : T · S = 0}` over the function field.
pub fn clifford_kernel_dimension(g: &SpinGeometry, s: &SpinTractor) -> usize {
    let (basis, _) = tractor_frame(g);
    let cols: Vec<Vec<RatFunc>> = basis.iter().map(|e| tractor_clifford(g, e, s).value.components()).collect();
    let rows: Vec<Vec<RatFunc>> = (0..cols[0].len()).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
    basis.len() - rank_ratfunc(&rows)
}
