//! Spin calculus relative to an isotropic frame `H_1..H_n, V^1..V^n` with
//! `g(V^a, H_b) = δ^a_b`.
//!
//! Every gamma matrix here is `γ' = γ/√2`, acting by `γ'(V^a) = ε_a` and
//! `γ'(H_a) = −ι_a`, so that `γ'_p γ'_q + γ'_q γ'_p = −g_pq`. Formulas with
//! `√2` factors are rescaled so that only rational coefficients remain.

use super::{ConformalData, SpinorField};
use crate::exact::{RatFunc, Rational};
use crate::linalg::rank_ratfunc;
use crate::pw::{PwStructure, WalkerMetric};
use crate::tensor::MetricError;

type CliffordCoeffs = (Vec<RatFunc>, Vec<RatFunc>);

#[derive(Clone, Debug)]
pub struct SpinGeometry {
    n: usize,
    data: ConformalData,
    frame: Vec<Vec<RatFunc>>,
    low: Vec<CliffordCoeffs>,
    up: Vec<CliffordCoeffs>,
    /// `ω[i][k][j] = g(e_k, ∇_{∂_i} e_j)`.
    omega: Vec<Vec<Vec<RatFunc>>>,
    /// `Υ = dΩ/Ω` relative to the reference scale; zero in that scale.
    upsilon: Vec<RatFunc>,
}

impl SpinGeometry {
    pub fn new(data: ConformalData, frame: Vec<Vec<RatFunc>>, upsilon: Vec<RatFunc>) -> Self {
        let d = data.dim();
        let n = d / 2;
        let metric = data.metric();
        let flats: Vec<Vec<RatFunc>> = frame.iter().map(|e| metric.flat(e)).collect();
        let low = (0..d)
            .map(|i| {
                let w = (0..n).map(|a| flats[a][i].clone()).collect();
                let c = (0..n).map(|a| flats[n + a][i].clone()).collect();
                (w, c)
            })
            .collect();
        let up = (0..d)
            .map(|i| {
                let w = (0..n).map(|a| frame[a][i].clone()).collect();
                let c = (0..n).map(|a| frame[n + a][i].clone()).collect();
                (w, c)
            })
            .collect();
        let lc = data.levi_civita();
        let omega = (0..d)
            .map(|i| {
                let e_i = crate::pw::unit(d, i);
                let nabla: Vec<Vec<RatFunc>> = frame.iter().map(|ej| lc.along(&e_i, ej)).collect();
                (0..d)
                    .map(|k| {
                        (0..d)
                            .map(|j| {
                                let mut acc = RatFunc::zero(data.nvars());
                                for c in 0..d {
                                    if !flats[k][c].is_zero() && !nabla[j][c].is_zero() {
                                        acc = &acc + &(&flats[k][c] * &nabla[j][c]);
                                    }
                                }
                                acc.normalize()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SpinGeometry { n, data, frame, low, up, omega, upsilon }
    }

    /// PW scale with the frame of the Patterson–Walker structure.
    pub fn pw(pw: &PwStructure) -> Self {
        Self::walker(&pw.walker())
    }

    /// Walker scale with the frame `H_a, V^a`.
    pub fn walker(w: &WalkerMetric) -> Self {
        let data = ConformalData::with_connection(w.metric().clone(), w.levi_civita().clone());
        let d = w.dim();
        Self::new(data, w.null_frame(), vec![RatFunc::zero(d); d])
    }

    /// The scale `Ω² g` with the frame rescaled by `Ω⁻¹`.
    pub fn rescaled(pw: &PwStructure, omega: &RatFunc) -> Result<Self, MetricError> {
        Self::rescaled_walker(&pw.walker(), omega)
    }

    pub fn rescaled_walker(w: &WalkerMetric, omega: &RatFunc) -> Result<Self, MetricError> {
        let metric = w.metric().rescale(omega)?;
        let inv = omega.recip().map_err(|_| MetricError::ZeroFactor)?;
        let frame = w.null_frame().iter().map(|e| e.iter().map(|c| c * &inv).collect()).collect();
        let d = w.dim();
        let upsilon = (0..d).map(|i| (&omega.d(i) * &inv).normalize()).collect();
        Ok(Self::new(ConformalData::new(metric), frame, upsilon))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn nvars(&self) -> usize {
        self.data.nvars()
    }

    pub fn data(&self) -> &ConformalData {
        &self.data
    }

    pub fn frame(&self) -> &[Vec<RatFunc>] {
        &self.frame
    }

    pub fn upsilon(&self) -> &[RatFunc] {
        &self.upsilon
    }

    /// `γ'_i χ` for the coordinate field `∂_i`.
    pub fn gamma_low(&self, i: usize, chi: &SpinorField) -> SpinorField {
        chi.clifford(&self.low[i].0, &self.low[i].1)
    }

    /// `γ'^i χ = g^ij γ'_j χ`.
    pub fn gamma_up(&self, i: usize, chi: &SpinorField) -> SpinorField {
        chi.clifford(&self.up[i].0, &self.up[i].1)
    }

    /// `γ'(Y) χ` for a vector field `Y^i`.
    pub fn gamma_vector(&self, y: &[RatFunc], chi: &SpinorField) -> SpinorField {
        let metric = self.data.metric();
        let w: Vec<RatFunc> = (0..self.n).map(|a| metric.inner(&self.frame[a], y)).collect();
        let c: Vec<RatFunc> = (0..self.n).map(|a| metric.inner(&self.frame[self.n + a], y)).collect();
        chi.clifford(&w, &c)
    }

    /// `γ'_i` lowered by the frame covector `ξ_i`: `ξ_i γ'^i χ`.
    pub fn gamma_covector(&self, xi: &[RatFunc], chi: &SpinorField) -> SpinorField {
        let mut out = SpinorField::zero(self.n, self.nvars()).with_weight_twice(chi.weight_twice());
        for (i, x) in xi.iter().enumerate() {
            if !x.is_zero() {
                out = out.add(&self.gamma_up(i, chi).mul_scalar(x));
            }
        }
        out
    }

    /// `γ'(e_k)`: `−ι_k` on `H_k`, `ε_k` on `V^k`.
    pub fn gamma_frame(&self, k: usize, chi: &SpinorField) -> SpinorField {
        if k < self.n {
            chi.contract(k).neg()
        } else {
            chi.wedge(k - self.n)
        }
    }

    /// `γ'` of the dual frame vector: `H_k ↦ V^k`, `V^k ↦ H_k`.
    pub fn gamma_dual_frame(&self, k: usize, chi: &SpinorField) -> SpinorField {
        if k < self.n {
            chi.wedge(k)
        } else {
            chi.contract(k - self.n).neg()
        }
    }

    /// `D_i χ = ∂_i χ − ½ ω_ikj γ'^k γ'^j χ + w Υ_i χ`.
    pub fn covariant_derivative(&self, i: usize, chi: &SpinorField) -> SpinorField {
        let d = self.dim();
        let mut out = chi.d(i);
        let half = Rational::new((-1).into(), 2.into());
        for j in 0..d {
            let gj = self.gamma_dual_frame(j, chi);
            if gj.is_zero() {
                continue;
            }
            for k in 0..d {
                let w = &self.omega[i][k][j];
                if !w.is_zero() {
                    out = out.add(&self.gamma_dual_frame(k, &gj).mul_scalar(&w.scale(&half)));
                }
            }
        }
        if chi.weight_twice() != 0 && !self.upsilon[i].is_zero() {
            let w = Rational::new(chi.weight_twice().into(), 2.into());
            out = out.add(&chi.mul_scalar(&self.upsilon[i].scale(&w)));
        }
        out.normalize()
    }

    pub fn nabla(&self, chi: &SpinorField) -> Vec<SpinorField> {
        (0..self.dim()).map(|i| self.covariant_derivative(i, chi)).collect()
    }

    /// `D̸'χ = γ'^p D_p χ`, so the Dirac operator is `√2 D̸'`.
    pub fn dirac(&self, chi: &SpinorField) -> SpinorField {
        self.dirac_of(&self.nabla(chi))
    }

    fn dirac_of(&self, nabla: &[SpinorField]) -> SpinorField {
        let mut out = SpinorField::zero(self.n, self.nvars()).with_weight_twice(nabla[0].weight_twice());
        for (i, di) in nabla.iter().enumerate() {
            out = out.add(&self.gamma_up(i, di));
        }
        out.normalize()
    }

    /// `D_i χ + (1/2n) γ_i D̸χ = D_i χ + (1/n) γ'_i D̸'χ`.
    pub fn twistor_residual(&self, chi: &SpinorField) -> Vec<SpinorField> {
        let nabla = self.nabla(chi);
        let dirac = self.dirac_of(&nabla);
        let c = Rational::new(1.into(), (self.n as i64).into());
        nabla
            .iter()
            .enumerate()
            .map(|(i, di)| di.add(&self.gamma_low(i, &dirac).scale(&c)).normalize())
            .collect()
    }

    /// Rank of `v ↦ γ(v)χ` over the function field; the kernel has
    /// dimension `2n − rank`.
    pub fn clifford_rank(&self, chi: &SpinorField) -> usize {
        let cols: Vec<SpinorField> = (0..self.dim()).map(|k| self.gamma_frame(k, chi)).collect();
        let rows: Vec<Vec<RatFunc>> =
            (0..(1usize << self.n)).map(|m| cols.iter().map(|c| c.component(m).clone()).collect()).collect();
        rank_ratfunc(&rows)
    }

    pub fn kernel_dimension(&self, chi: &SpinorField) -> usize {
        self.dim() - self.clifford_rank(chi)
    }

    /// Pure iff the Clifford kernel is maximally isotropic.
    pub fn is_pure(&self, chi: &SpinorField) -> bool {
        !chi.is_zero() && self.kernel_dimension(chi) == self.n
    }

    /// `ℒ_k χ = D_k χ − ¼ D_[a k_b] γ^a γ^b χ − (1/4n)(D_p k^p) χ`.
    pub fn lie_derivative(&self, k: &[RatFunc], chi: &SpinorField) -> SpinorField {
        let d = self.dim();
        let metric = self.data.metric();
        let lc = self.data.levi_civita();
        let mut out = SpinorField::zero(self.n, self.nvars()).with_weight_twice(chi.weight_twice());
        for (i, ki) in k.iter().enumerate() {
            if !ki.is_zero() {
                out = out.add(&self.covariant_derivative(i, chi).mul_scalar(ki));
            }
        }
        let dk = super::derivative_of_flat(metric, lc, k).antisymmetrize(0, 1).expect("rank 2");
        let minus_half = Rational::new((-1).into(), 2.into());
        for b in 0..d {
            let gb = self.gamma_up(b, chi);
            if gb.is_zero() {
                continue;
            }
            for a in 0..d {
                let m = dk.get(&[a, b]);
                if !m.is_zero() {
                    out = out.add(&self.gamma_up(a, &gb).mul_scalar(&m.scale(&minus_half)));
                }
            }
        }
        let div = super::divergence(lc, k);
        let c = Rational::new((-1).into(), (4 * self.n as i64).into());
        out.add(&chi.mul_scalar(&div.scale(&c))).normalize()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::ProjectiveStructure;
    use crate::tensor::{Connection, TensorField, Variance};

    fn sample() -> PwStructure {
        let mut g = TensorField::zeros(2, 2, vec![Variance::Up, Variance::Down, Variance::Down]);
        g.set(&[0, 1, 1], RatFunc::var(2, 0));
        g.set(&[1, 0, 1], RatFunc::var(2, 1));
        g.set(&[1, 1, 0], RatFunc::var(2, 1));
        let p = ProjectiveStructure::from_connection(Connection::new(g).unwrap()).unwrap();
        PwStructure::new(p).unwrap()
    }

    #[test]
    fn anticommutator_is_minus_metric() {
        let pw = sample();
        let sg = SpinGeometry::pw(&pw);
        let d = pw.dim();
        for s in 0..4 {
            let psi = SpinorField::basis(2, d, s);
            for i in 0..d {
                for j in 0..d {
                    let ac = sg.gamma_low(i, &sg.gamma_low(j, &psi)).add(&sg.gamma_low(j, &sg.gamma_low(i, &psi)));
                    let want = psi.mul_scalar(pw.metric().gab(i, j)).neg();
                    assert_eq!(ac.normalize(), want.normalize());
                }
            }
        }
    }

    #[test]
    fn spin_connection_is_clifford_compatible() {
        // D_i(γ'(Y)χ) = γ'(D_i Y)χ + γ'(Y) D_i χ
        let pw = sample();
        let sg = SpinGeometry::pw(&pw);
        let d = pw.dim();
        let x1 = RatFunc::var(d, 0);
        let p2 = RatFunc::var(d, 3);
        let chi = SpinorField::from_components(2, vec![x1.clone(), p2.clone(), RatFunc::one(d), &x1 * &p2]);
        let y: Vec<RatFunc> = vec![p2.clone(), RatFunc::one(d), x1.clone(), RatFunc::zero(d)];
        let lc = pw.levi_civita();
        for i in 0..d {
            let lhs = sg.covariant_derivative(i, &sg.gamma_vector(&y, &chi));
            let dy = lc.along(&crate::pw::unit(d, i), &y);
            let rhs = sg.gamma_vector(&dy, &chi).add(&sg.gamma_vector(&y, &sg.covariant_derivative(i, &chi)));
            assert_eq!(lhs.normalize(), rhs.normalize(), "direction {i}");
        }
    }
}
