use super::cochain::{extend_cochain, kostant_del_star, Cochain, Side};
use super::components::{f_hat_wedge, normalize_step};
use super::model::{embed, LieMatrix, Model};
use super::KostantError;
use crate::exact::{int, Rational};
use num_traits::{One, Zero};

/// The trace-free cochain
/// `φ = Z₁∧Z₂⊗X_n⊗Z_n − Z₁∧Z₂⊗X₁⊗Z₁ + Z_n∧Z₂⊗X_n⊗Z₁`
/// together with its extension, codifferential, expected value and `Ψ¹`.
#[derive(Clone, Debug)]
pub struct WorkedExample {
    pub phi: Cochain<LieMatrix>,
    pub phi_tilde: Cochain<LieMatrix>,
    pub del_star: Cochain<LieMatrix>,
    /// `−Z̃₁⊗Z̃_n∧Z̃₂ − Z̃_n⊗Z̃₁∧Z̃₂`.
    pub expected: Cochain<LieMatrix>,
    pub psi1: Cochain<LieMatrix>,
}

impl WorkedExample {
    pub fn matches(&self) -> bool {
        self.del_star.sub(&self.expected).is_zero()
    }
}

/// `X_i ⊗ Z_j ∈ g₀`, acting on `g_−` by `Y ↦ Z_j(Y) X_i`; only trace-free
/// combinations are passed in, so this is the unit `E_ij` of `sl(n+1)`.
fn g0_unit(n: usize, i: usize, j: usize) -> QMat {
    let mut a = vec![vec![Rational::zero(); n + 1]; n + 1];
    a[i][j] = Rational::one();
    a
}

type QMat = Vec<Vec<Rational>>;

fn sum(a: &QMat, b: &QMat, c: i64) -> QMat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y * int(c)).collect()).collect()
}

/// Needs three distinct indices `1, 2, n`, so `n ≥ 3`.
pub fn worked_example(model: &Model) -> Result<WorkedExample, KostantError> {
    let n = model.n;
    if n < 3 {
        return Err(KostantError::DimensionTooSmall(n));
    }
    let z = &model.duals_g;
    let (z1, z2, zn) = (&z[0], &z[1], &z[n - 1]);
    let a1 = embed(&sum(&g0_unit(n, n, n), &g0_unit(n, 1, 1), -1));
    let a2 = embed(&g0_unit(n, n, 1));
    let phi = Cochain::from_forms(model, Side::Projective, &[z1.clone(), z2.clone()], &a1)
        .add(&Cochain::from_forms(model, Side::Projective, &[zn.clone(), z2.clone()], &a2));
    let phi_tilde = extend_cochain(model, &phi)?;
    let del_star = kostant_del_star(model, &phi_tilde)?;

    let zt = &model.duals;
    let (t1, t2, tn) = (&zt[0], &zt[1], &zt[n - 1]);
    let w_n2 = f_hat_wedge(model, tn, t2).ok_or(KostantError::Component("Z̃_n ∉ f̂"))?;
    let w_12 = f_hat_wedge(model, t1, t2).ok_or(KostantError::Component("Z̃_1 ∉ f̂"))?;
    let expected = Cochain::from_forms(model, Side::Conformal, std::slice::from_ref(t1), &w_n2)
        .add(&Cochain::from_forms(model, Side::Conformal, std::slice::from_ref(tn), &w_12))
        .scale(&int(-1));
    let psi1 = normalize_step(model, &phi_tilde)?;
    Ok(WorkedExample { phi, phi_tilde, del_star, expected, psi1 })
}
