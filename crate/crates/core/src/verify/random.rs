use super::VerifyError;
use crate::exact::{int, rat, MultiPoly, RatFunc};
use crate::projective::ProjectiveStructure;
use crate::pw::{PwStructure, WalkerMetric};
use crate::tensor::{Connection, TensorField, Variance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub seed: u64,
    pub max_degree: u32,
}

impl RandomSpec {
    pub fn new(n: usize, seed: u64) -> Self {
        RandomSpec { n, seed, max_degree: 2 }
    }

    pub fn descriptor(&self) -> String {
        format!("random special structure, n = {}, degree ≤ {}, seed {}", self.n, self.max_degree, self.seed)
    }
}

/// Exponent vectors of total degree at most `max_degree` in `nvars` variables.
fn monomials(nvars: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0; nvars]];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &out {
            let start = m.iter().rposition(|&e| e > 0).unwrap_or(0);
            for v in start..nvars {
                let mut e = m.clone();
                e[v] += 1;
                next.push(e);
            }
        }
        out.extend(next.iter().filter(|e| !out.contains(e)).cloned().collect::<Vec<_>>());
    }
    out.sort();
    out.dedup();
    out
}

/// Symmetric Christoffel symbols with polynomial entries of degree at most
/// `max_degree` and coefficients drawn from `−3..=3`, made special by the
/// trace-removing projective change.
pub fn random_special(spec: RandomSpec) -> Result<ProjectiveStructure, VerifyError> {
    let n = spec.n;
    if n < 2 {
        return Err(VerifyError::DimensionTooSmall(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let monos = monomials(n, spec.max_degree);
    let mut gamma = TensorField::zeros(n, n, vec![Variance::Up, Variance::Down, Variance::Down]);
    for c in 0..n {
        for a in 0..n {
            for b in a..n {
                let terms = monos.iter().map(|m| (m.clone(), int(rng.gen_range(-3..=3))));
                let p = RatFunc::from_poly(MultiPoly::from_terms(n, terms).expect("exponent length"));
                gamma.set(&[c, a, b], p.clone());
                gamma.set(&[c, b, a], p);
            }
        }
    }
    let conn = Connection::new(gamma).expect("symmetric by construction");
    ProjectiveStructure::from_connection(conn).map_err(|_| VerifyError::NotSpecial)
}

/// The Walker metric of `pw` with `extra` added to its `dx dx` block.
pub fn perturbed_pw(pw: &PwStructure, extra: &[Vec<RatFunc>]) -> Result<WalkerMetric, VerifyError> {
    let n = pw.n();
    let b: Vec<Vec<RatFunc>> =
        (0..n).map(|a| (0..n).map(|c| pw.metric().gab(a, c) + &extra[a][c]).collect()).collect();
    Ok(WalkerMetric::new(n, &b)?)
}

/// Flat PW metric plus `dx¹ ⊙ dx²`.
pub fn perturbed_flat(n: usize) -> Result<WalkerMetric, VerifyError> {
    if n < 2 {
        return Err(VerifyError::DimensionTooSmall(n));
    }
    let pw = PwStructure::new(ProjectiveStructure::flat(n)).map_err(|_| VerifyError::NotSpecial)?;
    let d = 2 * n;
    let mut extra = vec![vec![RatFunc::zero(d); n]; n];
    extra[0][1] = RatFunc::constant(d, rat(1, 2));
    extra[1][0] = RatFunc::constant(d, rat(1, 2));
    perturbed_pw(&pw, &extra)
}

/// PW metric of `Γ¹₂₂ = x¹` plus `(p₁)² dx² ⊙ dx²`.
pub fn perturbed_quadratic(n: usize) -> Result<WalkerMetric, VerifyError> {
    if n < 2 {
        return Err(VerifyError::DimensionTooSmall(n));
    }
    let mut gamma = TensorField::zeros(n, n, vec![Variance::Up, Variance::Down, Variance::Down]);
    gamma.set(&[0, 1, 1], RatFunc::var(n, 0));
    let conn = Connection::new(gamma).expect("symmetric");
    let p = ProjectiveStructure::from_connection(conn).map_err(|_| VerifyError::NotSpecial)?;
    let pw = PwStructure::new(p).map_err(|_| VerifyError::NotSpecial)?;
    let d = 2 * n;
    let mut extra = vec![vec![RatFunc::zero(d); n]; n];
    let p1 = RatFunc::var(d, n);
    extra[1][1] = &p1 * &p1;
    perturbed_pw(&pw, &extra)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(monomials(3, 2).len(), 10);
        assert_eq!(monomials(3, 0).len(), 1);
        assert!(monomials(3, 2).iter().all(|m| m.iter().sum::<u32>() <= 2));
    }

    #[test]
    fn random_structures_are_special_and_reproducible() {
        let s = RandomSpec::new(2, 9);
        let a = random_special(s).unwrap();
        let b = random_special(s).unwrap();
        assert!(a.is_special());
        assert_eq!(a.connection().christoffel().components(), b.connection().christoffel().components());
        assert!(random_special(RandomSpec::new(1, 0)).is_err());
    }

    #[test]
    fn perturbation_changes_only_the_horizontal_block() {
        let w = perturbed_flat(2).unwrap();
        assert_eq!(w.metric().gab(0, 1), &RatFunc::constant(4, rat(1, 2)));
        assert!(w.metric().gab(2, 3).is_zero());
    }
}
