use crate::conformal::ConformalData;
use crate::exact::{RatFunc, Rational};

/// Standard tractor `(ρ; φ_a; σ)` in a fixed scale.
#[derive(Clone, Debug, PartialEq)]
pub struct StdTractor {
    pub rho: RatFunc,
    pub phi: Vec<RatFunc>,
    pub sigma: RatFunc,
}

impl StdTractor {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        StdTractor { rho: RatFunc::zero(nvars), phi: vec![RatFunc::zero(nvars); dim], sigma: RatFunc::zero(nvars) }
    }

    /// Slot vector `[ρ, φ_0..φ_{N−1}, σ]`.
    pub fn to_vec(&self) -> Vec<RatFunc> {
        let mut v = Vec::with_capacity(self.phi.len() + 2);
        v.push(self.rho.clone());
        v.extend(self.phi.iter().cloned());
        v.push(self.sigma.clone());
        v
    }

    pub fn from_vec(v: &[RatFunc]) -> Self {
        let m = v.len();
        StdTractor { rho: v[0].clone(), phi: v[1..m - 1].to_vec(), sigma: v[m - 1].clone() }
    }

    /// Basis tractor with a one in slot `i` of `to_vec` order.
    pub fn basis(dim: usize, nvars: usize, i: usize) -> Self {
        let v: Vec<RatFunc> =
            (0..dim + 2).map(|j| if i == j { RatFunc::one(nvars) } else { RatFunc::zero(nvars) }).collect();
        Self::from_vec(&v)
    }

    pub fn is_zero(&self) -> bool {
        self.rho.is_zero() && self.sigma.is_zero() && self.phi.iter().all(RatFunc::is_zero)
    }

    pub fn sub(&self, other: &StdTractor) -> StdTractor {
        StdTractor {
            rho: &self.rho - &other.rho,
            phi: self.phi.iter().zip(&other.phi).map(|(a, b)| a - b).collect(),
            sigma: &self.sigma - &other.sigma,
        }
    }

    pub fn add(&self, other: &StdTractor) -> StdTractor {
        StdTractor {
            rho: &self.rho + &other.rho,
            phi: self.phi.iter().zip(&other.phi).map(|(a, b)| a + b).collect(),
            sigma: &self.sigma + &other.sigma,
        }
    }

    pub fn scale(&self, c: &Rational) -> StdTractor {
        StdTractor {
            rho: self.rho.scale(c),
            phi: self.phi.iter().map(|x| x.scale(c)).collect(),
            sigma: self.sigma.scale(c),
        }
    }

    pub fn normalize(&self) -> StdTractor {
        StdTractor {
            rho: self.rho.normalize(),
            phi: self.phi.iter().map(RatFunc::normalize).collect(),
            sigma: self.sigma.normalize(),
        }
    }
}

/// `h(T, U) = ρσ' + σρ' + g^ab φ_a φ'_b`.
pub fn tractor_metric(c: &ConformalData, t: &StdTractor, u: &StdTractor) -> RatFunc {
    let m = c.metric();
    let mut acc = &(&t.rho * &u.sigma) + &(&t.sigma * &u.rho);
    for a in 0..c.dim() {
        if t.phi[a].is_zero() {
            continue;
        }
        for b in 0..c.dim() {
            let gi = m.ginv(a, b);
            if !gi.is_zero() && !u.phi[b].is_zero() {
                acc = &acc + &(&(gi * &t.phi[a]) * &u.phi[b]);
            }
        }
    }
    acc
}

/// `∇_c (ρ; φ_a; σ) = (D_cρ − Ρ_c^b φ_b; D_cφ_a + σΡ_ca + ρ g_ca; D_cσ − φ_c)`.
pub fn std_connection(c: &ConformalData, t: &StdTractor, dir: usize) -> StdTractor {
    let d = c.dim();
    let m = c.metric();
    let lc = c.levi_civita();
    let p = c.schouten();
    let mut rho = t.rho.d(dir);
    for b in 0..d {
        if t.phi[b].is_zero() {
            continue;
        }
        let mut pcb = RatFunc::zero(c.nvars());
        for e in 0..d {
            let gi = m.ginv(b, e);
            if !gi.is_zero() {
                pcb = &pcb + &(gi * p.get(&[dir, e]));
            }
        }
        rho = &rho - &(&pcb * &t.phi[b]);
    }
    let phi = (0..d)
        .map(|a| {
            let mut acc = t.phi[a].d(dir);
            for e in 0..d {
                let g = lc.g(e, dir, a);
                if !g.is_zero() && !t.phi[e].is_zero() {
                    acc = &acc - &(g * &t.phi[e]);
                }
            }
            acc = &acc + &(&t.sigma * p.get(&[dir, a]));
            &acc + &(&t.rho * m.gab(dir, a))
        })
        .collect();
    let sigma = &t.sigma.d(dir) - &t.phi[dir];
    StdTractor { rho, phi, sigma }
}

/// `(∇_a∇_b − ∇_b∇_a) T`; the form index of `∇T` cancels by torsion-freeness.
pub fn std_curvature(c: &ConformalData, t: &StdTractor, a: usize, b: usize) -> StdTractor {
    let ta = std_connection(c, t, a);
    let tb = std_connection(c, t, b);
    std_connection(c, &tb, a).sub(&std_connection(c, &ta, b)).normalize()
}

/// `((1/2n)(−D^pD_pσ − Jσ); D_aσ; σ)`.
pub fn l0_std(c: &ConformalData, sigma: &RatFunc) -> StdTractor {
    let d = c.dim();
    let lap = laplacian(c, sigma);
    let coef = Rational::new((-1).into(), (d as i64).into());
    StdTractor {
        rho: (&lap + &(c.j() * sigma)).scale(&coef),
        phi: (0..d).map(|a| sigma.d(a)).collect(),
        sigma: sigma.clone(),
    }
}

/// `D^p D_p f` on a scale-trivialized density.
pub fn laplacian(c: &ConformalData, f: &RatFunc) -> RatFunc {
    let d = c.dim();
    let m = c.metric();
    let lc = c.levi_civita();
    let grad: Vec<RatFunc> = (0..d).map(|a| f.d(a)).collect();
    let mut acc = RatFunc::zero(c.nvars());
    for p in 0..d {
        for q in 0..d {
            let gi = m.ginv(p, q);
            if gi.is_zero() {
                continue;
            }
            let mut h = grad[q].d(p);
            for r in 0..d {
                let g = lc.g(r, p, q);
                if !g.is_zero() {
                    h = &h - &(g * &grad[r]);
                }
            }
            acc = &acc + &(gi * &h);
        }
    }
    acc
}
