use super::standard::StdTractor;
use crate::conformal::ConformalData;
use crate::exact::{RatFunc, Rational};
use crate::tensor::{TensorField, Variance};

/// Square matrix of functions acting on standard tractors in slot order
/// `[ν, ω_0..ω_{N−1}, σ]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Endo {
    nvars: usize,
    m: Vec<Vec<RatFunc>>,
}

impl Endo {
    pub fn zero(size: usize, nvars: usize) -> Self {
        Endo { nvars, m: vec![vec![RatFunc::zero(nvars); size]; size] }
    }

    pub fn identity(size: usize, nvars: usize) -> Self {
        let mut e = Self::zero(size, nvars);
        for i in 0..size {
            e.m[i][i] = RatFunc::one(nvars);
        }
        e
    }

    pub fn from_rows(nvars: usize, m: Vec<Vec<RatFunc>>) -> Self {
        Endo { nvars, m }
    }

    pub fn size(&self) -> usize {
        self.m.len()
    }

    pub fn rows(&self) -> &[Vec<RatFunc>] {
        &self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &RatFunc {
        &self.m[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(RatFunc::is_zero)
    }

    fn zip(&self, other: &Endo, f: impl Fn(&RatFunc, &RatFunc) -> RatFunc) -> Endo {
        let m = self.m.iter().zip(&other.m).map(|(r, s)| r.iter().zip(s).map(|(a, b)| f(a, b)).collect()).collect();
        Endo { nvars: self.nvars, m }
    }

    pub fn add(&self, other: &Endo) -> Endo {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Endo) -> Endo {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Endo {
        Endo { nvars: self.nvars, m: self.m.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect() }
    }

    pub fn d(&self, var: usize) -> Endo {
        Endo { nvars: self.nvars, m: self.m.iter().map(|r| r.iter().map(|x| x.d(var)).collect()).collect() }
    }

    pub fn normalize(&self) -> Endo {
        Endo { nvars: self.nvars, m: self.m.iter().map(|r| r.iter().map(RatFunc::normalize).collect()).collect() }
    }

    pub fn matmul(&self, other: &Endo) -> Endo {
        let s = self.size();
        let mut out = Self::zero(s, self.nvars);
        for i in 0..s {
            for k in 0..s {
                let a = &self.m[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = &other.m[k][j];
                    if !b.is_zero() {
                        out.m[i][j] = &out.m[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Endo) -> Endo {
        self.matmul(other).sub(&other.matmul(self)).normalize()
    }

    pub fn trace(&self) -> RatFunc {
        (0..self.size()).map(|i| self.m[i][i].clone()).sum::<RatFunc>().normalize()
    }

    pub fn apply(&self, t: &StdTractor) -> StdTractor {
        let v = t.to_vec();
        let out: Vec<RatFunc> = self
            .m
            .iter()
            .map(|row| {
                RatFunc::sum_in(
                    self.nvars,
                    row.iter().zip(&v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b),
                )
                .normalize()
            })
            .collect();
        StdTractor::from_vec(&out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Option<Vec<Vec<Rational>>> {
        self.m.iter().map(|r| r.iter().map(|x| x.evaluate(point).ok()).collect()).collect()
    }
}

/// Adjoint tractor `(ρ_a; μ_ab | φ; k_a)` with all indices down.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjTractor {
    pub rho: Vec<RatFunc>,
    pub mu: Vec<Vec<RatFunc>>,
    pub phi: RatFunc,
    pub k: Vec<RatFunc>,
}

impl AdjTractor {
    pub fn zero(dim: usize, nvars: usize) -> Self {
        AdjTractor {
            rho: vec![RatFunc::zero(nvars); dim],
            mu: vec![vec![RatFunc::zero(nvars); dim]; dim],
            phi: RatFunc::zero(nvars),
            k: vec![RatFunc::zero(nvars); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.rho.len()
    }

    pub fn is_zero(&self) -> bool {
        self.phi.is_zero()
            && self.rho.iter().chain(&self.k).all(RatFunc::is_zero)
            && self.mu.iter().flatten().all(RatFunc::is_zero)
    }

    pub fn sub(&self, o: &AdjTractor) -> AdjTractor {
        AdjTractor {
            rho: self.rho.iter().zip(&o.rho).map(|(a, b)| (a - b).normalize()).collect(),
            mu: self
                .mu
                .iter()
                .zip(&o.mu)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| (a - b).normalize()).collect())
                .collect(),
            phi: (&self.phi - &o.phi).normalize(),
            k: self.k.iter().zip(&o.k).map(|(a, b)| (a - b).normalize()).collect(),
        }
    }

    /// Action on standard tractors as an `h`-skew endomorphism.
    pub fn to_endo(&self, c: &ConformalData) -> Endo {
        let d = self.dim();
        let nv = c.nvars();
        let m = c.metric();
        let rho_up = m.sharp(&self.rho);
        let k_up = m.sharp(&self.k);
        let mut e = Endo::zero(d + 2, nv);
        let last = d + 1;
        e.m[0][0] = -&self.phi;
        e.m[last][last] = self.phi.clone();
        e.m[0][1..=d].clone_from_slice(&rho_up[..d]);
        e.m[last][1..=d].clone_from_slice(&k_up[..d]);
        for b in 0..d {
            e.m[1 + b][0] = -&self.k[b];
            e.m[1 + b][last] = -&self.rho[b];
            for r in 0..d {
                let v = RatFunc::sum_in(
                    nv,
                    (0..d)
                        .filter(|s| !m.ginv(r, *s).is_zero() && !self.mu[b][*s].is_zero())
                        .map(|s| m.ginv(r, s) * &self.mu[b][s]),
                );
                e.m[1 + b][1 + r] = v.normalize();
            }
        }
        e
    }

    /// Inverse of [`AdjTractor::to_endo`] on `h`-skew endomorphisms.
    pub fn from_endo(c: &ConformalData, e: &Endo) -> AdjTractor {
        let d = c.dim();
        let m = c.metric();
        let last = d + 1;
        let mu = (0..d)
            .map(|b| {
                (0..d)
                    .map(|s| {
                        RatFunc::sum_in(
                            e.nvars,
                            (0..d)
                                .filter(|r| !m.gab(*r, s).is_zero() && !e.m[1 + b][1 + r].is_zero())
                                .map(|r| &e.m[1 + b][1 + r] * m.gab(r, s)),
                        )
                        .normalize()
                    })
                    .collect()
            })
            .collect();
        AdjTractor {
            rho: (0..d).map(|b| (-&e.m[1 + b][last]).normalize()).collect(),
            mu,
            phi: (-&e.m[0][0]).normalize(),
            k: (0..d).map(|b| (-&e.m[1 + b][0]).normalize()).collect(),
        }
    }
}

/// Standard tractor connection form `A_c` in the coordinate frame, so that
/// `∇_c T = ∂_c T + A_c T`.
pub fn connection_form(c: &ConformalData, dir: usize) -> Endo {
    let d = c.dim();
    let nv = c.nvars();
    let m = c.metric();
    let p = c.schouten();
    let lc = c.levi_civita();
    let last = d + 1;
    let mut e = Endo::zero(d + 2, nv);
    for b in 0..d {
        let v: RatFunc = (0..d).map(|q| m.ginv(b, q) * p.get(&[dir, q])).sum();
        e.m[0][1 + b] = -v.normalize();
        e.m[1 + b][0] = m.gab(dir, b).clone();
        e.m[1 + b][last] = p.get(&[dir, b]).clone();
        for r in 0..d {
            e.m[1 + b][1 + r] = -lc.g(r, dir, b);
        }
    }
    e.m[last][1 + dir] = RatFunc::from_int(nv, -1);
    e
}

/// `F_ab = ∂_a A_b − ∂_b A_a + [A_a, A_b]`.
pub fn curvature_endo(c: &ConformalData, a: usize, b: usize) -> Endo {
    let aa = connection_form(c, a);
    let ab = connection_form(c, b);
    ab.d(a).sub(&aa.d(b)).add(&aa.matmul(&ab).sub(&ab.matmul(&aa))).normalize()
}

/// `∇_c M = ∂_c M + [A_c, M]` on endomorphisms.
pub fn endo_connection(c: &ConformalData, e: &Endo, dir: usize) -> Endo {
    let a = connection_form(c, dir);
    e.d(dir).add(&a.matmul(e).sub(&e.matmul(&a))).normalize()
}

fn p_up(c: &ConformalData, dir: usize, pidx: usize) -> RatFunc {
    let m = c.metric();
    let p = c.schouten();
    (0..c.dim()).map(|q| m.ginv(pidx, q) * p.get(&[dir, q])).sum::<RatFunc>()
}

fn nabla_form(c: &ConformalData, w: &[RatFunc], dir: usize, a: usize) -> RatFunc {
    let lc = c.levi_civita();
    let mut acc = w[a].d(dir);
    for (e, we) in w.iter().enumerate() {
        let g = lc.g(e, dir, a);
        if !g.is_zero() && !we.is_zero() {
            acc = &acc - &(g * we);
        }
    }
    acc
}

/// Slot form of the adjoint tractor connection.
pub fn adj_connection(c: &ConformalData, t: &AdjTractor, dir: usize) -> AdjTractor {
    let d = c.dim();
    let m = c.metric();
    let p = c.schouten();
    let lc = c.levi_civita();
    let pu: Vec<RatFunc> = (0..d).map(|q| p_up(c, dir, q)).collect();
    let rho = (0..d)
        .map(|a| {
            let mut acc = nabla_form(c, &t.rho, dir, a);
            for q in 0..d {
                if !pu[q].is_zero() {
                    acc = &acc - &(&pu[q] * &t.mu[q][a]);
                }
            }
            (&acc - &(p.get(&[dir, a]) * &t.phi)).normalize()
        })
        .collect();
    let mu = (0..d)
        .map(|a0| {
            (0..d)
                .map(|a1| {
                    let mut acc = t.mu[a0][a1].d(dir);
                    for e in 0..d {
                        let g0 = lc.g(e, dir, a0);
                        if !g0.is_zero() {
                            acc = &acc - &(g0 * &t.mu[e][a1]);
                        }
                        let g1 = lc.g(e, dir, a1);
                        if !g1.is_zero() {
                            acc = &acc - &(g1 * &t.mu[a0][e]);
                        }
                    }
                    acc = &acc + &(m.gab(dir, a0) * &t.rho[a1]);
                    acc = &acc - &(m.gab(dir, a1) * &t.rho[a0]);
                    acc = &acc + &(p.get(&[dir, a0]) * &t.k[a1]);
                    (&acc - &(p.get(&[dir, a1]) * &t.k[a0])).normalize()
                })
                .collect()
        })
        .collect();
    let mut phi = &t.phi.d(dir) + &t.rho[dir];
    for q in 0..d {
        if !pu[q].is_zero() {
            phi = &phi - &(&pu[q] * &t.k[q]);
        }
    }
    let k = (0..d)
        .map(|a| {
            let acc = &nabla_form(c, &t.k, dir, a) - &t.mu[dir][a];
            (&acc + &(m.gab(dir, a) * &t.phi)).normalize()
        })
        .collect();
    AdjTractor { rho, mu, phi: phi.normalize(), k }
}

/// Tractor curvature `Ω_ab` in slot form: `(−Y_cab; W_abcd | 0; 0)`.
pub fn curvature_adjoint(c: &ConformalData, a: usize, b: usize) -> AdjTractor {
    let d = c.dim();
    let nv = c.nvars();
    let wl = c.weyl_lowered();
    let y = c.cotton();
    let mut out = AdjTractor::zero(d, nv);
    for cc in 0..d {
        out.rho[cc] = -y.get(&[cc, a, b]);
        for dd in 0..d {
            out.mu[cc][dd] = wl.get(&[a, b, cc, dd]).clone();
        }
    }
    out
}

/// Splitting operator for a conformal Killing field `k^a`.
pub fn l0_adjoint(c: &ConformalData, k_up: &[RatFunc]) -> AdjTractor {
    let d = c.dim();
    let nv = c.nvars();
    let m = c.metric();
    let lc = c.levi_civita();
    let n2 = d as i64;
    let kl = m.flat(k_up);
    let kt = TensorField::from_fn(d, nv, vec![Variance::Down], |i| kl[i[0]].clone());
    let dk = lc.covariant_derivative(&kt).expect("covector");
    let ddk = lc.covariant_derivative(&dk).expect("rank two");
    let trace_pq = |f: &dyn Fn(usize, usize) -> RatFunc| -> RatFunc {
        let mut acc = RatFunc::zero(nv);
        for p in 0..d {
            for q in 0..d {
                let gi = m.ginv(p, q);
                if !gi.is_zero() {
                    acc = &acc + &(gi * &f(p, q));
                }
            }
        }
        acc
    };
    let div = trace_pq(&|p, q| dk.get(&[p, q]).clone()).normalize();
    let mu: Vec<Vec<RatFunc>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| (dk.get(&[a, b]) - dk.get(&[b, a])).scale(&Rational::new(1.into(), 2.into())).normalize())
                .collect()
        })
        .collect();
    let phi = div.scale(&Rational::new((-1).into(), n2.into()));
    let p = c.schouten();
    let j = c.j();
    let rho = (0..d)
        .map(|a| {
            let box_k = trace_pq(&|p, q| ddk.get(&[p, q, a]).clone());
            let swap = trace_pq(&|p, q| ddk.get(&[p, a, q]).clone());
            let pk: RatFunc = (0..d).map(|q| p.get(&[q, a]) * &k_up[q]).sum();
            let terms = [
                (box_k, Rational::new((-1).into(), (2 * n2).into())),
                (swap, Rational::new(1.into(), (2 * n2).into())),
                (div.d(a), Rational::new(1.into(), (n2 * n2).into())),
                (pk, Rational::new(2.into(), n2.into())),
                (j * &kl[a], Rational::new((-1).into(), n2.into())),
            ];
            terms.iter().map(|(t, c)| t.scale(c)).sum::<RatFunc>().normalize()
        })
        .collect();
    AdjTractor { rho, mu, phi, k: kl.iter().map(RatFunc::normalize).collect() }
}

/// Closed form of `K • Ω_ab` for `Ω = (−Y; W | 0; 0)`.
pub fn bracket_with_curvature(c: &ConformalData, kt: &AdjTractor, a: usize, b: usize) -> AdjTractor {
    let d = c.dim();
    let nv = c.nvars();
    let m = c.metric();
    let wl = c.weyl_lowered();
    let y = c.cotton();
    let rho_up = m.sharp(&kt.rho);
    let k_up = m.sharp(&kt.k);
    let mu_mixed = |cc: usize, r: usize| -> RatFunc { (0..d).map(|s| m.ginv(r, s) * &kt.mu[cc][s]).sum() };
    let w_mixed = |r: usize, cc: usize| -> RatFunc { (0..d).map(|s| m.ginv(r, s) * wl.get(&[a, b, s, cc])).sum() };
    let mut out = AdjTractor::zero(d, nv);
    for cc in 0..d {
        let mut top = &kt.phi * y.get(&[cc, a, b]);
        let mut bottom = RatFunc::zero(nv);
        for r in 0..d {
            top = &top + &(&rho_up[r] * wl.get(&[a, b, r, cc]));
            top = &top - &(&mu_mixed(cc, r) * y.get(&[r, a, b]));
            bottom = &bottom + &(&k_up[r] * wl.get(&[a, b, r, cc]));
        }
        out.rho[cc] = top.normalize();
        out.k[cc] = bottom.normalize();
    }
    for c0 in 0..d {
        for c1 in 0..d {
            let mut acc = &(&kt.k[c0] * y.get(&[c1, a, b])) - &(&kt.k[c1] * y.get(&[c0, a, b]));
            for r in 0..d {
                acc = &acc - &(&w_mixed(r, c0) * &kt.mu[c1][r]);
                acc = &acc + &(&w_mixed(r, c1) * &kt.mu[c0][r]);
            }
            out.mu[c0][c1] = acc.normalize();
        }
    }
    out.phi = (0..d).map(|r| &k_up[r] * y.get(&[r, a, b])).sum::<RatFunc>().normalize();
    out
}

/// Closed form of `Ω + ½ K • Ω` in the reduced scale.
pub fn induced_curvature_closed_form(c: &ConformalData, kt: &AdjTractor, a: usize, b: usize) -> AdjTractor {
    let d = c.dim();
    let nv = c.nvars();
    let m = c.metric();
    let wl = c.weyl_lowered();
    let y = c.cotton();
    let k_up = m.sharp(&kt.k);
    let half = Rational::new(1.into(), 2.into());
    let w_mixed = |r: usize, cc: usize| -> RatFunc { (0..d).map(|s| m.ginv(r, s) * wl.get(&[a, b, s, cc])).sum() };
    let mut out = AdjTractor::zero(d, nv);
    for cc in 0..d {
        out.rho[cc] = (-y.get(&[cc, a, b])).normalize();
        out.k[cc] =
            (0..d).map(|r| &k_up[r] * wl.get(&[a, b, r, cc])).sum::<RatFunc>().scale(&half).normalize();
    }
    for c0 in 0..d {
        for c1 in 0..d {
            let mut acc = wl.get(&[a, b, c0, c1]).clone();
            let mut skew = &(&kt.k[c0] * y.get(&[c1, a, b])) - &(&kt.k[c1] * y.get(&[c0, a, b]));
            for r in 0..d {
                skew = &skew - &(&w_mixed(r, c0) * &kt.mu[c1][r]);
                skew = &skew + &(&w_mixed(r, c1) * &kt.mu[c0][r]);
            }
            acc = &acc + &skew.scale(&half);
            out.mu[c0][c1] = acc.normalize();
        }
    }
    out
}
