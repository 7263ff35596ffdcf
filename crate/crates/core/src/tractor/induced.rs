use super::adjoint::{
    adj_connection, bracket_with_curvature, curvature_adjoint, curvature_endo, endo_connection,
    induced_curvature_closed_form, l0_adjoint, AdjTractor, Endo,
};
use super::spin::{
    adjoint_spin_action, clifford_kernel_dimension, l0_spin, spin_connection, DualSpinTractor, SpinTractor,
};
use super::standard::{std_curvature, StdTractor};
use super::Residual;
use crate::conformal::{ConformalData, DualSpinor, SpinGeometry, SpinorField};
use crate::exact::{RatFunc, Rational};
use crate::pw::{PwStructure, WalkerMetric};

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

/// Tractor data induced on a Patterson–Walker metric by its Euler field,
/// computed in the PW scale.
pub struct InducedTractors {
    n: usize,
    geom: SpinGeometry,
    k_up: Vec<RatFunc>,
    vertical: Vec<Vec<RatFunc>>,
    adj: AdjTractor,
    endo: Endo,
    s_f: SpinTractor,
    s_e: DualSpinTractor,
}

impl InducedTractors {
    pub fn new(pw: &PwStructure) -> Self {
        Self::walker(&pw.walker())
    }

    /// The same candidate objects on any Walker-form metric: `K = L₀(k)`
    /// for `k = 2p∂_p` and `s_F = L₀(χ)` for the volume spinor of the frame.
    pub fn walker(pw: &WalkerMetric) -> Self {
        let geom = SpinGeometry::walker(pw);
        let n = pw.n();
        let nv = pw.dim();
        let k_up = pw.euler_field().to_vec();
        let adj = l0_adjoint(geom.data(), &k_up);
        let endo = adj.to_endo(geom.data());
        let chi = SpinorField::volume(n, nv).with_weight_twice(1);
        let s_f = l0_spin(&geom, &chi);
        let eta_bar = DualSpinor::basis(n, nv, (1 << n) - 1, r(-1, 2));
        let eta = eta_bar.compose(|s| geom.gamma_vector(&k_up, s), nv).scale(&r(1, 2));
        InducedTractors {
            n,
            k_up,
            vertical: pw.vertical_frame().to_vec(),
            adj,
            endo,
            s_f,
            s_e: DualSpinTractor { eta_bar, eta },
            geom,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn geometry(&self) -> &SpinGeometry {
        &self.geom
    }

    fn data(&self) -> &ConformalData {
        self.geom.data()
    }

    pub fn adjoint(&self) -> &AdjTractor {
        &self.adj
    }

    pub fn endo(&self) -> &Endo {
        &self.endo
    }

    pub fn s_f(&self) -> &SpinTractor {
        &self.s_f
    }

    pub fn s_e(&self) -> &DualSpinTractor {
        &self.s_e
    }

    fn dim(&self) -> usize {
        2 * self.n
    }

    fn nv(&self) -> usize {
        self.geom.nvars()
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect()
    }

    /// `K² = id` as a matrix and through its six slot equations.
    pub fn k_square(&self) -> Vec<Residual> {
        let d = self.dim();
        let nv = self.nv();
        let m = self.data().metric();
        let a = &self.adj;
        let k_up = m.sharp(&a.k);
        let rho_up = m.sharp(&a.rho);
        let mu_mixed =
            |x: usize, b: usize| -> RatFunc { (0..d).map(|c| m.ginv(x, c) * &a.mu[c][b]).sum::<RatFunc>() };
        let sq = self.endo.matmul(&self.endo).sub(&Endo::identity(d + 2, nv)).normalize();
        let mut out = vec![Residual::new("K^2 = id (matrix)", sq.rows().iter().flatten().cloned().collect())];
        out.push(Residual::new("k.k = 0", vec![m.inner(&k_up, &k_up)]));
        out.push(Residual::new("rho.rho = 0", vec![m.inner(&rho_up, &rho_up)]));
        let mut mk = Vec::new();
        let mut mr = Vec::new();
        for x in 0..d {
            let s: RatFunc = (0..d).map(|b| &mu_mixed(x, b) * &k_up[b]).sum();
            mk.push(&s - &(&a.phi * &k_up[x]));
            let s: RatFunc = (0..d).map(|b| &mu_mixed(x, b) * &rho_up[b]).sum();
            mr.push(&s + &(&a.phi * &rho_up[x]));
        }
        out.push(Residual::new("mu.k = phi k", mk));
        out.push(Residual::new("mu.rho = -phi rho", mr));
        let kr = &(&m.inner(&k_up, &rho_up) - &(&a.phi * &a.phi)) + &RatFunc::one(nv);
        out.push(Residual::new("k.rho = phi^2 - 1", vec![kr]));
        let mut mm = Vec::new();
        for x in 0..d {
            for b in 0..d {
                let s: RatFunc = (0..d).map(|c| &mu_mixed(c, b) * &a.mu[x][c]).sum();
                let rhs = &(m.gab(x, b) + &(&a.k[x] * &a.rho[b])) + &(&a.k[b] * &a.rho[x]);
                mm.push(&s - &rhs);
            }
        }
        out.push(Residual::new("mu.mu = g + 2 k(rho)", mm));
        out
    }

    /// `∇_b K − k^a Ω_ab`, and the slot connection against the matrix one.
    pub fn parallel_adjoint(&self) -> Vec<Residual> {
        let d = self.dim();
        let c = self.data();
        let mut slot = Vec::new();
        let mut route = Vec::new();
        for b in 0..d {
            let nab = adj_connection(c, &self.adj, b);
            let mut ik = AdjTractor::zero(d, self.nv());
            for a in 0..d {
                if self.k_up[a].is_zero() || a == b {
                    continue;
                }
                let om = curvature_adjoint(c, a, b);
                ik = add_adj(&ik, &scale_adj(&om, &self.k_up[a]));
            }
            slot.extend(adj_terms(&nab.sub(&ik)));
            let via_matrix = endo_connection(c, &self.endo, b);
            route.extend(via_matrix.sub(&nab.to_endo(c)).normalize().rows().iter().flatten().cloned());
        }
        vec![
            Residual::new("nabla K = i_k Omega", slot),
            Residual::new("adjoint connection slot/matrix agree", route),
        ]
    }

    /// Standard tractor curvature against `(−Y; W | 0; 0)`.
    pub fn curvature_identity(&self) -> Residual {
        let c = self.data();
        let d = self.dim();
        let mut terms = Vec::new();
        for (a, b) in self.pairs() {
            let f = curvature_endo(c, a, b);
            terms.extend(f.sub(&curvature_adjoint(c, a, b).to_endo(c)).normalize().rows().iter().flatten().cloned());
            for i in 0..d + 2 {
                let t = StdTractor::basis(d, self.nv(), i);
                terms.extend(std_curvature(c, &t, a, b).sub(&f.apply(&t)).normalize().to_vec());
            }
        }
        Residual::new("tractor curvature = (-Y; W)", terms)
    }

    pub fn parallel_spin(&self) -> Residual {
        let terms = (0..self.dim()).flat_map(|c| spin_connection(&self.geom, &self.s_f, c).components()).collect();
        Residual::new("nabla s_F = 0", terms)
    }

    /// `K • s_F = −½(n+1) s_F`.
    pub fn eigen_spin(&self) -> Residual {
        let ks = adjoint_spin_action(&self.geom, &self.endo, &self.s_f);
        let want = self.s_f.scale(&r(-(self.n as i64 + 1), 2));
        Residual::new("K . s_F = -(n+1)/2 s_F", ks.sub(&want).normalize().components())
    }

    pub fn purity(&self) -> Residual {
        let kd = clifford_kernel_dimension(&self.geom, &self.s_f) as i64;
        Residual::new("s_F pure", vec![RatFunc::from_int(self.nv(), kd - self.n as i64 - 1)])
    }

    /// `K` acts by `−1` on the Clifford kernel of `s_F`.
    pub fn kernel_eigenvalue(&self) -> Residual {
        let d = self.dim();
        let nv = self.nv();
        let m = self.data().metric();
        let mut probes = vec![StdTractor::basis(d, nv, d + 1)];
        for v in &self.vertical {
            let mut t = StdTractor::zero(d, nv);
            t.phi = m.flat(v);
            probes.push(t);
        }
        let mut terms = Vec::new();
        for t in probes {
            let cl = super::spin::tractor_clifford(&self.geom, &t, &self.s_f).value;
            terms.extend(cl.components());
            terms.extend(self.endo.apply(&t).add(&t).normalize().to_vec());
        }
        Residual::new("K = -1 on ker s_F", terms)
    }

    /// Twelve spinor equations for `s_F` and `s_E`, each divided by its `√2`.
    pub fn eigen_spinor_equations(&self) -> Vec<Residual> {
        let g = &self.geom;
        let d = self.dim();
        let nv = self.nv();
        let m = self.data().metric();
        let a = &self.adj;
        let chi = &self.s_f.chi;
        let chib = &self.s_f.tau;
        let (eta_bar, eta) = (&self.s_e.eta_bar, &self.s_e.eta);
        let one = RatFunc::one(nv);
        let phi_p = &a.phi + &one;
        let phi_m = &a.phi - &one;
        let k_up = m.sharp(&a.k);
        let rho_up = m.sharp(&a.rho);
        let mu_up = |x: usize, b: usize| -> RatFunc { (0..d).map(|c| m.ginv(x, c) * &a.mu[c][b]).sum::<RatFunc>() };
        let delta = |x: usize, b: usize| if x == b { one.clone() } else { RatFunc::zero(nv) };
        let gk = |s: &SpinorField| g.gamma_vector(&k_up, s);
        let gr = |s: &SpinorField| g.gamma_vector(&rho_up, s);
        let sp = |s: SpinorField| s.normalize().components().to_vec();
        let du = |s: DualSpinor| s.components().iter().map(RatFunc::normalize).collect::<Vec<_>>();

        let mut out = vec![
            Residual::new("k^a chi_a = 0", sp(gk(chi))),
            Residual::new("k^a chibar_a = (phi+1) chi", sp(gk(chib).sub(&chi.mul_scalar(&phi_p)))),
        ];
        let mut e3 = Vec::new();
        let mut e4 = Vec::new();
        let mut e9 = Vec::new();
        let mut e10 = Vec::new();
        for x in 0..d {
            let mut s3 = chib.mul_scalar(&k_up[x]);
            let mut s4 = chi.mul_scalar(&rho_up[x]);
            let mut t9 = eta_bar.mul_scalar(&(-&k_up[x]));
            let mut t10 = eta.mul_scalar(&(-&rho_up[x]));
            for b in 0..d {
                let cp = &mu_up(x, b) + &delta(x, b);
                let cm = &mu_up(x, b) - &delta(x, b);
                if !cp.is_zero() {
                    s3 = s3.add(&g.gamma_up(b, chi).mul_scalar(&cp));
                    s4 = s4.add(&g.gamma_up(b, chib).mul_scalar(&cp));
                }
                if !cm.is_zero() {
                    t9 = t9.add(&eta.compose(|s| g.gamma_up(b, s), nv).mul_scalar(&cm));
                    t10 = t10.add(&eta_bar.compose(|s| g.gamma_up(b, s), nv).mul_scalar(&cm));
                }
            }
            e3.extend(sp(s3));
            e4.extend(sp(s4));
            e9.extend(du(t9));
            e10.extend(du(t10));
        }
        out.push(Residual::new("(mu+1) chi^b = -k chibar", e3));
        out.push(Residual::new("(mu+1) chibar^b = -rho chi", e4));
        out.push(Residual::new("rho^a chi_a = -(phi-1) chibar", sp(gr(chi).add(&chib.mul_scalar(&phi_m)))));
        out.push(Residual::new("rho^a chibar_a = 0", sp(gr(chib))));
        out.push(Residual::new("k^a eta_a = 0", du(eta.compose(gk, nv))));
        out.push(Residual::new(
            "k^a etabar_a = -(phi-1) eta",
            du(eta_bar.compose(gk, nv).add(&eta.mul_scalar(&phi_m))),
        ));
        out.push(Residual::new("(mu-1) eta^b = k etabar", e9));
        out.push(Residual::new("(mu-1) etabar^b = rho eta", e10));
        out.push(Residual::new(
            "rho^a eta_a = (phi+1) etabar",
            du(eta.compose(gr, nv).sub(&eta_bar.mul_scalar(&phi_p))),
        ));
        out.push(Residual::new("rho^a etabar_a = 0", du(eta_bar.compose(gr, nv))));
        out
    }

    /// `k^a = 4 η(γ'^a χ)`, `μ_ab = 4 η̄(γ'_[a γ'_b] χ)` and `⟨s_E, s_F⟩ = −½`.
    pub fn spinor_bilinears(&self) -> Vec<Residual> {
        let g = &self.geom;
        let d = self.dim();
        let m = self.data().metric();
        let chi = &self.s_f.chi;
        let k_up = m.sharp(&self.adj.k);
        let four = r(4, 1);
        let two = r(2, 1);
        let kr = (0..d)
            .map(|a| (&k_up[a] - &self.s_e.eta.apply(&g.gamma_up(a, chi)).scale(&four)).normalize())
            .collect();
        let mut mr = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let ab = self.s_e.eta_bar.apply(&g.gamma_low(a, &g.gamma_low(b, chi)));
                let ba = self.s_e.eta_bar.apply(&g.gamma_low(b, &g.gamma_low(a, chi)));
                mr.push((&self.adj.mu[a][b] - &(&ab - &ba).scale(&two)).normalize());
            }
        }
        let pairing = &self.s_e.pair(&self.s_f) + &RatFunc::constant(self.nv(), r(1, 2));
        vec![
            Residual::new("k = 4 eta(gamma chi)", kr),
            Residual::new("mu = 4 etabar(gamma gamma chi)", mr),
            Residual::new("<s_E, s_F> = -1/2", vec![pairing]),
        ]
    }

    /// `Ω'_ab = Ω_ab + ½ K • Ω_ab` as a matrix.
    pub fn induced_curvature(&self, a: usize, b: usize) -> Endo {
        let om = curvature_adjoint(self.data(), a, b).to_endo(self.data());
        om.add(&self.endo.commutator(&om).scale(&r(1, 2))).normalize()
    }

    /// Properties of `Ω'` and the closed forms for `K • Ω` and `Ω'`.
    pub fn induced_curvature_suite(&self) -> Vec<Residual> {
        let c = self.data();
        let mut bracket = Vec::new();
        let mut closed = Vec::new();
        let mut annihilates = Vec::new();
        let mut commutes = Vec::new();
        let mut vertical = Vec::new();
        let mut orth = Vec::new();
        let d = self.dim();
        let mut primes = vec![vec![None; d]; d];
        for (a, b) in self.pairs() {
            let om = curvature_adjoint(c, a, b).to_endo(c);
            let kom = self.endo.commutator(&om);
            bracket.extend(adj_terms(&AdjTractor::from_endo(c, &kom).sub(&bracket_with_curvature(c, &self.adj, a, b))));
            let op = om.add(&kom.scale(&r(1, 2))).normalize();
            closed.extend(adj_terms(
                &AdjTractor::from_endo(c, &op).sub(&induced_curvature_closed_form(c, &self.adj, a, b)),
            ));
            annihilates.extend(adjoint_spin_action(&self.geom, &op, &self.s_f).components());
            commutes.extend(op.commutator(&self.endo).rows().iter().flatten().cloned());
            orth.push(om.matmul(&self.endo).trace());
            primes[b][a] = Some(op.scale(&r(-1, 1)));
            primes[a][b] = Some(op);
        }
        for v in &self.vertical {
            for b in 0..d {
                let mut acc = Endo::zero(d + 2, self.nv());
                for a in 0..d {
                    if let Some(op) = &primes[a][b] {
                        if !v[a].is_zero() {
                            acc = acc.add(&scale_endo(op, &v[a]));
                        }
                    }
                }
                vertical.extend(acc.normalize().rows().iter().flatten().cloned());
            }
        }
        vec![
            Residual::new("K . Omega closed form", bracket),
            Residual::new("Omega' closed form", closed),
            Residual::new("Omega' . s_F = 0", annihilates),
            Residual::new("[Omega', K] = 0", commutes),
            Residual::new("i_v Omega' = 0", vertical),
            Residual::new("<Omega, K> = 0", orth),
        ]
    }

    /// The slot `½ k^r W_abrc` of `Ω'`, which vanishes iff the induced
    /// structure is torsion-free.
    pub fn torsion_slot(&self) -> Vec<RatFunc> {
        let c = self.data();
        self.pairs()
            .into_iter()
            .flat_map(|(a, b)| induced_curvature_closed_form(c, &self.adj, a, b).k)
            .collect()
    }
}

fn scale_endo(e: &Endo, f: &RatFunc) -> Endo {
    let rows = e.rows().iter().map(|r| r.iter().map(|x| x * f).collect()).collect();
    Endo::from_rows(f.nvars(), rows)
}

fn scale_adj(t: &AdjTractor, f: &RatFunc) -> AdjTractor {
    AdjTractor {
        rho: t.rho.iter().map(|x| x * f).collect(),
        mu: t.mu.iter().map(|r| r.iter().map(|x| x * f).collect()).collect(),
        phi: &t.phi * f,
        k: t.k.iter().map(|x| x * f).collect(),
    }
}

fn add_adj(a: &AdjTractor, b: &AdjTractor) -> AdjTractor {
    let neg = scale_adj(b, &RatFunc::from_int(b.phi.nvars(), -1));
    a.sub(&neg)
}

fn adj_terms(t: &AdjTractor) -> Vec<RatFunc> {
    t.rho.iter().chain(t.mu.iter().flatten()).chain(std::iter::once(&t.phi)).chain(&t.k).cloned().collect()
}
