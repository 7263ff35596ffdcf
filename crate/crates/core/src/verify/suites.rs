use super::{run, spec, Outcome, ResidualSummary, VerificationReport, VerifyError, FORMAT_VERSION};
use crate::conformal::{ConformalData, SpinGeometry, SpinorField};
use crate::exact::{rat, RatFunc};
use crate::projective::ProjectiveStructure;
use crate::pw::{PwStructure, WalkerMetric};
use crate::tensor::{TensorField, Variance};
use crate::tractor::{l0_std, std_connection, InducedTractors, Residual, StdTractor};
use std::sync::OnceLock;

/// A Walker-form metric on `(x, p)` to be tested, optionally remembering the
/// projective structure it was built from and a conformal factor `Ω` for the
/// reduced-scale suite.
pub struct Candidate {
    descriptor: String,
    walker: WalkerMetric,
    projective: Option<ProjectiveStructure>,
    seed: Option<u64>,
    scale: Option<RatFunc>,
    tractors: OnceLock<InducedTractors>,
}

impl Candidate {
    pub fn from_projective(descriptor: impl Into<String>, p: ProjectiveStructure) -> Result<Self, VerifyError> {
        if p.n() < 2 {
            return Err(VerifyError::DimensionTooSmall(p.n()));
        }
        let pw = PwStructure::new(p.clone()).map_err(|_| VerifyError::NotSpecial)?;
        Ok(Self::build(descriptor.into(), pw.walker(), Some(p)))
    }

    pub fn from_walker(descriptor: impl Into<String>, walker: WalkerMetric) -> Result<Self, VerifyError> {
        if walker.n() < 2 {
            return Err(VerifyError::DimensionTooSmall(walker.n()));
        }
        Ok(Self::build(descriptor.into(), walker, None))
    }

    fn build(descriptor: String, walker: WalkerMetric, projective: Option<ProjectiveStructure>) -> Self {
        Candidate { descriptor, walker, projective, seed: None, scale: None, tractors: OnceLock::new() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Runs the reduced-scale suite in `Ω² g` instead of `g`.
    pub fn with_scale(mut self, omega: RatFunc) -> Result<Self, VerifyError> {
        if omega.is_zero() || omega.nvars() != self.walker.dim() {
            return Err(VerifyError::BadScale);
        }
        self.scale = Some(omega);
        Ok(self)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn n(&self) -> usize {
        self.walker.n()
    }

    pub fn walker(&self) -> &WalkerMetric {
        &self.walker
    }

    pub fn projective(&self) -> Option<&ProjectiveStructure> {
        self.projective.as_ref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn scale(&self) -> Option<&RatFunc> {
        self.scale.as_ref()
    }

    pub fn tractors(&self) -> &InducedTractors {
        self.tractors.get_or_init(|| InducedTractors::walker(&self.walker))
    }

    fn report(&self, suite: &str, checks: Vec<super::Check>) -> VerificationReport {
        VerificationReport {
            format_version: FORMAT_VERSION,
            suite: suite.to_string(),
            descriptor: self.descriptor.clone(),
            n: self.n(),
            seed: self.seed,
            checks,
        }
    }

    fn chi(&self) -> SpinorField {
        SpinorField::volume(self.n(), self.walker.dim()).with_weight_twice(1)
    }
}

fn tensor_terms(t: &TensorField) -> Vec<RatFunc> {
    t.normalize().components().to_vec()
}

fn spinor_terms<'a>(s: impl IntoIterator<Item = &'a SpinorField>) -> Vec<RatFunc> {
    s.into_iter().flat_map(|x| x.components().iter().map(RatFunc::normalize)).collect()
}

/// `[v, w]^i = v^j ∂_j w^i − w^j ∂_j v^i`.
fn lie_bracket(v: &[RatFunc], w: &[RatFunc]) -> Vec<RatFunc> {
    (0..v.len())
        .map(|i| {
            let mut acc = RatFunc::zero(v[0].nvars());
            for j in 0..v.len() {
                acc = &acc + &(&(&v[j] * &w[i].d(j)) - &(&w[j] * &v[i].d(j)));
            }
            acc.normalize()
        })
        .collect()
}

const A_CHAR: &str = "characterization of induced conformal structures";

pub const CHARACTERIZE_CHECKS: &[&str] = &[
    "conformal Killing field k",
    "K^2 = id",
    "K^2 slot: k.k = 0",
    "K^2 slot: rho.rho = 0",
    "K^2 slot: mu.k = phi k",
    "K^2 slot: mu.rho = -phi rho",
    "K^2 slot: k.rho = phi^2 - 1",
    "K^2 slot: mu.mu = g + 2 k(rho)",
    "K parallel for the prolongation connection",
    "twistor equation for chi_vol",
    "s_F parallel",
    "s_F pure",
    "K . s_F = -(n+1)/2 s_F",
    "L_k chi + (n+1)/2 chi = 0",
    "vertical Weyl condition",
    "ker chi vertical and integrable",
];

/// Characterization conditions for the candidate objects `k`, `χ_vol`,
/// `K = L₀(k)` and `s_F = L₀(χ_vol)`.
pub fn characterize(c: &Candidate) -> VerificationReport {
    let t = c.tractors();
    let g = t.geometry();
    let data = g.data();
    let n = c.n();
    let chi = c.chi();
    let k = c.walker.euler_field();
    let vertical = c.walker.vertical_frame();
    let k_square = t.k_square();
    let mut specs = vec![spec(CHARACTERIZE_CHECKS[0], A_CHAR, || {
        Outcome::zero(vec![Residual::new("D_(a k_b)_0", tensor_terms(&data.conformal_killing_residual(k)))])
    })];
    for (i, r) in k_square.iter().enumerate() {
        specs.push(spec(CHARACTERIZE_CHECKS[1 + i], A_CHAR, move || Outcome::zero(vec![r.clone()])));
    }
    specs.push(spec(CHARACTERIZE_CHECKS[8], A_CHAR, || Outcome::zero(t.parallel_adjoint())));
    specs.push(spec(CHARACTERIZE_CHECKS[9], A_CHAR, || {
        Outcome::zero(vec![Residual::new("twistor", spinor_terms(&g.twistor_residual(&chi)))])
    }));
    specs.push(spec(CHARACTERIZE_CHECKS[10], A_CHAR, || Outcome::zero(vec![t.parallel_spin()])));
    specs.push(spec(CHARACTERIZE_CHECKS[11], A_CHAR, || Outcome::zero(vec![t.purity()])));
    specs.push(spec(CHARACTERIZE_CHECKS[12], A_CHAR, || Outcome::zero(vec![t.eigen_spin()])));
    specs.push(spec(CHARACTERIZE_CHECKS[13], A_CHAR, || {
        let l = g.lie_derivative(k, &chi).add(&chi.scale(&rat(n as i64 + 1, 2)));
        Outcome::zero(vec![Residual::new("Lie derivative", spinor_terms([&l]))])
    }));
    specs.push(spec(CHARACTERIZE_CHECKS[14], A_CHAR, || {
        let w = data.weyl_lowered();
        let mut terms = Vec::new();
        for v in vertical {
            let wv = w.insert_vector(1, v).expect("lower index");
            for u in vertical {
                terms.extend(tensor_terms(&wv.insert_vector(2, u).expect("lower index")));
            }
        }
        Outcome::zero(vec![Residual::new("v^r w^s W_arbs", terms)])
    }));
    specs.push(spec(CHARACTERIZE_CHECKS[15], A_CHAR, || {
        let gv: Vec<SpinorField> = vertical.iter().map(|v| g.gamma_vector(v, &chi)).collect();
        let mut brackets = Vec::new();
        for v in vertical {
            for w in vertical {
                brackets.extend(lie_bracket(v, w).into_iter().take(n));
            }
        }
        let mut out = vec![Residual::new("gamma(v) chi", spinor_terms(&gv))];
        out.push(Residual::new("[v, w] horizontal part", brackets));
        Outcome::zero(out)
    }));
    c.report("characterize", run(specs))
}

const A_REDUCED: &str = "reduced scales";

pub const REDUCED_SCALE_CHECKS: &[&str] = &[
    "J = 0",
    "Schouten strictly horizontal",
    "chi_vol parallel",
    "scale tractor (0, 0, 1) strictly horizontal",
];

/// Reduced-scale properties in the Walker scale, or in `Ω² g` when the
/// candidate carries a conformal factor.
pub fn reduced_scale_check(c: &Candidate) -> Result<VerificationReport, VerifyError> {
    let rescaled;
    let g: &SpinGeometry = match c.scale() {
        Some(omega) => {
            rescaled = SpinGeometry::rescaled_walker(&c.walker, omega)?;
            &rescaled
        }
        None => c.tractors().geometry(),
    };
    let data = g.data();
    let vertical = c.walker.vertical_frame();
    let chi = c.chi();
    let specs = vec![
        spec(REDUCED_SCALE_CHECKS[0], A_REDUCED, || Outcome::zero(vec![Residual::new("J", vec![data.j().normalize()])])),
        spec(REDUCED_SCALE_CHECKS[1], A_REDUCED, || {
            let terms =
                vertical.iter().flat_map(|v| tensor_terms(&data.schouten().insert_vector(0, v).expect("lower"))).collect();
            Outcome::zero(vec![Residual::new("v^a P_ab", terms)])
        }),
        spec(REDUCED_SCALE_CHECKS[2], A_REDUCED, || {
            Outcome::zero(vec![Residual::new("D chi", spinor_terms(&g.nabla(&chi)))])
        }),
        spec(REDUCED_SCALE_CHECKS[3], A_REDUCED, || Outcome::zero(scale_tractor(data, vertical))),
    ];
    Ok(c.report("reduced-scale", run(specs)))
}

fn scale_tractor(data: &ConformalData, vertical: &[Vec<RatFunc>]) -> Vec<Residual> {
    let d = data.dim();
    let nv = data.nvars();
    let s = l0_std(data, &RatFunc::one(nv));
    let want = StdTractor::basis(d, nv, d + 1);
    let mut horizontal = Vec::new();
    let derivs: Vec<StdTractor> = (0..d).map(|a| std_connection(data, &s, a)).collect();
    for v in vertical {
        let mut acc = StdTractor::zero(d, nv);
        for (a, da) in derivs.iter().enumerate() {
            if !v[a].is_zero() {
                let scaled = StdTractor::from_vec(&da.to_vec().iter().map(|x| x * &v[a]).collect::<Vec<_>>());
                acc = acc.add(&scaled);
            }
        }
        horizontal.extend(acc.normalize().to_vec());
    }
    vec![
        Residual::new("L0(1) = (0, 0, 1)", s.sub(&want).normalize().to_vec()),
        Residual::new("v^a nabla_a s", horizontal),
    ]
}

const A_PROL: &str = "prolongation of a parallel pure spinor and involutive adjoint tractor";

pub const PROLONGATION_CHECKS: &[&str] = &[
    "D_a k_b - mu_ab - g_ab = 0",
    "D_a mu_bc + 2 P_a[b k_c] - k^d W_dabc = 0",
    "P_ab k^b = 0",
    "P_ac (mu^c_b - delta^c_b) - Y_abc k^c = 0",
    "P_ab v^b = 0",
    "Y_abc k^c = 0",
    "k^a W_abcd v^c = 0",
    "W_abcd mu^cd = 0",
    "W_abcd v^c w^d = 0",
    "v^a Y_abc = 0",
];

/// The ten prolongation consequences in the Walker scale.
pub fn prolongation_suite(c: &Candidate) -> VerificationReport {
    let t = c.tractors();
    let data = t.geometry().data();
    let p = Prolongation::new(data, t, c.walker.vertical_frame());
    let p = &p;
    type Body<'b> = Box<dyn Fn() -> Vec<RatFunc> + Send + Sync + 'b>;
    let bodies: Vec<Body<'_>> = vec![
        Box::new(|| p.prol1()),
        Box::new(|| p.prol2()),
        Box::new(|| p.prol3()),
        Box::new(|| p.prol4()),
        Box::new(|| p.horizontal_schouten()),
        Box::new(|| p.cotton_k()),
        Box::new(|| p.weyl_kv()),
        Box::new(|| p.weyl_mu()),
        Box::new(|| p.weyl_vw()),
        Box::new(|| p.cotton_v()),
    ];
    let specs = bodies
        .into_iter()
        .zip(PROLONGATION_CHECKS)
        .map(|(f, &name)| spec(name, A_PROL, move || Outcome::zero(vec![Residual::new(name, f())])))
        .collect();
    c.report("prolongation", run(specs))
}

struct Prolongation<'a> {
    data: &'a ConformalData,
    d: usize,
    k: Vec<RatFunc>,
    k_up: Vec<RatFunc>,
    mu: Vec<Vec<RatFunc>>,
    mu_mixed: Vec<Vec<RatFunc>>,
    mu_up: Vec<Vec<RatFunc>>,
    weyl: TensorField,
    vertical: &'a [Vec<RatFunc>],
}

impl<'a> Prolongation<'a> {
    fn new(data: &'a ConformalData, t: &InducedTractors, vertical: &'a [Vec<RatFunc>]) -> Self {
        let d = data.dim();
        let m = data.metric();
        let a = t.adjoint();
        let raise = |row: &dyn Fn(usize) -> RatFunc, x: usize| -> RatFunc {
            (0..d).filter(|&e| !m.ginv(x, e).is_zero()).map(|e| m.ginv(x, e) * &row(e)).sum::<RatFunc>().normalize()
        };
        let mu_mixed: Vec<Vec<RatFunc>> =
            (0..d).map(|x| (0..d).map(|b| raise(&|e| a.mu[e][b].clone(), x)).collect()).collect();
        let mu_up = (0..d).map(|x| (0..d).map(|y| raise(&|f| mu_mixed[x][f].clone(), y)).collect()).collect();
        Prolongation {
            data,
            d,
            k: a.k.clone(),
            k_up: m.sharp(&a.k).iter().map(RatFunc::normalize).collect(),
            mu: a.mu.clone(),
            mu_mixed,
            mu_up,
            weyl: data.weyl_lowered().clone(),
            vertical,
        }
    }

    fn p(&self, a: usize, b: usize) -> &RatFunc {
        self.data.schouten().get(&[a, b])
    }

    fn y(&self, a: usize, b: usize, c: usize) -> &RatFunc {
        self.data.cotton().get(&[a, b, c])
    }

    fn w(&self, a: usize, b: usize, c: usize, e: usize) -> &RatFunc {
        self.weyl.get(&[a, b, c, e])
    }

    fn sum(&self, f: impl Fn(usize) -> RatFunc) -> RatFunc {
        (0..self.d).map(f).sum::<RatFunc>()
    }

    fn prol1(&self) -> Vec<RatFunc> {
        let d = self.d;
        let kt = TensorField::from_fn(d, self.data.nvars(), vec![Variance::Down], |i| self.k[i[0]].clone());
        let dk = self.data.levi_civita().covariant_derivative(&kt).expect("covector");
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                out.push((&(dk.get(&[a, b]) - &self.mu[a][b]) - self.data.metric().gab(a, b)).normalize());
            }
        }
        out
    }

    fn prol2(&self) -> Vec<RatFunc> {
        let d = self.d;
        let mt = TensorField::from_fn(d, self.data.nvars(), vec![Variance::Down; 2], |i| self.mu[i[0]][i[1]].clone());
        let dmu = self.data.levi_civita().covariant_derivative(&mt).expect("two-form");
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let pk = &(self.p(a, b) * &self.k[c]) - &(self.p(a, c) * &self.k[b]);
                    let kw = self.sum(|e| &self.k_up[e] * self.w(e, a, b, c));
                    out.push((&(dmu.get(&[a, b, c]) + &pk) - &kw).normalize());
                }
            }
        }
        out
    }

    fn prol3(&self) -> Vec<RatFunc> {
        (0..self.d).map(|a| self.sum(|b| self.p(a, b) * &self.k_up[b]).normalize()).collect()
    }

    fn prol4(&self) -> Vec<RatFunc> {
        let d = self.d;
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let pm = self.sum(|c| {
                    let mut m = self.mu_mixed[c][b].clone();
                    if c == b {
                        m = &m - &RatFunc::one(self.data.nvars());
                    }
                    self.p(a, c) * &m
                });
                let yk = self.sum(|c| self.y(a, b, c) * &self.k_up[c]);
                out.push((&pm - &yk).normalize());
            }
        }
        out
    }

    fn horizontal_schouten(&self) -> Vec<RatFunc> {
        let mut out = Vec::new();
        for v in self.vertical {
            for a in 0..self.d {
                out.push(self.sum(|b| self.p(a, b) * &v[b]).normalize());
            }
        }
        out
    }

    fn cotton_k(&self) -> Vec<RatFunc> {
        let mut out = Vec::new();
        for a in 0..self.d {
            for b in 0..self.d {
                out.push(self.sum(|c| self.y(a, b, c) * &self.k_up[c]).normalize());
            }
        }
        out
    }

    fn weyl_kv(&self) -> Vec<RatFunc> {
        let d = self.d;
        let mut out = Vec::new();
        for v in self.vertical {
            for b in 0..d {
                for e in 0..d {
                    let s = self.sum(|a| {
                        if self.k_up[a].is_zero() {
                            return RatFunc::zero(self.data.nvars());
                        }
                        &self.k_up[a] * &self.sum(|c| self.w(a, b, c, e) * &v[c])
                    });
                    out.push(s.normalize());
                }
            }
        }
        out
    }

    fn weyl_mu(&self) -> Vec<RatFunc> {
        let d = self.d;
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                let s = self.sum(|c| self.sum(|e| self.w(a, b, c, e) * &self.mu_up[c][e]));
                out.push(s.normalize());
            }
        }
        out
    }

    fn weyl_vw(&self) -> Vec<RatFunc> {
        let mut out = Vec::new();
        for v in self.vertical {
            let wv = self.weyl.insert_vector(2, v).expect("lower index");
            for w in self.vertical {
                out.extend(tensor_terms(&wv.insert_vector(2, w).expect("lower index")));
            }
        }
        out
    }

    fn cotton_v(&self) -> Vec<RatFunc> {
        let y = self.data.cotton();
        self.vertical.iter().flat_map(|v| tensor_terms(&y.insert_vector(0, v).expect("lower index"))).collect()
    }
}

const A_OMEGA: &str = "curvature of the induced Cartan connection";

pub const OMEGA_PRIME_CHECKS: &[&str] = &[
    "Omega' . s_F = 0",
    "[Omega', K] = 0",
    "i_v Omega' = 0",
    "<Omega, K> = 0",
    "K . Omega slot formula",
    "Omega' slot formula",
    "torsion slot vanishes iff projective Weyl does",
];

/// `Ω' = Ω + ½ K • Ω` and its properties, with the torsion-slot dichotomy.
pub fn omega_prime_suite(c: &Candidate) -> VerificationReport {
    let t = c.tractors();
    let residuals = t.induced_curvature_suite();
    let find = |name: &'static str| -> Residual {
        residuals.iter().find(|r| r.name == name).cloned().expect("residual name from the tractor suite")
    };
    let pairs = [
        ("Omega' . s_F = 0", "Omega' . s_F = 0"),
        ("[Omega', K] = 0", "[Omega', K] = 0"),
        ("i_v Omega' = 0", "i_v Omega' = 0"),
        ("<Omega, K> = 0", "<Omega, K> = 0"),
        ("K . Omega slot formula", "K . Omega closed form"),
        ("Omega' slot formula", "Omega' closed form"),
    ];
    let mut specs = Vec::new();
    for (name, source) in pairs {
        let r = find(source);
        specs.push(spec(name, A_OMEGA, move || Outcome::zero(vec![r.clone()])));
    }
    specs.push(spec(OMEGA_PRIME_CHECKS[6], A_OMEGA, || torsion_dichotomy(c, t)));
    c.report("omega-prime", run(specs))
}

fn torsion_dichotomy(c: &Candidate, t: &InducedTractors) -> Outcome {
    let Some(p) = c.projective() else {
        return Outcome::not_applicable("candidate has no underlying projective structure");
    };
    let torsion = Residual::new("1/2 k^r W_abrc", t.torsion_slot());
    let weyl_zero = p.weyl().map(|w| w.normalize().is_zero()).unwrap_or(false);
    let summary = ResidualSummary::Exact { terms: torsion.terms.len(), nonzero: torsion.defect() };
    let detail = match (torsion.is_zero(), weyl_zero) {
        (true, true) => "torsion slot and projective Weyl tensor both vanish",
        (false, false) => "torsion slot nonzero; projective Weyl tensor nonzero",
        (true, false) => "torsion slot vanishes but projective Weyl tensor does not",
        (false, true) => "torsion slot nonzero but projective Weyl tensor vanishes",
    };
    Outcome::decided(torsion.is_zero() == weyl_zero, summary, detail)
}

/// The four curved-geometry suites in their reporting order.
pub fn verify_all(c: &Candidate) -> Result<Vec<VerificationReport>, VerifyError> {
    Ok(vec![characterize(c), reduced_scale_check(c)?, prolongation_suite(c), omega_prime_suite(c)])
}
