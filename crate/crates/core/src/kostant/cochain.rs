use super::model::{LieMatrix, Model};
use super::spin::SpinVector;
use super::KostantError;
use crate::exact::{int, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Target module of a cochain: a representation of `g̃` (and by restriction of `g`).
pub trait CochainValue: Clone + PartialEq + std::fmt::Debug {
    fn zero_of(model: &Model) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Action of `a ∈ g̃`.
    fn act(model: &Model, a: &LieMatrix, v: &Self) -> Self;
}

impl CochainValue for LieMatrix {
    fn zero_of(model: &Model) -> Self {
        LieMatrix::zero(model.size())
    }
    fn add(&self, o: &Self) -> Self {
        LieMatrix::add(self, o)
    }
    fn scale(&self, c: &Rational) -> Self {
        LieMatrix::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        LieMatrix::is_zero(self)
    }
    fn act(_: &Model, a: &LieMatrix, v: &Self) -> Self {
        a.bracket(v)
    }
}

impl CochainValue for SpinVector {
    fn zero_of(model: &Model) -> Self {
        SpinVector::zero(model.n)
    }
    fn add(&self, o: &Self) -> Self {
        SpinVector::add(self, o)
    }
    fn scale(&self, c: &Rational) -> Self {
        SpinVector::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        SpinVector::is_zero(self)
    }
    fn act(model: &Model, a: &LieMatrix, v: &Self) -> Self {
        model.spin.act(a, v)
    }
}

/// Which quotient the cochain lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Λ^k(g̃/p̃)* ⊗ W`, evaluated on `X_1..X_{2n}`.
    Conformal,
    /// `Λ^k(g/p)* ⊗ W`, evaluated on `X_1..X_n`.
    Projective,
}

/// Alternating `k`-cochain stored on increasing index subsets of the
/// quotient basis; absent subsets are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<V> {
    pub side: Side,
    pub degree: usize,
    values: BTreeMap<Vec<usize>, V>,
}

fn basis_len(model: &Model, side: Side) -> usize {
    match side {
        Side::Conformal => 2 * model.n,
        Side::Projective => model.n,
    }
}

/// All increasing `k`-subsets of `0..m`.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Sort `idx`, returning the permutation sign, or `None` on a repeat.
fn sort_signed(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut even = true;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                even = !even;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, even))
}

fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return int(1);
    }
    let mut a = m.to_vec();
    let mut sign = int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &a[c][c];
                for j in c..n {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
            }
        }
    }
    (0..n).fold(sign, |acc, i| acc * &a[i][i])
}

fn factorial(k: usize) -> Rational {
    int((1..=k as i64).product::<i64>().max(1))
}

impl<V: CochainValue> Cochain<V> {
    pub fn zero(side: Side, degree: usize) -> Self {
        Cochain { side, degree, values: BTreeMap::new() }
    }

    /// `(ζ_1 ∧ … ∧ ζ_k) ⊗ v` for `ζ_a` in `p̃₊` (or `p₊`), with the normalized
    /// wedge `(ζ_1 ∧ … ∧ ζ_k)(Y_1..Y_k) = (1/k!) det[⟨ζ_a, Y_b⟩]`.
    pub fn from_forms(model: &Model, side: Side, forms: &[LieMatrix], v: &V) -> Self {
        let k = forms.len();
        let m = basis_len(model, side);
        let pair: Vec<Vec<Rational>> =
            forms.iter().map(|z| model.reps[..m].iter().map(|x| model.pairing(z, x)).collect()).collect();
        let mut out = Self::zero(side, k);
        let scale = int(1) / factorial(k);
        for s in subsets(m, k) {
            let mat: Vec<Vec<Rational>> = (0..k).map(|a| s.iter().map(|&b| pair[a][b].clone()).collect()).collect();
            let d = det(&mat);
            if !d.is_zero() {
                out.set(&s, v.scale(&(d * &scale)));
            }
        }
        out
    }

    pub fn basis_len(&self, model: &Model) -> usize {
        basis_len(model, self.side)
    }

    pub fn set(&mut self, subset: &[usize], v: V) {
        if v.is_zero() {
            self.values.remove(subset);
        } else {
            self.values.insert(subset.to_vec(), v);
        }
    }

    /// Value on basis elements in any order.
    pub fn get(&self, model: &Model, idx: &[usize]) -> V {
        match sort_signed(idx) {
            Some((s, even)) => match self.values.get(&s) {
                Some(v) if even => v.clone(),
                Some(v) => v.scale(&int(-1)),
                None => V::zero_of(model),
            },
            None => V::zero_of(model),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &V)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(CochainValue::is_zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (s, v) in &o.values {
            let nv = match out.values.get(s) {
                Some(w) => w.add(v),
                None => v.clone(),
            };
            out.set(s, nv);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.side, self.degree);
        for (s, v) in &self.values {
            out.set(s, v.scale(c));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    /// Value with the slot `pos` replaced by the class with coordinates `c`.
    fn eval_with(&self, model: &Model, idx: &[usize], pos: usize, c: &[Rational]) -> V {
        let mut acc = V::zero_of(model);
        let mut buf = idx.to_vec();
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            buf[pos] = j;
            acc = acc.add(&self.get(model, &buf).scale(cj));
        }
        acc
    }
}

fn duals(model: &Model, side: Side) -> &[LieMatrix] {
    match side {
        Side::Conformal => &model.duals,
        Side::Projective => &model.duals_g,
    }
}

fn minus_reps(model: &Model, side: Side) -> &[LieMatrix] {
    match side {
        Side::Conformal => &model.minus_reps,
        Side::Projective => &model.reps[..model.n],
    }
}

/// Class coordinates in `g̃/p̃` or `g/p`.
pub fn class_of(model: &Model, side: Side, x: &LieMatrix) -> Vec<Rational> {
    duals(model, side).iter().map(|z| model.pairing(x, z)).collect()
}

/// `(∂*₁φ, ∂*₂φ)` with
/// `∂*₁φ(Y) = k Σ_i [φ(X_i, Y), Z_i]` and
/// `∂*₂φ(Y) = −(k/2) Σ_i Σ_l φ(X_i, …, [Z_i, Y_l], …)`.
pub fn del_star_parts<V: CochainValue>(model: &Model, phi: &Cochain<V>) -> Result<(Cochain<V>, Cochain<V>), KostantError> {
    let k = phi.degree;
    if k == 0 {
        return Err(KostantError::DegreeZero);
    }
    let m = phi.basis_len(model);
    let zs = duals(model, phi.side);
    let kk = int(k as i64);
    let mut first = Cochain::zero(phi.side, k - 1);
    let mut second = Cochain::zero(phi.side, k - 1);
    let half_k = -int(k as i64) / int(2);
    // [Z_i, X_l] projected to the quotient, for each i and basis index l.
    let brackets: Vec<Vec<Vec<Rational>>> = zs
        .iter()
        .map(|z| model.reps[..m].iter().map(|x| class_of(model, phi.side, &z.bracket(x))).collect())
        .collect();
    for s in subsets(m, k - 1) {
        let mut a = V::zero_of(model);
        let mut b = V::zero_of(model);
        for (i, z) in zs.iter().enumerate() {
            let mut idx = vec![i];
            idx.extend(&s);
            let val = phi.get(model, &idx);
            if !val.is_zero() {
                a = a.add(&V::act(model, z, &val).scale(&-kk.clone()));
            }
            for l in 0..s.len() {
                let c = &brackets[i][s[l]];
                if c.iter().all(Zero::is_zero) {
                    continue;
                }
                b = b.add(&phi.eval_with(model, &idx, l + 1, c).scale(&half_k));
            }
        }
        first.set(&s, a);
        second.set(&s, b);
    }
    Ok((first, second))
}

/// Kostant codifferential `∂* = ∂*₁ + ∂*₂`.
pub fn kostant_del_star<V: CochainValue>(model: &Model, phi: &Cochain<V>) -> Result<Cochain<V>, KostantError> {
    let (a, b) = del_star_parts(model, phi)?;
    Ok(a.add(&b))
}

/// Lie algebra cohomology differential of the abelian `g̃_−` (resp. `g_−`):
/// `∂φ(Y_0..Y_k) = Σ_r (−1)^r Y_r · φ(…Ŷ_r…)`.
pub fn kostant_del<V: CochainValue>(model: &Model, phi: &Cochain<V>) -> Cochain<V> {
    let k = phi.degree;
    let m = phi.basis_len(model);
    let ys = minus_reps(model, phi.side);
    let mut out = Cochain::zero(phi.side, k + 1);
    for s in subsets(m, k + 1) {
        let mut acc = V::zero_of(model);
        for r in 0..=k {
            let rest: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != r).map(|(_, &x)| x).collect();
            let val = phi.get(model, &rest);
            if val.is_zero() {
                continue;
            }
            let t = V::act(model, &ys[s[r]], &val);
            acc = acc.add(&if r % 2 == 0 { t } else { t.scale(&int(-1)) });
        }
        out.set(&s, acc);
    }
    out
}

/// `□ = ∂∂* + ∂*∂`.
pub fn kostant_laplacian<V: CochainValue>(model: &Model, phi: &Cochain<V>) -> Cochain<V> {
    let up = kostant_del_star(model, &kostant_del(model, phi)).expect("∂φ has positive degree");
    if phi.degree == 0 {
        return up;
    }
    let down = kostant_del(model, &kostant_del_star(model, phi).expect("positive degree"));
    up.add(&down)
}

/// Action of `a ∈ p̃` on cochains: `(a·φ)(Y) = a·φ(Y) − Σ_l φ(…, [a, Y_l], …)`.
pub fn act_on_cochain<V: CochainValue>(model: &Model, a: &LieMatrix, phi: &Cochain<V>) -> Cochain<V> {
    let k = phi.degree;
    let m = phi.basis_len(model);
    let moved: Vec<Vec<Rational>> = model.reps[..m].iter().map(|x| class_of(model, phi.side, &a.bracket(x))).collect();
    let mut out = Cochain::zero(phi.side, k);
    for s in subsets(m, k) {
        let mut acc = V::act(model, a, &phi.get(model, &s));
        for l in 0..k {
            acc = acc.add(&phi.eval_with(model, &s, l, &moved[s[l]]).scale(&int(-1)));
        }
        out.set(&s, acc);
    }
    out
}

/// `κ̃` with `κ̃(X_{i_1}, …) = κ(X_{i_1}, …)` when every `X_i` represents
/// `g/p`, and zero as soon as one argument lies in `f = p/q`.
pub fn extend_cochain<V: CochainValue>(model: &Model, kappa: &Cochain<V>) -> Result<Cochain<V>, KostantError> {
    if kappa.side != Side::Projective {
        return Err(KostantError::WrongSide);
    }
    let mut out = Cochain::zero(Side::Conformal, kappa.degree);
    for (s, v) in kappa.entries() {
        debug_assert!(s.iter().all(|&i| i < model.n));
        out.set(s, v.clone());
    }
    Ok(out)
}

impl Cochain<LieMatrix> {
    /// All matrix entries, subset by subset, as one coordinate vector.
    pub fn flatten(&self, model: &Model) -> Vec<Rational> {
        let m = self.basis_len(model);
        let mut out = Vec::new();
        for s in subsets(m, self.degree) {
            out.extend(self.get(model, &s).0.into_iter().flatten());
        }
        out
    }
}

/// Cochain with independent values `Σ c·b`, `c ∈ [−3, 3]`, `b ∈ values`, on every subset.
pub fn random_cochain<V: CochainValue, R: rand::Rng>(
    model: &Model,
    side: Side,
    degree: usize,
    values: &[V],
    rng: &mut R,
) -> Cochain<V> {
    let m = basis_len(model, side);
    let mut out = Cochain::zero(side, degree);
    for s in subsets(m, degree) {
        let mut acc = V::zero_of(model);
        for b in values {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                acc = acc.add(&b.scale(&int(c)));
            }
        }
        out.set(&s, acc);
    }
    out
}

/// Basis of `{κ ∈ Λ^k(g/p)* ⊗ span(values) : ∂*κ = 0}`.
pub fn closed_cochains(model: &Model, degree: usize, values: &[LieMatrix]) -> Result<Vec<Cochain<LieMatrix>>, KostantError> {
    kernel_of(model, degree, values, false)
}

/// Basis of `{κ ∈ Λ^k(g/p)* ⊗ span(values) : ∂*κ = 0, ∂κ = 0}`.
pub fn harmonic_cochains(model: &Model, degree: usize, values: &[LieMatrix]) -> Result<Vec<Cochain<LieMatrix>>, KostantError> {
    kernel_of(model, degree, values, true)
}

fn kernel_of(
    model: &Model,
    degree: usize,
    values: &[LieMatrix],
    with_del: bool,
) -> Result<Vec<Cochain<LieMatrix>>, KostantError> {
    let mut generators = Vec::new();
    for s in subsets(model.n, degree) {
        for v in values {
            let mut c = Cochain::zero(Side::Projective, degree);
            c.set(&s, v.clone());
            generators.push(c);
        }
    }
    let mut images = Vec::with_capacity(generators.len());
    for g in &generators {
        let mut img = kostant_del_star(model, g)?.flatten(model);
        if with_del {
            img.extend(kostant_del(model, g).flatten(model));
        }
        images.push(img);
    }
    let Some(len) = images.first().map(Vec::len) else { return Ok(Vec::new()) };
    let rows: Vec<Vec<Rational>> = (0..len).map(|r| images.iter().map(|v| v[r].clone()).collect()).collect();
    let kernel = crate::linalg::nullspace(&rows, generators.len());
    Ok(kernel
        .iter()
        .map(|c| {
            c.iter().zip(&generators).fold(Cochain::zero(Side::Projective, degree), |acc, (ci, g)| {
                if ci.is_zero() {
                    acc
                } else {
                    acc.add(&g.scale(ci))
                }
            })
        })
        .collect())
}
