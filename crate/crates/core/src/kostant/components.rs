use super::cochain::{kostant_del_star, Cochain, Side};
use super::model::{LieMatrix, Model};
use super::KostantError;
use crate::exact::{rat, Rational};
use crate::linalg::{nullspace, rank, solve, transpose, QMatrix};
use num_traits::Zero;

/// Index of `f_i` in the standard basis.
fn f_index(model: &Model, i: usize) -> usize {
    model.n + 1 + i
}

/// `F̄ = F ∩ ṽ^⊥`, spanned by `f_1..f_n`.
pub fn f_bar_basis(model: &Model) -> Vec<Vec<Rational>> {
    (1..=model.n)
        .map(|i| {
            let mut u = vec![Rational::zero(); model.size()];
            u[f_index(model, i)] = rat(1, 1);
            u
        })
        .collect()
}

/// Coordinates over `f_1..f_n` of the `u ∈ F̄` with `z = ṽ ∧ u`.
pub fn f_hat_to_f_bar(model: &Model, z: &LieMatrix) -> Option<Vec<Rational>> {
    let cols: Vec<Vec<Rational>> = f_bar_basis(model).iter().map(|u| model.coords(&model.wedge(&model.v, u))).collect();
    solve(&transpose(&cols), &model.coords(z))
}

/// Bivector coordinates over pairs `a < b` of `f_1..f_n` for `L ∈ Λ²F̄`.
pub fn lambda2_f_bar_coords(model: &Model, l: &LieMatrix) -> Option<Vec<Rational>> {
    let fb = f_bar_basis(model);
    let mut cols = Vec::new();
    for a in 0..fb.len() {
        for b in a + 1..fb.len() {
            cols.push(model.coords(&model.wedge(&fb[a], &fb[b])));
        }
    }
    solve(&transpose(&cols), &model.coords(l))
}

/// `ι(z) ∧ ι(w)` as an element of `Λ²F̄ ⊂ g̃`, for `z, w ∈ f̂`.
pub fn f_hat_wedge(model: &Model, z: &LieMatrix, w: &LieMatrix) -> Option<LieMatrix> {
    let fb = f_bar_basis(model);
    let u = f_hat_to_f_bar(model, z)?;
    let v = f_hat_to_f_bar(model, w)?;
    let lift = |c: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); model.size()];
        for (ci, b) in c.iter().zip(&fb) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += ci * x;
            }
        }
        out
    };
    Some(model.wedge(&lift(&u), &lift(&v)))
}

/// Classes `c_a ∈ g̃/p̃` with `⟨basis_b, c_a⟩ = δ_ab`, chosen inside the
/// span of `reps`, and a basis of the annihilator of `basis`.
fn dual_classes(model: &Model, basis: &[LieMatrix]) -> Option<(QMatrix, QMatrix)> {
    let m = 2 * model.n;
    // pair[b][i] = ⟨basis_b, X_i⟩
    let pair: QMatrix = basis.iter().map(|z| model.reps.iter().map(|x| model.pairing(z, x)).collect()).collect();
    let annihilator = nullspace(&pair, m);
    let mut classes = Vec::new();
    for a in 0..basis.len() {
        let rhs: Vec<Rational> = (0..basis.len()).map(|b| if a == b { rat(1, 1) } else { Rational::zero() }).collect();
        classes.push(solve(&pair, &rhs)?);
    }
    Some((classes, annihilator))
}

fn eval_class(model: &Model, psi: &Cochain<LieMatrix>, c: &[Rational]) -> LieMatrix {
    let mut acc = LieMatrix::zero(model.size());
    for (i, ci) in c.iter().enumerate() {
        if !ci.is_zero() {
            acc = acc.add(&psi.get(model, &[i]).scale(ci));
        }
    }
    acc
}

/// Whether a one-cochain lies in `forms ⊗ values` inside `p̃₊ ⊗ g̃`.
pub fn in_tensor_component(model: &Model, psi: &Cochain<LieMatrix>, forms: &[LieMatrix], values: &[LieMatrix]) -> bool {
    if psi.degree != 1 || psi.side != Side::Conformal {
        return false;
    }
    let Some((_, annihilator)) = dual_classes(model, forms) else { return false };
    annihilator.iter().all(|c| eval_class(model, psi, c).is_zero())
        && (0..2 * model.n).all(|i| model.in_span(values, &psi.get(model, &[i])))
}

/// Image of `ψ ∈ f̂ ⊗ Λ²F̄` under the alternation `f ⊗ Λ²f → Λ³f`, as
/// coefficients over increasing triples of `f_1..f_n`.
pub fn alternation(model: &Model, psi: &Cochain<LieMatrix>) -> Option<Vec<Rational>> {
    let (classes, _) = dual_classes(model, &model.f_hat)?;
    let n = model.n;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push([a, b, c]);
            }
        }
    }
    out.resize(triples.len(), Rational::zero());
    for (z, c) in model.f_hat.iter().zip(&classes) {
        let u = f_hat_to_f_bar(model, z)?;
        let l = lambda2_f_bar_coords(model, &eval_class(model, psi, c))?;
        for (t, triple) in triples.iter().enumerate() {
            // u ∧ L on e_a ∧ e_b ∧ e_c: expand along the first factor.
            let [a, b, cc] = *triple;
            let coef = |x: usize, y: usize| -> Rational {
                let p = pairs.iter().position(|&q| q == (x, y)).expect("pair");
                l[p].clone()
            };
            let term = &u[a] * coef(b, cc) - &u[b] * coef(a, cc) + &u[cc] * coef(a, b);
            out[t] += term;
        }
    }
    Some(out)
}

/// Basis of the kernel of the alternation on `f̂ ⊗ Λ²F̄`, as one-cochains:
/// the `(f ⊙ Λ²f)[−4]` component.
pub fn hook_component(model: &Model) -> Vec<Cochain<LieMatrix>> {
    let mut generators = Vec::new();
    for z in &model.f_hat {
        for l in &model.lambda2_f_bar {
            generators.push(Cochain::from_forms(model, Side::Conformal, std::slice::from_ref(z), l));
        }
    }
    let images: Vec<Vec<Rational>> =
        generators.iter().map(|g| alternation(model, g).expect("generator lies in f̂ ⊗ Λ²F̄")).collect();
    if images.first().is_none_or(|v| v.is_empty()) {
        return generators;
    }
    let rows: QMatrix = (0..images[0].len()).map(|r| images.iter().map(|v| v[r].clone()).collect()).collect();
    let kernel = nullspace(&rows, generators.len());
    kernel
        .iter()
        .map(|c| {
            c.iter().zip(&generators).fold(Cochain::zero(Side::Conformal, 1), |acc, (ci, g)| acc.add(&g.scale(ci)))
        })
        .collect()
}

/// Whether `ψ` lies in `f̂ ⊗ Λ²F̄` and in the kernel of the alternation.
pub fn in_hook_component(model: &Model, psi: &Cochain<LieMatrix>) -> bool {
    in_tensor_component(model, psi, &model.f_hat, &model.lambda2_f_bar)
        && alternation(model, psi).is_some_and(|v| v.iter().all(Zero::is_zero))
}

/// `Ψ¹ = −½ ∂̃*κ̃`, rejecting inputs whose codifferential leaves `f̂ ⊗ Λ²F̄`.
pub fn normalize_step(model: &Model, kappa: &Cochain<LieMatrix>) -> Result<Cochain<LieMatrix>, KostantError> {
    let d = kostant_del_star(model, kappa)?;
    if !in_tensor_component(model, &d, &model.f_hat, &model.lambda2_f_bar) {
        return Err(KostantError::Component("∂̃*κ̃ ∉ f̂ ⊗ Λ²F̄"));
    }
    Ok(d.scale(&rat(-1, 2)))
}

/// Dimension of the span of a list of matrices.
pub fn span_dim(model: &Model, xs: &[LieMatrix]) -> usize {
    rank(&xs.iter().map(|x| model.coords(x)).collect())
}
