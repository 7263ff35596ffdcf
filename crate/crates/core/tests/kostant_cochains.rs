use fefferman_core::exact::{int, rat};
use fefferman_core::kostant::{
    act_on_cochain, closed_cochains, del_star_parts, extend_cochain, harmonic_cochains, hook_component, in_hook_component,
    in_tensor_component, kostant_del, kostant_del_star, kostant_laplacian, normalize_step, random_cochain,
    worked_example, Cochain, KostantError, LieMatrix, Model, Side,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn codifferential_squares_to_zero() {
    for n in 2..=4 {
        let m = Model::build(n).unwrap();
        let mut r = rng(n as u64);
        for _ in 0..20 {
            let phi = random_cochain(&m, Side::Conformal, 2, &m.g_tilde, &mut r);
            let (first, second) = del_star_parts(&m, &phi).unwrap();
            assert!(second.is_zero(), "∂*₂ must vanish on a |1|-graded algebra");
            let d = first.add(&second);
            assert!(kostant_del_star(&m, &d).unwrap().is_zero());
        }
        let psi = random_cochain(&m, Side::Projective, 2, &m.g, &mut r);
        assert!(kostant_del_star(&m, &kostant_del_star(&m, &psi).unwrap()).unwrap().is_zero());
        assert!(del_star_parts(&m, &psi).unwrap().1.is_zero());
    }
    let m = Model::build(2).unwrap();
    let zero: Cochain<LieMatrix> = Cochain::zero(Side::Conformal, 0);
    assert_eq!(kostant_del_star(&m, &zero), Err(KostantError::DegreeZero));
    assert!(kostant_del_star(&m, &Cochain::<LieMatrix>::zero(Side::Conformal, 2)).unwrap().is_zero());
}

#[test]
fn differential_squares_to_zero() {
    let m = Model::build(3).unwrap();
    let mut r = rng(7);
    for degree in 0..2 {
        let phi = random_cochain(&m, Side::Conformal, degree, &m.g_tilde, &mut r);
        assert!(kostant_del(&m, &kostant_del(&m, &phi)).is_zero());
    }
}

#[test]
fn laplacian_is_two_on_the_hook_component() {
    for n in 2..=4 {
        let m = Model::build(n).unwrap();
        let hook = hook_component(&m);
        let f = n;
        // dim f ⊗ Λ²f − dim Λ³f
        let expected = f * f * (f - 1) / 2 - f * (f - 1) * (f - 2) / 6;
        assert_eq!(hook.len(), expected);
        for psi in &hook {
            assert!(in_hook_component(&m, psi));
            assert_eq!(kostant_laplacian(&m, psi), psi.scale(&int(2)));
        }
        let zero: Cochain<LieMatrix> = Cochain::zero(Side::Conformal, 1);
        assert!(kostant_laplacian(&m, &zero).is_zero());
    }
}

#[test]
fn laplacian_commutes_with_q0() {
    for n in 2..=3 {
        let m = Model::build(n).unwrap();
        let mut r = rng(11 + n as u64);
        for _ in 0..2 {
            let phi = random_cochain(&m, Side::Conformal, 2, &m.g_tilde, &mut r);
            for a in m.q0.iter().take(4) {
                let lhs = kostant_laplacian(&m, &act_on_cochain(&m, a, &phi));
                let rhs = act_on_cochain(&m, a, &kostant_laplacian(&m, &phi));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

fn random_combination(basis: &[Cochain<LieMatrix>], r: &mut ChaCha8Rng) -> Cochain<LieMatrix> {
    use rand::Rng;
    let side = basis[0].side;
    let degree = basis[0].degree;
    basis.iter().fold(Cochain::zero(side, degree), |acc, b| acc.add(&b.scale(&int(r.gen_range(-3..=3)))))
}

#[test]
fn extension_of_closed_curvature_lands_in_the_hook_component() {
    for n in 2..=4 {
        let m = Model::build(n).unwrap();
        let zero: Cochain<LieMatrix> = Cochain::zero(Side::Projective, 2);
        assert!(extend_cochain(&m, &zero).unwrap().is_zero());
        assert!(normalize_step(&m, &extend_cochain(&m, &zero).unwrap()).unwrap().is_zero());

        // Normal curvature: harmonic (Weyl-type) values in g₀ plus any ∂*-closed p₊ part.
        let weyl = harmonic_cochains(&m, 2, &m.g_0).unwrap();
        assert_eq!(weyl.len(), n * n * (n * n - 4) / 3);
        let cotton = closed_cochains(&m, 2, &m.p_plus).unwrap();
        assert!(!cotton.is_empty());
        let mut r = rng(100 + n as u64);
        let mut nonzero = 0;
        for _ in 0..10 {
            let mut kappa = random_combination(&cotton, &mut r);
            if !weyl.is_empty() {
                kappa = kappa.add(&random_combination(&weyl, &mut r));
            }
            assert!(kostant_del_star(&m, &kappa).unwrap().is_zero());
            let kt = extend_cochain(&m, &kappa).unwrap();
            // Vanishes on insertions from f = p/q.
            for (s, _) in kt.entries() {
                assert!(s.iter().all(|&i| i < n));
            }
            let d = kostant_del_star(&m, &kt).unwrap();
            assert!(in_hook_component(&m, &d));
            let psi1 = normalize_step(&m, &kt).unwrap();
            assert_eq!(psi1, d.scale(&rat(-1, 2)));
            // −□⁻¹∂̃*κ̃ = −½∂̃*κ̃: □Ψ¹ = −∂̃*κ̃.
            assert_eq!(kostant_laplacian(&m, &psi1), d.scale(&int(-1)));
            if !d.is_zero() {
                nonzero += 1;
            }
        }
        if n >= 3 {
            assert!(nonzero > 0, "closed curvature should not all be normal after extension for n={n}");
        }
    }
}

#[test]
fn codifferentials_differ_by_the_lambda2_f_bar_action() {
    for n in 2..=3 {
        let m = Model::build(n).unwrap();
        let mut l2_g: Vec<LieMatrix> = Vec::new();
        for l in &m.lambda2_f_bar {
            for x in &m.g {
                l2_g.push(l.bracket(x));
            }
        }
        let mut r = rng(200 + n as u64);
        for _ in 0..5 {
            let phi = random_cochain(&m, Side::Projective, 2, &m.g, &mut r);
            let lhs = extend_cochain(&m, &kostant_del_star(&m, &phi).unwrap()).unwrap();
            let rhs = kostant_del_star(&m, &extend_cochain(&m, &phi).unwrap()).unwrap();
            assert!(in_tensor_component(&m, &lhs.sub(&rhs), &m.f_hat, &l2_g));

            let one = random_cochain(&m, Side::Projective, 1, &m.g, &mut r);
            let diff = extend_cochain(&m, &kostant_del_star(&m, &one).unwrap())
                .unwrap()
                .sub(&kostant_del_star(&m, &extend_cochain(&m, &one).unwrap()).unwrap());
            let value = diff.get(&m, &[]);
            assert!(m.in_span(&l2_g, &value) || value.is_zero());
        }
    }
}

#[test]
fn horizontal_part_codifferential_lands_in_f_hat_squared() {
    for n in 2..=3 {
        let m = Model::build(n).unwrap();
        for z in &m.p_tilde_plus {
            for f in &m.f_hat {
                for l in &m.lambda2_f_bar {
                    let psi = Cochain::from_forms(&m, Side::Conformal, &[z.clone(), f.clone()], l);
                    let d = kostant_del_star(&m, &psi).unwrap();
                    assert!(in_tensor_component(&m, &d, &m.f_hat, &m.f_hat));
                }
            }
        }
    }
}

#[test]
fn worked_example_codifferential_and_normalization() {
    for n in 3..=4 {
        let m = Model::build(n).unwrap();
        let w = worked_example(&m).unwrap();
        assert!(!w.del_star.is_zero());
        assert!(w.matches(), "∂̃*φ̃ ≠ −Z̃₁⊗Z̃_n∧Z̃₂ − Z̃_n⊗Z̃₁∧Z̃₂ for n={n}");
        assert!(in_hook_component(&m, &w.del_star));
        assert_eq!(w.psi1, w.expected.scale(&rat(-1, 2)));
        // φ itself is ∂*-closed on the projective side.
        assert!(kostant_del_star(&m, &w.phi).unwrap().is_zero());
    }
    let m2 = Model::build(2).unwrap();
    assert!(worked_example(&m2).is_err());
}

#[test]
fn normalization_rejects_cochains_outside_the_component() {
    let m = Model::build(3).unwrap();
    let mut r = rng(5);
    let generic = random_cochain(&m, Side::Conformal, 2, &m.g_tilde, &mut r);
    assert!(matches!(normalize_step(&m, &generic), Err(KostantError::Component(_))));
}
