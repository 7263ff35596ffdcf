use fefferman_core::exact::{int, rat, Rational};
use fefferman_core::kostant::{intersect, spin_action, span_dim, LieMatrix, Model, Parity, SpinVector};
use num_traits::Zero;

fn models() -> Vec<Model> {
    (2..=4).map(|n| Model::build(n).unwrap()).collect()
}

/// Block pattern of `p̃` with rows and columns grouped `1, n−1, 1 | 1, n−1, 1`,
/// one matrix per free parameter.
fn p_tilde_pattern(n: usize) -> Vec<LieMatrix> {
    let size = 2 * n + 2;
    let r1 = |i: usize| 1 + i;
    let (r2, r3) = (n, n + 1);
    let r4 = |i: usize| n + 2 + i;
    let r5 = 2 * n + 1;
    let mut out = Vec::new();
    let mk = |entries: &[(usize, usize, i64)]| {
        let mut m = LieMatrix::zero(size);
        for &(i, j, v) in entries {
            m.0[i][j] += int(v);
        }
        m
    };
    // (a, b, c, d) with a − b = d − c, spanned by (1, 1, 0, 0), (1, 0, 0, 1), (0, 0, 1, 1).
    out.push(mk(&[(0, 0, 1), (r3, r3, -1), (0, r5, -1), (r2, r3, 1)]));
    out.push(mk(&[(0, 0, 1), (r3, r3, -1), (r3, r2, -1), (r5, 0, 1)]));
    out.push(mk(&[(r2, r2, 1), (r5, r5, -1), (r3, r2, -1), (r5, 0, 1)]));
    for i in 0..n - 1 {
        out.push(mk(&[(0, r1(i), 1), (r4(i), r3, -1)])); // U
        out.push(mk(&[(0, r4(i), -1), (r1(i), r3, 1)])); // W
        out.push(mk(&[(r1(i), 0, 1), (r1(i), r5, -1), (r2, r4(i), 1), (r3, r4(i), -1)])); // X
        out.push(mk(&[(r1(i), r2, 1), (r5, r4(i), -1)])); // V
        out.push(mk(&[(r2, r1(i), 1), (r3, r1(i), -1), (r4(i), 0, 1), (r4(i), r5, -1)])); // Y
        out.push(mk(&[(r5, r1(i), 1), (r4(i), r2, -1)])); // Z
        for j in 0..n - 1 {
            out.push(mk(&[(r1(i), r1(j), 1), (r4(j), r4(i), -1)])); // B
            if i < j {
                out.push(mk(&[(r1(i), r4(j), 1), (r1(j), r4(i), -1)])); // C
                out.push(mk(&[(r4(i), r1(j), 1), (r4(j), r1(i), -1)])); // D
            }
        }
    }
    out.push(mk(&[(0, r2, 1), (r5, r3, -1)])); // w
    out
}

#[test]
fn dimensions_match_the_block_patterns() {
    for m in models() {
        let n = m.n;
        let dg = (2 * n + 2) * (2 * n + 1) / 2;
        assert_eq!(span_dim(&m, &m.g_tilde), dg);
        assert_eq!(span_dim(&m, &m.p_tilde), dg - 2 * n, "n={n}");
        assert_eq!(span_dim(&m, &m.p_tilde_plus), 2 * n);
        assert_eq!(span_dim(&m, &m.g_tilde_minus), 2 * n);
        assert_eq!(span_dim(&m, &m.g_tilde_0), dg - 4 * n);
        assert_eq!(span_dim(&m, &m.g), (n + 1) * (n + 1) - 1);
        assert_eq!(span_dim(&m, &m.q), n * n);
        assert_eq!(span_dim(&m, &m.f_hat), n);
        assert_eq!(span_dim(&m, &m.lambda2_f_bar), n * (n - 1) / 2);
        let pattern = p_tilde_pattern(n);
        assert!(pattern.iter().all(|x| m.in_span(&m.p_tilde, x)), "pattern outside p̃ for n={n}");
        assert_eq!(span_dim(&m, &pattern), span_dim(&m, &m.p_tilde));
    }
    let m2 = Model::build(2).unwrap();
    assert_eq!(span_dim(&m2, &m2.g_tilde), 15);
    assert_eq!(span_dim(&m2, &m2.p_tilde), 11);
    assert!(Model::build(1).is_err());
}

#[test]
fn parabolic_relations() {
    for m in models() {
        assert!(m.in_g_tilde(&m.k));
        assert!(!m.in_span(&m.p_tilde, &m.k));
        for z in &m.p_tilde_plus {
            for p in &m.p_tilde {
                assert!(m.in_span(&m.p_tilde_plus, &z.bracket(p)));
            }
            // p̃₊ = p̃^⊥ under the Killing form.
            assert!(m.p_tilde.iter().all(|p| m.killing(z, p).is_zero()));
        }
        assert_eq!(span_dim(&m, &intersect(&m.g, &m.p_tilde)), span_dim(&m, &m.q));
        // q from its matrix shape: first column and last row vanish except the corners.
        let n = m.n;
        for x in &m.q {
            assert!((1..=n).all(|i| x.0[i][0].is_zero()));
            assert!((1..n).all(|j| x.0[n][j].is_zero()));
            assert_eq!(x.0[n][n], -x.0[0][0].clone());
        }
        assert!(m.q0.iter().all(|x| m.in_span(&m.g_tilde_0, x)));
        assert!(m.p_plus.iter().all(|x| m.in_span(&m.p, x)));
    }
}

#[test]
fn dual_bases() {
    for m in models() {
        let n = m.n;
        for (i, x) in m.reps.iter().enumerate() {
            for (j, z) in m.duals.iter().enumerate() {
                let expect = if i == j { int(1) } else { int(0) };
                assert_eq!(m.pairing(x, z), expect);
            }
        }
        for j in 0..n {
            let diff = m.duals[j].sub(&m.duals_g[j]);
            assert!(m.g.iter().all(|y| m.pairing(y, &diff).is_zero()), "Z̃_j − Z_j not ⊥ g");
            assert!(m.in_span(&m.f_hat, &m.duals[j]));
        }
        for (y, x) in m.minus_reps.iter().zip(&m.reps) {
            assert!(m.in_span(&m.p_tilde, &y.sub(x)));
        }
    }
}

#[test]
fn k_grading_on_the_blocks() {
    for m in models() {
        let two = int(2);
        for phi in &m.lambda2_e {
            assert_eq!(m.k.bracket(phi), phi.scale(&two));
        }
        for psi in &m.lambda2_f {
            assert_eq!(m.k.bracket(psi), psi.scale(&-two.clone()));
        }
        for l in &m.e_tensor_f {
            assert!(m.k.bracket(l).is_zero());
        }
    }
}

fn std_vector(size: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); size];
    v[i] = int(1);
    v
}

#[test]
fn spinor_constants() {
    for m in models() {
        let n = m.n as i64;
        let sp = &m.spin;
        let (s_e, s_f) = (sp.s_e(), sp.s_f());
        assert_eq!(spin_action(&m, &m.k, &s_f).unwrap(), s_f.scale(&rat(-(n + 1), 2)));
        assert_eq!(spin_action(&m, &m.k, &s_e).unwrap(), s_e.scale(&rat(n + 1, 2)));
        assert_eq!(sp.pairing(&s_e, &s_f), rat(-1, 2));
        assert_eq!(s_f.parity(), Parity::Even);
        assert_eq!(s_e.parity(), if n % 2 == 0 { Parity::Odd } else { Parity::Even });
        let size = m.size();
        for i in 0..size {
            for j in 0..size {
                let (x, y) = (std_vector(size, i), std_vector(size, j));
                let ky = m.k.apply(&y);
                let lhs: Rational = m.h.apply(&ky).iter().zip(&x).map(|(a, b)| a * b).sum();
                let rhs = sp.pairing(&s_e, &sp.bivector_action(&m.h, &x, &y, &s_f)) * int(2);
                assert_eq!(lhs, rhs, "h(X, KY) at ({i}, {j})");
            }
        }
        assert!(spin_action(&m, &LieMatrix::unit(size, 0, 0), &s_f).is_err());
    }
}

#[test]
fn clifford_relation_and_invariant_pairing() {
    let m = Model::build(3).unwrap();
    let sp = &m.spin;
    let size = m.size();
    let probe = SpinVector::from_components((0..sp.dim()).map(|i| int((i as i64 * 7) % 5 - 2)).collect());
    for i in 0..size {
        for j in 0..size {
            let (x, y) = (std_vector(size, i), std_vector(size, j));
            let xy = sp.gamma_prime(&x, &sp.gamma_prime(&y, &probe));
            let yx = sp.gamma_prime(&y, &sp.gamma_prime(&x, &probe));
            // √2² (γ'γ' + γ'γ') = −2h.
            assert_eq!(xy.add(&yx).scale(&int(2)), probe.scale(&(-int(2) * &m.h.0[i][j])));
        }
    }
    let other = SpinVector::from_components((0..sp.dim()).map(|i| int((i as i64 * 3) % 4 - 1)).collect());
    for a in &m.g_tilde {
        let l = sp.pairing(&sp.act(a, &probe), &other);
        let r = sp.pairing(&probe, &sp.act(a, &other));
        assert_eq!(l + r, int(0));
    }
}

#[test]
fn spin_action_is_a_homomorphism() {
    let m = Model::build(2).unwrap();
    let sp = &m.spin;
    let s = SpinVector::from_components((0..sp.dim()).map(|i| int(i as i64 - 3)).collect());
    for (i, a) in m.g_tilde.iter().enumerate() {
        for b in m.g_tilde.iter().skip(i) {
            let ab = sp.act(a, &sp.act(b, &s)).sub(&sp.act(b, &sp.act(a, &s)));
            assert_eq!(ab, sp.act(&a.bracket(b), &s));
        }
    }
}

/// Block-diagonal (`E⊗F`) part of a matrix.
fn e_tensor_f_part(m: &Model, x: &LieMatrix) -> LieMatrix {
    let mut out = x.clone();
    let e = m.n + 1;
    for i in 0..m.size() {
        for j in 0..m.size() {
            if (i < e) != (j < e) {
                out.0[i][j] = Rational::zero();
            }
        }
    }
    out
}

#[test]
fn annihilators_and_the_useful_relations() {
    for m in models() {
        let sp = &m.spin;
        let ker_e = m.annihilator(&sp.s_e());
        let ker_f = m.annihilator(&sp.s_f());
        let sl_e: Vec<LieMatrix> = m.g.iter().chain(&m.lambda2_e).cloned().collect();
        let sl_f: Vec<LieMatrix> = m.g.iter().chain(&m.lambda2_f).cloned().collect();
        assert_eq!(span_dim(&m, &ker_e), span_dim(&m, &sl_e));
        assert!(sl_e.iter().all(|x| m.in_span(&ker_e, x)));
        assert_eq!(span_dim(&m, &ker_f), span_dim(&m, &sl_f));
        assert!(sl_f.iter().all(|x| m.in_span(&ker_f, x)));

        let proj_fhat: Vec<LieMatrix> = m.f_hat.iter().map(|x| e_tensor_f_part(&m, x)).collect();
        assert_eq!(span_dim(&m, &proj_fhat), span_dim(&m, &m.p_plus));
        assert!(proj_fhat.iter().all(|x| m.in_span(&m.p_plus, x)));
        let pt_f = intersect(&m.p_tilde, &ker_f);
        let proj_p: Vec<LieMatrix> = pt_f.iter().map(|x| e_tensor_f_part(&m, x)).collect();
        assert_eq!(span_dim(&m, &proj_p), span_dim(&m, &m.p));
        assert!(proj_p.iter().all(|x| m.in_span(&m.p, x)));

        let mut brackets = Vec::new();
        for z in &m.p_tilde_plus {
            for l in &m.lambda2_f_bar {
                brackets.push(z.bracket(l));
            }
        }
        assert!(brackets.iter().all(|b| m.in_span(&m.f_hat, b)));
        assert_eq!(span_dim(&m, &brackets), span_dim(&m, &m.f_hat));
        for z in &m.f_hat {
            for l in &m.lambda2_f_bar {
                assert!(z.bracket(l).is_zero());
            }
        }
    }
}
