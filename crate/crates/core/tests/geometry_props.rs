mod common;

use fefferman_core::conformal::{SpinGeometry, SpinorField};
use fefferman_core::exact::{int, rat, MultiPoly, RatFunc, Rational};
use fefferman_core::projective::{cotton_of, projective_change, schouten_of, ProjectiveStructure};
use fefferman_core::pw::{PwStructure, WalkerMetric};
use fefferman_core::tensor::{vector_field, Connection, TensorField, Variance};
use fefferman_core::verify::{random_special, RandomSpec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(n: usize, max_degree: u32, rng: &mut ChaCha8Rng) -> MultiPoly {
    let terms = (0..4).map(|_| {
        let mut e = vec![0u32; n];
        for _ in 0..rng.gen_range(0..=max_degree) {
            e[rng.gen_range(0..n)] += 1;
        }
        (e, int(rng.gen_range(-3..=3)))
    });
    MultiPoly::from_terms(n, terms).unwrap()
}

fn random_fn(n: usize, max_degree: u32, rng: &mut ChaCha8Rng) -> RatFunc {
    RatFunc::from_poly(random_poly(n, max_degree, rng))
}

/// Torsion-free, not necessarily special.
fn random_connection(n: usize, rng: &mut ChaCha8Rng) -> Connection {
    let mut g = TensorField::zeros(n, n, vec![Variance::Up, Variance::Down, Variance::Down]);
    for c in 0..n {
        for a in 0..n {
            for b in a..n {
                let f = random_fn(n, 2, rng);
                g.set(&[c, a, b], f.clone());
                g.set(&[c, b, a], f);
            }
        }
    }
    Connection::new(g).unwrap()
}

fn special(n: usize, seed: u64) -> ProjectiveStructure {
    random_special(RandomSpec::new(n, seed)).unwrap()
}

/// Totally trace-free part of `R_ab^c_d` for any torsion-free connection:
/// `R − δ^c_a X_bd + δ^c_b X_ad − δ^c_d Z_ab` with
/// `X = Ric_(bd)/(n−1) + Ric_[bd]/(n+1)` and `Z = −2 Ric_[ab]/(n+1)`.
fn trace_free_riemann(d: &Connection) -> TensorField {
    let n = d.dim();
    let nv = d.nvars();
    let r = d.riemann();
    let ric = d.ricci();
    let sym = |a: usize, b: usize| (ric.get(&[a, b]) + ric.get(&[b, a])).scale(&rat(1, 2));
    let alt = |a: usize, b: usize| (ric.get(&[a, b]) - ric.get(&[b, a])).scale(&rat(1, 2));
    let ni = n as i64;
    let x = |a: usize, b: usize| &sym(a, b).scale(&rat(1, ni - 1)) + &alt(a, b).scale(&rat(1, ni + 1));
    let z = |a: usize, b: usize| alt(a, b).scale(&rat(-2, ni + 1));
    TensorField::from_fn(n, nv, r.valence().to_vec(), |i| {
        let (a, b, c, dd) = (i[0], i[1], i[2], i[3]);
        let mut acc = r.get(i).clone();
        if c == a {
            acc = &acc - &x(b, dd);
        }
        if c == b {
            acc = &acc + &x(a, dd);
        }
        if c == dd {
            acc = &acc - &z(a, b);
        }
        acc
    })
}

fn traces_vanish(w: &TensorField) -> bool {
    // (ab^c_d): c pairs with a, b or d
    [(0, 2), (1, 2), (2, 3)].iter().all(|&(i, j)| w.contract(i, j).unwrap().normalize().is_zero())
}

fn gradient_of(f: &RatFunc) -> Vec<RatFunc> {
    (0..f.nvars()).map(|i| f.d(i)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn ricci_identity_pins_the_sign(seed in any::<u64>(), n in 2usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_connection(n, &mut rng);
        let xi: Vec<RatFunc> = (0..n).map(|_| random_fn(n, 2, &mut rng)).collect();
        let v = vector_field(n, xi.clone());
        let ddv = d.covariant_derivative(&d.covariant_derivative(&v).unwrap()).unwrap();
        let r = d.riemann();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = ddv.get(&[a, b, c]) - ddv.get(&[b, a, c]);
                    let rhs = RatFunc::sum_in(n, (0..n).map(|e| r.get(&[a, b, c, e]) * &xi[e]));
                    prop_assert!((&lhs - &rhs).is_zero());
                }
            }
        }
    }

    #[test]
    fn projective_weyl_is_invariant(seed in any::<u64>(), n in 2usize..=3) {
        let p = special(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let upsilon: Vec<RatFunc> = (0..n).map(|_| random_fn(n, 2, &mut rng)).collect();
        let changed = projective_change(p.connection(), &upsilon).unwrap();
        let w = p.weyl().unwrap();
        let w_oracle = trace_free_riemann(p.connection());
        let w_changed = trace_free_riemann(&changed);
        prop_assert!(w.checked_sub(&w_oracle).unwrap().normalize().is_zero());
        prop_assert!(w.checked_sub(&w_changed).unwrap().normalize().is_zero());
        prop_assert!(traces_vanish(&w));
        if n == 2 {
            prop_assert!(w.normalize().is_zero());
        }
    }

    #[test]
    fn cotton_is_invariant_in_dimension_two(seed in any::<u64>()) {
        let p = special(2, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0);
        let phi = random_fn(2, 3, &mut rng);
        let changed = projective_change(p.connection(), &gradient_of(&phi)).unwrap();
        let y = p.cotton().unwrap();
        let y_changed = cotton_of(&changed, &schouten_of(&changed)).unwrap();
        prop_assert!(y.checked_sub(&y_changed).unwrap().normalize().is_zero());
    }

    #[test]
    fn pw_riemann_has_metric_symmetries(seed in any::<u64>(), n in 2usize..=3) {
        let pw = PwStructure::new(special(n, seed)).unwrap();
        let d = pw.dim();
        let r = pw.levi_civita().riemann().lower(2, pw.metric()).unwrap();
        let at = |a, b, c, e| r.get(&[a, b, c, e]).clone();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for e in 0..d {
                        prop_assert!((&at(a, b, c, e) + &at(b, a, c, e)).is_zero());
                        prop_assert!((&at(a, b, c, e) + &at(a, b, e, c)).is_zero());
                        prop_assert!((&at(a, b, c, e) - &at(c, e, a, b)).is_zero());
                        let bianchi = &(&at(a, b, c, e) + &at(b, e, c, a)) + &at(e, a, c, b);
                        prop_assert!(bianchi.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn vertical_distribution_is_parallel(seed in any::<u64>(), n in 2usize..=3) {
        let pw = PwStructure::new(special(n, seed)).unwrap();
        prop_assert!(pw.walker_defect().iter().all(RatFunc::is_zero));
    }

    #[test]
    fn euler_field_vanishes_only_on_the_zero_section(seed in any::<u64>(), n in 2usize..=3, p in prop::collection::vec(-5i64..=5, 3), x in prop::collection::vec(-5i64..=5, 3)) {
        prop_assume!(p[..n].iter().any(|&c| c != 0));
        let pw = PwStructure::new(special(n, seed)).unwrap();
        let pt: Vec<Rational> = x[..n].iter().chain(&p[..n]).map(|&c| int(c)).collect();
        let k: Vec<Rational> = pw.euler_field().iter().map(|c| c.evaluate(&pt).unwrap()).collect();
        prop_assert!(k.iter().any(|c| *c != int(0)));
        prop_assert_eq!(pw.signature_at(&pt), Some((n, n)));
    }
}

/// `ĝ` for `D̂ = D + dφ` pulled back along `p ↦ e^{2φ} p` equals `e^{2φ} g`.
#[test]
fn projectively_equivalent_sources_give_conformal_metrics() {
    for (n, seed) in [(2, 3u64), (2, 4), (3, 5)] {
        let p = special(n, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_fn(n, 2, &mut rng).scale(&rat(1, 8));
        let changed = projective_change(p.connection(), &gradient_of(&phi)).unwrap();
        let d = 2 * n;
        let walker = |conn: &Connection| {
            let b: Vec<Vec<RatFunc>> = (0..n)
                .map(|a| {
                    (0..n)
                        .map(|c| {
                            RatFunc::sum_in(
                                d,
                                (0..n).map(|e| {
                                    let g = conn.g(e, a, c);
                                    let g = RatFunc::new(g.numerator().extend_vars(d), g.denominator().extend_vars(d))
                                        .unwrap();
                                    (&RatFunc::var(d, n + e) * &g).scale_int(-2)
                                }),
                            )
                        })
                        .collect()
                })
                .collect();
            WalkerMetric::new(n, &b).unwrap()
        };
        let g = walker(p.connection());
        let g_hat = walker(&changed);
        assert_eq!(g.metric().g().components(), PwStructure::new(p.clone()).unwrap().metric().g().components());

        let mut prng = ChaCha8Rng::seed_from_u64(seed + 100);
        for _ in 0..10 {
            let pt: Vec<f64> = (0..d).map(|_| prng.gen_range(-10..=10) as f64 / 8.0).collect();
            let phi_at = phi.evaluate_f64(&pt[..n]);
            let scale = (2.0 * phi_at).exp();
            let dphi: Vec<f64> = (0..n).map(|i| phi.d(i).evaluate_f64(&pt[..n])).collect();
            // Jacobian of F(x, p) = (x, e^{2φ(x)} p)
            let mut jac = vec![vec![0.0; d]; d];
            for i in 0..n {
                jac[i][i] = 1.0;
                jac[n + i][n + i] = scale;
                for j in 0..n {
                    jac[n + i][j] = 2.0 * scale * dphi[j] * pt[n + i];
                }
            }
            let mut image = pt.clone();
            for i in 0..n {
                image[n + i] *= scale;
            }
            let gh = g_hat.metric().g().evaluate_f64(&image);
            let g0 = g.metric().g().evaluate_f64(&pt);
            for a in 0..d {
                for b in 0..d {
                    let mut pulled = 0.0;
                    for i in 0..d {
                        for j in 0..d {
                            pulled += jac[i][a] * gh[i * d + j] * jac[j][b];
                        }
                    }
                    let want = scale * g0[a * d + b];
                    assert!((pulled - want).abs() <= 1e-9 * (1.0 + want.abs()), "n={n} ({a},{b}): {pulled} vs {want}");
                }
            }
        }
    }
}

#[test]
fn gamma_matrices_anticommute_on_pw_metrics() {
    let structures = [
        ProjectiveStructure::flat(2),
        common::gamma_122_x1(),
        common::curved2(),
        common::curved3(),
        special(2, 17),
        special(3, 18),
    ];
    for p in structures {
        let pw = PwStructure::new(p).unwrap();
        let sg = SpinGeometry::pw(&pw);
        let (n, d) = (pw.n(), pw.dim());
        for s in 0..(1usize << n) {
            let psi = SpinorField::basis(n, d, s);
            for i in 0..d {
                for j in i..d {
                    let ac = sg.gamma_low(i, &sg.gamma_low(j, &psi)).add(&sg.gamma_low(j, &sg.gamma_low(i, &psi)));
                    // gamma_low is γ/√2, so γγ + γγ + 2g = 0 reads γ'γ' + γ'γ' + g = 0
                    let sum = ac.add(&psi.mul_scalar(pw.metric().gab(i, j)));
                    assert!(sum.normalize().is_zero(), "n={n} pair ({i},{j})");
                }
            }
        }
    }
}
