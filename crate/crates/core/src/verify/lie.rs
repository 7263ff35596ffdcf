use super::{run, spec, Outcome, ResidualSummary, VerificationReport, FORMAT_VERSION};
use crate::exact::{int, rat, Rational};
use crate::kostant::{
    closed_cochains, del_star_parts, extend_cochain, harmonic_cochains, hook_component, in_hook_component,
    kostant_del_star, kostant_laplacian, normalize_step, random_cochain, spin_action, worked_example, Cochain,
    KostantError, LieMatrix, Model, Side,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Number of random 2-cochains fed to the codifferential checks.
pub const KOSTANT_COCHAINS: usize = 20;

const A_KOSTANT: &str = "Kostant codifferential and the first normalization step";
const A_MODEL: &str = "matrix model of sl(n+1) in so(n+1, n+1)";

/// Passes when `failures` of `total` identities fail to hold.
fn tally(total: usize, failures: usize, what: &str) -> Outcome {
    let detail = if failures == 0 { String::new() } else { format!("{failures} of {total} {what} failed") };
    Outcome::decided(failures == 0, ResidualSummary::Exact { terms: total, nonzero: failures }, detail)
}

fn random_combination(basis: &[Cochain<LieMatrix>], rng: &mut ChaCha8Rng) -> Cochain<LieMatrix> {
    let (side, degree) = basis.first().map(|b| (b.side, b.degree)).unwrap_or((Side::Projective, 2));
    basis.iter().fold(Cochain::zero(side, degree), |acc, b| acc.add(&b.scale(&int(rng.gen_range(-3..=3)))))
}

fn std_vector(size: usize, i: usize) -> Vec<Rational> {
    (0..size).map(|j| if i == j { int(1) } else { int(0) }).collect()
}

/// Lie-algebraic identities of the model for a given `n`, with seeded random cochains.
pub fn kostant_suite(n: usize, seed: u64) -> Result<VerificationReport, KostantError> {
    let m = Model::build(n)?;
    let m = &m;
    let specs = vec![
        spec("codifferential squares to zero", A_KOSTANT, move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = 0;
            for _ in 0..KOSTANT_COCHAINS {
                let phi = random_cochain(m, Side::Conformal, 2, &m.g_tilde, &mut rng);
                let ok = kostant_del_star(m, &phi).and_then(|d| kostant_del_star(m, &d)).is_ok_and(|dd| dd.is_zero());
                bad += usize::from(!ok);
            }
            tally(KOSTANT_COCHAINS, bad, "random 2-cochains")
        }),
        spec("second codifferential term vanishes", A_KOSTANT, move || {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = 0;
            for _ in 0..KOSTANT_COCHAINS {
                let phi = random_cochain(m, Side::Conformal, 2, &m.g_tilde, &mut rng);
                bad += usize::from(!del_star_parts(m, &phi).is_ok_and(|(_, second)| second.is_zero()));
            }
            tally(KOSTANT_COCHAINS, bad, "random 2-cochains")
        }),
        spec("worked example codifferential", A_KOSTANT, move || match worked_example(m) {
            Err(KostantError::DimensionTooSmall(_)) => Outcome::not_applicable("needs n ≥ 3"),
            Err(e) => Outcome::decided(false, ResidualSummary::None, e.to_string()),
            Ok(w) => {
                let diff = w.del_star.sub(&w.expected);
                let terms = diff.flatten(m);
                let nonzero = terms.iter().filter(|x| **x != int(0)).count();
                let psi_ok = w.psi1 == w.expected.scale(&rat(-1, 2)) && in_hook_component(m, &w.del_star);
                let pass = nonzero == 0 && psi_ok;
                let detail = if pass { "" } else { "codifferential or normalization differs from the expected cochain" };
                Outcome::decided(pass, ResidualSummary::Exact { terms: terms.len(), nonzero }, detail)
            }
        }),
        spec("Laplacian is 2 on the hook component", A_KOSTANT, move || {
            let hook = hook_component(m);
            let expected_dim = n * n * (n - 1) / 2 - n * (n - 1) * (n - 2) / 6;
            let bad = hook.iter().filter(|psi| kostant_laplacian(m, psi) != psi.scale(&int(2))).count();
            let mut o = tally(hook.len(), bad, "basis cochains");
            if hook.len() != expected_dim {
                o = Outcome::decided(
                    false,
                    ResidualSummary::Exact { terms: hook.len(), nonzero: bad },
                    format!("hook component has dimension {}, expected {expected_dim}", hook.len()),
                );
            }
            o
        }),
        spec("extension of normal curvature lands in the hook component", A_KOSTANT, move || {
            let (weyl, cotton) = match (harmonic_cochains(m, 2, &m.g_0), closed_cochains(m, 2, &m.p_plus)) {
                (Ok(w), Ok(c)) => (w, c),
                (Err(e), _) | (_, Err(e)) => return Outcome::decided(false, ResidualSummary::None, e.to_string()),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            let samples = 5;
            let mut bad = 0;
            for _ in 0..samples {
                let mut kappa = random_combination(&cotton, &mut rng);
                if !weyl.is_empty() {
                    kappa = kappa.add(&random_combination(&weyl, &mut rng));
                }
                let ok = (|| -> Result<bool, KostantError> {
                    let kt = extend_cochain(m, &kappa)?;
                    let d = kostant_del_star(m, &kt)?;
                    let psi1 = normalize_step(m, &kt)?;
                    Ok(kostant_del_star(m, &kappa)?.is_zero()
                        && in_hook_component(m, &d)
                        && kostant_laplacian(m, &psi1) == d.scale(&int(-1)))
                })();
                bad += usize::from(!ok.unwrap_or(false));
            }
            tally(samples, bad, "normal curvature samples")
        }),
        spec("K grading: +2 on Λ²E, -2 on Λ²F, 0 on E⊗F", A_MODEL, move || {
            let mut total = 0;
            let mut bad = 0;
            for (basis, c) in [(&m.lambda2_e, 2), (&m.lambda2_f, -2), (&m.e_tensor_f, 0)] {
                for x in basis {
                    total += 1;
                    bad += usize::from(m.k.bracket(x) != x.scale(&int(c)));
                }
            }
            tally(total, bad, "basis elements")
        }),
        spec("K . s_F = -(n+1)/2 s_F", A_MODEL, move || {
            let s = m.spin.s_f();
            let ok = spin_action(m, &m.k, &s).is_ok_and(|ks| ks == s.scale(&rat(-(n as i64 + 1), 2)));
            tally(1, usize::from(!ok), "identities")
        }),
        spec("K . s_E = (n+1)/2 s_E", A_MODEL, move || {
            let s = m.spin.s_e();
            let ok = spin_action(m, &m.k, &s).is_ok_and(|ks| ks == s.scale(&rat(n as i64 + 1, 2)));
            tally(1, usize::from(!ok), "identities")
        }),
        spec("<s_E, s_F> = -1/2", A_MODEL, move || {
            let ok = m.spin.pairing(&m.spin.s_e(), &m.spin.s_f()) == rat(-1, 2);
            tally(1, usize::from(!ok), "identities")
        }),
        spec("h(X, KY) = 2 <s_E, (X^Y) . s_F>", A_MODEL, move || {
            let size = m.size();
            let (s_e, s_f) = (m.spin.s_e(), m.spin.s_f());
            let mut bad = 0;
            for i in 0..size {
                for j in 0..size {
                    let (x, y) = (std_vector(size, i), std_vector(size, j));
                    let lhs: Rational = m.h.apply(&m.k.apply(&y)).iter().zip(&x).map(|(a, b)| a * b).sum();
                    let rhs = m.spin.pairing(&s_e, &m.spin.bivector_action(&m.h, &x, &y, &s_f)) * int(2);
                    bad += usize::from(lhs != rhs);
                }
            }
            tally(size * size, bad, "basis pairs")
        }),
    ];
    Ok(VerificationReport {
        format_version: FORMAT_VERSION,
        suite: "kostant".into(),
        descriptor: "matrix model of sl(n+1) in so(n+1, n+1)".into(),
        n,
        seed: Some(seed),
        checks: run(specs),
    })
}
