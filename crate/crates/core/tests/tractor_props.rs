mod common;

use common::*;
use fefferman_core::conformal::{SpinGeometry, SpinorField};
use fefferman_core::exact::{rat, RatFunc};
use fefferman_core::tractor::{
    std_connection, tractor_clifford, tractor_metric, AdjTractor, SpinTractor, StdTractor,
};
use proptest::prelude::*;
use std::sync::OnceLock;

fn geom() -> &'static SpinGeometry {
    static G: OnceLock<SpinGeometry> = OnceLock::new();
    G.get_or_init(|| SpinGeometry::pw(&pw(curved2())))
}

const NV: usize = 4;

fn k(v: i64) -> RatFunc {
    RatFunc::from_int(NV, v)
}

fn std_from(v: &[i64]) -> StdTractor {
    StdTractor::from_vec(&v.iter().map(|x| k(*x)).collect::<Vec<_>>())
}

fn adj_from(v: &[i64]) -> AdjTractor {
    let d = 4;
    let mut a = AdjTractor::zero(d, NV);
    let mut it = v.iter();
    for i in 0..d {
        a.rho[i] = k(*it.next().unwrap());
        a.k[i] = k(*it.next().unwrap());
        for j in i + 1..d {
            let x = *it.next().unwrap();
            a.mu[i][j] = k(x);
            a.mu[j][i] = k(-x);
        }
    }
    a.phi = k(*it.next().unwrap());
    a
}

fn coords() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 15)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adjoint_round_trip_and_skew(v in coords(), t in prop::collection::vec(-3i64..=3, 6), u in prop::collection::vec(-3i64..=3, 6)) {
        let c = geom().data();
        let a = adj_from(&v);
        let e = a.to_endo(c);
        prop_assert_eq!(AdjTractor::from_endo(c, &e), a);
        let (t, u) = (std_from(&t), std_from(&u));
        let skew = &tractor_metric(c, &e.apply(&t), &u) + &tractor_metric(c, &t, &e.apply(&u));
        prop_assert!(skew.normalize().is_zero());
    }

    #[test]
    fn clifford_relation(t in prop::collection::vec(-3i64..=3, 6), s in prop::collection::vec(-2i64..=2, 8)) {
        let g = geom();
        let t = std_from(&t);
        let sp = SpinTractor {
            tau: SpinorField::from_components(2, s[..4].iter().map(|x| k(*x)).collect()).with_weight_twice(-1),
            chi: SpinorField::from_components(2, s[4..].iter().map(|x| k(*x)).collect()).with_weight_twice(1),
        };
        let once = tractor_clifford(g, &t, &sp);
        let twice = tractor_clifford(g, &t, &once.value);
        prop_assert_eq!(once.power + twice.power, 2);
        let h = tractor_metric(g.data(), &t, &t);
        let want = sp.scale(&rat(-1, 2));
        let want = SpinTractor { tau: want.tau.mul_scalar(&h), chi: want.chi.mul_scalar(&h) };
        prop_assert!(twice.value.sub(&want).normalize().is_zero());
    }
}

#[test]
fn tractor_metric_is_parallel() {
    let g = SpinGeometry::pw(&pw(curved3()));
    let c = g.data();
    let nv = 6;
    let xs = |i: usize| RatFunc::from_poly(x(nv, i));
    let t = StdTractor { rho: xs(0), phi: (0..6).map(|i| &xs(i) * &xs((i + 1) % 6)).collect(), sigma: xs(4) };
    let u = StdTractor {
        rho: RatFunc::one(nv),
        phi: (0..6).map(|i| RatFunc::from_int(nv, i as i64 - 2)).collect(),
        sigma: &xs(1) * &xs(3),
    };
    let h = tractor_metric(c, &t, &u);
    for dir in 0..6 {
        let lhs = h.d(dir);
        let rhs = &tractor_metric(c, &std_connection(c, &t, dir), &u) + &tractor_metric(c, &t, &std_connection(c, &u, dir));
        assert!((&lhs - &rhs).normalize().is_zero(), "direction {dir}");
    }
}
