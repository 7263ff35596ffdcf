mod common;

use common::*;
use fefferman_core::conformal::{conformal_rescale, ConformalData, SpinGeometry, SpinorField};
use fefferman_core::exact::RatFunc;
use fefferman_core::projective::ProjectiveStructure;

fn data(p: &fefferman_core::pw::PwStructure) -> ConformalData {
    ConformalData::with_connection(p.metric().clone(), p.levi_civita().clone())
}

#[test]
fn weyl_tensor_is_scale_invariant() {
    for p in [curved2(), curved3()] {
        let p = pw(p);
        let nv = p.dim();
        let base = data(&p);
        let two = RatFunc::from_int(nv, 2);
        let lin = RatFunc::from_poly(&x(nv, 0) + &c(nv, 1));
        for om in [two, lin] {
            let r = conformal_rescale(p.metric(), &om).unwrap();
            assert!(r.weyl().checked_sub(base.weyl()).unwrap().normalize().is_zero());
        }
    }
}

#[test]
fn constant_rescale_keeps_schouten() {
    let p = pw(curved2());
    let r = conformal_rescale(p.metric(), &RatFunc::from_int(4, 2)).unwrap();
    assert!(r.schouten().checked_sub(data(&p).schouten()).unwrap().normalize().is_zero());
}

#[test]
fn euler_field_stays_conformal_killing() {
    let p = pw(curved3());
    let om = RatFunc::from_poly(&(&x(6, 3) * &x(6, 3)) + &c(6, 1));
    let r = conformal_rescale(p.metric(), &om).unwrap();
    assert!(r.conformal_killing_residual(p.euler_field()).is_zero());
}

#[test]
fn twistor_equation_is_conformally_stable() {
    for p in [curved2(), curved3(), ProjectiveStructure::flat(2)] {
        let p = pw(p);
        let n = p.n();
        let nv = p.dim();
        let s = RatFunc::from_poly(&x(nv, n) + &c(nv, 1));
        let g = SpinGeometry::rescaled(&p, &(&s * &s)).unwrap();
        let chi = SpinorField::volume(n, nv).with_weight_twice(1);
        assert!(g.twistor_residual(&chi).iter().all(SpinorField::is_zero));
        assert!(!g.nabla(&chi).iter().all(SpinorField::is_zero));
        for w in [0, -1, 3] {
            let wrong = SpinorField::volume(n, nv).with_weight_twice(w);
            assert!(!g.twistor_residual(&wrong).iter().all(SpinorField::is_zero), "weight {w}/2");
        }
    }
}
