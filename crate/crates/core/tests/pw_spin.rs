mod common;

use common::*;
use fefferman_core::conformal::{SpinGeometry, SpinorField};
use fefferman_core::exact::{rat, RatFunc};
use fefferman_core::projective::ProjectiveStructure;

fn structures() -> Vec<ProjectiveStructure> {
    vec![ProjectiveStructure::flat(2), gamma_122_x1(), ProjectiveStructure::flat(3), curved3()]
}

#[test]
fn volume_spinor_is_parallel_and_pure() {
    for p in structures() {
        let pw = pw(p);
        let n = pw.n();
        let sg = SpinGeometry::pw(&pw);
        let chi = SpinorField::volume(n, pw.dim()).with_weight_twice(1);
        assert!(sg.nabla(&chi).iter().all(SpinorField::is_zero));
        assert!(sg.twistor_residual(&chi).iter().all(SpinorField::is_zero));
        assert!(sg.dirac(&chi).is_zero());
        assert!(sg.is_pure(&chi));
        for v in pw.vertical_frame() {
            assert!(sg.gamma_vector(v, &chi).is_zero());
        }
    }
}

#[test]
fn euler_field_lie_derivative_eigenvalue() {
    for p in structures() {
        let pw = pw(p);
        let n = pw.n();
        let sg = SpinGeometry::pw(&pw);
        let chi = SpinorField::volume(n, pw.dim()).with_weight_twice(1);
        let l = sg.lie_derivative(pw.euler_field(), &chi);
        let want = chi.scale(&rat(-(n as i64 + 1), 2));
        assert_eq!(l, want);
    }
}

#[test]
fn euler_field_is_conformal_killing_and_null() {
    for p in structures() {
        let pw = pw(p);
        let sg = SpinGeometry::pw(&pw);
        let k = pw.euler_field();
        assert!(sg.data().conformal_killing_residual(k).is_zero());
        assert!(pw.metric().inner(k, k).is_zero());
    }
}

#[test]
fn reduced_scale_curvature() {
    for p in structures() {
        let pw = pw(p);
        let sg = SpinGeometry::pw(&pw);
        let data = sg.data();
        assert!(data.j().is_zero());
        for v in pw.vertical_frame() {
            assert!(data.schouten().insert_vector(0, v).unwrap().is_zero());
        }
    }
}

#[test]
fn translation_is_killing_on_flat_and_dilation_is_not() {
    let pw = pw(ProjectiveStructure::flat(2));
    let sg = SpinGeometry::pw(&pw);
    let d = pw.dim();
    let mut t = vec![RatFunc::zero(d); d];
    t[0] = RatFunc::one(d);
    assert!(sg.data().conformal_killing_residual(&t).is_zero());
    let mut s = vec![RatFunc::zero(d); d];
    s[0] = RatFunc::var(d, 0);
    assert!(!sg.data().conformal_killing_residual(&s).is_zero());
}
