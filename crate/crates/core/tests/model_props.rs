//! Round trips between coordinate pictures and translation group facts.

use nalgebra::Matrix4;
use proptest::prelude::*;

use sl2r::isometries::{
    apply, fibre_translate, is_isometry, translation_from, translation_to, IsometryBranch,
};
use sl2r::model_core::{
    hyperboloid_to_projective, inhomogeneous_to_hyperboloid, projective_to_sl2,
    sl2_to_projective,
};
use sl2r::{HyperboloidCoords, ModelPoint, ProjectivePoint};

fn interior_point() -> impl Strategy<Value = ModelPoint> {
    (-2.0..2.0f64, -1.5..1.5f64, -1.5..1.5f64)
        .prop_map(|(x, y, z)| ModelPoint::new(x, y, z))
        .prop_filter("interior", |p| p.quadratic_form() < -1e-3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hyperboloid_lift_lies_on_the_quadric(r in 0.0..3.0f64, theta in -4.0..4.0f64, phi in -10.0..10.0f64) {
        let p = hyperboloid_to_projective(&HyperboloidCoords { r, theta, phi });
        let scale = r.cosh().powi(2);
        prop_assert!((p.quadratic_form() + 1.0).abs() <= 1e-12 * scale);
    }

    #[test]
    fn chart_hyperboloid_round_trip(m in interior_point()) {
        let h = inhomogeneous_to_hyperboloid(&m).unwrap();
        prop_assert!(h.phi.abs() < std::f64::consts::FRAC_PI_2);
        let back = hyperboloid_to_projective(&h).to_chart().unwrap();
        let tol = 1e-12 * (1.0 + m.to_vector().amax());
        prop_assert!((back.to_vector() - m.to_vector()).amax() <= tol, "{:?} vs {:?}", back, m);
    }

    #[test]
    fn sl2_round_trip(m in interior_point(), c in 0.1..10.0f64) {
        let p = m.to_projective().scaled(c);
        let s = projective_to_sl2(&p).unwrap();
        prop_assert!((s.determinant() - 1.0).abs() < 1e-12);
        prop_assert!(sl2_to_projective(&s).eq_projective(&p, 1e-12));
    }

    #[test]
    fn scaling_keeps_interior(m in interior_point(), c in 1e-3..1e3f64) {
        prop_assert!(m.to_projective().scaled(c).is_interior());
    }

    #[test]
    fn translation_times_inverse_is_scalar(m in interior_point()) {
        let x = m.to_projective();
        let t = translation_to(&x).unwrap();
        let ti = translation_from(&x).unwrap();
        let prod = t.then(&ti);
        let k = prod.0[(0, 0)];
        prop_assert!((prod.0 / k - Matrix4::identity()).amax() <= 1e-12);
        prop_assert!(apply(&t, &ProjectivePoint::ORIGIN).unwrap().eq_projective(&x, 1e-14));
        prop_assert!(apply(&ti, &x).unwrap().eq_projective(&ProjectivePoint::ORIGIN, 1e-12));
    }

    #[test]
    fn translations_and_fibre_translations_are_isometries(m in interior_point(), phi in -7.0..7.0f64) {
        let t = translation_to(&m.to_projective()).unwrap();
        prop_assert_eq!(is_isometry(&t.0), Some(IsometryBranch::Upper));
        prop_assert_eq!(is_isometry(&fibre_translate(phi).0), Some(IsometryBranch::Upper));
    }

    #[test]
    fn translations_form_a_group(a in interior_point(), b in interior_point()) {
        let ta = translation_to(&a.to_projective()).unwrap();
        let tb = translation_to(&b.to_projective()).unwrap();
        let prod = ta.then(&tb);
        let image = apply(&prod, &ProjectivePoint::ORIGIN).unwrap();
        let direct = translation_to(&image).unwrap();
        let k = prod.0[(0, 0)] / direct.0[(0, 0)];
        prop_assert!((prod.0 - direct.0 * k).amax() <= 1e-10 * prod.0.amax());
    }

    #[test]
    fn translations_commute_with_fibre_translations(a in interior_point(), phi in -4.0..4.0f64) {
        let t = translation_to(&a.to_projective()).unwrap();
        let s = fibre_translate(phi);
        let d = t.then(&s).0 - s.then(&t).0;
        prop_assert!(d.amax() <= 1e-12 * t.0.amax());
    }

    #[test]
    fn translations_scale_the_form_uniformly(a in interior_point(), p in interior_point(), q in interior_point()) {
        let t = translation_to(&a.to_projective()).unwrap();
        let ratio = |m: &ModelPoint| {
            let v = t.act(&m.to_projective());
            let img = -v[0] * v[0] - v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
            img / m.quadratic_form()
        };
        let (rp, rq) = (ratio(&p), ratio(&q));
        prop_assert!(rp > 0.0);
        prop_assert!((rp - rq).abs() <= 1e-9 * rp);
    }
}
