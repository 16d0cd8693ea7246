//! Geodesic boundary-value solutions and translation curves: round trips,
//! symmetry and invariance under translations.

use proptest::prelude::*;

use sl2r::geodesics::{
    geodesic_distance, geodesic_point, integrate_geodesic, solve_geodesic_to, Direction, ODE_STEP,
};
use sl2r::isometries::{apply, translation_to};
use sl2r::translation_curves::{
    is_straight_chord, translation_arc_to, translation_curve_point, translation_distance,
};
use sl2r::ModelPoint;

fn point_in(b: f64, depth: f64) -> impl Strategy<Value = ModelPoint> {
    (-b..b, -b..b, -b..b)
        .prop_map(|(x, y, z)| ModelPoint::new(x, y, z))
        .prop_filter("well inside", move |p| p.quadratic_form() < -depth)
}

fn moved(m: &ModelPoint, by: &ModelPoint) -> ModelPoint {
    let t = translation_to(&by.to_projective()).unwrap();
    apply(&t, &m.to_projective()).unwrap().to_chart().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn bvp_round_trip(p in point_in(1.5, 0.02)) {
        prop_assume!(p.to_vector().norm() > 1e-9);
        let sol = solve_geodesic_to(&p).unwrap();
        let end = geodesic_point(sol.arc.s, &sol.arc.dir).unwrap();
        prop_assert!(end.distance_to(&p) <= 1e-9);
        prop_assert!(sol.arc.s > 0.0);
    }

    #[test]
    fn geodesic_distance_is_symmetric(p in point_in(0.7, 0.1), q in point_in(0.7, 0.1)) {
        let a = geodesic_distance(&p, &q).unwrap();
        let b = geodesic_distance(&q, &p).unwrap();
        prop_assert!((a - b).abs() <= 1e-8, "{} vs {}", a, b);
    }

    #[test]
    fn geodesic_distance_is_translation_invariant(
        p in point_in(0.6, 0.1), q in point_in(0.6, 0.1), x in point_in(0.6, 0.1)
    ) {
        let a = geodesic_distance(&p, &q).unwrap();
        let b = geodesic_distance(&moved(&p, &x), &moved(&q, &x)).unwrap();
        prop_assert!((a - b).abs() <= 1e-8, "{} vs {}", a, b);
    }

    #[test]
    fn translation_arc_round_trip(lambda in -3.1..3.1f64, alpha in -1.5..1.5f64, s in 0.01..1.0f64) {
        let dir = Direction::new(lambda, alpha).unwrap();
        prop_assume!(translation_curve_point(s, &dir).is_ok());
        let p = translation_curve_point(s, &dir).unwrap();
        prop_assume!(p.is_interior() && p.quadratic_form() < -1e-6);
        let arc = translation_arc_to(&p).unwrap();
        prop_assert!((arc.s - s).abs() <= 1e-10);
        prop_assert!((arc.dir.unit_vector() - dir.unit_vector()).amax() <= 1e-10);
    }

    #[test]
    fn translation_distance_is_symmetric_and_invariant(
        p in point_in(0.7, 0.1), q in point_in(0.7, 0.1), x in point_in(0.6, 0.1)
    ) {
        let a = translation_distance(&p, &q).unwrap();
        let b = translation_distance(&q, &p).unwrap();
        let c = translation_distance(&moved(&p, &x), &moved(&q, &x)).unwrap();
        prop_assert!((a - b).abs() <= 1e-9);
        prop_assert!((a - c).abs() <= 1e-9);
    }

    #[test]
    fn translation_curves_are_chords(p in point_in(0.7, 0.1), q in point_in(0.7, 0.1)) {
        prop_assume!(p.distance_to(&q) > 1e-3);
        prop_assert!(is_straight_chord(&p, &q, 9).unwrap());
    }
}

#[test]
fn ode_matches_closed_form_in_every_regime() {
    for alpha in [-1.2, 0.0, std::f64::consts::FRAC_PI_4, 1.0, 1.5] {
        let dev = sl2r::cli_report::ode_closed_form_deviation(alpha, 2.0).unwrap();
        assert!(dev <= 1e-6, "alpha {alpha}: {dev:e}");
    }
}

#[test]
fn ode_endpoint_reaches_the_solved_target() {
    let target = ModelPoint::new(0.2, -0.5, 0.3);
    let sol = solve_geodesic_to(&target).unwrap();
    let path = integrate_geodesic(&sol.arc.dir, sol.arc.s, ODE_STEP).unwrap();
    let (_, h) = path.last();
    let end = sl2r::model_core::hyperboloid_to_projective(&h).to_chart().unwrap();
    assert!(end.distance_to(&target) < 1e-8, "{end:?}");
}
