//! Angle-sum properties of geodesic and translation triangles.

use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;

use sl2r::cli_report::{antipodality_deviation, grid_margin, Family};
use sl2r::isometries::{apply, translation_to};
use sl2r::triangles::{
    geodesic_triangle_report, is_lightlike, plane_normal, spherical_projection_arcs,
    translated_vertices, translated_vertices_by_matrix, translation_triangle_report, Triangle,
};
use sl2r::ModelPoint;

fn point_in(b: f64, depth: f64) -> impl Strategy<Value = ModelPoint> {
    (-b..b, -b..b, -b..b)
        .prop_map(|(x, y, z)| ModelPoint::new(x, y, z))
        .prop_filter("well inside", move |p| p.quadratic_form() < -depth)
}

fn spread(pts: &[ModelPoint; 3]) -> f64 {
    let u = pts[1].to_vector() - pts[0].to_vector();
    let v = pts[2].to_vector() - pts[0].to_vector();
    u.cross(&v).norm() / (u.norm() * v.norm())
}

fn triangle(b: f64, depth: f64, origin: bool) -> impl Strategy<Value = Triangle> {
    (point_in(b, depth), point_in(b, depth), point_in(b, depth)).prop_filter_map(
        "non-degenerate",
        move |(a1, a2, a3)| {
            let pts = [if origin { ModelPoint::ORIGIN } else { a1 }, a2, a3];
            (spread(&pts) > 1e-2).then(|| Triangle::from_chart(pts).ok()).flatten()
        },
    )
}

fn grid() -> Vec<f64> {
    (1..=19).map(|k| k as f64 / 20.0).collect()
}

#[test]
fn fibre_like_grid() {
    for y2 in grid() {
        for x3 in grid() {
            let r = geodesic_triangle_report(&Family::Fibre.triangle(y2, x3).unwrap()).unwrap();
            assert!(grid_margin(Family::Fibre, &r) >= 0.0, "y2={y2} x3={x3}: {r:?}");
            assert!((r.omega[0] - FRAC_PI_2).abs() <= 1e-8);
            assert!(r.angle_sum >= PI - 1e-7);
        }
    }
}

#[test]
fn hyperbolic_like_grid() {
    for y2 in grid() {
        for z3 in grid() {
            let r =
                geodesic_triangle_report(&Family::Hyperbolic.triangle(y2, z3).unwrap()).unwrap();
            assert!(grid_margin(Family::Hyperbolic, &r) >= 0.0, "y2={y2} z3={z3}: {r:?}");
            assert!(r.angle_sum <= PI + 1e-7);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn translation_angle_sum_at_least_pi(t in triangle(0.8, 0.05, false)) {
        let r = translation_triangle_report(&t).unwrap();
        prop_assert!(r.angle_sum >= PI - 1e-9, "{}", r.angle_sum);
        prop_assert!(r.omega.iter().all(|w| *w > 0.0 && *w < PI));
        let arcs = spherical_projection_arcs(&t).unwrap();
        prop_assert!((arcs.total() - r.angle_sum).abs() <= 1e-10);
        prop_assert!(arcs.endpoints_antipodal(1e-10));
        let lightlike = is_lightlike(&plane_normal(&t).unwrap());
        prop_assert_eq!(lightlike, (r.angle_sum - PI).abs() <= 1e-7);
    }

    #[test]
    fn closed_form_images_match_matrices(t in triangle(0.8, 0.05, true)) {
        for i in 0..3 {
            let a = translated_vertices(&t, i).unwrap();
            let b = translated_vertices_by_matrix(&t, i).unwrap();
            for k in 0..3 {
                let (p, q) = (a[k].to_chart().unwrap(), b[k].to_chart().unwrap());
                let scale = 1.0 + p.to_vector().amax();
                prop_assert!((p.to_vector() - q.to_vector()).amax() <= 1e-12 * scale);
            }
        }
        prop_assert!(antipodality_deviation(&t).unwrap() <= 1e-10);
    }

    #[test]
    fn closed_form_images_for_general_first_vertex(t in triangle(0.6, 0.1, false)) {
        // T_{A2'}⁻¹ after moving A1 to the origin equals T_{A2}⁻¹ directly
        for i in 1..3 {
            let a = translated_vertices(&t, i).unwrap();
            let b = translated_vertices_by_matrix(&t, i).unwrap();
            for k in 0..3 {
                let (p, q) = (a[k].to_chart().unwrap(), b[k].to_chart().unwrap());
                prop_assert!((p.to_vector() - q.to_vector()).amax() <= 1e-10, "{:?} vs {:?}", p, q);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn geodesic_report_relabels(t in triangle(0.6, 0.1, false), perm in Just([2usize, 0, 1])) {
        let a = geodesic_triangle_report(&t).unwrap();
        let b = geodesic_triangle_report(&t.relabeled(perm)).unwrap();
        for k in 0..3 {
            prop_assert!((b.omega[k] - a.omega[perm[k]]).abs() <= 1e-8);
            prop_assert!((b.side_lengths[k] - a.side_lengths[perm[k]]).abs() <= 1e-8);
        }
        prop_assert!((a.angle_sum - b.angle_sum).abs() <= 1e-8);
    }

    #[test]
    fn geodesic_angle_sum_is_translation_invariant(t in triangle(0.6, 0.1, false), x in point_in(0.6, 0.1)) {
        let m = translation_to(&x.to_projective()).unwrap();
        let moved = Triangle {
            vertices: t.vertices.map(|v| apply(&m, &v).unwrap().normalized()),
        };
        let a = geodesic_triangle_report(&t).unwrap();
        let b = geodesic_triangle_report(&moved).unwrap();
        prop_assert!((a.angle_sum - b.angle_sum).abs() <= 1e-7);
        for k in 0..3 {
            prop_assert!((a.omega[k] - b.omega[k]).abs() <= 1e-7);
        }
    }
}
