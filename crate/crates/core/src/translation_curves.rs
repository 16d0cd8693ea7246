//! Translation curves from the origin and the translation distance.
//!
//! A translation curve with initial unit direction
//! `t = (sin α, cos α cos λ, cos α sin λ)` is the chart ray
//! `X(s) = T(s, cos 2α) · t`, where `T = tanh(s√κ)/√κ` (H²-like),
//! `tan(s√-κ)/√-κ` (fibre-like) or `s` (light-like). The curves are
//! Euclidean straight lines through the origin, and their images under
//! translations stay straight because translations are collineations.

use std::f64::consts::FRAC_PI_2;

use nalgebra::Vector3;
use serde::Serialize;

use crate::geodesics::{Direction, LIGHTLIKE_BAND};
use crate::isometries::{apply, translation_from};
use crate::model_core::ModelPoint;
use crate::profile::{inverse_tan_profile, tan_profile};
use crate::{GeometryError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TranslationArc {
    pub dir: Direction,
    pub s: f64,
}

/// Chart point at translation arc length `s` in direction `dir`.
pub fn translation_curve_point(s: f64, dir: &Direction) -> Result<ModelPoint> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(GeometryError::InvalidArgument(format!("arc length {s}")));
    }
    let kappa = (2.0 * dir.alpha()).cos();
    if kappa < 0.0 && s * (-kappa).sqrt() >= FRAC_PI_2 {
        return Err(GeometryError::ChartOverflow {
            phi: s * (-kappa).sqrt(),
        });
    }
    Ok(ModelPoint::from_vector(
        dir.unit_vector() * tan_profile(s, kappa),
    ))
}

/// Inverts the parametrization for a chart point, returning the arc from
/// the origin. The origin itself maps to `s = 0`, `λ = α = 0`.
pub fn translation_arc_to(target: &ModelPoint) -> Result<TranslationArc> {
    if !target.is_interior() {
        return Err(GeometryError::NotInterior {
            form: target.quadratic_form(),
        });
    }
    let v = target.to_vector();
    let radius = v.norm();
    if radius == 0.0 {
        return Ok(TranslationArc {
            dir: Direction::new(0.0, 0.0)?,
            s: 0.0,
        });
    }
    let base = target.y.hypot(target.z);
    let alpha = target.x.atan2(base);
    let lambda = if base == 0.0 {
        0.0
    } else {
        target.z.atan2(target.y)
    };
    let mut kappa = (2.0 * alpha).cos();
    if kappa.abs() < LIGHTLIKE_BAND {
        kappa = 0.0;
    }
    let s = inverse_tan_profile(radius, kappa).ok_or_else(|| GeometryError::NotInterior {
        form: target.quadratic_form(),
    })?;
    Ok(TranslationArc {
        dir: Direction::new(lambda, alpha)?,
        s,
    })
}

/// Translation distance between two chart points.
pub fn translation_distance(p: &ModelPoint, q: &ModelPoint) -> Result<f64> {
    Ok(translation_arc_between(p, q)?.s)
}

/// Translation arc leaving `p` towards `q`, expressed at the origin after the
/// translation `T_p⁻¹`.
pub fn translation_arc_between(p: &ModelPoint, q: &ModelPoint) -> Result<TranslationArc> {
    for m in [p, q] {
        if !m.is_interior() {
            return Err(GeometryError::NotInterior {
                form: m.quadratic_form(),
            });
        }
    }
    let image = apply(&translation_from(&p.to_projective())?, &q.to_projective())?.to_chart()?;
    translation_arc_to(&image)
}

/// Samples the translation curve from `p` to `q` and checks that the samples
/// are collinear in the chart within `1e-10` (relative to the chord length).
pub fn is_straight_chord(p: &ModelPoint, q: &ModelPoint, samples: usize) -> Result<bool> {
    let pts = sample_chord(p, q, samples)?;
    Ok(are_collinear(&pts, 1e-10))
}

/// Points of the translation curve from `p` to `q`, obtained by sampling the
/// arc at the origin and mapping it back with `T_p`.
pub fn sample_chord(p: &ModelPoint, q: &ModelPoint, samples: usize) -> Result<Vec<ModelPoint>> {
    let arc = translation_arc_between(p, q)?;
    let t = crate::isometries::translation_to(&p.to_projective())?;
    let n = samples.max(2);
    (0..n)
        .map(|i| {
            let s = arc.s * i as f64 / (n - 1) as f64;
            let local = translation_curve_point(s, &arc.dir)?;
            apply(&t, &local.to_projective())?.to_chart()
        })
        .collect()
}

/// Collinearity of chart points: every point lies within `tol·|chord|` of the
/// line through the first and last point.
pub fn are_collinear(points: &[ModelPoint], tol: f64) -> bool {
    let (Some(first), Some(last)) = (points.first(), points.last()) else {
        return true;
    };
    let a = first.to_vector();
    let d: Vector3<f64> = last.to_vector() - a;
    let len = d.norm();
    if len == 0.0 {
        return points.iter().all(|p| (p.to_vector() - a).norm() <= tol);
    }
    let u = d / len;
    points.iter().all(|p| {
        let w = p.to_vector() - a;
        (w - u * w.dot(&u)).norm() <= tol * len.max(1.0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn curve_points() {
        let d = Direction::new(0.0, FRAC_PI_4).unwrap();
        let p = translation_curve_point(0.6 / SQRT_2, &d).unwrap();
        assert_abs_diff_eq!(p.x, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(p.z, 0.0, epsilon = 1e-15);

        let d = Direction::new(0.0, 0.0).unwrap();
        let p = translation_curve_point(0.8, &d).unwrap();
        assert_abs_diff_eq!(p.y, 0.8f64.tanh(), epsilon = 1e-15);
        assert_eq!(p.x, 0.0);

        assert_eq!(translation_curve_point(0.0, &d).unwrap(), ModelPoint::ORIGIN);

        let up = Direction::new(0.0, FRAC_PI_2).unwrap();
        assert!(matches!(
            translation_curve_point(1.6, &up),
            Err(GeometryError::ChartOverflow { .. })
        ));
    }

    #[test]
    fn distances_from_origin() {
        let o = ModelPoint::ORIGIN;
        let d = translation_distance(&o, &ModelPoint::new(0.0, 0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(d, 0.5f64.atanh(), epsilon = 1e-15);
        let d = translation_distance(&o, &ModelPoint::new(0.2, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(d, 0.2f64.atan(), epsilon = 1e-15);
        let d = translation_distance(&o, &ModelPoint::new(0.3, 0.3, 0.0)).unwrap();
        assert_abs_diff_eq!(d, 0.3 * SQRT_2, epsilon = 1e-15);
        assert_eq!(translation_distance(&o, &o).unwrap(), 0.0);
        assert!(translation_distance(&o, &ModelPoint::new(0.0, 1.0, 0.0)).is_err());
    }

    #[test]
    fn chords_are_straight() {
        let p = ModelPoint::new(0.1, -0.3, 0.2);
        let q = ModelPoint::new(-0.4, 0.25, 0.5);
        assert!(is_straight_chord(&ModelPoint::ORIGIN, &q, 17).unwrap());
        assert!(is_straight_chord(&p, &q, 17).unwrap());

        let mut pts = sample_chord(&p, &q, 9).unwrap();
        pts[4].y += 1e-6;
        assert!(!are_collinear(&pts, 1e-10));
    }
}
