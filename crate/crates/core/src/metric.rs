//! The left-invariant Riemannian metric in polar `(r, θ, φ)` and in
//! inhomogeneous `(x, y, z)` coordinates, and the angle it induces between
//! tangent vectors.
//!
//! In polar coordinates the arc length square is
//! `ds² = dr² + cosh²r sinh²r dθ² + (dφ + sinh²r dθ)²`.
//!
//! The inhomogeneous tensor is the pull-back of that form through the chart.
//! With `D = -1 - x² + y² + z²` its entries are
//!
//! ```text
//! g11 = (1 + y² + z²)/D²    g12 = (-xy - 2z)/D²    g13 = (-xz + 2y)/D²
//! g22 = (1 + x² + z²)/D²    g23 = -yz/D²           g33 = (1 + x² + y²)/D²
//! ```
//!
//! `tests/metric_pullback.rs` checks every entry, including the sign of
//! `g23`, against the polar form transported through the chart Jacobian.

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use crate::model_core::{inhomogeneous_to_hyperboloid, wrap_angle, ModelPoint, EPS};
use crate::{GeometryError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Chart {
    Polar,
    Inhomogeneous,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVector {
    pub components: Vector3<f64>,
    pub chart: Chart,
}

impl TangentVector {
    pub fn inhomogeneous(u1: f64, u2: f64, u3: f64) -> Self {
        TangentVector {
            components: Vector3::new(u1, u2, u3),
            chart: Chart::Inhomogeneous,
        }
    }

    pub fn polar(dr: f64, dtheta: f64, dphi: f64) -> Self {
        TangentVector {
            components: Vector3::new(dr, dtheta, dphi),
            chart: Chart::Polar,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        TangentVector {
            components: self.components * c,
            chart: self.chart,
        }
    }
}

/// A symmetric 3×3 metric tensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor(pub Matrix3<f64>);

impl MetricTensor {
    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn inner(&self, u: &Vector3<f64>, v: &Vector3<f64>) -> f64 {
        (u.transpose() * self.0 * v)[0]
    }

    pub fn is_symmetric(&self) -> bool {
        self.0 == self.0.transpose()
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let g = &self.0;
        let m1 = g[(0, 0)];
        let m2 = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
        let m3 = g.determinant();
        m1 > 0.0 && m2 > 0.0 && m3 > 0.0
    }
}

/// Metric tensor in `(r, θ, φ)`. Degenerate at `r = 0`, where the polar chart
/// is singular.
pub fn metric_polar(r: f64) -> MetricTensor {
    let sh2 = r.sinh().powi(2);
    let ch2 = r.cosh().powi(2);
    MetricTensor(Matrix3::new(
        1.0,
        0.0,
        0.0,
        0.0,
        sh2 * (sh2 + ch2),
        sh2,
        0.0,
        sh2,
        1.0,
    ))
}

/// Metric tensor in inhomogeneous coordinates.
///
/// Points with `-EPS ≤ D < 0` are accepted but logged as near the boundary;
/// `D ≥ 0` is rejected.
pub fn metric_inhomogeneous(m: &ModelPoint) -> Result<MetricTensor> {
    let ModelPoint { x, y, z } = *m;
    let d = m.quadratic_form();
    if d >= 0.0 {
        return Err(GeometryError::NotInterior { form: d });
    }
    if d > -EPS {
        log::warn!("metric evaluated {:e} from the boundary at {m:?}", -d);
    }
    let k = 1.0 / (d * d);
    let g12 = (-x * y - 2.0 * z) * k;
    let g13 = (-x * z + 2.0 * y) * k;
    let g23 = -y * z * k;
    Ok(MetricTensor(Matrix3::new(
        (1.0 + y * y + z * z) * k,
        g12,
        g13,
        g12,
        (1.0 + x * x + z * z) * k,
        g23,
        g13,
        g23,
        (1.0 + x * x + y * y) * k,
    )))
}

/// The polar tensor pulled back to the inhomogeneous chart, `Jᵀ g J`, with
/// the Jacobian of `(x, y, z) ↦ (r, θ, φ)` taken by central differences of
/// step `h`. Independent of the closed-form inhomogeneous tensor, so the two
/// can be compared. Needs `r > 0` at and around `m`.
pub fn pullback_polar(m: &ModelPoint, h: f64) -> Result<MetricTensor> {
    if !(h > 0.0) {
        return Err(GeometryError::InvalidArgument(format!("step {h}")));
    }
    let base = inhomogeneous_to_hyperboloid(m)?;
    if base.r <= 10.0 * h {
        return Err(GeometryError::Precondition(
            "polar chart is singular on the fibre axis".into(),
        ));
    }
    let mut jac = Matrix3::zeros();
    for k in 0..3 {
        let mut plus = m.to_vector();
        let mut minus = m.to_vector();
        plus[k] += h;
        minus[k] -= h;
        let p = inhomogeneous_to_hyperboloid(&ModelPoint::from_vector(plus))?;
        let q = inhomogeneous_to_hyperboloid(&ModelPoint::from_vector(minus))?;
        jac[(0, k)] = (p.r - q.r) / (2.0 * h);
        jac[(1, k)] = wrap_angle(p.theta - q.theta) / (2.0 * h);
        jac[(2, k)] = (p.phi - q.phi) / (2.0 * h);
    }
    let g = jac.transpose() * metric_polar(base.r).0 * jac;
    Ok(MetricTensor((g + g.transpose()) * 0.5))
}

/// Angle in `[0, π]` between two tangent vectors at an interior point. Both
/// vectors must be given in the inhomogeneous chart.
pub fn angle_between(u: &TangentVector, v: &TangentVector, at: &ModelPoint) -> Result<f64> {
    if u.chart != Chart::Inhomogeneous || v.chart != Chart::Inhomogeneous {
        return Err(GeometryError::InvalidArgument(
            "angle_between expects inhomogeneous tangent vectors".into(),
        ));
    }
    let g = metric_inhomogeneous(at)?;
    angle_with(&g, &u.components, &v.components)
}

pub(crate) fn angle_with(g: &MetricTensor, u: &Vector3<f64>, v: &Vector3<f64>) -> Result<f64> {
    let uu = g.inner(u, u);
    let vv = g.inner(v, v);
    if uu <= 0.0 || vv <= 0.0 {
        return Err(GeometryError::ZeroVector);
    }
    let c = g.inner(u, v) / (uu * vv).sqrt();
    Ok(c.clamp(-1.0, 1.0).acos())
}

/// Euclidean angle between two vectors, which is the metric angle at the
/// origin. Uses `atan2(|u×v|, u·v)` for accuracy near 0 and π.
pub fn euclidean_angle(u: &Vector3<f64>, v: &Vector3<f64>) -> Result<f64> {
    if u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(GeometryError::ZeroVector);
    }
    Ok(u.cross(v).norm().atan2(u.dot(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn polar_examples() {
        let g0 = metric_polar(0.0);
        assert_eq!(g0.0, Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0));
        let g1 = metric_polar(1.0);
        let expected = 1f64.sinh().powi(2) * (1f64.sinh().powi(2) + 1f64.cosh().powi(2));
        assert_abs_diff_eq!(g1.0[(1, 1)], expected, epsilon = 1e-14);
        assert_abs_diff_eq!(g1.0[(1, 1)], 5.19596, epsilon = 1e-5);
        assert!(g1.is_symmetric());
    }

    #[test]
    fn inhomogeneous_at_origin_is_identity() {
        let g = metric_inhomogeneous(&ModelPoint::ORIGIN).unwrap();
        assert_eq!(g.0, Matrix3::identity());
    }

    #[test]
    fn inhomogeneous_on_fibre_axis() {
        let x = 0.7;
        let g = metric_inhomogeneous(&ModelPoint::new(x, 0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(g.0[(0, 0)], 1.0 / (1.0 + x * x).powi(2), epsilon = 1e-15);
        assert_eq!(g.0[(0, 1)], 0.0);
        assert_eq!(g.0[(0, 2)], 0.0);
        assert!(g.is_symmetric());
    }

    #[test]
    fn inhomogeneous_rejects_boundary() {
        assert!(metric_inhomogeneous(&ModelPoint::new(0.0, 1.0, 0.0)).is_err());
        assert!(metric_inhomogeneous(&ModelPoint::new(0.0, 1.0 - 1e-12, 0.0)).is_ok());
    }

    #[test]
    fn pullback_at_a_sample_point() {
        let m = ModelPoint::new(0.3, 0.4, -0.2);
        let fd = pullback_polar(&m, 1e-6).unwrap();
        let g = metric_inhomogeneous(&m).unwrap();
        assert!((fd.0 - g.0).amax() < 1e-5);
        assert!(pullback_polar(&ModelPoint::new(0.3, 0.0, 0.0), 1e-6).is_err());
    }

    #[test]
    fn angle_examples() {
        let u = TangentVector::inhomogeneous(1.0, 0.0, 0.0);
        let v = TangentVector::inhomogeneous(0.0, 1.0, 0.0);
        let o = ModelPoint::ORIGIN;
        assert_abs_diff_eq!(angle_between(&u, &v, &o).unwrap(), FRAC_PI_2, epsilon = 1e-15);
        assert_eq!(angle_between(&u, &u, &o).unwrap(), 0.0);

        let at = ModelPoint::new(0.2, -0.3, 0.4);
        let w = TangentVector::inhomogeneous(0.3, 0.1, -0.7);
        let a = angle_between(&u, &w, &at).unwrap();
        let b = angle_between(&u.scaled(4.2), &w, &at).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-14);

        let zero = TangentVector::inhomogeneous(0.0, 0.0, 0.0);
        assert_eq!(angle_between(&zero, &u, &o), Err(GeometryError::ZeroVector));
        let polar = TangentVector::polar(1.0, 0.0, 0.0);
        assert!(angle_between(&polar, &u, &o).is_err());
    }
}
