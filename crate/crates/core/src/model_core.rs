//! Point representations of the hyperboloid model.
//!
//! A point is stored natively as homogeneous coordinates `(x0:x1:x2:x3)`
//! up to *positive* scaling. Every computation on triangles happens in the
//! principal inhomogeneous chart `x0 > 0`, where `(x, y, z) = (x1, x2, x3)/x0`.
//! The universal cover is only visible through [`HyperboloidCoords`], whose
//! fibre coordinate `phi` is unbounded.

use std::f64::consts::PI;

use nalgebra::{Vector3, Vector4};
use serde::{Deserialize, Serialize};

use crate::{GeometryError, Result};

/// Default tolerance for exactness predicates.
pub const EPS: f64 = 1e-10;

/// Homogeneous coordinates `(x0:x1:x2:x3)`, equivalent under positive scaling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

/// Inhomogeneous chart coordinates `(x, y, z) = (x1/x0, x2/x0, x3/x0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Hyperboloid parametrization: polar coordinates `(r, theta)` of the base
/// plane and the fibre coordinate `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperboloidCoords {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

/// A real matrix `[[d, b], [c, a]]` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sl2Matrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl ProjectivePoint {
    pub const ORIGIN: ProjectivePoint = ProjectivePoint {
        x0: 1.0,
        x1: 0.0,
        x2: 0.0,
        x3: 0.0,
    };

    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Result<Self> {
        let p = ProjectivePoint { x0, x1, x2, x3 };
        if p.coords().iter().all(|c| *c == 0.0) {
            return Err(GeometryError::ZeroPoint);
        }
        if p.coords().iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::InvalidArgument(format!(
                "non-finite coordinates {p:?}"
            )));
        }
        Ok(p)
    }

    /// The chart point `(1:x:y:z)`.
    pub fn from_chart(x: f64, y: f64, z: f64) -> Self {
        ProjectivePoint {
            x0: 1.0,
            x1: x,
            x2: y,
            x3: z,
        }
    }

    pub fn from_vector(v: Vector4<f64>) -> Result<Self> {
        Self::new(v[0], v[1], v[2], v[3])
    }

    pub fn to_vector(&self) -> Vector4<f64> {
        Vector4::new(self.x0, self.x1, self.x2, self.x3)
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    pub fn scaled(&self, c: f64) -> Self {
        ProjectivePoint {
            x0: c * self.x0,
            x1: c * self.x1,
            x2: c * self.x2,
            x3: c * self.x3,
        }
    }

    /// Divides by the absolute value of the first nonzero coordinate. Signs
    /// are kept: only positive proportionality identifies points.
    pub fn normalized(&self) -> Self {
        let lead = self
            .coords()
            .into_iter()
            .find(|c| *c != 0.0)
            .map(f64::abs)
            .unwrap_or(1.0);
        self.scaled(1.0 / lead)
    }

    pub fn eq_projective(&self, other: &ProjectivePoint, tol: f64) -> bool {
        let a = self.normalized().coords();
        let b = other.normalized().coords();
        a.iter().zip(b.iter()).all(|(p, q)| (p - q).abs() <= tol)
    }

    pub fn quadratic_form(&self) -> f64 {
        quadratic_form(self)
    }

    pub fn is_interior(&self) -> bool {
        is_interior(self)
    }

    pub fn to_chart(&self) -> Result<ModelPoint> {
        projective_to_inhomogeneous(self)
    }
}

impl ModelPoint {
    pub const ORIGIN: ModelPoint = ModelPoint {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        ModelPoint { x, y, z }
    }

    pub fn from_vector(v: Vector3<f64>) -> Self {
        ModelPoint::new(v[0], v[1], v[2])
    }

    pub fn to_vector(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn to_projective(&self) -> ProjectivePoint {
        ProjectivePoint::from_chart(self.x, self.y, self.z)
    }

    /// `quadratic_form(1:x:y:z)`.
    pub fn quadratic_form(&self) -> f64 {
        -1.0 - self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn is_interior(&self) -> bool {
        self.quadratic_form() < 0.0
    }

    pub fn distance_to(&self, other: &ModelPoint) -> f64 {
        (self.to_vector() - other.to_vector()).norm()
    }
}

impl Sl2Matrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_tolerance(a, b, c, d, EPS)
    }

    pub fn with_tolerance(a: f64, b: f64, c: f64, d: f64, tol: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > tol {
            return Err(GeometryError::NotUnimodular { det });
        }
        Ok(Sl2Matrix { a, b, c, d })
    }

    pub const IDENTITY: Sl2Matrix = Sl2Matrix {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }
}

/// `-x0² - x1² + x2² + x3²`; negative exactly on the interior of the model.
pub fn quadratic_form(p: &ProjectivePoint) -> f64 {
    -p.x0 * p.x0 - p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3
}

pub fn is_interior(p: &ProjectivePoint) -> bool {
    quadratic_form(p) < 0.0
}

pub fn sl2_to_projective(m: &Sl2Matrix) -> ProjectivePoint {
    ProjectivePoint {
        x0: 0.5 * (m.a + m.d),
        x1: 0.5 * (m.b - m.c),
        x2: 0.5 * (m.b + m.c),
        x3: 0.5 * (m.a - m.d),
    }
}

/// Inverse of [`sl2_to_projective`]. The representative is rescaled by a
/// positive factor so that the matrix is unimodular.
pub fn projective_to_sl2(p: &ProjectivePoint) -> Result<Sl2Matrix> {
    let a = p.x0 + p.x3;
    let b = p.x1 + p.x2;
    let c = -p.x1 + p.x2;
    let d = p.x0 - p.x3;
    let det = a * d - b * c;
    if det <= 0.0 || !det.is_finite() {
        return Err(GeometryError::NonPositiveDeterminant { det });
    }
    let k = det.sqrt().recip();
    Ok(Sl2Matrix {
        a: a * k,
        b: b * k,
        c: c * k,
        d: d * k,
    })
}

pub fn hyperboloid_to_projective(h: &HyperboloidCoords) -> ProjectivePoint {
    let (sh, ch) = (h.r.sinh(), h.r.cosh());
    let (sp, cp) = h.phi.sin_cos();
    let (sd, cd) = (h.theta - h.phi).sin_cos();
    ProjectivePoint {
        x0: ch * cp,
        x1: ch * sp,
        x2: sh * cd,
        x3: sh * sd,
    }
}

pub fn projective_to_inhomogeneous(p: &ProjectivePoint) -> Result<ModelPoint> {
    if p.x0 == 0.0 {
        return Err(GeometryError::ChartUndefined);
    }
    Ok(ModelPoint {
        x: p.x1 / p.x0,
        y: p.x2 / p.x0,
        z: p.x3 / p.x0,
    })
}

/// Principal-branch inverse of the inhomogeneous chart:
/// `phi ∈ (-pi/2, pi/2)`, `r ≥ 0`, `theta ∈ (-pi, pi]`.
pub fn inhomogeneous_to_hyperboloid(m: &ModelPoint) -> Result<HyperboloidCoords> {
    if !m.is_interior() {
        return Err(GeometryError::NotInterior {
            form: m.quadratic_form(),
        });
    }
    let phi = m.x.atan();
    let tanh_r = phi.cos() * m.y.hypot(m.z);
    let r = tanh_r.atanh();
    let theta = wrap_angle(m.z.atan2(m.y) + phi);
    Ok(HyperboloidCoords { r, theta, phi })
}

/// Reduces an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let w = a.sin().atan2(a.cos());
    if w == -PI {
        PI
    } else {
        w
    }
}
