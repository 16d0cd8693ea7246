//! Collineations preserving the model: the simply transitive translation
//! group, the one-parameter group of fibre translations and a validator for
//! the general isometry shape.
//!
//! Matrices act on *row* vectors of homogeneous coordinates, `p' = p · M`,
//! and are only meaningful up to a positive factor. Points produced by
//! [`apply`] are rescaled so that `x0 > 0` whenever `x0 ≠ 0`.

use nalgebra::{Matrix4, RowVector4};
use serde::Serialize;

use crate::model_core::ProjectivePoint;
use crate::{GeometryError, Result};

/// Constraint tolerance used by [`is_isometry`] after scale normalization.
pub const ISOMETRY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryMatrix(pub Matrix4<f64>);

/// The two sign alternatives of the isometry shape. `Upper` contains the
/// translations and the fibre translations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IsometryBranch {
    Upper,
    Lower,
}

impl IsometryMatrix {
    pub fn identity() -> Self {
        IsometryMatrix(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    /// `self` followed by `other` (row-vector convention).
    pub fn then(&self, other: &IsometryMatrix) -> IsometryMatrix {
        IsometryMatrix(self.0 * other.0)
    }

    /// Raw row-vector product without renormalization.
    pub fn act(&self, p: &ProjectivePoint) -> RowVector4<f64> {
        p.to_vector().transpose() * self.0
    }

    /// Proportional to identity, up to a positive factor.
    pub fn is_scalar(&self, tol: f64) -> bool {
        let k = self.0[(0, 0)];
        if k <= 0.0 {
            return false;
        }
        (self.0 / k - Matrix4::identity()).amax() <= tol
    }
}

fn translation_rows(x0: f64, x1: f64, x2: f64, x3: f64) -> Matrix4<f64> {
    Matrix4::new(
        x0, x1, x2, x3, //
        -x1, x0, x3, -x2, //
        x2, x3, x0, x1, //
        x3, -x2, -x1, x0,
    )
}

fn translation_normalized(x: &ProjectivePoint) -> Result<ProjectivePoint> {
    if !x.is_interior() {
        return Err(GeometryError::NotInterior {
            form: x.quadratic_form(),
        });
    }
    Ok(if x.x0 < 0.0 { x.scaled(-1.0) } else { *x })
}

/// The translation `T_X` carrying the origin `E0` to `X`.
pub fn translation_to(x: &ProjectivePoint) -> Result<IsometryMatrix> {
    let x = translation_normalized(x)?;
    Ok(IsometryMatrix(translation_rows(x.x0, x.x1, x.x2, x.x3)))
}

/// `T_X⁻¹` in its explicit form, mapping `X` back to `E0`.
pub fn translation_from(x: &ProjectivePoint) -> Result<IsometryMatrix> {
    let x = translation_normalized(x)?;
    Ok(IsometryMatrix(Matrix4::new(
        x.x0, -x.x1, -x.x2, -x.x3, //
        x.x1, x.x0, -x.x3, x.x2, //
        -x.x2, -x.x3, x.x0, -x.x1, //
        -x.x3, x.x2, x.x1, x.x0,
    )))
}

/// `p · T`, renormalized to `x0 > 0` when `x0 ≠ 0`.
pub fn apply(t: &IsometryMatrix, p: &ProjectivePoint) -> Result<ProjectivePoint> {
    let v = t.act(p);
    if v.iter().all(|c| *c == 0.0) {
        return Err(GeometryError::SingularMap);
    }
    let q = ProjectivePoint::new(v[0], v[1], v[2], v[3])?;
    Ok(if q.x0 < 0.0 { q.scaled(-1.0) } else { q })
}

/// Fibre translation `S(phi)`; its orbits are the fibre lines.
pub fn fibre_translate(phi: f64) -> IsometryMatrix {
    let (s, c) = phi.sin_cos();
    IsometryMatrix(Matrix4::new(
        c, s, 0.0, 0.0, //
        -s, c, 0.0, 0.0, //
        0.0, 0.0, c, -s, //
        0.0, 0.0, s, c,
    ))
}

/// Checks the sign pattern and the four quadratic row constraints of the
/// general isometry shape, allowing positive proportionality. Returns the
/// matching sign branch.
pub fn is_isometry(m: &Matrix4<f64>) -> Option<IsometryBranch> {
    is_isometry_with(m, ISOMETRY_TOL)
}

pub fn is_isometry_with(m: &Matrix4<f64>, tol: f64) -> Option<IsometryBranch> {
    if m.iter().any(|v| !v.is_finite()) {
        return None;
    }
    let r0 = m.row(0);
    let form0 = -r0[0] * r0[0] - r0[1] * r0[1] + r0[2] * r0[2] + r0[3] * r0[3];
    if form0 >= 0.0 {
        return None;
    }
    let m = m / (-form0).sqrt();
    let a0 = [m[(0, 0)], m[(0, 1)], m[(0, 2)], m[(0, 3)]];
    let a2 = [m[(2, 0)], m[(2, 1)], m[(2, 2)], m[(2, 3)]];

    let constraints = [
        -a2[0] * a2[0] - a2[1] * a2[1] + a2[2] * a2[2] + a2[3] * a2[3] - 1.0,
        -a0[0] * a2[0] - a0[1] * a2[1] + a0[2] * a2[2] + a0[3] * a2[3],
        -a0[0] * a2[1] + a0[1] * a2[0] - a0[2] * a2[3] + a0[3] * a2[2],
    ];
    if constraints.iter().any(|c| c.abs() > tol) {
        return None;
    }

    [(IsometryBranch::Upper, 1.0), (IsometryBranch::Lower, -1.0)]
        .into_iter()
        .find(|(_, sg)| {
            let row1 = [-sg * a0[1], sg * a0[0], sg * a0[3], -sg * a0[2]];
            let row3 = [sg * a2[1], -sg * a2[0], -sg * a2[3], sg * a2[2]];
            (0..4).all(|j| {
                (m[(1, j)] - row1[j]).abs() <= tol && (m[(3, j)] - row3[j]).abs() <= tol
            })
        })
        .map(|(branch, _)| branch)
}
