//! Interior angles of geodesic and translation triangles.
//!
//! The angle at a vertex `A_i` is measured after the translation `T_{A_i}⁻¹`
//! has moved `A_i` to the origin, where the metric is Euclidean. The images
//! of the other two vertices are then joined to the origin by geodesics (or
//! translation curves), and the angle is the Euclidean angle between the two
//! initial tangents, both oriented away from the vertex.
//!
//! Vertex indices are 0-based in the API; `A1, A2, A3` in names and messages
//! are 1-based.

use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::Serialize;

use crate::geodesics::{solve_geodesic_to, Direction};
use crate::isometries::{apply, translation_from};
use crate::metric::euclidean_angle;
use crate::model_core::{ModelPoint, ProjectivePoint, EPS};
use crate::translation_curves::translation_arc_to;
use crate::{GeometryError, Result};

/// Bisection budget of [`find_pi_sum_triangle`].
pub const PI_SEARCH_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Triangle {
    pub vertices: [ProjectivePoint; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveKind {
    Geodesic,
    Translation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    FibreLike,
    HyperbolicLike,
    General,
}

/// What vertex `vertex` sees after being translated to the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VertexView {
    pub vertex: usize,
    pub neighbours: [usize; 2],
    /// Initial directions of the sides towards the neighbours.
    pub directions: [Direction; 2],
    /// Side lengths towards the neighbours.
    pub lengths: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleReport {
    pub omega: [f64; 3],
    pub angle_sum: f64,
    /// `side_lengths[k]` is the side opposite vertex `k`.
    pub side_lengths: [f64; 3],
    pub kind: CurveKind,
    pub classification: Option<Classification>,
    pub views: [VertexView; 3],
}

impl TriangleReport {
    /// Direction of the side from vertex `from` towards vertex `to`.
    pub fn direction(&self, from: usize, to: usize) -> Option<Direction> {
        let view = self.views.get(from)?;
        view.neighbours
            .iter()
            .position(|n| *n == to)
            .map(|k| view.directions[k])
    }
}

/// Euclidean normal of the plane through the origin and the two other
/// vertices (with `A1` at the origin).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneNormal {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
}

impl PlaneNormal {
    pub fn to_vector(&self) -> Vector3<f64> {
        Vector3::new(self.v1, self.v2, self.v3)
    }

    /// `-v1² + v2² + v3²`.
    pub fn minkowski_square(&self) -> f64 {
        -self.v1 * self.v1 + self.v2 * self.v2 + self.v3 * self.v3
    }
}

/// Projections of the translated vertices onto the unit sphere around the
/// origin, as three consecutive great-circle arcs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SphericalArcs {
    /// Lengths of the arcs `P(A3²)P(A1²)`, `P(A1²)P(A1³)`, `P(A1³)P(A2³)`.
    pub arcs: [f64; 3],
    /// `P(A3²)`.
    pub start: [f64; 3],
    /// `P(A2³)`.
    pub end: [f64; 3],
}

impl SphericalArcs {
    pub fn total(&self) -> f64 {
        self.arcs.iter().sum()
    }

    pub fn endpoints_antipodal(&self, tol: f64) -> bool {
        (0..3).all(|k| (self.start[k] + self.end[k]).abs() <= tol)
    }
}

impl Triangle {
    pub fn new(a1: ProjectivePoint, a2: ProjectivePoint, a3: ProjectivePoint) -> Result<Self> {
        let t = Triangle {
            vertices: [a1, a2, a3],
        };
        for (i, v) in t.vertices.iter().enumerate() {
            if !v.is_interior() {
                return Err(GeometryError::NotInterior {
                    form: v.quadratic_form(),
                }
                .at_vertex(i));
            }
            if v.x0 <= 0.0 {
                return Err(GeometryError::ChartUndefined.at_vertex(i));
            }
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if t.vertices[i].eq_projective(&t.vertices[j], EPS) {
                return Err(GeometryError::DegenerateTriangle(format!(
                    "vertices A{} and A{} coincide",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(t)
    }

    /// Triangle with `A1` at the origin and the given chart points as `A2`, `A3`.
    pub fn at_origin(a2: ModelPoint, a3: ModelPoint) -> Result<Self> {
        Triangle::new(ProjectivePoint::ORIGIN, a2.to_projective(), a3.to_projective())
    }

    pub fn from_chart(points: [ModelPoint; 3]) -> Result<Self> {
        Triangle::new(
            points[0].to_projective(),
            points[1].to_projective(),
            points[2].to_projective(),
        )
    }

    pub fn chart_points(&self) -> Result<[ModelPoint; 3]> {
        Ok([
            self.vertices[0].to_chart()?,
            self.vertices[1].to_chart()?,
            self.vertices[2].to_chart()?,
        ])
    }

    /// Vertex `perm[k]` of `self` becomes vertex `k` of the result.
    pub fn relabeled(&self, perm: [usize; 3]) -> Triangle {
        Triangle {
            vertices: perm.map(|k| self.vertices[k]),
        }
    }

    fn has_origin_first(&self) -> bool {
        self.vertices[0].eq_projective(&ProjectivePoint::ORIGIN, 0.0)
    }

    /// The congruent triangle obtained by translating `A1` to the origin.
    pub fn moved_to_origin(&self) -> Result<Triangle> {
        if self.has_origin_first() {
            return Ok(*self);
        }
        Ok(Triangle {
            vertices: translated_vertices_by_matrix(self, 0)?,
        })
    }
}

/// Images of all three vertices under `T_{A_i}⁻¹`, by matrix product.
pub fn translated_vertices_by_matrix(t: &Triangle, i: usize) -> Result<[ProjectivePoint; 3]> {
    let m = translation_from(&t.vertices[i])?;
    let mut out = [ProjectivePoint::ORIGIN; 3];
    for (j, v) in t.vertices.iter().enumerate() {
        out[j] = if j == i {
            ProjectivePoint::ORIGIN
        } else {
            apply(&m, v)?.normalized()
        };
    }
    Ok(out)
}

/// Images of all three vertices under `T_{A_i}⁻¹` from the closed-form
/// coordinates. A triangle whose first vertex is not the origin is first
/// translated so that it is.
pub fn translated_vertices(t: &Triangle, i: usize) -> Result<[ProjectivePoint; 3]> {
    if i > 2 {
        return Err(GeometryError::InvalidArgument(format!("vertex index {i}")));
    }
    let t = t.moved_to_origin()?;
    let [_, p2, p3] = t.chart_points()?;
    let chart = |m: ModelPoint| m.to_projective();
    let neg = |m: ModelPoint| ModelPoint::new(-m.x, -m.y, -m.z);
    Ok(match i {
        0 => [ProjectivePoint::ORIGIN, chart(p2), chart(p3)],
        1 => [
            chart(neg(p2)),
            ProjectivePoint::ORIGIN,
            chart(closed_form_image(&p2, &p3)?),
        ],
        _ => [
            chart(neg(p3)),
            chart(closed_form_image(&p3, &p2)?),
            ProjectivePoint::ORIGIN,
        ],
    })
}

/// Chart coordinates of `T_a⁻¹(b)` for chart points `a`, `b`.
fn closed_form_image(a: &ModelPoint, b: &ModelPoint) -> Result<ModelPoint> {
    let den = -a.x * b.x + a.y * b.y + a.z * b.z - 1.0;
    if den == 0.0 {
        return Err(GeometryError::ChartUndefined);
    }
    Ok(ModelPoint::new(
        (a.x - b.x - a.y * b.z + b.y * a.z) / den,
        (-a.x * b.z + b.x * a.z + a.y - b.y) / den,
        (a.x * b.y - b.x * a.y + a.z - b.z) / den,
    ))
}

/// Chart coordinates of `p` and `q` are negatives of each other.
pub fn antipodal_check(p: &ProjectivePoint, q: &ProjectivePoint) -> Result<bool> {
    antipodal_check_with(p, q, EPS)
}

pub fn antipodal_check_with(p: &ProjectivePoint, q: &ProjectivePoint, tol: f64) -> Result<bool> {
    let (p, q) = (p.to_chart()?, q.to_chart()?);
    Ok((p.to_vector() + q.to_vector()).amax() <= tol)
}

fn neighbours(i: usize) -> [usize; 2] {
    match i {
        0 => [1, 2],
        1 => [0, 2],
        _ => [0, 1],
    }
}

fn report_with<F>(t: &Triangle, kind: CurveKind, connect: F) -> Result<TriangleReport>
where
    F: Fn(&ModelPoint) -> Result<(Direction, f64)>,
{
    let mut omega = [0.0; 3];
    let mut views = Vec::with_capacity(3);
    for i in 0..3 {
        let images = translated_vertices_by_matrix(t, i).map_err(|e| e.at_vertex(i))?;
        let nb = neighbours(i);
        let mut directions = Vec::with_capacity(2);
        let mut lengths = [0.0; 2];
        for (k, j) in nb.iter().enumerate() {
            let target = images[*j].to_chart().map_err(|e| e.at_vertex(i))?;
            let (dir, len) = connect(&target).map_err(|e| e.at_vertex(i))?;
            directions.push(dir);
            lengths[k] = len;
        }
        omega[i] = euclidean_angle(&directions[0].unit_vector(), &directions[1].unit_vector())
            .map_err(|e| e.at_vertex(i))?;
        views.push(VertexView {
            vertex: i,
            neighbours: nb,
            directions: [directions[0], directions[1]],
            lengths,
        });
    }
    // side k is opposite vertex k; read it from the lower-indexed endpoint
    let side_lengths = [views[1].lengths[1], views[0].lengths[1], views[0].lengths[0]];
    Ok(TriangleReport {
        omega,
        angle_sum: omega[0] + omega[1] + omega[2],
        side_lengths,
        kind,
        classification: Some(classify(t)?),
        views: [views[0], views[1], views[2]],
    })
}

/// Interior angles of the geodesic triangle.
pub fn geodesic_triangle_report(t: &Triangle) -> Result<TriangleReport> {
    report_with(t, CurveKind::Geodesic, |target| {
        let sol = solve_geodesic_to(target)?;
        Ok((sol.arc.dir, sol.arc.s))
    })
}

/// Interior angles of the translation triangle. Collinear triangles are
/// rejected.
pub fn translation_triangle_report(t: &Triangle) -> Result<TriangleReport> {
    plane_normal(t)?;
    report_with(t, CurveKind::Translation, |target| {
        let arc = translation_arc_to(target)?;
        Ok((arc.dir, arc.s))
    })
}

/// Normal `(y²z³ - y³z², x³z² - x²z³, x²y³ - x³y²)` of the Euclidean plane
/// through the vertices, after `A1` has been moved to the origin.
pub fn plane_normal(t: &Triangle) -> Result<PlaneNormal> {
    let t = t.moved_to_origin()?;
    let [_, p2, p3] = t.chart_points()?;
    let (a, b) = (p2.to_vector(), p3.to_vector());
    let v = a.cross(&b);
    if v.norm() <= 1e-12 * a.norm() * b.norm() {
        return Err(GeometryError::DegenerateTriangle(
            "vertices are collinear in the chart".into(),
        ));
    }
    Ok(PlaneNormal {
        v1: v[0],
        v2: v[1],
        v3: v[2],
    })
}

/// Light-like normal: `|-v1² + v2² + v3²| ≤ EPS·|v|²`.
pub fn is_lightlike(v: &PlaneNormal) -> bool {
    is_lightlike_with(v, EPS)
}

pub fn is_lightlike_with(v: &PlaneNormal, tol: f64) -> bool {
    v.minkowski_square().abs() <= tol * v.to_vector().norm_squared()
}

/// Unit-sphere projections of the translated vertices of a translation
/// triangle. The arc lengths add up to the interior angle sum.
pub fn spherical_projection_arcs(t: &Triangle) -> Result<SphericalArcs> {
    plane_normal(t)?;
    let t = t.moved_to_origin()?;
    let from2 = translated_vertices(&t, 1)?;
    let from3 = translated_vertices(&t, 2)?;
    let unit = |p: &ProjectivePoint| -> Result<Vector3<f64>> {
        let v = p.to_chart()?.to_vector();
        let n = v.norm();
        if n == 0.0 {
            return Err(GeometryError::DegenerateTriangle(
                "translated vertex at the origin".into(),
            ));
        }
        Ok(v / n)
    };
    let p32 = unit(&from2[2])?;
    let p12 = unit(&from2[0])?;
    let p13 = unit(&from3[0])?;
    let p23 = unit(&from3[1])?;
    Ok(SphericalArcs {
        arcs: [
            euclidean_angle(&p32, &p12)?,
            euclidean_angle(&p12, &p13)?,
            euclidean_angle(&p13, &p23)?,
        ],
        start: [p32[0], p32[1], p32[2]],
        end: [p23[0], p23[1], p23[2]],
    })
}

/// Fibre-like when a side lies on a fibre line, hyperbolic-like when all
/// vertices lie in the base plane `x = 0`. The test runs on the congruent
/// triangle with `A1` at the origin.
pub fn classify(t: &Triangle) -> Result<Classification> {
    let t = t.moved_to_origin()?;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let image = translated_vertices_by_matrix(&t, i)?[j].to_chart()?;
        if image.y.abs() <= EPS && image.z.abs() <= EPS {
            return Ok(Classification::FibreLike);
        }
    }
    let pts = t.chart_points()?;
    if pts.iter().all(|p| p.x.abs() <= EPS) {
        return Ok(Classification::HyperbolicLike);
    }
    Ok(Classification::General)
}

/// Searches the Euclidean segment from `a3_h` (t = 0) to `a3_f` (t = 1) for a
/// third vertex making the geodesic triangle `E0, a2, a3(t)` have angle sum
/// `π`. The endpoint sums must lie on opposite sides of `π`.
pub fn find_pi_sum_triangle(
    a2: &ProjectivePoint,
    a3_h: &ProjectivePoint,
    a3_f: &ProjectivePoint,
    tol: f64,
) -> Result<(f64, Triangle)> {
    if !(tol > 0.0) {
        return Err(GeometryError::InvalidArgument(format!("tolerance {tol}")));
    }
    let (h, f) = (a3_h.to_chart()?.to_vector(), a3_f.to_chart()?.to_vector());
    let a2 = a2.to_chart()?;
    let triangle_at = |t: f64| Triangle::at_origin(a2, ModelPoint::from_vector(h * (1.0 - t) + f * t));
    let excess = |t: f64| -> Result<f64> {
        Ok(geodesic_triangle_report(&triangle_at(t)?)?.angle_sum - PI)
    };

    let (mut lo, mut hi) = (0.0, 1.0);
    let e_lo = excess(lo)?;
    let e_hi = excess(hi)?;
    for (t, e) in [(lo, e_lo), (hi, e_hi)] {
        if e.abs() <= tol {
            return Ok((t, triangle_at(t)?));
        }
    }
    if e_lo.signum() == e_hi.signum() {
        return Err(GeometryError::Precondition(format!(
            "angle sums at the segment ends ({:.6}, {:.6}) do not straddle pi",
            e_lo + PI,
            e_hi + PI
        )));
    }
    let mut best = f64::INFINITY;
    for _ in 0..PI_SEARCH_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let e = excess(mid)?;
        best = best.min(e.abs());
        if e.abs() <= tol {
            return Ok((mid, triangle_at(mid)?));
        }
        if e.signum() == e_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(GeometryError::SolverFailure {
        iterations: PI_SEARCH_MAX_ITER,
        residual: best,
    })
}
