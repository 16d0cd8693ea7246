//! Geodesics issued from the origin.
//!
//! A unit-speed geodesic from `E0` is fixed by its initial direction, given in
//! geographic coordinates: longitude `λ` and altitude `α`. With
//! `κ = cos 2α` the closed form reads
//!
//! ```text
//! r(s)  = arsinh( cos α · S(s, κ) )
//! θ(s)  = -arctan( sin α · S(s, κ) / C(s, κ) )
//! φ(s)  = 2 s sin α + θ(s)
//! ```
//!
//! where `S = sinh(s√κ)/√κ`, `C = cosh(s√κ)` for `κ > 0` (H²-like),
//! `S = sin(s√-κ)/√-κ`, `C = cos(s√-κ)` for `κ < 0` (fibre-like) and the
//! common limit `S = s`, `C = 1` at `κ = 0` (light-like). In the fibre-like
//! regime `θ` is continued through the poles of the tangent.
//!
//! The longitude only rotates the base-plane angle. Negative altitudes are
//! handled by the symmetry `(r, θ, φ)(s, -α) = (r, -θ, -φ)(s, α)`.
//!
//! The boundary value problem (find the geodesic from `E0` to a chart point)
//! is reduced to one unknown: for a given `α` the arc length is fixed by the
//! target radius `r`, and `α` is then the root of the fibre-coordinate
//! mismatch. The longitude follows from the base-plane angle.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{SVector, Vector3};
use serde::Serialize;

use crate::isometries::{apply, translation_from};
use crate::metric::TangentVector;
use crate::model_core::{inhomogeneous_to_hyperboloid, wrap_angle};
use crate::model_core::{HyperboloidCoords, ModelPoint};
use crate::ode;
use crate::profile::{cos_profile, inverse_sinc_profile, sinc_profile, tan_profile};
use crate::roots::{find_root, RootOptions};
use crate::{GeometryError, Result};

/// Width of the band `|cos 2α| < LIGHTLIKE_BAND` classified as light-like.
pub const LIGHTLIKE_BAND: f64 = 1e-12;

/// Arc length at which the ODE integration is seeded from the closed form.
pub const ODE_SEED_S: f64 = 1e-4;

/// Default ODE step.
pub const ODE_STEP: f64 = 1e-4;

/// Chart residual accepted by [`solve_geodesic_to`], relative to `1 + |target|`.
pub const BVP_RESIDUAL_TOL: f64 = 1e-10;

/// Number of sub-brackets scanned in `α` when looking for all BVP roots.
const ALPHA_SCAN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    H2Like,
    LightLike,
    FibreLike,
}

impl Regime {
    pub fn of_altitude(alpha: f64) -> Regime {
        let kappa = (2.0 * alpha).cos();
        if kappa.abs() < LIGHTLIKE_BAND {
            Regime::LightLike
        } else if kappa > 0.0 {
            Regime::H2Like
        } else {
            Regime::FibreLike
        }
    }
}

/// Initial direction of a curve at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Direction {
    lambda: f64,
    alpha: f64,
    regime: Regime,
}

impl Direction {
    /// `alpha` must lie in `[-π/2, π/2]`; `lambda` is reduced to `(-π, π]`.
    pub fn new(lambda: f64, alpha: f64) -> Result<Self> {
        if !(lambda.is_finite() && (-FRAC_PI_2..=FRAC_PI_2).contains(&alpha)) {
            return Err(GeometryError::InvalidArgument(format!(
                "direction (lambda={lambda}, alpha={alpha}) out of range"
            )));
        }
        Ok(Direction {
            lambda: wrap_angle(lambda),
            alpha,
            regime: Regime::of_altitude(alpha),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Euclidean unit vector `(sin α, cos α cos λ, cos α sin λ)`.
    pub fn unit_vector(&self) -> Vector3<f64> {
        let (sa, ca) = self.alpha.sin_cos();
        let (sl, cl) = self.lambda.sin_cos();
        Vector3::new(sa, ca * cl, ca * sl)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicArc {
    pub dir: Direction,
    pub s: f64,
}

/// Result of the boundary value problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeodesicSolution {
    pub arc: GeodesicArc,
    /// Euclidean chart distance between the arc end point and the target.
    pub residual: f64,
}

/// Polar coordinates `(r, θ, φ)` along the geodesic of altitude `alpha`
/// (longitude 0) at arc length `s ≥ 0`.
pub fn geodesic_polar(s: f64, alpha: f64) -> HyperboloidCoords {
    let sg = if alpha < 0.0 { -1.0 } else { 1.0 };
    let a = alpha.abs();
    let (sa, ca) = a.sin_cos();
    let kappa = (2.0 * a).cos();

    let r = (ca * sinc_profile(s, kappa)).asinh();
    let turn = if kappa < 0.0 && (-kappa * s * s) >= 1e-4 {
        // continuous branch of arctan(sin α tan(u)/k) through the poles of tan
        let k = (-kappa).sqrt();
        let u = s * k;
        let psi = (sa * u.sin()).atan2(k * u.cos());
        psi + 2.0 * PI * ((u - psi) / (2.0 * PI)).round()
    } else {
        (sa * tan_profile(s, kappa)).atan()
    };
    HyperboloidCoords {
        r,
        theta: -sg * turn,
        phi: sg * (2.0 * s * sa - turn),
    }
}

/// Velocity `(ṙ, θ̇, φ̇)` of [`geodesic_polar`] with respect to `s`.
pub fn geodesic_polar_velocity(s: f64, alpha: f64) -> (f64, f64, f64) {
    let sg = if alpha < 0.0 { -1.0 } else { 1.0 };
    let a = alpha.abs();
    let (sa, ca) = a.sin_cos();
    let kappa = (2.0 * a).cos();
    let sn = sinc_profile(s, kappa);
    let cs = cos_profile(s, kappa);
    let dr = ca * cs / (1.0 + ca * ca * sn * sn).sqrt();
    let dturn = sa / (cs * cs + sa * sa * sn * sn);
    (dr, -sg * dturn, sg * (2.0 * sa - dturn))
}

fn chart_of_polar(h: &HyperboloidCoords, lambda: f64) -> Result<ModelPoint> {
    if h.phi.abs() >= FRAC_PI_2 {
        return Err(GeometryError::ChartOverflow { phi: h.phi });
    }
    let rho = h.r.tanh() / h.phi.cos();
    let (sd, cd) = (h.theta - h.phi + lambda).sin_cos();
    Ok(ModelPoint::new(h.phi.tan(), rho * cd, rho * sd))
}

/// Chart point at arc length `s` along the geodesic with direction `dir`.
pub fn geodesic_point(s: f64, dir: &Direction) -> Result<ModelPoint> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(GeometryError::InvalidArgument(format!("arc length {s}")));
    }
    chart_of_polar(&geodesic_polar(s, dir.alpha), dir.lambda)
}

/// Unit tangent of the geodesic at the origin, in the inhomogeneous chart.
pub fn geodesic_tangent_at_origin(dir: &Direction) -> TangentVector {
    let v = dir.unit_vector();
    TangentVector::inhomogeneous(v[0], v[1], v[2])
}

/// Right-hand side of the geodesic equations in `(r, θ, φ)`, state
/// `[r, θ, φ, ṙ, θ̇, φ̇]`.
pub fn geodesic_rhs(y: &SVector<f64, 6>) -> SVector<f64, 6> {
    let (r, dr, dth, dph) = (y[0], y[3], y[4], y[5]);
    let (s2, c2) = ((2.0 * r).sinh(), (2.0 * r).cosh());
    let ddr = s2 * dth * dph + 0.5 * ((4.0 * r).sinh() - s2) * dth * dth;
    let ddth = -2.0 * dr / s2 * ((3.0 * c2 - 1.0) * dth + 2.0 * dph);
    let ddph = 2.0 * dr * r.tanh() * (2.0 * r.sinh().powi(2) * dth + dph);
    SVector::from([dr, dth, dph, ddr, ddth, ddph])
}

/// Samples of a numerically integrated geodesic.
#[derive(Debug, Clone)]
pub struct GeodesicPath {
    pub samples: Vec<(f64, HyperboloidCoords)>,
}

impl GeodesicPath {
    pub fn last(&self) -> (f64, HyperboloidCoords) {
        *self.samples.last().expect("path has at least the seed sample")
    }
}

/// Integrates the geodesic equations with the classical fixed-step RK4
/// scheme. The equations are singular at `r = 0`, so integration starts at
/// `s = ODE_SEED_S` from the closed-form state.
pub fn integrate_geodesic(dir: &Direction, s_end: f64, h: f64) -> Result<GeodesicPath> {
    if !(s_end > ODE_SEED_S) {
        return Err(GeometryError::Precondition(format!(
            "integration end {s_end} must exceed the seed arc length {ODE_SEED_S}"
        )));
    }
    if !(h > 0.0) {
        return Err(GeometryError::InvalidArgument(format!("step {h}")));
    }
    let seed = geodesic_polar(ODE_SEED_S, dir.alpha);
    if dir.alpha.abs() == FRAC_PI_2 || seed.r == 0.0 {
        return Err(GeometryError::Precondition(
            "geodesic along the fibre axis stays on the r = 0 singularity".into(),
        ));
    }
    let (dr, dth, dph) = geodesic_polar_velocity(ODE_SEED_S, dir.alpha);
    let y0 = SVector::from([seed.r, seed.theta + dir.lambda, seed.phi, dr, dth, dph]);
    let path = ode::integrate(|_, y| geodesic_rhs(y), ODE_SEED_S, y0, s_end, h);
    Ok(GeodesicPath {
        samples: path
            .into_iter()
            .map(|(s, y)| {
                (
                    s,
                    HyperboloidCoords {
                        r: y[0],
                        theta: y[1],
                        phi: y[2],
                    },
                )
            })
            .collect(),
    })
}

/// Arc length at which the geodesic of altitude `a ≥ 0` first reaches radius
/// `r_t`; `None` when it never does.
fn arc_for_radius(r_t: f64, a: f64) -> Option<f64> {
    let kappa = (2.0 * a).cos();
    let v = r_t.sinh() / a.cos();
    inverse_sinc_profile(v, kappa).or_else(|| {
        // tolerate rounding at the top of the periodic profile
        let k = (-kappa).sqrt();
        (v * k <= 1.0 + 1e-12).then(|| FRAC_PI_2 / k)
    })
}

/// Finds the geodesic from the origin to `target`, choosing the shortest one
/// when several exist.
pub fn solve_geodesic_to(target: &ModelPoint) -> Result<GeodesicSolution> {
    let h = inhomogeneous_to_hyperboloid(target)?;
    if target.to_vector().norm() == 0.0 {
        return Err(GeometryError::InvalidArgument(
            "target coincides with the origin".into(),
        ));
    }
    let sg = if h.phi < 0.0 { -1.0 } else { 1.0 };
    let phi_t = h.phi.abs();

    let (s, alpha_abs) = if h.r == 0.0 {
        // on the fibre axis: straight up the fibre
        (phi_t, FRAC_PI_2)
    } else {
        solve_reduced(h.r, phi_t)?
    };

    let alpha = sg * alpha_abs;
    let polar = geodesic_polar(s, alpha);
    let lambda = if h.r == 0.0 { 0.0 } else { h.theta - polar.theta };
    let dir = Direction::new(lambda, alpha)?;
    let end = geodesic_point(s, &dir)?;
    let residual = end.distance_to(target);
    if residual > BVP_RESIDUAL_TOL * (1.0 + target.to_vector().norm()) {
        return Err(GeometryError::SolverFailure {
            iterations: RootOptions::default().max_iter,
            residual,
        });
    }
    Ok(GeodesicSolution {
        arc: GeodesicArc { dir, s },
        residual,
    })
}

/// Solves `r(s, α) = r_t`, `φ(s, α) = φ_t` for `α ∈ [0, π/2]`, `φ_t ≥ 0`.
fn solve_reduced(r_t: f64, phi_t: f64) -> Result<(f64, f64)> {
    let mismatch = |a: f64| match arc_for_radius(r_t, a) {
        Some(s) => geodesic_polar(s, a).phi - phi_t,
        None => f64::INFINITY,
    };

    // Largest altitude whose geodesic still reaches radius r_t.
    let mut a_max = (r_t.sinh() / (2.0 * r_t).cosh().sqrt()).min(1.0).acos();
    while a_max > 0.0 && arc_for_radius(r_t, a_max).is_none() {
        a_max = a_max.next_down();
    }

    let grid: Vec<f64> = (0..=ALPHA_SCAN)
        .map(|i| a_max * i as f64 / ALPHA_SCAN as f64)
        .collect();
    let values: Vec<f64> = grid.iter().map(|a| mismatch(*a)).collect();

    let opts = RootOptions::default();
    let mut best: Option<(f64, f64)> = None;
    let mut last_err = None;
    for i in 0..ALPHA_SCAN {
        let (f0, f1) = (values[i], values[i + 1]);
        let bracketed = f0 == 0.0 || (f0.signum() != f1.signum() && f1 != 0.0);
        if !bracketed {
            continue;
        }
        match find_root(mismatch, grid[i], grid[i + 1], opts) {
            Ok(a) => {
                if let Some(s) = arc_for_radius(r_t, a) {
                    if best.is_none_or(|(bs, _)| s < bs) {
                        best = Some((s, a));
                    }
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    if values[ALPHA_SCAN] == 0.0 {
        if let Some(s) = arc_for_radius(r_t, a_max) {
            if best.is_none_or(|(bs, _)| s < bs) {
                best = Some((s, a_max));
            }
        }
    }
    best.ok_or_else(|| {
        last_err.unwrap_or(GeometryError::SolverFailure {
            iterations: ALPHA_SCAN,
            residual: values.iter().fold(f64::INFINITY, |m, v| m.min(v.abs())),
        })
    })
}

/// Geodesic distance: the arc length of the (shortest) geodesic from `p` to
/// `q`, computed after translating `p` to the origin.
pub fn geodesic_distance(p: &ModelPoint, q: &ModelPoint) -> Result<f64> {
    Ok(connect(p, q)?.map_or(0.0, |sol| sol.arc.s))
}

/// Geodesic leaving `p` towards `q`, expressed at the origin after the
/// translation `T_p⁻¹`. `None` when the points coincide.
pub fn connect(p: &ModelPoint, q: &ModelPoint) -> Result<Option<GeodesicSolution>> {
    for m in [p, q] {
        if !m.is_interior() {
            return Err(GeometryError::NotInterior {
                form: m.quadratic_form(),
            });
        }
    }
    let image = apply(&translation_from(&p.to_projective())?, &q.to_projective())?.to_chart()?;
    if image.to_vector().norm() == 0.0 {
        return Ok(None);
    }
    solve_geodesic_to(&image).map(Some)
}
