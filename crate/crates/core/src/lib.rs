//! Computational geometry for the projective (hyperboloid) model of the
//! universal cover of `SL(2,R)`, one of the eight Thurston geometries.
//!
//! Points live inside the one-sheeted hyperboloid
//! `-x0² - x1² + x2² + x3² < 0` of projective 3-space. On top of the model
//! this crate provides
//!
//! * chart conversions and the invariant quadratic form ([`model_core`]),
//! * the translation group and fibre translations ([`isometries`]),
//! * the Riemannian metric in polar and inhomogeneous coordinates ([`metric`]),
//! * closed-form geodesics, the geodesic ODE and the geodesic boundary value
//!   problem ([`geodesics`]),
//! * translation curves and translation distance ([`translation_curves`]),
//! * interior angle sums of geodesic and translation triangles ([`triangles`]),
//! * table reproduction and property sweeps behind the `sl2r` binary
//!   ([`cli_report`]).

pub mod cli_report;
pub mod error;
pub mod geodesics;
pub mod isometries;
pub mod metric;
pub mod model_core;
pub mod ode;
pub(crate) mod profile;
pub mod roots;
pub mod translation_curves;
pub mod triangles;

pub use error::GeometryError;
pub use model_core::{HyperboloidCoords, ModelPoint, ProjectivePoint, Sl2Matrix, EPS};

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
