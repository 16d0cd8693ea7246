use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("all homogeneous coordinates are zero")]
    ZeroPoint,

    #[error("point has x0 = 0 and no inhomogeneous chart coordinates")]
    ChartUndefined,

    #[error("point is not interior to the hyperboloid (quadratic form = {form})")]
    NotInterior { form: f64 },

    #[error("matrix determinant {det} is not positive")]
    NonPositiveDeterminant { det: f64 },

    #[error("determinant {det} differs from 1")]
    NotUnimodular { det: f64 },

    #[error("map sends the point to the zero vector")]
    SingularMap,

    #[error("fibre coordinate {phi} leaves the principal chart |phi| < pi/2")]
    ChartOverflow { phi: f64 },

    #[error("tangent vector has zero length")]
    ZeroVector,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solver did not converge after {iterations} iterations (best residual {residual:e})")]
    SolverFailure { iterations: usize, residual: f64 },

    #[error("vertex A{vertex}: {source}")]
    Vertex {
        vertex: usize,
        #[source]
        source: Box<GeometryError>,
    },

    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl GeometryError {
    /// Wraps the error with the 1-based label of the 0-based vertex `index`.
    pub(crate) fn at_vertex(self, index: usize) -> Self {
        GeometryError::Vertex {
            vertex: index + 1,
            source: Box::new(self),
        }
    }

    /// True when the error (possibly wrapped in a vertex annotation) stems
    /// from a numerical solver rather than from bad input.
    pub fn is_solver_failure(&self) -> bool {
        match self {
            GeometryError::SolverFailure { .. } => true,
            GeometryError::Vertex { source, .. } => source.is_solver_failure(),
            _ => false,
        }
    }
}
