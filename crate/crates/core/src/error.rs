use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeometryError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid complex dimension {n}: need n >= {min}")]
    InvalidDimension { n: usize, min: usize },

    #[error("operation requires complex dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("frame carries no real structure")]
    NoRealStructure,

    #[error("ambient mismatch: {0}")]
    WrongAmbient(String),

    #[error("vector is not unit length (norm {norm})")]
    NotUnit { norm: f64 },

    #[error("degenerate input: smallest singular value {sigma:e} below {tol:e}")]
    DegenerateInput { sigma: f64, tol: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("radius {r} outside the admissible range {range}")]
    FocalRange { r: f64, range: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("chart is singular at the sample (frame condition number {cond:e})")]
    ChartSingularity { cond: f64 },

    #[error("stencil leaves the chart domain at coordinate {axis}")]
    Boundary { axis: usize },
}
