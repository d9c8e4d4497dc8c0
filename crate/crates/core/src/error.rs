use thiserror::Error;

use crate::geometry::{Point2, RingId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid geometry: ring has {0} vertices, need at least 3")]
    TooFewVertices(usize),
    #[error("invalid geometry: non-finite coordinate")]
    NonFinite,
    #[error("invalid geometry: zero-length segment at {0}")]
    DegenerateSegment(Point2),
    #[error("{0} self-intersects")]
    SelfIntersection(RingId),
    #[error("{0} has zero area")]
    ZeroArea(RingId),
    #[error("hole not contained: hole {0}")]
    HoleNotContained(usize),
    #[error("holes {0} and {1} overlap")]
    HolesOverlap(usize, usize),
    #[error("viewpoint outside floorplan: {0}")]
    ViewpointOutside(Point2),
    #[error("visibility sweep degenerated at {0}")]
    DegenerateSweep(Point2),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("vertical field of view must lie strictly between 0 and 180 degrees, got {0}")]
    FovOutOfRange(f64),
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("{name} must be non-negative and finite, got {value}")]
    Negative { name: &'static str, value: f64 },
    #[error("minimum range {d_min} must be below maximum range {d_max}")]
    RangeInverted { d_min: f64, d_max: f64 },
    #[error("maximum angle must lie in (0, 90] degrees, got {0}")]
    AngleOutOfRange(f64),
    #[error("time budget must be positive, got {0}")]
    TimeBudget(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplingError {
    #[error("infeasible sampling: no grid point has clearance >= {d_min} m (grid spacing {grid_spacing} m)")]
    Infeasible { grid_spacing: f64, d_min: f64 },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("candidate {candidate}: {source}")]
pub struct MatrixError {
    pub candidate: usize,
    #[source]
    pub source: GeometryError,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("infeasible: {0} boundary points but no candidate sites")]
    NoCandidates(usize),
    #[error("brute force refuses {n} candidates (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
    #[error("unsupported document version {0} (expected 1)")]
    Version(u32),
    #[error("unsupported units {0:?} (expected \"meters\")")]
    Units(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error("visibility failed: {0}")]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("cover check failed: solver claims {claimed} missed points, recount gives {actual}")]
    CoverMismatch { claimed: usize, actual: usize },
    #[error("placement {index} at {point} is outside the floorplan")]
    PlacementOutside { index: usize, point: Point2 },
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
}
