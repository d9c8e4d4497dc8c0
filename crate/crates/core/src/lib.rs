//! Minimal 360-degree camera placement covering the walls of a 2D floorplan
//! under occlusion, range and incidence-angle limits.

pub mod error;
pub mod geometry;
mod local_search;
pub mod planner;
pub mod sampling;
pub mod solver;
pub mod synth;
pub mod visibility;

pub use error::{ConfigError, GeometryError, MatrixError, PlanError, SamplingError, SolverError};
pub use geometry::{
    point_in_floorplan, sees, visibility_polygon, Floorplan, FloorplanWarning, Location, Point2,
    Segment, VisibilityPolygon,
};
pub use planner::{
    plan, PlanReport, PlanRequest, PlanRequestDoc, SolutionDoc, SolverChoice, VerifyReport,
};
pub use sampling::{BoundaryPoint, CandidateSite, SamplingConfig};
pub use solver::{solve_bruteforce, solve_exact, solve_greedy, verify_cover, CoverInstance, Solution, SolveStatus};
pub use visibility::{build_matrix, Constraints, VisibilityMatrix};
