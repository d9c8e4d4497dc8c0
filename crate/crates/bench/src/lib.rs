//! Fixed benchmark instances.

use panoplan::sampling::{sample_boundary, sample_interior};
use panoplan::synth;
use panoplan::{BoundaryPoint, CandidateSite, Constraints, Floorplan};

/// Sampled corridor loop at the given densities.
pub struct Instance {
    pub floorplan: Floorplan,
    pub boundary: Vec<BoundaryPoint>,
    pub candidates: Vec<CandidateSite>,
    pub constraints: Constraints,
}

/// The full-scale corridor loop with the measured camera limits
/// (5.04 m range, 45 degrees, 0.61 m clearance).
pub fn corridor_constrained(boundary_spacing: f64, grid_spacing: f64) -> Instance {
    let floorplan = synth::corridor_loop();
    let constraints = Constraints {
        d_min: 0.61,
        d_max: Some(5.04),
        theta_max: Some(45.0),
    };
    Instance {
        boundary: sample_boundary(&floorplan, boundary_spacing).unwrap(),
        candidates: sample_interior(&floorplan, grid_spacing, constraints.d_min).unwrap(),
        floorplan,
        constraints,
    }
}
