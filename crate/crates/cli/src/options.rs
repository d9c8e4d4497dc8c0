use clap::{Args, ValueEnum};
use panoplan::planner::SolverChoice;
use panoplan::{Constraints, SamplingConfig};

/// Sampling and camera flags shared by `plan` and `verify`.
#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// Spacing of boundary points along each wall, in meters.
    #[arg(long, default_value_t = SamplingConfig::default().boundary_spacing)]
    pub boundary_spacing: f64,
    /// Spacing of the candidate grid, in meters.
    #[arg(long, default_value_t = SamplingConfig::default().grid_spacing)]
    pub grid_spacing: f64,
    /// Minimum camera-to-wall distance (e.g. tripod footprint), in meters.
    #[arg(long, default_value_t = 0.0)]
    pub min_range: f64,
    /// Maximum camera-to-wall distance in meters; unbounded if absent.
    #[arg(long)]
    pub max_range: Option<f64>,
    /// Maximum angle between wall normal and camera direction, in degrees;
    /// unbounded if absent.
    #[arg(long)]
    pub max_angle_deg: Option<f64>,
    /// Vertical field of view of the camera, in degrees.
    #[arg(long, default_value_t = SamplingConfig::default().fov_y)]
    pub fov_y_deg: f64,
    /// Camera lens height above the floor, in meters.
    #[arg(long, default_value_t = SamplingConfig::default().camera_height_to_floor)]
    pub camera_height_floor: f64,
    /// Distance from the lens up to the ceiling, in meters.
    #[arg(long, default_value_t = SamplingConfig::default().camera_height_to_ceiling)]
    pub camera_height_ceiling: f64,
}

impl SamplingArgs {
    pub fn sampling(&self) -> SamplingConfig {
        SamplingConfig {
            boundary_spacing: self.boundary_spacing,
            grid_spacing: self.grid_spacing,
            d_min: self.min_range,
            fov_y: self.fov_y_deg,
            camera_height_to_floor: self.camera_height_floor,
            camera_height_to_ceiling: self.camera_height_ceiling,
        }
    }

    pub fn constraints(&self) -> Constraints {
        Constraints {
            d_min: 0.0,
            d_max: self.max_range,
            theta_max: self.max_angle_deg,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Greedy,
    Exact,
}

impl From<SolverArg> for SolverChoice {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Greedy => SolverChoice::Greedy,
            SolverArg::Exact => SolverChoice::Exact,
        }
    }
}
