//! Discretization of a floorplan into wall targets and candidate camera sites.

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, SamplingError};
use crate::geometry::{point_in_floorplan, Floorplan, Location, Point2, EPS_GEOM};

/// A coverage target on a wall.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub index: usize,
    pub position: Point2,
    /// Unit normal pointing into the floorplan interior.
    pub normal: Point2,
    pub wall_id: usize,
}

/// An interior grid point where a camera may be placed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidateSite {
    pub index: usize,
    pub position: Point2,
    /// Distance to the nearest wall.
    pub clearance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplingConfig {
    pub boundary_spacing: f64,
    pub grid_spacing: f64,
    /// User clearance (e.g. tripod footprint).
    pub d_min: f64,
    #[serde(rename = "fov_y_deg")]
    pub fov_y: f64,
    #[serde(rename = "h_floor")]
    pub camera_height_to_floor: f64,
    #[serde(rename = "h_ceiling")]
    pub camera_height_to_ceiling: f64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        Self {
            boundary_spacing: 0.25,
            grid_spacing: 0.25,
            d_min: 0.0,
            fov_y: 150.0,
            camera_height_to_floor: 1.5,
            camera_height_to_ceiling: 1.3,
        }
    }
}

fn positive(name: &'static str, value: f64) -> Result<(), ConfigError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ConfigError::NonPositive { name, value })
    }
}

fn non_negative(name: &'static str, value: f64) -> Result<(), ConfigError> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(ConfigError::Negative { name, value })
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        positive("boundary_spacing", self.boundary_spacing)?;
        positive("grid_spacing", self.grid_spacing)?;
        non_negative("d_min", self.d_min)?;
        non_negative("h_floor", self.camera_height_to_floor)?;
        non_negative("h_ceiling", self.camera_height_to_ceiling)?;
        check_fov(self.fov_y)
    }
}

fn check_fov(fov_y: f64) -> Result<(), ConfigError> {
    if fov_y.is_finite() && fov_y > 0.0 && fov_y < 180.0 {
        Ok(())
    } else {
        Err(ConfigError::FovOutOfRange(fov_y))
    }
}

/// Closest distance to a wall at which a camera with vertical field of view
/// `fov_y` (degrees) still sees a whole floor-to-ceiling line:
/// `cot(fov_y / 2) * max(h_floor, h_ceiling)`.
pub fn standoff_from_fov(fov_y: f64, h_floor: f64, h_ceiling: f64) -> Result<f64, ConfigError> {
    check_fov(fov_y)?;
    non_negative("h_floor", h_floor)?;
    non_negative("h_ceiling", h_ceiling)?;
    let half = (0.5 * fov_y).to_radians();
    Ok(half.cos() / half.sin() * h_floor.max(h_ceiling))
}

/// The binding camera-to-wall lower bound: the larger of the field-of-view
/// standoff and the user clearance.
pub fn effective_d_min(config: &SamplingConfig) -> Result<f64, ConfigError> {
    config.validate()?;
    let fov = standoff_from_fov(
        config.fov_y,
        config.camera_height_to_floor,
        config.camera_height_to_ceiling,
    )?;
    Ok(fov.max(config.d_min))
}

/// Places `max(1, round(L / spacing))` points at the centers of equal
/// sub-intervals of every wall, walls in floorplan order.
pub fn sample_boundary(f: &Floorplan, spacing: f64) -> Result<Vec<BoundaryPoint>, ConfigError> {
    positive("boundary_spacing", spacing)?;
    let mut out = Vec::new();
    for (wall_id, wall) in f.walls().iter().enumerate() {
        let n = ((wall.length() / spacing).round() as usize).max(1);
        let normal = wall.left_normal();
        for k in 0..n {
            let t = (k as f64 + 0.5) / n as f64;
            out.push(BoundaryPoint {
                index: out.len(),
                position: wall.point_at(t),
                normal,
                wall_id,
            });
        }
    }
    Ok(out)
}

/// Grid anchored at the bounding-box minimum corner, scanned row by row
/// (y outer, x inner). A grid point is kept iff it is strictly inside and its
/// clearance is at least `d_min`.
pub fn sample_interior(
    f: &Floorplan,
    grid_spacing: f64,
    d_min: f64,
) -> Result<Vec<CandidateSite>, SamplingError> {
    positive("grid_spacing", grid_spacing)?;
    non_negative("d_min", d_min)?;
    let (min, max) = f.bounding_box();
    let nx = ((max.x - min.x) / grid_spacing + 1e-9).floor() as usize;
    let ny = ((max.y - min.y) / grid_spacing + 1e-9).floor() as usize;

    let mut out = Vec::new();
    for j in 0..=ny {
        let y = min.y + j as f64 * grid_spacing;
        for i in 0..=nx {
            let p = Point2::new(min.x + i as f64 * grid_spacing, y);
            let clearance = f.clearance(p);
            if clearance <= EPS_GEOM || clearance < d_min {
                continue;
            }
            if point_in_floorplan(p, f) != Location::Inside {
                continue;
            }
            out.push(CandidateSite {
                index: out.len(),
                position: p,
                clearance,
            });
        }
    }
    if out.is_empty() {
        return Err(SamplingError::Infeasible {
            grid_spacing,
            d_min,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn unit_square() -> Floorplan {
        synth::rectangle(1.0, 1.0)
    }

    #[test]
    fn standoff_examples() {
        let s = standoff_from_fov(150.0, 1.5, 1.3).unwrap();
        // cot(75 deg) * 1.5, evaluated as tan(15 deg) * 1.5.
        let oracle = (15f64).to_radians().tan() * 1.5;
        assert!((s - oracle).abs() < 1e-14);
        assert!((s - 0.40192).abs() < 1e-5);
        assert!((standoff_from_fov(90.0, 1.0, 0.2).unwrap() - 1.0).abs() < 1e-15);
        assert!(standoff_from_fov(180.0 - 1e-9, 2.0, 2.0).unwrap() < 1e-9);
        assert!(matches!(
            standoff_from_fov(180.0, 1.0, 1.0),
            Err(ConfigError::FovOutOfRange(_))
        ));
        assert!(standoff_from_fov(0.0, 1.0, 1.0).is_err());
        assert!(standoff_from_fov(90.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn effective_d_min_examples() {
        let mut cfg = SamplingConfig {
            d_min: 0.61,
            ..SamplingConfig::default()
        };
        assert_eq!(effective_d_min(&cfg).unwrap(), 0.61);
        cfg.d_min = 0.0;
        let fov = standoff_from_fov(150.0, 1.5, 1.3).unwrap();
        assert_eq!(effective_d_min(&cfg).unwrap(), fov);
        cfg.fov_y = 179.999_999_9;
        assert!(effective_d_min(&cfg).unwrap() < 1e-8);
    }

    #[test]
    fn boundary_unit_square() {
        let f = unit_square();
        let pts = sample_boundary(&f, 0.25).unwrap();
        assert_eq!(pts.len(), 16);
        for b in &pts {
            let probe = b.position + b.normal * (10.0 * EPS_GEOM);
            assert_eq!(point_in_floorplan(probe, &f), Location::Inside);
            assert!(f.walls()[b.wall_id].distance_to(b.position) <= EPS_GEOM);
            assert!(f.vertices().all(|v| v.distance(b.position) > 0.1));
        }
        assert_eq!(pts.iter().filter(|b| b.wall_id == 2).count(), 4);
    }

    #[test]
    fn boundary_short_wall_gets_midpoint() {
        let f = unit_square();
        let pts = sample_boundary(&f, 10.0).unwrap();
        assert_eq!(pts.len(), 4);
        assert_eq!(pts[0].position, Point2::new(0.5, 0.0));
        assert!(sample_boundary(&f, 0.0).is_err());
    }

    #[test]
    fn boundary_normals_point_inside_holes_too() {
        let f = synth::square_annulus(10.0, 4.0);
        for b in sample_boundary(&f, 0.7).unwrap() {
            let probe = b.position + b.normal * (10.0 * EPS_GEOM);
            assert_eq!(point_in_floorplan(probe, &f), Location::Inside);
            assert!((b.normal.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn interior_unit_square() {
        let f = unit_square();
        let sites = sample_interior(&f, 0.5, 0.0).unwrap();
        assert_eq!(sites.len(), 1);
        assert_eq!(sites[0].position, Point2::new(0.5, 0.5));
        assert_eq!(sites[0].clearance, 0.5);
        assert!(matches!(
            sample_interior(&f, 0.5, 0.6),
            Err(SamplingError::Infeasible { .. })
        ));
    }

    #[test]
    fn interior_matches_brute_force_clearance() {
        let f = synth::rectangle(10.0, 10.0);
        let sites = sample_interior(&f, 0.25, 0.61).unwrap();
        // Independent count: coordinates k * 0.25 with min distance to the
        // square's sides >= 0.61, i.e. k in 3..=37 on each axis.
        let mut expected = 0;
        for i in 0..=40 {
            for j in 0..=40 {
                let (x, y) = (i as f64 * 0.25, j as f64 * 0.25);
                let d = x.min(10.0 - x).min(y).min(10.0 - y);
                if d >= 0.61 {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 35 * 35);
        assert_eq!(sites.len(), expected);
        assert!(sites.iter().all(|s| s.clearance >= 0.61));
        assert!(sites.iter().enumerate().all(|(i, s)| s.index == i));
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = synth::corridor_loop();
        assert_eq!(sample_boundary(&f, 0.3).unwrap(), sample_boundary(&f, 0.3).unwrap());
        assert_eq!(
            sample_interior(&f, 0.5, 0.61).unwrap(),
            sample_interior(&f, 0.5, 0.61).unwrap()
        );
    }
}
