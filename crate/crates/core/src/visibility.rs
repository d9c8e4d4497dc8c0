//! Constrained boundary-by-candidate coverage relation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, MatrixError};
use crate::geometry::{sees, visibility_polygon, Floorplan, VisibilityPolygon, EPS_GEOM};

use crate::sampling::{BoundaryPoint, CandidateSite};

/// Slack on the incidence-angle bound, in degrees, so that pairs sitting
/// exactly on the bound survive floating-point rounding.
pub const EPS_ANGLE_DEG: f64 = 1e-9;

/// Per-pair coverage limits. `None` means unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Constraints {
    #[serde(default)]
    pub d_min: f64,
    pub d_max: Option<f64>,
    #[serde(rename = "theta_max_deg")]
    pub theta_max: Option<f64>,
}

impl Constraints {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.d_min.is_finite() || self.d_min < 0.0 {
            return Err(ConfigError::Negative {
                name: "d_min",
                value: self.d_min,
            });
        }
        if let Some(d_max) = self.d_max {
            if !(d_max.is_finite() && d_max > 0.0) {
                return Err(ConfigError::NonPositive {
                    name: "d_max",
                    value: d_max,
                });
            }
            if self.d_min >= d_max {
                return Err(ConfigError::RangeInverted {
                    d_min: self.d_min,
                    d_max,
                });
            }
        }
        if let Some(theta) = self.theta_max {
            if !(theta > 0.0 && theta <= 90.0) {
                return Err(ConfigError::AngleOutOfRange(theta));
            }
        }
        Ok(())
    }

    /// Range and incidence tests, all bounds inclusive.
    pub fn admits(&self, b: &BoundaryPoint, c: &CandidateSite) -> bool {
        let to_camera = c.position - b.position;
        let dist = to_camera.norm();
        if dist < self.d_min - EPS_GEOM || self.d_max.is_some_and(|m| dist > m + EPS_GEOM) {
            return false;
        }
        if let Some(theta) = self.theta_max {
            if incidence_angle_deg(b, c) > theta + EPS_ANGLE_DEG {
                return false;
            }
        }
        true
    }
}

/// Angle in degrees between the wall normal at `b` and the direction from `b`
/// to the camera.
pub fn incidence_angle_deg(b: &BoundaryPoint, c: &CandidateSite) -> f64 {
    let v = c.position - b.position;
    b.normal.cross(v).abs().atan2(b.normal.dot(v)).to_degrees()
}

/// True iff the camera at `c` sees `b` and the pair passes the range and
/// incidence-angle limits.
pub fn pair_visible(
    b: &BoundaryPoint,
    c: &CandidateSite,
    vp: &VisibilityPolygon,
    k: &Constraints,
) -> bool {
    k.admits(b, c) && sees(c.position, b.position, vp)
}

/// Sparse coverage relation stored both by boundary point (rows) and by
/// candidate (columns).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VisibilityMatrix {
    n_boundary: usize,
    n_candidates: usize,
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixStats {
    pub n_boundary: usize,
    pub n_candidates: usize,
    pub pair_count: usize,
}

impl VisibilityMatrix {
    /// Builds both views from per-candidate lists of covered boundary indices.
    ///
    /// Panics if an index is out of range.
    pub fn from_columns(n_boundary: usize, mut cols: Vec<Vec<usize>>) -> Self {
        let mut rows = vec![Vec::new(); n_boundary];
        for (c, col) in cols.iter_mut().enumerate() {
            col.sort_unstable();
            col.dedup();
            for &b in col.iter() {
                assert!(b < n_boundary, "boundary index {b} out of range");
                rows[b].push(c);
            }
        }
        Self {
            n_boundary,
            n_candidates: cols.len(),
            rows,
            cols,
        }
    }

    pub fn n_boundary(&self) -> usize {
        self.n_boundary
    }

    pub fn n_candidates(&self) -> usize {
        self.n_candidates
    }

    /// Candidates covering boundary point `b`, ascending.
    pub fn row(&self, b: usize) -> &[usize] {
        &self.rows[b]
    }

    /// Boundary points covered by candidate `c`, ascending.
    pub fn col(&self, c: usize) -> &[usize] {
        &self.cols[c]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn cols(&self) -> &[Vec<usize>] {
        &self.cols
    }

    pub fn contains(&self, b: usize, c: usize) -> bool {
        self.cols[c].binary_search(&b).is_ok()
    }

    pub fn pair_count(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn stats(&self) -> MatrixStats {
        MatrixStats {
            n_boundary: self.n_boundary,
            n_candidates: self.n_candidates,
            pair_count: self.pair_count(),
        }
    }
}

/// Computes one visibility polygon per candidate, in parallel, and keeps the
/// boundary points that pass every test. Output order does not depend on
/// scheduling.
pub fn build_matrix(
    boundary: &[BoundaryPoint],
    candidates: &[CandidateSite],
    f: &Floorplan,
    k: &Constraints,
) -> Result<VisibilityMatrix, MatrixError> {
    let cols = candidates
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let vp = visibility_polygon(c.position, f)
                .map_err(|source| MatrixError { candidate: i, source })?;
            Ok(boundary
                .iter()
                .enumerate()
                .filter(|(_, b)| pair_visible(b, c, &vp, k))
                .map(|(j, _)| j)
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>, MatrixError>>()?;
    Ok(VisibilityMatrix::from_columns(boundary.len(), cols))
}
