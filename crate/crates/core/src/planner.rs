//! End-to-end planning: documents in, validated pipeline, reports out.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::PlanError;
use crate::geometry::{
    point_in_floorplan, visibility_polygon, Floorplan, FloorplanWarning, Location, Point2,
    VisibilityPolygon, EPS_GEOM,
};
use crate::sampling::{effective_d_min, sample_boundary, sample_interior, BoundaryPoint, SamplingConfig};
use crate::solver::{solve_exact, solve_greedy, verify_cover, CoverInstance, Solution, SolveStatus};
use crate::visibility::{build_matrix, pair_visible, Constraints};

pub const DOC_VERSION: u32 = 1;
pub const DEFAULT_TIME_BUDGET_S: f64 = 60.0;

/// Largest angle between consecutive points on a range-clipped arc.
const ARC_STEP: f64 = 3.0 * std::f64::consts::PI / 180.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FloorplanDoc {
    pub version: u32,
    #[serde(default = "meters")]
    pub units: String,
    pub outer: Vec<Point2>,
    #[serde(default)]
    pub holes: Vec<Vec<Point2>>,
}

fn meters() -> String {
    "meters".to_owned()
}

impl FloorplanDoc {
    /// Validates the document into a floorplan, reporting any normalization.
    pub fn to_floorplan(&self) -> Result<(Floorplan, Vec<FloorplanWarning>), PlanError> {
        if self.version != DOC_VERSION {
            return Err(PlanError::Version(self.version));
        }
        if self.units != "meters" {
            return Err(PlanError::Units(self.units.clone()));
        }
        Ok(Floorplan::new(self.outer.clone(), self.holes.clone())?)
    }
}

impl From<&Floorplan> for FloorplanDoc {
    fn from(f: &Floorplan) -> Self {
        Self {
            version: DOC_VERSION,
            units: meters(),
            outer: f.outer().to_vec(),
            holes: f.holes().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverChoice {
    Greedy,
    #[default]
    Exact,
}

/// Wire form of a plan request. Missing sections take their defaults;
/// absent limits are unbounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanRequestDoc {
    pub floorplan: FloorplanDoc,
    #[serde(default)]
    pub sampling: SamplingConfig,
    #[serde(default)]
    pub constraints: Constraints,
    #[serde(default)]
    pub solver: SolverChoice,
    #[serde(default = "default_budget")]
    pub time_budget_s: f64,
}

fn default_budget() -> f64 {
    DEFAULT_TIME_BUDGET_S
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanRequest {
    pub floorplan: Floorplan,
    pub sampling: SamplingConfig,
    pub constraints: Constraints,
    pub solver: SolverChoice,
    pub time_budget: f64,
}

impl PlanRequest {
    pub fn new(floorplan: Floorplan) -> Self {
        Self {
            floorplan,
            sampling: SamplingConfig::default(),
            constraints: Constraints::unbounded(),
            solver: SolverChoice::Exact,
            time_budget: DEFAULT_TIME_BUDGET_S,
        }
    }

    pub fn from_doc(doc: &PlanRequestDoc) -> Result<(Self, Vec<FloorplanWarning>), PlanError> {
        let (floorplan, warnings) = doc.floorplan.to_floorplan()?;
        Ok((
            Self {
                floorplan,
                sampling: doc.sampling,
                constraints: doc.constraints,
                solver: doc.solver,
                time_budget: doc.time_budget_s,
            },
            warnings,
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanStats {
    pub n_boundary: usize,
    pub n_candidates: usize,
    pub pair_count: usize,
    /// Camera-to-wall lower bound actually applied, in meters.
    pub effective_d_min: f64,
    pub matrix_build_time_s: f64,
    pub solve_time_s: f64,
}

/// Visible region of one camera, clipped to its range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageRegion {
    pub candidate: usize,
    pub position: Point2,
    pub ring: Vec<Point2>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanReport {
    pub solution: Solution,
    pub stats: PlanStats,
    /// Positions of the chosen cameras, in `solution.chosen` order.
    pub chosen: Vec<Point2>,
    pub boundary: Vec<BoundaryPoint>,
    pub missed_boundary: Vec<usize>,
    pub coverage_geometry: Vec<CoverageRegion>,
}

/// Runs sampling, visibility, the chosen solver and an independent cover
/// check.
pub fn plan(req: &PlanRequest) -> Result<PlanReport, PlanError> {
    let f = &req.floorplan;
    let k = resolve_constraints(&req.sampling, &req.constraints)?;
    if req.solver == SolverChoice::Exact && !(req.time_budget.is_finite() && req.time_budget > 0.0) {
        return Err(crate::error::ConfigError::TimeBudget(req.time_budget).into());
    }

    let boundary = sample_boundary(f, req.sampling.boundary_spacing)?;
    let candidates = sample_interior(f, req.sampling.grid_spacing, k.d_min)?;

    let start = Instant::now();
    let matrix = build_matrix(&boundary, &candidates, f, &k)?;
    let matrix_build_time_s = start.elapsed().as_secs_f64();
    let stats = matrix.stats();

    let inst = CoverInstance::new(matrix);
    let solution = match req.solver {
        SolverChoice::Greedy => solve_greedy(&inst),
        SolverChoice::Exact => solve_exact(&inst, req.time_budget)?,
    };

    let check = verify_cover(inst.matrix(), &solution.chosen);
    if check.missed != inst.uncoverable() {
        return Err(PlanError::CoverMismatch {
            claimed: inst.uncoverable().len(),
            actual: check.missed.len(),
        });
    }

    let mut coverage_geometry = Vec::with_capacity(solution.chosen.len());
    for &c in &solution.chosen {
        let position = candidates[c].position;
        let vp = visibility_polygon(position, f)?;
        coverage_geometry.push(CoverageRegion {
            candidate: c,
            position,
            ring: clipped_region(&vp, k.d_max),
        });
    }

    Ok(PlanReport {
        chosen: solution.chosen.iter().map(|&c| candidates[c].position).collect(),
        stats: PlanStats {
            n_boundary: stats.n_boundary,
            n_candidates: stats.n_candidates,
            pair_count: stats.pair_count,
            effective_d_min: k.d_min,
            matrix_build_time_s,
            solve_time_s: solution.diagnostics.solve_time_s,
        },
        solution,
        boundary,
        missed_boundary: check.missed,
        coverage_geometry,
    })
}

/// The pair constraints with the lower range bound raised to the sampling's
/// effective minimum distance.
pub fn resolve_constraints(sampling: &SamplingConfig, k: &Constraints) -> Result<Constraints, PlanError> {
    let d_min = effective_d_min(sampling)?.max(k.d_min);
    let k = Constraints { d_min, ..*k };
    k.validate()?;
    Ok(k)
}

/// Star-shaped visible region, cut at `range` with arcs approximated by
/// chords (so the result stays inside the true region).
pub fn clipped_region(vp: &VisibilityPolygon, range: Option<f64>) -> Vec<Point2> {
    let Some(r) = range else {
        return vp.ring();
    };
    let v = vp.viewpoint;
    let mut out: Vec<Point2> = Vec::new();
    let push = |out: &mut Vec<Point2>, p: Point2| {
        if out.last().is_none_or(|q: &Point2| q.distance(p) > EPS_GEOM) {
            out.push(p);
        }
    };
    let arc = |out: &mut Vec<Point2>, from: f64, to: f64| {
        let n = ((to - from) / ARC_STEP).ceil().max(1.0) as usize;
        for i in 0..=n {
            let a = from + (to - from) * i as f64 / n as f64;
            push(out, v + Point2::from_angle(a) * r);
        }
    };

    for t in &vp.fan {
        let a0 = t.start_angle;
        let span = (t.end_angle - t.start_angle).rem_euclid(TAU);
        let a1 = a0 + if span == 0.0 { TAU } else { span };
        let unwrap = |p: Point2| (a0 + ((p - v).angle() - a0).rem_euclid(TAU)).min(a1);

        let s = t.start - v;
        let d = t.end - t.start;
        let a = d.dot(d);
        let b = 2.0 * s.dot(d);
        let c = s.dot(s) - r * r;
        let disc = b * b - 4.0 * a * c;
        if a == 0.0 || disc < 0.0 {
            arc(&mut out, a0, a1);
            continue;
        }
        let sq = disc.sqrt();
        let lo = ((-b - sq) / (2.0 * a)).max(0.0);
        let hi = ((-b + sq) / (2.0 * a)).min(1.0);
        if lo >= hi {
            arc(&mut out, a0, a1);
            continue;
        }
        let p_lo = t.start + d * lo;
        let p_hi = t.start + d * hi;
        if lo > 0.0 {
            arc(&mut out, a0, unwrap(p_lo));
        }
        push(&mut out, p_lo);
        push(&mut out, p_hi);
        if hi < 1.0 {
            arc(&mut out, unwrap(p_hi), a1);
        }
    }
    if out.len() > 1 && out[0].distance(out[out.len() - 1]) <= EPS_GEOM {
        out.pop();
    }
    out
}

/// Coverage of arbitrary (e.g. hand-placed) camera positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub boundary: Vec<BoundaryPoint>,
    pub covered: Vec<usize>,
    pub missed: Vec<usize>,
    /// Boundary indices seen by each placement, in input order.
    pub per_camera: Vec<Vec<usize>>,
    pub coverage_geometry: Vec<CoverageRegion>,
}

pub fn verify_placements(
    f: &Floorplan,
    placements: &[Point2],
    sampling: &SamplingConfig,
    constraints: &Constraints,
) -> Result<VerifyReport, PlanError> {
    let k = resolve_constraints(sampling, constraints)?;
    let boundary = sample_boundary(f, sampling.boundary_spacing)?;
    let mut hit = vec![false; boundary.len()];
    let mut per_camera = Vec::with_capacity(placements.len());
    let mut coverage_geometry = Vec::with_capacity(placements.len());
    for (index, &point) in placements.iter().enumerate() {
        let site = crate::sampling::CandidateSite {
            index,
            position: point,
            clearance: f.clearance(point),
        };
        let vp = match visibility_polygon(point, f) {
            Ok(vp) => vp,
            Err(crate::error::GeometryError::ViewpointOutside(_)) => {
                return Err(PlanError::PlacementOutside { index, point })
            }
            Err(e) => return Err(e.into()),
        };
        let seen: Vec<usize> = boundary
            .iter()
            .enumerate()
            .filter(|(_, b)| pair_visible(b, &site, &vp, &k))
            .map(|(j, _)| j)
            .collect();
        for &j in &seen {
            hit[j] = true;
        }
        per_camera.push(seen);
        coverage_geometry.push(CoverageRegion {
            candidate: index,
            position: point,
            ring: clipped_region(&vp, k.d_max),
        });
    }
    let (covered, missed) = (0..boundary.len()).partition(|&j| hit[j]);
    Ok(VerifyReport {
        boundary,
        covered,
        missed,
        per_camera,
        coverage_geometry,
    })
}

/// Clipped visible region around a single point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VisibilityReport {
    pub viewpoint: Point2,
    pub ring: Vec<Point2>,
    pub area: f64,
}

pub fn visibility_region(f: &Floorplan, point: Point2, constraints: &Constraints) -> Result<VisibilityReport, PlanError> {
    let vp = visibility_polygon(point, f)?;
    let ring = clipped_region(&vp, constraints.d_max);
    Ok(VisibilityReport {
        viewpoint: point,
        area: ring_area(&ring),
        ring,
    })
}

fn ring_area(ring: &[Point2]) -> f64 {
    let n = ring.len();
    0.5 * (0..n).map(|i| ring[i].cross(ring[(i + 1) % n])).sum::<f64>()
}

/// Parses a JSON document, naming the offending field and position on
/// failure.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, PlanError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let context = if path == "." {
            format!("line {} column {}", inner.line(), inner.column())
        } else {
            format!("field `{path}` (line {} column {})", inner.line(), inner.column())
        };
        PlanError::Parse {
            context,
            message: strip_position(&inner.to_string()),
        }
    })
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_owned(),
        None => msg.to_owned(),
    }
}

pub fn read_file(path: &Path) -> Result<String, PlanError> {
    std::fs::read_to_string(path).map_err(|source| PlanError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn parse_floorplan(text: &str) -> Result<(Floorplan, Vec<FloorplanWarning>), PlanError> {
    parse_json::<FloorplanDoc>(text)?.to_floorplan()
}

pub fn load_floorplan(path: &Path) -> Result<(Floorplan, Vec<FloorplanWarning>), PlanError> {
    parse_floorplan(&read_file(path)?)
}

/// Solver diagnostics that do not depend on wall-clock time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocDiagnostics {
    pub lower_bound: usize,
    pub nodes_explored: u64,
    pub essential_columns: usize,
    pub dominated_rows: usize,
    pub dominated_columns: usize,
}

/// The solution file. Only the `*_time_s` fields of `stats` vary between
/// runs on the same input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub version: u32,
    pub chosen: Vec<Point2>,
    pub chosen_indices: Vec<usize>,
    pub objective: usize,
    pub status: SolveStatus,
    pub missed_boundary: Vec<usize>,
    pub stats: PlanStats,
    pub diagnostics: DocDiagnostics,
}

impl From<&PlanReport> for SolutionDoc {
    fn from(r: &PlanReport) -> Self {
        let d = &r.solution.diagnostics;
        Self {
            version: DOC_VERSION,
            chosen: r.chosen.clone(),
            chosen_indices: r.solution.chosen.clone(),
            objective: r.solution.objective,
            status: r.solution.status,
            missed_boundary: r.missed_boundary.clone(),
            stats: r.stats.clone(),
            diagnostics: DocDiagnostics {
                lower_bound: d.lower_bound,
                nodes_explored: d.nodes_explored,
                essential_columns: d.reductions.essential_columns,
                dominated_rows: d.reductions.dominated_rows,
                dominated_columns: d.reductions.dominated_columns,
            },
        }
    }
}

/// Placements file for `verify`: either a bare list of points or a solution
/// document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PlacementsDoc {
    Points(Vec<Point2>),
    Solution { chosen: Vec<Point2> },
}

impl PlacementsDoc {
    pub fn points(&self) -> &[Point2] {
        match self {
            Self::Points(p) | Self::Solution { chosen: p } => p,
        }
    }
}

/// Writes the solution document and/or the SVG rendering.
pub fn export_report(
    report: &PlanReport,
    floorplan: &Floorplan,
    solution_path: Option<&Path>,
    svg_path: Option<&Path>,
) -> Result<(), PlanError> {
    let write = |path: &Path, text: String| {
        std::fs::write(path, text).map_err(|source| PlanError::Io {
            path: path.to_owned(),
            source,
        })
    };
    if let Some(path) = solution_path {
        let doc = SolutionDoc::from(report);
        let mut text = serde_json::to_string_pretty(&doc).expect("solution document serializes");
        text.push('\n');
        write(path, text)?;
    }
    if let Some(path) = svg_path {
        write(path, render_svg(floorplan, report))?;
    }
    Ok(())
}

/// SVG with walls, boundary points (covered or missed), camera markers and
/// one translucent region per camera. World y points up.
pub fn render_svg(f: &Floorplan, report: &PlanReport) -> String {
    let (lo, hi) = f.bounding_box();
    let extent = (hi.x - lo.x).max(hi.y - lo.y).max(1e-6);
    let margin = 0.05 * extent;
    let stroke = 0.004 * extent;
    let (w, h) = (hi.x - lo.x + 2.0 * margin, hi.y - lo.y + 2.0 * margin);
    let tx = |p: Point2| (p.x - lo.x + margin, hi.y - p.y + margin);
    let ring_path = |ring: &[Point2]| {
        let mut d = String::new();
        for (i, &p) in ring.iter().enumerate() {
            let (x, y) = tx(p);
            let _ = write!(d, "{}{x:.4},{y:.4} ", if i == 0 { "M" } else { "L" });
        }
        d.push('Z');
        d
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.4} {h:.4}" width="{:.0}" height="{:.0}">"#,
        800.0 * w / w.max(h),
        800.0 * h / w.max(h),
    );
    let _ = writeln!(
        s,
        r#"<style>.floor{{fill:#f7f7f2;stroke:#222;stroke-width:{stroke:.4}}}.covered{{fill:#2a9d3a}}.missed{{fill:#d62828}}.camera{{fill:#1d3557;stroke:#fff;stroke-width:{:.4}}}</style>"#,
        stroke * 0.5
    );
    let mut floor = ring_path(f.outer());
    for hole in f.holes() {
        floor.push(' ');
        floor.push_str(&ring_path(hole));
    }
    let _ = writeln!(s, r#"<path class="floor" fill-rule="evenodd" d="{floor}"/>"#);

    let n = report.coverage_geometry.len().max(1);
    for (i, region) in report.coverage_geometry.iter().enumerate() {
        let hue = (360.0 * i as f64 / n as f64).round();
        let _ = writeln!(
            s,
            r#"<path class="coverage" fill="hsl({hue},70%,55%)" fill-opacity="0.18" d="{}"/>"#,
            ring_path(&region.ring)
        );
    }

    let mut missed = vec![false; report.boundary.len()];
    for &j in &report.missed_boundary {
        missed[j] = true;
    }
    let r = 1.5 * stroke;
    for b in &report.boundary {
        let (x, y) = tx(b.position);
        let class = if missed[b.index] { "missed" } else { "covered" };
        let _ = writeln!(s, r#"<circle class="{class}" cx="{x:.4}" cy="{y:.4}" r="{r:.4}"/>"#);
    }
    for p in &report.chosen {
        let (x, y) = tx(*p);
        let _ = writeln!(s, r#"<circle class="camera" cx="{x:.4}" cy="{y:.4}" r="{:.4}"/>"#, 3.0 * r);
    }
    s.push_str("</svg>\n");
    s
}

/// True iff every ring vertex is inside or on the floorplan, within `tol`.
pub fn region_within(f: &Floorplan, ring: &[Point2], tol: f64) -> bool {
    ring.iter().all(|&p| {
        point_in_floorplan(p, f) != Location::Outside || f.walls().iter().any(|w| w.distance_to(p) <= tol)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn unit_square_doc() -> &'static str {
        r#"{"version": 1, "units": "meters", "outer": [[0,0],[1,0],[1,1],[0,1]], "holes": []}"#
    }

    #[test]
    fn loads_unit_square() {
        let (f, warnings) = parse_floorplan(unit_square_doc()).unwrap();
        assert_eq!(f.outer().len(), 4);
        assert!(warnings.is_empty());
    }

    #[test]
    fn clockwise_input_warns() {
        let (f, warnings) =
            parse_floorplan(r#"{"version": 1, "outer": [[0,0],[0,1],[1,1],[1,0]]}"#).unwrap();
        assert_eq!(warnings, vec![FloorplanWarning::OuterReversed]);
        assert!(f.area() > 0.0);
    }

    #[test]
    fn validation_errors_name_the_invariant() {
        let bowtie = r#"{"version": 1, "outer": [[0,0],[1,1],[1,0],[0,1]]}"#;
        let err = parse_floorplan(bowtie).unwrap_err().to_string();
        assert!(err.contains("outer ring self-intersects"), "{err}");
        let outside = r#"{"version": 1, "outer": [[0,0],[1,0],[1,1],[0,1]],
            "holes": [[[2,2],[3,2],[3,3],[2,3]]]}"#;
        let err = parse_floorplan(outside).unwrap_err().to_string();
        assert!(err.contains("hole not contained"), "{err}");
    }

    #[test]
    fn parse_errors_carry_context() {
        let err = parse_floorplan(r#"{"version": 1, "outer": [[0,0],[1,"x"]]}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("outer"), "{msg}");
        assert!(msg.contains("line 1"), "{msg}");
        let err = parse_floorplan("{\n  \"version\": 1\n}").unwrap_err().to_string();
        assert!(err.contains("missing field `outer`"), "{err}");
        assert!(matches!(
            parse_floorplan(r#"{"version": 2, "outer": [[0,0],[1,0],[1,1]]}"#),
            Err(PlanError::Version(2))
        ));
    }

    #[test]
    fn unit_square_plan() {
        let req = PlanRequest::new(synth::rectangle(1.0, 1.0));
        let r = plan(&req).unwrap();
        assert_eq!(r.solution.objective, 1);
        assert_eq!(r.solution.status, SolveStatus::Optimal);
        assert!(r.missed_boundary.is_empty());
        assert_eq!(r.coverage_geometry.len(), 1);
        assert!((ring_area(&r.coverage_geometry[0].ring) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn clipping_bounds_area_by_disk() {
        let f = synth::rectangle(10.0, 10.0);
        let vp = visibility_polygon(Point2::new(5.0, 5.0), &f).unwrap();
        let ring = clipped_region(&vp, Some(2.0));
        let area = ring_area(&ring);
        let disk = std::f64::consts::PI * 4.0;
        assert!(area < disk && area > 0.99 * disk, "{area}");
        assert!(ring.iter().all(|p| p.distance(Point2::new(5.0, 5.0)) <= 2.0 + 1e-9));
        // Range beyond the room leaves the polygon unchanged.
        let ring = clipped_region(&vp, Some(100.0));
        assert!((ring_area(&ring) - 100.0).abs() < 1e-9);
        // Partially clipped near a wall: square minus outside of the disk.
        let vp = visibility_polygon(Point2::new(1.0, 5.0), &f).unwrap();
        let ring = clipped_region(&vp, Some(2.0));
        assert!(region_within(&f, &ring, 1e-9));
        // Circular segment beyond the wall: R^2 acos(d/R) - d sqrt(R^2 - d^2).
        let seg = 4.0 * (0.5f64).acos() - 3f64.sqrt();
        let expected = disk - seg;
        assert!((ring_area(&ring) - expected).abs() < 0.01 * expected);
    }

    #[test]
    fn verify_empty_and_full() {
        let f = synth::rectangle(1.0, 1.0);
        let cfg = SamplingConfig::default();
        let r = verify_placements(&f, &[], &cfg, &Constraints::unbounded()).unwrap();
        assert_eq!(r.missed.len(), r.boundary.len());
        let r = verify_placements(&f, &[Point2::new(0.5, 0.5)], &cfg, &Constraints::unbounded()).unwrap();
        assert!(r.missed.is_empty());
        assert!(matches!(
            verify_placements(&f, &[Point2::new(2.0, 0.5)], &cfg, &Constraints::unbounded()),
            Err(PlanError::PlacementOutside { index: 0, .. })
        ));
    }

    #[test]
    fn solution_doc_round_trip() {
        let r = plan(&PlanRequest::new(synth::l_shape())).unwrap();
        let doc = SolutionDoc::from(&r);
        let text = serde_json::to_string(&doc).unwrap();
        let back: SolutionDoc = parse_json(&text).unwrap();
        assert_eq!(back.chosen_indices, r.solution.chosen);
        assert_eq!(back.objective, r.solution.objective);
        assert_eq!(back, doc);
        match parse_json::<PlacementsDoc>(&text).unwrap() {
            PlacementsDoc::Solution { chosen } => assert_eq!(chosen, r.chosen),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn svg_marks_cameras_and_missed_points() {
        let f = synth::rectangle(4.0, 3.0);
        let r = plan(&PlanRequest::new(f.clone())).unwrap();
        let svg = render_svg(&f, &r);
        assert_eq!(svg.matches(r#"class="camera""#).count(), 1);
        assert_eq!(svg.matches(r#"class="missed""#).count(), 0);
        assert_eq!(svg.matches(r#"class="covered""#).count(), r.boundary.len());

        // Corner points lie beyond d_max of every site with enough clearance.
        let mut req = PlanRequest::new(synth::rectangle(4.0, 3.0));
        req.sampling.d_min = 0.45;
        req.constraints.d_max = Some(0.6);
        let r = plan(&req).unwrap();
        assert!(!r.missed_boundary.is_empty());
        let svg = render_svg(&req.floorplan, &r);
        assert_eq!(svg.matches(r#"class="missed""#).count(), r.missed_boundary.len());
    }

    #[test]
    fn request_doc_defaults() {
        let doc: PlanRequestDoc = parse_json(&format!(r#"{{"floorplan": {}}}"#, unit_square_doc())).unwrap();
        assert_eq!(doc.solver, SolverChoice::Exact);
        assert_eq!(doc.sampling, SamplingConfig::default());
        assert_eq!(doc.constraints, Constraints::unbounded());
        assert_eq!(doc.time_budget_s, DEFAULT_TIME_BUDGET_S);
        let doc: PlanRequestDoc = parse_json(&format!(
            r#"{{"floorplan": {}, "constraints": {{"d_max": null, "theta_max_deg": 45}}, "solver": "greedy"}}"#,
            unit_square_doc()
        ))
        .unwrap();
        assert_eq!(doc.constraints.theta_max, Some(45.0));
        assert_eq!(doc.solver, SolverChoice::Greedy);
    }

    #[test]
    fn inverted_range_is_rejected() {
        let mut req = PlanRequest::new(synth::rectangle(5.0, 5.0));
        req.sampling.d_min = 2.0;
        req.constraints.d_max = Some(1.0);
        assert!(matches!(plan(&req), Err(PlanError::Config(_))));
    }
}
