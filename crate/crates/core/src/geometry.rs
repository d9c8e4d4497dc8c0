//! 2D primitives, floorplan validation and the rotational-sweep visibility
//! polygon.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// Tolerance for orientation and containment predicates, in meters.
pub const EPS_GEOM: f64 = 1e-9;

/// Event angles closer than this are swept as a single event.
pub const EPS_ANGLE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z component of the 3D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub fn new(a: Point2, b: Point2) -> Result<Self, GeometryError> {
        if !a.is_finite() || !b.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if a.distance(b) <= EPS_GEOM {
            return Err(GeometryError::DegenerateSegment(a));
        }
        Ok(Self { a, b })
    }

    pub fn length(&self) -> f64 {
        self.a.distance(self.b)
    }

    pub fn direction(&self) -> Point2 {
        self.b - self.a
    }

    /// Unit normal on the left of `a -> b`. For a counter-clockwise outer ring
    /// and clockwise holes this points into the floorplan interior.
    pub fn left_normal(&self) -> Point2 {
        let d = self.direction();
        let len = d.norm();
        Point2::new(-d.y / len, d.x / len)
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.a + self.direction() * t
    }

    pub fn distance_to(&self, p: Point2) -> f64 {
        point_segment_distance(p, self.a, self.b)
    }
}

pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(d) / len2).clamp(0.0, 1.0);
    p.distance(a + d * t)
}

/// Sign of the turn `a -> b -> c`, with |distance of c from line ab| <= EPS_GEOM
/// counted as collinear.
pub fn orientation(a: Point2, b: Point2, c: Point2) -> Ordering {
    let ab = b - a;
    let cross = ab.cross(c - a);
    let scale = ab.norm().max((c - a).norm());
    if cross.abs() <= EPS_GEOM * scale {
        Ordering::Equal
    } else if cross > 0.0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

/// Shoelace signed area; positive for counter-clockwise rings.
pub fn signed_area(ring: &[Point2]) -> Result<f64, GeometryError> {
    if ring.len() < 3 {
        return Err(GeometryError::TooFewVertices(ring.len()));
    }
    Ok(ring_area_unchecked(ring))
}

fn ring_area_unchecked(ring: &[Point2]) -> f64 {
    let n = ring.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += ring[i].cross(ring[(i + 1) % n]);
    }
    acc * 0.5
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Intersection {
    /// Interiors cross at a single point.
    Proper,
    /// Segments share a point that is an endpoint of at least one of them, or
    /// overlap collinearly.
    Touching,
    None,
}

fn on_segment(p: Point2, s: &Segment) -> bool {
    s.distance_to(p) <= EPS_GEOM
}

pub fn segments_intersect(s1: &Segment, s2: &Segment) -> Intersection {
    let o1 = orientation(s1.a, s1.b, s2.a);
    let o2 = orientation(s1.a, s1.b, s2.b);
    let o3 = orientation(s2.a, s2.b, s1.a);
    let o4 = orientation(s2.a, s2.b, s1.b);

    let all_strict = [o1, o2, o3, o4].iter().all(|o| *o != Ordering::Equal);
    if all_strict && o1 != o2 && o3 != o4 {
        return Intersection::Proper;
    }
    if on_segment(s2.a, s1) || on_segment(s2.b, s1) || on_segment(s1.a, s2) || on_segment(s1.b, s2)
    {
        return Intersection::Touching;
    }
    Intersection::None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

/// Non-fatal adjustments made while normalizing a floorplan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FloorplanWarning {
    OuterReversed,
    HoleReversed(usize),
    MergedVertices { ring: RingId, removed: usize },
}

impl fmt::Display for FloorplanWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OuterReversed => write!(f, "outer ring was clockwise; reversed to counter-clockwise"),
            Self::HoleReversed(i) => {
                write!(f, "hole {i} was counter-clockwise; reversed to clockwise")
            }
            Self::MergedVertices { ring, removed } => {
                write!(f, "{ring}: merged {removed} duplicate or collinear vertices")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingId {
    Outer,
    Hole(usize),
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Outer => write!(f, "outer ring"),
            RingId::Hole(i) => write!(f, "hole {i}"),
        }
    }
}

/// A validated floorplan: a counter-clockwise outer ring and clockwise holes.
///
/// Walls are numbered outer edges first (edge `i` runs from vertex `i` to
/// `i + 1`), followed by the edges of each hole in order.
#[derive(Debug, Clone, PartialEq)]
pub struct Floorplan {
    outer: Vec<Point2>,
    holes: Vec<Vec<Point2>>,
    walls: Vec<Segment>,
}

impl Floorplan {
    /// Validates and normalizes the rings. Orientation is flipped where needed
    /// and duplicate or collinear vertices are merged; both are reported as
    /// warnings.
    pub fn new(
        outer: Vec<Point2>,
        holes: Vec<Vec<Point2>>,
    ) -> Result<(Self, Vec<FloorplanWarning>), GeometryError> {
        let mut warnings = Vec::new();

        let mut outer = normalize_ring(outer, RingId::Outer, &mut warnings)?;
        if ring_area_unchecked(&outer) < 0.0 {
            outer.reverse();
            warnings.push(FloorplanWarning::OuterReversed);
        }
        check_simple(&outer, RingId::Outer)?;

        let mut norm_holes = Vec::with_capacity(holes.len());
        for (i, hole) in holes.into_iter().enumerate() {
            let mut hole = normalize_ring(hole, RingId::Hole(i), &mut warnings)?;
            if ring_area_unchecked(&hole) > 0.0 {
                hole.reverse();
                warnings.push(FloorplanWarning::HoleReversed(i));
            }
            check_simple(&hole, RingId::Hole(i))?;
            norm_holes.push(hole);
        }

        for (i, hole) in norm_holes.iter().enumerate() {
            if rings_touch(&outer, hole) {
                return Err(GeometryError::HoleNotContained(i));
            }
            if hole.iter().any(|&p| ring_winding_inside(&outer, p) != Location::Inside) {
                return Err(GeometryError::HoleNotContained(i));
            }
        }
        for i in 0..norm_holes.len() {
            for j in (i + 1)..norm_holes.len() {
                let (a, b) = (&norm_holes[i], &norm_holes[j]);
                if rings_touch(a, b)
                    || ring_winding_inside(a, b[0]) != Location::Outside
                    || ring_winding_inside(b, a[0]) != Location::Outside
                {
                    return Err(GeometryError::HolesOverlap(i, j));
                }
            }
        }

        let mut walls = ring_segments(&outer);
        for hole in &norm_holes {
            walls.extend(ring_segments(hole));
        }
        Ok((
            Self {
                outer,
                holes: norm_holes,
                walls,
            },
            warnings,
        ))
    }

    pub fn outer(&self) -> &[Point2] {
        &self.outer
    }

    pub fn holes(&self) -> &[Vec<Point2>] {
        &self.holes
    }

    pub fn walls(&self) -> &[Segment] {
        &self.walls
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point2> + '_ {
        self.outer.iter().chain(self.holes.iter().flatten()).copied()
    }

    /// Interior area: outer area minus hole areas.
    pub fn area(&self) -> f64 {
        ring_area_unchecked(&self.outer) + self.holes.iter().map(|h| ring_area_unchecked(h)).sum::<f64>()
    }

    pub fn perimeter(&self) -> f64 {
        self.walls.iter().map(Segment::length).sum()
    }

    pub fn bounding_box(&self) -> (Point2, Point2) {
        let mut min = Point2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.outer {
            min.x = min.x.min(p.x);
            min.y = min.y.min(p.y);
            max.x = max.x.max(p.x);
            max.y = max.y.max(p.y);
        }
        (min, max)
    }

    /// Distance from `p` to the nearest wall.
    pub fn clearance(&self, p: Point2) -> f64 {
        self.walls
            .iter()
            .map(|w| w.distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// True when there are no holes and the outer ring has no reflex vertex.
    pub fn is_convex(&self) -> bool {
        if !self.holes.is_empty() {
            return false;
        }
        let n = self.outer.len();
        (0..n).all(|i| {
            orientation(self.outer[i], self.outer[(i + 1) % n], self.outer[(i + 2) % n])
                != Ordering::Less
        })
    }
}

fn ring_segments(ring: &[Point2]) -> Vec<Segment> {
    let n = ring.len();
    (0..n)
        .map(|i| Segment {
            a: ring[i],
            b: ring[(i + 1) % n],
        })
        .collect()
}

/// Drops repeated closing vertices, near-duplicates and collinear vertices.
fn normalize_ring(
    ring: Vec<Point2>,
    id: RingId,
    warnings: &mut Vec<FloorplanWarning>,
) -> Result<Vec<Point2>, GeometryError> {
    if ring.iter().any(|p| !p.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let original = ring.len();
    let mut pts: Vec<Point2> = Vec::with_capacity(ring.len());
    for p in ring {
        if pts.last().is_some_and(|q| q.distance(p) <= EPS_GEOM) {
            continue;
        }
        pts.push(p);
    }
    while pts.len() > 1 && pts[0].distance(pts[pts.len() - 1]) <= EPS_GEOM {
        pts.pop();
    }

    // Collinear merge; repeat until stable since removals can expose new ones.
    loop {
        let n = pts.len();
        if n < 3 {
            break;
        }
        let drop = (0..n).find(|&i| {
            let prev = pts[(i + n - 1) % n];
            let next = pts[(i + 1) % n];
            let cur = pts[i];
            // Only straight-through vertices merge; a spike (reversal) is left
            // for the simplicity check to reject.
            orientation(prev, cur, next) == Ordering::Equal && (cur - prev).dot(next - cur) > 0.0
        });
        match drop {
            Some(i) => {
                pts.remove(i);
            }
            None => break,
        }
    }

    if pts.len() < 3 {
        return Err(GeometryError::TooFewVertices(pts.len()));
    }
    if pts.len() != original {
        warnings.push(FloorplanWarning::MergedVertices {
            ring: id,
            removed: original - pts.len(),
        });
    }
    Ok(pts)
}

fn check_simple(ring: &[Point2], id: RingId) -> Result<(), GeometryError> {
    let segs = ring_segments(ring);
    let n = segs.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let kind = segments_intersect(&segs[i], &segs[j]);
            let bad = if adjacent {
                // Adjacent edges may only share their common vertex.
                let shared = if j == i + 1 { segs[i].b } else { segs[i].a };
                let (far_i, far_j) = if j == i + 1 {
                    (segs[i].a, segs[j].b)
                } else {
                    (segs[i].b, segs[j].a)
                };
                kind == Intersection::Proper
                    || on_segment(far_j, &segs[i])
                    || on_segment(far_i, &segs[j])
                    || shared.distance(far_i) <= EPS_GEOM
            } else {
                kind != Intersection::None
            };
            if bad {
                return Err(GeometryError::SelfIntersection(id));
            }
        }
    }
    if ring_area_unchecked(ring).abs() <= EPS_GEOM {
        return Err(GeometryError::ZeroArea(id));
    }
    Ok(())
}

fn rings_touch(a: &[Point2], b: &[Point2]) -> bool {
    let sa = ring_segments(a);
    let sb = ring_segments(b);
    sa.iter()
        .any(|s| sb.iter().any(|t| segments_intersect(s, t) != Intersection::None))
}

/// Crossing-number containment for a single ring, with an EPS_GEOM boundary band.
fn ring_winding_inside(ring: &[Point2], p: Point2) -> Location {
    let n = ring.len();
    let mut inside = false;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if point_segment_distance(p, a, b) <= EPS_GEOM {
            return Location::OnBoundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Classifies `p` against the floorplan interior (outer ring minus holes).
pub fn point_in_floorplan(p: Point2, f: &Floorplan) -> Location {
    if f.walls.iter().any(|w| w.distance_to(p) <= EPS_GEOM) {
        return Location::OnBoundary;
    }
    match ring_winding_inside(&f.outer, p) {
        Location::Inside => {}
        other => return other,
    }
    for hole in &f.holes {
        if ring_winding_inside(hole, p) != Location::Outside {
            return Location::Outside;
        }
    }
    Location::Inside
}

/// A triangle of the visibility fan. The apex is the viewpoint; `near` and
/// `far` bound the angular interval `[start_angle, end_angle]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FanTriangle {
    pub start: Point2,
    pub end: Point2,
    pub start_angle: f64,
    pub end_angle: f64,
    /// Index of the wall that bounds this triangle.
    pub wall: usize,
}

/// The region visible from `viewpoint`, as a counter-clockwise triangle fan.
#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityPolygon {
    pub viewpoint: Point2,
    pub fan: Vec<FanTriangle>,
}

impl VisibilityPolygon {
    pub fn area(&self) -> f64 {
        self.fan
            .iter()
            .map(|t| 0.5 * (t.start - self.viewpoint).cross(t.end - self.viewpoint))
            .sum()
    }

    /// Vertex ring of the star-shaped region, counter-clockwise.
    pub fn ring(&self) -> Vec<Point2> {
        let mut out: Vec<Point2> = Vec::with_capacity(self.fan.len() * 2);
        for t in &self.fan {
            for p in [t.start, t.end] {
                if out.last().is_none_or(|q| q.distance(p) > EPS_GEOM) {
                    out.push(p);
                }
            }
        }
        if out.len() > 1 && out[0].distance(out[out.len() - 1]) <= EPS_GEOM {
            out.pop();
        }
        out
    }

    fn triangle_contains(&self, t: &FanTriangle, p: Point2) -> bool {
        let v = self.viewpoint;
        let signed_dist = |a: Point2, b: Point2| {
            let d = b - a;
            let len = d.norm();
            if len == 0.0 {
                return -(p.distance(a));
            }
            d.cross(p - a) / len
        };
        // Counter-clockwise triangle: p must be left of (or within EPS of)
        // every edge.
        signed_dist(v, t.start) >= -EPS_GEOM
            && signed_dist(t.start, t.end) >= -EPS_GEOM
            && signed_dist(t.end, v) >= -EPS_GEOM
    }

    fn locate(&self, theta: f64) -> usize {
        // Intervals are sorted by start angle and tile [first, first + 2pi).
        let first = self.fan[0].start_angle;
        let mut a = theta;
        while a < first {
            a += 2.0 * PI;
        }
        while a >= first + 2.0 * PI {
            a -= 2.0 * PI;
        }
        let idx = self.fan.partition_point(|t| t.start_angle <= a);
        idx.saturating_sub(1)
    }
}

/// True iff `target` lies inside or on some fan triangle of `vp`.
pub fn sees(viewpoint: Point2, target: Point2, vp: &VisibilityPolygon) -> bool {
    debug_assert!(viewpoint.distance(vp.viewpoint) <= EPS_GEOM);
    if target.distance(viewpoint) <= EPS_GEOM {
        return true;
    }
    if vp.fan.is_empty() {
        return false;
    }
    let i = vp.locate((target - viewpoint).angle());
    let n = vp.fan.len();
    [i, (i + 1) % n, (i + n - 1) % n]
        .into_iter()
        .any(|k| vp.triangle_contains(&vp.fan[k], target))
}

/// Ray parameter of the hit between `origin + t * dir` and the supporting
/// line of `wall`.
fn ray_line_hit(origin: Point2, dir: Point2, wall: &Segment) -> Option<f64> {
    let e = wall.direction();
    let denom = dir.cross(e);
    if denom.abs() < 1e-300 {
        return None;
    }
    Some((wall.a - origin).cross(e) / denom)
}

/// Ray parameter of the hit between a ray and the closed wall segment.
fn ray_segment_hit(origin: Point2, dir: Point2, wall: &Segment) -> Option<f64> {
    let e = wall.direction();
    let denom = dir.cross(e);
    if denom.abs() < 1e-300 {
        return None;
    }
    let w = wall.a - origin;
    let t = w.cross(e) / denom;
    let u = w.cross(dir) / denom;
    (t > 0.0 && (-1e-12..=1.0 + 1e-12).contains(&u)).then_some(t)
}

/// Distance along the ray from `origin` at angle `theta` to the first wall.
pub fn cast_ray(origin: Point2, theta: f64, f: &Floorplan) -> Option<f64> {
    let dir = Point2::from_angle(theta);
    f.walls
        .iter()
        .filter_map(|w| ray_segment_hit(origin, dir, w))
        .min_by(f64::total_cmp)
}

/// Rotational sweep around `viewpoint` over all wall endpoints.
///
/// Between two consecutive event angles the nearest wall cannot change, so each
/// angular interval yields one triangle whose far edge lies on that wall. The
/// nearest wall is found among the walls active in the interval by probing at
/// the interval's mid angle.
pub fn visibility_polygon(
    viewpoint: Point2,
    f: &Floorplan,
) -> Result<VisibilityPolygon, GeometryError> {
    if !viewpoint.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    if point_in_floorplan(viewpoint, f) != Location::Inside {
        return Err(GeometryError::ViewpointOutside(viewpoint));
    }

    // Angular span of each wall as seen from the viewpoint, counter-clockwise
    // from `from` to `to`. Walls seen edge-on span no angle and never occlude.
    struct Span {
        wall: usize,
        from: f64,
        to: f64,
    }
    let mut spans = Vec::with_capacity(f.walls.len());
    let mut angles = Vec::with_capacity(f.walls.len() * 2);
    for (i, w) in f.walls.iter().enumerate() {
        let pa = w.a - viewpoint;
        let pb = w.b - viewpoint;
        let (aa, ab) = (pa.angle(), pb.angle());
        angles.push(aa);
        angles.push(ab);
        let cross = pa.cross(pb);
        if cross.abs() <= EPS_GEOM * pa.norm().max(pb.norm()) * 1e-3 {
            continue;
        }
        let (from, to) = if cross > 0.0 { (aa, ab) } else { (ab, aa) };
        spans.push(Span { wall: i, from, to });
    }

    angles.sort_by(f64::total_cmp);
    let mut events: Vec<f64> = Vec::with_capacity(angles.len());
    for a in angles {
        if events.last().is_none_or(|&l| a - l > EPS_ANGLE) {
            events.push(a);
        }
    }
    // Fold the wrap-around duplicate (e.g. -pi and pi).
    while events.len() > 1 && events[0] + 2.0 * PI - events[events.len() - 1] <= EPS_ANGLE {
        events.pop();
    }
    let m = events.len();
    if m < 2 {
        return Err(GeometryError::DegenerateSweep(viewpoint));
    }

    let group_of = |a: f64| -> usize {
        // Nearest event index; every wall endpoint angle is within EPS_ANGLE
        // of some event.
        let i = events.partition_point(|&e| e < a - EPS_ANGLE);
        if i >= m {
            // Merged into the wrap-around event 0.
            0
        } else {
            i
        }
    };

    let mut starts: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut ends: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut active: Vec<usize> = Vec::new();
    for span in &spans {
        let s = group_of(span.from);
        let e = group_of(span.to);
        if s == e {
            continue;
        }
        starts[s].push(span.wall);
        ends[e].push(span.wall);
        if s > e && e > 0 {
            active.push(span.wall);
        }
    }

    let mut fan = Vec::with_capacity(m);
    for i in 0..m {
        active.retain(|w| !ends[i].contains(w));
        active.extend_from_slice(&starts[i]);

        let start_angle = events[i];
        let end_angle = if i + 1 < m {
            events[i + 1]
        } else {
            events[0] + 2.0 * PI
        };
        let mid = Point2::from_angle(0.5 * (start_angle + end_angle));
        let nearest = active
            .iter()
            .filter_map(|&w| ray_line_hit(viewpoint, mid, &f.walls[w]).map(|t| (t, w)))
            .filter(|(t, _)| *t > 0.0)
            .min_by(|a, b| a.0.total_cmp(&b.0));
        let Some((_, wall)) = nearest else {
            return Err(GeometryError::DegenerateSweep(viewpoint));
        };
        let seg = &f.walls[wall];
        let hit = |theta: f64| -> Result<Point2, GeometryError> {
            let d = Point2::from_angle(theta);
            ray_line_hit(viewpoint, d, seg)
                .map(|t| viewpoint + d * t)
                .ok_or(GeometryError::DegenerateSweep(viewpoint))
        };
        fan.push(FanTriangle {
            start: hit(start_angle)?,
            end: hit(end_angle)?,
            start_angle,
            end_angle,
            wall,
        });
    }

    Ok(VisibilityPolygon { viewpoint, fan })
}
