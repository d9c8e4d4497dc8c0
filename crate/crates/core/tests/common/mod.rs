//! Independent oracles: nothing here calls the sweep, `sees` or the matrix
//! builder.
#![allow(dead_code)]

use panoplan::geometry::{point_in_floorplan, Location};
use panoplan::{BoundaryPoint, CandidateSite, Constraints, Floorplan, Point2};
use rand::Rng;

/// Width of the tolerance band in which the occlusion oracle abstains.
pub const BAND: f64 = 1e-7;

fn walls(f: &Floorplan) -> Vec<(Point2, Point2)> {
    let mut out = Vec::new();
    let mut ring = |r: &[Point2]| {
        for i in 0..r.len() {
            out.push((r[i], r[(i + 1) % r.len()]));
        }
    };
    ring(f.outer());
    for h in f.holes() {
        ring(h);
    }
    out
}

fn cross(a: Point2, b: Point2) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Distance from `o` along direction `theta` to the nearest wall.
pub fn ray_distance(o: Point2, theta: f64, walls: &[(Point2, Point2)]) -> f64 {
    let d = Point2::new(theta.cos(), theta.sin());
    let mut best = f64::INFINITY;
    for &(a, b) in walls {
        let e = b - a;
        let den = cross(d, e);
        if den.abs() < 1e-300 {
            continue;
        }
        let w = a - o;
        let t = cross(w, e) / den;
        let u = cross(w, d) / den;
        if t > 0.0 && (0.0..=1.0).contains(&u) {
            best = best.min(t);
        }
    }
    best
}

/// Area of the visible region from `o` by midpoint integration of
/// r(theta)^2 / 2 over `n` rays.
pub fn area_by_rays(o: Point2, f: &Floorplan, n: usize) -> f64 {
    let w = walls(f);
    let dt = std::f64::consts::TAU / n as f64;
    (0..n)
        .map(|i| {
            let r = ray_distance(o, (i as f64 + 0.5) * dt, &w);
            0.5 * r * r * dt
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Occlusion {
    Visible,
    Blocked,
    /// Too close to a vertex, a wall or collinear contact to call.
    Ambiguous,
}

fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.x * ab.x + ab.y * ab.y;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2).clamp(0.0, 1.0)
    };
    let q = Point2::new(a.x + t * ab.x, a.y + t * ab.y);
    ((p.x - q.x).powi(2) + (p.y - q.y).powi(2)).sqrt()
}

/// Direct test of the open segment `from -> to` against every wall. `to`
/// may lie on wall `on_wall`.
pub fn segment_occlusion(from: Point2, to: Point2, f: &Floorplan, on_wall: Option<usize>) -> Occlusion {
    let ws = walls(f);
    let seg = to - from;
    let len = (seg.x * seg.x + seg.y * seg.y).sqrt();
    if len < BAND {
        return Occlusion::Visible;
    }
    let mut ambiguous = false;
    for (i, &(a, b)) in ws.iter().enumerate() {
        if on_wall == Some(i) {
            continue;
        }
        // Vertices near the segment are grazing contacts.
        if point_segment_distance(a, from, to) < BAND {
            ambiguous = true;
            continue;
        }
        let e = b - a;
        let den = cross(seg, e);
        let w = a - from;
        if den.abs() < 1e-12 * len * (e.x.hypot(e.y)) {
            if cross(w, seg).abs() / len < BAND {
                ambiguous = true;
            }
            continue;
        }
        let t = cross(w, e) / den;
        let u = cross(w, seg) / den;
        let elen = e.x.hypot(e.y);
        let (t_pad, u_pad) = (BAND / len, BAND / elen);
        if t < -t_pad || t > 1.0 + t_pad || u < -u_pad || u > 1.0 + u_pad {
            continue;
        }
        let interior_t = t > t_pad && t < 1.0 - t_pad;
        let interior_u = u > u_pad && u < 1.0 - u_pad;
        if interior_t && interior_u {
            return Occlusion::Blocked;
        }
        ambiguous = true;
    }
    if ambiguous {
        Occlusion::Ambiguous
    } else {
        Occlusion::Visible
    }
}

/// Uniform point strictly inside `f`, at least `margin` from every wall.
pub fn random_interior(rng: &mut impl Rng, f: &Floorplan, margin: f64) -> Point2 {
    let (lo, hi) = f.bounding_box();
    let ws = walls(f);
    loop {
        let p = Point2::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if point_in_floorplan(p, f) == Location::Inside
            && ws.iter().all(|&(a, b)| point_segment_distance(p, a, b) > margin)
        {
            return p;
        }
    }
}

/// Pair verdict from first principles, or `None` when the pair sits within
/// tolerance of a range, angle or occlusion boundary.
pub fn pair_oracle(b: &BoundaryPoint, c: &CandidateSite, f: &Floorplan, k: &Constraints) -> Option<bool> {
    let v = c.position - b.position;
    let dist = (v.x * v.x + v.y * v.y).sqrt();
    if (dist - k.d_min).abs() < 1e-7 {
        return None;
    }
    if dist < k.d_min {
        return Some(false);
    }
    if let Some(d_max) = k.d_max {
        if (dist - d_max).abs() < 1e-7 {
            return None;
        }
        if dist > d_max {
            return Some(false);
        }
    }
    if let Some(theta) = k.theta_max {
        let cos = (b.normal.x * v.x + b.normal.y * v.y) / dist;
        let angle = cos.clamp(-1.0, 1.0).acos().to_degrees();
        if (angle - theta).abs() < 1e-6 {
            return None;
        }
        if angle > theta {
            return Some(false);
        }
    }
    match segment_occlusion(c.position, b.position, f, Some(b.wall_id)) {
        Occlusion::Visible => Some(true),
        Occlusion::Blocked => Some(false),
        Occlusion::Ambiguous => None,
    }
}

/// A small geometric covering instance: a random rectilinear floorplan with
/// at most 60 boundary points and 25 candidates, under one of four
/// constraint settings.
pub fn small_instance(seed: u64) -> panoplan::CoverInstance {
    use panoplan::sampling::{sample_boundary, sample_interior};
    use rand::SeedableRng;

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let f = panoplan::synth::random_rectilinear(seed, 8, 20, seed.is_multiple_of(3));
    // round(L / s) <= L / s + 1 per wall, so 40 + 20 bounds the count.
    let boundary = sample_boundary(&f, f.perimeter() / 40.0).unwrap();
    assert!(boundary.len() <= 60);
    let (lo, hi) = f.bounding_box();
    let grid = (hi.x - lo.x).max(hi.y - lo.y) / 12.0;
    let all = sample_interior(&f, grid, 0.0).unwrap();
    let step = all.len().div_ceil(25).max(1);
    let offset = rng.gen_range(0..step);
    let candidates: Vec<CandidateSite> = all
        .iter()
        .skip(offset)
        .step_by(step)
        .take(25)
        .enumerate()
        .map(|(i, c)| CandidateSite { index: i, ..*c })
        .collect();
    let extent = (hi.x - lo.x).max(hi.y - lo.y);
    let k = match seed % 4 {
        0 => Constraints::unbounded(),
        1 => Constraints {
            d_max: Some(rng.gen_range(0.3..0.8) * extent),
            ..Default::default()
        },
        2 => Constraints {
            theta_max: Some(rng.gen_range(30.0..80.0)),
            ..Default::default()
        },
        _ => Constraints {
            d_min: 0.05 * extent,
            d_max: Some(rng.gen_range(0.4..0.9) * extent),
            theta_max: Some(rng.gen_range(40.0..85.0)),
        },
    };
    panoplan::CoverInstance::new(panoplan::build_matrix(&boundary, &candidates, &f, &k).unwrap())
}
