//! Synthetic floorplans for tests, benches and demos.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Floorplan, Point2};

fn build(outer: Vec<Point2>, holes: Vec<Vec<Point2>>) -> Floorplan {
    Floorplan::new(outer, holes)
        .expect("synthetic floorplan is valid")
        .0
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<Point2> {
    vec![
        Point2::new(x0, y0),
        Point2::new(x1, y0),
        Point2::new(x1, y1),
        Point2::new(x0, y1),
    ]
}

pub fn rectangle(width: f64, height: f64) -> Floorplan {
    build(rect(0.0, 0.0, width, height), vec![])
}

pub fn l_shape() -> Floorplan {
    build(
        vec![
            Point2::new(0., 0.),
            Point2::new(2., 0.),
            Point2::new(2., 1.),
            Point2::new(1., 1.),
            Point2::new(1., 2.),
            Point2::new(0., 2.),
        ],
        vec![],
    )
}

/// Square of side `size` with a centered square hole of side `hole`.
pub fn square_annulus(size: f64, hole: f64) -> Floorplan {
    let m = 0.5 * (size - hole);
    build(rect(0.0, 0.0, size, size), vec![rect(m, m, m + hole, m + hole)])
}

/// A base of height 1 with `teeth` unit-wide teeth of height 4, separated by
/// unit gaps. No point sees the tips of two different teeth, so covering the
/// walls needs exactly one camera per tooth.
pub fn comb(teeth: usize) -> Floorplan {
    assert!(teeth >= 1);
    let base_h = 1.0;
    let tooth_h = 4.0;
    let width = (2 * teeth + 1) as f64;
    let mut ring = vec![Point2::new(0.0, 0.0), Point2::new(width, 0.0)];
    // Walk right to left along the top.
    ring.push(Point2::new(width, base_h));
    for k in (0..teeth).rev() {
        let x0 = (2 * k + 1) as f64;
        let x1 = x0 + 1.0;
        ring.push(Point2::new(x1, base_h));
        ring.push(Point2::new(x1, base_h + tooth_h));
        ring.push(Point2::new(x0, base_h + tooth_h));
        ring.push(Point2::new(x0, base_h));
    }
    ring.push(Point2::new(0.0, base_h));
    build(ring, vec![])
}

/// Office-style corridor loop: a 48 x 32 m outer wall with alcoves, around a
/// block of rooms (the hole), leaving a corridor about 3 m wide.
pub fn corridor_loop() -> Floorplan {
    let p = Point2::new;
    let outer = vec![
        p(0.0, 0.0),
        p(14.0, 0.0),
        p(14.0, -2.0),
        p(19.0, -2.0),
        p(19.0, 0.0),
        p(48.0, 0.0),
        p(48.0, 12.0),
        p(50.5, 12.0),
        p(50.5, 18.0),
        p(48.0, 18.0),
        p(48.0, 32.0),
        p(30.0, 32.0),
        p(30.0, 35.0),
        p(26.0, 35.0),
        p(26.0, 32.0),
        p(0.0, 32.0),
        p(0.0, 20.0),
        p(-2.0, 20.0),
        p(-2.0, 14.0),
        p(0.0, 14.0),
    ];
    // Room block with a recess on its south side.
    let hole = vec![
        p(3.0, 3.0),
        p(3.0, 29.0),
        p(45.0, 29.0),
        p(45.0, 3.0),
        p(24.0, 3.0),
        p(24.0, 4.5),
        p(20.0, 4.5),
        p(20.0, 3.0),
    ];
    build(outer, vec![hole])
}

/// Random simply-connected rectilinear polygon built from grid cells, with
/// `min_walls..=max_walls` walls and optionally one square hole.
pub fn random_rectilinear(seed: u64, min_walls: usize, max_walls: usize, with_hole: bool) -> Floorplan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hole_walls = if with_hole { 4 } else { 0 };
    for _ in 0..10_000 {
        let grid = rng.gen_range(4..=9);
        let target_cells = rng.gen_range(grid..=grid * grid * 2 / 3);
        let Some(cells) = grow_cells(&mut rng, grid, target_cells) else {
            continue;
        };
        let Some(outer) = trace_cells(&cells) else {
            continue;
        };
        let walls = outer.len() + hole_walls;
        if walls < min_walls || walls > max_walls {
            continue;
        }
        let scale = rng.gen_range(1.0..3.0);
        let outer: Vec<Point2> = outer
            .into_iter()
            .map(|(x, y)| Point2::new(x as f64 * scale, y as f64 * scale))
            .collect();
        let mut holes = Vec::new();
        if with_hole {
            // A cell whose eight neighbours are all filled keeps the hole
            // strictly inside.
            let mut interior: Vec<(i32, i32)> = cells
                .iter()
                .copied()
                .filter(|&(x, y)| {
                    (-1..=1).all(|dx| (-1..=1).all(|dy| cells.contains(&(x + dx, y + dy))))
                })
                .collect();
            if interior.is_empty() {
                continue;
            }
            interior.sort_unstable();
            let (cx, cy) = interior[rng.gen_range(0..interior.len())];
            let inset = rng.gen_range(0.1..0.4);
            holes.push(rect(
                (cx as f64 + inset) * scale,
                (cy as f64 + inset) * scale,
                (cx as f64 + 1.0 - inset) * scale,
                (cy as f64 + 1.0 - inset) * scale,
            ));
        }
        if let Ok((f, _)) = Floorplan::new(outer, holes) {
            return f;
        }
    }
    panic!("could not generate a rectilinear polygon with {min_walls}..={max_walls} walls");
}

fn grow_cells(rng: &mut ChaCha8Rng, grid: i32, target: i32) -> Option<HashSet<(i32, i32)>> {
    let mut cells = HashSet::new();
    let start = (rng.gen_range(0..grid), rng.gen_range(0..grid));
    cells.insert(start);
    let mut order = vec![start];
    let mut attempts = 0;
    while (cells.len() as i32) < target && attempts < 2000 {
        attempts += 1;
        let &(x, y) = &order[rng.gen_range(0..order.len())];
        let (dx, dy) = [(1, 0), (-1, 0), (0, 1), (0, -1)][rng.gen_range(0..4)];
        let c = (x + dx, y + dy);
        if c.0 < 0 || c.1 < 0 || c.0 >= grid || c.1 >= grid || cells.contains(&c) {
            continue;
        }
        cells.insert(c);
        if has_pinch(&cells) || has_enclosed_gap(&cells, grid) {
            cells.remove(&c);
            continue;
        }
        order.push(c);
    }
    Some(cells)
}

/// Two cells touching only at a corner make the boundary non-simple.
fn has_pinch(cells: &HashSet<(i32, i32)>) -> bool {
    cells.iter().any(|&(x, y)| {
        [(1, 1), (1, -1)].iter().any(|&(dx, dy)| {
            cells.contains(&(x + dx, y + dy))
                && !cells.contains(&(x + dx, y))
                && !cells.contains(&(x, y + dy))
        })
    })
}

fn has_enclosed_gap(cells: &HashSet<(i32, i32)>, grid: i32) -> bool {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    queue.push_back((-1, -1));
    seen.insert((-1, -1));
    while let Some((x, y)) = queue.pop_front() {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let c = (x + dx, y + dy);
            if c.0 < -1 || c.1 < -1 || c.0 > grid || c.1 > grid {
                continue;
            }
            if cells.contains(&c) || !seen.insert(c) {
                continue;
            }
            queue.push_back(c);
        }
    }
    let total = (grid + 2) * (grid + 2);
    (seen.len() + cells.len()) as i32 != total
}

/// Traces the union boundary counter-clockwise and drops collinear vertices.
fn trace_cells(cells: &HashSet<(i32, i32)>) -> Option<Vec<(i32, i32)>> {
    let mut next: HashMap<(i32, i32), (i32, i32)> = HashMap::new();
    for &(x, y) in cells {
        let corners = [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)];
        let neighbours = [(x, y - 1), (x + 1, y), (x, y + 1), (x - 1, y)];
        for k in 0..4 {
            if !cells.contains(&neighbours[k]) {
                next.insert(corners[k], corners[(k + 1) % 4]);
            }
        }
    }
    let start = *next.keys().min()?;
    let mut ring = vec![start];
    let mut cur = next[&start];
    while cur != start {
        ring.push(cur);
        cur = *next.get(&cur)?;
        if ring.len() > next.len() {
            return None;
        }
    }
    if ring.len() != next.len() {
        return None;
    }
    let n = ring.len();
    let corners: Vec<(i32, i32)> = (0..n)
        .filter(|&i| {
            let a = ring[(i + n - 1) % n];
            let b = ring[i];
            let c = ring[(i + 1) % n];
            (b.0 - a.0) * (c.1 - b.1) - (b.1 - a.1) * (c.0 - b.0) != 0
        })
        .map(|i| ring[i])
        .collect();
    Some(corners)
}

/// Random convex polygon: sorted random angles on a jittered circle.
pub fn random_convex(seed: u64, vertices: usize) -> Floorplan {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut angles: Vec<f64> = (0..vertices)
            .map(|_| rng.gen_range(0.0..std::f64::consts::TAU))
            .collect();
        angles.sort_by(f64::total_cmp);
        let r = rng.gen_range(3.0..8.0);
        let ring: Vec<Point2> = angles.iter().map(|&a| Point2::from_angle(a) * r).collect();
        if let Ok((f, _)) = Floorplan::new(ring, vec![]) {
            if f.is_convex() && f.area() > 1.0 {
                return f;
            }
        }
    }
}
