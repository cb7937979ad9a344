//! Oracles and fixtures shared by the integration tests. Everything here
//! is independent of the library's own algorithms.
#![allow(dead_code)]

use std::collections::BTreeSet;

use polycolor::coloring::{build_conflict_graph, ConflictGraph};
use polycolor::geom::Point;
use polycolor::generators::RawBuilder;
use polycolor::tiling::{BuildOptions, Tiling};
use rand::rngs::StdRng;
use rand::Rng;

pub const EPS: f64 = 1e-4;
/// Below `sqrt(2·EPS)`, so the sampled arc stays a near-straight chord.
pub const NEAR: f64 = 0.007;
pub const MIN_SLOPE: f64 = 0.05;

fn inside_f64(p: (f64, f64), poly: &[(f64, f64)]) -> bool {
    let mut c = false;
    let n = poly.len();
    for i in 0..n {
        let (ax, ay) = poly[i];
        let (bx, by) = poly[(i + 1) % n];
        if (ay > p.1) != (by > p.1) && p.0 < ax + (p.1 - ay) * (bx - ax) / (by - ay) {
            c = !c;
        }
    }
    c
}

/// Borders at `o` are far enough from the tangent line for sampling.
pub fn decided(t: &Tiling, o: usize, d: (f64, f64)) -> bool {
    let n = (d.0 * d.0 + d.1 * d.1).sqrt();
    t.vertices()[o].dirs().iter().all(|u| {
        let (ux, uy) = u.to_f64();
        ((ux * d.0 + uy * d.1) / ((ux * ux + uy * uy).sqrt() * n)).abs() >= MIN_SLOPE
    })
}

/// Colors met near the center by the unit circle about `P ∓ EPS·d̂`,
/// where `P` is the circle point in direction `d`; `side = -1` for the
/// inner center, `+1` for the outer one.
pub fn numeric_excluded(t: &Tiling, o: usize, d: (f64, f64), side: f64) -> BTreeSet<u32> {
    let v = &t.vertices()[o];
    let (ox, oy) = v.point.to_f64();
    let n = (d.0 * d.0 + d.1 * d.1).sqrt();
    let (dx, dy) = (d.0 / n, d.1 / n);
    let (qx, qy) = (ox + dx * (1.0 + side * EPS), oy + dy * (1.0 + side * EPS));
    let cells: Vec<(u32, Vec<(f64, f64)>)> = v
        .wedges
        .iter()
        .flatten()
        .map(|&c| (t.color(c), t.cell_polygon(c).iter().map(|p| p.to_f64()).collect()))
        .collect();
    let base = (oy - qy).atan2(ox - qx);
    let span = 2.0 * (NEAR / 2.0).asin();
    let mut out = BTreeSet::new();
    let steps = 2000;
    for k in 0..=steps {
        let th = base - span + 2.0 * span * k as f64 / steps as f64;
        let x = (qx + th.cos(), qy + th.sin());
        if ((x.0 - ox).powi(2) + (x.1 - oy).powi(2)).sqrt() > NEAR {
            continue;
        }
        for (color, poly) in &cells {
            if inside_f64(x, poly) {
                out.insert(*color);
            }
        }
    }
    out
}

/// A rational direction at a random angle.
pub fn random_direction(rng: &mut StdRng) -> Point {
    let a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let s = 1_000_000.0;
    Point::rat((a.cos() * s).round() as i64, 1_000_000, (a.sin() * s).round() as i64, 1_000_000)
}

pub fn interior_vertices(t: &Tiling) -> Vec<usize> {
    t.vertices().iter().filter(|v| v.is_interior()).map(|v| v.id).collect()
}

fn rect_patch(rects: &[(u32, [(i64, i64); 2])], den: i64) -> Tiling {
    let mut b = RawBuilder::new();
    for (color, [(x0, y0), (x1, y1)]) in rects {
        let corners: Vec<Point> = [(*x0, *y0), (*x1, *y0), (*x1, *y1), (*x0, *y1)]
            .iter()
            .map(|&(x, y)| Point::rat(x, den, y, den))
            .collect();
        b.region(*color, &corners);
    }
    Tiling::build(b.finish(None)).expect("test fixture builds")
}

/// Four small squares about the origin, a band above them split off the
/// axis, and a cap whose lower side is tangent to the unit circle at
/// `(0, 1)`.
pub fn tangent_fixture() -> Tiling {
    rect_patch(
        &[
            (1, [(-2, 0), (0, 2)]),
            (2, [(0, 0), (2, 2)]),
            (3, [(-2, -2), (0, 0)]),
            (4, [(0, -2), (2, 0)]),
            (5, [(-2, 2), (1, 4)]),
            (6, [(1, 2), (2, 4)]),
            (7, [(-2, 4), (2, 6)]),
        ],
        4,
    )
}

/// As above, but the cap is split at the axis: `(0, 1)` becomes a vertex
/// on the circle whose borders all leave outward.
pub fn outside_vertex_fixture() -> Tiling {
    rect_patch(
        &[
            (1, [(-2, 0), (0, 2)]),
            (2, [(0, 0), (2, 2)]),
            (3, [(-2, -2), (0, 0)]),
            (4, [(0, -2), (2, 0)]),
            (5, [(-2, 2), (2, 4)]),
            (6, [(-2, 4), (0, 6)]),
            (7, [(0, 4), (2, 6)]),
        ],
        4,
    )
}

/// Smallest `k` with a proper coloring, by enumerating restricted growth
/// strings (every coloring up to renaming), along with the first proper
/// one in lexicographic order.
pub fn brute_force_chromatic(n: usize, edges: &[(usize, usize)]) -> (usize, Vec<u32>) {
    if n == 0 {
        return (0, Vec::new());
    }
    for k in 1..=n {
        let mut a = vec![0u32; n];
        if let Some(found) = rgs(0, n, k as u32, 0, &mut a, edges) {
            return (k, found);
        }
    }
    unreachable!()
}

fn rgs(i: usize, n: usize, k: u32, top: u32, a: &mut Vec<u32>, edges: &[(usize, usize)]) -> Option<Vec<u32>> {
    if i == n {
        let ok = edges.iter().all(|&(u, v)| a[u] != a[v]);
        return ok.then(|| a.clone());
    }
    for c in 1..=k.min(top + 1) {
        a[i] = c;
        if edges.iter().any(|&(u, v)| (u == i && v < i && a[v] == c) || (v == i && u < i && a[u] == c)) {
            continue;
        }
        if let Some(f) = rgs(i + 1, n, k, top.max(c), a, edges) {
            return Some(f);
        }
    }
    None
}

pub fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                e.push((u, v));
            }
        }
    }
    e
}

/// Up to `count` single-region recolorings, each copying the color of a
/// region the recolored one conflicts with.
pub fn conflicting_recolorings(t: &Tiling, rng: &mut StdRng, count: usize) -> Vec<(usize, u32, Tiling)> {
    let g: ConflictGraph = build_conflict_graph(t);
    let pairs: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .flat_map(|(u, v)| [(u, v), (v, u)])
        .filter(|&(u, v)| t.regions()[u].color != t.regions()[v].color)
        .collect();
    assert!(!pairs.is_empty());
    (0..count)
        .map(|_| {
            let (u, v) = pairs[rng.gen_range(0..pairs.len())];
            let c = t.regions()[v].color;
            (u, c, t.recolored(u, c).expect("recolor keeps geometry"))
        })
        .collect()
}

type Tri = [Point; 3];

fn area2(t: &Tri) -> polycolor::exact::FieldScalar {
    polycolor::geom::cross(&(&t[1] - &t[0]), &(&t[2] - &t[0]))
}

fn lerp(a: &Point, b: &Point, num: i64, den: i64) -> Point {
    a + &(b - a).scale(&polycolor::exact::FieldScalar::frac(num, den))
}

/// Random refinement of the unit square into at most `max` triangles by
/// interior splits and corner-to-side splits (the latter leave vertices
/// in the middle of neighboring sides).
pub fn random_triangle_patch(rng: &mut StdRng, max: usize) -> (Tiling, Vec<Tri>) {
    let p = |x, y| Point::int(x, y);
    let mut tris: Vec<Tri> = vec![[p(0, 0), p(1, 0), p(1, 1)], [p(0, 0), p(1, 1), p(0, 1)]];
    while tris.len() + 2 <= max {
        let i = rng.gen_range(0..tris.len());
        let [a, b, c] = tris.swap_remove(i);
        if rng.gen_bool(0.5) {
            let (u, v) = (rng.gen_range(1..8), rng.gen_range(1..8));
            if u + v >= 9 {
                tris.push([a, b, c]);
                continue;
            }
            // a + u/9 (b - a) + v/9 (c - a)
            let x = &(&a + &(&b - &a).scale(&polycolor::exact::FieldScalar::frac(u, 9)))
                + &(&c - &a).scale(&polycolor::exact::FieldScalar::frac(v, 9));
            tris.push([a.clone(), b.clone(), x.clone()]);
            tris.push([b, c.clone(), x.clone()]);
            tris.push([c, a, x]);
        } else {
            let m = lerp(&b, &c, rng.gen_range(1..4), 4);
            tris.push([a.clone(), b, m.clone()]);
            tris.push([a, m, c]);
        }
    }
    debug_assert!(tris.iter().all(|t| area2(t).sign() > 0));
    let mut b = RawBuilder::new();
    for (k, t) in tris.iter().enumerate() {
        b.region(k as u32 + 1, t);
    }
    let raw = b.finish(None);
    (Tiling::build_with(raw, BuildOptions { check_colors: false }).expect("triangulation builds"), tris)
}

/// Number of distinct border directions at `p` read off the polygons
/// alone; 0 when `p` is not a vertex (no side ends there, or only a
/// straight pass-through).
pub fn brute_force_degree_at(polys: &[Vec<Point>], p: &Point) -> usize {
    use polycolor::geom::{on_open_segment, same_direction};
    let mut dirs: Vec<Point> = Vec::new();
    let add = |d: Point, dirs: &mut Vec<Point>| {
        if !dirs.iter().any(|e| same_direction(e, &d)) {
            dirs.push(d);
        }
    };
    for poly in polys {
        let n = poly.len();
        for k in 0..n {
            let (a, b) = (&poly[k], &poly[(k + 1) % n]);
            if a == p {
                add(b - p, &mut dirs);
            } else if b == p {
                add(a - p, &mut dirs);
            } else if on_open_segment(p, a, b) {
                add(a - p, &mut dirs);
                add(b - p, &mut dirs);
            }
        }
    }
    let straight = dirs.len() == 2 && same_direction(&dirs[0], &-&dirs[1]);
    if straight {
        0
    } else {
        dirs.len()
    }
}

/// Degree of every corner point strictly inside the unit square.
pub fn brute_force_degrees(tris: &[Tri]) -> Vec<(Point, usize)> {
    let polys: Vec<Vec<Point>> = tris.iter().map(|t| t.to_vec()).collect();
    let zero = polycolor::exact::FieldScalar::zero();
    let one = polycolor::exact::FieldScalar::one();
    let mut pts: Vec<Point> = Vec::new();
    for t in tris {
        for q in t {
            if !pts.contains(q) && ![&q.x, &q.y].iter().any(|c| **c == zero || **c == one) {
                pts.push(q.clone());
            }
        }
    }
    pts.into_iter()
        .filter_map(|p| {
            let d = brute_force_degree_at(&polys, &p);
            (d > 0).then_some((p, d))
        })
        .collect()
}
