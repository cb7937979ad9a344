//! Unit circle about a vertex: crossings, point types, alternative arcs
//! and the audits built on them.

mod classify;
mod walk;

pub use classify::{
    alternative_arcs, classify_direction, excluded_inside, excluded_outside, AltArc, DirSign,
    PointType,
};
pub use walk::{hexagon_walk_audit, WalkReport, WalkStatus};

use std::cmp::Ordering;
use std::collections::BTreeSet;

use thiserror::Error;

use crate::exact::{FieldScalar, RationalInterval, Surd};
use crate::geom::{cross, dist_sq, dot, same_direction, BBox, Point, Segment, SurdPoint};
use crate::tiling::{CellRef, Offset, Tiling, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircleError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("angular order of two circle points not settled within the refinement budget")]
    UndecidedOrdering,
    #[error("vertex {vertex} has degree {degree}, expected 4")]
    DegreeNot4 { vertex: usize, degree: usize },
    #[error("direction is the zero vector")]
    ZeroDirection,
    #[error("point is not on the unit circle about the vertex")]
    NotOnCircle,
}

/// Starting precision for angular comparisons, doubled up to the cap.
pub const REFINE_START_BITS: u32 = 256;
pub const REFINE_MAX_BITS: u32 = 4096;

/// How a point of the circle is represented.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircleRepr {
    /// Coordinates in the field.
    Exact(Point),
    /// A root of the circle against a border translate; `root` 0 is the
    /// one nearer the border's start.
    SegmentRoot {
        border: usize,
        offset: Offset,
        root: u8,
        angle: RationalInterval,
    },
    /// Extension point off every border (only produced by rotation).
    Algebraic { angle: RationalInterval },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirclePoint {
    pub center: usize,
    pub repr: CircleRepr,
    /// Absolute coordinates.
    pub point: SurdPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CrossingKind {
    Crossing,
    Pseudo,
}

/// Where on the tiling a circle point sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Site {
    Border { border: usize, offset: Offset },
    Vertex { vertex: usize, offset: Offset },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub at: CirclePoint,
    pub kind: CrossingKind,
    pub site: Site,
    /// Cells holding the circle just before and just after the point,
    /// counter-clockwise about the center; `None` outside a patch.
    pub regions: (Option<CellRef>, Option<CellRef>),
}

/// Enclosure of the angle of `v` in radians. Only for reporting; all
/// decisions use exact predicates.
pub(crate) fn angle_enclosure(v: &SurdPoint) -> RationalInterval {
    use num_traits::FromPrimitive;
    let ex = v.x.enclosure(64);
    let ey = v.y.enclosure(64);
    let xs = [crate::exact::rational_to_f64(ex.lo()), crate::exact::rational_to_f64(ex.hi())];
    let ys = [crate::exact::rational_to_f64(ey.lo()), crate::exact::rational_to_f64(ey.hi())];
    let centre = v.y.to_f64().atan2(v.x.to_f64());
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for x in xs {
        for y in ys {
            let mut a = y.atan2(x);
            // keep the corners on the branch of the centre
            if a - centre > std::f64::consts::PI {
                a -= std::f64::consts::TAU;
            } else if centre - a > std::f64::consts::PI {
                a += std::f64::consts::TAU;
            }
            lo = lo.min(a);
            hi = hi.max(a);
        }
    }
    let shift = if centre < 0.0 { std::f64::consts::TAU } else { 0.0 };
    let pad = 1e-12;
    RationalInterval::new(
        crate::exact::Rational::from_f64(lo + shift - pad).expect("finite"),
        crate::exact::Rational::from_f64(hi + shift + pad).expect("finite"),
    )
}

fn half_plane(v: &SurdPoint) -> u8 {
    let sy = v.y.sign();
    if sy > 0 || (sy == 0 && v.x.sign() > 0) {
        0
    } else {
        1
    }
}

fn compatible(u: &SurdPoint, v: &SurdPoint) -> bool {
    match (u.radicand(), v.radicand()) {
        (Some(r), Some(s)) => r == s,
        _ => true,
    }
}

/// Sign of `cross(u, v)` for extension vectors. Vectors with different
/// radicands are distinct circle points (two border interiors can only
/// share a vertex, which is a field point), so refinement terminates in
/// theory; the budget only bounds the work.
fn cross_sign(u: &SurdPoint, v: &SurdPoint) -> Result<i32, CircleError> {
    if compatible(u, v) {
        return Ok((&(&u.x * &v.y) - &(&u.y * &v.x)).sign());
    }
    let mut bits = REFINE_START_BITS;
    while bits <= REFINE_MAX_BITS {
        let c = &(&u.x.enclosure(bits) * &v.y.enclosure(bits))
            - &(&u.y.enclosure(bits) * &v.x.enclosure(bits));
        if let Some(s) = c.strict_sign() {
            return Ok(s);
        }
        bits *= 2;
    }
    Err(CircleError::UndecidedOrdering)
}

/// Counter-clockwise angular order from the positive x axis.
pub fn angle_order(u: &SurdPoint, v: &SurdPoint) -> Result<Ordering, CircleError> {
    let (hu, hv) = (half_plane(u), half_plane(v));
    if hu != hv {
        return Ok(hu.cmp(&hv));
    }
    Ok(match cross_sign(u, v)? {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

fn lex_sign(a: i32, b: i32) -> i32 {
    if a != 0 {
        a
    } else {
        b
    }
}

/// Open wedge `from → to` (counter-clockwise) contains `w + δ·n` for
/// infinitesimal `δ > 0`; `n` breaks ties when `w` lies on a side.
pub(crate) fn wedge_contains_nudged(from: &Point, to: &Point, w: &Point, n: &Point) -> bool {
    let c_fw = lex_sign(cross(from, w).sign(), cross(from, n).sign());
    let c_wt = lex_sign(cross(w, to).sign(), cross(n, to).sign());
    if same_direction(from, to) {
        return !(c_fw == 0 && dot(from, w).sign() > 0);
    }
    match cross(from, to).sign() {
        1 => c_fw > 0 && c_wt > 0,
        -1 => c_fw > 0 || c_wt > 0,
        _ => c_fw > 0,
    }
}

/// Cell of the wedge at `v` (placed at offset `o`) containing the
/// nudged direction.
pub(crate) fn wedge_cell(v: &Vertex, o: Offset, w: &Point, n: &Point) -> Option<CellRef> {
    let k = v.degree();
    (0..k)
        .find(|&i| wedge_contains_nudged(&v.incident[i].dir, &v.incident[(i + 1) % k].dir, w, n))
        .and_then(|i| v.wedges[i].map(|c| c.shifted(o)))
}

pub(crate) fn center_vertex(t: &Tiling, id: usize) -> Result<&Vertex, CircleError> {
    t.vertex(id).map_err(|_| CircleError::UnknownVertex(id))
}

/// Border translates whose segments may meet the unit circle about `o`.
pub(crate) fn borders_near(t: &Tiling, o: &Point) -> Vec<(usize, Offset, Segment)> {
    let one = FieldScalar::one();
    let window = BBox { min: o.clone(), max: o.clone() }.expand(&one);
    let mut out = Vec::new();
    for b in t.borders() {
        let bb = BBox::of_points([&b.segment.p, &b.segment.q]).expect("two points");
        for off in t.offsets_meeting(&bb, &window) {
            out.push((b.id, off, b.segment.translate(&t.offset_vec(off))));
        }
    }
    out
}

/// Points of the open segment at unit distance from `o`, as `(t, x)`
/// with `t` the segment parameter; a tangency yields one point.
pub(crate) fn segment_circle_roots(s: &Segment, o: &Point) -> Vec<(Surd, SurdPoint, bool)> {
    let d = s.dir();
    let p = &s.p - o;
    let a = d.norm_sq();
    let b = dot(&p, &d);
    let c = &p.norm_sq() - &FieldScalar::one();
    let disc = &b.square() - &(&a * &c);
    let ainv = a.inv().expect("nondegenerate segment");
    let t0 = &(-&b) * &ainv;
    let mut out = Vec::new();
    let in_open = |t: &Surd| t.sign() > 0 && (&Surd::field(FieldScalar::one()) - t).sign() > 0;
    match disc.sign() {
        0 => {
            let t = Surd::field(t0.clone());
            if in_open(&t) {
                let x = &s.p + &d.scale(&t0);
                out.push((t, SurdPoint::from_point(&x), true));
            }
        }
        1 => {
            for sgn in [-1i64, 1] {
                let k = ainv.scale(&crate::exact::Rational::from_integer(sgn.into()));
                let t = Surd::new(t0.clone(), k.clone(), disc.clone());
                if in_open(&t) {
                    let foot = &s.p + &d.scale(&t0);
                    let x = SurdPoint::new(
                        Surd::new(foot.x.clone(), &d.x * &k, disc.clone()),
                        Surd::new(foot.y.clone(), &d.y * &k, disc.clone()),
                    );
                    out.push((t, x, false));
                }
            }
        }
        _ => {}
    }
    out
}

/// A vertex on the circle is a crossing when its borders reach both
/// sides of the circle.
pub(crate) fn vertex_on_circle_kind(v: &Vertex, at: &Point, o: &Point) -> CrossingKind {
    let one = FieldScalar::one();
    let mut inside = false;
    let mut outside = false;
    for inc in &v.incident {
        let far = at + &inc.dir;
        let (m, _) = crate::geom::point_segment_closest(o, at, &far);
        inside |= m.cmp_value(&one) == Ordering::Less;
        outside |= dist_sq(o, &far).cmp_value(&one) == Ordering::Greater;
    }
    if inside && outside {
        CrossingKind::Crossing
    } else {
        CrossingKind::Pseudo
    }
}

fn insertion_sort<T>(
    items: Vec<T>,
    mut less: impl FnMut(&T, &T) -> Result<Ordering, CircleError>,
) -> Result<Vec<T>, CircleError> {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for it in items {
        let mut pos = out.len();
        while pos > 0 && less(&it, &out[pos - 1])? == Ordering::Less {
            pos -= 1;
        }
        out.insert(pos, it);
    }
    Ok(out)
}

/// Every border point and vertex of the tiling on the unit circle
/// about vertex `o`, sorted by angle.
pub fn unit_circle_crossings(t: &Tiling, o: usize) -> Result<Vec<Crossing>, CircleError> {
    center_vertex(t, o)?;
    let center = t.vertices()[o].point.clone();
    let one = FieldScalar::one();
    let mut found = Vec::new();
    for (bid, off, seg) in borders_near(t, &center) {
        let border = &t.borders()[bid];
        let left = Some(border.left.shifted(off));
        let right = border.right.map(|c| c.shifted(off));
        let roots = segment_circle_roots(&seg, &center);
        let two = roots.len() == 2;
        for (i, (_, x, tangent)) in roots.into_iter().enumerate() {
            let rel = x.sub_point(&center);
            let repr = match x.as_point() {
                Some(p) => CircleRepr::Exact(p),
                None => CircleRepr::SegmentRoot {
                    border: bid,
                    offset: off,
                    root: if two { i as u8 } else { 0 },
                    angle: angle_enclosure(&rel),
                },
            };
            // the cell on the +tangent side follows the point
            let ahead_left = rel.dot_point(&seg.dir()).sign() > 0;
            let regions = if tangent {
                // both circle arcs stay on the side of the center
                let c = if crate::geom::orient(&seg.p, &seg.q, &center) > 0 { left } else { right };
                (c, c)
            } else if ahead_left {
                (right, left)
            } else {
                (left, right)
            };
            let kind = if tangent { CrossingKind::Pseudo } else { CrossingKind::Crossing };
            found.push(Crossing {
                at: CirclePoint { center: o, repr, point: x },
                kind,
                site: Site::Border { border: bid, offset: off },
                regions,
            });
        }
    }
    let window = BBox { min: center.clone(), max: center.clone() }.expand(&one);
    for v in t.vertices() {
        let pb = BBox { min: v.point.clone(), max: v.point.clone() };
        for off in t.offsets_meeting(&pb, &window) {
            let at = t.vertex_point(v.id, off);
            if dist_sq(&at, &center) != one {
                continue;
            }
            let toward = &center - &at;
            let tau = toward.perp();
            // ccw about the center runs along -perp(center - at)
            let after = wedge_cell(v, off, &(-&tau), &toward);
            let before = wedge_cell(v, off, &tau, &toward);
            found.push(Crossing {
                at: CirclePoint { center: o, repr: CircleRepr::Exact(at.clone()), point: SurdPoint::from_point(&at) },
                kind: vertex_on_circle_kind(v, &at, &center),
                site: Site::Vertex { vertex: v.id, offset: off },
                regions: (before, after),
            });
        }
    }
    insertion_sort(found, |a, b| {
        angle_order(&a.at.point.sub_point(&center), &b.at.point.sub_point(&center))
    })
}

/// A color rule broken at a crossing on the unit circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditViolation {
    /// A cell along the circle at the crossing uses a color present at
    /// the center.
    ColorAtCenter { crossing: usize, cell: CellRef, color: u32 },
    /// Both cells at the crossing share a color.
    SamePair { crossing: usize, color: u32 },
}

/// Checks every crossing on the unit circle about `o`: the cells on
/// either side avoid the colors at `o` and differ from each other.
/// Pseudo-crossings are not checked.
pub fn audit_crossing_colors(t: &Tiling, o: usize) -> Result<Vec<AuditViolation>, CircleError> {
    let center = center_vertex(t, o)?;
    let at_center: BTreeSet<u32> = center.wedges.iter().flatten().map(|&c| t.color(c)).collect();
    let mut out = Vec::new();
    for (i, c) in unit_circle_crossings(t, o)?.iter().enumerate() {
        if c.kind != CrossingKind::Crossing {
            continue;
        }
        let cells: Vec<CellRef> = [c.regions.0, c.regions.1].into_iter().flatten().collect();
        for &cell in &cells {
            let color = t.color(cell);
            if at_center.contains(&color) {
                out.push(AuditViolation::ColorAtCenter { crossing: i, cell, color });
            }
        }
        if let [a, b] = cells[..] {
            if t.color(a) == t.color(b) {
                out.push(AuditViolation::SamePair { crossing: i, color: t.color(a) });
            }
        }
    }
    Ok(out)
}
