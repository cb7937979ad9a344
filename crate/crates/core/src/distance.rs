//! Exact unit-distance questions between polygons and owned cells.

use std::cmp::Ordering;

use thiserror::Error;

use crate::exact::{FieldScalar, Surd};
use crate::geom::{
    cross, dist_sq, dot, locate_in_polygon, locate_surd_in_polygon, on_closed_segment, on_open_segment_surd,
    point_segment_closest, segments_cross_properly, segments_intersect, Location, Point, Segment, SurdPoint,
};
use crate::tiling::{CellRef, Tiling};

pub fn squared_distance(p: &Point, q: &Point) -> FieldScalar {
    dist_sq(p, q)
}

/// Largest squared distance between two vertices.
pub fn diameter_sq(poly: &[Point]) -> FieldScalar {
    let mut best = FieldScalar::zero();
    for i in 0..poly.len() {
        for j in (i + 1)..poly.len() {
            let d = dist_sq(&poly[i], &poly[j]);
            if d.cmp_value(&best) == Ordering::Greater {
                best = d;
            }
        }
    }
    best
}

/// Range of squared distances realized between two closed sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistIntervalSq {
    pub dmin_sq: FieldScalar,
    pub dmax_sq: FieldScalar,
}

impl DistIntervalSq {
    /// Unit distance lies strictly inside the range.
    pub fn straddles_one(&self) -> bool {
        let one = FieldScalar::one();
        self.dmin_sq.cmp_value(&one) == Ordering::Less && self.dmax_sq.cmp_value(&one) == Ordering::Greater
    }

    /// Unit distance cannot be realized at all.
    pub fn excludes_one(&self) -> bool {
        let one = FieldScalar::one();
        self.dmin_sq.cmp_value(&one) == Ordering::Greater || self.dmax_sq.cmp_value(&one) == Ordering::Less
    }
}

/// A closed convex-or-simple piece of the plane.
#[derive(Clone, Copy, Debug)]
enum Shape<'a> {
    Poly(&'a [Point]),
    Seg(&'a Point, &'a Point),
    Pt(&'a Point),
}

impl<'a> Shape<'a> {
    fn corners(&self) -> Vec<&'a Point> {
        match *self {
            Shape::Poly(p) => p.iter().collect(),
            Shape::Seg(a, b) => vec![a, b],
            Shape::Pt(p) => vec![p],
        }
    }

    fn edges(&self) -> Vec<(&'a Point, &'a Point)> {
        match *self {
            Shape::Poly(p) => (0..p.len()).map(|i| (&p[i], &p[(i + 1) % p.len()])).collect(),
            Shape::Seg(a, b) => vec![(a, b)],
            Shape::Pt(p) => vec![(p, p)],
        }
    }

    fn contains_closed(&self, q: &Point) -> bool {
        match *self {
            Shape::Poly(p) => locate_in_polygon(q, p) != Location::Outside,
            Shape::Seg(a, b) => on_closed_segment(q, a, b),
            Shape::Pt(p) => p == q,
        }
    }

    /// A point in the relative interior used to pull boundary points inward.
    fn anchor(&self) -> Point {
        match *self {
            Shape::Poly(p) => {
                let k = FieldScalar::from_int(p.len() as i64).inv().expect("nonempty");
                let mut acc = Point::origin();
                for q in p {
                    acc = &acc + q;
                }
                acc.scale(&k)
            }
            Shape::Seg(a, b) => a.midpoint(b),
            Shape::Pt(p) => p.clone(),
        }
    }

    fn contains_relint_surd(&self, q: &SurdPoint) -> bool {
        match *self {
            Shape::Poly(p) => locate_surd_in_polygon(q, p) == Location::Inside,
            Shape::Seg(a, b) => on_open_segment_surd(q, a, b),
            Shape::Pt(p) => q.as_point().as_ref() == Some(p),
        }
    }
}

/// Some common point of two closed shapes.
fn common_point(a: Shape, b: Shape) -> Option<Point> {
    for p in a.corners() {
        if b.contains_closed(p) {
            return Some(p.clone());
        }
    }
    for p in b.corners() {
        if a.contains_closed(p) {
            return Some(p.clone());
        }
    }
    for (p, q) in a.edges() {
        for (r, s) in b.edges() {
            if p != q && r != s && segments_cross_properly(p, q, r, s) {
                let d = q - p;
                let e = s - r;
                let t = &cross(&(r - p), &e) / &cross(&d, &e);
                return Some(p + &d.scale(&t));
            }
        }
    }
    None
}

struct Extremes {
    min: (FieldScalar, Point, Point),
    max: (FieldScalar, Point, Point),
}

fn extremes(a: Shape, b: Shape) -> Extremes {
    let mut max: Option<(FieldScalar, Point, Point)> = None;
    for p in a.corners() {
        for q in b.corners() {
            let d = dist_sq(p, q);
            if max.as_ref().is_none_or(|m| d.cmp_value(&m.0) == Ordering::Greater) {
                max = Some((d, p.clone(), q.clone()));
            }
        }
    }
    let max = max.expect("nonempty shapes");
    if let Some(c) = common_point(a, b) {
        return Extremes { min: (FieldScalar::zero(), c.clone(), c), max };
    }
    let mut min: Option<(FieldScalar, Point, Point)> = None;
    let mut offer = |d: FieldScalar, p: Point, q: Point| {
        if min.as_ref().is_none_or(|m| d.cmp_value(&m.0) == Ordering::Less) {
            min = Some((d, p, q));
        }
    };
    for p in a.corners() {
        for (r, s) in b.edges() {
            let (d, f) = point_segment_closest(p, r, s);
            offer(d, p.clone(), f);
        }
    }
    for q in b.corners() {
        for (r, s) in a.edges() {
            let (d, f) = point_segment_closest(q, r, s);
            offer(d, f, q.clone());
        }
    }
    Extremes { min: min.expect("nonempty shapes"), max }
}

/// Squared distance range between the closures of two simple polygons.
pub fn distance_interval_sq(a: &[Point], b: &[Point]) -> DistIntervalSq {
    let e = extremes(Shape::Poly(a), Shape::Poly(b));
    DistIntervalSq { dmin_sq: e.min.0, dmax_sq: e.max.0 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConflictMode {
    /// Only the open interiors carry the region's color.
    OpenRegions,
    /// Interiors plus the boundary faces assigned by the ownership rule.
    OwnedCells,
}

/// A region placed in the plane with its owned boundary faces.
#[derive(Clone, Debug)]
pub struct OwnedCell {
    pub cell: CellRef,
    pub color: u32,
    pub polygon: Vec<Point>,
    pub segments: Vec<Segment>,
    pub points: Vec<Point>,
    source: u64,
}

impl OwnedCell {
    pub fn from_tiling(t: &Tiling, c: CellRef) -> OwnedCell {
        let shift = t.offset_vec(c.offset);
        let faces = t.owned_faces(c.region);
        OwnedCell {
            cell: c,
            color: t.color(c),
            polygon: t.cell_polygon(c),
            segments: faces.segments.iter().map(|s| s.translate(&shift)).collect(),
            points: faces.points.iter().map(|p| p + &shift).collect(),
            source: t.uid(),
        }
    }

    /// Same cell with a different color (for what-if checks).
    pub fn with_color(mut self, color: u32) -> OwnedCell {
        self.color = color;
        self
    }

    fn faces(&self, mode: ConflictMode) -> Vec<(Face, Shape<'_>)> {
        let mut out = vec![(Face::Interior, Shape::Poly(&self.polygon))];
        if mode == ConflictMode::OwnedCells {
            for (i, s) in self.segments.iter().enumerate() {
                out.push((Face::Segment(i), Shape::Seg(&s.p, &s.q)));
            }
            for (i, p) in self.points.iter().enumerate() {
                out.push((Face::Point(i), Shape::Pt(p)));
            }
        }
        out
    }
}

/// Which relatively open face of an owned cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Interior,
    Segment(usize),
    Point(usize),
}

/// A unit-distance pair between two cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictWitness {
    pub cells: (CellRef, CellRef),
    pub colors: (u32, u32),
    pub faces: (Face, Face),
    /// Exact points, one in each face; absent only when no exact pair
    /// could be located (non-convex faces).
    pub points: Option<(SurdPoint, SurdPoint)>,
}

impl ConflictWitness {
    /// The stated pair lies at squared distance exactly 1.
    pub fn recheck(&self) -> bool {
        match &self.points {
            Some((x, y)) => y.sub(x).norm_sq() == Surd::field(FieldScalar::one()),
            None => false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("cells come from different tilings")]
    CellsNotComparable,
}

/// Decides whether the two cells contain points exactly one apart; for
/// `a == b` the pairs come from the same cell.
pub fn cell_conflict(
    a: &OwnedCell,
    b: &OwnedCell,
    mode: ConflictMode,
) -> Result<Option<ConflictWitness>, DistanceError> {
    if a.source != b.source {
        return Err(DistanceError::CellsNotComparable);
    }
    let whole = extremes(Shape::Poly(&a.polygon), Shape::Poly(&b.polygon));
    let one = FieldScalar::one();
    if whole.min.0.cmp_value(&one) == Ordering::Greater || whole.max.0.cmp_value(&one) == Ordering::Less {
        return Ok(None);
    }
    let same = a.cell == b.cell;
    let fa = a.faces(mode);
    let fb = b.faces(mode);
    for (i, (face_a, sa)) in fa.iter().enumerate() {
        for (j, (face_b, sb)) in fb.iter().enumerate() {
            if same && j < i {
                continue;
            }
            let ex = if i == 0 && j == 0 { whole.clone_ref() } else { extremes(*sa, *sb) };
            if let Some(points) = face_pair_conflict(*sa, *sb, &ex) {
                return Ok(Some(ConflictWitness {
                    cells: (a.cell, b.cell),
                    colors: (a.color, b.color),
                    faces: (*face_a, *face_b),
                    points,
                }));
            }
        }
    }
    Ok(None)
}

impl Extremes {
    fn clone_ref(&self) -> Extremes {
        Extremes { min: self.min.clone(), max: self.max.clone() }
    }
}

/// `Some(points)` when the relatively open faces realize distance 1.
fn face_pair_conflict(a: Shape, b: Shape, ex: &Extremes) -> Option<Option<(SurdPoint, SurdPoint)>> {
    let one = FieldScalar::one();
    let lt = ex.min.0.cmp_value(&one) == Ordering::Less;
    let gt = ex.max.0.cmp_value(&one) == Ordering::Greater;
    match (a, b) {
        (Shape::Pt(p), Shape::Pt(q)) => {
            (dist_sq(p, q) == one).then(|| Some((SurdPoint::from_point(p), SurdPoint::from_point(q))))
        }
        (Shape::Pt(p), Shape::Seg(s, t)) => point_segment_root(p, s, t).map(|y| Some((SurdPoint::from_point(p), y))),
        (Shape::Seg(s, t), Shape::Pt(p)) => point_segment_root(p, s, t).map(|y| Some((y, SurdPoint::from_point(p)))),
        (Shape::Seg(p, q), Shape::Seg(r, s)) => {
            if lt && gt {
                return Some(interpolate(a, b, ex));
            }
            parallel_unit_pair(p, q, r, s).map(Some)
        }
        _ => (lt && gt).then(|| interpolate(a, b, ex)),
    }
}

/// A point of the open segment `(s, t)` at distance exactly 1 from `p`.
fn point_segment_root(p: &Point, s: &Point, t: &Point) -> Option<SurdPoint> {
    let d = t - s;
    let w = s - p;
    let qa = d.norm_sq();
    let qb = dot(&w, &d);
    let qc = &w.norm_sq() - &FieldScalar::one();
    let disc = &qb.square() - &(&qa * &qc);
    if disc.sign() < 0 {
        return None;
    }
    let inv_a = qa.inv().expect("nondegenerate segment");
    for sgn in [-1i64, 1] {
        let root = Surd::new(
            &(-&qb) * &inv_a,
            &inv_a * &FieldScalar::from_int(sgn),
            disc.clone(),
        );
        let above = root.sign() > 0;
        let below = (&root - &Surd::field(FieldScalar::one())).sign() < 0;
        if above && below {
            return Some(along(s, &d, &root));
        }
    }
    None
}

fn along(base: &Point, d: &Point, t: &Surd) -> SurdPoint {
    SurdPoint::new(
        &Surd::field(base.x.clone()) + &t.scale(&d.x),
        &Surd::field(base.y.clone()) + &t.scale(&d.y),
    )
}

/// Parallel open segments at perpendicular distance 1 with overlapping
/// projections.
fn parallel_unit_pair(p: &Point, q: &Point, r: &Point, s: &Point) -> Option<(SurdPoint, SurdPoint)> {
    let d = q - p;
    if !cross(&d, &(s - r)).is_zero() {
        return None;
    }
    let len = d.norm_sq();
    let h_num = cross(&d, &(r - p));
    if h_num.square() != len {
        return None;
    }
    let inv = len.inv().expect("nondegenerate segment");
    let tr = &dot(&(r - p), &d) * &inv;
    let ts = &dot(&(s - p), &d) * &inv;
    let lo = FieldScalar::zero().max_value(tr.min_value(&ts)).clone();
    let hi = FieldScalar::one().min_value(tr.max_value(&ts)).clone();
    if lo.cmp_value(&hi) != Ordering::Less {
        return None;
    }
    let mid = &(&lo + &hi) * &FieldScalar::frac(1, 2);
    let x = p + &d.scale(&mid);
    // foot of x on the other line
    let e = s - r;
    let u = &dot(&(&x - r), &e) / &e.norm_sq();
    let y = r + &e.scale(&u);
    Some((SurdPoint::from_point(&x), SurdPoint::from_point(&y)))
}

/// Moves `p` a fraction `eps` of the way toward `anchor`.
fn inset(p: &Point, anchor: &Point, eps: &FieldScalar) -> Point {
    p + &(anchor - p).scale(eps)
}

/// Exact pair on a straight path between a near pair (< 1) and a far pair
/// (> 1), both pulled into the relative interiors.
fn interpolate(a: Shape, b: Shape, ex: &Extremes) -> Option<(SurdPoint, SurdPoint)> {
    let one = FieldScalar::one();
    let (ca, cb) = (a.anchor(), b.anchor());
    let pull = |p: &Point, q: &Point, want: Ordering| -> Option<(Point, Point)> {
        let mut eps = FieldScalar::frac(1, 4);
        let half = FieldScalar::frac(1, 2);
        for _ in 0..80 {
            let x = inset(p, &ca, &eps);
            let y = inset(q, &cb, &eps);
            if dist_sq(&x, &y).cmp_value(&one) == want {
                return Some((x, y));
            }
            eps = &eps * &half;
        }
        None
    };
    let (x0, y0) = pull(&ex.min.1, &ex.min.2, Ordering::Less)?;
    let (x1, y1) = pull(&ex.max.1, &ex.max.2, Ordering::Greater)?;
    let d0 = &y0 - &x0;
    let e = &(&y1 - &x1) - &d0;
    let qa = e.norm_sq();
    let qb = dot(&d0, &e);
    let qc = &d0.norm_sq() - &one;
    let disc = &qb.square() - &(&qa * &qc);
    let inv_a = qa.inv()?;
    let t = Surd::new(&(-&qb) * &inv_a, inv_a, disc);
    let x = along(&x0, &(&x1 - &x0), &t);
    let y = along(&y0, &(&y1 - &y0), &t);
    let exact = y.sub(&x).norm_sq() == Surd::field(one);
    (exact && a.contains_relint_surd(&x) && b.contains_relint_surd(&y)).then_some((x, y))
}

/// Intervals always contain the unit distance test as a closed-form
/// criterion; exposed for sensitivity checks.
pub fn open_region_conflict(a: &[Point], b: &[Point], same: bool) -> bool {
    if same {
        return diameter_sq(a).cmp_value(&FieldScalar::one()) == Ordering::Greater;
    }
    distance_interval_sq(a, b).straddles_one()
}

/// Closed segments meet.
pub fn segments_touch(a: &Segment, b: &Segment) -> bool {
    segments_intersect(&a.p, &a.q, &b.p, &b.q)
}
