//! Points, directions and exact sign predicates in the plane.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::exact::{FieldScalar, Surd};

/// A point (or free vector) with coordinates in Q(√2, √3).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: FieldScalar,
    pub y: FieldScalar,
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x.to_f64(), self.y.to_f64())
    }
}

impl Point {
    pub fn new(x: FieldScalar, y: FieldScalar) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(FieldScalar::zero(), FieldScalar::zero())
    }

    /// Rational point `(xn/xd, yn/yd)`.
    pub fn rat(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(FieldScalar::frac(xn, xd), FieldScalar::frac(yn, yd))
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(FieldScalar::from_int(x), FieldScalar::from_int(y))
    }

    pub fn scale(&self, k: &FieldScalar) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn norm_sq(&self) -> FieldScalar {
        dot(self, self)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// Counter-clockwise quarter turn.
    pub fn perp(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let half = FieldScalar::frac(1, 2);
        (self + other).scale(&half)
    }

    /// Rotation by 60°·k counter-clockwise about `center`.
    pub fn rotate60(&self, center: &Point, k: u32) -> Point {
        let v = self - center;
        let (c, s) = rot60(k);
        let x = &(&v.x * &c) - &(&v.y * &s);
        let y = &(&v.x * &s) + &(&v.y * &c);
        center + &Point::new(x, y)
    }
}

/// `(cos 60k°, sin 60k°)`, all in the field.
pub fn rot60(k: u32) -> (FieldScalar, FieldScalar) {
    let half = FieldScalar::frac(1, 2);
    let h3 = FieldScalar::sqrt3().scale(&crate::exact::Rational::new(1.into(), 2.into()));
    let one = FieldScalar::one();
    match k % 6 {
        0 => (one, FieldScalar::zero()),
        1 => (half, h3),
        2 => (-half, h3),
        3 => (-one, FieldScalar::zero()),
        4 => (-half, -h3),
        _ => (half, -h3),
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.to_f64();
        write!(f, "({x:.6}, {y:.6})")
    }
}

impl<'a> Add<&'a Point> for &'a Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Sub<&'a Point> for &'a Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

pub fn dot(u: &Point, v: &Point) -> FieldScalar {
    &(&u.x * &v.x) + &(&u.y * &v.y)
}

pub fn cross(u: &Point, v: &Point) -> FieldScalar {
    &(&u.x * &v.y) - &(&u.y * &v.x)
}

/// Sign of the turn `a → b → c`: +1 left, −1 right, 0 collinear.
pub fn orient(a: &Point, b: &Point, c: &Point) -> i32 {
    cross(&(b - a), &(c - a)).sign()
}

pub fn dist_sq(p: &Point, q: &Point) -> FieldScalar {
    (p - q).norm_sq()
}

/// A nonzero direction vector; predicates are homogeneous so it is never
/// normalized.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Direction(Point);

impl Direction {
    pub fn new(dx: FieldScalar, dy: FieldScalar) -> Option<Self> {
        let p = Point::new(dx, dy);
        (!p.is_zero()).then_some(Direction(p))
    }

    pub fn from_vec(v: Point) -> Option<Self> {
        (!v.is_zero()).then_some(Direction(v))
    }

    pub fn vec(&self) -> &Point {
        &self.0
    }

    pub fn dx(&self) -> &FieldScalar {
        &self.0.x
    }

    pub fn dy(&self) -> &FieldScalar {
        &self.0.y
    }
}

/// Closed segment `p → q`, `p ≠ q`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Self {
        debug_assert!(p != q, "degenerate segment");
        Segment { p, q }
    }

    pub fn dir(&self) -> Point {
        &self.q - &self.p
    }

    pub fn translate(&self, t: &Point) -> Segment {
        Segment::new(&self.p + t, &self.q + t)
    }

    pub fn reversed(&self) -> Segment {
        Segment::new(self.q.clone(), self.p.clone())
    }
}

/// `p` lies on the line through `a, b` strictly between them.
pub fn on_open_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == 0 && dot(&(p - a), &(b - a)).sign() > 0 && dot(&(p - b), &(a - b)).sign() > 0
}

pub fn on_closed_segment(p: &Point, a: &Point, b: &Point) -> bool {
    p == a || p == b || on_open_segment(p, a, b)
}

/// Closed segments `[a, b]` and `[c, d]` share a point (either may be
/// degenerate).
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if a == b {
        return on_closed_segment(a, c, d);
    }
    if c == d {
        return on_closed_segment(c, a, b);
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && on_closed_segment(c, a, b))
        || (o2 == 0 && on_closed_segment(d, a, b))
        || (o3 == 0 && on_closed_segment(a, c, d))
        || (o4 == 0 && on_closed_segment(b, c, d))
}

/// Open segments cross at a single interior point of both.
pub fn segments_cross_properly(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0
}

/// Squared distance from `p` to closed segment `[a, b]` and the closest
/// point.
pub fn point_segment_closest(p: &Point, a: &Point, b: &Point) -> (FieldScalar, Point) {
    if a == b {
        return (dist_sq(p, a), a.clone());
    }
    let d = b - a;
    let t_num = dot(&(p - a), &d);
    if t_num.sign() <= 0 {
        return (dist_sq(p, a), a.clone());
    }
    let len = d.norm_sq();
    if (&t_num - &len).sign() >= 0 {
        return (dist_sq(p, b), b.clone());
    }
    let t = &t_num / &len;
    let foot = a + &d.scale(&t);
    (dist_sq(p, &foot), foot)
}

/// Total angular order of nonzero vectors, measured counter-clockwise from
/// the positive x axis in `[0, 2π)`.
pub fn angle_cmp(u: &Point, v: &Point) -> Ordering {
    let hu = half_plane(u);
    let hv = half_plane(v);
    if hu != hv {
        return hu.cmp(&hv);
    }
    match cross(u, v).sign() {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

fn half_plane(u: &Point) -> u8 {
    let sy = u.y.sign();
    if sy > 0 || (sy == 0 && u.x.sign() > 0) {
        0
    } else {
        1
    }
}

/// Same direction (positive multiples).
pub fn same_direction(u: &Point, v: &Point) -> bool {
    cross(u, v).sign() == 0 && dot(u, v).sign() > 0
}

/// Open wedge swept counter-clockwise from `from` to `to` contains `w`.
/// When `from` and `to` coincide in direction the wedge is the full turn
/// minus that ray.
pub fn wedge_contains(from: &Point, to: &Point, w: &Point) -> bool {
    let c_fw = cross(from, w).sign();
    let c_wt = cross(w, to).sign();
    let c_ft = cross(from, to).sign();
    if same_direction(from, to) {
        return !same_direction(from, w);
    }
    if c_ft > 0 {
        c_fw > 0 && c_wt > 0
    } else if c_ft < 0 {
        c_fw > 0 || c_wt > 0
    } else {
        // straight angle
        c_fw > 0
    }
}

/// Sign of `cross(e, w)` for `w = (δ, 1)` with infinitesimal `δ > 0`,
/// the direction "straight up, tipped toward the right".
pub fn cross_with_up_right(e: &Point) -> i32 {
    let sx = e.x.sign();
    if sx != 0 {
        sx
    } else {
        -e.y.sign()
    }
}

/// Wedge test against the perturbed up-right direction.
pub fn wedge_contains_up_right(from: &Point, to: &Point) -> bool {
    let c_fw = cross_with_up_right(from);
    let c_wt = -cross_with_up_right(to);
    if same_direction(from, to) {
        return true;
    }
    match cross(from, to).sign() {
        1 => c_fw > 0 && c_wt > 0,
        -1 => c_fw > 0 || c_wt > 0,
        _ => c_fw > 0,
    }
}

/// Twice the signed area of a polygon (positive for counter-clockwise).
pub fn signed_area2(poly: &[Point]) -> FieldScalar {
    let n = poly.len();
    let mut acc = FieldScalar::zero();
    for i in 0..n {
        acc = &acc + &cross(&poly[i], &poly[(i + 1) % n]);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Exact point-in-polygon classification by winding number.
pub fn locate_in_polygon(p: &Point, poly: &[Point]) -> Location {
    let n = poly.len();
    let mut wn = 0i32;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if on_closed_segment(p, a, b) {
            return Location::Boundary;
        }
        let ay = a.y.cmp_value(&p.y);
        let by = b.y.cmp_value(&p.y);
        if ay != Ordering::Greater {
            if by == Ordering::Greater && orient(a, b, p) > 0 {
                wn += 1;
            }
        } else if by != Ordering::Greater && orient(a, b, p) < 0 {
            wn -= 1;
        }
    }
    if wn != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Simple-polygon test: consecutive points distinct, no self contact
/// beyond shared endpoints of neighbouring edges, nonzero area.
pub fn is_simple_polygon(poly: &[Point]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    for i in 0..n {
        if poly[i] == poly[(i + 1) % n] {
            return false;
        }
    }
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        for j in (i + 1)..n {
            let c = &poly[j];
            let d = &poly[(j + 1) % n];
            let adjacent_next = j == i + 1;
            let adjacent_prev = i == 0 && j == n - 1;
            if adjacent_next {
                // share b == c; must not fold back along the same line
                if orient(a, b, d) == 0 && dot(&(a - b), &(d - b)).sign() > 0 {
                    return false;
                }
            } else if adjacent_prev {
                if orient(c, d, b) == 0 && dot(&(c - a), &(b - a)).sign() > 0 {
                    return false;
                }
            } else if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    signed_area2(poly).sign() != 0
}

/// Exact bounding box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of_points<'a, I: IntoIterator<Item = &'a Point>>(pts: I) -> Option<BBox> {
        let mut it = pts.into_iter();
        let first = it.next()?;
        let mut min = first.clone();
        let mut max = first.clone();
        for p in it {
            if p.x.cmp_value(&min.x) == Ordering::Less {
                min.x = p.x.clone();
            }
            if p.y.cmp_value(&min.y) == Ordering::Less {
                min.y = p.y.clone();
            }
            if p.x.cmp_value(&max.x) == Ordering::Greater {
                max.x = p.x.clone();
            }
            if p.y.cmp_value(&max.y) == Ordering::Greater {
                max.y = p.y.clone();
            }
        }
        Some(BBox { min, max })
    }

    pub fn translate(&self, t: &Point) -> BBox {
        BBox {
            min: &self.min + t,
            max: &self.max + t,
        }
    }

    /// Closed boxes intersect.
    pub fn intersects(&self, o: &BBox) -> bool {
        self.min.x.cmp_value(&o.max.x) != Ordering::Greater
            && o.min.x.cmp_value(&self.max.x) != Ordering::Greater
            && self.min.y.cmp_value(&o.max.y) != Ordering::Greater
            && o.min.y.cmp_value(&self.max.y) != Ordering::Greater
    }

    pub fn expand(&self, m: &FieldScalar) -> BBox {
        BBox {
            min: Point::new(&self.min.x - m, &self.min.y - m),
            max: Point::new(&self.max.x + m, &self.max.y + m),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.min.x.cmp_value(&p.x) != Ordering::Greater
            && p.x.cmp_value(&self.max.x) != Ordering::Greater
            && self.min.y.cmp_value(&p.y) != Ordering::Greater
            && p.y.cmp_value(&self.max.y) != Ordering::Greater
    }

    /// Lower bound on the squared distance between boxes (0 if they
    /// touch), exact.
    pub fn gap_sq(&self, o: &BBox) -> FieldScalar {
        let gx = axis_gap(&self.min.x, &self.max.x, &o.min.x, &o.max.x);
        let gy = axis_gap(&self.min.y, &self.max.y, &o.min.y, &o.max.y);
        &gx.square() + &gy.square()
    }
}

fn axis_gap(a0: &FieldScalar, a1: &FieldScalar, b0: &FieldScalar, b1: &FieldScalar) -> FieldScalar {
    let d1 = b0 - a1;
    if d1.sign() > 0 {
        return d1;
    }
    let d2 = a0 - b1;
    if d2.sign() > 0 {
        return d2;
    }
    FieldScalar::zero()
}

/// A point of the plane whose coordinates lie in a quadratic extension
/// `Q(√2, √3)(√r)`; both coordinates share the radicand.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SurdPoint {
    pub x: Surd,
    pub y: Surd,
}

impl SurdPoint {
    pub fn new(x: Surd, y: Surd) -> Self {
        SurdPoint { x, y }
    }

    pub fn from_point(p: &Point) -> Self {
        SurdPoint::new(Surd::field(p.x.clone()), Surd::field(p.y.clone()))
    }

    /// The exact field point, when both coordinates are in the field.
    pub fn as_point(&self) -> Option<Point> {
        Some(Point::new(self.x.as_field()?.clone(), self.y.as_field()?.clone()))
    }

    pub fn sub_point(&self, p: &Point) -> SurdPoint {
        SurdPoint::new(
            &self.x - &Surd::field(p.x.clone()),
            &self.y - &Surd::field(p.y.clone()),
        )
    }

    pub fn add_point(&self, p: &Point) -> SurdPoint {
        SurdPoint::new(
            &self.x + &Surd::field(p.x.clone()),
            &self.y + &Surd::field(p.y.clone()),
        )
    }

    pub fn sub(&self, o: &SurdPoint) -> SurdPoint {
        SurdPoint::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn norm_sq(&self) -> Surd {
        &self.x.square() + &self.y.square()
    }

    /// Dot product with a field vector.
    pub fn dot_point(&self, v: &Point) -> Surd {
        &self.x.scale(&v.x) + &self.y.scale(&v.y)
    }

    /// `cross(v, self)` for a field vector `v`.
    pub fn cross_from(&self, v: &Point) -> Surd {
        &self.y.scale(&v.x) - &self.x.scale(&v.y)
    }

    pub fn rotate60(&self, center: &Point, k: u32) -> SurdPoint {
        let v = self.sub_point(center);
        let (c, s) = rot60(k);
        let x = &v.x.scale(&c) - &v.y.scale(&s);
        let y = &v.x.scale(&s) + &v.y.scale(&c);
        SurdPoint::new(x, y).add_point(center)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    pub fn radicand(&self) -> Option<&crate::exact::FieldScalar> {
        if !self.x.is_field() {
            Some(&self.x.r)
        } else if !self.y.is_field() {
            Some(&self.y.r)
        } else {
            None
        }
    }
}

/// Exact winding-number location of an extension point.
pub fn locate_surd_in_polygon(p: &SurdPoint, poly: &[Point]) -> Location {
    let n = poly.len();
    let mut wn = 0i32;
    for i in 0..n {
        let a = &poly[i];
        let b = &poly[(i + 1) % n];
        if on_closed_segment_surd(p, a, b) {
            return Location::Boundary;
        }
        let ay = (&Surd::field(a.y.clone()) - &p.y).sign();
        let by = (&Surd::field(b.y.clone()) - &p.y).sign();
        let o = orient_surd(a, b, p);
        if ay <= 0 {
            if by > 0 && o > 0 {
                wn += 1;
            }
        } else if by <= 0 && o < 0 {
            wn -= 1;
        }
    }
    if wn != 0 {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Sign of the turn `a → b → p`.
pub fn orient_surd(a: &Point, b: &Point, p: &SurdPoint) -> i32 {
    p.sub_point(a).cross_from(&(b - a)).sign()
}

pub fn on_open_segment_surd(p: &SurdPoint, a: &Point, b: &Point) -> bool {
    orient_surd(a, b, p) == 0
        && p.sub_point(a).dot_point(&(b - a)).sign() > 0
        && p.sub_point(b).dot_point(&(a - b)).sign() > 0
}

pub fn on_closed_segment_surd(p: &SurdPoint, a: &Point, b: &Point) -> bool {
    if let Some(q) = p.as_point() {
        return on_closed_segment(&q, a, b);
    }
    on_open_segment_surd(p, a, b)
}
