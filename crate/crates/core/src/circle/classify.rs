use std::collections::BTreeSet;

use crate::geom::{angle_cmp, cross, same_direction, Point, SurdPoint};
use crate::tiling::{Tiling, Vertex};

use super::{center_vertex, CircleError};

/// Exact sign tests of a direction against field vectors.
pub trait DirSign {
    /// Sign of `u · d`.
    fn dot_sign(&self, u: &Point) -> i32;
    /// Sign of `cross(u, d)`.
    fn cross_sign(&self, u: &Point) -> i32;
    fn is_zero_vec(&self) -> bool;
}

impl DirSign for Point {
    fn dot_sign(&self, u: &Point) -> i32 {
        crate::geom::dot(u, self).sign()
    }
    fn cross_sign(&self, u: &Point) -> i32 {
        cross(u, self).sign()
    }
    fn is_zero_vec(&self) -> bool {
        self.is_zero()
    }
}

impl DirSign for SurdPoint {
    fn dot_sign(&self, u: &Point) -> i32 {
        self.dot_point(u).sign()
    }
    fn cross_sign(&self, u: &Point) -> i32 {
        self.cross_from(u).sign()
    }
    fn is_zero_vec(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

fn along<D: DirSign>(d: &D, u: &Point, s: i32) -> bool {
    d.cross_sign(u) == 0 && s * d.dot_sign(u) > 0
}

/// Open wedge `a → b` contains `s·d`.
fn wedge_has<D: DirSign>(a: &Point, b: &Point, d: &D, s: i32) -> bool {
    let c_aw = s * d.cross_sign(a);
    let c_wb = -s * d.cross_sign(b);
    if same_direction(a, b) {
        return !along(d, a, s);
    }
    match cross(a, b).sign() {
        1 => c_aw > 0 && c_wb > 0,
        -1 => c_aw > 0 || c_wb > 0,
        _ => c_aw > 0,
    }
}

/// Colors of the wedges at `v` meeting the open half-plane `s·(x·d) > 0`.
fn excluded<D: DirSign>(t: &Tiling, v: &Vertex, d: &D, s: i32) -> BTreeSet<u32> {
    let k = v.degree();
    let mut out = BTreeSet::new();
    for i in 0..k {
        let a = &v.incident[i].dir;
        let b = &v.incident[(i + 1) % k].dir;
        let meets = s * d.dot_sign(a) > 0 || s * d.dot_sign(b) > 0 || wedge_has(a, b, d, s);
        if let (true, Some(c)) = (meets, v.wedges[i]) {
            out.insert(t.color(c));
        }
    }
    out
}

/// Colors ruled out for points just inside the circle in direction `d`:
/// those met by their unit circles close to the center.
pub fn excluded_inside<D: DirSign>(t: &Tiling, o: usize, d: &D) -> Result<BTreeSet<u32>, CircleError> {
    let v = center_vertex(t, o)?;
    if d.is_zero_vec() {
        return Err(CircleError::ZeroDirection);
    }
    Ok(excluded(t, v, d, -1))
}

/// Same for points just outside the circle.
pub fn excluded_outside<D: DirSign>(t: &Tiling, o: usize, d: &D) -> Result<BTreeSet<u32>, CircleError> {
    let v = center_vertex(t, o)?;
    if d.is_zero_vec() {
        return Err(CircleError::ZeroDirection);
    }
    Ok(excluded(t, v, d, 1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointType {
    Inward,
    Outward,
    /// Colors excluded just outside the circle.
    Alternative(BTreeSet<u32>),
    /// Some border at the center is perpendicular to the direction; the
    /// counts of colors excluded inside and outside.
    Degenerate { inside: usize, outside: usize },
}

/// Type of the circle point in direction `d` from the center, by the
/// signs of the border directions against `d`.
pub fn classify_direction<D: DirSign>(t: &Tiling, o: usize, d: &D) -> Result<PointType, CircleError> {
    let v = center_vertex(t, o)?;
    if d.is_zero_vec() {
        return Err(CircleError::ZeroDirection);
    }
    let signs: Vec<i32> = v.incident.iter().map(|i| d.dot_sign(&i.dir)).collect();
    if signs.contains(&0) {
        return Ok(PointType::Degenerate {
            inside: excluded(t, v, d, -1).len(),
            outside: excluded(t, v, d, 1).len(),
        });
    }
    let pos = signs.iter().filter(|&&s| s > 0).count();
    let neg = signs.len() - pos;
    Ok(if pos <= 1 {
        PointType::Inward
    } else if neg <= 1 {
        PointType::Outward
    } else {
        PointType::Alternative(excluded(t, v, d, 1))
    })
}

/// Maximal run of directions excluding the same three colors outside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltArc {
    /// Counter-clockwise from `start_dir` to `end_dir`.
    pub start_dir: Point,
    pub end_dir: Point,
    pub start_inclusive: bool,
    pub end_inclusive: bool,
    pub excluded: BTreeSet<u32>,
    pub single_point: bool,
}

impl AltArc {
    pub fn contains<D: DirSign>(&self, d: &D) -> bool {
        if self.single_point {
            return along(d, &self.start_dir, 1);
        }
        (self.start_inclusive && along(d, &self.start_dir, 1))
            || (self.end_inclusive && along(d, &self.end_dir, 1))
            || wedge_has(&self.start_dir, &self.end_dir, d, 1)
    }
}

#[derive(Clone, Copy)]
enum Element {
    Critical(usize),
    Gap(usize),
}

/// Alternative arcs of a degree-4 vertex. Arc ends are perpendicular to
/// borders; a run consisting of one perpendicular alone is a
/// single-point arc.
pub fn alternative_arcs(t: &Tiling, o: usize) -> Result<Vec<AltArc>, CircleError> {
    let v = center_vertex(t, o)?;
    if v.degree() != 4 {
        return Err(CircleError::DegreeNot4 { vertex: o, degree: v.degree() });
    }
    let mut crit: Vec<Point> = Vec::new();
    for i in &v.incident {
        crit.push(i.dir.perp());
        crit.push(-&i.dir.perp());
    }
    crit.sort_by(angle_cmp);
    crit.dedup_by(|a, b| same_direction(a, b));
    let m = crit.len();
    let elements: Vec<Element> = (0..m).flat_map(|j| [Element::Critical(j), Element::Gap(j)]).collect();
    let label = |e: Element| -> Option<BTreeSet<u32>> {
        let d = match e {
            Element::Critical(j) => crit[j].clone(),
            Element::Gap(j) => {
                let (a, b) = (&crit[j], &crit[(j + 1) % m]);
                if cross(a, b).sign() > 0 {
                    a + b
                } else {
                    a.perp()
                }
            }
        };
        let s = excluded(t, v, &d, 1);
        (s.len() == 3).then_some(s)
    };
    let labels: Vec<Option<BTreeSet<u32>>> = elements.iter().map(|&e| label(e)).collect();
    let n = elements.len();
    let start_dir = |e: Element| match e {
        Element::Critical(j) => (crit[j].clone(), true),
        Element::Gap(j) => (crit[j].clone(), false),
    };
    let end_dir = |e: Element| match e {
        Element::Critical(j) => (crit[j].clone(), true),
        Element::Gap(j) => (crit[(j + 1) % m].clone(), false),
    };
    if labels.iter().all(|l| l.is_some() && *l == labels[0]) {
        let (d, _) = start_dir(elements[0]);
        return Ok(vec![AltArc {
            start_dir: d.clone(),
            end_dir: d,
            start_inclusive: false,
            end_inclusive: false,
            excluded: labels[0].clone().expect("labelled"),
            single_point: false,
        }]);
    }
    let first = (0..n).find(|&i| labels[i] != labels[(i + n - 1) % n]).expect("labels differ");
    let mut arcs = Vec::new();
    let mut i = 0;
    while i < n {
        let s = (first + i) % n;
        let mut len = 1;
        while i + len < n && labels[(first + i + len) % n] == labels[s] {
            len += 1;
        }
        if let Some(set) = &labels[s] {
            let e = (s + len - 1) % n;
            let (sd, si) = start_dir(elements[s]);
            let (ed, ei) = end_dir(elements[e]);
            arcs.push(AltArc {
                start_dir: sd,
                end_dir: ed,
                start_inclusive: si,
                end_inclusive: ei,
                excluded: set.clone(),
                single_point: len == 1 && matches!(elements[s], Element::Critical(_)),
            });
        }
        i += len;
    }
    Ok(arcs)
}
