//! Triangle colorings: recognition, the search for a vertex of degree at
//! least four, and the descent along a borderline between two obtuse
//! turns.

use thiserror::Error;

use crate::geom::{cross, dot, orient, same_direction, wedge_contains, Point};
use crate::tiling::{Borderline, Patch};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangleError {
    #[error("not a triangle tiling; offending cells {0:?}")]
    NotTriangleTiling(Vec<usize>),
    #[error("chain hypothesis failed: {0}")]
    HypothesesViolated(HypothesisFlag),
    #[error("descent left the patch: {0}")]
    PatchTooSmall(String),
    #[error("borderlines do not form a chain AB, BC, CD")]
    NotAChain,
    #[error("descent reached an inconsistent configuration: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HypothesisFlag {
    RaysIntersect,
    AngleAbcNotBelowPi,
    AngleBcdNotBelowPi,
}

impl std::fmt::Display for HypothesisFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HypothesisFlag::RaysIntersect => "rays BA and CD intersect",
            HypothesisFlag::AngleAbcNotBelowPi => "angle ABC is not below pi",
            HypothesisFlag::AngleBcdNotBelowPi => "angle BCD is not below pi",
        })
    }
}

/// Why a cell disqualifies a patch as a triangle tiling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleIssue {
    pub cell: usize,
    pub corners: usize,
    /// Corners with an interior angle above `π`.
    pub reflex: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    pub is_triangle_tiling: bool,
    pub issues: Vec<TriangleIssue>,
}

/// Corners of a counter-clockwise polygon, straight points dropped.
fn corners(poly: &[Point]) -> Vec<(Point, i32)> {
    let n = poly.len();
    (0..n)
        .filter_map(|i| {
            let s = orient(&poly[(i + n - 1) % n], &poly[i], &poly[(i + 1) % n]);
            (s != 0).then(|| (poly[i].clone(), s))
        })
        .collect()
}

/// Every cell has exactly three corners (points of its boundary where
/// the boundary turns); vertices in the middle of a side are allowed.
pub fn is_triangle_tiling(patch: &Patch) -> TriangleReport {
    let mut issues = Vec::new();
    for (i, c) in patch.cells.iter().enumerate() {
        let cs = corners(&c.polygon);
        let reflex: Vec<Point> = cs.iter().filter(|(_, s)| *s < 0).map(|(p, _)| p.clone()).collect();
        if cs.len() != 3 || !reflex.is_empty() {
            issues.push(TriangleIssue { cell: i, corners: cs.len(), reflex });
        }
    }
    TriangleReport { is_triangle_tiling: issues.is_empty(), issues }
}

fn require_triangles(patch: &Patch) -> Result<(), TriangleError> {
    let r = is_triangle_tiling(patch);
    if r.is_triangle_tiling {
        Ok(())
    } else {
        Err(TriangleError::NotTriangleTiling(r.issues.iter().map(|i| i.cell).collect()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeSearch {
    Found { vertex: usize, degree: usize },
    /// Nothing in this finite patch; says nothing about the plane.
    NotFound { caveat: &'static str },
}

pub const NOT_FOUND_CAVEAT: &str =
    "only interior vertices of this finite patch were searched; boundary degrees are unknown";

/// First interior patch vertex of degree at least four.
pub fn find_degree_ge4_vertex(patch: &Patch) -> Result<DegreeSearch, TriangleError> {
    require_triangles(patch)?;
    Ok(patch
        .vertices
        .iter()
        .enumerate()
        .find(|(_, v)| v.is_interior() && v.degree() >= 4)
        .map(|(i, v)| DegreeSearch::Found { vertex: i, degree: v.degree() })
        .unwrap_or(DegreeSearch::NotFound { caveat: NOT_FOUND_CAVEAT }))
}

/// Closed rays `b + s·u` and `c + t·w` (`s, t ≥ 0`) share a point.
pub fn rays_intersect(b: &Point, u: &Point, c: &Point, w: &Point) -> bool {
    let bc = c - b;
    let den = cross(u, w).sign();
    if den == 0 {
        if cross(&bc, u).sign() != 0 {
            return false;
        }
        return dot(&bc, u).sign() >= 0 || dot(&(b - c), w).sign() >= 0;
    }
    // s = cross(bc, w) / cross(u, w), t = cross(bc, u) / cross(u, w)
    cross(&bc, w).sign() * den >= 0 && cross(&bc, u).sign() * den >= 0
}

/// Three consecutive borderlines and the exactly evaluated hypotheses of
/// the descent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainHypotheses {
    pub ab: Borderline,
    pub bc: Borderline,
    pub cd: Borderline,
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    pub rays_disjoint: bool,
    pub angle_abc_lt_pi: bool,
    pub angle_bcd_lt_pi: bool,
}

fn other_end(l: &Borderline, p: &Point) -> Option<Point> {
    if &l.start == p {
        Some(l.end.clone())
    } else if &l.end == p {
        Some(l.start.clone())
    } else {
        None
    }
}

fn shared_end(l: &Borderline, m: &Borderline) -> Option<Point> {
    [&l.start, &l.end].into_iter().find(|p| **p == m.start || **p == m.end).cloned()
}

impl ChainHypotheses {
    pub fn new(ab: Borderline, bc: Borderline, cd: Borderline) -> Result<Self, TriangleError> {
        let b = shared_end(&ab, &bc).ok_or(TriangleError::NotAChain)?;
        let c = other_end(&bc, &b).ok_or(TriangleError::NotAChain)?;
        let a = other_end(&ab, &b).ok_or(TriangleError::NotAChain)?;
        let d = other_end(&cd, &c).ok_or(TriangleError::NotAChain)?;
        let rays_disjoint = !rays_intersect(&b, &(&a - &b), &c, &(&d - &c));
        // both angles are measured on the side of A
        let side_a = orient(&b, &c, &a);
        let angle_abc_lt_pi = side_a != 0;
        let angle_bcd_lt_pi = side_a != 0 && orient(&b, &c, &d) == side_a;
        Ok(ChainHypotheses { ab, bc, cd, a, b, c, d, rays_disjoint, angle_abc_lt_pi, angle_bcd_lt_pi })
    }

    pub fn check(&self) -> Result<(), TriangleError> {
        let flags = [
            (self.rays_disjoint, HypothesisFlag::RaysIntersect),
            (self.angle_abc_lt_pi, HypothesisFlag::AngleAbcNotBelowPi),
            (self.angle_bcd_lt_pi, HypothesisFlag::AngleBcdNotBelowPi),
        ];
        match flags.iter().find(|(ok, _)| !ok) {
            Some((_, f)) => Err(TriangleError::HypothesesViolated(*f)),
            None => Ok(()),
        }
    }
}

/// Result of the descent: the vertex it stops at and the patch vertices
/// visited on the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainOutcome {
    pub vertex: usize,
    pub degree: usize,
    pub trace: Vec<usize>,
}

/// Replays the descent: from both ends of BC, the triangle holding the
/// angle between BC and the current ray yields the next vertex on BC,
/// until a vertex is met with a border strictly inside that angle or the
/// two fronts meet.
pub fn obtuse_chain_audit(patch: &Patch, h: &ChainHypotheses) -> Result<ChainOutcome, TriangleError> {
    h.check()?;
    require_triangles(patch)?;
    let locate = |p: &Point| {
        patch
            .vertex_at(p)
            .ok_or_else(|| TriangleError::PatchTooSmall(format!("no patch vertex at {p}")))
    };
    let mut fronts = [(locate(&h.b)?, h.a.clone()), (locate(&h.c)?, h.d.clone())];
    let mut trace = vec![fronts[0].0, fronts[1].0];
    let mut turn = 0;
    let finish = |v: usize, trace: Vec<usize>| -> Result<ChainOutcome, TriangleError> {
        let pv = &patch.vertices[v];
        if !pv.is_interior() {
            return Err(TriangleError::PatchTooSmall(format!("vertex at {} is on the patch boundary", pv.point)));
        }
        if pv.degree() < 4 {
            return Err(TriangleError::Inconsistent(format!("vertex at {} has degree {}", pv.point, pv.degree())));
        }
        Ok(ChainOutcome { vertex: v, degree: pv.degree(), trace })
    };
    for _ in 0..=patch.vertices.len() {
        let (x, r) = fronts[turn].clone();
        let y = fronts[1 - turn].0;
        let xv = &patch.vertices[x];
        let xp = &xv.point;
        let u = &patch.vertices[y].point - xp;
        let v = &r - xp;
        let s = cross(&u, &v).sign();
        if s == 0 {
            return Err(TriangleError::Inconsistent("ray collinear with BC".into()));
        }
        if xv.dirs.iter().any(|d| cross(&u, d).sign() == s && cross(d, &v).sign() == s) {
            return finish(x, trace);
        }
        let inner = &u + &v;
        let k = xv.degree();
        let wedge = (0..k)
            .find(|&i| wedge_contains(&xv.dirs[i], &xv.dirs[(i + 1) % k], &inner))
            .ok_or_else(|| TriangleError::Inconsistent(format!("no wedge at {xp}")))?;
        let cell = xv.wedges[wedge]
            .ok_or_else(|| TriangleError::PatchTooSmall(format!("missing cell at {xp}")))?;
        let poly = &patch.cells[cell].polygon;
        let z = poly
            .iter()
            .filter(|w| same_direction(&(*w - xp), &u))
            .max_by(|a, b| dot(&(*a - xp), &u).cmp_value(&dot(&(*b - xp), &u)))
            .ok_or_else(|| TriangleError::Inconsistent(format!("cell at {xp} leaves BC")))?
            .clone();
        match dot(&(&z - xp), &u).cmp_value(&u.norm_sq()) {
            std::cmp::Ordering::Equal => {
                trace.push(y);
                return finish(y, trace);
            }
            std::cmp::Ordering::Greater => {
                return Err(TriangleError::Inconsistent(format!("triangle at {xp} passes the other front")));
            }
            std::cmp::Ordering::Less => {}
        }
        let apex = corners(poly)
            .into_iter()
            .map(|(p, _)| p)
            .find(|p| orient(xp, &z, p) == s)
            .ok_or_else(|| TriangleError::Inconsistent(format!("triangle at {xp} has no apex")))?;
        let zi = locate(&z)?;
        trace.push(zi);
        fronts[turn] = (zi, apex);
        turn = 1 - turn;
    }
    Err(TriangleError::Inconsistent("descent did not terminate".into()))
}
