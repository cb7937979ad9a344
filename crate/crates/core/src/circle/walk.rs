use crate::exact::{FieldScalar, Surd};
use crate::geom::{dot, on_open_segment, on_open_segment_surd, Point, SurdPoint};
use crate::tiling::Tiling;

use super::classify::{alternative_arcs, classify_direction, PointType};
use super::{
    angle_enclosure, borders_near, center_vertex, vertex_on_circle_kind, CirclePoint, CircleError,
    CircleRepr, Crossing, CrossingKind,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkStatus {
    /// Inside a region, or a pseudo-crossing.
    NotCrossing,
    Crossing(PointType),
}

/// The hexagon inscribed in the unit circle through a crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkReport {
    /// `points[k]` is the start rotated by `k·60°` about the center.
    pub points: Vec<CirclePoint>,
    pub status: Vec<WalkStatus>,
    /// `(k, (k + 1) % 6, arc)`: neighbors at distance one, both crossings
    /// on alternative arc `arc`.
    pub same_arc_pairs: Vec<(usize, usize, usize)>,
    /// Crossings that are inward or outward points.
    pub inward_outward: Vec<usize>,
}

impl WalkReport {
    /// Some point fails to be a crossing or a hypothesis of the
    /// contradiction steps is met.
    pub fn is_nonempty(&self) -> bool {
        self.status.contains(&WalkStatus::NotCrossing)
            || !self.same_arc_pairs.is_empty()
            || !self.inward_outward.is_empty()
    }
}

fn locate(t: &Tiling, center: &Point, o: usize, x: &SurdPoint) -> (CirclePoint, bool) {
    let rel = x.sub_point(center);
    if let Some(p) = x.as_point() {
        let exact = CirclePoint { center: o, repr: CircleRepr::Exact(p.clone()), point: x.clone() };
        if let Some((vid, _)) = t.vertex_at(&p) {
            let kind = vertex_on_circle_kind(&t.vertices()[vid], &p, center);
            return (exact, kind == CrossingKind::Crossing);
        }
        for (_, _, seg) in borders_near(t, center) {
            if on_open_segment(&p, &seg.p, &seg.q) {
                let tangent = dot(&(&p - center), &seg.dir()).is_zero();
                return (exact, !tangent);
            }
        }
        return (exact, false);
    }
    for (bid, off, seg) in borders_near(t, center) {
        if on_open_segment_surd(x, &seg.p, &seg.q) {
            let d = seg.dir();
            let b = dot(&(&seg.p - center), &d);
            let side = (&x.sub_point(&seg.p).dot_point(&d) + &Surd::field(b)).sign();
            let repr = CircleRepr::SegmentRoot {
                border: bid,
                offset: off,
                root: u8::from(side > 0),
                angle: angle_enclosure(&rel),
            };
            return (CirclePoint { center: o, repr, point: x.clone() }, true);
        }
    }
    let repr = CircleRepr::Algebraic { angle: angle_enclosure(&rel) };
    (CirclePoint { center: o, repr, point: x.clone() }, false)
}

/// Walks the six points of the inscribed hexagon through `start`,
/// classifying each and collecting neighbor pairs on one alternative arc.
pub fn hexagon_walk_audit(t: &Tiling, o: usize, start: &Crossing) -> Result<WalkReport, CircleError> {
    let v = center_vertex(t, o)?;
    if v.degree() != 4 {
        return Err(CircleError::DegreeNot4 { vertex: o, degree: v.degree() });
    }
    let center = v.point.clone();
    let x0 = &start.at.point;
    if x0.sub_point(&center).norm_sq() != Surd::field(FieldScalar::one()) {
        return Err(CircleError::NotOnCircle);
    }
    let arcs = alternative_arcs(t, o)?;
    let mut points = Vec::new();
    let mut status = Vec::new();
    for k in 0..6 {
        let x = x0.rotate60(&center, k);
        let (cp, crossing) = locate(t, &center, o, &x);
        status.push(if crossing {
            WalkStatus::Crossing(classify_direction(t, o, &x.sub_point(&center))?)
        } else {
            WalkStatus::NotCrossing
        });
        points.push(cp);
    }
    let is_crossing = |k: usize| matches!(status[k], WalkStatus::Crossing(_));
    let mut same_arc_pairs = Vec::new();
    for k in 0..6 {
        let l = (k + 1) % 6;
        if !(is_crossing(k) && is_crossing(l)) {
            continue;
        }
        let dk = points[k].point.sub_point(&center);
        let dl = points[l].point.sub_point(&center);
        if let Some(a) = arcs.iter().position(|a| a.contains(&dk) && a.contains(&dl)) {
            same_arc_pairs.push((k, l, a));
        }
    }
    let inward_outward = (0..6)
        .filter(|&k| matches!(status[k], WalkStatus::Crossing(PointType::Inward | PointType::Outward)))
        .collect();
    Ok(WalkReport { points, status, same_arc_pairs, inward_outward })
}
