use std::cmp::Ordering;
use std::collections::HashMap;

use super::{CellRef, Offset, Tiling};
use crate::exact::FieldScalar;
use crate::geom::{dot, locate_in_polygon, same_direction, segments_intersect, BBox, Location, Point, Segment};

/// Closed axis-aligned box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub min: Point,
    pub max: Point,
}

impl Window {
    /// `None` unless `x0 ≤ x1` and `y0 ≤ y1`.
    pub fn new(x0: FieldScalar, y0: FieldScalar, x1: FieldScalar, y1: FieldScalar) -> Option<Window> {
        if x0.cmp_value(&x1) == Ordering::Greater || y0.cmp_value(&y1) == Ordering::Greater {
            return None;
        }
        Some(Window { min: Point::new(x0, y0), max: Point::new(x1, y1) })
    }

    pub fn ints(x0: i64, y0: i64, x1: i64, y1: i64) -> Window {
        Window::new(x0.into(), y0.into(), x1.into(), y1.into()).expect("ordered bounds")
    }

    /// Square of half-width `r` centred on `c`.
    pub fn around(c: &Point, r: &FieldScalar) -> Window {
        Window {
            min: Point::new(&c.x - r, &c.y - r),
            max: Point::new(&c.x + r, &c.y + r),
        }
    }

    pub fn bbox(&self) -> BBox {
        BBox { min: self.min.clone(), max: self.max.clone() }
    }

    pub fn has_interior(&self) -> bool {
        self.min.x.cmp_value(&self.max.x) == Ordering::Less && self.min.y.cmp_value(&self.max.y) == Ordering::Less
    }

    fn corners(&self) -> [Point; 4] {
        [
            self.min.clone(),
            Point::new(self.max.x.clone(), self.min.y.clone()),
            self.max.clone(),
            Point::new(self.min.x.clone(), self.max.y.clone()),
        ]
    }

    fn segment_meets(&self, a: &Point, b: &Point) -> bool {
        let bb = self.bbox();
        if bb.contains(a) || bb.contains(b) {
            return true;
        }
        let c = self.corners();
        (0..4).any(|i| segments_intersect(a, b, &c[i], &c[(i + 1) % 4]))
    }

    fn polygon_meets(&self, poly: &[Point]) -> bool {
        let bb = self.bbox();
        if poly.iter().any(|p| bb.contains(p)) {
            return true;
        }
        if self.corners().iter().any(|c| locate_in_polygon(c, poly) != Location::Outside) {
            return true;
        }
        (0..poly.len()).any(|i| self.segment_meets(&poly[i], &poly[(i + 1) % poly.len()]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchCell {
    pub cell: CellRef,
    pub color: u32,
    pub polygon: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchBorder {
    pub border: usize,
    pub offset: Offset,
    pub segment: Segment,
    /// Indices into [`Patch::cells`]; `None` when that side is not in the
    /// patch.
    pub left: Option<usize>,
    pub right: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchVertex {
    pub vertex: usize,
    pub offset: Offset,
    pub point: Point,
    pub dirs: Vec<Point>,
    /// Patch border index per direction.
    pub borders: Vec<Option<usize>>,
    pub wedges: Vec<Option<usize>>,
}

impl PatchVertex {
    pub fn degree(&self) -> usize {
        self.dirs.len()
    }

    /// All surrounding cells are present, so the degree is genuine.
    pub fn is_interior(&self) -> bool {
        self.wedges.iter().all(Option::is_some)
    }
}

/// The finite set of placed elements meeting a window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Patch {
    pub cells: Vec<PatchCell>,
    pub borders: Vec<PatchBorder>,
    pub vertices: Vec<PatchVertex>,
}

impl Patch {
    /// Every element of a finite tiling.
    pub fn whole(t: &Tiling) -> Option<Patch> {
        if t.is_periodic() {
            return None;
        }
        let b = BBox::of_points(t.regions().iter().flat_map(|r| r.polygon.iter()))?;
        Some(instantiate_window(t, &Window { min: b.min, max: b.max }))
    }

    pub fn vertex_at(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| &v.point == p)
    }
}

/// Elements whose closures meet `w`, ordered by translate then id.
pub fn instantiate_window(t: &Tiling, w: &Window) -> Patch {
    if !w.has_interior() {
        return Patch::default();
    }
    let wb = w.bbox();
    let mut cells = Vec::new();
    for r in t.regions() {
        for o in t.offsets_meeting(&r.bbox, &wb) {
            let c = CellRef::new(r.id, o);
            let poly = t.cell_polygon(c);
            if w.polygon_meets(&poly) {
                cells.push(PatchCell { cell: c, color: r.color, polygon: poly });
            }
        }
    }
    cells.sort_by_key(|c| (c.cell.offset, c.cell.region));
    let cell_idx: HashMap<CellRef, usize> = cells.iter().enumerate().map(|(i, c)| (c.cell, i)).collect();

    let mut borders = Vec::new();
    for b in t.borders() {
        let bb = BBox::of_points([&b.segment.p, &b.segment.q]).expect("two points");
        for o in t.offsets_meeting(&bb, &wb) {
            let s = b.segment.translate(&t.offset_vec(o));
            if w.segment_meets(&s.p, &s.q) {
                borders.push(PatchBorder {
                    border: b.id,
                    offset: o,
                    segment: s,
                    left: cell_idx.get(&b.left.shifted(o)).copied(),
                    right: b.right.and_then(|c| cell_idx.get(&c.shifted(o)).copied()),
                });
            }
        }
    }
    borders.sort_by_key(|b| (b.offset, b.border));
    let border_idx: HashMap<(usize, Offset), usize> =
        borders.iter().enumerate().map(|(i, b)| ((b.border, b.offset), i)).collect();

    let mut vertices = Vec::new();
    for v in t.vertices() {
        let vb = BBox { min: v.point.clone(), max: v.point.clone() };
        for o in t.offsets_meeting(&vb, &wb) {
            let point = &v.point + &t.offset_vec(o);
            vertices.push(PatchVertex {
                vertex: v.id,
                offset: o,
                point,
                dirs: v.dirs(),
                borders: v
                    .incident
                    .iter()
                    .map(|i| border_idx.get(&(i.border, (i.offset.0 + o.0, i.offset.1 + o.1))).copied())
                    .collect(),
                wedges: v.wedges.iter().map(|c| c.and_then(|c| cell_idx.get(&c.shifted(o)).copied())).collect(),
            });
        }
    }
    vertices.sort_by_key(|v| (v.offset, v.vertex));
    Patch { cells, borders, vertices }
}

/// Maximal closed collinear chain of borders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Borderline {
    pub start: Point,
    pub end: Point,
    /// Patch vertex indices at the ends, when present in the patch.
    pub start_vertex: Option<usize>,
    pub end_vertex: Option<usize>,
    /// Patch vertex indices strictly between the ends, in order.
    pub interior: Vec<usize>,
    /// Constituent patch border indices, in order.
    pub borders: Vec<usize>,
}

/// Groups patch borders into borderlines: two borders join when they meet
/// at a patch vertex in opposite directions.
pub fn enumerate_borderlines(patch: &Patch) -> Vec<Borderline> {
    let n = patch.borders.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for v in &patch.vertices {
        for i in 0..v.dirs.len() {
            for j in (i + 1)..v.dirs.len() {
                let opposite = same_direction(&v.dirs[i], &-&v.dirs[j]);
                if let (true, Some(a), Some(b)) = (opposite, v.borders[i], v.borders[j]) {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for b in 0..n {
        let r = find(&mut parent, b);
        groups.entry(r).or_default().push(b);
    }
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_unstable();
    let vidx: HashMap<&Point, usize> = patch.vertices.iter().enumerate().map(|(i, v)| (&v.point, i)).collect();
    roots
        .into_iter()
        .map(|root| {
            let members = &groups[&root];
            let s0 = &patch.borders[members[0]].segment;
            let d = s0.dir();
            let key = |p: &Point| dot(p, &d);
            let mut pts: Vec<Point> = Vec::new();
            for &b in members {
                let s = &patch.borders[b].segment;
                for p in [&s.p, &s.q] {
                    if !pts.contains(p) {
                        pts.push(p.clone());
                    }
                }
            }
            pts.sort_by(|a, b| key(a).cmp_value(&key(b)));
            let mut ordered = members.clone();
            ordered.sort_by(|&a, &b| {
                let sa = &patch.borders[a].segment;
                let sb = &patch.borders[b].segment;
                let ka = key(&sa.p).min_value(&key(&sa.q)).clone();
                let kb = key(&sb.p).min_value(&key(&sb.q)).clone();
                ka.cmp_value(&kb)
            });
            let start = pts[0].clone();
            let end = pts[pts.len() - 1].clone();
            Borderline {
                start_vertex: vidx.get(&start).copied(),
                end_vertex: vidx.get(&end).copied(),
                interior: pts[1..pts.len() - 1].iter().filter_map(|p| vidx.get(p).copied()).collect(),
                start,
                end,
                borders: ordered,
            }
        })
        .collect()
}
