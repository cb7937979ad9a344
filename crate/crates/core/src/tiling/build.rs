use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

static NEXT_UID: AtomicU64 = AtomicU64::new(1);

use super::{
    Border, BuildError, CellRef, Incident, Lattice, Offset, OwnDecl, OwnedFaces, OwnershipRule,
    RawOwnership, RawTiling, Region, Tiling, Vertex,
};
use crate::geom::{
    angle_cmp, cross, cross_with_up_right, dot, is_simple_polygon, locate_in_polygon, on_closed_segment,
    on_open_segment, same_direction, segments_cross_properly, signed_area2, wedge_contains_up_right, BBox,
    Location, Point, Segment,
};

/// Validation switches for [`Tiling::build_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    /// Reject regions sharing a border or vertex with an equal color.
    pub check_colors: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { check_colors: true }
    }
}

struct Ctx {
    lattice: Option<Lattice>,
    polys: Vec<Vec<Point>>,
    bboxes: Vec<BBox>,
}

impl Ctx {
    fn vec(&self, o: Offset) -> Point {
        match &self.lattice {
            Some(l) => l.vec(o),
            None => Point::origin(),
        }
    }

    fn reduce(&self, p: &Point) -> (Point, Offset) {
        match &self.lattice {
            Some(l) => l.reduce(p),
            None => (p.clone(), (0, 0)),
        }
    }

    fn poly(&self, c: CellRef) -> Vec<Point> {
        let t = self.vec(c.offset);
        self.polys[c.region].iter().map(|p| p + &t).collect()
    }

    fn offsets_meeting(&self, from: &BBox, to: &BBox) -> Vec<Offset> {
        match &self.lattice {
            None => {
                if from.intersects(to) {
                    vec![(0, 0)]
                } else {
                    Vec::new()
                }
            }
            Some(l) => l
                .offset_range(from, to)
                .into_iter()
                .filter(|o| from.translate(&l.vec(*o)).intersects(to))
                .collect(),
        }
    }
}

struct Junction {
    dirs: Vec<Point>,
    /// Relative to the representative's frame.
    wedges: Vec<Option<CellRef>>,
    is_vertex: bool,
}

pub(super) fn build(raw: RawTiling, opts: BuildOptions) -> Result<Tiling, BuildError> {
    let lattice = match &raw.lattice {
        Some((a, b)) => Some(Lattice::new(a.clone(), b.clone()).ok_or(BuildError::DependentLattice)?),
        None => None,
    };
    let mut polys = Vec::with_capacity(raw.regions.len());
    for (i, r) in raw.regions.iter().enumerate() {
        if r.color == 0 {
            return Err(BuildError::InvalidColor(i));
        }
        let mut poly = Vec::with_capacity(r.boundary.len());
        for &k in &r.boundary {
            poly.push(raw.points.get(k).ok_or(BuildError::UnknownPoint(k))?.clone());
        }
        if !is_simple_polygon(&poly) {
            return Err(BuildError::NonSimplePolygon(i));
        }
        if signed_area2(&poly).sign() < 0 {
            poly.reverse();
        }
        polys.push(poly);
    }
    let bboxes: Vec<BBox> = polys.iter().map(|p| BBox::of_points(p).expect("nonempty polygon")).collect();
    let ctx = Ctx { lattice, polys, bboxes };
    let n = ctx.polys.len();

    if ctx.lattice.is_some() && n == 0 {
        return Err(BuildError::CoverageGap(0));
    }

    // cells whose boxes touch region r's box, excluding r itself
    let neighbors: Vec<Vec<CellRef>> = (0..n)
        .map(|r| {
            let mut out = Vec::new();
            for s in 0..n {
                for o in ctx.offsets_meeting(&ctx.bboxes[s], &ctx.bboxes[r]) {
                    if !(s == r && o == (0, 0)) {
                        out.push(CellRef::new(s, o));
                    }
                }
            }
            out
        })
        .collect();

    let loops = atomic_loops(&ctx, &neighbors);
    let loop_index: Vec<HashMap<Point, usize>> = loops
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect())
        .collect();

    check_overlaps(&ctx, &neighbors, &loops)?;
    let right_of = match_sides(&ctx, &neighbors, &loops)?;

    if let Some(l) = &ctx.lattice {
        let mut total = crate::exact::FieldScalar::zero();
        for p in &ctx.polys {
            total = &total + &signed_area2(p);
        }
        let cell = &l.area() + &l.area();
        match total.cmp_value(&cell) {
            Ordering::Less => return Err(BuildError::CoverageGap(0)),
            Ordering::Greater => return Err(BuildError::OverlappingRegions(0, 0)),
            Ordering::Equal => {}
        }
    }

    // junction analysis, keyed by representative point
    let mut junctions: HashMap<Point, Junction> = HashMap::new();
    for r in 0..n {
        for p in &loops[r] {
            let (rep, o) = ctx.reduce(p);
            if junctions.contains_key(&rep) {
                continue;
            }
            let j = junction_at(&ctx, r, p, o, &neighbors[r], &loops, &loop_index);
            junctions.insert(rep, j);
        }
    }

    let mut vertex_points: Vec<Point> =
        junctions.iter().filter(|(_, j)| j.is_vertex).map(|(p, _)| p.clone()).collect();
    vertex_points.sort_by(|a, b| a.x.cmp_value(&b.x).then_with(|| a.y.cmp_value(&b.y)));
    let vertex_id: HashMap<Point, usize> =
        vertex_points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

    // borders: chains of atomic segments between consecutive vertices
    let mut border_map: HashMap<(Point, Point), Border> = HashMap::new();
    let mut region_vertices = vec![Vec::new(); n];
    for r in 0..n {
        let lp = &loops[r];
        let m = lp.len();
        let vidx: Vec<usize> = (0..m)
            .filter(|&i| junctions[&ctx.reduce(&lp[i]).0].is_vertex)
            .collect();
        for &i in &vidx {
            let (rep, o) = ctx.reduce(&lp[i]);
            region_vertices[r].push((vertex_id[&rep], o));
        }
        for (k, &i) in vidx.iter().enumerate() {
            let j = vidx[(k + 1) % vidx.len()];
            let u = lp[i].clone();
            let w = lp[j].clone();
            let right = right_of[r][i];
            let (key, t) = border_key(&ctx, &u, &w);
            border_map.entry(key).or_insert_with(|| {
                let shift = ctx.vec(t);
                Border {
                    id: 0,
                    segment: Segment::new(&u - &shift, &w - &shift),
                    left: CellRef::new(r, (-t.0, -t.1)),
                    right: right.map(|c| c.shifted((-t.0, -t.1))),
                    owner: None,
                }
            });
        }
    }
    let mut keyed: Vec<((Point, Point), Border)> = border_map.into_iter().collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut borders: Vec<Border> = keyed.into_iter().map(|(_, b)| b).collect();
    for (i, b) in borders.iter_mut().enumerate() {
        b.id = i;
    }

    let mut vertices: Vec<Vertex> = vertex_points
        .iter()
        .enumerate()
        .map(|(id, p)| Vertex { id, point: p.clone(), incident: Vec::new(), wedges: Vec::new(), owner: None })
        .collect();
    for b in &borders {
        for (p, q) in [(&b.segment.p, &b.segment.q), (&b.segment.q, &b.segment.p)] {
            let (rep, o) = ctx.reduce(p);
            let vid = vertex_id[&rep];
            vertices[vid].incident.push(Incident { border: b.id, offset: (-o.0, -o.1), dir: q - p });
        }
    }
    for v in vertices.iter_mut() {
        v.incident.sort_by(|a, b| angle_cmp(&a.dir, &b.dir));
        let j = &junctions[&v.point];
        assert_eq!(j.dirs.len(), v.incident.len(), "junction directions disagree with borders");
        for (d, inc) in j.dirs.iter().zip(&v.incident) {
            assert!(same_direction(d, &inc.dir), "junction directions disagree with borders");
        }
        v.wedges = j.wedges.clone();
    }

    let regions: Vec<Region> = (0..n)
        .map(|i| Region {
            id: i,
            color: raw.regions[i].color,
            polygon: ctx.polys[i].clone(),
            bbox: ctx.bboxes[i].clone(),
            vertices: region_vertices[i].clone(),
        })
        .collect();

    if opts.check_colors {
        check_colors(&regions, &borders, &vertices)?;
    }

    let rule = match &raw.ownership {
        RawOwnership::AboveRight => {
            assign_above_right(&mut borders, &mut vertices);
            OwnershipRule::AboveRight
        }
        RawOwnership::Explicit(decls) => {
            assign_explicit(&ctx, &raw, decls, &mut borders, &mut vertices)?;
            OwnershipRule::Explicit
        }
    };

    let mut owned = vec![OwnedFaces::default(); n];
    for b in &borders {
        if let Some(c) = b.owner {
            owned[c.region].segments.push(b.segment.translate(&-&ctx.vec(c.offset)));
        }
    }
    for v in &vertices {
        if let Some(c) = v.owner {
            owned[c.region].points.push(&v.point - &ctx.vec(c.offset));
        }
    }

    Ok(Tiling {
        raw,
        regions,
        borders,
        vertices,
        lattice: ctx.lattice,
        ownership: rule,
        owned,
        uid: NEXT_UID.fetch_add(1, AtomicOrdering::Relaxed),
    })
}

/// Region boundaries split at every polygon point lying inside an edge.
fn atomic_loops(ctx: &Ctx, neighbors: &[Vec<CellRef>]) -> Vec<Vec<Point>> {
    (0..ctx.polys.len())
        .map(|r| {
            let mut pts: Vec<Point> = ctx.polys[r].clone();
            for &c in &neighbors[r] {
                pts.extend(ctx.poly(c));
            }
            let poly = &ctx.polys[r];
            let mut out = Vec::new();
            for i in 0..poly.len() {
                let a = &poly[i];
                let b = &poly[(i + 1) % poly.len()];
                out.push(a.clone());
                let d = b - a;
                let mut seen = HashSet::new();
                let mut inner: Vec<(crate::exact::FieldScalar, Point)> = Vec::new();
                for p in &pts {
                    if on_open_segment(p, a, b) && seen.insert(p.clone()) {
                        inner.push((dot(&(p - a), &d), p.clone()));
                    }
                }
                inner.sort_by(|x, y| x.0.cmp_value(&y.0));
                out.extend(inner.into_iter().map(|(_, p)| p));
            }
            out
        })
        .collect()
}

fn check_overlaps(ctx: &Ctx, neighbors: &[Vec<CellRef>], loops: &[Vec<Point>]) -> Result<(), BuildError> {
    for (r, nb) in neighbors.iter().enumerate() {
        let pr = &ctx.polys[r];
        for &c in nb {
            let pc = ctx.poly(c);
            let overlap = || BuildError::OverlappingRegions(r, c.region);
            for i in 0..pr.len() {
                let a = &pr[i];
                let b = &pr[(i + 1) % pr.len()];
                for k in 0..pc.len() {
                    if segments_cross_properly(a, b, &pc[k], &pc[(k + 1) % pc.len()]) {
                        return Err(overlap());
                    }
                }
            }
            for p in &pc {
                if locate_in_polygon(p, pr) == Location::Inside {
                    return Err(overlap());
                }
            }
            let t = ctx.vec(c.offset);
            let lc = &loops[c.region];
            for i in 0..lc.len() {
                let mid = lc[i].midpoint(&lc[(i + 1) % lc.len()]);
                if locate_in_polygon(&(&mid + &t), pr) == Location::Inside {
                    return Err(overlap());
                }
            }
        }
    }
    Ok(())
}

/// The cell on the far side of every atomic segment.
fn match_sides(
    ctx: &Ctx,
    neighbors: &[Vec<CellRef>],
    loops: &[Vec<Point>],
) -> Result<Vec<Vec<Option<CellRef>>>, BuildError> {
    let mut out = Vec::with_capacity(loops.len());
    for (r, lp) in loops.iter().enumerate() {
        let placed: Vec<(CellRef, Vec<Point>)> = neighbors[r].iter().map(|&c| (c, ctx.poly(c))).collect();
        let mut sides = Vec::with_capacity(lp.len());
        for i in 0..lp.len() {
            let x = &lp[i];
            let y = &lp[(i + 1) % lp.len()];
            let dir = y - x;
            let mut found: Option<CellRef> = None;
            for (c, pc) in &placed {
                for k in 0..pc.len() {
                    let p = &pc[k];
                    let q = &pc[(k + 1) % pc.len()];
                    if on_closed_segment(x, p, q) && on_closed_segment(y, p, q) {
                        if dot(&dir, &(q - p)).sign() > 0 || found.is_some() {
                            return Err(BuildError::OverlappingRegions(r, c.region));
                        }
                        found = Some(*c);
                    }
                }
            }
            if found.is_none() && ctx.lattice.is_some() {
                return Err(BuildError::CoverageGap(r));
            }
            sides.push(found);
        }
        out.push(sides);
    }
    Ok(out)
}

fn junction_at(
    ctx: &Ctx,
    r: usize,
    p: &Point,
    o: Offset,
    neighbors: &[CellRef],
    loops: &[Vec<Point>],
    loop_index: &[HashMap<Point, usize>],
) -> Junction {
    let mut corners: Vec<(Point, CellRef)> = Vec::new();
    let mut raw_dirs: Vec<Point> = Vec::new();
    let cells = std::iter::once(CellRef::new(r, (0, 0))).chain(neighbors.iter().copied());
    for c in cells {
        let t = ctx.vec(c.offset);
        let local = p - &t;
        if let Some(&k) = loop_index[c.region].get(&local) {
            let lp = &loops[c.region];
            let next = &(&lp[(k + 1) % lp.len()] + &t) - p;
            let prev = &(&lp[(k + lp.len() - 1) % lp.len()] + &t) - p;
            raw_dirs.push(next.clone());
            raw_dirs.push(prev);
            corners.push((next, c));
        }
    }
    let mut dirs: Vec<Point> = Vec::new();
    for d in raw_dirs {
        if !dirs.iter().any(|e| same_direction(e, &d)) {
            dirs.push(d);
        }
    }
    dirs.sort_by(angle_cmp);
    let wedges = dirs
        .iter()
        .map(|d| {
            corners
                .iter()
                .find(|(from, _)| same_direction(from, d))
                .map(|(_, c)| c.shifted((-o.0, -o.1)))
        })
        .collect();
    let straight = dirs.len() == 2 && cross(&dirs[0], &dirs[1]).is_zero() && dot(&dirs[0], &dirs[1]).sign() < 0;
    Junction { dirs, wedges, is_vertex: !straight }
}

/// Translation-invariant key of an unoriented segment and the offset that
/// moves it into canonical position.
fn border_key(ctx: &Ctx, u: &Point, w: &Point) -> ((Point, Point), Offset) {
    let sorted = |a: Point, b: Point| if a <= b { (a, b) } else { (b, a) };
    if ctx.lattice.is_none() {
        return (sorted(u.clone(), w.clone()), (0, 0));
    }
    let (_, ou) = ctx.reduce(u);
    let (_, ow) = ctx.reduce(w);
    let cand = |o: Offset| {
        let t = ctx.vec(o);
        (sorted(u - &t, w - &t), o)
    };
    let a = cand(ou);
    let b = cand(ow);
    if a.0 <= b.0 {
        a
    } else {
        b
    }
}

fn check_colors(regions: &[Region], borders: &[Border], vertices: &[Vertex]) -> Result<(), BuildError> {
    for b in borders {
        if let Some(rc) = b.right {
            let cl = regions[b.left.region].color;
            if cl == regions[rc.region].color {
                return Err(BuildError::AdjacentSameColor(b.left.region, rc.region, cl));
            }
        }
    }
    for v in vertices {
        let cells: Vec<CellRef> = v.wedges.iter().flatten().copied().collect();
        for i in 0..cells.len() {
            for j in (i + 1)..cells.len() {
                let (a, b) = (cells[i], cells[j]);
                if a != b && regions[a.region].color == regions[b.region].color {
                    return Err(BuildError::AdjacentSameColor(a.region, b.region, regions[a.region].color));
                }
            }
        }
    }
    Ok(())
}

fn assign_above_right(borders: &mut [Border], vertices: &mut [Vertex]) {
    for b in borders.iter_mut() {
        b.owner = if cross_with_up_right(&b.segment.dir()) > 0 { Some(b.left) } else { b.right };
    }
    for v in vertices.iter_mut() {
        let n = v.incident.len();
        v.owner = (0..n)
            .find(|&k| wedge_contains_up_right(&v.incident[k].dir, &v.incident[(k + 1) % n].dir))
            .and_then(|k| v.wedges[k]);
    }
}

fn assign_explicit(
    ctx: &Ctx,
    raw: &RawTiling,
    decls: &[OwnDecl],
    borders: &mut [Border],
    vertices: &mut [Vertex],
) -> Result<(), BuildError> {
    let n = raw.regions.len();
    let mut edges: Vec<Vec<(Point, Point)>> = vec![Vec::new(); n];
    let mut points: Vec<Vec<Point>> = vec![Vec::new(); n];
    let bad = |msg: String| BuildError::InvalidOwnership(msg);
    for d in decls {
        match *d {
            OwnDecl::Edge { region, a, b } => {
                let r = raw.regions.get(region).ok_or_else(|| bad(format!("unknown region {region}")))?;
                let m = r.boundary.len();
                let consecutive = (0..m).any(|i| {
                    let (x, y) = (r.boundary[i], r.boundary[(i + 1) % m]);
                    (x == a && y == b) || (x == b && y == a)
                });
                if !consecutive {
                    return Err(bad(format!("region {region} has no edge {a} {b}")));
                }
                edges[region].push((raw.points[a].clone(), raw.points[b].clone()));
            }
            OwnDecl::Vertex { region, v } => {
                let r = raw.regions.get(region).ok_or_else(|| bad(format!("unknown region {region}")))?;
                if !r.boundary.contains(&v) {
                    return Err(bad(format!("region {region} has no boundary point {v}")));
                }
                points[region].push(raw.points[v].clone());
            }
        }
    }
    let owns_segment = |c: CellRef, s: &Segment| {
        let t = ctx.vec(c.offset);
        let (p, q) = (&s.p - &t, &s.q - &t);
        edges[c.region].iter().any(|(a, b)| on_closed_segment(&p, a, b) && on_closed_segment(&q, a, b))
    };
    let owns_point = |c: CellRef, v: &Point| {
        let p = v - &ctx.vec(c.offset);
        points[c.region].contains(&p) || edges[c.region].iter().any(|(a, b)| on_open_segment(&p, a, b))
    };
    for b in borders.iter_mut() {
        let cands: Vec<CellRef> =
            std::iter::once(b.left).chain(b.right).filter(|&c| owns_segment(c, &b.segment)).collect();
        match cands.len() {
            0 if b.right.is_some() => return Err(bad(format!("border {} has no owner", b.id))),
            0 => b.owner = None,
            1 => b.owner = Some(cands[0]),
            _ => return Err(bad(format!("border {} has two owners", b.id))),
        }
    }
    for v in vertices.iter_mut() {
        let cells: BTreeSet<CellRef> = v.wedges.iter().flatten().copied().collect();
        let cands: Vec<CellRef> = cells.into_iter().filter(|&c| owns_point(c, &v.point)).collect();
        match cands.len() {
            0 if v.is_interior() => return Err(bad(format!("vertex {} has no owner", v.id))),
            0 => v.owner = None,
            1 => v.owner = Some(cands[0]),
            _ => return Err(bad(format!("vertex {} has several owners", v.id))),
        }
    }
    Ok(())
}
