//! Polygon colorings: regions, derived borders and vertices, periodicity
//! and boundary ownership.

mod build;
mod window;

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exact::FieldScalar;
use crate::geom::{locate_in_polygon, BBox, Location, Point, Segment};

pub use build::BuildOptions;
pub use window::{enumerate_borderlines, instantiate_window, Borderline, Patch, PatchBorder, PatchCell, PatchVertex, Window};

/// Lattice coordinates of a translate.
pub type Offset = (i64, i64);

/// A region of the fundamental block placed at a lattice translate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellRef {
    pub region: usize,
    pub offset: Offset,
}

impl CellRef {
    pub fn new(region: usize, offset: Offset) -> Self {
        CellRef { region, offset }
    }

    pub fn shifted(self, by: Offset) -> CellRef {
        CellRef::new(self.region, (self.offset.0 + by.0, self.offset.1 + by.1))
    }
}

/// Period lattice spanned by two linearly independent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    t1: Point,
    t2: Point,
    det: FieldScalar,
}

impl Lattice {
    pub fn new(t1: Point, t2: Point) -> Option<Self> {
        let det = crate::geom::cross(&t1, &t2);
        (!det.is_zero()).then_some(Lattice { t1, t2, det })
    }

    pub fn t1(&self) -> &Point {
        &self.t1
    }

    pub fn t2(&self) -> &Point {
        &self.t2
    }

    /// Area of a fundamental parallelogram.
    pub fn area(&self) -> FieldScalar {
        self.det.abs()
    }

    pub fn vec(&self, o: Offset) -> Point {
        let a = self.t1.scale(&FieldScalar::from_int(o.0));
        let b = self.t2.scale(&FieldScalar::from_int(o.1));
        &a + &b
    }

    /// Exact coordinates of `p` in the lattice basis.
    pub fn coords(&self, p: &Point) -> (FieldScalar, FieldScalar) {
        let a = &crate::geom::cross(p, &self.t2) / &self.det;
        let b = &crate::geom::cross(&self.t1, p) / &self.det;
        (a, b)
    }

    /// `p = rep + vec(offset)` with the lattice coordinates of `rep` in
    /// `[0, 1)`.
    pub fn reduce(&self, p: &Point) -> (Point, Offset) {
        let (a, b) = self.coords(p);
        let o = (
            a.floor().to_i64().expect("lattice coordinate overflow"),
            b.floor().to_i64().expect("lattice coordinate overflow"),
        );
        (p - &self.vec(o), o)
    }

    /// Every offset `o` for which `from + vec(o)` can meet `to`; exact
    /// filtering happens afterwards.
    pub(crate) fn offset_range(&self, from: &BBox, to: &BBox) -> Vec<Offset> {
        let (t1x, t1y) = self.t1.to_f64();
        let (t2x, t2y) = self.t2.to_f64();
        let det = t1x * t2y - t1y * t2x;
        let lo = (&to.min - &from.max).to_f64();
        let hi = (&to.max - &from.min).to_f64();
        let mut amin = f64::INFINITY;
        let mut amax = f64::NEG_INFINITY;
        let mut bmin = f64::INFINITY;
        let mut bmax = f64::NEG_INFINITY;
        for (x, y) in [(lo.0, lo.1), (lo.0, hi.1), (hi.0, lo.1), (hi.0, hi.1)] {
            let a = (x * t2y - y * t2x) / det;
            let b = (t1x * y - t1y * x) / det;
            amin = amin.min(a);
            amax = amax.max(a);
            bmin = bmin.min(b);
            bmax = bmax.max(b);
        }
        let mut out = Vec::new();
        for i in (amin.floor() as i64 - 1)..=(amax.ceil() as i64 + 1) {
            for j in (bmin.floor() as i64 - 1)..=(bmax.ceil() as i64 + 1) {
                out.push((i, j));
            }
        }
        out
    }
}

/// Input description of a coloring before derivation of borders and
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawTiling {
    pub points: Vec<Point>,
    pub regions: Vec<RawRegion>,
    pub lattice: Option<(Point, Point)>,
    pub ownership: RawOwnership,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRegion {
    pub color: u32,
    /// Indices into `points`, counter-clockwise.
    pub boundary: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawOwnership {
    AboveRight,
    Explicit(Vec<OwnDecl>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OwnDecl {
    /// The region owns the open segment between two of its consecutive
    /// boundary points.
    Edge { region: usize, a: usize, b: usize },
    Vertex { region: usize, v: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OwnershipRule {
    AboveRight,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub id: usize,
    pub color: u32,
    /// Counter-clockwise boundary as given (may contain straight points).
    pub polygon: Vec<Point>,
    pub bbox: BBox,
    /// Derived vertices along the boundary, counter-clockwise, as
    /// `(vertex id, offset)` in this region's frame.
    pub vertices: Vec<(usize, Offset)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Border {
    pub id: usize,
    /// Oriented so that `left` lies to its left.
    pub segment: Segment,
    pub left: CellRef,
    /// `None` on the outer boundary of a finite patch.
    pub right: Option<CellRef>,
    pub owner: Option<CellRef>,
}

/// One border leaving a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incident {
    pub border: usize,
    /// Translate of the border that touches the representative vertex.
    pub offset: Offset,
    /// Vector from the vertex to the border's other endpoint.
    pub dir: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub point: Point,
    /// Sorted counter-clockwise by direction.
    pub incident: Vec<Incident>,
    /// `wedges[k]` lies between `incident[k]` and `incident[k + 1]`;
    /// `None` outside a finite patch.
    pub wedges: Vec<Option<CellRef>>,
    pub owner: Option<CellRef>,
}

impl Vertex {
    pub fn degree(&self) -> usize {
        self.incident.len()
    }

    pub fn dirs(&self) -> Vec<Point> {
        self.incident.iter().map(|i| i.dir.clone()).collect()
    }

    /// Every wedge is occupied by a cell.
    pub fn is_interior(&self) -> bool {
        self.wedges.iter().all(Option::is_some)
    }
}

/// Owned boundary faces of a region, in the region's own frame.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OwnedFaces {
    pub segments: Vec<Segment>,
    pub points: Vec<Point>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("region {0} is not a simple polygon")]
    NonSimplePolygon(usize),
    #[error("regions {0} and {1} overlap")]
    OverlappingRegions(usize, usize),
    #[error("coverage gap along region {0}")]
    CoverageGap(usize),
    #[error("adjacent regions {0} and {1} share color {2}")]
    AdjacentSameColor(usize, usize, u32),
    #[error("lattice vectors are linearly dependent")]
    DependentLattice,
    #[error("invalid ownership: {0}")]
    InvalidOwnership(String),
    #[error("point index {0} out of range")]
    UnknownPoint(usize),
    #[error("region {0} has color 0; colors start at 1")]
    InvalidColor(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown vertex {0}")]
pub struct UnknownVertex(pub usize);

/// A validated, cross-linked coloring (one fundamental block plus an
/// optional period lattice).
#[derive(Clone, Debug)]
pub struct Tiling {
    raw: RawTiling,
    regions: Vec<Region>,
    borders: Vec<Border>,
    vertices: Vec<Vertex>,
    lattice: Option<Lattice>,
    ownership: OwnershipRule,
    owned: Vec<OwnedFaces>,
    uid: u64,
}

impl Tiling {
    pub fn build(raw: RawTiling) -> Result<Tiling, BuildError> {
        build::build(raw, BuildOptions::default())
    }

    pub fn build_with(raw: RawTiling, opts: BuildOptions) -> Result<Tiling, BuildError> {
        build::build(raw, opts)
    }

    /// Identity of this build; cells from different builds are not
    /// comparable.
    pub fn uid(&self) -> u64 {
        self.uid
    }

    pub fn raw(&self) -> &RawTiling {
        &self.raw
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn borders(&self) -> &[Border] {
        &self.borders
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        self.lattice.as_ref()
    }

    pub fn is_periodic(&self) -> bool {
        self.lattice.is_some()
    }

    pub fn ownership(&self) -> OwnershipRule {
        self.ownership
    }

    pub fn vertex(&self, id: usize) -> Result<&Vertex, UnknownVertex> {
        self.vertices.get(id).ok_or(UnknownVertex(id))
    }

    /// Number of borders at a vertex, periodic images included.
    pub fn vertex_degree(&self, id: usize) -> Result<usize, UnknownVertex> {
        Ok(self.vertex(id)?.degree())
    }

    pub fn offset_vec(&self, o: Offset) -> Point {
        match &self.lattice {
            Some(l) => l.vec(o),
            None => {
                assert_eq!(o, (0, 0), "finite tiling has no translates");
                Point::origin()
            }
        }
    }

    pub fn color(&self, c: CellRef) -> u32 {
        self.regions[c.region].color
    }

    pub fn cell_polygon(&self, c: CellRef) -> Vec<Point> {
        let t = self.offset_vec(c.offset);
        self.regions[c.region].polygon.iter().map(|p| p + &t).collect()
    }

    pub fn cell_bbox(&self, c: CellRef) -> BBox {
        self.regions[c.region].bbox.translate(&self.offset_vec(c.offset))
    }

    pub fn owned_faces(&self, region: usize) -> &OwnedFaces {
        &self.owned[region]
    }

    /// Distinct colors used by the block.
    pub fn colors(&self) -> BTreeSet<u32> {
        self.regions.iter().map(|r| r.color).collect()
    }

    /// Offsets `o` with `from.translate(o)` meeting `to` (closed boxes).
    pub fn offsets_meeting(&self, from: &BBox, to: &BBox) -> Vec<Offset> {
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

    /// All cells whose bounding boxes meet `b`, in a fixed order.
    pub fn cells_near(&self, b: &BBox) -> Vec<CellRef> {
        let mut out = Vec::new();
        for r in &self.regions {
            for o in self.offsets_meeting(&r.bbox, b) {
                out.push(CellRef::new(r.id, o));
            }
        }
        out.sort();
        out
    }

    /// Colors occurring at `p`: one for an interior point, those of all
    /// regions whose boundary contains `p` otherwise.
    pub fn colors_at_point(&self, p: &Point) -> BTreeSet<u32> {
        let probe = BBox { min: p.clone(), max: p.clone() };
        let mut inside = BTreeSet::new();
        let mut boundary = BTreeSet::new();
        for c in self.cells_near(&probe) {
            match locate_in_polygon(p, &self.cell_polygon(c)) {
                Location::Inside => {
                    inside.insert(self.color(c));
                }
                Location::Boundary => {
                    boundary.insert(self.color(c));
                }
                Location::Outside => {}
            }
        }
        if inside.is_empty() {
            boundary
        } else {
            inside
        }
    }

    /// Translate of a canonical vertex placed at `o`.
    pub fn vertex_point(&self, id: usize, o: Offset) -> Point {
        &self.vertices[id].point + &self.offset_vec(o)
    }

    /// Finds a vertex (and translate) located exactly at `p`.
    pub fn vertex_at(&self, p: &Point) -> Option<(usize, Offset)> {
        let (rep, o) = match &self.lattice {
            Some(l) => l.reduce(p),
            None => (p.clone(), (0, 0)),
        };
        self.vertices.iter().find(|v| v.point == rep).map(|v| (v.id, o))
    }

    /// Largest squared diameter of a region.
    pub fn max_diameter_sq(&self) -> FieldScalar {
        let mut best = FieldScalar::zero();
        for r in &self.regions {
            let d = crate::distance::diameter_sq(&r.polygon);
            if d.cmp_value(&best) == Ordering::Greater {
                best = d;
            }
        }
        best
    }

    /// Same tiling with one region recolored; validation of colors is
    /// skipped so conflicts can be studied.
    pub fn recolored(&self, region: usize, color: u32) -> Result<Tiling, BuildError> {
        let mut raw = self.raw.clone();
        raw.regions[region].color = color;
        build::build(raw, BuildOptions { check_colors: false })
    }
}
