//! Built-in colorings and local configurations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::exact::FieldScalar;
use crate::geom::Point;
use crate::tiling::{BuildError, RawOwnership, RawRegion, RawTiling, Tiling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixtureName {
    Hex7,
    Square7,
    Tri8,
    Grid9,
    Fig4aCollinear,
    Fig4bConcave,
    Fig4cGeneral,
    Fig5Patch,
}

impl FixtureName {
    pub const ALL: [FixtureName; 8] = [
        FixtureName::Hex7,
        FixtureName::Square7,
        FixtureName::Tri8,
        FixtureName::Grid9,
        FixtureName::Fig4aCollinear,
        FixtureName::Fig4bConcave,
        FixtureName::Fig4cGeneral,
        FixtureName::Fig5Patch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::Hex7 => "hex7",
            FixtureName::Square7 => "square7",
            FixtureName::Tri8 => "tri8",
            FixtureName::Grid9 => "grid9",
            FixtureName::Fig4aCollinear => "fig4a",
            FixtureName::Fig4bConcave => "fig4b",
            FixtureName::Fig4cGeneral => "fig4c",
            FixtureName::Fig5Patch => "fig5",
        }
    }

    pub fn is_periodic(self) -> bool {
        matches!(self, FixtureName::Hex7 | FixtureName::Square7 | FixtureName::Tri8 | FixtureName::Grid9)
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let key = s.to_ascii_lowercase().replace(['-', '_'], "");
        let name = match key.as_str() {
            "hex7" => FixtureName::Hex7,
            "square7" => FixtureName::Square7,
            "tri8" => FixtureName::Tri8,
            "grid9" => FixtureName::Grid9,
            "fig4a" | "fig4acollinear" => FixtureName::Fig4aCollinear,
            "fig4b" | "fig4bconcave" => FixtureName::Fig4bConcave,
            "fig4c" | "fig4cgeneral" => FixtureName::Fig4cGeneral,
            "fig5" | "fig5patch" => FixtureName::Fig5Patch,
            _ => return Err(format!("unknown fixture `{s}`")),
        };
        Ok(name)
    }
}

/// Collects regions over a shared, deduplicated point table.
#[derive(Default)]
pub struct RawBuilder {
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    regions: Vec<RawRegion>,
}

impl RawBuilder {
    pub fn new() -> Self {
        RawBuilder::default()
    }

    pub fn point(&mut self, p: Point) -> usize {
        if let Some(&i) = self.index.get(&p) {
            return i;
        }
        self.points.push(p.clone());
        self.index.insert(p, self.points.len() - 1);
        self.points.len() - 1
    }

    pub fn region(&mut self, color: u32, corners: &[Point]) -> usize {
        let boundary = corners.iter().map(|p| self.point(p.clone())).collect();
        self.regions.push(RawRegion { color, boundary });
        self.regions.len() - 1
    }

    pub fn finish(self, lattice: Option<(Point, Point)>) -> RawTiling {
        RawTiling { points: self.points, regions: self.regions, lattice, ownership: RawOwnership::AboveRight }
    }
}

fn q(n: i64, d: i64) -> FieldScalar {
    FieldScalar::frac(n, d)
}

fn r3(n: i64, d: i64) -> FieldScalar {
    FieldScalar::sqrt3() * q(n, d)
}

fn r2(n: i64, d: i64) -> FieldScalar {
    FieldScalar::sqrt2() * q(n, d)
}

/// Raw description of a built-in fixture.
pub fn builtin_raw(name: FixtureName) -> RawTiling {
    match name {
        FixtureName::Hex7 => hex7(),
        FixtureName::Square7 => square7(),
        FixtureName::Tri8 => tri8(),
        FixtureName::Grid9 => grid9(),
        FixtureName::Fig4aCollinear => ints_patch(&[
            (1, &[(0, 0), (2, 0), (2, 2), (1, 2)]),
            (2, &[(0, 0), (1, 2), (-1, 2)]),
            (3, &[(0, 0), (-1, 2), (-2, 2), (-2, 0)]),
            (4, &[(0, 0), (-2, 0), (-2, -2), (2, -2), (2, 0)]),
        ]),
        FixtureName::Fig4bConcave => ints_patch(&[
            (1, &[(0, 0), (2, 0), (2, 1)]),
            (2, &[(0, 0), (2, 1), (2, 2), (1, 2)]),
            (3, &[(0, 0), (1, 2), (-2, 2), (-2, 1)]),
            (4, &[(0, 0), (-2, 1), (-2, -2), (2, -2), (2, 0)]),
        ]),
        FixtureName::Fig4cGeneral => ints_patch(&[
            (1, &[(0, 0), (2, 0), (2, 2), (1, 2)]),
            (2, &[(0, 0), (1, 2), (-2, 2), (-2, 1)]),
            (3, &[(0, 0), (-2, 1), (-2, -2), (-1, -2)]),
            (4, &[(0, 0), (-1, -2), (2, -2), (2, 0)]),
        ]),
        FixtureName::Fig5Patch => fig5(),
    }
}

pub fn gen_builtin(name: FixtureName) -> Tiling {
    Tiling::build(builtin_raw(name)).unwrap_or_else(|e| panic!("built-in fixture {name} is invalid: {e}"))
}

/// Fallible variant for callers that mutate raw fixtures.
pub fn try_build(raw: RawTiling) -> Result<Tiling, BuildError> {
    Tiling::build(raw)
}

fn ints_patch(regions: &[(u32, &[(i64, i64)])]) -> RawTiling {
    let mut b = RawBuilder::new();
    for (color, pts) in regions {
        let corners: Vec<Point> = pts.iter().map(|&(x, y)| Point::int(x, y)).collect();
        b.region(*color, &corners);
    }
    b.finish(None)
}

/// Flat-top hexagons of circumradius 1/2; centers `i·a + j·b`,
/// `a = (3/4, √3/4)`, `b = (0, √3/2)`.
fn hex7() -> RawTiling {
    let center = |i: i64, j: i64| Point::new(q(3 * i, 4), &r3(i, 4) + &r3(j, 2));
    let corners = |c: &Point| -> Vec<Point> {
        let offs = [
            (q(1, 2), FieldScalar::zero()),
            (q(1, 4), r3(1, 4)),
            (q(-1, 4), r3(1, 4)),
            (q(-1, 2), FieldScalar::zero()),
            (q(-1, 4), r3(-1, 4)),
            (q(1, 4), r3(-1, 4)),
        ];
        offs.iter().map(|(x, y)| Point::new(&c.x + x, &c.y + y)).collect()
    };
    let cells = [(0, 0, 1), (1, 0, 2), (1, -1, 3), (0, -1, 4), (-1, 0, 5), (-1, 1, 6), (0, 1, 7)];
    let mut b = RawBuilder::new();
    for (i, j, color) in cells {
        b.region(color, &corners(&center(i, j)));
    }
    // (3, -1) and (1, 2) in hexagon index coordinates
    let t1 = Point::new(q(9, 4), r3(1, 4));
    let t2 = Point::new(q(3, 4), r3(5, 4));
    b.finish(Some((t1, t2)))
}

/// Squares of side √2/2 in rows offset by half a side.
fn square7() -> RawTiling {
    let s = r2(1, 2);
    let mut b = RawBuilder::new();
    for k in 0..7i64 {
        let x0 = s.clone() * FieldScalar::from_int(k);
        let x1 = &x0 + &s;
        let color = ((k + 1) % 7 + 1) as u32;
        b.region(
            color,
            &[
                Point::new(x0.clone(), FieldScalar::zero()),
                Point::new(x1.clone(), FieldScalar::zero()),
                Point::new(x1, s.clone()),
                Point::new(x0, s.clone()),
            ],
        );
    }
    let t1 = Point::new(s.clone() * FieldScalar::from_int(7), FieldScalar::zero());
    let t2 = Point::new(s.clone() * q(5, 2), s);
    b.finish(Some((t1, t2)))
}

/// Colors of the seven squares of reference row `row` (0, -1 or -2; rows
/// below the reference row are negative), read left to right from x = 0
/// (row -1 starts at x = s/2).
pub fn square7_expected_row(row: i64) -> Vec<u32> {
    let shift = match row.rem_euclid(3) {
        0 => 1,
        2 => 4,
        _ => 6,
    };
    (0..7).map(|k| ((k + shift) % 7 + 1) as u32).collect()
}

/// Unit equilateral triangles; `v(i, j) = i·(1, 0) + j·(1/2, √3/2)`.
fn tri8() -> RawTiling {
    let v = |i: i64, j: i64| Point::new(q(2 * i + j, 2), r3(j, 2));
    let mut b = RawBuilder::new();
    for j in 0..2i64 {
        for i in 0..2i64 {
            let (up, down) = match (j % 2, i % 2) {
                (0, 0) => (3, 8),
                (0, _) => (1, 2),
                (_, 0) => (5, 4),
                _ => (7, 6),
            };
            b.region(up, &[v(i, j), v(i + 1, j), v(i, j + 1)]);
            b.region(down, &[v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)]);
        }
    }
    b.finish(Some((Point::int(2, 0), Point::new(q(1, 1), r3(1, 1)))))
}

/// Axis squares of side 3/5, colored `1 + i + 3j` in 3×3 blocks.
fn grid9() -> RawTiling {
    let mut b = RawBuilder::new();
    for j in 0..3i64 {
        for i in 0..3i64 {
            let (x0, y0, x1, y1) = (q(3 * i, 5), q(3 * j, 5), q(3 * i + 3, 5), q(3 * j + 3, 5));
            b.region(
                (1 + i + 3 * j) as u32,
                &[
                    Point::new(x0.clone(), y0.clone()),
                    Point::new(x1.clone(), y0),
                    Point::new(x1, y1.clone()),
                    Point::new(x0, y1),
                ],
            );
        }
    }
    b.finish(Some((Point::rat(9, 5, 0, 1), Point::rat(0, 1, 9, 5))))
}

/// Named points of the borderline-chain configuration.
pub struct Fig5Points {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    pub e: Point,
    pub p: Point,
    pub q: Point,
    pub f: Point,
}

pub fn fig5_points() -> Fig5Points {
    Fig5Points {
        a: Point::int(-4, 2),
        b: Point::int(-2, 0),
        c: Point::int(2, 0),
        d: Point::int(4, 3),
        e: Point::int(-1, 0),
        p: Point::rat(-1, 2, 0, 1),
        q: Point::rat(1, 2, 0, 1),
        f: Point::int(1, 0),
    }
}

fn fig5() -> RawTiling {
    let n = fig5_points();
    let x1 = Point::rat(-5, 2, 1, 1);
    let x3 = Point::rat(3, 2, 3, 4);
    let y1 = Point::rat(5, 2, 3, 2);
    let l = Point::int(0, -1);
    let mut b = RawBuilder::new();
    b.region(1, &[n.b.clone(), n.e.clone(), n.a.clone()]);
    b.region(2, &[n.e.clone(), n.p.clone(), x1.clone()]);
    b.region(3, &[n.p.clone(), x3.clone(), x1]);
    b.region(4, &[n.p.clone(), n.q.clone(), x3]);
    b.region(5, &[n.q.clone(), n.f.clone(), y1]);
    b.region(6, &[n.f.clone(), n.c.clone(), n.d.clone()]);
    b.region(7, &[n.b, l, n.c]);
    b.finish(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in FixtureName::ALL {
            assert_eq!(f.as_str().parse::<FixtureName>().unwrap(), f);
        }
    }

    #[test]
    fn all_fixtures_build() {
        for f in FixtureName::ALL {
            let t = Tiling::build(builtin_raw(f)).unwrap_or_else(|e| panic!("{f}: {e}"));
            assert!(!t.vertices().is_empty(), "{f}");
            let degs: Vec<usize> = t.vertices().iter().map(|v| v.degree()).collect();
            eprintln!("{f}: {} regions, {} borders, degrees {:?}", t.regions().len(), t.borders().len(), degs);
        }
    }

    #[test]
    fn row_tuples() {
        assert_eq!(square7_expected_row(0), vec![2, 3, 4, 5, 6, 7, 1]);
        assert_eq!(square7_expected_row(-1), vec![5, 6, 7, 1, 2, 3, 4]);
        assert_eq!(square7_expected_row(-2), vec![7, 1, 2, 3, 4, 5, 6]);
    }
}
