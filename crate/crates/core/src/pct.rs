//! Line-oriented exact text format for tilings and patches.
//!
//! ```text
//! pct 1
//! period <x quad> <y quad>        # twice, or absent for a patch
//! ownership above-right|explicit
//! vertex <id> <x quad> <y quad>
//! region <id> <color> <vertex ids, counter-clockwise>
//! own <region id> edge <v1> <v2>
//! own <region id> vertex <v>
//! ```
//!
//! A quad is the four rational coefficients of `a + b√2 + c√3 + d√6`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::exact::{parse_rational, FieldScalar, ScalarParseError};
use crate::geom::Point;
use crate::tiling::{OwnDecl, RawOwnership, RawRegion, RawTiling, Tiling};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PctError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: `{token}` is not a coordinate in Q(√2, √3); give four rational coefficients")]
    NonFieldCoordinate { line: usize, token: String },
    #[error("line {line}: duplicate {kind} id {id}")]
    DuplicateId { line: usize, kind: &'static str, id: u64 },
    #[error("{kind} {id} is referenced but not defined")]
    UnknownReference { kind: &'static str, id: u64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PctOwnership {
    #[default]
    AboveRight,
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PctRegion {
    pub color: u32,
    pub boundary: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PctOwn {
    Edge { region: u64, a: u64, b: u64 },
    Vertex { region: u64, v: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PctDocument {
    pub period: Option<(Point, Point)>,
    pub ownership: PctOwnership,
    pub vertices: BTreeMap<u64, Point>,
    pub regions: BTreeMap<u64, PctRegion>,
    pub owns: BTreeSet<PctOwn>,
}

struct Line<'a> {
    no: usize,
    toks: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> PctError {
        PctError::Syntax { line: self.no, message: message.into() }
    }

    fn id(&self, i: usize) -> Result<u64, PctError> {
        let t = self.toks.get(i).ok_or_else(|| self.err("missing id"))?;
        t.parse().map_err(|_| self.err(format!("`{t}` is not an id")))
    }

    fn scalar(&self, from: usize) -> Result<FieldScalar, PctError> {
        let toks = self.toks.get(from..from + 4).ok_or_else(|| self.err("expected four coefficients"))?;
        for t in toks {
            match parse_rational(t) {
                Ok(_) => {}
                Err(ScalarParseError::NotAFraction(_)) if looks_numeric(t) => {
                    return Err(PctError::NonFieldCoordinate { line: self.no, token: t.to_string() });
                }
                Err(e) => return Err(self.err(e.to_string())),
            }
        }
        FieldScalar::parse_tokens(toks).map_err(|e| self.err(e.to_string()))
    }

    fn point(&self, from: usize) -> Result<Point, PctError> {
        if self.toks.len() != from + 8 {
            return Err(self.err(format!("expected 8 coefficients, found {}", self.toks.len().saturating_sub(from))));
        }
        Ok(Point::new(self.scalar(from)?, self.scalar(from + 4)?))
    }
}

/// Decimal or radical notation: a number, just not an exact field one.
fn looks_numeric(t: &str) -> bool {
    t.parse::<f64>().is_ok() || t.contains("sqrt") || t.contains('√') || t.contains('^')
}

pub fn parse_pct(text: &str) -> Result<PctDocument, PctError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let body = l.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some(Line { no: i + 1, toks })
    });
    match lines.next() {
        Some(l) if l.toks == ["pct", "1"] => {}
        Some(l) => return Err(l.err("expected header `pct 1`")),
        None => return Err(PctError::Syntax { line: 1, message: "empty document".into() }),
    }
    let mut doc = PctDocument::default();
    let mut periods = Vec::new();
    let mut ownership_seen = false;
    let mut owns = Vec::new();
    for l in lines {
        match l.toks[0] {
            "period" => {
                if periods.len() == 2 {
                    return Err(l.err("more than two period lines"));
                }
                periods.push(l.point(1)?);
            }
            "ownership" => {
                if ownership_seen {
                    return Err(l.err("repeated ownership line"));
                }
                ownership_seen = true;
                doc.ownership = match l.toks.get(1..) {
                    Some(["above-right"]) => PctOwnership::AboveRight,
                    Some(["explicit"]) => PctOwnership::Explicit,
                    _ => return Err(l.err("ownership must be `above-right` or `explicit`")),
                };
            }
            "vertex" => {
                let id = l.id(1)?;
                let p = l.point(2)?;
                if doc.vertices.insert(id, p).is_some() {
                    return Err(PctError::DuplicateId { line: l.no, kind: "vertex", id });
                }
            }
            "region" => {
                let id = l.id(1)?;
                let color: u32 = l
                    .toks
                    .get(2)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| l.err("missing or invalid color"))?;
                let boundary = (3..l.toks.len()).map(|i| l.id(i)).collect::<Result<Vec<_>, _>>()?;
                if boundary.len() < 3 {
                    return Err(l.err("a region needs at least three vertices"));
                }
                if doc.regions.insert(id, PctRegion { color, boundary }).is_some() {
                    return Err(PctError::DuplicateId { line: l.no, kind: "region", id });
                }
            }
            "own" => {
                let region = l.id(1)?;
                let own = match (l.toks.get(2).copied(), l.toks.len()) {
                    (Some("edge"), 5) => PctOwn::Edge { region, a: l.id(3)?, b: l.id(4)? },
                    (Some("vertex"), 4) => PctOwn::Vertex { region, v: l.id(3)? },
                    _ => return Err(l.err("expected `own <region> edge <a> <b>` or `own <region> vertex <v>`")),
                };
                owns.push((l.no, own));
            }
            other => return Err(l.err(format!("unknown keyword `{other}`"))),
        }
    }
    match periods.len() {
        0 => {}
        2 => doc.period = Some((periods[0].clone(), periods[1].clone())),
        _ => return Err(PctError::Syntax { line: 1, message: "expected two period lines or none".into() }),
    }
    if let Some((no, _)) = owns.first() {
        if doc.ownership != PctOwnership::Explicit {
            return Err(PctError::Syntax { line: *no, message: "`own` lines need `ownership explicit`".into() });
        }
    }
    doc.owns = owns.into_iter().map(|(_, o)| o).collect();
    Ok(doc)
}

fn push_point(out: &mut String, p: &Point) {
    let _ = write!(out, " {} {}", p.x, p.y);
}

/// Canonical text: sorted ids, reduced fractions, LF endings.
pub fn write_pct(doc: &PctDocument) -> String {
    let mut out = String::from("pct 1\n");
    if let Some((t1, t2)) = &doc.period {
        for t in [t1, t2] {
            out.push_str("period");
            push_point(&mut out, t);
            out.push('\n');
        }
    }
    out.push_str(match doc.ownership {
        PctOwnership::AboveRight => "ownership above-right\n",
        PctOwnership::Explicit => "ownership explicit\n",
    });
    for (id, p) in &doc.vertices {
        let _ = write!(out, "vertex {id}");
        push_point(&mut out, p);
        out.push('\n');
    }
    for (id, r) in &doc.regions {
        let _ = write!(out, "region {id} {}", r.color);
        for v in &r.boundary {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    for o in &doc.owns {
        let _ = match o {
            PctOwn::Edge { region, a, b } => writeln!(out, "own {region} edge {a} {b}"),
            PctOwn::Vertex { region, v } => writeln!(out, "own {region} vertex {v}"),
        };
    }
    out
}

pub fn write_tiling(t: &Tiling) -> String {
    write_pct(&PctDocument::from_raw(t.raw()))
}

impl PctDocument {
    /// Ids are the input indices.
    pub fn from_raw(raw: &RawTiling) -> PctDocument {
        let vertices = raw.points.iter().enumerate().map(|(i, p)| (i as u64, p.clone())).collect();
        let regions = raw
            .regions
            .iter()
            .enumerate()
            .map(|(i, r)| {
                (i as u64, PctRegion { color: r.color, boundary: r.boundary.iter().map(|&v| v as u64).collect() })
            })
            .collect();
        let (ownership, owns) = match &raw.ownership {
            RawOwnership::AboveRight => (PctOwnership::AboveRight, BTreeSet::new()),
            RawOwnership::Explicit(ds) => (
                PctOwnership::Explicit,
                ds.iter()
                    .map(|d| match *d {
                        OwnDecl::Edge { region, a, b } => {
                            PctOwn::Edge { region: region as u64, a: a as u64, b: b as u64 }
                        }
                        OwnDecl::Vertex { region, v } => PctOwn::Vertex { region: region as u64, v: v as u64 },
                    })
                    .collect(),
            ),
        };
        PctDocument { period: raw.lattice.clone(), ownership, vertices, regions, owns }
    }

    /// Input for the tiling builder; ids become dense indices in sorted
    /// order.
    pub fn to_raw(&self) -> Result<RawTiling, PctError> {
        let vidx: HashMap<u64, usize> = self.vertices.keys().enumerate().map(|(i, &id)| (id, i)).collect();
        let ridx: HashMap<u64, usize> = self.regions.keys().enumerate().map(|(i, &id)| (id, i)).collect();
        let v = |id: u64| vidx.get(&id).copied().ok_or(PctError::UnknownReference { kind: "vertex", id });
        let r = |id: u64| ridx.get(&id).copied().ok_or(PctError::UnknownReference { kind: "region", id });
        let mut regions = Vec::new();
        for reg in self.regions.values() {
            let boundary = reg.boundary.iter().map(|&id| v(id)).collect::<Result<Vec<_>, _>>()?;
            regions.push(RawRegion { color: reg.color, boundary });
        }
        let ownership = match self.ownership {
            PctOwnership::AboveRight => RawOwnership::AboveRight,
            PctOwnership::Explicit => RawOwnership::Explicit(
                self.owns
                    .iter()
                    .map(|o| {
                        Ok(match *o {
                            PctOwn::Edge { region, a, b } => OwnDecl::Edge { region: r(region)?, a: v(a)?, b: v(b)? },
                            PctOwn::Vertex { region, v: x } => OwnDecl::Vertex { region: r(region)?, v: v(x)? },
                        })
                    })
                    .collect::<Result<Vec<_>, PctError>>()?,
            ),
        };
        Ok(RawTiling {
            points: self.vertices.values().cloned().collect(),
            regions,
            lattice: self.period.clone(),
            ownership,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_builtin, FixtureName};

    #[test]
    fn vertex_line() {
        let doc = parse_pct("pct 1\nvertex 3 1/2 0 0 0 0 0 1/2 0\n").unwrap();
        let p = &doc.vertices[&3];
        assert_eq!(p.y.square(), FieldScalar::frac(3, 4));
        assert_eq!(p.x, FieldScalar::frac(1, 2));
    }

    #[test]
    fn zero_denominator_has_line() {
        let e = parse_pct("pct 1\n# c\nvertex 0 1/3 0 0 0 1/0 0 0 0\n").unwrap_err();
        assert!(matches!(e, PctError::Syntax { line: 3, .. }), "{e}");
    }

    #[test]
    fn decimals_are_not_field() {
        let e = parse_pct("pct 1\nvertex 0 0.5 0 0 0 0 0 0 0\n").unwrap_err();
        assert!(matches!(e, PctError::NonFieldCoordinate { line: 2, .. }));
    }

    #[test]
    fn duplicate_ids() {
        let e = parse_pct("pct 1\nvertex 0 0 0 0 0 0 0 0 0\nvertex 0 1 0 0 0 0 0 0 0\n").unwrap_err();
        assert!(matches!(e, PctError::DuplicateId { line: 3, kind: "vertex", id: 0 }));
    }

    #[test]
    fn fixtures_round_trip() {
        for f in FixtureName::ALL {
            let t = gen_builtin(f);
            let text = write_tiling(&t);
            let doc = parse_pct(&text).unwrap();
            assert_eq!(write_pct(&doc), text);
            assert_eq!(&doc.to_raw().unwrap(), t.raw());
        }
        assert!(write_tiling(&gen_builtin(FixtureName::Tri8)).contains("\nownership above-right\n"));
    }

    #[test]
    fn empty_document() {
        assert_eq!(write_pct(&PctDocument::default()), "pct 1\nownership above-right\n");
    }
}
