//! SVG rendering of a window of a tiling, with an optional unit circle
//! overlay.

use std::fmt::Write as _;

use crate::circle::{alternative_arcs, unit_circle_crossings, CircleError, CrossingKind};
use crate::geom::Point;
use crate::tiling::{instantiate_window, Tiling, Window};

/// Fill colors for colors `1..=9`, repeating beyond.
pub const PALETTE: [&str; 9] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#bfef45",
];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RenderOptions {
    /// Draw the unit circle about this vertex with its crossings.
    pub circle: Option<usize>,
    /// Also shade the alternative arcs (degree-4 centers only).
    pub arcs: bool,
}

fn fill(color: u32) -> &'static str {
    PALETTE[(color.max(1) as usize - 1) % PALETTE.len()]
}

fn xy(p: &Point) -> (f64, f64) {
    let (x, y) = p.to_f64();
    (x, -y)
}

/// One filled path per cell meeting the window, then borders, then the
/// overlay. Crossings are filled dots, pseudo-crossings hollow.
pub fn render_svg(t: &Tiling, window: &Window, opts: &RenderOptions) -> Result<String, CircleError> {
    let patch = instantiate_window(t, window);
    let mut out = String::new();
    let (x0, y0) = window.min.to_f64();
    let (x1, y1) = window.max.to_f64();
    let (w, h) = if window.has_interior() { (x1 - x0, y1 - y0) } else { (1.0, 1.0) };
    let stroke = w.max(h) / 400.0;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        x0, -y1, w, h
    );
    for c in &patch.cells {
        let mut d = String::new();
        for (i, p) in c.polygon.iter().enumerate() {
            let (x, y) = xy(p);
            let _ = write!(d, "{}{:.6} {:.6} ", if i == 0 { "M" } else { "L" }, x, y);
        }
        d.push('Z');
        let _ = writeln!(out, r#"<path class="cell" data-color="{}" fill="{}" d="{}"/>"#, c.color, fill(c.color), d);
    }
    for b in &patch.borders {
        let (ax, ay) = xy(&b.segment.p);
        let (bx, by) = xy(&b.segment.q);
        let _ = writeln!(
            out,
            r#"<line class="border" x1="{ax:.6}" y1="{ay:.6}" x2="{bx:.6}" y2="{by:.6}" stroke="black" stroke-width="{stroke:.6}"/>"#
        );
    }
    if let Some(o) = opts.circle {
        let center = &t.vertex(o).map_err(|_| CircleError::UnknownVertex(o))?.point;
        let (cx, cy) = xy(center);
        let _ = writeln!(
            out,
            r#"<circle class="unit-circle" cx="{cx:.6}" cy="{cy:.6}" r="1" fill="none" stroke="black" stroke-width="{stroke:.6}"/>"#
        );
        if opts.arcs && t.vertex(o).map(|v| v.degree()) == Ok(4) {
            for a in alternative_arcs(t, o)? {
                let (sx, sy) = a.start_dir.to_f64();
                let (ex, ey) = a.end_dir.to_f64();
                let (sl, el) = ((sx * sx + sy * sy).sqrt(), (ex * ex + ey * ey).sqrt());
                let (px, py) = (cx + sx / sl, cy - sy / sl);
                let (qx, qy) = (cx + ex / el, cy - ey / el);
                let sweep = (sy.atan2(sx), ey.atan2(ex));
                let span = (sweep.1 - sweep.0).rem_euclid(std::f64::consts::TAU);
                let large = u8::from(span > std::f64::consts::PI);
                let _ = writeln!(
                    out,
                    r#"<path class="alt-arc" fill="none" stroke="black" stroke-width="{:.6}" d="M{px:.6} {py:.6} A1 1 0 {large} 0 {qx:.6} {qy:.6}"/>"#,
                    stroke * 4.0
                );
            }
        }
        let r = stroke * 3.0;
        for c in unit_circle_crossings(t, o)? {
            let (x, y) = c.at.point.to_f64();
            let (class, fill) = match c.kind {
                CrossingKind::Crossing => ("crossing", "black"),
                CrossingKind::Pseudo => ("pseudo-crossing", "white"),
            };
            let _ = writeln!(
                out,
                r#"<circle class="{class}" cx="{x:.6}" cy="{:.6}" r="{r:.6}" fill="{fill}" stroke="black" stroke-width="{stroke:.6}"/>"#,
                -y
            );
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_builtin, FixtureName};

    #[test]
    fn counts_match() {
        let t = gen_builtin(FixtureName::Hex7);
        let w = Window::ints(-1, -1, 2, 2);
        let svg = render_svg(&t, &w, &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<path class=\"cell\"").count(), instantiate_window(&t, &w).cells.len());

        let g = gen_builtin(FixtureName::Grid9);
        let svg = render_svg(&g, &Window::ints(-2, -2, 3, 3), &RenderOptions { circle: Some(0), arcs: true }).unwrap();
        let marks = svg.matches("class=\"crossing\"").count() + svg.matches("class=\"pseudo-crossing\"").count();
        assert_eq!(marks, unit_circle_crossings(&g, 0).unwrap().len());
    }

    #[test]
    fn empty_window() {
        let t = gen_builtin(FixtureName::Hex7);
        let w = Window::ints(0, 0, 0, 0);
        let svg = render_svg(&t, &w, &RenderOptions::default()).unwrap();
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<path").count(), 0);
    }
}
