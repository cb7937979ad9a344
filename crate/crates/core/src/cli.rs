//! Command-line front end. Reports are one `key=value` finding per line.
//!
//! Exit codes: 0 valid, 1 conflicts or violations found, 2 input error,
//! 3 undecided ordering.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::circle::{
    alternative_arcs, audit_crossing_colors, hexagon_walk_audit, unit_circle_crossings, AuditViolation,
    CircleError, CircleRepr, Crossing, CrossingKind, PointType, Site, WalkStatus,
};
use crate::coloring::{build_conflict_graph, chromatic_number_exact, verify_coloring, ChromaticOutcome};
use crate::distance::Face;
use crate::exact::{parse_rational, FieldScalar, Rational};
use crate::generators::{builtin_raw, FixtureName};
use crate::pct::{parse_pct, write_pct, PctDocument};
use crate::svg::{render_svg, RenderOptions};
use crate::tiling::{instantiate_window, BuildOptions, CellRef, Patch, Tiling, Window};
use crate::triangles::{find_degree_ge4_vertex, is_triangle_tiling, DegreeSearch};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "polycolor", about = "Exact analysis of polygonal colorings of the plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a built-in fixture in PCT format.
    Generate { fixture: String },
    /// Check the unit-distance condition (`-` reads stdin).
    Verify { file: String },
    /// Unit-circle analysis about one vertex.
    Vertex {
        file: String,
        #[arg(long)]
        at: String,
        #[arg(long)]
        arcs: bool,
        /// Index into the crossing list.
        #[arg(long)]
        walk: Option<usize>,
        #[arg(long)]
        audit: bool,
    },
    /// Triangle recognition and the degree search.
    Triangles { file: String },
    /// Exact chromatic number of the conflict graph at the input period.
    Chromatic {
        file: String,
        #[arg(long, default_value_t = 12)]
        kmax: usize,
    },
    /// Draw a window as SVG (`-o -` writes to stdout).
    Render {
        file: String,
        #[arg(short = 'o')]
        output: PathBuf,
        #[arg(long, num_args = 4, value_names = ["X0", "Y0", "X1", "Y1"], allow_hyphen_values = true)]
        window: Option<Vec<String>>,
        #[arg(long)]
        circle: Option<String>,
        #[arg(long)]
        arcs: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<CircleError> for Failure {
    fn from(e: CircleError) -> Failure {
        let code = if e == CircleError::UndecidedOrdering { EXIT_UNDECIDED } else { EXIT_INPUT };
        Failure { code, message: e.to_string() }
    }
}

type Out<'a> = &'a mut dyn Write;

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_cli(argv: &[String], stdin: &mut dyn Read, stdout: Out, stderr: Out) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = Vec::new();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(cli.command, stdin, &mut buf)));
    let _ = stdout.write_all(&buf);
    match result {
        Ok(Ok(code)) => code,
        Ok(Err(f)) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
        Err(_) => {
            let _ = writeln!(stderr, "error: internal failure while processing the input");
            EXIT_INPUT
        }
    }
}

fn read_input(file: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if file == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Failure::input(format!("{file}: {e}")))?;
    }
    Ok(text)
}

/// Colors are not required to be proper so that conflicts can be
/// reported rather than rejected.
fn load(file: &str, stdin: &mut dyn Read) -> Result<Tiling, Failure> {
    let doc = parse_pct(&read_input(file, stdin)?).map_err(|e| Failure::input(e.to_string()))?;
    let raw = doc.to_raw().map_err(|e| Failure::input(e.to_string()))?;
    Tiling::build_with(raw, BuildOptions { check_colors: false }).map_err(|e| Failure::input(e.to_string()))
}

fn vertex_id(t: &Tiling, s: &str) -> Result<usize, Failure> {
    let id: usize = s
        .strip_prefix('v')
        .unwrap_or(s)
        .parse()
        .map_err(|_| Failure::input(format!("`{s}` is not a vertex id")))?;
    t.vertex(id).map_err(|e| Failure::input(e.to_string()))?;
    Ok(id)
}

fn cell(c: CellRef) -> String {
    format!("{}@{},{}", c.region, c.offset.0, c.offset.1)
}

fn opt_cell(c: Option<CellRef>) -> String {
    c.map(cell).unwrap_or_else(|| "none".into())
}

fn face(f: Face) -> String {
    match f {
        Face::Interior => "interior".into(),
        Face::Segment(i) => format!("segment{i}"),
        Face::Point(i) => format!("point{i}"),
    }
}

fn xy((x, y): (f64, f64)) -> String {
    format!("({x:.9},{y:.9})")
}

fn dispatch(cmd: Command, stdin: &mut dyn Read, out: &mut Vec<u8>) -> Result<i32, Failure> {
    match cmd {
        Command::Generate { fixture } => {
            let f: FixtureName = fixture.parse().map_err(|e: String| Failure::input(e))?;
            out.extend_from_slice(write_pct(&PctDocument::from_raw(&builtin_raw(f))).as_bytes());
            Ok(EXIT_OK)
        }
        Command::Verify { file } => verify(&load(&file, stdin)?, out),
        Command::Vertex { file, at, arcs, walk, audit } => {
            let t = load(&file, stdin)?;
            let o = vertex_id(&t, &at)?;
            vertex(&t, o, arcs, walk, audit, out)
        }
        Command::Triangles { file } => triangles(&load(&file, stdin)?, out),
        Command::Chromatic { file, kmax } => chromatic(&load(&file, stdin)?, kmax, out),
        Command::Render { file, output, window, circle, arcs } => {
            let t = load(&file, stdin)?;
            let w = match window {
                Some(v) => {
                    let c = v
                        .iter()
                        .map(|s| parse_rational(s).map(|r| FieldScalar::from_rational(&r)))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| Failure::input(e.to_string()))?;
                    Window::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
                        .ok_or_else(|| Failure::input("window bounds must satisfy x0 <= x1 and y0 <= y1"))?
                }
                None => default_window(&t),
            };
            let circle = circle.map(|s| vertex_id(&t, &s)).transpose()?;
            let svg = render_svg(&t, &w, &RenderOptions { circle, arcs })?;
            if output.as_os_str() == "-" {
                out.extend_from_slice(svg.as_bytes());
            } else {
                std::fs::write(&output, svg).map_err(|e| Failure::input(format!("{}: {e}", output.display())))?;
                writeln_out(out, format!("wrote={}", output.display()));
            }
            Ok(EXIT_OK)
        }
    }
}

fn writeln_out(out: &mut Vec<u8>, line: String) {
    out.extend_from_slice(line.as_bytes());
    out.push(b'\n');
}

fn block_bbox(t: &Tiling) -> crate::geom::BBox {
    crate::geom::BBox::of_points(t.regions().iter().flat_map(|r| r.polygon.iter())).expect("nonempty tiling")
}

fn default_window(t: &Tiling) -> Window {
    let b = block_bbox(t);
    Window { min: b.min, max: b.max }
}

fn verify(t: &Tiling, out: &mut Vec<u8>) -> Result<i32, Failure> {
    let ws = verify_coloring(t);
    let colors = t.colors();
    writeln_out(out, format!("regions={}", t.regions().len()));
    writeln_out(out, format!("conflicts={}", ws.len()));
    writeln_out(out, format!("colors={}", colors.len()));
    for w in &ws {
        let pts = w
            .points
            .as_ref()
            .map(|(a, b)| format!(" point_a={} point_b={} recheck={}", xy(a.to_f64()), xy(b.to_f64()), w.recheck()))
            .unwrap_or_default();
        writeln_out(
            out,
            format!(
                "witness cells={}/{} color={} faces={}/{}{}",
                cell(w.cells.0),
                cell(w.cells.1),
                w.colors.0,
                face(w.faces.0),
                face(w.faces.1),
                pts
            ),
        );
    }
    writeln_out(out, format!("{} conflicts, {} colors", ws.len(), colors.len()));
    Ok(if ws.is_empty() { EXIT_OK } else { EXIT_FINDINGS })
}

fn point_type(p: &PointType) -> String {
    match p {
        PointType::Inward => "inward".into(),
        PointType::Outward => "outward".into(),
        PointType::Alternative(s) => format!("alternative({})", join(s.iter())),
        PointType::Degenerate { inside, outside } => format!("degenerate({inside},{outside})"),
    }
}

fn join<T: ToString>(it: impl Iterator<Item = T>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn crossing_line(t: &Tiling, i: usize, c: &Crossing) -> String {
    let kind = match c.kind {
        CrossingKind::Crossing => "crossing",
        CrossingKind::Pseudo => "pseudo",
    };
    let site = match c.site {
        Site::Border { border, offset } => format!("border={}@{},{}", border, offset.0, offset.1),
        Site::Vertex { vertex, offset } => format!("vertex={}@{},{}", vertex, offset.0, offset.1),
    };
    let colors = |c: Option<CellRef>| c.map(|c| t.color(c).to_string()).unwrap_or_else(|| "none".into());
    let exact = matches!(c.at.repr, CircleRepr::Exact(_));
    format!(
        "crossing index={i} kind={kind} {site} exact={exact} point={} regions={}/{} colors={}/{}",
        xy(c.at.point.to_f64()),
        opt_cell(c.regions.0),
        opt_cell(c.regions.1),
        colors(c.regions.0),
        colors(c.regions.1)
    )
}

fn vertex(t: &Tiling, o: usize, arcs: bool, walk: Option<usize>, audit: bool, out: &mut Vec<u8>) -> Result<i32, Failure> {
    let v = &t.vertices()[o];
    let crossings = unit_circle_crossings(t, o)?;
    let proper = crossings.iter().filter(|c| c.kind == CrossingKind::Crossing).count();
    writeln_out(out, format!("vertex={o} degree={} point={} interior={}", v.degree(), xy(v.point.to_f64()), v.is_interior()));
    writeln_out(out, format!("crossings={proper} pseudo_crossings={}", crossings.len() - proper));
    for (i, c) in crossings.iter().enumerate() {
        writeln_out(out, crossing_line(t, i, c));
    }
    let mut summary = vec![format!("degree {}", v.degree()), format!("crossings {proper}")];
    let mut code = EXIT_OK;
    if arcs {
        let list = alternative_arcs(t, o)?;
        writeln_out(out, format!("alternative_arcs={}", list.len()));
        for (i, a) in list.iter().enumerate() {
            writeln_out(
                out,
                format!(
                    "arc index={i} start={}{} end={}{} excluded={} single_point={}",
                    xy(a.start_dir.to_f64()),
                    if a.start_inclusive { "[" } else { "(" },
                    xy(a.end_dir.to_f64()),
                    if a.end_inclusive { "]" } else { ")" },
                    join(a.excluded.iter()),
                    a.single_point
                ),
            );
        }
        summary.push(format!("alternative arcs {}", list.len()));
    }
    if let Some(k) = walk {
        let start = crossings
            .get(k)
            .ok_or_else(|| Failure::input(format!("crossing index {k} out of range ({} crossings)", crossings.len())))?;
        let r = hexagon_walk_audit(t, o, start)?;
        for (i, (p, s)) in r.points.iter().zip(&r.status).enumerate() {
            let status = match s {
                WalkStatus::NotCrossing => "not_crossing".to_string(),
                WalkStatus::Crossing(p) => format!("crossing type={}", point_type(p)),
            };
            writeln_out(out, format!("walk index={i} point={} status={status}", xy(p.point.to_f64())));
        }
        for (a, b, arc) in &r.same_arc_pairs {
            writeln_out(out, format!("walk same_arc_pair={a},{b} arc={arc}"));
        }
        writeln_out(out, format!("walk inward_outward={}", join(r.inward_outward.iter())));
        summary.push(format!("walk findings {}", r.is_nonempty()));
    }
    if audit {
        let vs = audit_crossing_colors(t, o)?;
        for v in &vs {
            writeln_out(
                out,
                match v {
                    AuditViolation::ColorAtCenter { crossing, cell: c, color } => {
                        format!("violation crossing={crossing} kind=color_at_center cell={} color={color}", cell(*c))
                    }
                    AuditViolation::SamePair { crossing, color } => {
                        format!("violation crossing={crossing} kind=same_pair color={color}")
                    }
                },
            );
        }
        writeln_out(out, format!("violations={}", vs.len()));
        summary.push(format!("violations {}", vs.len()));
        if !vs.is_empty() {
            code = EXIT_FINDINGS;
        }
    }
    writeln_out(out, summary.join(", "));
    Ok(code)
}

fn analysis_patch(t: &Tiling) -> Patch {
    if t.is_periodic() {
        // covers every cell reaching into the block's box, plus slack
        let margin = FieldScalar::from_rational(&Rational::from_integer(t.max_diameter_sq().floor() + 2));
        let b = block_bbox(t).expand(&margin);
        instantiate_window(t, &Window { min: b.min, max: b.max })
    } else {
        Patch::whole(t).expect("finite tiling")
    }
}

fn triangles(t: &Tiling, out: &mut Vec<u8>) -> Result<i32, Failure> {
    let patch = analysis_patch(t);
    let rep = is_triangle_tiling(&patch);
    writeln_out(out, format!("triangle_tiling={}", rep.is_triangle_tiling));
    for i in &rep.issues {
        writeln_out(
            out,
            format!(
                "offender cell={} corners={} reflex={}",
                cell(patch.cells[i.cell].cell),
                i.corners,
                join(i.reflex.iter().map(|p| xy(p.to_f64())))
            ),
        );
    }
    if !rep.is_triangle_tiling {
        writeln_out(out, format!("not a triangle tiling, {} offending cells", rep.issues.len()));
        return Ok(EXIT_FINDINGS);
    }
    match find_degree_ge4_vertex(&patch).map_err(|e| Failure::input(e.to_string()))? {
        DegreeSearch::Found { vertex, degree } => {
            let pv = &patch.vertices[vertex];
            writeln_out(
                out,
                format!("found vertex={} offset={},{} degree={degree} point={}", pv.vertex, pv.offset.0, pv.offset.1, xy(pv.point.to_f64())),
            );
            writeln_out(out, format!("vertex of degree {degree} found"));
        }
        DegreeSearch::NotFound { caveat } => {
            writeln_out(out, format!("not_found caveat=\"{caveat}\""));
            writeln_out(out, "no vertex of degree 4 or more in this patch".into());
        }
    }
    Ok(EXIT_OK)
}

fn chromatic(t: &Tiling, kmax: usize, out: &mut Vec<u8>) -> Result<i32, Failure> {
    let Some(l) = t.lattice() else {
        return Err(Failure::input("chromatic search needs a periodic tiling"));
    };
    let g = build_conflict_graph(t);
    let period = format!("{}|{}", xy(l.t1().to_f64()), xy(l.t2().to_f64()));
    writeln_out(out, format!("nodes={} edges={} self_loops={}", g.node_count(), g.edge_count(), g.self_loop_nodes().len()));
    writeln_out(out, format!("period={period}"));
    if let Some(&u) = g.self_loop_nodes().first() {
        writeln_out(out, format!("self_loop node={u}"));
        writeln_out(out, "no proper coloring exists at this period".into());
        return Ok(EXIT_FINDINGS);
    }
    match chromatic_number_exact(&g, kmax).map_err(|e| Failure::input(e.to_string()))? {
        ChromaticOutcome::Colorable(c) => {
            writeln_out(out, format!("k={}", c.k));
            writeln_out(out, format!("assignment={}", join(c.assignment.iter())));
            if let Some(e) = &c.evidence {
                writeln_out(
                    out,
                    format!("infeasible colors={} clique={} nodes_explored={}", e.colors, join(e.clique.iter()), e.nodes_explored),
                );
            }
            writeln_out(out, format!("chromatic number {} at this period", c.k));
            Ok(EXIT_OK)
        }
        ChromaticOutcome::InfeasibleUpTo { kmax, nodes_explored } => {
            writeln_out(out, format!("infeasible_up_to={kmax} nodes_explored={nodes_explored}"));
            writeln_out(out, format!("no coloring with at most {kmax} colors at this period"));
            Ok(EXIT_FINDINGS)
        }
    }
}

/// Writes a fixture to PCT text (used by tests and scripts).
pub fn fixture_text(f: FixtureName) -> String {
    write_pct(&PctDocument::from_raw(&builtin_raw(f)))
}
