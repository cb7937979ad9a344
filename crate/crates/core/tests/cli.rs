use std::io::Write;
use std::process::{Command, Stdio};

use polycolor::cli::{fixture_text, run_cli, EXIT_FINDINGS, EXIT_INPUT, EXIT_OK};
use polycolor::exact::{FieldScalar, Rational};
use polycolor::generators::{gen_builtin, FixtureName};
use polycolor::geom::Point;
use polycolor::pct::{parse_pct, write_pct, write_tiling, PctDocument, PctOwn, PctOwnership, PctRegion};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn run(args: &[&str], input: &str) -> (i32, String, String) {
    let argv: Vec<String> = std::iter::once("polycolor").chain(args.iter().copied()).map(String::from).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(&argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn mutated_grid9() -> String {
    let t = gen_builtin(FixtureName::Grid9);
    write_tiling(&t.recolored(0, t.regions()[1].color).unwrap())
}

#[test]
fn exit_codes() {
    let hex = fixture_text(FixtureName::Hex7);
    let grid = fixture_text(FixtureName::Grid9);
    let bad = mutated_grid9();
    let tri = fixture_text(FixtureName::Tri8);
    let fig5 = fixture_text(FixtureName::Fig5Patch);
    let cases: Vec<(Vec<&str>, &str, i32)> = vec![
        (vec!["generate", "hex7"], "", EXIT_OK),
        (vec!["generate", "hex9"], "", EXIT_INPUT),
        (vec!["verify", "-"], &hex, EXIT_OK),
        (vec!["verify", "-"], &bad, EXIT_FINDINGS),
        (vec!["verify", "-"], "pct 2\n", EXIT_INPUT),
        (vec!["verify", "-"], "pct 1\nvertex 0 0.5 0 0 0 0 0 0 0\n", EXIT_INPUT),
        (vec!["verify", "/nonexistent/file.pct"], "", EXIT_INPUT),
        (vec!["vertex", "-", "--at", "v0", "--arcs", "--audit"], &grid, EXIT_OK),
        (vec!["vertex", "-", "--at", "v0", "--audit"], &bad, EXIT_FINDINGS),
        (vec!["vertex", "-", "--at", "v999"], &grid, EXIT_INPUT),
        (vec!["vertex", "-", "--at", "v0", "--walk", "0"], &grid, EXIT_OK),
        (vec!["triangles", "-"], &tri, EXIT_OK),
        (vec!["triangles", "-"], &hex, EXIT_FINDINGS),
        (vec!["chromatic", "-"], &hex, EXIT_OK),
        (vec!["chromatic", "-", "--kmax", "6"], &hex, EXIT_FINDINGS),
        (vec!["chromatic", "-"], &fig5, EXIT_INPUT),
        (vec!["render", "-", "-o", "-"], &hex, EXIT_OK),
        (vec!["frobnicate"], "", EXIT_INPUT),
    ];
    for (args, input, want) in cases {
        let (code, out, err) = run(&args, input);
        assert_eq!(code, want, "{args:?}\nstdout: {out}\nstderr: {err}");
        if code == EXIT_INPUT {
            assert!(!err.is_empty(), "{args:?}");
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let grid = fixture_text(FixtureName::Grid9);
    for args in [vec!["verify", "-"], vec!["vertex", "-", "--at", "0", "--arcs", "--walk", "3", "--audit"]] {
        assert_eq!(run(&args, &grid), run(&args, &grid));
    }
    let (_, out, _) = run(&["chromatic", "-"], &fixture_text(FixtureName::Tri8));
    assert!(out.contains("k=8"));
    assert!(out.lines().last().unwrap().contains("at this period"));
}

#[test]
fn binary_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_polycolor"))
        .args(["verify", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(fixture_text(FixtureName::Hex7).as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 conflicts, 7 colors"));
}

fn scalar(rng: &mut StdRng) -> FieldScalar {
    let mut q = || Rational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=12).into());
    let (a, b, c, d) = (q(), q(), q(), q());
    FieldScalar::new(a, b, c, d)
}

fn random_document(rng: &mut StdRng) -> PctDocument {
    let mut doc = PctDocument::default();
    if rng.gen_bool(0.5) {
        doc.period = Some((Point::new(scalar(rng), scalar(rng)), Point::new(scalar(rng), scalar(rng))));
    }
    let ids: Vec<u64> = (0..rng.gen_range(3..20)).map(|_| rng.gen_range(0..1000)).collect();
    for &id in &ids {
        doc.vertices.insert(id, Point::new(scalar(rng), scalar(rng)));
    }
    let ids: Vec<u64> = doc.vertices.keys().copied().collect();
    for r in 0..rng.gen_range(0..6) {
        let len = rng.gen_range(3..=ids.len().max(3));
        let boundary = (0..len).map(|_| ids[rng.gen_range(0..ids.len())]).collect();
        doc.regions.insert(r * 7 + 1, PctRegion { color: rng.gen_range(1..10), boundary });
    }
    if rng.gen_bool(0.5) {
        doc.ownership = PctOwnership::Explicit;
        for (&region, reg) in &doc.regions {
            doc.owns.insert(PctOwn::Vertex { region, v: reg.boundary[0] });
            doc.owns.insert(PctOwn::Edge { region, a: reg.boundary[0], b: reg.boundary[1] });
        }
    }
    doc
}

#[test]
fn random_documents_round_trip() {
    let mut rng = StdRng::seed_from_u64(8);
    for _ in 0..100 {
        let doc = random_document(&mut rng);
        let text = write_pct(&doc);
        let back = parse_pct(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(write_pct(&back), text);
    }
}
