mod common;

use common::*;
use polycolor::coloring::{
    build_conflict_graph, build_conflict_graph_with, chromatic_number_exact, verify_coloring, verify_coloring_with,
    ChromaticOutcome,
};
use polycolor::distance::{ConflictMode, ConflictWitness};
use polycolor::exec::Exec;
use polycolor::generators::{gen_builtin, FixtureName};
use polycolor::geom::{locate_surd_in_polygon, Location};
use polycolor::tiling::Tiling;
use rand::rngs::StdRng;
use rand::SeedableRng;

const PERIODIC: [FixtureName; 4] = [FixtureName::Hex7, FixtureName::Square7, FixtureName::Tri8, FixtureName::Grid9];

/// The witness points sit in the closures of the stated cells and are at
/// distance one.
fn sound(t: &Tiling, w: &ConflictWitness) -> bool {
    let Some((x, y)) = &w.points else { return false };
    let inside = |p, c| locate_surd_in_polygon(p, &t.cell_polygon(c)) != Location::Outside;
    w.recheck() && inside(x, w.cells.0) && inside(y, w.cells.1) && w.colors.0 == w.colors.1
}

#[test]
fn periodic_fixtures_verify_clean() {
    for f in PERIODIC {
        let t = gen_builtin(f);
        assert!(verify_coloring(&t).is_empty(), "{f}");
        assert_eq!(
            verify_coloring_with(&t, ConflictMode::OwnedCells, Exec::Sequential),
            verify_coloring_with(&t, ConflictMode::OwnedCells, Exec::Parallel)
        );
    }
}

#[test]
fn recoloring_into_a_conflict_is_caught() {
    let mut rng = StdRng::seed_from_u64(21);
    for f in FixtureName::ALL {
        let t = gen_builtin(f);
        for (u, c, m) in conflicting_recolorings(&t, &mut rng, 20) {
            let ws = verify_coloring(&m);
            assert!(!ws.is_empty(), "{f}: region {u} -> {c}");
            let mine: Vec<_> = ws.iter().filter(|w| w.cells.0.region == u || w.cells.1.region == u).collect();
            assert!(!mine.is_empty(), "{f}: region {u} -> {c}");
            for w in mine {
                assert!(sound(&m, w), "{f}: {w:?}");
            }
        }
    }
}

#[test]
fn search_radius_suffices() {
    for f in PERIODIC {
        let t = gen_builtin(f);
        assert_eq!(build_conflict_graph_with(&t, Exec::default(), 0), build_conflict_graph_with(&t, Exec::default(), 1), "{f}");
    }
}

#[test]
fn valid_colorings_need_at_least_seven() {
    for f in PERIODIC {
        let t = gen_builtin(f);
        assert!(t.colors().len() >= 7, "{f}");
        let g = build_conflict_graph(&t);
        assert!(g.self_loop_nodes().is_empty());
        assert!(g.is_proper(&t.regions().iter().map(|r| r.color).collect::<Vec<_>>()));
        match chromatic_number_exact(&g, 12).unwrap() {
            ChromaticOutcome::Colorable(c) => assert!(c.k >= 7, "{f}: {}", c.k),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn tri8_neighbour_recolor() {
    let t = gen_builtin(FixtureName::Tri8);
    let b = &t.borders()[0];
    let (u, v) = (b.left.region, b.right.unwrap().region);
    assert_ne!(u, v);
    let m = t.recolored(u, t.regions()[v].color).unwrap();
    let ws = verify_coloring(&m);
    assert!(!ws.is_empty());
    assert!(ws.iter().all(|w| sound(&m, w)));
}
