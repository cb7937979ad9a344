mod common;

use common::*;
use polycolor::generators::{fig5_points, gen_builtin, FixtureName, RawBuilder};
use polycolor::geom::{orient, Point};
use polycolor::tiling::{enumerate_borderlines, Borderline, BuildOptions, Patch, Tiling};
use polycolor::triangles::{
    find_degree_ge4_vertex, is_triangle_tiling, obtuse_chain_audit, ChainHypotheses, DegreeSearch, HypothesisFlag,
    TriangleError, NOT_FOUND_CAVEAT,
};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn patch_of(polys: &[Vec<Point>]) -> Patch {
    let mut b = RawBuilder::new();
    for (k, p) in polys.iter().enumerate() {
        let mut p = p.clone();
        if p.len() == 3 && orient(&p[0], &p[1], &p[2]) < 0 {
            p.reverse();
        }
        b.region(k as u32 + 1, &p);
    }
    let t = Tiling::build_with(b.finish(None), BuildOptions { check_colors: false }).unwrap();
    Patch::whole(&t).unwrap()
}

fn line(ls: &[Borderline], p: &Point, q: &Point) -> Borderline {
    let on = |l: &Borderline, x: &Point| {
        &l.start == x || &l.end == x || polycolor::geom::on_open_segment(x, &l.start, &l.end)
    };
    ls.iter().find(|l| on(l, p) && on(l, q) && (&l.start == p || &l.end == p || &l.start == q || &l.end == q)).unwrap().clone()
}

#[test]
fn chain_stops_at_p() {
    let t = gen_builtin(FixtureName::Fig5Patch);
    let patch = Patch::whole(&t).unwrap();
    let ls = enumerate_borderlines(&patch);
    let n = fig5_points();
    let h = ChainHypotheses::new(line(&ls, &n.a, &n.b), line(&ls, &n.b, &n.c), line(&ls, &n.c, &n.d)).unwrap();
    h.check().unwrap();
    let out = obtuse_chain_audit(&patch, &h).unwrap();
    assert_eq!(patch.vertices[out.vertex].point, n.p);
    assert_eq!(out.degree, 4);
    assert!(matches!(find_degree_ge4_vertex(&patch).unwrap(), DegreeSearch::Found { degree, .. } if degree >= 4));
}

#[test]
fn chain_can_stop_at_an_endpoint() {
    let p = Point::int;
    let (b, c, z, a, d, l) = (p(0, 0), p(2, 0), p(1, 1), p(2, 2), p(4, 1), p(1, -1));
    let patch = patch_of(&[
        vec![b.clone(), c.clone(), z.clone()],
        vec![c.clone(), d.clone(), z.clone()],
        vec![z.clone(), d.clone(), a.clone()],
        vec![b.clone(), l.clone(), c.clone()],
        vec![c.clone(), l.clone(), d.clone()],
    ]);
    let ls = enumerate_borderlines(&patch);
    let h = ChainHypotheses::new(line(&ls, &a, &b), line(&ls, &b, &c), line(&ls, &c, &d)).unwrap();
    let out = obtuse_chain_audit(&patch, &h).unwrap();
    assert_eq!(patch.vertices[out.vertex].point, c);
    assert_eq!(out.degree, 4);
}

#[test]
fn meeting_rays_violate_the_hypotheses() {
    let p = Point::int;
    let (b, c, a, d) = (p(0, 0), p(4, 0), p(1, 2), p(3, 2));
    let patch = patch_of(&[vec![b.clone(), c.clone(), a.clone()], vec![a.clone(), c.clone(), d.clone()]]);
    let ls = enumerate_borderlines(&patch);
    let h = ChainHypotheses::new(line(&ls, &a, &b), line(&ls, &b, &c), line(&ls, &c, &d)).unwrap();
    assert!(!h.rays_disjoint);
    assert_eq!(
        obtuse_chain_audit(&patch, &h),
        Err(TriangleError::HypothesesViolated(HypothesisFlag::RaysIntersect))
    );
}

#[test]
fn small_patches() {
    let p = Point::int;
    let two = patch_of(&[vec![p(0, 0), p(1, 0), p(1, 1)], vec![p(0, 0), p(1, 1), p(0, 1)]]);
    assert_eq!(find_degree_ge4_vertex(&two), Ok(DegreeSearch::NotFound { caveat: NOT_FOUND_CAVEAT }));
    let mixed = patch_of(&[
        vec![p(0, 0), p(1, 0), p(1, 1)],
        vec![p(0, 0), p(1, 1), p(0, 1)],
        vec![p(1, 0), p(2, 0), p(2, 1), p(1, 1)],
    ]);
    let r = is_triangle_tiling(&mixed);
    assert!(!r.is_triangle_tiling);
    assert_eq!(r.issues.len(), 1);
    assert_eq!(r.issues[0].corners, 4);
    assert!(matches!(find_degree_ge4_vertex(&mixed), Err(TriangleError::NotTriangleTiling(v)) if v.len() == 1));
}

#[test]
fn random_refinements_match_brute_force_degrees() {
    let mut rng = StdRng::seed_from_u64(5);
    let mut found = 0;
    for round in 0..40 {
        let max = 4 + (round * 5) % 60;
        let (t, tris) = random_triangle_patch(&mut rng, max);
        let patch = Patch::whole(&t).unwrap();
        assert!(is_triangle_tiling(&patch).is_triangle_tiling);
        let oracle = brute_force_degrees(&tris);
        let has4 = oracle.iter().any(|(_, d)| *d >= 4);
        match find_degree_ge4_vertex(&patch).unwrap() {
            DegreeSearch::Found { vertex, degree } => {
                found += 1;
                let pt = &patch.vertices[vertex].point;
                let (_, d) = oracle.iter().find(|(q, _)| q == pt).expect("interior vertex");
                assert_eq!(*d, degree);
                assert!(degree >= 4);
            }
            DegreeSearch::NotFound { .. } => assert!(!has4, "round {round}"),
        }
        // every interior vertex agrees with the oracle
        for v in patch.vertices.iter().filter(|v| v.is_interior()) {
            let (_, d) = oracle.iter().find(|(q, _)| *q == v.point).expect("oracle sees vertex");
            assert_eq!(*d, v.degree());
        }
    }
    assert!(found > 10);
}
