use polycolor::distance::OwnedCell;
use polycolor::exact::FieldScalar;
use polycolor::generators::{gen_builtin, FixtureName};
use polycolor::geom::{cross, locate_in_polygon, on_open_segment, BBox, Location, Point};
use polycolor::tiling::Tiling;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const PERIODIC: [FixtureName; 4] = [FixtureName::Hex7, FixtureName::Square7, FixtureName::Tri8, FixtureName::Grid9];

fn rat(rng: &mut StdRng, lo: i64, hi: i64) -> FieldScalar {
    let d = 1000;
    FieldScalar::frac(rng.gen_range(lo * d..hi * d), d)
}

fn owners(t: &Tiling, p: &Point) -> usize {
    let probe = BBox { min: p.clone(), max: p.clone() };
    t.cells_near(&probe)
        .into_iter()
        .map(|c| OwnedCell::from_tiling(t, c))
        .filter(|c| {
            locate_in_polygon(p, &c.polygon) == Location::Inside
                || c.segments.iter().any(|s| on_open_segment(p, &s.p, &s.q))
                || c.points.contains(p)
        })
        .count()
}

#[test]
fn random_points_lie_in_exactly_one_closure() {
    let mut rng = StdRng::seed_from_u64(7);
    for f in PERIODIC {
        let t = gen_builtin(f);
        for _ in 0..300 {
            let p = Point::new(rat(&mut rng, -3, 3), rat(&mut rng, -3, 3));
            let probe = BBox { min: p.clone(), max: p.clone() };
            let locs: Vec<Location> =
                t.cells_near(&probe).iter().map(|&c| locate_in_polygon(&p, &t.cell_polygon(c))).collect();
            let inside = locs.iter().filter(|l| **l == Location::Inside).count();
            let boundary = locs.iter().filter(|l| **l == Location::Boundary).count();
            if boundary == 0 {
                assert_eq!(inside, 1, "{f} at {p}");
            } else {
                assert_eq!(inside, 0, "{f} at {p}");
                assert!(boundary >= 2, "{f} at {p}");
            }
        }
    }
}

#[test]
fn every_point_has_exactly_one_owner() {
    let mut rng = StdRng::seed_from_u64(11);
    for f in PERIODIC {
        let t = gen_builtin(f);
        let mut samples: Vec<Point> = (0..100).map(|_| Point::new(rat(&mut rng, -2, 2), rat(&mut rng, -2, 2))).collect();
        for b in t.borders() {
            for k in 1..4 {
                let tt = FieldScalar::frac(k, 4);
                samples.push(&b.segment.p + &b.segment.dir().scale(&tt));
            }
        }
        for v in t.vertices() {
            samples.push(v.point.clone());
        }
        for p in &samples {
            assert_eq!(owners(&t, p), 1, "{f} at {p}");
        }
    }
}

#[test]
fn ownership_is_total_per_period() {
    for f in PERIODIC {
        let t = gen_builtin(f);
        assert!(t.borders().iter().all(|b| b.owner.is_some()), "{f}");
        assert!(t.vertices().iter().all(|v| v.owner.is_some()), "{f}");
    }
}

#[test]
fn vertices_have_a_turn_and_colors_differ_across_borders() {
    for f in FixtureName::ALL {
        let t = gen_builtin(f);
        for v in t.vertices() {
            let dirs = v.dirs();
            let turns = (0..dirs.len()).any(|i| {
                (i + 1..dirs.len()).any(|j| cross(&dirs[i], &dirs[j]).sign() != 0)
            });
            assert!(turns, "{f} vertex {} is straight", v.id);
            let k = v.degree();
            for i in 0..k {
                if let (Some(a), Some(b)) = (v.wedges[i], v.wedges[(i + 1) % k]) {
                    assert_ne!(t.color(a), t.color(b), "{f} vertex {}", v.id);
                }
            }
        }
        for b in t.borders() {
            if let Some(r) = b.right {
                assert_ne!(t.color(b.left), t.color(r), "{f} border {}", b.id);
            }
        }
    }
}

#[test]
fn square7_vertices_have_degree_three_and_hex_diagonals_are_one() {
    let t = gen_builtin(FixtureName::Square7);
    assert!(t.vertices().iter().all(|v| v.degree() == 3));
    let h = gen_builtin(FixtureName::Hex7);
    let one = FieldScalar::one();
    for r in h.regions() {
        assert_eq!(polycolor::distance::diameter_sq(&r.polygon), one);
    }
}
