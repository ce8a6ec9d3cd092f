use collinear::applications::*;
use collinear::geometry::{q, qr, Point, Q};
use collinear::plane_graph::samples::grid;
use collinear::plane_graph::PlaneGraph;
use collinear::realize::verify_drawing;
use collinear::three_tree::random_plane_3tree;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tree(n: usize, seed: u64) -> PlaneGraph {
    random_plane_3tree(n, 0.3, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn random_points(k: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Point> = Vec::new();
    while out.len() < k {
        let p = Point::new(qr(rng.gen_range(-60..60), rng.gen_range(1..8)), qr(rng.gen_range(-60..60), rng.gen_range(1..8)));
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Drops every interior edge whose removal keeps the graph connected, with
/// probability one half.
fn thin(g: &PlaneGraph, seed: u64) -> PlaneGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outer = g.outer_walk();
    let mut rot: Vec<Vec<usize>> = g.rotations().to_vec();
    for (a, b) in g.edges() {
        let on_outer = outer.contains(&a) && outer.contains(&b);
        if on_outer || !rng.gen_bool(0.5) {
            continue;
        }
        let mut r2 = rot.clone();
        r2[a].retain(|&x| x != b);
        r2[b].retain(|&x| x != a);
        if r2[a].is_empty() || r2[b].is_empty() {
            continue;
        }
        if let Ok(h) = PlaneGraph::new(r2.clone(), &outer) {
            if h.is_connected() {
                rot = r2;
            }
        }
    }
    PlaneGraph::new(rot, &outer).unwrap()
}

fn check_placement(g: &PlaneGraph, pts: &[Point]) {
    let d = universal_placement(g, &PointSet { points: pts.to_vec() }).unwrap();
    assert_eq!(d.designated.len(), pts.len());
    let mut used = d.designated.clone();
    used.sort();
    used.dedup();
    assert_eq!(used.len(), pts.len());
    for (i, p) in pts.iter().enumerate() {
        assert_eq!(&d.coords[d.designated[i]], p);
    }
    let rep = verify_drawing(g, &collinear::realize::Drawing::new(d.coords.clone(), Vec::new())).unwrap();
    assert!(rep.ok(), "{}", rep.summary());
}

/// Length of a longest strictly increasing subsequence by the quadratic
/// recurrence.
fn lis_oracle(xs: &[i64]) -> usize {
    let mut best = vec![1; xs.len()];
    for i in 0..xs.len() {
        for j in 0..i {
            if xs[j] < xs[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

#[test]
fn free_set_and_untangle_sizes() {
    assert_eq!(free_set_size(3), 0);
    assert_eq!(free_set_size(11), 1);
    assert_eq!(free_set_size(19), 2);
    assert_eq!(free_set_size(83), 10);
    assert_eq!(free_set_size(163), 20);
    assert_eq!(untangle_bound(11), 1);
    assert_eq!(untangle_bound(131), 4);
    assert_eq!(untangle_bound(163), 5);
    for n in 4..2000 {
        let k = free_set_size(n);
        let r = untangle_bound(n);
        assert!(r * r >= k && (r == 0 || (r - 1) * (r - 1) < k), "n = {n}");
    }
}

#[test]
fn one_point_on_a_small_tree() {
    let g = tree(11, 4);
    check_placement(&g, &[Point::new(qr(17, 3), qr(-5, 2))]);
}

#[test]
fn ten_random_points_on_eighty_three_vertices() {
    for seed in 0..3 {
        check_placement(&tree(83, seed), &random_points(10, 100 + seed));
    }
}

#[test]
fn points_on_a_vertical_line_are_turned() {
    let pts: Vec<Point> = (0..4).map(|i| Point::new(q(2), q(3 * i - 5))).collect();
    assert_ne!(separating_rotation(&pts), Rotation::identity());
    let r = separating_rotation(&pts);
    for p in &pts {
        assert_eq!(&r.invert(&r.apply(p)), p);
        assert_eq!(r.cos.clone() * r.cos.clone() + r.sin.clone() * r.sin.clone(), q(1));
    }
    check_placement(&tree(40, 2), &pts);
}

#[test]
fn placement_errors() {
    let g = tree(20, 1);
    let too_many = PointSet { points: random_points(4, 5) };
    assert_eq!(
        universal_placement(&g, &too_many).unwrap_err(),
        ApplicationError::TooManyPoints { got: 4, max: 3, n: 20 }
    );
    let dup = PointSet { points: vec![Point::int(1, 1), Point::int(1, 1)] };
    assert_eq!(universal_placement(&g, &dup).unwrap_err(), ApplicationError::DuplicatePoints(0, 1));
    assert!(matches!(untangle(&g, &random_points(5, 1)), Err(ApplicationError::WrongLength { want: 20, got: 5 })));
}

#[test]
fn sparser_graphs_are_placed() {
    check_placement(&grid(3), &[Point::int(-7, 4)]);
    for seed in 0..4 {
        let g = thin(&tree(50, seed), seed);
        assert!(g.edge_count() < 3 * 50 - 6);
        check_placement(&g, &random_points(free_set_size(50), seed));
    }
}

#[test]
fn point_set_text_round_trip() {
    let p = PointSet { points: vec![Point::new(qr(-3, 4), q(7)), Point::int(0, 0)] };
    assert_eq!(parse_point_set(&p.to_text()).unwrap(), p);
    assert!(matches!(parse_point_set("1 2\n3"), Err(ApplicationError::Parse { line: 2, .. })));
}

/// Fixed vertices keep their input position, and after the rotation the
/// untangler used, their x-coordinates are monotone along the line.
fn check_untangle(g: &PlaneGraph, bad: &[Point]) -> UntangleResult {
    let n = g.vertex_count();
    let u = untangle(g, bad).unwrap();
    assert!(u.fixed.len() >= untangle_bound(n), "{} < {}", u.fixed.len(), untangle_bound(n));
    for &v in &u.fixed {
        assert_eq!(u.drawing.coords[v], bad[v]);
    }
    let rep = verify_drawing(g, &collinear::realize::Drawing::new(u.drawing.coords.clone(), Vec::new())).unwrap();
    assert!(rep.ok(), "{}", rep.summary());
    let pos: Vec<usize> = u.fixed.iter().map(|v| u.line.iter().position(|x| x == v).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
    let r = separating_rotation(bad);
    let xs: Vec<Q> = u.fixed.iter().map(|&v| r.apply(&bad[v]).x).collect();
    assert!(xs.windows(2).all(|w| w[0] < w[1]) || xs.windows(2).all(|w| w[0] > w[1]));
    u
}

#[test]
fn untangle_small_and_large() {
    let g = tree(11, 3);
    check_untangle(&g, &random_points(11, 7));
    for seed in 0..3 {
        let g = tree(131, seed);
        check_untangle(&g, &random_points(131, 50 + seed));
    }
}

#[test]
fn untangle_a_planar_drawing() {
    let g = tree(60, 8);
    let first = untangle(&g, &random_points(60, 9)).unwrap();
    let again = check_untangle(&g, &first.drawing.coords);
    assert!(again.fixed.len() >= untangle_bound(60));
}

#[test]
fn longest_increasing_matches_quadratic_count() {
    let xs = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5];
    let qs: Vec<Q> = xs.iter().map(|&x| q(x)).collect();
    let idx = longest_increasing(&qs);
    assert_eq!(idx.len(), lis_oracle(&xs));
    assert!(longest_increasing(&[]).is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn increasing_runs_are_longest(xs in proptest::collection::vec(-20i64..20, 0..30)) {
        let qs: Vec<Q> = xs.iter().map(|&x| q(x)).collect();
        let idx = longest_increasing(&qs);
        prop_assert_eq!(idx.len(), lis_oracle(&xs));
        prop_assert!(idx.windows(2).all(|w| w[0] < w[1] && xs[w[0]] < xs[w[1]]));
    }

    #[test]
    fn random_points_land_exactly(n in 11usize..60, seed in 0u64..1000) {
        let g = tree(n, seed);
        let pts = random_points(free_set_size(n), seed ^ 0x55);
        let d = universal_placement(&g, &PointSet { points: pts.clone() }).unwrap();
        for (i, p) in pts.iter().enumerate() {
            prop_assert_eq!(&d.coords[d.designated[i]], p);
        }
    }
}
