use collinear::curves::{validate_curve, Station};
use collinear::plane_graph::samples::*;
use collinear::realize::{curve_to_drawing, verify_drawing};
use collinear::three_tree::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn k4_decomposes_to_one_leaf() {
    let d = decompose(&k4()).unwrap();
    let r = d.root();
    assert_eq!((r.m, r.a, r.b, r.c, r.d), (1, 1, 0, 0, 0));
    assert_eq!(r.kind, Some(VertexType::A));
}

#[test]
fn five_vertices_make_one_chain() {
    let g = plane_3tree_from_choices(&[0, 0]);
    let d = decompose(&g).unwrap();
    let r = d.root();
    assert_eq!(r.kind, Some(VertexType::B));
    assert_eq!((r.a, r.b), (1, 1));
    assert_eq!(d.b_chains, vec![vec![3]]);
}

#[test]
fn empty_triangle_curves_have_no_vertices() {
    let g = triangle();
    let d = decompose(&g).unwrap();
    let b = build_curve_bundle(&g, &d).unwrap();
    for c in b.curves() {
        assert_eq!(c.vertex_count(), 0);
        assert_eq!(c.stations.len(), 3);
    }
    assert_eq!(b.s, 0);
}

#[test]
fn k4_curves_all_pass_the_center() {
    let g = k4();
    let d = decompose(&g).unwrap();
    let b = build_curve_bundle(&g, &d).unwrap();
    assert_eq!(b.s, 3);
    for c in b.curves() {
        assert_eq!(c.vertices(), vec![3]);
    }
}

#[test]
fn curve_ends_on_the_right_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = random_plane_3tree(40, 0.3, &mut rng);
    let d = decompose(&g).unwrap();
    let b = build_curve_bundle(&g, &d).unwrap();
    let [u, v, z] = b.corners;
    let ends = |c: &collinear::curves::GoodCurve| {
        let mut e = vec![c.stations[0], *c.stations.last().unwrap()];
        e.sort_by_key(|s| format!("{s:?}"));
        e
    };
    let cross = |a: usize, b: usize| Station::Crossing((a.min(b), a.max(b)));
    let want = |p: Station, q: Station| {
        let mut e = vec![p, q];
        e.sort_by_key(|s| format!("{s:?}"));
        e
    };
    assert_eq!(ends(&b.lambda_u), want(cross(u, v), cross(u, z)));
    assert_eq!(ends(&b.lambda_v), want(cross(u, v), cross(v, z)));
    assert_eq!(ends(&b.lambda_z), want(cross(u, z), cross(v, z)));
}

#[test]
fn ladder_chord_crosses_separating_rungs() {
    // 3 inside the outer triangle, 4 inside (0,2,3), 5 inside (3,0,4).
    let g = plane_3tree_from_choices(&[0, 0, 4]);
    let d = decompose(&g).unwrap();
    assert_eq!(d.root().m, 3);
    let f = |w: &[usize]| Station::Face(g.face_matching_walk(w).unwrap());
    let l = Ladder::new(&g, &[2, 4], &[1, 3]).unwrap();
    assert_eq!(l.face_count(), 2);
    let c = l.chord(CyclePoint::on(1, 2), CyclePoint::on(3, 4)).unwrap();
    assert_eq!(
        c,
        vec![Station::Crossing((1, 2)), f(&[1, 3, 2]), Station::Crossing((2, 3)), f(&[2, 3, 4]), Station::Crossing((3, 4))]
    );
    // A rung endpoint is visited, not crossed.
    let c = l.chord(CyclePoint::Vertex(2), CyclePoint::on(3, 4)).unwrap();
    assert_eq!(c, vec![Station::Vertex(2), f(&[2, 3, 4]), Station::Crossing((3, 4))]);
    let back = l.chord(CyclePoint::on(3, 4), CyclePoint::on(1, 2)).unwrap();
    assert_eq!(back.len(), 5);
    assert!(matches!(l.chord(CyclePoint::Vertex(2), CyclePoint::on(2, 4)), Err(BundleError::SameEdge(..))));
    assert!(matches!(l.chord(CyclePoint::Vertex(2), CyclePoint::Vertex(1)), Err(BundleError::SameEdge(..))));
}

fn audit(n: usize, bias: f64, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_plane_3tree(n, bias, &mut rng);
    let d = decompose(&g).unwrap();
    let all = node_bundles(&g, &d).unwrap();
    let rep = check_counting_bounds(&d, &all);
    assert!(rep.ok(), "n={n} seed={seed}: {:?}", rep.first());
    let b = build_curve_bundle(&g, &d).unwrap();
    let types = d.vertex_types();
    for c in b.curves() {
        let r = validate_curve(&g, c).unwrap();
        assert!(r.good && r.proper);
        for v in c.vertices() {
            assert!(matches!(types[&v], VertexType::A | VertexType::B), "type {:?} on a curve", types[&v]);
        }
    }
    for (&v, &t) in &types {
        if t == VertexType::A {
            assert!(b.curves().iter().all(|c| c.vertices().contains(&v)));
        }
    }
    assert!(8 * b.best().vertex_count() >= n - 3);
}

#[test]
fn random_bundles_meet_the_counts() {
    for seed in 0..40 {
        audit(10 + 7 * seed as usize, if seed % 2 == 0 { 0.0 } else { 0.7 }, seed);
    }
}

#[test]
fn best_curve_is_drawn_on_a_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = random_plane_3tree(30, 0.5, &mut rng);
    let d = decompose(&g).unwrap();
    let b = build_curve_bundle(&g, &d).unwrap();
    let dr = curve_to_drawing(&g, b.best()).unwrap();
    assert!(verify_drawing(&g, &dr).unwrap().ok());
}

#[test]
fn dp_matches_the_oracle_on_small_trees() {
    use collinear::oracle::{catalog_plane_3trees, enumerate_curves, DEFAULT_EDGE_LIMIT};
    for m in 0..=4 {
        for g in catalog_plane_3trees(m).unwrap() {
            let d = decompose(&g).unwrap();
            let dp = dp_optimal_collinear(&g, &d);
            let o = enumerate_curves(&g, None, DEFAULT_EDGE_LIMIT).unwrap();
            assert_eq!(dp.best_count, o.max_vertices);
            assert_eq!(dp.best.vertex_count(), dp.best_count);
        }
    }
}

#[test]
fn dp_small_values() {
    let g = triangle();
    let dp = dp_optimal_collinear(&g, &decompose(&g).unwrap());
    assert_eq!((dp.best_count, dp.best_internal), (2, 0));
    let g = k4();
    let dp = dp_optimal_collinear(&g, &decompose(&g).unwrap());
    assert_eq!((dp.best_count, dp.best_internal), (2, 1));
}

#[test]
fn dp_is_at_least_the_bundle() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in [12, 40, 90] {
        let g = random_plane_3tree(n, 0.4, &mut rng);
        let d = decompose(&g).unwrap();
        let dp = dp_optimal_collinear(&g, &d);
        let b = build_curve_bundle(&g, &d).unwrap();
        assert!(dp.best_internal >= b.best().vertex_count());
    }
}

#[test]
fn augment_keeps_three_trees() {
    let g = k4();
    let (h, added) = augment_to_plane_3tree(&g).unwrap();
    assert!(added.is_empty());
    assert_eq!(h.rotations(), g.rotations());
    let (h, added) = augment_to_plane_3tree(&triangle()).unwrap();
    assert!(added.is_empty() && h.vertex_count() == 3);
}

/// `h` restricted to the edges of `g` has the rotations of `g`.
fn restricts_to(h: &collinear::plane_graph::PlaneGraph, g: &collinear::plane_graph::PlaneGraph) -> bool {
    (0..g.vertex_count()).all(|v| {
        let r: Vec<usize> = h.rotation(v).iter().copied().filter(|&w| g.has_edge(v, w)).collect();
        let o = g.rotation(v);
        r.len() == o.len() && (0..r.len()).any(|s| (0..r.len()).all(|i| r[(s + i) % r.len()] == o[i]))
    })
}

#[test]
fn augment_four_cycle() {
    let g = cycle(4);
    let (h, added) = augment_to_plane_3tree(&g).unwrap();
    assert!(is_plane_3tree(&h));
    assert_eq!(added.len(), 2);
    assert!(restricts_to(&h, &g));
}

#[test]
fn augment_path_on_three_vertices() {
    let g = collinear::plane_graph::PlaneGraph::new(vec![vec![1], vec![0, 2], vec![1]], &[0, 1, 2, 1]).unwrap();
    let (h, added) = augment_to_plane_3tree(&g).unwrap();
    assert_eq!(added, vec![(0, 2)]);
    assert!(is_plane_3tree(&h));
}

#[test]
fn augment_after_deleting_edges() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for round in 0..60 {
        let n = rng.gen_range(5..40);
        let t = random_plane_3tree(n, 0.3, &mut rng);
        let mut rot: Vec<Vec<usize>> = t.rotations().to_vec();
        // Drop edges while the graph stays connected.
        let mut edges = t.edges();
        let drops = rng.gen_range(1..=edges.len() / 3);
        for _ in 0..drops {
            let i = rng.gen_range(0..edges.len());
            let (a, b) = edges.swap_remove(i);
            let mut r2 = rot.clone();
            r2[a].retain(|&x| x != b);
            r2[b].retain(|&x| x != a);
            if r2[a].is_empty() || r2[b].is_empty() {
                continue;
            }
            let d = r2.iter().position(|r| !r.is_empty()).unwrap();
            if let Ok(g) = collinear::plane_graph::PlaneGraph::with_outer_dart(r2.clone(), d, r2[d][0]) {
                if g.is_connected() {
                    rot = r2;
                }
            }
        }
        let outer = t.face_darts(t.outer_face())[0];
        let (oa, ob) = (t.tail(outer), t.head(outer));
        let g = if rot[oa].contains(&ob) {
            collinear::plane_graph::PlaneGraph::with_outer_dart(rot, oa, ob).unwrap()
        } else {
            let d = rot.iter().position(|r| !r.is_empty()).unwrap();
            let w = rot[d][0];
            collinear::plane_graph::PlaneGraph::with_outer_dart(rot, d, w).unwrap()
        };
        let (h, added) = augment_to_plane_3tree(&g).unwrap_or_else(|e| panic!("round {round}: {e}"));
        assert!(is_plane_3tree(&h));
        assert!(restricts_to(&h, &g));
        assert_eq!(h.edge_count(), g.edge_count() + added.len());
    }
}
