use collinear::cubic::{
    build_cubic_curve, chain_decompose, generate_triconnected_cubic, make_quadruple, theorem4, ChainDecomposition,
    CubicError,
};
use collinear::curves::validate_curve;
use collinear::plane_graph::samples;
use collinear::plane_graph::{edge, PlaneGraph};
use collinear::realize::{curve_to_drawing, verify_drawing};

fn drop_outer_edge(g: &PlaneGraph) -> (PlaneGraph, usize, usize) {
    let w = g.outer_walk();
    let (u, v) = (w[0], w[1]);
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    let (h, _) = g.subgraph(&all, |a, b| edge(a, b) != edge(u, v)).unwrap();
    (h, u, v)
}

#[test]
fn k4_minus_an_outer_edge_is_well_formed() {
    let (h, u, v) = drop_outer_edge(&samples::k4());
    let q = make_quadruple(h, u, v, vec![]).unwrap();
    let c = build_cubic_curve(&q).unwrap();
    assert!(c.curve.vertex_count() >= 1);
}

#[test]
fn four_cycle_without_the_edge_fails_on_separation_pairs() {
    let g = samples::cycle(4);
    let e = make_quadruple(g, 0, 2, vec![]).unwrap_err();
    assert_eq!(e.property(), 'e');
}

#[test]
fn cubic_vertex_in_x_fails() {
    let (h, u, v) = drop_outer_edge(&samples::prism());
    let beta = h.boundary_path(u, v, collinear::plane_graph::PathKind::Beta).unwrap().walk;
    let inner = beta[1..beta.len() - 1].iter().copied().find(|&x| h.degree(x) == 3).unwrap();
    let e = make_quadruple(h, u, v, vec![inner]).unwrap_err();
    assert_eq!(e.property(), 'f');
}

#[test]
fn cycle_base_case_charges_v_to_u() {
    // Cycle 0..5 with u=0 and v=1 adjacent: tau is the edge.
    let g = samples::cycle(5);
    let w = g.outer_walk();
    let q = make_quadruple(g.clone(), w[0], w[1], vec![]).unwrap();
    let c = build_cubic_curve(&q).unwrap();
    assert_eq!(c.curve.vertex_count(), 4);
    assert_eq!(c.charges.len(), 1);
    assert_eq!(c.charges[&w[1]], w[0]);
}

#[test]
fn small_cubic_cases() {
    for (name, g, want) in [
        ("k4", samples::k4(), 1),
        ("prism", samples::prism(), 2),
        ("cube", samples::cube(), 2),
        ("dodecahedron", samples::dodecahedron(), 5),
    ] {
        let c = theorem4(&g).unwrap_or_else(|e| panic!("{name}: {e}"));
        let rep = validate_curve(&g, &c.curve).unwrap();
        assert!(rep.good && rep.proper, "{name}");
        assert!(rep.vertex_count_on_curve >= want, "{name}: {}", rep.vertex_count_on_curve);
    }
}

#[test]
fn cubic_curve_rejects_wrong_inputs() {
    assert_eq!(theorem4(&samples::octahedron()).unwrap_err(), CubicError::NotCubic);
}

#[test]
fn generator_small_sizes() {
    let k4 = generate_triconnected_cubic(1, 4).unwrap();
    assert_eq!(k4.edge_count(), 6);
    for seed in 0..5 {
        let p = generate_triconnected_cubic(seed, 6).unwrap();
        assert_eq!(p.vertex_count(), 6);
        // The prism: exactly two triangles, vertex-disjoint.
        let tris: Vec<Vec<usize>> =
            (0..p.face_count()).map(|f| p.face_vertices(f)).filter(|f| f.len() == 3).collect();
        assert_eq!(tris.len(), 2);
        assert!(tris[0].iter().all(|x| !tris[1].contains(x)));
    }
    assert!(generate_triconnected_cubic(0, 7).is_err());
}

#[test]
fn generated_graphs_meet_the_bound() {
    for n in (4..=80).step_by(2) {
        for seed in 0..3 {
            let g = generate_triconnected_cubic(seed * 1000 + n as u64, n).unwrap();
            let c = theorem4(&g).unwrap_or_else(|e| panic!("n={n} seed={seed}: {e}"));
            let k = c.curve.vertex_count();
            assert!(4 * k >= n, "n={n}: {k}");
            assert!(c.load().values().all(|&l| l <= 3));
        }
    }
}

#[test]
fn cubic_curves_are_drawn_on_a_line() {
    for n in [8, 20, 40] {
        let g = generate_triconnected_cubic(7, n).unwrap();
        let c = theorem4(&g).unwrap();
        let d = curve_to_drawing(&g, &c.curve).unwrap();
        assert!(verify_drawing(&g, &d).unwrap().ok());
        assert!(d.on_horizontal(&collinear::geometry::q(0)).len() >= c.curve.vertex_count());
    }
}

/// Edge 0-1 on top; below it the path 0-2-3, a diamond 3,4,5,6 and 5-7-1.
fn ladder_with_diamond() -> PlaneGraph {
    let pts = [(0.0, 0.0), (10.0, 0.0), (1.0, -2.0), (3.0, -3.0), (5.0, -5.0), (7.0, -3.0), (5.0, -1.5), (9.0, -2.0)];
    let edges = [(0, 1), (0, 2), (2, 3), (3, 4), (3, 6), (4, 5), (5, 6), (4, 6), (5, 7), (1, 7)];
    samples::from_points(&pts, &edges, &[0, 1, 7, 5, 4, 3, 2])
}

#[test]
fn chain_through_a_diamond() {
    let q = make_quadruple(ladder_with_diamond(), 0, 1, vec![]).unwrap();
    assert_eq!(q.beta(), vec![0, 2, 3, 4, 5, 7, 1]);
    match chain_decompose(&q, 2, 7).unwrap() {
        ChainDecomposition::Chain { paths, blocks } => {
            assert_eq!(paths, vec![vec![2, 3], vec![5, 7]]);
            assert_eq!(blocks.len(), 1);
            let b = &blocks[0];
            assert_eq!((b.to_parent[b.quad.u], b.to_parent[b.quad.v]), (3, 5));
            assert_eq!(b.quad.g.vertex_count(), 4);
        }
        ChainDecomposition::Path(p) => panic!("expected blocks, got path {p:?}"),
    }
    assert!(matches!(chain_decompose(&q, 4, 5), Err(_)));
}

#[test]
fn case_with_the_edge_uv_walks_the_chain() {
    let q = make_quadruple(ladder_with_diamond(), 0, 1, vec![]).unwrap();
    let c = build_cubic_curve(&q).unwrap();
    // 0, 2, 3 along the path; the diamond gives at least one more.
    let vs = c.curve.vertices();
    assert_eq!(&vs[..3], &[0, 2, 3]);
    assert!(vs.len() >= 5, "{vs:?}");
    assert_eq!(c.charges[&1], 0);
    assert!(c.levels >= 2);
}

#[test]
fn x_vertices_are_avoided() {
    let g = samples::cycle(6);
    let w = g.outer_walk();
    let beta = g.boundary_path(w[0], w[1], collinear::plane_graph::PathKind::Beta).unwrap().walk;
    let x = vec![beta[2], beta[4]];
    let q = make_quadruple(g, w[0], w[1], x.clone()).unwrap();
    let c = build_cubic_curve(&q).unwrap();
    assert!(x.iter().all(|v| !c.curve.vertices().contains(v)));
    // The last X vertex is the neighbour of v, so the curve ends across that edge.
    assert_eq!(c.curve.stations.last(), Some(&collinear::curves::Station::Crossing(edge(beta[4], beta[5]))));
}
