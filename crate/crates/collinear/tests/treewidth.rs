use std::collections::BTreeSet;

use collinear::curves::{validate_curve, Station};
use collinear::plane_graph::{edge, PlaneGraph, Vertex};
use collinear::realize::{curve_to_drawing, verify_drawing};
use collinear::treewidth::*;
use proptest::prelude::*;

/// Vertex at unit coordinates `(x, y)` of a block grid with `side` columns.
fn at(side: usize, x: usize, y: usize) -> Vertex {
    x * side + y
}

/// Face of a block grid that is the unit square with lower-left corner
/// `(x, y)`, found from its four corners.
fn square(g: &PlaneGraph, side: usize, x: usize, y: usize) -> usize {
    let c = [at(side, x, y), at(side, x, y + 1), at(side, x + 1, y + 1), at(side, x + 1, y)];
    (0..g.face_count())
        .find(|&f| {
            let w: BTreeSet<Vertex> = g.face_walk(f).into_iter().collect();
            w == c.into_iter().collect()
        })
        .expect("square face")
}

fn interior_crossings(s: &Segment) -> usize {
    s.stations[1..s.stations.len() - 1].iter().filter(|x| matches!(x, Station::Crossing(_))).count()
}

/// The index set counted directly.
fn n_oracle(g: usize) -> usize {
    let mut gp = 0;
    for k in 0..=g.saturating_sub(2) {
        if k % 4 == 0 {
            gp = k;
        }
    }
    let mut n = 0;
    for i in 1..=g {
        for j in 1..=g {
            if i % 2 == 0 && j % 2 == 0 && (4..=gp).contains(&i) && (2..=gp).contains(&j) {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn identity_model_is_valid() {
    for g in [2, 3, 6] {
        let (pg, m) = identity_model(g);
        let r = validate_model(&pg, &m);
        assert!(r.ok(), "{:?}", r.issues);
        assert_eq!(m.branch_sets.len(), g * g);
    }
}

#[test]
fn disconnected_branch_set_is_reported() {
    let (pg, mut m) = block_grid(6, 2, None);
    let side = 12;
    m.branch_sets.insert((3, 3), vec![at(side, 4, 4), at(side, 5, 5)]);
    let r = validate_model(&pg, &m);
    assert!(r.issues.contains(&ModelIssue::Disconnected((3, 3))), "{:?}", r.issues);
}

#[test]
fn reference_between_wrong_sets_is_reported() {
    let (pg, mut m) = block_grid(6, 1, Some(3));
    // A diagonal joins sets that are not grid neighbours.
    let (i, j) = (1..5)
        .flat_map(|i| (1..5).map(move |j| (i, j)))
        .find(|&(i, j)| pg.has_edge(at(6, i - 1, j - 1), at(6, i, j)))
        .expect("some diagonal");
    m.refs_h.insert((i, j), (at(6, i - 1, j - 1), at(6, i, j)));
    let r = validate_model(&pg, &m);
    assert!(r.issues.iter().any(|x| matches!(x, ModelIssue::RefWrongEnds(p, ..) if *p == RefPoint::h(i, j))), "{:?}", r.issues);
    // A pair that is not an edge at all.
    m.refs_v.insert((2, 2), (at(6, 0, 0), at(6, 5, 5)));
    let r = validate_model(&pg, &m);
    assert!(r.issues.contains(&ModelIssue::RefNotEdge(RefPoint::v(2, 2), 0, 35)));
}

#[test]
fn missing_pieces_are_reported() {
    let (pg, mut m) = identity_model(4);
    m.branch_sets.remove(&(2, 2));
    m.refs_v.remove(&(1, 3));
    let r = validate_model(&pg, &m);
    assert!(r.issues.contains(&ModelIssue::MissingBranch((2, 2))));
    assert!(r.issues.contains(&ModelIssue::MissingRef(RefPoint::v(1, 3))));
}

#[test]
fn model_text_round_trip() {
    let (_, m) = block_grid(4, 2, Some(9));
    let back = parse_grid_model(&m.to_text()).unwrap();
    assert_eq!(back, m);
    assert!(parse_grid_model("branch 1 1: 0").is_err());
    assert!(parse_grid_model("gridmodel 2\nrefh 1 1: 0").is_err());
}

#[test]
fn guaranteed_side_rounds_up() {
    assert_eq!(guaranteed_grid_side(2), 1);
    assert_eq!(guaranteed_grid_side(3), 2);
    assert_eq!(guaranteed_grid_side(32), 6);
}

#[test]
fn identity_cells_are_single_faces() {
    let (pg, m) = identity_model(5);
    let cells = CellMap::new(&pg, &m).unwrap();
    assert_eq!(cells.cells.len(), 16);
    for (&(i, j), faces) in &cells.cells {
        assert_eq!(faces.iter().copied().collect::<Vec<_>>(), vec![square(&pg, 5, i - 1, j - 1)]);
    }
    let a = route_type_a(&pg, &cells, &m, RefPoint::h(2, 2), RefPoint::h(2, 3)).unwrap();
    assert_eq!(a.stations.len(), 3);
    assert_eq!(a.stations[1], Station::Face(square(&pg, 5, 1, 1)));
    let b = route_type_b(&pg, &cells, &m, RefPoint::v(3, 2), RefPoint::h(2, 2)).unwrap();
    assert_eq!(b.stations.len(), 3);
    assert!(route_type_a(&pg, &cells, &m, RefPoint::v(3, 2), RefPoint::h(2, 2)).is_err());
    assert!(route_type_b(&pg, &cells, &m, RefPoint::h(2, 2), RefPoint::h(2, 3)).is_err());
}

#[test]
fn routes_in_a_plus_shaped_cell() {
    // Blocks of 3 with references through block middles: cell (1,1) is the
    // plus of squares (2,1), (2,2), (2,3), (1,2), (3,2).
    let (pg, m) = block_grid(3, 3, None);
    let cells = CellMap::new(&pg, &m).unwrap();
    let plus: BTreeSet<usize> = [(2, 1), (2, 2), (2, 3), (1, 2), (3, 2)].iter().map(|&(x, y)| square(&pg, 9, x, y)).collect();
    assert_eq!(cells.cells[&(1, 1)], plus);
    let a = route_type_a(&pg, &cells, &m, RefPoint::h(1, 1), RefPoint::h(1, 2)).unwrap();
    assert_eq!(interior_crossings(&a), 2);
    let faces: Vec<Station> = [(2, 1), (2, 2), (2, 3)].iter().map(|&(x, y)| Station::Face(square(&pg, 9, x, y))).collect();
    assert_eq!(a.stations.iter().filter(|s| matches!(s, Station::Face(_))).copied().collect::<Vec<_>>(), faces);
    let b = route_type_b(&pg, &cells, &m, RefPoint::h(1, 1), RefPoint::v(1, 1)).unwrap();
    assert_eq!(interior_crossings(&b), 2);
    assert_eq!(b.kind, SegmentKind::Turn);
}

#[test]
fn traversal_crosses_the_diagonal_only_when_needed() {
    for seed in 0..6 {
        let (pg, m) = block_grid(6, 1, Some(seed));
        let cells = CellMap::new(&pg, &m).unwrap();
        for i in 1..5 {
            for j in 1..5 {
                let (x, y) = (i - 1, j - 1);
                let diagonal = pg.has_edge(at(6, x, y), at(6, x + 1, y + 1)) || pg.has_edge(at(6, x + 1, y), at(6, x, y + 1));
                let a = route_type_a(&pg, &cells, &m, RefPoint::h(i, j), RefPoint::h(i, j + 1)).unwrap();
                assert_eq!(interior_crossings(&a), usize::from(diagonal));
                let a = route_type_a(&pg, &cells, &m, RefPoint::v(i, j), RefPoint::v(i + 1, j)).unwrap();
                assert_eq!(interior_crossings(&a), usize::from(diagonal));
            }
        }
    }
}

#[test]
fn getter_on_identity_grid_visits_one_vertex() {
    let (pg, m) = identity_model(6);
    let cells = CellMap::new(&pg, &m).unwrap();
    for (from, to) in [(RefPoint::v(2, 2), RefPoint::v(4, 3)), (RefPoint::v(2, 3), RefPoint::v(4, 2))] {
        let c = route_type_c(&pg, &cells, &m, (3, 3), from, to).unwrap();
        assert_eq!(c.stations.iter().filter(|s| matches!(s, Station::Vertex(_))).count(), 1);
        assert!(c.stations.contains(&Station::Vertex(at(6, 2, 2))));
        assert_eq!(c.stations.len(), 5);
        let back = route_type_c(&pg, &cells, &m, (3, 3), to, from).unwrap();
        assert_eq!(back.stations.first(), c.stations.last());
    }
    assert!(route_type_c(&pg, &cells, &m, (3, 3), RefPoint::v(2, 2), RefPoint::v(4, 2)).is_err());
    assert!(route_type_c(&pg, &cells, &m, (1, 3), RefPoint::v(0, 2), RefPoint::v(2, 3)).is_err());
}

#[test]
fn getter_path_in_a_three_by_three_block() {
    // The sides of block (3,3) facing the two diagonal cells are L shapes
    // around opposite corners; the closest pair is two steps apart.
    let (pg, m) = block_grid(6, 3, None);
    let cells = CellMap::new(&pg, &m).unwrap();
    let c = route_type_c(&pg, &cells, &m, (3, 3), RefPoint::v(2, 2), RefPoint::v(4, 3)).unwrap();
    let vs: Vec<Vertex> = c.stations.iter().filter_map(|s| if let Station::Vertex(v) = s { Some(*v) } else { None }).collect();
    assert_eq!(vs.len(), 3);
    assert_eq!(vs.iter().collect::<BTreeSet<_>>().len(), 3);
    let block: BTreeSet<Vertex> = m.branch_sets[&(3, 3)].iter().copied().collect();
    assert!(vs.iter().all(|v| block.contains(v)));
    assert!(vs.windows(2).all(|w| pg.has_edge(w[0], w[1])));
}

#[test]
fn visit_bound_matches_the_index_set() {
    assert_eq!(visit_bound(6), 2);
    assert_eq!(visit_bound(10), 12);
    for g in 0..=100 {
        assert_eq!(visit_bound(g), n_oracle(g), "g = {g}");
    }
    for g in 10..=100 {
        let n = visit_bound(g) as f64;
        assert!(n >= ((g - 6) * (g - 6)) as f64 / 16.0, "g = {g}");
    }
    assert!(matches!(snake_plan(5), Err(TreewidthError::TooSmall(5))));
}

#[test]
fn identity_grids_meet_the_bound() {
    for (g, want) in [(6, 2), (10, 12), (14, 30), (20, 56)] {
        let (pg, m) = identity_model(g);
        let c = theorem5_curve(&pg, &m).unwrap();
        assert!(c.vertex_count >= want, "g = {g}");
        let r = validate_curve(&c.graph, &c.open).unwrap();
        assert!(r.good && r.proper);
        assert_eq!(r.vertex_count_on_curve, c.vertex_count);
        let cells = CellMap::new(&pg, &m).unwrap();
        audit_regions(&pg, &cells, &m, &c.segments).unwrap();
    }
}

#[test]
fn audit_catches_a_stray_face() {
    let (pg, m) = identity_model(6);
    let mut c = theorem5_curve(&pg, &m).unwrap();
    let cells = CellMap::new(&pg, &m).unwrap();
    let other = *cells.cells[&(5, 5)].iter().next().unwrap();
    let s = &mut c.segments[0];
    s.stations.insert(1, Station::Face(other));
    assert!(matches!(audit_regions(&pg, &cells, &m, &c.segments), Err(TreewidthError::Audit(_))));
}

#[test]
fn segments_join_on_shared_reference_edges() {
    let (pg, m) = identity_model(10);
    let c = theorem5_curve(&pg, &m).unwrap();
    let k = c.segments.len();
    for i in 0..k {
        let (s, t) = (&c.segments[i], &c.segments[(i + 1) % k]);
        assert_eq!(s.to, t.from);
        assert_eq!(s.stations.last(), t.stations.first());
    }
    let getters = c.segments.iter().filter(|s| s.kind == SegmentKind::Getter).count();
    assert_eq!(getters, 12);
}

#[test]
fn invalid_models_are_rejected() {
    let (pg, mut m) = identity_model(6);
    m.branch_sets.remove(&(1, 1));
    assert!(matches!(theorem5_curve(&pg, &m), Err(TreewidthError::Model(_))));
    let (pg, m) = identity_model(5);
    assert!(matches!(theorem5_curve(&pg, &m), Err(TreewidthError::TooSmall(5))));
}

#[test]
fn grid_curve_is_drawn_on_a_line() {
    let (pg, m) = identity_model(10);
    let c = theorem5_curve(&pg, &m).unwrap();
    let d = curve_to_drawing(&c.graph, &c.open).unwrap();
    assert!(verify_drawing(&c.graph, &d).unwrap().ok());
    let on: BTreeSet<Vertex> = d.on_horizontal(&d.coords[d.designated[0]].y).into_iter().collect();
    assert!(on.len() >= 12);
    // The straight-line drawing also draws the original graph: same edges.
    let e1: BTreeSet<_> = pg.edges().into_iter().map(|(a, b)| edge(a, b)).collect();
    let e2: BTreeSet<_> = c.graph.edges().into_iter().map(|(a, b)| edge(a, b)).collect();
    assert_eq!(e1, e2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn block_grids_meet_the_bound(g in 6usize..=10, s in 1usize..=3, seed in 0u64..1000) {
        let (pg, m) = block_grid(g, s, Some(seed));
        prop_assert!(validate_model(&pg, &m).ok());
        let c = theorem5_curve(&pg, &m).unwrap();
        prop_assert!(c.vertex_count >= n_oracle(g));
        let r = validate_curve(&c.graph, &c.open).unwrap();
        prop_assert!(r.good && r.proper);
    }

    #[test]
    fn model_text_survives_round_trip(g in 2usize..=5, s in 1usize..=2, seed in 0u64..1000) {
        let (_, m) = block_grid(g, s, Some(seed));
        prop_assert_eq!(parse_grid_model(&m.to_text()).unwrap(), m);
    }
}
