use collinear::oracle::*;
use collinear::plane_graph::samples::*;
use collinear::realize::{curve_to_drawing, verify_drawing};
use collinear::three_tree::*;

fn best(g: &collinear::plane_graph::PlaneGraph) -> usize {
    enumerate_curves(g, None, DEFAULT_EDGE_LIMIT).unwrap().max_vertices
}

#[test]
fn small_graphs() {
    assert_eq!(best(&triangle()), 2);
    // Any three vertices of K4 bound a face, so no three can be collinear.
    assert_eq!(best(&k4()), 2);
    assert_eq!(best(&cycle(4)), 3);
}

#[test]
fn witness_is_proper_and_drawable() {
    for g in [k4(), cycle(4), octahedron(), cube()] {
        let r = enumerate_curves(&g, None, DEFAULT_EDGE_LIMIT).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.witness.vertex_count(), r.max_vertices);
        let d = curve_to_drawing(&g, &r.witness).unwrap();
        assert!(verify_drawing(&g, &d).unwrap().ok());
    }
}

#[test]
fn small_budget_is_not_exhaustive() {
    let r = enumerate_curves(&cube(), Some(2), DEFAULT_EDGE_LIMIT).unwrap();
    assert!(!r.exhaustive);
    assert!(r.max_vertices <= 2);
}

#[test]
fn edge_guard() {
    assert!(matches!(enumerate_curves(&grid(5), None, DEFAULT_EDGE_LIMIT), Err(OracleError::TooLarge { .. })));
}

#[test]
fn catalog_sizes() {
    let sizes: Vec<usize> = (0..=2).map(|m| catalog_plane_3trees(m).unwrap().len()).collect();
    assert_eq!(sizes, vec![1, 1, 1]);
    assert!(catalog_plane_3trees(8).is_err());
    for g in catalog_plane_3trees(4).unwrap() {
        assert_eq!(decompose(&g).unwrap().root().m, 4);
    }
}

#[test]
fn catalog_has_no_duplicates() {
    let cat = catalog_plane_3trees(5).unwrap();
    let mut forms: Vec<String> = cat.iter().map(canonical_form).collect();
    forms.sort();
    forms.dedup();
    assert_eq!(forms.len(), cat.len());
}

#[test]
fn relabelling_keeps_the_canonical_form() {
    let g = plane_3tree_from_choices(&[0, 1, 3, 2]);
    let n = g.vertex_count();
    // Reverse the vertex numbering.
    let p = |v: usize| n - 1 - v;
    let mut rot = vec![Vec::new(); n];
    for v in 0..n {
        rot[p(v)] = g.rotation(v).iter().map(|&w| p(w)).collect();
    }
    let outer: Vec<usize> = g.outer_walk().iter().map(|&v| p(v)).collect();
    let h = collinear::plane_graph::PlaneGraph::new(rot, &outer).unwrap();
    assert_eq!(canonical_form(&g), canonical_form(&h));
}
