//! From a proper good curve to a straight-line drawing with the curve's
//! vertices on the line `y = 0`.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use super::drawing::{verify_drawing, Drawing};
use super::place::{place_with_mode, Element, Label, LabelingOrder, PlaceError, PlaceMode};
use super::straighten::{level_orders, solve_positions, Polyline, StraightenError};
use super::tutte::{barycentric_exact, barycentric_float, EXACT_LIMIT};
use crate::curves::{augment_with_curve, validate_curve, CurveError, GoodCurve, Station};
use crate::geometry::{from_f64_dyadic, q, Point, Q};
use crate::plane_graph::{edge, Edge, FaceId, PlaneGraph, Vertex};
use crate::three_tree::is_plane_3tree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("curve is not good and proper")]
    NotProper,
    #[error("curve does not separate the graph: {0}")]
    Split(String),
    #[error(transparent)]
    Straighten(#[from] StraightenError),
    #[error(transparent)]
    Place(#[from] PlaceError),
    #[error("drawing failed verification: {0}")]
    Invalid(String),
}

/// The graph with the curve drawn in and closed up through two extra
/// vertices `d1` (above) and `d2` (below), so that the curve plus `d1`
/// bounds the upper region and the curve plus `d2` the lower one.
#[derive(Clone, Debug)]
pub(crate) struct SideSplit {
    pub graph: PlaneGraph,
    pub original_n: usize,
    pub path: Vec<Vertex>,
    pub crossing_vertex: HashMap<Edge, Vertex>,
    pub d1: Vertex,
    pub d2: Vertex,
    pub up_faces: Vec<FaceId>,
    pub down_faces: Vec<FaceId>,
    /// Labels of the original vertices.
    pub labels: Vec<Label>,
}

/// A curve with at least one station on the graph. Empty curves and
/// curves inside one face become a one-vertex curve on the outer face.
fn normalize(g: &PlaneGraph, c: &GoodCurve) -> GoodCurve {
    let outer = g.outer_face();
    let touches = c.stations.iter().any(|s| !matches!(s, Station::Face(_)));
    if !touches {
        let v = g.face_walk(outer)[0];
        return GoodCurve::open(vec![Station::Vertex(v), Station::Face(outer)]);
    }
    if let [Station::Vertex(v)] = c.stations[..] {
        let f = g.faces_around(v).into_iter().find(|&f| f == outer).unwrap_or(outer);
        return GoodCurve::open(vec![Station::Vertex(v), Station::Face(f)]).with_anchor(c.anchor);
    }
    c.clone()
}

pub(crate) fn side_split(g: &PlaneGraph, c: &GoodCurve) -> Result<SideSplit, RealizeError> {
    if c.closed {
        return Err(RealizeError::Curve(CurveError::Closed));
    }
    let c = normalize(g, c);
    let rep = validate_curve(g, &c)?;
    if !(rep.good && rep.proper) {
        return Err(RealizeError::NotProper);
    }
    let aug = augment_with_curve(g, &c)?;
    let h = &aug.graph;
    let (a, b) = (aug.start.expect("open curve"), aug.end.expect("open curve"));
    let darts = h.face_darts(h.outer_face());
    let m = darts.len();
    let i = (0..m).find(|&i| h.tail(darts[i]) == a).ok_or_else(|| RealizeError::Split("start not outside".into()))?;
    let j = (0..m)
        .map(|s| (i + s) % m)
        .find(|&j| h.head(darts[j]) == b)
        .ok_or_else(|| RealizeError::Split("end not outside".into()))?;
    let x = h.tail(darts[(i + m - 1) % m]);
    let x2 = h.tail(darts[j]);
    let n = h.vertex_count();
    let (d1, d2) = (n, n + 1);
    let mut rot: Vec<Vec<Vertex>> = h.rotations().to_vec();
    insert_after(&mut rot[a], x, &[d2, d1]);
    insert_after(&mut rot[b], x2, &[d1, d2]);
    rot.push(vec![a, b]);
    rot.push(vec![a, b]);
    let h2 = PlaneGraph::with_outer_dart(rot, d1, b).map_err(|e| RealizeError::Split(e.to_string()))?;
    let curve_edges: HashSet<Edge> = aug.path.windows(2).map(|w| edge(w[0], w[1])).collect();
    let region = |start: FaceId| -> Vec<FaceId> {
        let mut seen = vec![false; h2.face_count()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let mut out = Vec::new();
        while let Some(f) = queue.pop_front() {
            out.push(f);
            for &d in h2.face_darts(f) {
                let (p, r) = (h2.tail(d), h2.head(d));
                if curve_edges.contains(&edge(p, r)) || p >= n || r >= n {
                    continue;
                }
                let o = h2.dart_face(h2.rev(d));
                if !seen[o] {
                    seen[o] = true;
                    queue.push_back(o);
                }
            }
        }
        out.sort_unstable();
        out
    };
    let up_faces = region(h2.dart_face(h2.dart(d1, a).expect("dart")));
    let down_faces = region(h2.dart_face(h2.dart(d2, b).expect("dart")));
    if up_faces.iter().any(|f| down_faces.binary_search(f).is_ok()) {
        return Err(RealizeError::Split("both sides meet".into()));
    }
    let on_curve: HashSet<Vertex> = aug.path.iter().copied().collect();
    let n0 = aug.original_n;
    let mut labels = vec![Label::On; n0];
    for v in 0..n0 {
        if on_curve.contains(&v) {
            continue;
        }
        let faces = h2.faces_around(v);
        labels[v] = if faces.iter().any(|f| up_faces.binary_search(f).is_ok()) {
            Label::Up
        } else if faces.iter().any(|f| down_faces.binary_search(f).is_ok()) {
            Label::Down
        } else {
            return Err(RealizeError::Split(format!("vertex {v} on neither side")));
        };
    }
    Ok(SideSplit {
        graph: h2,
        original_n: n0,
        path: aug.path.clone(),
        crossing_vertex: aug.crossing_vertex.clone(),
        d1,
        d2,
        up_faces,
        down_faces,
        labels,
    })
}

fn insert_after(list: &mut Vec<Vertex>, after: Vertex, new: &[Vertex]) {
    let at = list.iter().position(|&w| w == after).expect("neighbor present") + 1;
    for (k, &x) in new.iter().enumerate() {
        list.insert(at + k, x);
    }
}

/// Labels and the left-to-right order of on-line vertices and crossed edges
/// along a proper good curve, with targets `(1,0), (2,0), ...`.
pub fn labeling_from_curve(g: &PlaneGraph, c: &GoodCurve) -> Result<LabelingOrder, RealizeError> {
    let split = side_split(g, c)?;
    let order: Vec<Element> = normalize(g, c)
        .stations
        .iter()
        .filter_map(|s| match *s {
            Station::Vertex(v) => Some(Element::Vertex(v)),
            Station::Crossing(e) => Some(Element::Edge(e)),
            Station::Face(_) => None,
        })
        .collect();
    Ok(LabelingOrder::with_unit_targets(split.labels, order))
}

/// Straight-line drawing of `g` with every vertex of the curve on `y = 0`.
pub fn curve_to_drawing(g: &PlaneGraph, c: &GoodCurve) -> Result<Drawing, RealizeError> {
    let d = if is_plane_3tree(g) {
        let lab = labeling_from_curve(g, c)?;
        place_with_mode(g, &lab, PlaceMode::Free)?
    } else {
        general_drawing(g, c)?
    };
    let mut d = d;
    d.designated = c.vertices();
    let rep = verify_drawing(g, &d).map_err(|e| RealizeError::Invalid(e.to_string()))?;
    if !rep.ok() || d.designated.iter().any(|&v| d.coords[v].y != q(0)) {
        return Err(RealizeError::Invalid(rep.summary()));
    }
    Ok(d)
}

/// Curve to drawing for arbitrary plane graphs: both sides are triangulated
/// and drawn barycentrically against the curve laid out on `y = 0`, then the
/// polyline drawing is straightened level by level.
fn general_drawing(g: &PlaneGraph, c: &GoodCurve) -> Result<Drawing, RealizeError> {
    let split = side_split(g, c)?;
    let h = &split.graph;
    let mut rot: Vec<Vec<Vertex>> = h.rotations().to_vec();
    for &f in split.up_faces.iter().chain(&split.down_faces) {
        triangulate_face(h, f, &mut rot);
    }
    let total = rot.len();
    let k = split.path.len() as i64;
    let mut fixed: Vec<Option<Point>> = vec![None; total];
    for (i, &p) in split.path.iter().enumerate() {
        fixed[p] = Some(Point::int(i as i64, 0));
    }
    let mid = Q::new((k - 1).into(), 2.into());
    fixed[split.d1] = Some(Point::new(mid.clone(), q(k)));
    fixed[split.d2] = Some(Point::new(mid, q(-k)));
    let unknown = fixed.iter().filter(|p| p.is_none()).count();
    let pos: Vec<Point> = if unknown <= EXACT_LIMIT {
        barycentric_exact(&rot, &fixed).map_err(|e| RealizeError::Invalid(e.to_string()))?
    } else {
        let ff: Vec<Option<(f64, f64)>> = fixed.iter().map(|p| p.as_ref().map(|p| p.to_f64())).collect();
        let sol = barycentric_float(&rot, &ff);
        (0..total)
            .map(|v| match &fixed[v] {
                Some(p) => p.clone(),
                None => Point::new(from_f64_dyadic(sol[v].0, 60), from_f64_dyadic(sol[v].1, 60)),
            })
            .collect()
    };
    let n0 = split.original_n;
    let bends: HashMap<Edge, Point> = split.crossing_vertex.iter().map(|(e, &x)| (*e, pos[x].clone())).collect();
    let poly = Polyline { coords: pos[..n0].to_vec(), bends };
    let (orders, ys) = level_orders(g, &poly)?;
    let zero = ys.binary_search(&q(0)).map_err(|_| RealizeError::Invalid("no level at y = 0".into()))?;
    let heights: Vec<f64> = (0..ys.len()).map(|l| l as f64 - zero as f64).collect();
    let xs = solve_positions(&orders, &heights)?;
    let coords = (0..n0)
        .map(|v| {
            let l = orders.vertex_level[v] as i64 - zero as i64;
            Point::new(xs[v].clone(), q(l))
        })
        .collect();
    Ok(Drawing::new(coords, c.vertices()))
}

/// Splits face `f` of `h` into triangles by adding vertices only: a star
/// for a simple boundary, a ring of vertices plus a star inside it when the
/// boundary walk repeats a vertex.
fn triangulate_face(h: &PlaneGraph, f: FaceId, rot: &mut Vec<Vec<Vertex>>) {
    let walk = h.face_walk(f);
    let len = walk.len();
    let simple = walk.iter().collect::<HashSet<_>>().len() == len;
    if simple && len == 3 {
        return;
    }
    let prev = |i: usize| walk[(i + len - 1) % len];
    if simple {
        let c = rot.len();
        rot.push(walk.iter().rev().copied().collect());
        for i in 0..len {
            insert_after(&mut rot[walk[i]], prev(i), &[c]);
        }
        return;
    }
    let base = rot.len();
    let ring = |i: usize| base + (i % len);
    let center = base + len;
    for i in 0..len {
        rot.push(vec![walk[i], ring(i + len - 1), center, ring(i + 1), walk[(i + 1) % len]]);
    }
    rot.push((0..len).rev().map(ring).collect());
    for i in 0..len {
        insert_after(&mut rot[walk[i]], prev(i), &[ring(i + len - 1), ring(i)]);
    }
}
