//! Combinatorial curves on plane graphs.
//!
//! A curve is a sequence of stations: vertices it passes through, edges it
//! crosses, and faces it travels through. Two consecutive vertex stations
//! mean the curve runs along the edge between them. Open curves end either
//! at a vertex, just beyond a crossed edge (in the face on the far side), or
//! at a free point inside a face.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::geometry::{cross, dot, line_intersection, orient_sign, sign, Point, Q};
use crate::plane_graph::{edge, Edge, FaceId, GraphError, PlaneGraph, Vertex};
use crate::realize::{verify_drawing, Drawing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Station {
    Vertex(Vertex),
    Crossing(Edge),
    Face(FaceId),
}

/// Picks which part of a split outer face stays unbounded: the part left of
/// the dart `tail -> head`. When that edge is crossed by the curve, `far`
/// selects the half next to `head` instead of the half next to `tail`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Anchor {
    pub tail: Vertex,
    pub head: Vertex,
    pub far: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GoodCurve {
    pub closed: bool,
    pub stations: Vec<Station>,
    pub anchor: Option<Anchor>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("dangling reference: {0}")]
    Dangling(String),
    #[error("malformed curve: {0}")]
    Malformed(String),
    #[error("curve is not good: {0:?}")]
    NotGood(Vec<(Edge, usize)>),
    #[error("operation needs an open curve")]
    Closed,
    #[error("curve has no face station to cut")]
    NoFaceHop,
    #[error("cannot embed curve: {0}")]
    Embed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl GoodCurve {
    pub fn open(stations: Vec<Station>) -> Self {
        GoodCurve { closed: false, stations, anchor: None }
    }

    pub fn closed(stations: Vec<Station>) -> Self {
        GoodCurve { closed: true, stations, anchor: None }
    }

    pub fn with_anchor(mut self, anchor: Option<Anchor>) -> Self {
        self.anchor = anchor;
        self
    }

    pub fn is_empty(&self) -> bool {
        self.stations.is_empty()
    }

    /// Vertices on the curve in station order.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.stations
            .iter()
            .filter_map(|s| match s {
                Station::Vertex(v) => Some(*v),
                _ => None,
            })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    pub fn crossings(&self) -> Vec<Edge> {
        self.stations
            .iter()
            .filter_map(|s| match s {
                Station::Crossing(e) => Some(*e),
                _ => None,
            })
            .collect()
    }

    /// Edges the curve runs along (consecutive vertex stations).
    pub fn contained_edges(&self) -> BTreeSet<Edge> {
        let k = self.stations.len();
        let pairs = if self.closed { k } else { k.saturating_sub(1) };
        let mut out = BTreeSet::new();
        if k < 2 {
            return out;
        }
        for i in 0..pairs {
            if let (Station::Vertex(a), Station::Vertex(b)) = (self.stations[i], self.stations[(i + 1) % k]) {
                out.insert(edge(a, b));
            }
        }
        out
    }

    pub fn reversed(&self) -> GoodCurve {
        let mut c = self.clone();
        c.stations.reverse();
        c
    }

    /// Text form. Face stations are written as canonical boundary walks.
    pub fn to_text(&self, g: &PlaneGraph) -> String {
        let mut s = String::new();
        writeln!(s, "curve {}", if self.closed { "closed" } else { "open" }).ok();
        let k = self.stations.len();
        for (i, st) in self.stations.iter().enumerate() {
            match st {
                Station::Vertex(v) => {
                    writeln!(s, "v {v}").ok();
                    let nxt = if i + 1 < k {
                        Some(self.stations[i + 1])
                    } else if self.closed && k > 1 {
                        Some(self.stations[0])
                    } else {
                        None
                    };
                    if let Some(Station::Vertex(w)) = nxt {
                        writeln!(s, "e {v} {w}").ok();
                    }
                }
                Station::Crossing((a, b)) => {
                    writeln!(s, "x {a} {b}").ok();
                }
                Station::Face(f) => {
                    writeln!(s, "f {}", g.face_key(*f)).ok();
                }
            }
        }
        if let Some(a) = self.anchor {
            writeln!(s, "anchor {} {}{}", a.tail, a.head, if a.far { " far" } else { "" }).ok();
        }
        s
    }
}

pub fn parse_curve(g: &PlaneGraph, text: &str) -> Result<GoodCurve, CurveError> {
    let syntax = |line: usize, msg: &str| CurveError::Syntax { line, msg: msg.to_string() };
    let mut curve: Option<GoodCurve> = None;
    // Contained-edge lines seen, checked against vertex pairs afterwards.
    let mut declared: Vec<(usize, Edge)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap_or("");
        let rest: Vec<&str> = tok.collect();
        let Some(c) = curve.as_mut() else {
            if head != "curve" || rest.len() != 1 {
                return Err(syntax(ln, "expected 'curve open|closed'"));
            }
            let closed = match rest[0] {
                "open" => false,
                "closed" => true,
                _ => return Err(syntax(ln, "expected open or closed")),
            };
            curve = Some(GoodCurve { closed, stations: Vec::new(), anchor: None });
            continue;
        };
        let num = |t: &str| t.parse::<usize>().map_err(|_| syntax(ln, "bad number"));
        match (head, rest.len()) {
            ("v", 1) => {
                let v = num(rest[0])?;
                if v >= g.vertex_count() {
                    return Err(CurveError::Dangling(format!("vertex {v}")));
                }
                c.stations.push(Station::Vertex(v));
            }
            ("x", 2) => {
                let (a, b) = (num(rest[0])?, num(rest[1])?);
                if !g.has_edge(a, b) {
                    return Err(CurveError::Dangling(format!("edge {a}-{b}")));
                }
                c.stations.push(Station::Crossing(edge(a, b)));
            }
            ("f", 1) => {
                let f = g.face_by_key(rest[0]).ok_or_else(|| CurveError::Dangling(format!("face {}", rest[0])))?;
                c.stations.push(Station::Face(f));
            }
            ("e", 2) => {
                let (a, b) = (num(rest[0])?, num(rest[1])?);
                declared.push((c.stations.len(), edge(a, b)));
            }
            ("anchor", 2) | ("anchor", 3) => {
                let far = match rest.get(2) {
                    None => false,
                    Some(&"far") => true,
                    _ => return Err(syntax(ln, "expected 'far'")),
                };
                c.anchor = Some(Anchor { tail: num(rest[0])?, head: num(rest[1])?, far });
            }
            _ => return Err(syntax(ln, "unknown station")),
        }
    }
    let c = curve.ok_or_else(|| syntax(0, "missing header"))?;
    let k = c.stations.len();
    let expected: Vec<(usize, Edge)> = (0..k)
        .filter_map(|i| {
            let j = i + 1;
            if j >= k && !(c.closed && k > 1) {
                return None;
            }
            match (c.stations[i], c.stations[j % k]) {
                (Station::Vertex(a), Station::Vertex(b)) => Some((j, edge(a, b))),
                _ => None,
            }
        })
        .collect();
    let norm = |v: &[(usize, Edge)]| v.iter().map(|&(p, e)| (if p == k { k } else { p }, e)).collect::<Vec<_>>();
    if norm(&declared) != norm(&expected) {
        return Err(CurveError::Malformed("contained-edge lines do not match consecutive vertices".into()));
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveReport {
    pub vertex_count_on_curve: usize,
    pub vertices_on_curve: Vec<Vertex>,
    pub good: bool,
    pub proper: bool,
    pub violations: Vec<(Edge, usize)>,
}

/// Checks station references and adjacency rules.
pub fn check_well_formed(g: &PlaneGraph, c: &GoodCurve) -> Result<(), CurveError> {
    let k = c.stations.len();
    let mut seen_v = BTreeSet::new();
    let mut seen_e = BTreeSet::new();
    for st in &c.stations {
        match *st {
            Station::Vertex(v) => {
                if v >= g.vertex_count() {
                    return Err(CurveError::Dangling(format!("vertex {v}")));
                }
                if !seen_v.insert(v) {
                    return Err(CurveError::Malformed(format!("vertex {v} repeated")));
                }
            }
            Station::Crossing((a, b)) => {
                if !g.has_edge(a, b) || a > b {
                    return Err(CurveError::Dangling(format!("edge {a}-{b}")));
                }
                if !seen_e.insert((a, b)) {
                    return Err(CurveError::Malformed(format!("edge {a}-{b} crossed twice")));
                }
            }
            Station::Face(f) => {
                if f >= g.face_count() {
                    return Err(CurveError::Dangling(format!("face {f}")));
                }
            }
        }
    }
    if c.closed && k < 3 {
        return Err(CurveError::Malformed("closed curve needs three stations".into()));
    }
    let at = |i: usize| c.stations[i % k];
    let pairs = if c.closed { k } else { k.saturating_sub(1) };
    for i in 0..pairs {
        let (s, t) = (at(i), at(i + 1));
        match (s, t) {
            (Station::Face(_), Station::Face(_)) => {
                return Err(CurveError::Malformed(format!("consecutive face stations at {i}")));
            }
            (Station::Vertex(a), Station::Vertex(b)) => {
                if !g.has_edge(a, b) {
                    return Err(CurveError::Malformed(format!("{a} and {b} are not adjacent")));
                }
            }
            (Station::Face(f), x) | (x, Station::Face(f)) => {
                if !incident(g, f, x) {
                    return Err(CurveError::Malformed(format!("station {x:?} not on face {}", g.face_key(f))));
                }
            }
            _ => return Err(CurveError::Malformed(format!("stations {i} and {} need a face between them", i + 1))),
        }
    }
    // A crossing in the middle must switch between the two sides of its edge.
    for i in 0..k {
        let Station::Crossing((a, b)) = c.stations[i] else { continue };
        let prev = if i > 0 || c.closed { Some(at(i + k - 1)) } else { None };
        let next = if i + 1 < k || c.closed { Some(at(i + 1)) } else { None };
        let (l, r) = g.edge_faces(a, b).expect("edge exists");
        if let (Some(Station::Face(f1)), Some(Station::Face(f2))) = (prev, next) {
            if !((f1 == l && f2 == r) || (f1 == r && f2 == l)) {
                return Err(CurveError::Malformed(format!("crossing of {a}-{b} does not switch sides")));
            }
        }
    }
    if let Some(an) = c.anchor {
        if !g.has_edge(an.tail, an.head) {
            return Err(CurveError::Dangling(format!("anchor {}-{}", an.tail, an.head)));
        }
    }
    Ok(())
}

fn incident(g: &PlaneGraph, f: FaceId, s: Station) -> bool {
    match s {
        Station::Vertex(v) => g.face_darts(f).iter().any(|&d| g.tail(d) == v),
        Station::Crossing((a, b)) => {
            let (l, r) = g.edge_faces(a, b).expect("edge exists");
            l == f || r == f
        }
        Station::Face(_) => false,
    }
}

/// Common-point tally per non-contained edge touched by the curve.
pub fn edge_tallies(g: &PlaneGraph, c: &GoodCurve) -> HashMap<Edge, usize> {
    let contained = c.contained_edges();
    let mut tally: HashMap<Edge, usize> = HashMap::new();
    for st in &c.stations {
        match *st {
            Station::Vertex(v) => {
                for &w in g.rotation(v) {
                    let e = edge(v, w);
                    if !contained.contains(&e) {
                        *tally.entry(e).or_insert(0) += 1;
                    }
                }
            }
            Station::Crossing(e) => *tally.entry(e).or_insert(0) += 1,
            Station::Face(_) => {}
        }
    }
    tally
}

pub fn validate_curve(g: &PlaneGraph, c: &GoodCurve) -> Result<CurveReport, CurveError> {
    check_well_formed(g, c)?;
    let mut violations: Vec<(Edge, usize)> = edge_tallies(g, c).into_iter().filter(|&(_, t)| t > 1).collect();
    violations.sort_unstable();
    let good = violations.is_empty();
    let proper = good && !c.closed && is_proper(g, c)?;
    let mut vertices = c.vertices();
    vertices.sort_unstable();
    Ok(CurveReport { vertex_count_on_curve: vertices.len(), vertices_on_curve: vertices, good, proper, violations })
}

/// The graph with the curve drawn in: crossed edges subdivided, endpoints
/// added, and one new edge per face passage.
#[derive(Clone, Debug)]
pub struct Augmented {
    pub graph: PlaneGraph,
    /// Number of vertices of the original graph; new vertices come after.
    pub original_n: usize,
    /// Subdivision vertex of each crossed edge.
    pub crossing_vertex: HashMap<Edge, Vertex>,
    /// Vertex of the augmented graph for each non-face station.
    pub station_vertex: Vec<Option<Vertex>>,
    /// Curve as a vertex path from `start` to `end` (a cycle for closed curves,
    /// listed without repeating the first vertex).
    pub path: Vec<Vertex>,
    pub start: Option<Vertex>,
    pub end: Option<Vertex>,
}

impl Augmented {
    pub fn curve_edges(&self) -> BTreeSet<Edge> {
        let mut out: BTreeSet<Edge> = self.path.windows(2).map(|w| edge(w[0], w[1])).collect();
        if self.start.is_none() && self.path.len() > 2 {
            out.insert(edge(self.path[self.path.len() - 1], self.path[0]));
        }
        out
    }
}

/// A chord end inside a face: a corner (identified by the dart of the
/// subdivided graph leaving it) or a free endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Corner(usize),
    Free(Vertex),
}

pub fn augment_with_curve(g: &PlaneGraph, c: &GoodCurve) -> Result<Augmented, CurveError> {
    check_well_formed(g, c)?;
    let tallies = edge_tallies(g, c);
    let bad: Vec<(Edge, usize)> = tallies.into_iter().filter(|&(_, t)| t > 1).collect();
    if !bad.is_empty() {
        return Err(CurveError::NotGood(bad));
    }
    let k = c.stations.len();
    if k == 0 {
        return Err(CurveError::Embed("empty curve".into()));
    }
    if k == 1 {
        if let Station::Face(_) = c.stations[0] {
            return Err(CurveError::Embed("curve inside a single face does not touch the graph".into()));
        }
    }
    let n0 = g.vertex_count();
    // Subdivided graph.
    let mut rot: Vec<Vec<Vertex>> = g.rotations().to_vec();
    let mut crossing_vertex = HashMap::new();
    for st in &c.stations {
        if let Station::Crossing((a, b)) = *st {
            let x = rot.len();
            crossing_vertex.insert((a, b), x);
            for (p, q) in [(a, b), (b, a)] {
                let slot = rot[p].iter().position(|&w| w == q).expect("edge exists");
                rot[p][slot] = x;
            }
            rot.push(vec![a, b]);
        }
    }
    let s_dart_of = |s: &PlaneGraph, tail: Vertex, head: Vertex, far: bool| -> usize {
        match crossing_vertex.get(&edge(tail, head)) {
            Some(&x) if far => s.dart(x, head).expect("half edge"),
            Some(&x) => s.dart(tail, x).expect("half edge"),
            None => s.dart(tail, head).expect("edge"),
        }
    };
    let outer_d = g.face_darts(g.outer_face())[0];
    let (ot, oh) = (g.tail(outer_d), g.head(outer_d));
    let oh = crossing_vertex.get(&edge(ot, oh)).copied().unwrap_or(oh);
    let s = PlaneGraph::with_outer_dart(rot.clone(), ot, oh)?;
    // Map each original face to the face of the subdivided graph.
    let s_face = |f: FaceId| -> FaceId {
        let d = g.face_darts(f)[0];
        s.dart_face(s_dart_of(&s, g.tail(d), g.head(d), false))
    };

    let mut next_id = rot.len();
    let mut station_vertex = vec![None; k];
    for (i, st) in c.stations.iter().enumerate() {
        station_vertex[i] = match *st {
            Station::Vertex(v) => Some(v),
            Station::Crossing(e) => Some(crossing_vertex[&e]),
            Station::Face(_) => None,
        };
    }
    let mut start = None;
    let mut end = None;
    let mut path: Vec<Vertex> = Vec::new();
    // Chords per subdivided face.
    let mut chords: HashMap<FaceId, Vec<(End, End)>> = HashMap::new();
    let mut dangling: Vec<(Vertex, Vertex)> = Vec::new();

    // Which dart of a crossed edge faces a given original face; the first
    // use takes the left dart of the normalized edge for bridges.
    let crossing_dart_in = |e: Edge, f: FaceId, avoid: Option<usize>| -> usize {
        let d1 = g.dart(e.0, e.1).expect("edge");
        let d2 = g.rev(d1);
        if g.dart_face(d1) == f && Some(d1) != avoid {
            d1
        } else if g.dart_face(d2) == f && Some(d2) != avoid {
            d2
        } else {
            d1
        }
    };
    // Corner in original face f of a station, as a dart of the subdivided
    // graph leaving the station's vertex.
    let mut used_cross_dart: HashMap<Edge, usize> = HashMap::new();
    let mut corner = |st: Station, f: FaceId| -> usize {
        match st {
            Station::Vertex(v) => {
                let d = *g.face_darts(f).iter().find(|&&d| g.tail(d) == v).expect("vertex on face");
                s_dart_of(&s, v, g.head(d), false)
            }
            Station::Crossing(e) => {
                let avoid = used_cross_dart.get(&e).copied();
                let d = crossing_dart_in(e, f, avoid);
                used_cross_dart.insert(e, d);
                let x = crossing_vertex[&e];
                s.dart(x, g.head(d)).expect("half edge")
            }
            Station::Face(_) => unreachable!(),
        }
    };

    let at = |i: usize| c.stations[i % k];
    // Start endpoint.
    if !c.closed {
        match c.stations[0] {
            Station::Vertex(v) => {
                start = Some(v);
            }
            Station::Crossing(e) => {
                let a = next_id;
                next_id += 1;
                start = Some(a);
                path.push(a);
                let far_face = match c.stations.get(1) {
                    Some(Station::Face(f)) => {
                        let (l, r) = g.edge_faces(e.0, e.1).expect("edge");
                        if *f == l {
                            r
                        } else {
                            l
                        }
                    }
                    _ => g.edge_faces(e.0, e.1).expect("edge").0,
                };
                let cd = corner(Station::Crossing(e), far_face);
                chords.entry(s.dart_face(cd)).or_default().push((End::Free(a), End::Corner(cd)));
                dangling.push((a, crossing_vertex[&e]));
            }
            Station::Face(_) => {
                let a = next_id;
                next_id += 1;
                start = Some(a);
                path.push(a);
            }
        }
    }
    let mut free_end: Option<Vertex> = None;
    for i in 0..k {
        let st = c.stations[i];
        match st {
            Station::Vertex(_) | Station::Crossing(_) => {
                path.push(station_vertex[i].expect("vertex station"));
            }
            Station::Face(f) => {
                let sf = s_face(f);
                let first = i == 0 && !c.closed;
                let last = i + 1 == k && !c.closed;
                let p_end = if first {
                    End::Free(start.expect("start"))
                } else {
                    End::Corner(corner(at(i + k - 1), f))
                };
                let q_end = if last {
                    let b = next_id;
                    next_id += 1;
                    free_end = Some(b);
                    End::Free(b)
                } else {
                    End::Corner(corner(at(i + 1), f))
                };
                chords.entry(sf).or_default().push((p_end, q_end));
                if let End::Free(b) = q_end {
                    path.push(b);
                }
            }
        }
    }
    if !c.closed {
        match c.stations[k - 1] {
            Station::Vertex(v) => end = Some(v),
            Station::Crossing(e) => {
                let b = next_id;
                next_id += 1;
                end = Some(b);
                path.push(b);
                let far_face = match (k >= 2).then(|| c.stations[k - 2]) {
                    Some(Station::Face(f)) => {
                        let (l, r) = g.edge_faces(e.0, e.1).expect("edge");
                        if f == l {
                            r
                        } else {
                            l
                        }
                    }
                    _ => g.edge_faces(e.0, e.1).expect("edge").1,
                };
                let cd = corner(Station::Crossing(e), far_face);
                chords.entry(s.dart_face(cd)).or_default().push((End::Corner(cd), End::Free(b)));
                dangling.push((b, crossing_vertex[&e]));
            }
            Station::Face(_) => end = free_end,
        }
    }
    let _ = dangling;

    // Insert chords face by face.
    let mut rot_new: Vec<Vec<Vertex>> = rot.clone();
    rot_new.resize(next_id, Vec::new());
    // Per vertex: neighbor w -> vertices to insert just before w (cw order).
    let mut inserts: HashMap<(Vertex, Vertex), Vec<(usize, Vertex)>> = HashMap::new();
    let mut face_keys: Vec<FaceId> = chords.keys().copied().collect();
    face_keys.sort_unstable();
    for sf in face_keys {
        let list = &chords[&sf];
        let darts = s.face_darts(sf);
        let len = darts.len();
        let pos: HashMap<usize, usize> = darts.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let vert_of = |e: End| -> Vertex {
            match e {
                End::Corner(d) => s.tail(d),
                End::Free(v) => v,
            }
        };
        // Crossing test between chords with both ends on the boundary.
        let idx: Vec<(Option<usize>, Option<usize>)> = list
            .iter()
            .map(|&(p, q)| {
                let f = |e: End| match e {
                    End::Corner(d) => Some(pos[&d]),
                    End::Free(_) => None,
                };
                (f(p), f(q))
            })
            .collect();
        for i in 0..list.len() {
            if let (Some(a), Some(b)) = idx[i] {
                if a == b {
                    return Err(CurveError::Embed("chord with both ends at one corner".into()));
                }
                for j in 0..i {
                    if let (Some(c2), Some(d2)) = idx[j] {
                        if interleaved(a, b, c2, d2) {
                            return Err(CurveError::Embed(format!("curve crosses itself in face {}", sf)));
                        }
                        if (a == c2 && b == d2) || (a == d2 && b == c2) {
                            return Err(CurveError::Embed("parallel chords".into()));
                        }
                    }
                }
            }
        }
        for &(p, q) in list {
            for (me, other) in [(p, q), (q, p)] {
                let vo = vert_of(other);
                match me {
                    End::Corner(d) => {
                        let i = pos[&d];
                        let rel = match other {
                            End::Corner(d2) => (pos[&d2] + len - i) % len,
                            End::Free(_) => len,
                        };
                        inserts.entry((s.tail(d), s.head(d))).or_default().push((rel, vo));
                    }
                    End::Free(v) => {
                        rot_new[v].push(vert_of(other));
                    }
                }
            }
        }
    }
    for ((v, w), mut list) in inserts {
        // Nearest to the predecessor first, i.e. decreasing relative position.
        list.sort_by(|a, b| b.0.cmp(&a.0));
        let r = &mut rot_new[v];
        let at = r.iter().position(|&x| x == w).expect("corner neighbor");
        for (off, (_, x)) in list.into_iter().enumerate() {
            r.insert(at + off, x);
        }
    }
    for v in 0..rot_new.len() {
        let mut seen = BTreeSet::new();
        if !rot_new[v].iter().all(|&w| seen.insert(w)) {
            return Err(CurveError::Embed("curve creates a parallel edge".into()));
        }
    }
    let anchor_dart = match c.anchor {
        Some(an) => {
            if !g.has_edge(an.tail, an.head) {
                return Err(CurveError::Dangling("anchor".into()));
            }
            s_dart_of(&s, an.tail, an.head, an.far)
        }
        None => {
            let d = g.face_darts(g.outer_face())[0];
            s_dart_of(&s, g.tail(d), g.head(d), false)
        }
    };
    let graph = PlaneGraph::with_outer_dart(rot_new, s.tail(anchor_dart), s.head(anchor_dart))
        .map_err(|e| CurveError::Embed(e.to_string()))?;
    if c.anchor.is_some() {
        let orig_outer = s_face(g.outer_face());
        if s.dart_face(anchor_dart) != orig_outer {
            return Err(CurveError::Embed("anchor is not on the outer face".into()));
        }
    }
    if c.closed {
        start = None;
        end = None;
    }
    Ok(Augmented { graph, original_n: n0, crossing_vertex, station_vertex, path, start, end })
}

/// True if chords (a,b) and (c,d) on a cycle cross (no shared endpoints).
fn interleaved(a: usize, b: usize, c: usize, d: usize) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let inside = |x: usize| lo < x && x < hi;
    inside(c) != inside(d)
}

pub fn is_proper(g: &PlaneGraph, c: &GoodCurve) -> Result<bool, CurveError> {
    if c.closed {
        return Err(CurveError::Closed);
    }
    if c.stations.is_empty() {
        return Ok(true);
    }
    if c.stations.len() == 1 {
        if let Station::Face(f) = c.stations[0] {
            return Ok(f == g.outer_face());
        }
    }
    let aug = augment_with_curve(g, c)?;
    let h = &aug.graph;
    let outer = h.face_vertices(h.outer_face());
    let on = |v: Option<Vertex>| v.map(|v| outer.binary_search(&v).is_ok()).unwrap_or(false);
    Ok(on(aug.start) && on(aug.end))
}

/// Opens a closed curve inside one of its faces and makes that face the
/// outer face.
pub fn cut_closed_curve(g: &PlaneGraph, c: &GoodCurve) -> Result<(PlaneGraph, GoodCurve), CurveError> {
    if !c.closed {
        return Err(CurveError::Malformed("curve is already open".into()));
    }
    check_well_formed(g, c)?;
    let k = c.stations.len();
    let faces: Vec<(usize, FaceId)> = c
        .stations
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match s {
            Station::Face(f) => Some((i, *f)),
            _ => None,
        })
        .collect();
    if faces.is_empty() {
        return Err(CurveError::NoFaceHop);
    }
    let once = faces.iter().find(|(_, f)| faces.iter().filter(|(_, h)| h == f).count() == 1);
    let &(i, f) = once.unwrap_or(&faces[0]);
    let h = g.with_outer_face(f);
    let mut stations = Vec::with_capacity(k + 1);
    stations.push(Station::Face(f));
    for j in 1..k {
        stations.push(c.stations[(i + j) % k]);
    }
    stations.push(Station::Face(f));
    let open = GoodCurve::open(stations);
    if is_proper(&h, &open)? {
        return Ok((h, open));
    }
    // The face is split by other passages of the curve: pick the part that
    // holds the cut.
    for &d in h.face_darts(f) {
        for far in [false, true] {
            let cand = open.clone().with_anchor(Some(Anchor { tail: h.tail(d), head: h.head(d), far }));
            if let Ok(true) = is_proper(&h, &cand) {
                return Ok((h, cand));
            }
        }
    }
    Err(CurveError::Embed("no anchor makes the cut curve proper".into()))
}

/// The curve traced by the line through `p0` and `p1` across a straight-line
/// drawing, from outside the drawing on one side to outside on the other.
pub fn curve_from_drawing(g: &PlaneGraph, d: &Drawing, p0: &Point, p1: &Point) -> Result<GoodCurve, CurveError> {
    let rep = verify_drawing(g, d).map_err(|e| CurveError::Embed(e.to_string()))?;
    if !rep.ok() {
        return Err(CurveError::Embed(format!("drawing is not valid: {}", rep.summary())));
    }
    if p0 == p1 {
        return Err(CurveError::Malformed("line needs two distinct points".into()));
    }
    let dir = p1.sub(p0);
    let pos = &d.coords;
    let side: Vec<i32> = pos.iter().map(|p| orient_sign(p0, p1, p)).collect();
    let param = |p: &Point| dot(&p.sub(p0), &dir);
    // Events along the line: vertices on it and proper edge crossings.
    let mut events: Vec<(Q, Station)> = Vec::new();
    for v in 0..g.vertex_count() {
        if side[v] == 0 {
            events.push((param(&pos[v]), Station::Vertex(v)));
        }
    }
    for (a, b) in g.edges() {
        if side[a] * side[b] < 0 {
            let x = line_intersection(p0, p1, &pos[a], &pos[b]).expect("edge crosses the line");
            events.push((param(&x), Station::Crossing((a, b))));
        }
    }
    events.sort_by(|x, y| x.0.cmp(&y.0));
    if events.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(CurveError::Embed("two events at one point of the line".into()));
    }
    let back = Point::new(-dir.x.clone(), -dir.y.clone());
    // Face entered when leaving an event forwards, or backwards.
    let face_from = |st: Station, forward: bool| -> FaceId {
        match st {
            Station::Crossing((a, b)) => {
                let (up, down) = if side[a] > 0 { (a, b) } else { (b, a) };
                let dart = if forward { g.dart(up, down) } else { g.dart(down, up) };
                g.dart_face(dart.expect("edge"))
            }
            Station::Vertex(v) => {
                let dv = if forward { &dir } else { &back };
                g.dart_face(g.dart(v, wedge_end(g, pos, v, dv)).expect("edge"))
            }
            Station::Face(f) => f,
        }
    };
    let mut stations: Vec<Station> = Vec::new();
    let k = events.len();
    for (i, &(_, st)) in events.iter().enumerate() {
        if i == 0 {
            stations.push(Station::Face(face_from(st, false)));
        }
        stations.push(st);
        if i + 1 < k {
            if let (Station::Vertex(a), Station::Vertex(b)) = (st, events[i + 1].1) {
                if g.has_edge(a, b) {
                    continue;
                }
            }
        }
        stations.push(Station::Face(face_from(st, true)));
    }
    Ok(GoodCurve::open(stations))
}

/// Neighbour `w` of `v` such that direction `dir` lies in the clockwise
/// wedge ending at `w`; the face of dart `v -> w` contains that wedge.
fn wedge_end(g: &PlaneGraph, pos: &[Point], v: Vertex, dir: &Point) -> Vertex {
    let rot = g.rotation(v);
    let m = rot.len();
    if m == 1 {
        return rot[0];
    }
    let vec = |w: Vertex| pos[w].sub(&pos[v]);
    for j in 0..m {
        let (u, w) = (vec(rot[j]), vec(rot[(j + 1) % m]));
        let uw = sign(&cross(&u, &w));
        let inside = if uw < 0 {
            sign(&cross(&u, dir)) < 0 && sign(&cross(dir, &w)) < 0
        } else if uw > 0 {
            !(sign(&cross(&w, dir)) <= 0 && sign(&cross(dir, &u)) <= 0)
        } else {
            sign(&cross(&u, dir)) < 0
        };
        if inside {
            return rot[(j + 1) % m];
        }
    }
    rot[0]
}
