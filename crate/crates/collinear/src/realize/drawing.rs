use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{fmt_q, orient_sign, parse_q, segments_intersect, sign, signed_area2, to_f64, Point, Q};
use crate::plane_graph::{Edge, PlaneGraph, Vertex};

/// Exact vertex positions plus the vertices that are meant to be collinear
/// (or placed at prescribed points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    pub coords: Vec<Point>,
    pub designated: Vec<Vertex>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrawingError {
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("drawing has {got} vertices, graph has {want}")]
    Size { got: usize, want: usize },
}

impl Drawing {
    pub fn new(coords: Vec<Point>, designated: Vec<Vertex>) -> Self {
        Drawing { coords, designated }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "drawing {}", self.coords.len()).ok();
        for (v, p) in self.coords.iter().enumerate() {
            writeln!(s, "v {} {} {}", v, fmt_q(&p.x), fmt_q(&p.y)).ok();
        }
        let d: Vec<String> = self.designated.iter().map(|v| v.to_string()).collect();
        writeln!(s, "designated: {}", d.join(" ")).ok();
        s
    }

    /// Vertices lying exactly on the line `y = y0`.
    pub fn on_horizontal(&self, y0: &Q) -> Vec<Vertex> {
        (0..self.coords.len()).filter(|&v| &self.coords[v].y == y0).collect()
    }

    /// SVG rendering: edges as segments, designated vertices in red, and the
    /// line `y = 0` dashed.
    pub fn to_svg(&self, g: &PlaneGraph) -> String {
        let pts: Vec<(f64, f64)> = self.coords.iter().map(|p| p.to_f64()).collect();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in &pts {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if pts.is_empty() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let size = 800.0;
        let pad = 20.0;
        let sx = |x: f64| pad + (x - x0) / span * size;
        let sy = |y: f64| pad + (y1 - y) / span * size;
        let w = sx(x1) + pad;
        let h = sy(y0) + pad;
        let mut s = String::new();
        writeln!(s, "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.2}\" height=\"{h:.2}\">").ok();
        if y0 <= 0.0 && 0.0 <= y1 {
            writeln!(
                s,
                "<line x1=\"0\" y1=\"{:.2}\" x2=\"{w:.2}\" y2=\"{:.2}\" stroke=\"#88c\" stroke-dasharray=\"4 4\"/>",
                sy(0.0),
                sy(0.0)
            )
            .ok();
        }
        for (a, b) in g.edges() {
            let (pa, pb) = (pts[a], pts[b]);
            writeln!(
                s,
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
                sx(pa.0),
                sy(pa.1),
                sx(pb.0),
                sy(pb.1)
            )
            .ok();
        }
        for (v, &(x, y)) in pts.iter().enumerate() {
            let fill = if self.designated.contains(&v) { "red" } else { "white" };
            writeln!(
                s,
                "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{fill}\" stroke=\"black\"/>",
                sx(x),
                sy(y)
            )
            .ok();
        }
        s.push_str("</svg>\n");
        s
    }
}

pub fn parse_drawing(text: &str) -> Result<Drawing, DrawingError> {
    let err = |line: usize, msg: &str| DrawingError::Syntax { line, msg: msg.to_string() };
    let mut n: Option<usize> = None;
    let mut coords: Vec<Option<Point>> = Vec::new();
    let mut designated = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("drawing") {
            let k: usize = rest.trim().parse().map_err(|_| err(ln, "bad vertex count"))?;
            n = Some(k);
            coords = vec![None; k];
        } else if let Some(rest) = line.strip_prefix("designated:") {
            for t in rest.split_whitespace() {
                designated.push(t.parse::<usize>().map_err(|_| err(ln, "bad designated vertex"))?);
            }
        } else if let Some(rest) = line.strip_prefix("v ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(err(ln, "expected `v <id> <x> <y>`"));
            }
            let v: usize = toks[0].parse().map_err(|_| err(ln, "bad vertex id"))?;
            let x = parse_q(toks[1]).ok_or_else(|| err(ln, "bad x"))?;
            let y = parse_q(toks[2]).ok_or_else(|| err(ln, "bad y"))?;
            if n.is_none() || v >= coords.len() {
                return Err(err(ln, "vertex out of range"));
            }
            coords[v] = Some(Point::new(x, y));
        } else {
            return Err(err(ln, "unknown line"));
        }
    }
    if n.is_none() {
        return Err(err(0, "missing header"));
    }
    let coords: Option<Vec<Point>> = coords.into_iter().collect();
    let coords = coords.ok_or_else(|| err(0, "missing vertex coordinates"))?;
    if designated.iter().any(|&v| v >= coords.len()) {
        return Err(err(0, "designated vertex out of range"));
    }
    Ok(Drawing { coords, designated })
}

/// Outcome of checking a drawing against a plane graph. Each check keeps a
/// witness when it fails.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DrawingReport {
    pub planar: bool,
    pub crossing: Option<(Edge, Edge)>,
    pub degenerate_edge: Option<Edge>,
    pub rotation_ok: bool,
    pub rotation_witness: Option<Vertex>,
    pub outer_ok: bool,
    pub collinear: bool,
}

impl DrawingReport {
    pub fn ok(&self) -> bool {
        self.planar && self.rotation_ok && self.outer_ok && self.collinear
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some(e) = self.degenerate_edge {
            parts.push(format!("zero-length edge {e:?}"));
        }
        if let Some((a, b)) = self.crossing {
            parts.push(format!("edges {a:?} and {b:?} intersect"));
        }
        if let Some(v) = self.rotation_witness {
            parts.push(format!("rotation differs at vertex {v}"));
        }
        if !self.outer_ok {
            parts.push("outer face mismatch".into());
        }
        if !self.collinear {
            parts.push("designated vertices not collinear".into());
        }
        if parts.is_empty() {
            "ok".into()
        } else {
            parts.join("; ")
        }
    }
}

pub fn verify_drawing(g: &PlaneGraph, d: &Drawing) -> Result<DrawingReport, DrawingError> {
    let n = g.vertex_count();
    if d.coords.len() != n {
        return Err(DrawingError::Size { got: d.coords.len(), want: n });
    }
    let mut rep = DrawingReport::default();
    let (crossing, degenerate) = find_crossing(g, &d.coords);
    rep.crossing = crossing;
    rep.degenerate_edge = degenerate;
    rep.planar = crossing.is_none() && degenerate.is_none();
    rep.rotation_witness = if rep.planar { (0..n).find(|&v| !rotation_matches(g, &d.coords, v)) } else { None };
    rep.rotation_ok = rep.planar && rep.rotation_witness.is_none();
    rep.outer_ok = rep.rotation_ok && faces_oriented(g, &d.coords);
    rep.collinear = collinear(&d.designated.iter().map(|&v| &d.coords[v]).collect::<Vec<_>>());
    Ok(rep)
}

pub fn collinear(pts: &[&Point]) -> bool {
    let Some(first) = pts.first() else { return true };
    let Some(second) = pts.iter().find(|p| *p != first) else { return true };
    pts.iter().all(|p| orient_sign(first, second, p) == 0)
}

/// First pair of edges meeting outside a shared endpoint, using float
/// bounding boxes only to skip pairs that are far apart.
fn find_crossing(g: &PlaneGraph, pts: &[Point]) -> (Option<(Edge, Edge)>, Option<Edge>) {
    let edges = g.edges();
    if let Some(&e) = edges.iter().find(|&&(a, b)| pts[a] == pts[b]) {
        return (None, Some(e));
    }
    let fp: Vec<(f64, f64)> = pts.iter().map(|p| p.to_f64()).collect();
    let tol = |x: f64| 1e-9 * (1.0 + x.abs());
    let boxes: Vec<(f64, f64, f64, f64)> = edges
        .iter()
        .map(|&(a, b)| {
            let (xa, ya) = fp[a];
            let (xb, yb) = fp[b];
            let (lx, hx) = (xa.min(xb), xa.max(xb));
            let (ly, hy) = (ya.min(yb), ya.max(yb));
            (lx - tol(lx), hx + tol(hx), ly - tol(ly), hy + tol(hy))
        })
        .collect();
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by(|&i, &j| boxes[i].0.total_cmp(&boxes[j].0));
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if boxes[j].0 > boxes[i].1 {
                break;
            }
            if boxes[j].2 > boxes[i].3 || boxes[i].2 > boxes[j].3 {
                continue;
            }
            let meet = match edges_meet_float(edges[i], edges[j], &fp) {
                Some(m) => m,
                None => edges_meet(edges[i], edges[j], pts),
            };
            if meet {
                return (Some((edges[i].min(edges[j]), edges[i].max(edges[j]))), None);
            }
        }
    }
    (None, None)
}

/// Orientation sign from float coordinates when rounding cannot flip it.
fn orient_float(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<i32> {
    let det = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    let mag = (a.0.abs() + b.0.abs()) * (a.1.abs() + c.1.abs()) + (a.1.abs() + b.1.abs()) * (a.0.abs() + c.0.abs());
    let bound = 1e-14 * mag;
    if !det.is_finite() || !bound.is_finite() || det.abs() <= bound {
        return None;
    }
    Some(if det > 0.0 { 1 } else { -1 })
}

/// `edges_meet` decided in floats, or `None` when the exact test is needed.
fn edges_meet_float((a, b): Edge, (c, d): Edge, fp: &[(f64, f64)]) -> Option<bool> {
    let shared = [a, b].iter().find(|x| **x == c || **x == d).copied();
    match shared {
        None => {
            let o1 = orient_float(fp[a], fp[b], fp[c])?;
            let o2 = orient_float(fp[a], fp[b], fp[d])?;
            let o3 = orient_float(fp[c], fp[d], fp[a])?;
            let o4 = orient_float(fp[c], fp[d], fp[b])?;
            Some(o1 * o2 < 0 && o3 * o4 < 0)
        }
        Some(s) => {
            let o1 = if s == a { b } else { a };
            let o2 = if s == c { d } else { c };
            orient_float(fp[s], fp[o1], fp[o2]).map(|_| false)
        }
    }
}

fn edges_meet((a, b): Edge, (c, d): Edge, pts: &[Point]) -> bool {
    let shared = [a, b].iter().find(|x| **x == c || **x == d).copied();
    match shared {
        None => segments_intersect(&pts[a], &pts[b], &pts[c], &pts[d]),
        Some(s) => {
            let o1 = if s == a { b } else { a };
            let o2 = if s == c { d } else { c };
            let (p, q1, q2) = (&pts[s], &pts[o1], &pts[o2]);
            orient_sign(p, q1, q2) == 0 && crate::geometry::dot(&q1.sub(p), &q2.sub(p)).is_positive()
        }
    }
}

/// Half of the direction plane (0 for angles in [0, pi), 1 otherwise).
fn half(v: &Point) -> u8 {
    if v.y.is_positive() || (v.y.is_zero() && v.x.is_positive()) {
        0
    } else {
        1
    }
}

/// Neighbors of `v` sorted clockwise, starting anywhere.
pub fn clockwise_neighbors(nbrs: &[Vertex], pts: &[Point], v: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = nbrs.to_vec();
    out.sort_by(|&a, &b| {
        let da = pts[a].sub(&pts[v]);
        let db = pts[b].sub(&pts[v]);
        half(&da).cmp(&half(&db)).then_with(|| 0.cmp(&sign(&crate::geometry::cross(&da, &db))))
    });
    out.reverse();
    out
}

fn rotation_matches(g: &PlaneGraph, pts: &[Point], v: Vertex) -> bool {
    let rot = g.rotation(v);
    if rot.len() <= 2 {
        return true;
    }
    let cw = clockwise_neighbors(rot, pts, v);
    let start = cw.iter().position(|&w| w == rot[0]).unwrap_or(0);
    (0..rot.len()).all(|i| cw[(start + i) % rot.len()] == rot[i])
}

fn faces_oriented(g: &PlaneGraph, pts: &[Point]) -> bool {
    if g.face_count() == 1 {
        return true;
    }
    (0..g.face_count()).all(|f| {
        let walk = g.face_walk(f);
        let poly: Vec<&Point> = walk.iter().map(|&v| &pts[v]).collect();
        let s = sign(&signed_area2(&poly));
        if f == g.outer_face() {
            s < 0
        } else {
            s > 0
        }
    })
}

/// Float positions, handy for diagnostics.
pub fn float_coords(d: &Drawing) -> Vec<(f64, f64)> {
    d.coords.iter().map(|p| (to_f64(&p.x), to_f64(&p.y))).collect()
}
