//! Drawings of plane graphs of tree-width at most three with some vertices
//! at prescribed points: universal point subsets and untangling.
//!
//! Both start from a proper good curve of a plane 3-tree containing the
//! graph. Its on-line vertices are placed on a horizontal line at the
//! prescribed x-coordinates, every vertex keeps its x-coordinate, and the
//! y-coordinates are solved again with the prescribed ones imposed.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geometry::{fmt_q, parse_q, q, qr, Point, Q};
use crate::plane_graph::{PlaneGraph, Vertex};
use crate::realize::{
    labeling_from_curve, place_with_mode, verify_drawing, Drawing, Element, Label, LabelingOrder,
    PlaceError, PlaceMode,
};
use crate::three_tree::{augment_to_plane_3tree, build_curve_bundle, decompose};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ApplicationError {
    #[error("{got} points given, at most {max} can be placed on a graph with {n} vertices")]
    TooManyPoints { got: usize, max: usize, n: usize },
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("expected {want} positions, got {got}")]
    WrongLength { want: usize, got: usize },
    #[error("graph has no plane 3-tree extension: {0}")]
    NotTreewidthThree(String),
    #[error("no free collinear set: {0}")]
    Curve(String),
    #[error(transparent)]
    Place(#[from] PlaceError),
    #[error("result failed verification: {0}")]
    Invalid(String),
    #[error("point list line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PointSet {
    pub points: Vec<Point>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn to_text(&self) -> String {
        self.points.iter().map(|p| format!("{} {}\n", fmt_q(&p.x), fmt_q(&p.y))).collect()
    }
}

/// One point per line, `x y`, rationals as `a` or `a/b`; `#` starts a
/// comment.
pub fn parse_point_set(text: &str) -> Result<PointSet, ApplicationError> {
    let mut points = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| ApplicationError::Parse { line: k + 1, msg: msg.into() };
        let t: Vec<&str> = line.split_whitespace().collect();
        if t.len() != 2 {
            return Err(err("expected 'x y'"));
        }
        let x = parse_q(t[0]).ok_or_else(|| err("bad x"))?;
        let y = parse_q(t[1]).ok_or_else(|| err("bad y"))?;
        points.push(Point::new(x, y));
    }
    Ok(PointSet { points })
}

/// Rotation by a direction with rational cosine and sine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub cos: Q,
    pub sin: Q,
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation { cos: Q::one(), sin: Q::zero() }
    }

    pub fn apply(&self, p: &Point) -> Point {
        Point::new(&self.cos * &p.x - &self.sin * &p.y, &self.sin * &p.x + &self.cos * &p.y)
    }

    pub fn invert(&self, p: &Point) -> Point {
        Point::new(&self.cos * &p.x + &self.sin * &p.y, -(&self.sin * &p.x) + &self.cos * &p.y)
    }
}

/// Rotations from primitive Pythagorean triples, the identity first.
fn rational_rotations() -> impl Iterator<Item = Rotation> {
    let triples = (2i64..).flat_map(|m| {
        (1..m).filter(move |&k| (m - k) % 2 == 1 && num_integer::gcd(m, k) == 1).flat_map(move |k| {
            let (a, b, c) = (m * m - k * k, 2 * m * k, m * m + k * k);
            [Rotation { cos: qr(a, c), sin: qr(b, c) }, Rotation { cos: qr(b, c), sin: qr(a, c) }]
        })
    });
    std::iter::once(Rotation::identity()).chain(triples)
}

/// The first rational rotation after which no two points share an
/// x-coordinate. Points must be distinct.
pub fn separating_rotation(points: &[Point]) -> Rotation {
    rational_rotations()
        .find(|r| {
            let mut xs: Vec<Q> = points.iter().map(|p| r.apply(p).x).collect();
            xs.sort();
            xs.windows(2).all(|w| w[0] != w[1])
        })
        .expect("finitely many directions align two distinct points")
}

fn check_distinct(points: &[Point]) -> Result<(), ApplicationError> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| (&points[a].x, &points[a].y).cmp(&(&points[b].x, &points[b].y)));
    for w in idx.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Err(ApplicationError::DuplicatePoints(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Ok(())
}

/// Size of the free collinear set every plane graph of tree-width at most
/// three on `n` vertices has.
pub fn free_set_size(n: usize) -> usize {
    n.saturating_sub(3).div_ceil(8)
}

/// A plane 3-tree containing the graph and the labeling read off its best
/// curve.
struct FreeLine {
    h: PlaneGraph,
    lab: LabelingOrder,
}

fn free_line(g: &PlaneGraph) -> Result<FreeLine, ApplicationError> {
    let (h, _) = augment_to_plane_3tree(g).map_err(|e| ApplicationError::NotTreewidthThree(e.to_string()))?;
    let dec = decompose(&h).map_err(|e| ApplicationError::NotTreewidthThree(e.to_string()))?;
    let bundle = build_curve_bundle(&h, &dec).map_err(|e| ApplicationError::Curve(e.to_string()))?;
    let lab = labeling_from_curve(&h, bundle.best()).map_err(|e| ApplicationError::Curve(e.to_string()))?;
    Ok(FreeLine { h, lab })
}

impl FreeLine {
    /// The same line read from the other side: order reversed, sides
    /// swapped. This is the drawing turned by half a turn.
    fn reversed(&self) -> FreeLine {
        let labels = self
            .lab
            .labels
            .iter()
            .map(|l| match l {
                Label::Up => Label::Down,
                Label::Down => Label::Up,
                Label::On => Label::On,
            })
            .collect();
        let order: Vec<Element> = self.lab.order.iter().rev().copied().collect();
        FreeLine { h: self.h.clone(), lab: LabelingOrder::with_unit_targets(labels, order) }
    }

    /// Draws the 3-tree with `pins[i].0` at `pins[i].1`. The pinned vertices
    /// must be on-line vertices listed in line order with increasing x.
    fn draw(&self, pins: &[(Vertex, Point)]) -> Result<Drawing, ApplicationError> {
        let order = &self.lab.order;
        let mut idx = Vec::with_capacity(pins.len());
        for (v, _) in pins {
            let i = order.iter().position(|e| *e == Element::Vertex(*v)).ok_or_else(|| ApplicationError::Invalid(format!("vertex {v} is not on the line")))?;
            idx.push(i);
        }
        let xs: Vec<Q> = pins.iter().map(|(_, p)| p.x.clone()).collect();
        let targets: Vec<Point> = (0..order.len()).map(|e| Point::new(target_x(e, &idx, &xs), Q::zero())).collect();
        let lab = LabelingOrder::new(self.lab.labels.clone(), order.clone(), targets)?;
        let d = place_with_mode(&self.h, &lab, PlaceMode::Free)?;
        let mut d = lift(&self.h, &d, pins)?;
        d.designated = pins.iter().map(|p| p.0).collect();
        Ok(d)
    }
}

/// x-coordinate on the line for element `e`: pinned elements get their
/// own, the others are spread evenly between their pinned neighbours, one
/// unit apart beyond the ends.
fn target_x(e: usize, idx: &[usize], xs: &[Q]) -> Q {
    if idx.is_empty() {
        return q(e as i64);
    }
    if let Some(k) = idx.iter().position(|&i| i == e) {
        return xs[k].clone();
    }
    let after = idx.iter().position(|&i| i > e);
    match after {
        Some(0) => &xs[0] - q((idx[0] - e) as i64),
        None => &xs[xs.len() - 1] + q((e - idx[idx.len() - 1]) as i64),
        Some(k) => {
            let (i0, i1) = (idx[k - 1], idx[k]);
            let t = qr((e - i0) as i64, (i1 - i0) as i64);
            &xs[k - 1] + (&xs[k] - &xs[k - 1]) * t
        }
    }
}

/// Moves every pinned vertex from the horizontal line to its own height.
///
/// The pinned vertices first move to `y / m`, which keeps the drawing
/// planar once `m` is large enough, and then all heights are scaled by `m`.
fn lift(g: &PlaneGraph, d: &Drawing, pins: &[(Vertex, Point)]) -> Result<Drawing, ApplicationError> {
    let mut m = Q::one();
    for _ in 0..4096 {
        let mut coords = d.coords.clone();
        for (v, p) in pins {
            coords[*v].y = &p.y / &m;
        }
        let trial = Drawing::new(coords, Vec::new());
        let rep = verify_drawing(g, &trial).map_err(|e| ApplicationError::Invalid(e.to_string()))?;
        if rep.ok() {
            let coords = trial.coords.iter().map(|c| Point::new(c.x.clone(), &c.y * &m)).collect();
            return Ok(Drawing::new(coords, Vec::new()));
        }
        m *= q(2);
    }
    Err(ApplicationError::Invalid("pinned vertices cannot be lifted".into()))
}

fn finish(g: &PlaneGraph, d: Drawing, rot: &Rotation) -> Result<Drawing, ApplicationError> {
    let coords = d.coords.iter().map(|c| rot.invert(c)).collect();
    // The pinned vertices are not collinear, so check planarity only.
    let plain = Drawing::new(coords, Vec::new());
    let rep = verify_drawing(g, &plain).map_err(|e| ApplicationError::Invalid(e.to_string()))?;
    if !rep.ok() {
        return Err(ApplicationError::Invalid(rep.summary()));
    }
    Ok(Drawing::new(plain.coords, d.designated))
}

/// Planar straight-line drawing of `g` with a distinct vertex exactly at
/// every point of `p`. `designated[i]` is the vertex at `p.points[i]`.
pub fn universal_placement(g: &PlaneGraph, p: &PointSet) -> Result<Drawing, ApplicationError> {
    let n = g.vertex_count();
    let max = free_set_size(n);
    if p.len() > max {
        return Err(ApplicationError::TooManyPoints { got: p.len(), max, n });
    }
    check_distinct(&p.points)?;
    let rot = separating_rotation(&p.points);
    let turned: Vec<Point> = p.points.iter().map(|x| rot.apply(x)).collect();
    let mut by_x: Vec<usize> = (0..turned.len()).collect();
    by_x.sort_by(|&a, &b| turned[a].x.cmp(&turned[b].x));
    let fl = free_line(g)?;
    let on = fl.lab.s_vertices();
    if on.len() < p.len() {
        return Err(ApplicationError::Curve(format!("line holds {} vertices, {} needed", on.len(), p.len())));
    }
    let pins: Vec<(Vertex, Point)> = by_x.iter().enumerate().map(|(k, &i)| (on[k], turned[i].clone())).collect();
    let mut d = fl.draw(&pins)?;
    let mut designated = vec![0; p.len()];
    for (k, &i) in by_x.iter().enumerate() {
        designated[i] = on[k];
    }
    d.designated = designated;
    finish(g, d, &rot)
}

#[derive(Clone, Debug)]
pub struct UntangleResult {
    /// Vertices left at their input position, in line order.
    pub fixed: Vec<Vertex>,
    /// All on-line vertices in line order, the fixed ones among them.
    pub line: Vec<Vertex>,
    pub drawing: Drawing,
}

/// Smallest number of fixed vertices [`untangle`] guarantees.
pub fn untangle_bound(n: usize) -> usize {
    let k = free_set_size(n);
    (0..=k).find(|r| r * r >= k).unwrap_or(k)
}

/// Positions of a longest strictly increasing subsequence.
pub fn longest_increasing(xs: &[Q]) -> Vec<usize> {
    // tails[l]: index ending the best subsequence of length l + 1.
    let mut tails: Vec<usize> = Vec::new();
    let mut prev = vec![usize::MAX; xs.len()];
    for i in 0..xs.len() {
        let l = tails.partition_point(|&t| xs[t] < xs[i]);
        if l > 0 {
            prev[i] = tails[l - 1];
        }
        if l == tails.len() {
            tails.push(i);
        } else {
            tails[l] = i;
        }
    }
    let mut out = Vec::new();
    let mut cur = tails.last().copied().unwrap_or(usize::MAX);
    while cur != usize::MAX {
        out.push(cur);
        cur = prev[cur];
    }
    out.reverse();
    out
}

/// Planar straight-line redrawing of `g` from arbitrary distinct positions
/// `bad`, keeping at least [`untangle_bound`] vertices where they were.
pub fn untangle(g: &PlaneGraph, bad: &[Point]) -> Result<UntangleResult, ApplicationError> {
    let n = g.vertex_count();
    if bad.len() != n {
        return Err(ApplicationError::WrongLength { want: n, got: bad.len() });
    }
    check_distinct(bad)?;
    let rot = separating_rotation(bad);
    let turned: Vec<Point> = bad.iter().map(|x| rot.apply(x)).collect();
    let fl = free_line(g)?;
    let on = fl.lab.s_vertices();
    let xs: Vec<Q> = on.iter().map(|&v| turned[v].x.clone()).collect();
    let up = longest_increasing(&xs);
    let neg: Vec<Q> = xs.iter().map(|x| -x.clone()).collect();
    let down = longest_increasing(&neg);
    let (fl, fixed) = if down.len() > up.len() {
        let rev = fl.reversed();
        let fixed: Vec<Vertex> = down.iter().rev().map(|&i| on[i]).collect();
        (rev, fixed)
    } else {
        (fl, up.iter().map(|&i| on[i]).collect())
    };
    let pins: Vec<(Vertex, Point)> = fixed.iter().map(|&v| (v, turned[v].clone())).collect();
    let d = fl.draw(&pins)?;
    let d = finish(g, d, &rot)?;
    if let Some(&v) = fixed.iter().find(|&&v| d.coords[v] != bad[v]) {
        return Err(ApplicationError::Invalid(format!("vertex {v} moved")));
    }
    Ok(UntangleResult { fixed, line: fl.lab.s_vertices(), drawing: d })
}
