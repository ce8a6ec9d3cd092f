//! Placement of a plane 3-tree with prescribed points for its on-line
//! vertices and its line-crossing edges.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use super::drawing::{verify_drawing, Drawing};
use crate::geometry::{
    cross_horizontal, line_intersection, orient_sign, q, qr, simple_interior_point, HalfPlane, Point, Q,
};
use crate::plane_graph::{edge, Edge, PlaneGraph, Vertex};
use crate::three_tree::{decompose, ThreeTreeDecomp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Up,
    Down,
    On,
}

impl Label {
    fn opposite(self, other: Label) -> bool {
        matches!((self, other), (Label::Up, Label::Down) | (Label::Down, Label::Up))
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Label::Up => "^",
            Label::Down => "v",
            Label::On => "=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vertex(Vertex),
    Edge(Edge),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlaceError {
    #[error("graph is not a plane 3-tree: {0}")]
    NotThreeTree(String),
    #[error("labeling or order is inconsistent: {0}")]
    Inconsistent(String),
    #[error("placement failed verification: {0}")]
    Invalid(String),
}

/// Labels for every vertex, the order of on-line vertices and crossing
/// edges, and one target point per ordered element on a horizontal line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelingOrder {
    pub labels: Vec<Label>,
    pub order: Vec<Element>,
    pub targets: Vec<Point>,
}

impl LabelingOrder {
    pub fn new(labels: Vec<Label>, order: Vec<Element>, targets: Vec<Point>) -> Result<Self, PlaceError> {
        let lab = LabelingOrder { labels, order, targets };
        lab.check_targets()?;
        Ok(lab)
    }

    /// Targets at `(1, 0), (2, 0), ...`.
    pub fn with_unit_targets(labels: Vec<Label>, order: Vec<Element>) -> Self {
        let targets = (1..=order.len() as i64).map(|i| Point::int(i, 0)).collect();
        LabelingOrder { labels, order, targets }
    }

    pub fn line_y(&self) -> Q {
        self.targets.first().map(|p| p.y.clone()).unwrap_or_else(Q::zero)
    }

    pub fn s_vertices(&self) -> Vec<Vertex> {
        self.order
            .iter()
            .filter_map(|e| match e {
                Element::Vertex(v) => Some(*v),
                Element::Edge(_) => None,
            })
            .collect()
    }

    pub fn e_edges(&self) -> Vec<Edge> {
        self.order
            .iter()
            .filter_map(|e| match e {
                Element::Edge(x) => Some(*x),
                Element::Vertex(_) => None,
            })
            .collect()
    }

    fn check_targets(&self) -> Result<(), PlaceError> {
        let bad = |m: String| Err(PlaceError::Inconsistent(m));
        if self.targets.len() != self.order.len() {
            return bad(format!("{} targets for {} elements", self.targets.len(), self.order.len()));
        }
        let y0 = self.line_y();
        for (i, t) in self.targets.iter().enumerate() {
            if t.y != y0 {
                return bad(format!("target {i} is not on the line"));
            }
            if i > 0 && self.targets[i - 1].x >= t.x {
                return bad(format!("targets {} and {i} are not left to right", i - 1));
            }
        }
        Ok(())
    }

    /// Checks that the ordered elements are exactly the on-line vertices and
    /// the edges joining an upper and a lower vertex.
    pub fn check_against(&self, g: &PlaneGraph) -> Result<(), PlaceError> {
        self.check_targets()?;
        let bad = |m: String| Err(PlaceError::Inconsistent(m));
        if self.labels.len() != g.vertex_count() {
            return bad(format!("{} labels for {} vertices", self.labels.len(), g.vertex_count()));
        }
        let mut expected: Vec<Element> = (0..g.vertex_count())
            .filter(|&v| self.labels[v] == Label::On)
            .map(Element::Vertex)
            .collect();
        for (a, b) in g.edges() {
            if self.labels[a].opposite(self.labels[b]) {
                expected.push(Element::Edge((a, b)));
            }
        }
        expected.sort();
        let mut got: Vec<Element> = self
            .order
            .iter()
            .map(|e| match *e {
                Element::Edge((a, b)) => Element::Edge(edge(a, b)),
                x => x,
            })
            .collect();
        got.sort();
        if got != expected {
            return bad("ordered elements differ from the on-line vertices and crossing edges".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaceMode {
    /// Every crossing edge meets the line exactly at its target.
    Exact,
    /// Crossing edges only keep their position between the neighbouring
    /// on-line vertices; coordinates stay small.
    Free,
}

/// Exact placement: on-line vertices at their targets, crossing edges
/// through their targets.
pub fn place_free(g: &PlaneGraph, lab: &LabelingOrder) -> Result<Drawing, PlaceError> {
    place_with_mode(g, lab, PlaceMode::Exact)
}

pub fn place_with_mode(g: &PlaneGraph, lab: &LabelingOrder, mode: PlaceMode) -> Result<Drawing, PlaceError> {
    let dec = decompose(g).map_err(|e| PlaceError::NotThreeTree(e.to_string()))?;
    place_decomposed(g, &dec, lab, mode)
}

struct Ctx<'a> {
    lab: &'a LabelingOrder,
    mode: PlaceMode,
    y0: Q,
    index: HashMap<Element, usize>,
    /// For each position in the order, the targets of the nearest on-line
    /// vertices strictly before and after it.
    s_before: Vec<Option<Q>>,
    s_after: Vec<Option<Q>>,
}

impl Ctx<'_> {
    fn label(&self, v: Vertex) -> Label {
        self.lab.labels[v]
    }

    fn target(&self, el: Element) -> Result<&Point, PlaceError> {
        let key = match el {
            Element::Edge((a, b)) => Element::Edge(edge(a, b)),
            x => x,
        };
        self.index
            .get(&key)
            .map(|&i| &self.lab.targets[i])
            .ok_or_else(|| PlaceError::Inconsistent(format!("{key:?} has no target")))
    }

    fn slot(&self, a: Vertex, b: Vertex) -> Result<usize, PlaceError> {
        self.index
            .get(&Element::Edge(edge(a, b)))
            .copied()
            .ok_or_else(|| PlaceError::Inconsistent(format!("edge ({a},{b}) has no target")))
    }

    fn side(&self, l: Label) -> HalfPlane {
        let a = Point::new(Q::zero(), self.y0.clone());
        let b = Point::new(Q::one(), self.y0.clone());
        match l {
            Label::Up => HalfPlane::left_of(a, b),
            _ => HalfPlane::left_of(b, a),
        }
    }
}

pub(crate) fn place_decomposed(
    g: &PlaneGraph,
    dec: &ThreeTreeDecomp,
    lab: &LabelingOrder,
    mode: PlaceMode,
) -> Result<Drawing, PlaceError> {
    lab.check_against(g)?;
    let n = g.vertex_count();
    let index: HashMap<Element, usize> = lab
        .order
        .iter()
        .enumerate()
        .map(|(i, e)| match e {
            Element::Edge((a, b)) => (Element::Edge(edge(*a, *b)), i),
            x => (*x, i),
        })
        .collect();
    let k = lab.order.len();
    let mut s_before = vec![None; k];
    let mut s_after = vec![None; k];
    let mut last: Option<Q> = None;
    for i in 0..k {
        s_before[i] = last.clone();
        if matches!(lab.order[i], Element::Vertex(_)) {
            last = Some(lab.targets[i].x.clone());
        }
    }
    last = None;
    for i in (0..k).rev() {
        s_after[i] = last.clone();
        if matches!(lab.order[i], Element::Vertex(_)) {
            last = Some(lab.targets[i].x.clone());
        }
    }
    let ctx = Ctx { lab, mode, y0: lab.line_y(), index, s_before, s_after };
    let mut pos: Vec<Option<Point>> = vec![None; n];
    let root = dec.root();
    let [u, v, z] = root.tri;
    let placed = place_root(&ctx, [u, v, z])?;
    for (x, p) in [u, v, z].into_iter().zip(placed) {
        pos[x] = Some(p);
    }
    let mut stack = vec![dec.root];
    while let Some(id) = stack.pop() {
        let node = &dec.nodes[id];
        let Some(w) = node.central else { continue };
        let tri = node.tri;
        let pts: [Point; 3] = tri.map(|x| pos[x].clone().expect("outer vertex placed"));
        let p = place_central(&ctx, tri, &pts, w)?;
        pos[w] = Some(p);
        stack.extend(node.children.unwrap());
    }
    let coords: Vec<Point> = pos.into_iter().map(|p| p.expect("every vertex placed")).collect();
    let d = Drawing::new(coords, lab.s_vertices());
    check_order(&ctx, &d)?;
    let rep = verify_drawing(g, &d).map_err(|e| PlaceError::Invalid(e.to_string()))?;
    if !rep.ok() {
        return Err(PlaceError::Invalid(rep.summary()));
    }
    Ok(d)
}

/// Positions of the outer triangle, given counter-clockwise.
fn place_root(ctx: &Ctx, tri: [Vertex; 3]) -> Result<[Point; 3], PlaceError> {
    let labels = tri.map(|x| ctx.label(x));
    let y0 = &ctx.y0;
    let at = |x: Q, dy: i64| Point::new(x, y0 + q(dy));
    let incons = || PlaceError::Inconsistent(format!("outer triangle {tri:?} with labels {labels:?}"));
    let has_up = labels.contains(&Label::Up);
    let has_down = labels.contains(&Label::Down);
    // Rotate so the pattern starts where the case analysis expects.
    let rotated = |r: usize| ([tri[r], tri[(r + 1) % 3], tri[(r + 2) % 3]], [labels[r], labels[(r + 1) % 3], labels[(r + 2) % 3]]);
    let unrotate = |r: usize, p: [Point; 3]| {
        let mut out = p.clone();
        for i in 0..3 {
            out[(r + i) % 3] = p[i].clone();
        }
        out
    };
    if has_up && has_down {
        if let Some(r) = (0..3).find(|&r| labels[r] == Label::Up && labels[(r + 1) % 3] == Label::Down) {
            let ([u, v, z], [_, _, lz]) = rotated(r);
            let l = ctx.target(Element::Edge((u, v)))?.x.clone();
            let p = match lz {
                Label::On => {
                    let rr = ctx.target(Element::Vertex(z))?.x.clone();
                    [at(&l - q(1), 1), at(&l + q(1), -1), at(rr, 0)]
                }
                Label::Up => {
                    let rr = ctx.target(Element::Edge((v, z)))?.x.clone();
                    let mid = (&l + &rr) * qr(1, 2);
                    let pv = at(mid.clone(), -1);
                    [at(q(2) * &l - &mid, 1), pv, at(q(2) * &rr - &mid, 1)]
                }
                Label::Down => {
                    let rr = ctx.target(Element::Edge((u, z)))?.x.clone();
                    let mid = (&l + &rr) * qr(1, 2);
                    [at(mid.clone(), 1), at(q(2) * &l - &mid, -1), at(q(2) * &rr - &mid, -1)]
                }
            };
            return Ok(unrotate(r, p));
        }
        // Up, On, Down in counter-clockwise order.
        let r = (0..3).find(|&r| labels[r] == Label::Up).unwrap();
        let ([u, v, z], ls) = rotated(r);
        if ls != [Label::Up, Label::On, Label::Down] {
            return Err(incons());
        }
        let l = ctx.target(Element::Vertex(v))?.x.clone();
        let rr = ctx.target(Element::Edge((u, z)))?.x.clone();
        return Ok(unrotate(r, [at(rr.clone(), 1), at(l, 0), at(rr, -1)]));
    }
    let ons = labels.iter().filter(|&&l| l == Label::On).count();
    let up = has_up || !has_down;
    let p = match ons {
        0 if up => [at(q(0), 1), at(q(2), 1), at(q(1), 2)],
        0 => [at(q(0), -2), at(q(2), -2), at(q(1), -1)],
        1 => {
            let r = (0..3).find(|&r| labels[(r + 2) % 3] == Label::On).unwrap();
            let ([_, _, z], _) = rotated(r);
            let x = ctx.target(Element::Vertex(z))?.x.clone();
            let p = if up {
                [at(&x + q(1), 1), at(&x - q(1), 1), at(x, 0)]
            } else {
                [at(&x - q(1), -1), at(&x + q(1), -1), at(x, 0)]
            };
            return Ok(unrotate(r, p));
        }
        2 => {
            let r = (0..3).find(|&r| labels[r] != Label::On).unwrap();
            let ([_, v, z], _) = rotated(r);
            let xv = ctx.target(Element::Vertex(v))?.x.clone();
            let xz = ctx.target(Element::Vertex(z))?.x.clone();
            let mid = (&xv + &xz) * qr(1, 2);
            let p = if up { [at(mid, 1), at(xv, 0), at(xz, 0)] } else { [at(mid, -1), at(xv, 0), at(xz, 0)] };
            return Ok(unrotate(r, p));
        }
        _ => return Err(incons()),
    };
    Ok(p)
}

fn triangle_sides(pts: &[Point; 3]) -> Vec<HalfPlane> {
    (0..3).map(|i| HalfPlane::left_of(pts[i].clone(), pts[(i + 1) % 3].clone())).collect()
}

fn strictly_in_triangle(p: &Point, pts: &[Point; 3]) -> bool {
    (0..3).all(|i| orient_sign(&pts[i], &pts[(i + 1) % 3], p) > 0)
}

fn place_central(ctx: &Ctx, tri: [Vertex; 3], pts: &[Point; 3], w: Vertex) -> Result<Point, PlaceError> {
    let lw = ctx.label(w);
    let fail = |why: &str| PlaceError::Inconsistent(format!("central vertex {w} in {tri:?}: {why}"));
    let mut hs = triangle_sides(pts);
    if lw == Label::On {
        let p = ctx.target(Element::Vertex(w))?.clone();
        if !strictly_in_triangle(&p, pts) {
            return Err(fail("target not inside its triangle"));
        }
        return Ok(p);
    }
    hs.push(ctx.side(lw));
    let opp: Vec<usize> = (0..3).filter(|&i| ctx.label(tri[i]).opposite(lw)).collect();
    let p = match ctx.mode {
        PlaceMode::Free => {
            for &i in &opp {
                let slot = ctx.slot(tri[i], w)?;
                let po = &pts[i];
                let left = ctx.s_before[slot].clone().map(|x| Point::new(x, ctx.y0.clone()));
                let right = ctx.s_after[slot].clone().map(|x| Point::new(x, ctx.y0.clone()));
                let below = ctx.label(tri[i]) == Label::Down;
                if let Some(ql) = left {
                    hs.push(if below { HalfPlane::left_of(ql, po.clone()) } else { HalfPlane::left_of(po.clone(), ql) });
                }
                if let Some(qr_) = right {
                    hs.push(if below { HalfPlane::left_of(po.clone(), qr_) } else { HalfPlane::left_of(qr_, po.clone()) });
                }
            }
            simple_interior_point(pts, &hs).ok_or_else(|| fail("no room for the central vertex"))?
        }
        PlaceMode::Exact => match opp.len() {
            0 => simple_interior_point(pts, &hs).ok_or_else(|| fail("empty triangle"))?,
            1 => {
                let i = opp[0];
                let qt = ctx.target(Element::Edge((tri[i], w)))?;
                let (a, b) = (&pts[(i + 1) % 3], &pts[(i + 2) % 3]);
                if !strictly_in_triangle(qt, pts) {
                    return Err(fail("crossing target not inside its triangle"));
                }
                if line_intersection(&pts[i], qt, a, b).is_none() {
                    return Err(fail("degenerate ray"));
                }
                // A short step past the target keeps the coordinates small.
                let dir = qt.sub(&pts[i]);
                let mut t = q(1);
                loop {
                    let p = qt.add(&dir.scale(&t));
                    if hs.iter().all(|h| h.value(&p) > Q::zero()) {
                        break p;
                    }
                    t /= q(2);
                    if t < qr(1, 1 << 40) {
                        return Err(fail("no room past the crossing target"));
                    }
                }
            }
            2 => {
                let (i, j) = (opp[0], opp[1]);
                let qi = ctx.target(Element::Edge((tri[i], w)))?;
                let qj = ctx.target(Element::Edge((tri[j], w)))?;
                line_intersection(&pts[i], qi, &pts[j], qj).ok_or_else(|| fail("parallel crossing lines"))?
            }
            _ => return Err(fail("all outer vertices on the other side")),
        },
    };
    if !hs.iter().all(|h| h.value(&p) > Q::zero()) {
        return Err(fail("placement violates the labeling or order"));
    }
    Ok(p)
}

/// On-line vertices sit at their targets; in exact mode every crossing edge
/// meets the line at its target, in free mode between its neighbours.
fn check_order(ctx: &Ctx, d: &Drawing) -> Result<(), PlaceError> {
    let y0 = &ctx.y0;
    for (i, el) in ctx.lab.order.iter().enumerate() {
        let t = &ctx.lab.targets[i];
        match *el {
            Element::Vertex(v) => {
                if &d.coords[v] != t {
                    return Err(PlaceError::Invalid(format!("vertex {v} is not at its target")));
                }
            }
            Element::Edge((a, b)) => {
                let x = cross_horizontal(&d.coords[a], &d.coords[b], y0);
                let ok = match ctx.mode {
                    PlaceMode::Exact => x == t.x,
                    PlaceMode::Free => {
                        ctx.s_before[i].as_ref().map_or(true, |l| l < &x)
                            && ctx.s_after[i].as_ref().map_or(true, |r| &x < r)
                    }
                };
                if !ok {
                    return Err(PlaceError::Invalid(format!("edge ({a},{b}) crosses the line out of order")));
                }
            }
        }
    }
    for v in 0..d.coords.len() {
        let y = &d.coords[v].y;
        let ok = match ctx.lab.labels[v] {
            Label::Up => y > y0,
            Label::Down => y < y0,
            Label::On => y == y0,
        };
        if !ok {
            return Err(PlaceError::Invalid(format!("vertex {v} is on the wrong side")));
        }
    }
    Ok(())
}
