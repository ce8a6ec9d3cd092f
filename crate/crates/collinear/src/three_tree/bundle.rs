//! Three curves per plane 3-tree, each cutting off one corner of the outer
//! triangle, built bottom-up over the decomposition.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use super::decomp::{ThreeTreeDecomp, VertexType};
use crate::curves::{validate_curve, CurveError, GoodCurve, Station};
use crate::plane_graph::{edge, Edge, FaceId, PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error("points {0:?} and {1:?} lie on one edge")]
    SameEdge(CyclePoint, CyclePoint),
    #[error("broken ladder: {0}")]
    Ladder(String),
    #[error("constructed curve is invalid: {0}")]
    Invalid(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A point on a cycle: one of its vertices or an interior point of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CyclePoint {
    Vertex(Vertex),
    OnEdge(Edge),
}

impl CyclePoint {
    pub fn on(a: Vertex, b: Vertex) -> Self {
        CyclePoint::OnEdge(edge(a, b))
    }

    fn station(self) -> Station {
        match self {
            CyclePoint::Vertex(v) => Station::Vertex(v),
            CyclePoint::OnEdge(e) => Station::Crossing(e),
        }
    }
}

/// Inner triangular faces keyed by their sorted vertex triple.
pub(crate) struct FaceIndex {
    map: HashMap<[Vertex; 3], FaceId>,
}

impl FaceIndex {
    pub(crate) fn new(g: &PlaneGraph) -> Self {
        let outer = g.outer_face();
        let mut map = HashMap::new();
        for f in 0..g.face_count() {
            if f == outer {
                continue;
            }
            let w = g.face_walk(f);
            if w.len() == 3 {
                let mut k = [w[0], w[1], w[2]];
                k.sort_unstable();
                map.insert(k, f);
            }
        }
        FaceIndex { map }
    }

    pub(crate) fn get(&self, t: [Vertex; 3]) -> FaceId {
        let mut k = t;
        k.sort_unstable();
        self.map[&k]
    }
}

/// The triangulated region inside the cycle formed by two vertex-disjoint
/// induced paths `px` and `py` plus the edges joining their first and their
/// last vertices. Every interior edge joins the two paths, so the faces form
/// a sequence from the edge at the start to the edge at the end.
pub struct Ladder {
    tris: Vec<[Vertex; 3]>,
    faces: Vec<FaceId>,
    rungs: Vec<Edge>,
}

impl Ladder {
    pub fn new(g: &PlaneGraph, px: &[Vertex], py: &[Vertex]) -> Result<Self, BundleError> {
        let idx = FaceIndex::new(g);
        Self::with_index(g, &idx, px, py)
    }

    pub(crate) fn with_index(g: &PlaneGraph, idx: &FaceIndex, px: &[Vertex], py: &[Vertex]) -> Result<Self, BundleError> {
        let set: HashSet<Vertex> = px.iter().chain(py).copied().collect();
        let outer = g.outer_face();
        let mut cand: Vec<[Vertex; 3]> = Vec::new();
        let mut seen = HashSet::new();
        for &v in px {
            for f in g.faces_around(v) {
                if f == outer || !seen.insert(f) {
                    continue;
                }
                let w = g.face_walk(f);
                if w.len() == 3 && w.iter().all(|x| set.contains(x)) {
                    cand.push([w[0], w[1], w[2]]);
                }
            }
        }
        let has = |t: &[Vertex; 3], a: Vertex, b: Vertex| t.contains(&a) && t.contains(&b);
        let (x, y) = (px[0], py[0]);
        let start = cand
            .iter()
            .position(|t| has(t, x, y))
            .ok_or_else(|| BundleError::Ladder(format!("no face on edge {x}-{y}")))?;
        let mut tris = vec![cand.swap_remove(start)];
        let mut rungs = Vec::new();
        let mut prev_edge = edge(x, y);
        while !cand.is_empty() {
            let t = *tris.last().unwrap();
            // The next face shares an edge of `t` other than the one we came in by.
            let mut found = None;
            'outer: for i in 0..3 {
                let e = edge(t[i], t[(i + 1) % 3]);
                if e == prev_edge {
                    continue;
                }
                for (j, c) in cand.iter().enumerate() {
                    if has(c, e.0, e.1) {
                        found = Some((j, e));
                        break 'outer;
                    }
                }
            }
            let Some((j, e)) = found else {
                return Err(BundleError::Ladder(format!("{} faces not reached", cand.len())));
            };
            tris.push(cand.swap_remove(j));
            rungs.push(e);
            prev_edge = e;
        }
        let faces = tris.iter().map(|&t| idx.get(t)).collect();
        Ok(Ladder { tris, faces, rungs })
    }

    pub fn face_count(&self) -> usize {
        self.tris.len()
    }

    fn range(&self, p: CyclePoint) -> Result<(usize, usize), BundleError> {
        let hits: Vec<usize> = (0..self.tris.len())
            .filter(|&i| match p {
                CyclePoint::Vertex(v) => self.tris[i].contains(&v),
                CyclePoint::OnEdge((a, b)) => self.tris[i].contains(&a) && self.tris[i].contains(&b),
            })
            .collect();
        match (hits.first(), hits.last()) {
            (Some(&lo), Some(&hi)) if hi - lo + 1 == hits.len() => Ok((lo, hi)),
            _ => Err(BundleError::Ladder(format!("{p:?} is not on the cycle"))),
        }
    }

    /// Stations of a curve from `p1` to `p2` through the region, crossing
    /// exactly the interior edges that separate the two points.
    pub fn chord(&self, p1: CyclePoint, p2: CyclePoint) -> Result<Vec<Station>, BundleError> {
        let same_edge = match (p1, p2) {
            (CyclePoint::Vertex(a), CyclePoint::Vertex(b)) => self.tris.iter().any(|t| t.contains(&a) && t.contains(&b)) && a != b && self.is_edge(a, b),
            (CyclePoint::Vertex(a), CyclePoint::OnEdge(e)) | (CyclePoint::OnEdge(e), CyclePoint::Vertex(a)) => e.0 == a || e.1 == a,
            (CyclePoint::OnEdge(e), CyclePoint::OnEdge(f)) => e == f,
        };
        if same_edge || p1 == p2 {
            return Err(BundleError::SameEdge(p1, p2));
        }
        let (lo1, hi1) = self.range(p1)?;
        let (lo2, hi2) = self.range(p2)?;
        if hi2 < lo1 {
            let mut r = self.chord(p2, p1)?;
            r.reverse();
            return Ok(r);
        }
        let mut out = vec![p1.station()];
        if hi1 < lo2 {
            out.push(Station::Face(self.faces[hi1]));
            for k in hi1 + 1..=lo2 {
                out.push(Station::Crossing(self.rungs[k - 1]));
                out.push(Station::Face(self.faces[k]));
            }
        } else {
            out.push(Station::Face(self.faces[lo1.max(lo2)]));
        }
        out.push(p2.station());
        Ok(out)
    }

    fn is_edge(&self, a: Vertex, b: Vertex) -> bool {
        let e = edge(a, b);
        self.tris.iter().any(|t| (0..3).any(|i| edge(t[i], t[(i + 1) % 3]) == e))
    }
}

/// Chord between two points on the boundary of the region bounded by paths
/// `px`, `py` and the edges joining their ends.
pub fn ladder_chord(
    g: &PlaneGraph,
    px: &[Vertex],
    py: &[Vertex],
    p1: CyclePoint,
    p2: CyclePoint,
) -> Result<Vec<Station>, BundleError> {
    Ladder::new(g, px, py)?.chord(p1, p2)
}

/// Curves of one decomposition node, keyed by the corner they cut off.
#[derive(Clone, Debug)]
pub struct NodeBundle {
    pub curves: [(Vertex, Vec<Station>); 3],
    /// Vertex visits summed over the three curves.
    pub s: usize,
    /// Type-B vertices of the node that no curve visits.
    pub x: usize,
}

impl NodeBundle {
    fn curve(&self, corner: Vertex) -> &[Station] {
        &self.curves.iter().find(|c| c.0 == corner).expect("corner").1
    }
}

#[derive(Clone, Debug)]
pub struct CurveBundle {
    pub corners: [Vertex; 3],
    pub lambda_u: GoodCurve,
    pub lambda_v: GoodCurve,
    pub lambda_z: GoodCurve,
    pub s: usize,
    pub x: usize,
}

impl CurveBundle {
    /// The curve with the most vertices; ties go to `lambda_u`, then
    /// `lambda_v`.
    pub fn best(&self) -> &GoodCurve {
        let mut best = &self.lambda_u;
        for c in [&self.lambda_v, &self.lambda_z] {
            if c.vertex_count() > best.vertex_count() {
                best = c;
            }
        }
        best
    }

    pub fn curves(&self) -> [&GoodCurve; 3] {
        [&self.lambda_u, &self.lambda_v, &self.lambda_z]
    }
}

/// Orients `st` to start at `from`.
fn from_point(st: &[Station], from: CyclePoint) -> Vec<Station> {
    if st.first() == Some(&from.station()) {
        st.to_vec()
    } else {
        debug_assert_eq!(st.last(), Some(&from.station()));
        st.iter().rev().copied().collect()
    }
}

/// Joins pieces that share their end stations.
fn join(pieces: Vec<Vec<Station>>) -> Vec<Station> {
    let mut out: Vec<Station> = Vec::new();
    for p in pieces {
        let skip = usize::from(!out.is_empty() && out.last() == p.first());
        out.extend_from_slice(&p[skip..]);
    }
    out
}

struct Builder<'a> {
    g: &'a PlaneGraph,
    dec: &'a ThreeTreeDecomp,
    idx: FaceIndex,
    types: HashMap<Vertex, VertexType>,
}

impl Builder<'_> {
    fn bundle(&self, id: usize, memo: &[Option<NodeBundle>]) -> Result<NodeBundle, BundleError> {
        let node = &self.dec.nodes[id];
        let [u, v, z] = node.tri;
        let corners = [u, v, z];
        let p = CyclePoint::on;
        let curves: [(Vertex, Vec<Station>); 3] = match node.kind {
            None => {
                let f = Station::Face(self.idx.get(node.tri));
                corners.map(|x| {
                    let [y1, y2] = others(corners, x);
                    (x, vec![p(x, y1).station(), f, p(x, y2).station()])
                })
            }
            Some(VertexType::A) => {
                let w = node.central.unwrap();
                corners.map(|x| {
                    let [y1, y2] = others(corners, x);
                    let f1 = Station::Face(self.idx.get([x, y1, w]));
                    let f2 = Station::Face(self.idx.get([x, y2, w]));
                    (x, vec![p(x, y1).station(), f1, Station::Vertex(w), f2, p(x, y2).station()])
                })
            }
            Some(VertexType::C) | Some(VertexType::D) => {
                let w = node.central.unwrap();
                let ch = node.children.unwrap();
                let child_with = |a: Vertex, b: Vertex| -> &NodeBundle {
                    let c = ch.into_iter().find(|&c| {
                        let t = self.dec.nodes[c].tri;
                        t.contains(&a) && t.contains(&b)
                    });
                    memo[c.expect("child")].as_ref().expect("child bundle")
                };
                let mut out = Vec::new();
                for x in corners {
                    let [y1, y2] = others(corners, x);
                    let a = from_point(child_with(x, y1).curve(y1), p(x, y1));
                    let b = from_point(child_with(y1, y2).curve(w), p(y1, w));
                    let c = from_point(child_with(x, y2).curve(y2), p(y2, w));
                    out.push((x, join(vec![a, b, c])));
                }
                [out[0].clone(), out[1].clone(), out[2].clone()]
            }
            Some(VertexType::B) => self.b_chain(id, memo)?,
        };
        let mut s = 0;
        let mut on: HashSet<Vertex> = HashSet::new();
        for (_, c) in &curves {
            for st in c {
                if let Station::Vertex(v) = st {
                    s += 1;
                    on.insert(*v);
                }
            }
        }
        let on_b = on.iter().filter(|v| self.types.get(v) == Some(&VertexType::B)).count();
        Ok(NodeBundle { curves, s, x: node.b - on_b })
    }

    fn b_chain(&self, id: usize, memo: &[Option<NodeBundle>]) -> Result<[(Vertex, Vec<Station>); 3], BundleError> {
        let dec = self.dec;
        let tri = dec.nodes[id].tri;
        let mut paths: [Vec<Vertex>; 3] = tri.map(|x| vec![x]);
        let mut cur = id;
        loop {
            let node = &dec.nodes[cur];
            if node.kind != Some(VertexType::B) {
                break;
            }
            let w = node.central.unwrap();
            let child = dec.b_child(cur).expect("one non-empty child");
            let ct = dec.nodes[child].tri;
            let ends: [Vertex; 3] = paths.clone().map(|p| *p.last().unwrap());
            let k = (0..3).find(|&k| !ct.contains(&ends[k])).expect("replaced corner");
            paths[k].push(w);
            cur = child;
        }
        let h = memo[cur].as_ref().expect("bundle of the chain bottom");
        let ends: [Vertex; 3] = paths.clone().map(|p| *p.last().unwrap());
        let single: Vec<usize> = (0..3).filter(|&k| paths[k].len() == 1).collect();
        let mut ladders: HashMap<(usize, usize), Ladder> = HashMap::new();
        for a in 0..3 {
            for b in a + 1..3 {
                if paths[a].len() > 1 || paths[b].len() > 1 {
                    ladders.insert((a, b), Ladder::with_index(self.g, &self.idx, &paths[a], &paths[b])?);
                }
            }
        }
        let lad = |a: usize, b: usize| -> &Ladder { &ladders[&(a.min(b), a.max(b))] };
        let pt = |a: Vertex, b: Vertex| CyclePoint::on(a, b);
        let hv = |k: usize, from: CyclePoint| from_point(h.curve(ends[k]), from);
        let mut out: Vec<(Vertex, Vec<Station>)> = Vec::new();
        for x in 0..3 {
            let (y1, y2) = ((x + 1) % 3, (x + 2) % 3);
            let (px, py1, py2) = (&paths[x], &paths[y1], &paths[y2]);
            let stations = match single.len() {
                0 => {
                    // Along the inside of the path of y2, then the curve of H
                    // at y1's end, then back to the edge x-y1.
                    let start = pt(px[0], py2[0]);
                    let meet = pt(ends[y1], ends[y2]);
                    let mut pieces = along_path(lad(x, y2), lad(y1, y2), py2, start, meet)?;
                    pieces.push(hv(y1, meet));
                    pieces.push(lad(x, y1).chord(pt(ends[x], ends[y1]), pt(px[0], py1[0]))?);
                    join(pieces)
                }
                1 => {
                    let sgl = single[0];
                    if x == sgl {
                        let (a, b) = (y1, y2);
                        let s0 = lad(a, x).chord(pt(paths[a][0], px[0]), pt(ends[a], px[0]))?;
                        let s1 = hv(x, pt(ends[a], px[0]));
                        let s2 = lad(b, x).chord(pt(ends[b], px[0]), pt(paths[b][0], px[0]))?;
                        join(vec![s0, s1, s2])
                    } else {
                        let b = if y1 == sgl { y2 } else { y1 };
                        let pb = &paths[b];
                        let start = pt(px[0], pb[0]);
                        let top = pt(ends[x], ends[b]);
                        let mut pieces = if pb.len() > 2 {
                            along_path(lad(x, b), lad(x, b), pb, start, top)?
                        } else {
                            vec![lad(x, b).chord(start, top)?]
                        };
                        pieces.push(hv(x, top));
                        pieces.push(lad(x, sgl).chord(pt(ends[x], ends[sgl]), pt(px[0], paths[sgl][0]))?);
                        join(pieces)
                    }
                }
                _ => {
                    let t = (0..3).find(|k| !single.contains(k)).unwrap();
                    let pt_ = &paths[t];
                    if x == t {
                        let (a, b) = (y1, y2);
                        let s0 = lad(a, t).chord(pt(paths[a][0], pt_[0]), pt(paths[a][0], ends[t]))?;
                        let s1 = hv(t, pt(paths[a][0], ends[t]));
                        let s2 = lad(b, t).chord(pt(paths[b][0], ends[t]), pt(paths[b][0], pt_[0]))?;
                        join(vec![s0, s1, s2])
                    } else {
                        let b = if y1 == t { y2 } else { y1 };
                        let start = pt(px[0], pt_[0]);
                        let meet = pt(paths[b][0], ends[t]);
                        let mut pieces = along_path(lad(x, t), lad(b, t), pt_, start, meet)?;
                        pieces.push(hv(b, meet));
                        join(pieces)
                    }
                }
            };
            out.push((tri[x], stations));
        }
        Ok([out[0].clone(), out[1].clone(), out[2].clone()])
    }
}

/// From `start` through the inner vertices of `path` (or across its single
/// edge) to `end`, using `first` before the path and `second` after it.
fn along_path(
    first: &Ladder,
    second: &Ladder,
    path: &[Vertex],
    start: CyclePoint,
    end: CyclePoint,
) -> Result<Vec<Vec<Station>>, BundleError> {
    let len = path.len();
    if len > 2 {
        let s0 = first.chord(start, CyclePoint::Vertex(path[1]))?;
        let s1: Vec<Station> = path[1..len - 1].iter().map(|&v| Station::Vertex(v)).collect();
        let s2 = second.chord(CyclePoint::Vertex(path[len - 2]), end)?;
        Ok(vec![s0, s1, s2])
    } else {
        let mid = CyclePoint::on(path[0], path[1]);
        Ok(vec![first.chord(start, mid)?, second.chord(mid, end)?])
    }
}

fn others(t: [Vertex; 3], x: Vertex) -> [Vertex; 2] {
    let i = t.iter().position(|&y| y == x).unwrap();
    [t[(i + 1) % 3], t[(i + 2) % 3]]
}

/// Bundles for every node, children before parents.
pub fn node_bundles(g: &PlaneGraph, dec: &ThreeTreeDecomp) -> Result<Vec<NodeBundle>, BundleError> {
    let b = Builder { g, dec, idx: FaceIndex::new(g), types: dec.vertex_types() };
    let mut memo: Vec<Option<NodeBundle>> = vec![None; dec.nodes.len()];
    for id in (0..dec.nodes.len()).rev() {
        memo[id] = Some(b.bundle(id, &memo)?);
    }
    Ok(memo.into_iter().map(|m| m.unwrap()).collect())
}

/// The three curves of the whole plane 3-tree, each validated.
pub fn build_curve_bundle(g: &PlaneGraph, dec: &ThreeTreeDecomp) -> Result<CurveBundle, BundleError> {
    let all = node_bundles(g, dec)?;
    bundle_from_root(g, dec, &all[dec.root])
}

pub(crate) fn bundle_from_root(g: &PlaneGraph, dec: &ThreeTreeDecomp, root: &NodeBundle) -> Result<CurveBundle, BundleError> {
    let corners = dec.root().tri;
    let mk = |x: Vertex| -> Result<GoodCurve, BundleError> {
        let c = GoodCurve::open(root.curve(x).to_vec());
        let rep = validate_curve(g, &c)?;
        if !(rep.good && rep.proper) {
            return Err(BundleError::Invalid(format!("curve at corner {x}: {:?}", rep.violations)));
        }
        Ok(c)
    };
    Ok(CurveBundle {
        corners,
        lambda_u: mk(corners[0])?,
        lambda_v: mk(corners[1])?,
        lambda_z: mk(corners[2])?,
        s: root.s,
        x: root.x,
    })
}

/// One of the counting relations checked at a decomposition node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountItem {
    /// `a + b + c + d = m`
    Total,
    /// `a = c + 2d + 1`
    Leaves,
    /// `h <= 2c + 3d + 1`
    Chains,
    /// `x <= b`
    MissedB,
    /// `x <= 3h`
    MissedPerChain,
    /// `s >= 3a + b - x`
    Visits,
    /// `8s >= 3m`
    Density,
}

#[derive(Clone, Debug, Default)]
pub struct CountReport {
    pub nodes_checked: usize,
    /// `(node, item)` in node order, first failure first.
    pub violations: Vec<(usize, CountItem)>,
}

impl CountReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<(usize, CountItem)> {
        self.violations.first().copied()
    }
}

/// Evaluates the counting relations at every non-empty node.
pub fn check_counting_bounds(dec: &ThreeTreeDecomp, bundles: &[NodeBundle]) -> CountReport {
    let mut rep = CountReport::default();
    for (id, n) in dec.nodes.iter().enumerate() {
        if n.is_empty() {
            continue;
        }
        rep.nodes_checked += 1;
        let nb = &bundles[id];
        let (a, b, c, d, m, h, s, x) = (n.a, n.b, n.c, n.d, n.m, n.h, nb.s, nb.x);
        let checks = [
            (CountItem::Total, a + b + c + d == m),
            (CountItem::Leaves, a == c + 2 * d + 1),
            (CountItem::Chains, h <= 2 * c + 3 * d + 1),
            (CountItem::MissedB, x <= b),
            (CountItem::MissedPerChain, x <= 3 * h),
            (CountItem::Visits, s + x >= 3 * a + b),
            (CountItem::Density, 8 * s >= 3 * m),
        ];
        rep.violations.extend(checks.iter().filter(|c| !c.1).map(|c| (id, c.0)));
    }
    rep
}
