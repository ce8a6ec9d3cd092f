//! The inductive curve construction on well-formed quadruples, with the
//! charging of skipped vertices to visited ones.

use std::collections::{BTreeMap, HashSet};

use super::quadruple::{blocks, make_quadruple, raw_chain, sub_quadruple, Quadruple, RawChain};
use super::CubicError;
use crate::curves::{augment_with_curve, validate_curve, Anchor, GoodCurve, Station};
use crate::plane_graph::{edge, Edge, PathKind, PlaneGraph, Vertex};

/// A curve with every skipped vertex charged to a vertex on the curve.
#[derive(Clone, Debug)]
pub struct ChargedCurve {
    pub curve: GoodCurve,
    /// Skipped vertex -> vertex on the curve it is charged to.
    pub charges: BTreeMap<Vertex, Vertex>,
    /// Quadruples built and audited on the way, this one included.
    pub levels: usize,
}

impl ChargedCurve {
    /// Number of charges per receiving vertex.
    pub fn load(&self) -> BTreeMap<Vertex, usize> {
        let mut out = BTreeMap::new();
        for &to in self.charges.values() {
            *out.entry(to).or_insert(0) += 1;
        }
        out
    }

    pub fn charge_dump(&self) -> String {
        self.charges.iter().map(|(a, b)| format!("charge {a} -> {b}\n")).collect()
    }
}

/// A curve point before faces are resolved. `F(a, b)` is the face left of
/// the dart `a -> b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pt {
    V(Vertex),
    X(Vertex, Vertex),
    F(Vertex, Vertex),
}

impl Pt {
    fn map(self, m: &[Vertex]) -> Pt {
        match self {
            Pt::V(a) => Pt::V(m[a]),
            Pt::X(a, b) => Pt::X(m[a], m[b]),
            Pt::F(a, b) => Pt::F(m[a], m[b]),
        }
    }
}

#[derive(Clone, Debug, Default)]
struct Partial {
    pts: Vec<Pt>,
    charges: Vec<(Vertex, Vertex)>,
    levels: usize,
}

impl Partial {
    fn push(&mut self, p: Pt) {
        self.pts.push(p);
    }

    fn charge(&mut self, from: Vertex, to: Vertex) {
        self.charges.push((from, to));
    }

    /// Appends a sub-result given in the ids of a subgraph; its first point
    /// repeats the current last one.
    fn splice(&mut self, sub: Partial, map: &[Vertex]) {
        let mut pts = sub.pts.into_iter().map(|p| p.map(map));
        let first = pts.next();
        if first != self.pts.last().copied() {
            self.pts.extend(first);
        }
        self.pts.extend(pts);
        self.charges.extend(sub.charges.into_iter().map(|(a, b)| (map[a], map[b])));
        self.levels += sub.levels;
    }

    fn last(&self) -> Option<Pt> {
        self.pts.last().copied()
    }
}

fn resolve(g: &PlaneGraph, pts: &[Pt]) -> Result<Vec<Station>, CubicError> {
    pts.iter()
        .map(|&p| match p {
            Pt::V(a) => Ok(Station::Vertex(a)),
            Pt::X(a, b) => Ok(Station::Crossing(edge(a, b))),
            Pt::F(a, b) => {
                g.face_left_of(a, b).map(Station::Face).ok_or_else(|| CubicError::Structure(format!("no dart {a}->{b}")))
            }
        })
        .collect()
}

/// Continues along `path`, given in counter-clockwise boundary order,
/// visiting every vertex after the first that is not in `xs`. The curve
/// stands on `path[0]` when `on_vertex`, otherwise just across the edge
/// `path[0]-path[1]`. With `stop_before_last` the last vertex is not
/// visited: the walk ends at its neighbour or across the edge to it.
fn walk_path(out: &mut Partial, path: &[Vertex], xs: &HashSet<Vertex>, on_vertex: bool, stop_before_last: bool) {
    let end = if stop_before_last { path.len() - 1 } else { path.len() };
    let mut at = on_vertex.then_some(0);
    for j in 1..end {
        let p = path[j];
        if xs.contains(&p) {
            continue;
        }
        if at != Some(j - 1) {
            out.push(Pt::F(path[j - 1], p));
        }
        out.push(Pt::V(p));
        at = Some(j);
    }
    if stop_before_last {
        let t = path.len() - 1;
        if at != Some(t - 1) {
            out.push(Pt::F(path[t - 1], path[t]));
            out.push(Pt::X(path[t - 1], path[t]));
        }
    }
}

/// Walks a chain from `start` (the curve's current vertex, on the first
/// path) towards its last vertex, recursing into the blocks. Ends at the
/// last block's end point, at the neighbour of the last vertex, or across
/// the edge to it.
fn walk_chain(out: &mut Partial, g: &PlaneGraph, chain: &RawChain, xs: &HashSet<Vertex>, start: Vertex) -> Result<(), CubicError> {
    let p0 = &chain.paths[0];
    let s = p0.iter().position(|&x| x == start).ok_or_else(|| CubicError::Structure(format!("{start} is not on the first path")))?;
    let k = chain.blocks.len();
    walk_path(out, &p0[s..], xs, true, k == 0);
    for (i, rb) in chain.blocks.iter().enumerate() {
        if out.last() != Some(Pt::V(rb.entry)) {
            return Err(CubicError::Structure(format!("block entry {} is not on the curve", rb.entry)));
        }
        let (q, map) = sub_quadruple(g, &rb.vertices, &rb.edges, rb.entry, rb.exit, xs)?;
        out.splice(build_rec(&q)?, &map);
        let next = &chain.paths[i + 1];
        let last = i + 1 == k;
        if last && next.len() == 2 {
            break;
        }
        let vp = next[1];
        // Outside the block, on the outer side of the dart next[0] -> vp.
        out.push(Pt::F(vp, next[0]));
        if xs.contains(&vp) {
            out.push(Pt::X(next[0], vp));
            walk_path(out, next, xs, false, last);
        } else {
            out.push(Pt::V(vp));
            walk_path(out, &next[1..], xs, true, last);
        }
    }
    Ok(())
}

fn vertex_set(es: &[Edge]) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = es.iter().flat_map(|&(a, b)| [a, b]).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// The single vertex of `inside` with a neighbour outside it, ignoring the
/// edge `skip`.
fn attachment(g: &PlaneGraph, inside: &HashSet<Vertex>, edges: &HashSet<Edge>, skip: Edge) -> Result<Vertex, CubicError> {
    let mut found: Vec<Vertex> = inside
        .iter()
        .copied()
        .filter(|&w| g.rotation(w).iter().any(|&x| !inside.contains(&x) && edge(w, x) != skip && edges.contains(&edge(w, x))))
        .collect();
    found.sort_unstable();
    match found.as_slice() {
        [y] => Ok(*y),
        _ => Err(CubicError::Structure(format!("expected one attachment, found {found:?}"))),
    }
}

fn structure(m: impl Into<String>) -> CubicError {
    CubicError::Structure(m.into())
}

/// Builds, audits and returns the curve of one quadruple in its own ids.
fn build_rec(q: &Quadruple) -> Result<Partial, CubicError> {
    let g = &q.g;
    let (u, v) = (q.u, q.v);
    let xs: HashSet<Vertex> = q.x_seq.iter().copied().collect();
    let tau = q.tau();
    let beta = q.beta();
    let mut out = Partial { levels: 1, ..Partial::default() };
    out.push(Pt::V(u));
    let all_edges: HashSet<Edge> = g.edges().into_iter().collect();
    if (0..g.vertex_count()).all(|x| g.degree(x) == 2) {
        // A cycle: along the counter-clockwise side, skipping X.
        if !g.has_edge(u, v) {
            return Err(structure("cycle without the edge u-v"));
        }
        walk_path(&mut out, &beta, &xs, true, true);
        out.charge(v, u);
    } else if g.has_edge(u, v) {
        let es: HashSet<Edge> = all_edges.iter().copied().filter(|&e| e != edge(u, v)).collect();
        let chain = raw_chain(g, &es, u, v)?;
        walk_chain(&mut out, g, &chain, &xs, u)?;
        out.charge(v, u);
    } else {
        build_split(q, &xs, &tau, &beta, &all_edges, &mut out)?;
    }
    audit(q, &out)?;
    Ok(out)
}

/// The cases without the edge u-v: split off the block `h` of `g - v`
/// holding `u`.
fn build_split(
    q: &Quadruple,
    xs: &HashSet<Vertex>,
    tau: &[Vertex],
    beta: &[Vertex],
    all_edges: &HashSet<Edge>,
    out: &mut Partial,
) -> Result<(), CubicError> {
    let g = &q.g;
    let (u, v) = (q.u, q.v);
    let y1 = tau[tau.len() - 2];
    let vp = beta[beta.len() - 2];
    let h_edges: HashSet<Edge> = blocks(g, |a, b| a != v && b != v)
        .into_iter()
        .find(|b| b.iter().any(|&(a, c)| a == u || c == u))
        .ok_or_else(|| structure("no block at u"))?
        .into_iter()
        .collect();
    let h_list: Vec<Edge> = h_edges.iter().copied().collect();
    let h_verts = vertex_set(&h_list);
    let h_set: HashSet<Vertex> = h_verts.iter().copied().collect();
    if !h_set.contains(&y1) {
        return Err(structure("the clockwise neighbour of v is outside the block at u"));
    }
    let y2 = attachment(g, &h_set, all_edges, edge(y1, v))?;
    let mut b2_verts: Vec<Vertex> = (0..g.vertex_count()).filter(|x| !h_set.contains(x)).collect();
    b2_verts.push(y2);
    let b2_set: HashSet<Vertex> = b2_verts.iter().copied().collect();
    let b2_edges: HashSet<Edge> =
        all_edges.iter().copied().filter(|&(a, b)| b2_set.contains(&a) && b2_set.contains(&b)).collect();
    let mut xh: HashSet<Vertex> = xs.iter().copied().filter(|x| h_set.contains(x)).collect();
    xh.insert(y2);
    let tail = |out: &mut Partial| {
        out.push(Pt::F(v, y1));
        out.push(Pt::X(vp, v));
    };

    if b2_verts.iter().any(|&x| x != v && x != y2 && !xs.contains(&x)) {
        // Through the block at u, then across into the rest.
        let (hq, map) = sub_quadruple(g, &h_verts, &h_edges, u, y1, &xh)?;
        out.splice(build_rec(&hq)?, &map);
        let iy = beta.iter().position(|&x| x == y2).ok_or_else(|| structure("y2 is off the boundary"))?;
        let up = beta[iy + 1..].iter().copied().find(|x| !xs.contains(x)).expect("v ends the path");
        if up == v {
            return Err(structure("no visitable vertex between y2 and v"));
        }
        out.push(Pt::F(v, y1));
        out.push(Pt::V(up));
        let chain = raw_chain(g, &b2_edges, y2, v)?;
        walk_chain(out, g, &chain, xs, up)?;
        out.charge(y2, up);
        out.charge(v, up);
        return Ok(());
    }

    if h_edges.contains(&edge(u, y1)) {
        let rest: Vec<Vertex> = h_verts.iter().copied().filter(|&x| x != u && x != y1 && !xh.contains(&x)).collect();
        if rest.is_empty() {
            out.push(Pt::V(y1));
            tail(out);
            out.charge(y2, y1);
            out.charge(v, y1);
        } else {
            let es: HashSet<Edge> = h_edges.iter().copied().filter(|&e| e != edge(u, y1)).collect();
            let chain = raw_chain(g, &es, u, y1)?;
            walk_chain(out, g, &chain, &xh, u)?;
            tail(out);
            let (hg, map) = g.subgraph(&h_verts, |a, b| h_edges.contains(&edge(a, b)))?;
            let loc = |x: Vertex| map.binary_search(&x).expect("in h");
            let hb = hg.boundary_path(loc(u), loc(y1), PathKind::Beta)?.walk;
            let up = hb[1..].iter().map(|&i| map[i]).find(|x| !xh.contains(x)).expect("y1 ends the path");
            if up == y1 {
                return Err(structure("no visitable vertex between u and y1"));
            }
            out.charge(v, u);
            out.charge(y1, up);
            out.charge(y2, up);
        }
        return Ok(());
    }

    // Remove y1 from h; k is the block of the rest holding u.
    let (hg, hmap) = g.subgraph(&h_verts, |a, b| h_edges.contains(&edge(a, b)))?;
    let hloc = |x: Vertex| hmap.binary_search(&x).expect("in h");
    let htau: Vec<Vertex> = hg.boundary_path(hloc(u), hloc(y1), PathKind::Tau)?.walk.iter().map(|&i| hmap[i]).collect();
    let hbeta: Vec<Vertex> = hg.boundary_path(hloc(u), hloc(y1), PathKind::Beta)?.walk.iter().map(|&i| hmap[i]).collect();
    let w1 = htau[htau.len() - 2];
    let k_edges: HashSet<Edge> = blocks(g, |a, b| a != y1 && b != y1 && h_edges.contains(&edge(a, b)))
        .into_iter()
        .find(|b| b.iter().any(|&(a, c)| a == u || c == u))
        .ok_or_else(|| structure("no block at u after removing y1"))?
        .into_iter()
        .collect();
    let k_list: Vec<Edge> = k_edges.iter().copied().collect();
    let k_verts = vertex_set(&k_list);
    let k_set: HashSet<Vertex> = k_verts.iter().copied().collect();
    if !k_set.contains(&w1) {
        return Err(structure("w1 is outside the block at u"));
    }
    let w2 = attachment(g, &k_set, &h_edges, edge(w1, y1))?;
    let mut xk: HashSet<Vertex> = xs.iter().copied().filter(|x| k_set.contains(x)).collect();
    xk.insert(w2);
    let y2_in_k = k_set.contains(&y2);
    if y2_in_k {
        xk.insert(y2);
    }
    let (kq, kmap) = sub_quadruple(g, &k_verts, &k_edges, u, w1, &xk)?;
    out.splice(build_rec(&kq)?, &kmap);
    out.push(Pt::F(y1, w1));
    let mut d2_verts: Vec<Vertex> = h_verts.iter().copied().filter(|x| !k_set.contains(x)).collect();
    d2_verts.push(w2);
    let d2_set: HashSet<Vertex> = d2_verts.iter().copied().collect();
    let d2_edges: HashSet<Edge> = h_edges
        .iter()
        .copied()
        .filter(|&(a, b)| d2_set.contains(&a) && d2_set.contains(&b) && edge(a, b) != edge(w1, y1))
        .collect();
    if y2_in_k && d2_verts.len() != 2 {
        return Err(structure("w2-y1 side is not a single edge"));
    }
    let skip_all = d2_verts.iter().all(|&x| x == w2 || x == y1 || xh.contains(&x));
    if skip_all {
        out.push(Pt::V(y1));
    } else {
        let iw = hbeta.iter().position(|&x| x == w2).ok_or_else(|| structure("w2 is off the boundary of h"))?;
        let up = hbeta[iw + 1..].iter().copied().find(|x| !xh.contains(x)).expect("y1 ends the path");
        if up == y1 {
            return Err(structure("no visitable vertex between w2 and y1"));
        }
        out.push(Pt::V(up));
        let chain = raw_chain(g, &d2_edges, w2, y1)?;
        walk_chain(out, g, &chain, &xh, up)?;
        match out.last() {
            Some(Pt::X(a, b)) if a == y1 || b == y1 => {
                // Across the edge into y1: end on y1 instead, same face.
                out.pts.pop();
                out.push(Pt::V(y1));
            }
            Some(Pt::V(p)) if g.has_edge(p, y1) => out.push(Pt::V(y1)),
            _ => {
                out.push(Pt::F(v, y1));
                out.push(Pt::V(y1));
            }
        }
    }
    tail(out);
    out.charge(v, y1);
    out.charge(y2, y1);
    out.charge(w2, y1);
    Ok(())
}

/// The unbounded side of a quadruple's curve: left of the last clockwise
/// dart into `v`.
fn quad_anchor(q: &Quadruple, tau: &[Vertex]) -> Anchor {
    Anchor { tail: tau[tau.len() - 2], head: q.v, far: false }
}

fn audit(q: &Quadruple, p: &Partial) -> Result<(), CubicError> {
    let tau = q.tau();
    let curve = GoodCurve::open(resolve(&q.g, &p.pts)?).with_anchor(Some(quad_anchor(q, &tau)));
    let charges = collect_charges(p)?;
    audit_charged(q, &curve, &charges).map_err(|m| CubicError::Audit { n: q.g.vertex_count(), msg: m })
}

fn collect_charges(p: &Partial) -> Result<BTreeMap<Vertex, Vertex>, CubicError> {
    let mut out = BTreeMap::new();
    for &(a, b) in &p.charges {
        if out.insert(a, b).is_some() {
            return Err(structure(format!("{a} charged twice")));
        }
    }
    Ok(out)
}

/// Checks the curve of a quadruple against every requirement of the
/// induction: proper and good, starts at `u`, avoids `v` and X, meets the
/// counter-clockwise path in order and ends on it after the last X vertex,
/// never leaves through the clockwise path, and the charges.
pub fn audit_charged(q: &Quadruple, c: &GoodCurve, charges: &BTreeMap<Vertex, Vertex>) -> Result<(), String> {
    let g = &q.g;
    let (u, v) = (q.u, q.v);
    let rep = validate_curve(g, c).map_err(|e| e.to_string())?;
    if !rep.good {
        return Err(format!("not good: {:?}", rep.violations));
    }
    if !rep.proper {
        return Err("not proper".into());
    }
    let st = &c.stations;
    if st.first() != Some(&Station::Vertex(u)) {
        return Err("does not start at u".into());
    }
    let on: HashSet<Vertex> = rep.vertices_on_curve.iter().copied().collect();
    if on.contains(&v) {
        return Err("passes through v".into());
    }
    let beta = q.beta();
    let tau = q.tau();
    let bpos = |s: &Station| -> Option<usize> {
        match *s {
            Station::Vertex(x) => beta.iter().position(|&y| y == x).map(|i| 2 * i),
            Station::Crossing((a, b)) => beta.windows(2).position(|w| edge(w[0], w[1]) == (a, b)).map(|i| 2 * i + 1),
            Station::Face(_) => None,
        }
    };
    let touches: Vec<usize> = st.iter().filter_map(bpos).collect();
    if touches.windows(2).any(|w| w[0] >= w[1]) {
        return Err(format!("meets the counter-clockwise path out of order: {touches:?}"));
    }
    let z = st.last().and_then(bpos).ok_or("does not end on the counter-clockwise path")?;
    let vpos = 2 * (beta.len() - 1);
    if z >= vpos {
        return Err("ends at v".into());
    }
    if let Some(&xm) = q.x_seq.last() {
        let xp = 2 * beta.iter().position(|&y| y == xm).expect("x on path");
        if z <= xp {
            return Err("ends before the last X vertex".into());
        }
    }
    if let Some(x) = q.x_seq.iter().find(|x| on.contains(x)) {
        return Err(format!("passes through X vertex {x}"));
    }
    let aug = augment_with_curve(g, c).map_err(|e| e.to_string())?;
    let outer = aug.graph.face_vertices(aug.graph.outer_face());
    if let Some(x) = q.x_seq.iter().find(|x| outer.binary_search(x).is_err()) {
        return Err(format!("X vertex {x} is cut off from the unbounded region"));
    }
    let tau_edges: HashSet<Edge> = tau.windows(2).map(|w| edge(w[0], w[1])).collect();
    let tau_set: HashSet<Vertex> = tau.iter().copied().collect();
    let gouter = g.outer_face();
    for (i, s) in st.iter().enumerate() {
        match *s {
            Station::Crossing(e) if tau_edges.contains(&e) => return Err(format!("crosses clockwise edge {e:?}")),
            Station::Vertex(x) if tau_set.contains(&x) => {
                let near = [i.checked_sub(1).map(|j| st[j]), st.get(i + 1).copied()];
                if near.contains(&Some(Station::Face(gouter))) {
                    return Err(format!("leaves through clockwise vertex {x}"));
                }
            }
            _ => {}
        }
    }
    let xs: HashSet<Vertex> = q.x_seq.iter().copied().collect();
    for x in 0..g.vertex_count() {
        if xs.contains(&x) || on.contains(&x) {
            if charges.contains_key(&x) {
                return Err(format!("{x} is charged but needs no charge"));
            }
            continue;
        }
        match charges.get(&x) {
            None => return Err(format!("{x} is skipped and not charged")),
            Some(t) if !on.contains(t) => return Err(format!("{x} is charged to {t}, which is off the curve")),
            _ => {}
        }
    }
    let mut load: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &t in charges.values() {
        *load.entry(t).or_insert(0) += 1;
    }
    if let Some((t, l)) = load.iter().find(|&(_, &l)| l > 3) {
        return Err(format!("{t} carries {l} charges"));
    }
    if load.get(&u).copied().unwrap_or(0) > 1 {
        return Err("u carries more than one charge".into());
    }
    Ok(())
}

/// The curve of a well-formed quadruple, audited at every level of the
/// recursion.
pub fn build_cubic_curve(q: &Quadruple) -> Result<ChargedCurve, CubicError> {
    let p = build_rec(q)?;
    let tau = q.tau();
    let curve = GoodCurve::open(resolve(&q.g, &p.pts)?).with_anchor(Some(quad_anchor(q, &tau)));
    let charges = collect_charges(&p)?;
    Ok(ChargedCurve { curve, charges, levels: p.levels })
}

/// A proper good curve through at least a quarter of the vertices of a
/// triconnected cubic plane graph.
pub fn theorem4(g: &PlaneGraph) -> Result<ChargedCurve, CubicError> {
    let n = g.vertex_count();
    if n < 4 || (0..n).any(|x| g.degree(x) != 3) {
        return Err(CubicError::NotCubic);
    }
    if !g.separation_pairs().map(|s| s.is_triconnected()).unwrap_or(false) {
        return Err(CubicError::NotTriconnected);
    }
    let walk = g.outer_walk();
    let (u, v) = (walk[0], walk[1]);
    let all: Vec<Vertex> = (0..n).collect();
    let (gp, _) = g.subgraph(&all, |a, b| edge(a, b) != edge(u, v))?;
    let q = make_quadruple(gp, u, v, Vec::new())?;
    let p = build_rec(&q)?;
    // Same ids; faces are resolved in g, with the unbounded side next to u-v.
    let curve = GoodCurve::open(resolve(g, &p.pts)?).with_anchor(Some(Anchor { tail: u, head: v, far: false }));
    let charges = collect_charges(&p)?;
    let rep = validate_curve(g, &curve)?;
    if !rep.good || !rep.proper {
        return Err(CubicError::Audit { n, msg: format!("final curve: good={}, proper={}", rep.good, rep.proper) });
    }
    let out = ChargedCurve { curve, charges, levels: p.levels };
    if out.load().values().any(|&l| l > 3) || rep.vertex_count_on_curve * 4 < n {
        return Err(CubicError::Audit { n, msg: "final charges".into() });
    }
    Ok(out)
}
