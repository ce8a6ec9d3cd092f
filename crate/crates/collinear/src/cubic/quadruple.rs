//! Well-formed quadruples and the chain structure of their {a,b}-components.

use std::collections::{HashMap, HashSet};

use super::CubicError;
use crate::plane_graph::{edge, Edge, PathKind, PlaneGraph, Vertex};
use thiserror::Error;

/// A plane graph with two outer vertices `u`, `v` and a sequence `x_seq` of
/// degree-2 vertices on the counter-clockwise boundary path from `u` to `v`.
#[derive(Clone, Debug)]
pub struct Quadruple {
    pub g: PlaneGraph,
    pub u: Vertex,
    pub v: Vertex,
    pub x_seq: Vec<Vertex>,
}

/// Why a quadruple is not well formed; `property()` names the failed
/// condition (a) to (f).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadrupleError {
    #[error("(a) graph is not biconnected and subcubic: {0}")]
    NotBiconnectedSubcubic(String),
    #[error("(b) u and v must be distinct outer vertices: {0}")]
    BadEnds(String),
    #[error("(c) u and v must have degree 2: {0}")]
    EndDegree(String),
    #[error("(d) edge u-v is not the clockwise boundary path")]
    DirectEdge,
    #[error("(e) separation pair {0:?}: {1}")]
    SeparationPair((Vertex, Vertex), String),
    #[error("(f) bad X sequence: {0}")]
    BadX(String),
}

impl QuadrupleError {
    pub fn property(&self) -> char {
        match self {
            QuadrupleError::NotBiconnectedSubcubic(_) => 'a',
            QuadrupleError::BadEnds(_) => 'b',
            QuadrupleError::EndDegree(_) => 'c',
            QuadrupleError::DirectEdge => 'd',
            QuadrupleError::SeparationPair(..) => 'e',
            QuadrupleError::BadX(_) => 'f',
        }
    }
}

impl Quadruple {
    /// Clockwise outer path from `u` to `v`.
    pub fn tau(&self) -> Vec<Vertex> {
        self.g.boundary_path(self.u, self.v, PathKind::Tau).expect("checked on construction").walk
    }

    /// Counter-clockwise outer path from `u` to `v`.
    pub fn beta(&self) -> Vec<Vertex> {
        self.g.boundary_path(self.u, self.v, PathKind::Beta).expect("checked on construction").walk
    }
}

pub fn make_quadruple(g: PlaneGraph, u: Vertex, v: Vertex, x_seq: Vec<Vertex>) -> Result<Quadruple, QuadrupleError> {
    use QuadrupleError as E;
    let n = g.vertex_count();
    if !g.is_biconnected() {
        return Err(E::NotBiconnectedSubcubic("not biconnected".into()));
    }
    if g.max_degree() > 3 {
        return Err(E::NotBiconnectedSubcubic(format!("maximum degree {}", g.max_degree())));
    }
    if u >= n || v >= n || u == v {
        return Err(E::BadEnds(format!("u={u}, v={v}")));
    }
    let tau = g.boundary_path(u, v, PathKind::Tau).map_err(|e| E::BadEnds(e.to_string()))?;
    let beta = g.boundary_path(u, v, PathKind::Beta).map_err(|e| E::BadEnds(e.to_string()))?;
    if g.degree(u) != 2 || g.degree(v) != 2 {
        return Err(E::EndDegree(format!("deg(u)={}, deg(v)={}", g.degree(u), g.degree(v))));
    }
    if g.has_edge(u, v) && tau.walk.len() != 2 {
        return Err(E::DirectEdge);
    }
    let outer: HashSet<Vertex> = g.outer_walk().into_iter().collect();
    let beta_inner: HashSet<Vertex> = beta.interior().iter().copied().collect();
    let seps = g.separation_pairs().map_err(|e| E::NotBiconnectedSubcubic(e.to_string()))?;
    for &(a, b) in &seps.separation_pairs {
        if !outer.contains(&a) || !outer.contains(&b) {
            return Err(E::SeparationPair((a, b), "not both outer".into()));
        }
        if !beta_inner.contains(&a) && !beta_inner.contains(&b) {
            return Err(E::SeparationPair((a, b), "neither is inside the counter-clockwise path".into()));
        }
        for comp in g.pair_components(a, b) {
            if !comp.trivial && !comp.vertices.iter().any(|&x| x != a && x != b && outer.contains(&x)) {
                return Err(E::SeparationPair((a, b), "a component has no other outer vertex".into()));
            }
        }
    }
    let mut last = 0;
    for &x in &x_seq {
        if x >= n || g.degree(x) != 2 {
            return Err(E::BadX(format!("{x} does not have degree 2")));
        }
        let Some(p) = beta.position(x).filter(|_| beta_inner.contains(&x)) else {
            return Err(E::BadX(format!("{x} is not inside the counter-clockwise path")));
        };
        if p <= last {
            return Err(E::BadX(format!("{x} is out of order")));
        }
        last = p;
    }
    Ok(Quadruple { g, u, v, x_seq })
}

/// Biconnected components, as edge lists, of the graph formed by the edges
/// of `g` accepted by `keep`.
pub(crate) fn blocks(g: &PlaneGraph, keep: impl Fn(Vertex, Vertex) -> bool) -> Vec<Vec<Edge>> {
    let n = g.vertex_count();
    let adj: Vec<Vec<Vertex>> =
        (0..n).map(|v| g.rotation(v).iter().copied().filter(|&w| keep(v, w)).collect()).collect();
    let none = usize::MAX;
    let mut disc = vec![none; n];
    let mut low = vec![0; n];
    let mut t = 0;
    let mut estack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != none || adj[root].is_empty() {
            continue;
        }
        disc[root] = t;
        low[root] = t;
        t += 1;
        let mut stack: Vec<(Vertex, Vertex, usize)> = vec![(root, none, 0)];
        while let Some(top) = stack.len().checked_sub(1) {
            let (v, p, i) = stack[top];
            if i < adj[v].len() {
                stack[top].2 += 1;
                let w = adj[v][i];
                if w == p {
                    continue;
                }
                if disc[w] == none {
                    estack.push((v, w));
                    disc[w] = t;
                    low[w] = t;
                    t += 1;
                    stack.push((w, v, 0));
                } else if disc[w] < disc[v] {
                    estack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if p != none {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = estack.pop() {
                            comp.push(edge(e.0, e.1));
                            if e == (p, v) {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

/// A block of a chain, in the ids of the graph it was cut from.
#[derive(Clone, Debug)]
pub(crate) struct RawBlock {
    pub vertices: Vec<Vertex>,
    pub edges: HashSet<Edge>,
    pub entry: Vertex,
    pub exit: Vertex,
}

/// Paths and biconnected blocks met walking from `a` to `b`; there is one
/// more path than blocks.
#[derive(Clone, Debug)]
pub(crate) struct RawChain {
    pub paths: Vec<Vec<Vertex>>,
    pub blocks: Vec<RawBlock>,
}

/// Splits the connected graph formed by `edges` into alternating paths and
/// blocks from `a` to `b`. Fails if the blocks do not form a single line.
pub(crate) fn raw_chain(g: &PlaneGraph, edges: &HashSet<Edge>, a: Vertex, b: Vertex) -> Result<RawChain, CubicError> {
    let bl = blocks(g, |x, y| edges.contains(&edge(x, y)));
    let mut at: HashMap<Vertex, Vec<usize>> = HashMap::new();
    for (i, es) in bl.iter().enumerate() {
        let mut vs: Vec<Vertex> = es.iter().flat_map(|&(x, y)| [x, y]).collect();
        vs.sort_unstable();
        vs.dedup();
        for x in vs {
            at.entry(x).or_default().push(i);
        }
    }
    let not_chain = |m: &str| CubicError::Structure(format!("edges from {a} to {b} do not form a chain: {m}"));
    let mut used = vec![false; bl.len()];
    let mut paths = Vec::new();
    let mut blocks_out = Vec::new();
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let cand: Vec<usize> = at.get(&cur).into_iter().flatten().copied().filter(|&i| !used[i]).collect();
        if cand.len() != 1 {
            return Err(not_chain(&format!("{} ways on at {cur}", cand.len())));
        }
        let i = cand[0];
        used[i] = true;
        if bl[i].len() == 1 {
            let (x, y) = bl[i][0];
            cur = if x == cur { y } else { x };
            path.push(cur);
            continue;
        }
        let mut vs: Vec<Vertex> = bl[i].iter().flat_map(|&(x, y)| [x, y]).collect();
        vs.sort_unstable();
        vs.dedup();
        let exits: Vec<Vertex> = vs
            .iter()
            .copied()
            .filter(|&x| x != cur && (x == b || at[&x].iter().any(|&j| !used[j])))
            .collect();
        if exits.len() != 1 {
            return Err(not_chain(&format!("block at {cur} has {} exits", exits.len())));
        }
        paths.push(std::mem::take(&mut path));
        blocks_out.push(RawBlock { vertices: vs, edges: bl[i].iter().copied().collect(), entry: cur, exit: exits[0] });
        cur = exits[0];
        path.push(cur);
    }
    paths.push(path);
    if used.iter().any(|&x| !x) {
        return Err(not_chain("blocks off the line"));
    }
    Ok(RawChain { paths, blocks: blocks_out })
}

/// The quadruple on a subgraph of `g`, with X taken from `xs` (parent ids).
/// Returns it with the map from its vertices to the parent's.
pub(crate) fn sub_quadruple(
    g: &PlaneGraph,
    vertices: &[Vertex],
    edges: &HashSet<Edge>,
    u: Vertex,
    v: Vertex,
    xs: &HashSet<Vertex>,
) -> Result<(Quadruple, Vec<Vertex>), CubicError> {
    let (h, map) = g.subgraph(vertices, |a, b| edges.contains(&edge(a, b)))?;
    let local = |x: Vertex| map.binary_search(&x).expect("vertex of the subgraph");
    let (lu, lv) = (local(u), local(v));
    let beta = h.boundary_path(lu, lv, PathKind::Beta).map(|p| p.walk).unwrap_or_default();
    let pos = |x: &Vertex| beta.iter().position(|y| y == x).unwrap_or(usize::MAX);
    let mut x_seq: Vec<Vertex> = map.iter().enumerate().filter(|(_, x)| xs.contains(x)).map(|(i, _)| i).collect();
    x_seq.sort_by_key(pos);
    let q = make_quadruple(h, lu, lv, x_seq)?;
    Ok((q, map))
}

/// One block of a chain decomposition with its map into the parent graph.
#[derive(Clone, Debug)]
pub struct ChainBlock {
    pub quad: Quadruple,
    pub to_parent: Vec<Vertex>,
}

/// The {a,b}-component on the counter-clockwise side of a quadruple: either
/// the boundary path itself, or paths joined by well-formed blocks.
#[derive(Clone, Debug)]
pub enum ChainDecomposition {
    Path(Vec<Vertex>),
    Chain { paths: Vec<Vec<Vertex>>, blocks: Vec<ChainBlock> },
}

pub fn chain_decompose(q: &Quadruple, a: Vertex, b: Vertex) -> Result<ChainDecomposition, CubicError> {
    let g = &q.g;
    let beta = q.beta();
    let (Some(ia), Some(ib)) = (beta.iter().position(|&x| x == a), beta.iter().position(|&x| x == b)) else {
        return Err(CubicError::Structure(format!("{a} and {b} must both lie on the counter-clockwise path")));
    };
    let seps = g.separation_pairs()?;
    if !seps.contains(a, b) {
        return Err(CubicError::Structure(format!("{{{a},{b}}} is not a separation pair")));
    }
    let (a, b, ia, ib) = if ia < ib { (a, b, ia, ib) } else { (b, a, ib, ia) };
    let along = beta[ia..=ib].to_vec();
    if along.len() == 2 {
        return Ok(ChainDecomposition::Path(along));
    }
    let comp = g
        .pair_components(a, b)
        .into_iter()
        .find(|c| !c.trivial && c.vertices.binary_search(&along[1]).is_ok())
        .expect("component holding the path");
    if comp.vertices.len() == along.len() && comp.edges.len() == along.len() - 1 {
        return Ok(ChainDecomposition::Path(along));
    }
    let edges: HashSet<Edge> = comp.edges.iter().copied().collect();
    let raw = raw_chain(g, &edges, a, b)?;
    let xs: HashSet<Vertex> = q.x_seq.iter().copied().collect();
    let mut blocks = Vec::new();
    for rb in &raw.blocks {
        let (quad, to_parent) = sub_quadruple(g, &rb.vertices, &rb.edges, rb.entry, rb.exit, &xs)?;
        blocks.push(ChainBlock { quad, to_parent });
    }
    Ok(ChainDecomposition::Chain { paths: raw.paths, blocks })
}
