//! Exhaustive search for small instances: the best proper good curve of a
//! plane graph, and every plane 3-tree with a given number of internal
//! vertices.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::curves::{validate_curve, GoodCurve, Station};
use crate::plane_graph::{edge, Edge, FaceId, PlaneGraph, Vertex};
use crate::three_tree::Stacker;

pub const DEFAULT_EDGE_LIMIT: usize = 24;
pub const CATALOG_LIMIT: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {got} edges, the search is limited to {limit}")]
    TooLarge { got: usize, limit: usize },
    #[error("catalog limited to {limit} internal vertices, asked for {got}")]
    CatalogTooLarge { got: usize, limit: usize },
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub max_vertices: usize,
    pub witness: GoodCurve,
    /// Search nodes visited.
    pub explored: u64,
    /// The station budget was large enough to cover every good curve.
    pub exhaustive: bool,
}

struct Search<'a> {
    g: &'a PlaneGraph,
    outer: FaceId,
    on_outer: Vec<bool>,
    /// Common points per edge so far.
    tally: Vec<u8>,
    edge_id: std::collections::HashMap<Edge, usize>,
    visited: Vec<bool>,
    stack: Vec<Station>,
    budget: usize,
    used: usize,
    best: usize,
    witness: GoodCurve,
    explored: u64,
}

impl Search<'_> {
    fn eid(&self, a: Vertex, b: Vertex) -> usize {
        self.edge_id[&edge(a, b)]
    }

    /// Vertices that could still be visited, counting the one we stand on.
    fn bound(&self) -> usize {
        let here = match self.stack.last() {
            Some(Station::Vertex(v)) => Some(*v),
            _ => None,
        };
        let mut k = self.visited.iter().filter(|&&x| x).count();
        for v in 0..self.g.vertex_count() {
            if self.visited[v] {
                continue;
            }
            let free = self.g.rotation(v).iter().all(|&w| self.tally[self.eid(v, w)] == 0 || Some(w) == here);
            if free {
                k += 1;
            }
        }
        k
    }

    fn record(&mut self) {
        let count = self.visited.iter().filter(|&&x| x).count();
        if count <= self.best {
            return;
        }
        let c = GoodCurve::open(self.stack.clone());
        if let Ok(rep) = validate_curve(self.g, &c) {
            if rep.good && rep.proper {
                self.best = count;
                self.witness = c;
            }
        }
    }

    fn can_visit(&self, v: Vertex, from: Option<Vertex>) -> bool {
        !self.visited[v] && self.g.rotation(v).iter().all(|&w| self.tally[self.eid(v, w)] == 0 || Some(w) == from)
    }

    fn visit(&mut self, v: Vertex, from: Option<Vertex>) {
        self.visited[v] = true;
        for &w in self.g.rotation(v) {
            if Some(w) != from {
                let e = self.eid(v, w);
                self.tally[e] += 1;
            }
        }
        // The edge walked along is contained: it holds both endpoints, so
        // nothing else may touch it.
        if let Some(u) = from {
            let e = self.eid(v, u);
            self.tally[e] = 2;
        }
        self.stack.push(Station::Vertex(v));
        self.used += 1;
    }

    fn unvisit(&mut self, v: Vertex, from: Option<Vertex>) {
        self.stack.pop();
        self.used -= 1;
        if let Some(u) = from {
            let e = self.eid(v, u);
            self.tally[e] = 1;
        }
        for &w in self.g.rotation(v) {
            if Some(w) != from {
                let e = self.eid(v, w);
                self.tally[e] -= 1;
            }
        }
        self.visited[v] = false;
    }

    fn at_vertex(&mut self, v: Vertex) {
        self.explored += 1;
        if self.on_outer[v] {
            self.record();
        }
        if self.used >= self.budget || self.bound() <= self.best {
            return;
        }
        for &w in self.g.rotation(v).to_vec().iter() {
            if self.can_visit(w, Some(v)) {
                self.visit(w, Some(v));
                self.at_vertex(w);
                self.unvisit(w, Some(v));
            }
        }
        let faces: BTreeSet<FaceId> = self.g.faces_around(v).into_iter().collect();
        for f in faces {
            self.stack.push(Station::Face(f));
            self.in_face(f, None);
            self.stack.pop();
        }
    }

    /// Standing inside face `f`, entered across `came` if any.
    fn in_face(&mut self, f: FaceId, came: Option<Edge>) {
        self.explored += 1;
        if f == self.outer {
            self.record();
        }
        if self.used >= self.budget || self.bound() <= self.best {
            return;
        }
        let walk = self.g.face_walk(f);
        let mut vs: Vec<Vertex> = walk.clone();
        vs.sort_unstable();
        vs.dedup();
        for v in vs {
            if self.can_visit(v, None) {
                self.visit(v, None);
                self.at_vertex(v);
                self.unvisit(v, None);
            }
        }
        let mut es: Vec<Edge> = self.g.face_edges(f);
        es.sort_unstable();
        es.dedup();
        for e in es {
            if Some(e) == came {
                continue;
            }
            let id = self.edge_id[&e];
            if self.tally[id] != 0 {
                continue;
            }
            let (l, r) = self.g.edge_faces(e.0, e.1).expect("edge");
            let other = if l == f { r } else { l };
            self.tally[id] = 1;
            self.used += 1;
            self.stack.push(Station::Crossing(e));
            self.stack.push(Station::Face(other));
            self.in_face(other, Some(e));
            self.stack.pop();
            self.stack.pop();
            self.used -= 1;
            self.tally[id] = 0;
        }
    }
}

/// Most vertices on a proper good curve of `g`, by depth-first search over
/// station sequences that start on the outer face. `budget` caps the number
/// of vertex and crossing stations; `None` means no cap.
pub fn enumerate_curves(g: &PlaneGraph, budget: Option<usize>, edge_limit: usize) -> Result<OracleResult, OracleError> {
    let edges = g.edges();
    if edges.len() > edge_limit {
        return Err(OracleError::TooLarge { got: edges.len(), limit: edge_limit });
    }
    let n = g.vertex_count();
    let cap = g.vertex_count() + edges.len();
    let budget = budget.unwrap_or(cap + 1);
    let outer = g.outer_face();
    let mut on_outer = vec![false; n];
    for v in g.face_walk(outer) {
        on_outer[v] = true;
    }
    let mut s = Search {
        g,
        outer,
        on_outer,
        tally: vec![0; edges.len()],
        edge_id: edges.iter().enumerate().map(|(i, &e)| (e, i)).collect(),
        visited: vec![false; n],
        stack: Vec::new(),
        budget,
        used: 0,
        best: 0,
        witness: GoodCurve::open(vec![Station::Face(outer)]),
        explored: 0,
    };
    for v in 0..n {
        if s.on_outer[v] && s.can_visit(v, None) {
            s.visit(v, None);
            s.at_vertex(v);
            s.unvisit(v, None);
        }
    }
    s.stack.push(Station::Face(outer));
    s.in_face(outer, None);
    Ok(OracleResult { max_vertices: s.best, witness: s.witness, explored: s.explored, exhaustive: budget > cap })
}

/// Canonical text of a plane graph up to orientation-preserving or
/// reversing isomorphisms that keep the outer face.
pub fn canonical_form(g: &PlaneGraph) -> String {
    let outer = g.outer_walk();
    let k = outer.len();
    let mut best: Option<String> = None;
    for mirror in [false, true] {
        for i in 0..k {
            let (a, b) = if mirror { (outer[(i + 1) % k], outer[i]) } else { (outer[i], outer[(i + 1) % k]) };
            let code = bfs_code(g, a, b, mirror);
            if best.as_ref().is_none_or(|s| code < *s) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}

/// Numbers vertices in breadth-first order, reading each rotation from the
/// neighbour that discovered the vertex.
fn bfs_code(g: &PlaneGraph, a: Vertex, b: Vertex, mirror: bool) -> String {
    let n = g.vertex_count();
    let mut num = vec![usize::MAX; n];
    let mut order = vec![a];
    let mut parent = vec![b; n];
    num[a] = 0;
    let mut code = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        let rot = g.rotation(v);
        let d = rot.len();
        let start = rot.iter().position(|&w| w == parent[v]).unwrap_or(0);
        let mut row = Vec::with_capacity(d);
        for j in 0..d {
            let w = if mirror { rot[(start + d - j) % d] } else { rot[(start + j) % d] };
            if num[w] == usize::MAX {
                num[w] = order.len();
                parent[w] = v;
                order.push(w);
            }
            row.push(num[w]);
        }
        code.push(row);
        i += 1;
    }
    format!("{code:?}")
}

/// All plane 3-trees with `m` internal vertices, one per isomorphism class.
pub fn catalog_plane_3trees(m: usize) -> Result<Vec<PlaneGraph>, OracleError> {
    if m > CATALOG_LIMIT {
        return Err(OracleError::CatalogTooLarge { got: m, limit: CATALOG_LIMIT });
    }
    let mut level: Vec<Stacker> = vec![Stacker::new()];
    for _ in 0..m {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for s in &level {
            for i in 0..s.faces.len() {
                let mut t = s.clone();
                t.stack(i);
                if seen.insert(canonical_form(&t.graph())) {
                    next.push(t);
                }
            }
        }
        level = next;
    }
    Ok(level.iter().map(|s| s.graph()).collect())
}
