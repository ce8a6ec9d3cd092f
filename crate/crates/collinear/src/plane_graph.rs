//! Combinatorial plane embeddings.
//!
//! A [`PlaneGraph`] is a rotation system (clockwise neighbor order per vertex)
//! plus a designated outer face. Faces are traced with the rule
//! `next(u->v) = (v, w)` where `w` follows `u` in the clockwise rotation of
//! `v`. Every face lies to the left of its darts, so inner faces come out
//! counter-clockwise and the outer walk goes clockwise around the graph.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub type Vertex = usize;
pub type FaceId = usize;
pub type Edge = (Vertex, Vertex);

/// Normalized undirected edge.
pub fn edge(a: Vertex, b: Vertex) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("multi-edge {0}-{1}")]
    MultiEdge(Vertex, Vertex),
    #[error("rotation system is not symmetric at edge {0}-{1}")]
    Asymmetric(Vertex, Vertex),
    #[error("vertex {0} out of range")]
    BadVertex(Vertex),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("euler check failed: V={v} E={e} F={f}")]
    Euler { v: usize, e: usize, f: usize },
    #[error("outer walk is not a traced face")]
    OuterNotFace,
    #[error("graph has no edges")]
    Empty,
    #[error("graph is not biconnected")]
    NotBiconnected,
    #[error("vertex {0} is not on the outer face")]
    NotOnOuterFace(Vertex),
    #[error("outer face boundary is not a simple cycle")]
    OuterNotSimple,
    #[error("not a subgraph: {0}")]
    NotSubgraph(String),
}

#[derive(Clone, Debug)]
pub struct PlaneGraph {
    rot: Vec<Vec<Vertex>>,
    offset: Vec<usize>,
    dart_head: Vec<Vertex>,
    dart_tail: Vec<Vertex>,
    dart_rev: Vec<usize>,
    dart_face: Vec<FaceId>,
    faces: Vec<Vec<usize>>,
    outer: FaceId,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rot == other.rot && self.outer == other.outer
    }
}
impl Eq for PlaneGraph {}

impl PlaneGraph {
    /// Builds a plane graph from clockwise rotations and an outer boundary
    /// walk given as a cyclic vertex sequence.
    pub fn new(rot: Vec<Vec<Vertex>>, outer_walk: &[Vertex]) -> Result<Self, GraphError> {
        let mut g = Self::build(rot)?;
        g.outer = g.face_matching_walk(outer_walk).ok_or(GraphError::OuterNotFace)?;
        Ok(g)
    }

    /// Builds a plane graph whose outer face is the face left of dart `a->b`.
    pub fn with_outer_dart(rot: Vec<Vec<Vertex>>, a: Vertex, b: Vertex) -> Result<Self, GraphError> {
        let mut g = Self::build(rot)?;
        let d = g.dart(a, b).ok_or(GraphError::OuterNotFace)?;
        g.outer = g.dart_face[d];
        Ok(g)
    }

    fn build(rot: Vec<Vec<Vertex>>) -> Result<Self, GraphError> {
        let n = rot.len();
        let mut offset = Vec::with_capacity(n + 1);
        let mut total = 0;
        for r in &rot {
            offset.push(total);
            total += r.len();
        }
        offset.push(total);
        if total == 0 {
            return Err(GraphError::Empty);
        }
        let mut pos: HashMap<(Vertex, Vertex), usize> = HashMap::with_capacity(total);
        let mut dart_head = vec![0; total];
        let mut dart_tail = vec![0; total];
        for (v, r) in rot.iter().enumerate() {
            for (i, &w) in r.iter().enumerate() {
                if w >= n {
                    return Err(GraphError::BadVertex(w));
                }
                if w == v {
                    return Err(GraphError::Loop(v));
                }
                if pos.insert((v, w), offset[v] + i).is_some() {
                    return Err(GraphError::MultiEdge(v, w));
                }
                dart_tail[offset[v] + i] = v;
                dart_head[offset[v] + i] = w;
            }
        }
        let mut dart_rev = vec![0; total];
        for d in 0..total {
            let (v, w) = (dart_tail[d], dart_head[d]);
            dart_rev[d] = *pos.get(&(w, v)).ok_or(GraphError::Asymmetric(v, w))?;
        }
        let mut g = PlaneGraph {
            rot,
            offset,
            dart_head,
            dart_tail,
            dart_rev,
            dart_face: vec![usize::MAX; total],
            faces: Vec::new(),
            outer: 0,
        };
        for d in 0..total {
            if g.dart_face[d] != usize::MAX {
                continue;
            }
            let f = g.faces.len();
            let mut walk = Vec::new();
            let mut e = d;
            while g.dart_face[e] == usize::MAX {
                g.dart_face[e] = f;
                walk.push(e);
                e = g.next_dart(e);
            }
            g.faces.push(walk);
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        let (v, e, f) = (g.vertex_count(), g.edge_count(), g.faces.len());
        if v + f != e + 2 {
            return Err(GraphError::Euler { v, e, f });
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_head.len() / 2
    }

    pub fn dart_count(&self) -> usize {
        self.dart_head.len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rot[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rot
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rot[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.rot.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    pub fn dart(&self, a: Vertex, b: Vertex) -> Option<usize> {
        if a >= self.rot.len() {
            return None;
        }
        self.rot[a].iter().position(|&w| w == b).map(|i| self.offset[a] + i)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.dart(a, b).is_some()
    }

    pub fn tail(&self, d: usize) -> Vertex {
        self.dart_tail[d]
    }

    pub fn head(&self, d: usize) -> Vertex {
        self.dart_head[d]
    }

    pub fn rev(&self, d: usize) -> usize {
        self.dart_rev[d]
    }

    /// Next dart along the face to the left of `d`.
    pub fn next_dart(&self, d: usize) -> usize {
        let r = self.dart_rev[d];
        let v = self.dart_head[d];
        let deg = self.rot[v].len();
        self.offset[v] + (r - self.offset[v] + 1) % deg
    }

    /// Previous dart along the face to the left of `d`.
    pub fn prev_dart(&self, d: usize) -> usize {
        let u = self.dart_tail[d];
        let deg = self.rot[u].len();
        let i = d - self.offset[u];
        self.dart_rev[self.offset[u] + (i + deg - 1) % deg]
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (v, r) in self.rot.iter().enumerate() {
            for &w in r {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn outer_face(&self) -> FaceId {
        self.outer
    }

    /// Darts of face `f` in walk order.
    pub fn face_darts(&self, f: FaceId) -> &[usize] {
        &self.faces[f]
    }

    /// Vertex walk of face `f` (tails of its darts), starting at the
    /// lexicographically smallest rotation.
    pub fn face_walk(&self, f: FaceId) -> Vec<Vertex> {
        let raw: Vec<Vertex> = self.faces[f].iter().map(|&d| self.dart_tail[d]).collect();
        canonical_rotation(&raw)
    }

    pub fn outer_walk(&self) -> Vec<Vertex> {
        self.face_walk(self.outer)
    }

    pub fn face_key(&self, f: FaceId) -> String {
        walk_key(&self.face_walk(f))
    }

    pub fn face_by_key(&self, key: &str) -> Option<FaceId> {
        let walk = parse_walk_key(key)?;
        self.face_matching_walk(&walk)
    }

    /// Face whose directed boundary walk equals `walk` up to rotation.
    pub fn face_matching_walk(&self, walk: &[Vertex]) -> Option<FaceId> {
        if walk.len() < 2 {
            return None;
        }
        let d = self.dart(walk[0], walk[1])?;
        let f = self.dart_face[d];
        let darts = &self.faces[f];
        if darts.len() != walk.len() {
            return None;
        }
        let start = darts.iter().position(|&e| e == d)?;
        for i in 0..walk.len() {
            let e = darts[(start + i) % darts.len()];
            if self.dart_tail[e] != walk[i] || self.dart_head[e] != walk[(i + 1) % walk.len()] {
                return None;
            }
        }
        Some(f)
    }

    /// Face left of dart `a->b`.
    pub fn face_left_of(&self, a: Vertex, b: Vertex) -> Option<FaceId> {
        self.dart(a, b).map(|d| self.dart_face[d])
    }

    pub fn dart_face(&self, d: usize) -> FaceId {
        self.dart_face[d]
    }

    /// The two faces on either side of an edge (left of a->b, left of b->a).
    pub fn edge_faces(&self, a: Vertex, b: Vertex) -> Option<(FaceId, FaceId)> {
        let d = self.dart(a, b)?;
        Some((self.dart_face[d], self.dart_face[self.dart_rev[d]]))
    }

    /// Faces incident to `v`, in clockwise order of the darts leaving `v`.
    pub fn faces_around(&self, v: Vertex) -> Vec<FaceId> {
        (self.offset[v]..self.offset[v + 1]).map(|d| self.dart_face[d]).collect()
    }

    pub fn face_vertices(&self, f: FaceId) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.faces[f].iter().map(|&d| self.dart_tail[d]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn face_edges(&self, f: FaceId) -> Vec<Edge> {
        let mut es: Vec<Edge> = self.faces[f]
            .iter()
            .map(|&d| edge(self.dart_tail[d], self.dart_head[d]))
            .collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// Dual adjacency: for every face, the neighboring faces with the edge
    /// separating them (one arc per primal edge, loops included).
    pub fn dual(&self) -> Vec<Vec<(FaceId, Edge)>> {
        let mut adj = vec![Vec::new(); self.faces.len()];
        for (f, darts) in self.faces.iter().enumerate() {
            for &d in darts {
                let other = self.dart_face[self.dart_rev[d]];
                adj[f].push((other, edge(self.dart_tail[d], self.dart_head[d])));
            }
        }
        adj
    }

    pub fn is_outer_vertex(&self, v: Vertex) -> bool {
        self.faces[self.outer].iter().any(|&d| self.dart_tail[d] == v)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.rot.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.rot[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Same embedding with a different outer face.
    pub fn with_outer_face(&self, f: FaceId) -> PlaneGraph {
        let mut g = self.clone();
        g.outer = f;
        g
    }

    /// Outer walk from `u` to `v`: τ follows the traced (clockwise) outer
    /// walk, β goes the other way.
    pub fn boundary_path(&self, u: Vertex, v: Vertex, kind: PathKind) -> Result<BoundaryPath, GraphError> {
        let walk = self.outer_walk();
        let mut seen = HashSet::new();
        if !walk.iter().all(|x| seen.insert(*x)) || walk.len() < 3 {
            return Err(GraphError::OuterNotSimple);
        }
        let iu = walk.iter().position(|&x| x == u).ok_or(GraphError::NotOnOuterFace(u))?;
        let iv = walk.iter().position(|&x| x == v).ok_or(GraphError::NotOnOuterFace(v))?;
        let k = walk.len();
        let mut out = vec![u];
        let mut i = iu;
        while i != iv {
            i = match kind {
                PathKind::Tau => (i + 1) % k,
                PathKind::Beta => (i + k - 1) % k,
            };
            out.push(walk[i]);
        }
        Ok(BoundaryPath { kind, u, v, walk: out })
    }

    pub fn cut_vertices(&self) -> Vec<Vertex> {
        articulation_points(&self.rot, None)
    }

    pub fn is_biconnected(&self) -> bool {
        self.vertex_count() >= 3 && self.cut_vertices().is_empty()
    }

    /// All separation pairs with their {a,b}-components.
    pub fn separation_pairs(&self) -> Result<SeparationStructure, GraphError> {
        if !self.is_biconnected() {
            return Err(GraphError::NotBiconnected);
        }
        let n = self.vertex_count();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in articulation_points(&self.rot, Some(a)) {
                if a < b {
                    pairs.push((a, b));
                }
            }
        }
        pairs.sort_unstable();
        Ok(SeparationStructure { cut_vertices: Vec::new(), separation_pairs: pairs })
    }

    /// The {a,b}-components: one per connected component of G-{a,b}
    /// (non-trivial) plus the edge (a,b) if present (trivial).
    pub fn pair_components(&self, a: Vertex, b: Vertex) -> Vec<PairComponent> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if s == a || s == b || comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut verts = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < verts.len() {
                let x = verts[i];
                i += 1;
                for &y in &self.rot[x] {
                    if y != a && y != b && comp[y] == usize::MAX {
                        comp[y] = id;
                        verts.push(y);
                    }
                }
            }
            let set: HashSet<Vertex> = verts.iter().copied().collect();
            let mut edges = Vec::new();
            for &x in &verts {
                for &y in &self.rot[x] {
                    if set.contains(&y) {
                        if x < y {
                            edges.push((x, y));
                        }
                    } else {
                        edges.push(edge(x, y));
                    }
                }
            }
            edges.sort_unstable();
            let mut vertices = verts;
            vertices.push(a);
            vertices.push(b);
            vertices.sort_unstable();
            vertices.dedup();
            out.push(PairComponent { vertices, edges, trivial: false });
        }
        if self.has_edge(a, b) {
            let mut vertices = vec![a, b];
            vertices.sort_unstable();
            out.push(PairComponent { vertices, edges: vec![edge(a, b)], trivial: true });
        }
        out
    }

    /// H-bridges for the subgraph with vertex set `hv` and edge set `he`.
    pub fn h_bridges(&self, hv: &[Vertex], he: &[Edge]) -> Result<Vec<Bridge>, GraphError> {
        let n = self.vertex_count();
        let mut in_h = vec![false; n];
        for &v in hv {
            if v >= n {
                return Err(GraphError::NotSubgraph(format!("vertex {v}")));
            }
            in_h[v] = true;
        }
        let hset: HashSet<Edge> = he.iter().map(|&(a, b)| edge(a, b)).collect();
        for &(a, b) in &hset {
            if !self.has_edge(a, b) || !in_h[a] || !in_h[b] {
                return Err(GraphError::NotSubgraph(format!("edge {a}-{b}")));
            }
        }
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            if in_h[a] && in_h[b] && !hset.contains(&(a, b)) {
                out.push(Bridge { inner: Vec::new(), edges: vec![(a, b)], attachments: vec![a, b] });
            }
        }
        let mut seen = vec![false; n];
        for s in 0..n {
            if in_h[s] || seen[s] {
                continue;
            }
            let mut inner = vec![s];
            seen[s] = true;
            let mut att = HashSet::new();
            let mut edges = Vec::new();
            let mut i = 0;
            while i < inner.len() {
                let x = inner[i];
                i += 1;
                for &y in &self.rot[x] {
                    if in_h[y] {
                        att.insert(y);
                        edges.push(edge(x, y));
                    } else {
                        if x < y {
                            edges.push((x, y));
                        }
                        if !seen[y] {
                            seen[y] = true;
                            inner.push(y);
                        }
                    }
                }
            }
            inner.sort_unstable();
            edges.sort_unstable();
            let mut attachments: Vec<Vertex> = att.into_iter().collect();
            attachments.sort_unstable();
            out.push(Bridge { inner, edges, attachments });
        }
        Ok(out)
    }

    /// Subgraph keeping the listed vertices and the edges accepted by
    /// `keep_edge` (among edges with both ends kept). The embedding is
    /// inherited by deletion; the outer face is the face containing the
    /// parent's outer region. Returns the graph and the map new -> old.
    pub fn subgraph(
        &self,
        vertices: &[Vertex],
        mut keep_edge: impl FnMut(Vertex, Vertex) -> bool,
    ) -> Result<(PlaneGraph, Vec<Vertex>), GraphError> {
        let n = self.vertex_count();
        let mut new_id = vec![usize::MAX; n];
        let mut old: Vec<Vertex> = vertices.to_vec();
        old.sort_unstable();
        old.dedup();
        for (i, &v) in old.iter().enumerate() {
            if v >= n {
                return Err(GraphError::BadVertex(v));
            }
            new_id[v] = i;
        }
        let mut kept = vec![false; self.dart_count()];
        for d in 0..self.dart_count() {
            let (a, b) = (self.dart_tail[d], self.dart_head[d]);
            if a < b && new_id[a] != usize::MAX && new_id[b] != usize::MAX && keep_edge(a, b) {
                kept[d] = true;
                kept[self.dart_rev[d]] = true;
            }
        }
        // Faces merge across deleted edges.
        let mut uf = UnionFind::new(self.faces.len());
        for d in 0..self.dart_count() {
            if !kept[d] {
                uf.union(self.dart_face[d], self.dart_face[self.dart_rev[d]]);
            }
        }
        let rot: Vec<Vec<Vertex>> = old
            .iter()
            .map(|&v| {
                (self.offset[v]..self.offset[v + 1])
                    .filter(|&d| kept[d])
                    .map(|d| new_id[self.dart_head[d]])
                    .collect()
            })
            .collect();
        let outer_class = uf.find(self.outer);
        let anchor = (0..self.dart_count()).find(|&d| kept[d] && uf.find(self.dart_face[d]) == outer_class);
        let Some(d) = anchor else {
            return Err(GraphError::Empty);
        };
        let g = PlaneGraph::with_outer_dart(rot, new_id[self.dart_tail[d]], new_id[self.dart_head[d]])?;
        Ok((g, old))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for PlaneGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "planegraph {}", self.vertex_count())?;
        for (v, r) in self.rot.iter().enumerate() {
            write!(f, "rot {v}:")?;
            for w in r {
                write!(f, " {w}")?;
            }
            writeln!(f)?;
        }
        write!(f, "outer:")?;
        for v in self.outer_walk() {
            write!(f, " {v}")?;
        }
        writeln!(f)
    }
}

impl FromStr for PlaneGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_plane_graph(s)
    }
}

pub fn parse_plane_graph(text: &str) -> Result<PlaneGraph, GraphError> {
    let syntax = |line: usize, msg: &str| GraphError::Syntax { line, msg: msg.to_string() };
    let mut n: Option<usize> = None;
    let mut rot: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut outer: Option<Vec<Vertex>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if n.is_none() {
            let rest = line.strip_prefix("planegraph").ok_or_else(|| syntax(line_no, "expected header"))?;
            let k: usize = rest.trim().parse().map_err(|_| syntax(line_no, "bad vertex count"))?;
            n = Some(k);
            rot = vec![None; k];
            continue;
        }
        if let Some(rest) = line.strip_prefix("rot") {
            let (head, tail) = rest.split_once(':').ok_or_else(|| syntax(line_no, "missing ':'"))?;
            let v: usize = head.trim().parse().map_err(|_| syntax(line_no, "bad vertex"))?;
            if v >= rot.len() {
                return Err(syntax(line_no, "vertex out of range"));
            }
            if rot[v].is_some() {
                return Err(syntax(line_no, "duplicate rotation"));
            }
            rot[v] = Some(parse_ids(tail).ok_or_else(|| syntax(line_no, "bad neighbor list"))?);
        } else if let Some(rest) = line.strip_prefix("outer:") {
            if outer.is_some() {
                return Err(syntax(line_no, "duplicate outer walk"));
            }
            outer = Some(parse_ids(rest).ok_or_else(|| syntax(line_no, "bad outer walk"))?);
        } else {
            return Err(syntax(line_no, "unknown line"));
        }
    }
    if n.is_none() {
        return Err(syntax(0, "missing header"));
    }
    let rot: Vec<Vec<Vertex>> = rot
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(0, &format!("missing rotation for {v}"))))
        .collect::<Result<_, _>>()?;
    let outer = outer.ok_or_else(|| syntax(0, "missing outer walk"))?;
    PlaneGraph::new(rot, &outer)
}

fn parse_ids(s: &str) -> Option<Vec<usize>> {
    s.split_whitespace().map(|t| t.parse().ok()).collect()
}

/// Smallest rotation of a cyclic sequence.
pub fn canonical_rotation(seq: &[Vertex]) -> Vec<Vertex> {
    if seq.is_empty() {
        return Vec::new();
    }
    let k = seq.len();
    let best = (0..k)
        .min_by(|&i, &j| {
            let a = seq[i..].iter().chain(&seq[..i]);
            let b = seq[j..].iter().chain(&seq[..j]);
            a.cmp(b)
        })
        .unwrap_or(0);
    seq[best..].iter().chain(&seq[..best]).copied().collect()
}

pub fn walk_key(walk: &[Vertex]) -> String {
    walk.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("-")
}

pub fn parse_walk_key(key: &str) -> Option<Vec<Vertex>> {
    key.split('-').map(|t| t.trim().parse().ok()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathKind {
    Tau,
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryPath {
    pub kind: PathKind,
    pub u: Vertex,
    pub v: Vertex,
    pub walk: Vec<Vertex>,
}

impl BoundaryPath {
    pub fn edges(&self) -> Vec<Edge> {
        self.walk.windows(2).map(|w| edge(w[0], w[1])).collect()
    }

    pub fn interior(&self) -> &[Vertex] {
        if self.walk.len() <= 2 {
            &[]
        } else {
            &self.walk[1..self.walk.len() - 1]
        }
    }

    pub fn position(&self, x: Vertex) -> Option<usize> {
        self.walk.iter().position(|&y| y == x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationStructure {
    pub cut_vertices: Vec<Vertex>,
    pub separation_pairs: Vec<(Vertex, Vertex)>,
}

impl SeparationStructure {
    pub fn is_triconnected(&self) -> bool {
        self.separation_pairs.is_empty()
    }

    pub fn contains(&self, a: Vertex, b: Vertex) -> bool {
        self.separation_pairs.binary_search(&edge(a, b)).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairComponent {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bridge {
    /// Vertices of the bridge not in H (empty for a trivial bridge).
    pub inner: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub attachments: Vec<Vertex>,
}

impl Bridge {
    pub fn is_trivial(&self) -> bool {
        self.inner.is_empty()
    }
}

/// Articulation points of the graph with `skip` removed.
fn articulation_points(adj: &[Vec<Vertex>], skip: Option<Vertex>) -> Vec<Vertex> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for root in 0..n {
        if Some(root) == skip || disc[root] != usize::MAX {
            continue;
        }
        // Iterative DFS: (vertex, parent, next neighbor index).
        let mut stack: Vec<(Vertex, usize, usize)> = vec![(root, usize::MAX, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        while let Some(&mut (v, parent, ref mut idx)) = stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if Some(w) == skip || w == parent {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    // A disconnected remainder means every remaining vertex pairs with `skip`
    // in a trivial sense; callers only use this on biconnected graphs, where
    // G - skip stays connected.
    (0..n).filter(|&v| is_cut[v]).collect()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Breadth-first distances from `src` in an adjacency list.
pub fn bfs(adj: &[Vec<Vertex>], src: Vertex) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut q = VecDeque::new();
    dist[src] = 0;
    q.push_back(src);
    while let Some(v) = q.pop_front() {
        for &w in &adj[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// Standard named graphs used in tests and examples.
pub mod samples {
    use super::*;

    pub fn triangle() -> PlaneGraph {
        PlaneGraph::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]], &[0, 1, 2]).expect("triangle")
    }

    /// K4 with outer face (0,1,2) and center 3.
    pub fn k4() -> PlaneGraph {
        PlaneGraph::new(vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]], &[0, 1, 2])
            .expect("k4")
    }

    /// Cycle 0..n-1 with the outer walk (0,1,...,n-1).
    pub fn cycle(n: usize) -> PlaneGraph {
        let rot = (0..n).map(|v| vec![(v + n - 1) % n, (v + 1) % n]).collect();
        let outer: Vec<Vertex> = (0..n).collect();
        PlaneGraph::new(rot, &outer).expect("cycle")
    }

    /// Octahedron: outer triangle (0,1,2), inner triangle (3,4,5) with 3
    /// opposite 2, 4 opposite 0, 5 opposite 1.
    pub fn octahedron() -> PlaneGraph {
        let pts = [(-4.0, -2.0), (0.0, 4.0), (4.0, -2.0), (-1.0, 0.5), (1.0, 0.5), (0.0, -1.0)];
        let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (0, 5), (1, 3), (1, 4), (2, 4), (2, 5)];
        from_points(&pts, &edges, &[0, 1, 2])
    }

    /// Triangular prism: outer (0,1,2), inner (3,4,5), spokes i - i+3.
    pub fn prism() -> PlaneGraph {
        let pts = [(-4.0, -2.0), (0.0, 4.0), (4.0, -2.0), (-1.5, -0.7), (0.0, 1.5), (1.5, -0.7)];
        let edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)];
        from_points(&pts, &edges, &[0, 1, 2])
    }

    /// Cube: outer (0,1,2,3), inner (4,5,6,7), spokes i - i+4.
    pub fn cube() -> PlaneGraph {
        let pts = [(-3.0, -3.0), (-3.0, 3.0), (3.0, 3.0), (3.0, -3.0), (-1.0, -1.0), (-1.0, 1.0), (1.0, 1.0), (1.0, -1.0)];
        let mut edges = Vec::new();
        for i in 0..4 {
            edges.push((i, (i + 1) % 4));
            edges.push((4 + i, 4 + (i + 1) % 4));
            edges.push((i, i + 4));
        }
        from_points(&pts, &edges, &[0, 1, 2, 3])
    }

    /// Plane graph from a straight-line drawing given in floating point.
    pub fn from_points(pts: &[(f64, f64)], edges: &[Edge], outer: &[Vertex]) -> PlaneGraph {
        let mut adj = vec![Vec::new(); pts.len()];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        PlaneGraph::new(rotation_from_points(&adj, pts), outer).expect("drawing is planar")
    }

    /// Two triangles (a,b,c) and (a,b,d) glued along edge a-b = 0-1.
    pub fn diamond() -> PlaneGraph {
        // 0 left, 1 right, 2 top, 3 bottom.
        let rot = vec![vec![2, 1, 3], vec![3, 0, 2], vec![0, 1], vec![1, 0]];
        PlaneGraph::new(rot, &[0, 2, 1, 3]).expect("diamond")
    }

    /// g x g grid, vertex (i,j) = i*g + j with i the column and j the row,
    /// drawn with y growing with j.
    pub fn grid(g: usize) -> PlaneGraph {
        let id = |i: usize, j: usize| i * g + j;
        let mut rot = vec![Vec::new(); g * g];
        for i in 0..g {
            for j in 0..g {
                // Clockwise starting from up: up, right, down, left.
                let mut r = Vec::new();
                if j + 1 < g {
                    r.push(id(i, j + 1));
                }
                if i + 1 < g {
                    r.push(id(i + 1, j));
                }
                if j > 0 {
                    r.push(id(i, j - 1));
                }
                if i > 0 {
                    r.push(id(i - 1, j));
                }
                rot[id(i, j)] = r;
            }
        }
        // Outer face clockwise: up the left column, across the top, down the
        // right column, back along the bottom.
        let mut outer = Vec::new();
        for j in 0..g - 1 {
            outer.push(id(0, j));
        }
        for i in 0..g - 1 {
            outer.push(id(i, g - 1));
        }
        for j in (1..g).rev() {
            outer.push(id(g - 1, j));
        }
        for i in (1..g).rev() {
            outer.push(id(i, 0));
        }
        PlaneGraph::new(rot, &outer).expect("grid")
    }

    /// Dodecahedron built from its standard Schlegel diagram: outer pentagon
    /// 0..4, middle ring 5..14, inner pentagon 15..19.
    pub fn dodecahedron() -> PlaneGraph {
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); 20];
        let add = |a: usize, b: usize, adj: &mut Vec<Vec<Vertex>>| {
            adj[a].push(b);
            adj[b].push(a);
        };
        for i in 0..5 {
            add(i, (i + 1) % 5, &mut adj);
            add(i, 5 + 2 * i, &mut adj);
            add(5 + 2 * i, 5 + 2 * i + 1, &mut adj);
            add(5 + 2 * i + 1, 5 + (2 * i + 2) % 10, &mut adj);
            add(5 + 2 * i + 1, 15 + i, &mut adj);
            add(15 + i, 15 + (i + 1) % 5, &mut adj);
        }
        // Coordinates for a clockwise rotation: outer ring radius 3, middle 2,
        // inner 1; angles going clockwise.
        let mut pts = vec![(0.0f64, 0.0f64); 20];
        let ang = |k: f64, n: f64| -2.0 * std::f64::consts::PI * k / n + std::f64::consts::FRAC_PI_2;
        for i in 0..5 {
            let a = ang(i as f64, 5.0);
            pts[i] = (3.0 * a.cos(), 3.0 * a.sin());
            let b = ang(i as f64 + 0.5, 5.0);
            pts[15 + i] = (1.0 * b.cos(), 1.0 * b.sin());
        }
        for k in 0..10 {
            let a = ang(k as f64 / 2.0, 5.0);
            pts[5 + k] = (2.0 * a.cos(), 2.0 * a.sin());
        }
        let rot = rotation_from_points(&adj, &pts);
        PlaneGraph::new(rot, &[0, 1, 2, 3, 4]).expect("dodecahedron")
    }

    /// Clockwise rotation system from floating-point positions.
    pub fn rotation_from_points(adj: &[Vec<Vertex>], pts: &[(f64, f64)]) -> Vec<Vec<Vertex>> {
        adj.iter()
            .enumerate()
            .map(|(v, nb)| {
                let mut r = nb.clone();
                r.sort_by(|&a, &b| {
                    let ta = (pts[a].1 - pts[v].1).atan2(pts[a].0 - pts[v].0);
                    let tb = (pts[b].1 - pts[v].1).atan2(pts[b].0 - pts[v].0);
                    tb.partial_cmp(&ta).unwrap_or(std::cmp::Ordering::Equal)
                });
                r
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;

    #[test]
    fn k4_faces() {
        let g = k4();
        assert_eq!(g.face_count(), 4);
        assert_eq!(g.outer_walk(), vec![0, 1, 2]);
        for f in 0..4 {
            assert_eq!(g.face_darts(f).len(), 3);
        }
    }

    #[test]
    fn sample_faces() {
        assert_eq!(cycle(4).face_count(), 2);
        assert_eq!(octahedron().face_count(), 8);
        let q = cube();
        assert_eq!(q.face_count(), 6);
        assert!((0..6).all(|f| q.face_darts(f).len() == 4));
        assert_eq!(prism().face_count(), 5);
        assert_eq!(dodecahedron().face_count(), 12);
        assert_eq!(grid(4).face_count(), 10);
    }

    #[test]
    fn mirrored_rotation_rejected() {
        let g = k4();
        let mirrored: Vec<Vec<Vertex>> = g.rotations().iter().map(|r| r.iter().rev().copied().collect()).collect();
        assert_eq!(PlaneGraph::new(mirrored, &[0, 1, 2]), Err(GraphError::OuterNotFace));
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(parse_plane_graph("planegraph 2\nrot 0: 1 1\nrot 1: 0\nouter: 0 1"), Err(GraphError::MultiEdge(..))));
        assert!(matches!(parse_plane_graph("planegraph 2\nrot 0: 0\nrot 1:\nouter: 0"), Err(GraphError::Loop(0))));
        assert!(matches!(parse_plane_graph("rot 0: 1"), Err(GraphError::Syntax { .. })));
        // K4 with two neighbors swapped at vertex 3 is not an embedding of genus 0.
        let bad = "planegraph 4\nrot 0: 1 3 2\nrot 1: 2 3 0\nrot 2: 0 3 1\nrot 3: 0 2 1\nouter: 0 1 2\n";
        assert!(matches!(parse_plane_graph(bad), Err(GraphError::Euler { .. })));
    }

    #[test]
    fn round_trip() {
        for g in [k4(), cycle(5), octahedron(), cube(), grid(5), dodecahedron()] {
            let text = g.to_text();
            let h: PlaneGraph = text.parse().unwrap();
            assert_eq!(g, h);
            assert_eq!(text, h.to_text());
        }
    }

    #[test]
    fn comments_ignored() {
        let text = "# k4\nplanegraph 4\nrot 0: 1 3 2 # hub\nrot 1: 2 3 0\nrot 2: 0 3 1\nrot 3: 0 1 2\n\nouter: 1 2 0\n";
        assert_eq!(parse_plane_graph(text).unwrap(), k4());
    }

    #[test]
    fn boundary_paths() {
        let c = cycle(4);
        assert_eq!(c.boundary_path(0, 2, PathKind::Tau).unwrap().walk, vec![0, 1, 2]);
        assert_eq!(c.boundary_path(0, 2, PathKind::Beta).unwrap().walk, vec![0, 3, 2]);
        assert_eq!(prism().boundary_path(0, 1, PathKind::Tau).unwrap().walk, vec![0, 1]);
        assert_eq!(k4().boundary_path(0, 3, PathKind::Tau), Err(GraphError::NotOnOuterFace(3)));
    }

    #[test]
    fn separation() {
        assert!(k4().separation_pairs().unwrap().is_triconnected());
        let c6 = cycle(6).separation_pairs().unwrap();
        assert_eq!(c6.separation_pairs.len(), 9);
        assert!(c6.contains(0, 2) && !c6.contains(0, 1));
        let d = diamond();
        let s = d.separation_pairs().unwrap();
        assert_eq!(s.separation_pairs, vec![(0, 1)]);
        let comps = d.pair_components(0, 1);
        assert_eq!(comps.iter().filter(|c| !c.trivial).count(), 2);
        assert_eq!(comps.iter().filter(|c| c.trivial).count(), 1);
        assert_eq!(samples::diamond().separation_pairs().is_ok(), true);
        let path = PlaneGraph::new(vec![vec![1], vec![0, 2], vec![1]], &[0, 1, 2, 1]).unwrap();
        assert_eq!(path.separation_pairs(), Err(GraphError::NotBiconnected));
    }

    #[test]
    fn bridges() {
        let b = k4().h_bridges(&[0, 1, 2], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].attachments, vec![0, 1, 2]);
        let b = cycle(4).h_bridges(&[0, 1], &[(0, 1)]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].attachments, vec![0, 1]);
        let b = diamond().h_bridges(&[0, 1, 2], &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].inner, vec![3]);
        assert!(cycle(4).h_bridges(&[0, 2], &[(0, 2)]).is_err());
    }

    #[test]
    fn subgraph_outer_face() {
        // Deleting the center of K4 leaves a triangle whose outer face is the
        // old outer face.
        let (t, map) = k4().subgraph(&[0, 1, 2], |_, _| true).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(t.outer_walk(), vec![0, 1, 2]);
        // Deleting an outer vertex: outer face is the merged region.
        let (t, map) = k4().subgraph(&[0, 1, 3], |_, _| true).unwrap();
        assert_eq!(map, vec![0, 1, 3]);
        assert_eq!(t.face_count(), 2);
        assert_eq!(t.outer_walk(), vec![0, 1, 2]);
    }
}
