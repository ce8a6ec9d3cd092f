//! Grid-minor models: for every position of a g x g grid, a connected set of
//! vertices, plus one edge of the graph for every grid edge.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::plane_graph::{edge, samples, Edge, PlaneGraph, Vertex};

/// Grid position, 1-based.
pub type Pos = (usize, usize);

/// Which of the two reference edges at a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RefKind {
    /// Joins `(i, j)` and `(i + 1, j)`.
    H,
    /// Joins `(i, j)` and `(i, j + 1)`.
    V,
}

/// A reference edge named by its kind and lower position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefPoint {
    pub kind: RefKind,
    pub i: usize,
    pub j: usize,
}

impl RefPoint {
    pub fn h(i: usize, j: usize) -> Self {
        RefPoint { kind: RefKind::H, i, j }
    }

    pub fn v(i: usize, j: usize) -> Self {
        RefPoint { kind: RefKind::V, i, j }
    }

    /// The two grid positions it joins.
    pub fn ends(&self) -> (Pos, Pos) {
        match self.kind {
            RefKind::H => ((self.i, self.j), (self.i + 1, self.j)),
            RefKind::V => ((self.i, self.j), (self.i, self.j + 1)),
        }
    }

    /// The cells on its two sides; either may lie outside the cell range.
    pub fn cells(&self) -> [(isize, isize); 2] {
        let (i, j) = (self.i as isize, self.j as isize);
        match self.kind {
            RefKind::H => [(i, j - 1), (i, j)],
            RefKind::V => [(i - 1, j), (i, j)],
        }
    }
}

impl std::fmt::Display for RefPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let k = match self.kind {
            RefKind::H => "refh",
            RefKind::V => "refv",
        };
        write!(f, "{k} {} {}", self.i, self.j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GridMinorModel {
    pub g: usize,
    pub branch_sets: BTreeMap<Pos, Vec<Vertex>>,
    /// Endpoints in `(i, j)` and `(i + 1, j)`, in that order.
    pub refs_h: BTreeMap<Pos, (Vertex, Vertex)>,
    /// Endpoints in `(i, j)` and `(i, j + 1)`, in that order.
    pub refs_v: BTreeMap<Pos, (Vertex, Vertex)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelIssue {
    #[error("grid side {0} is below 2")]
    TooSmall(usize),
    #[error("branch set {0:?} is missing or empty")]
    MissingBranch(Pos),
    #[error("branch set {0:?} names vertex {1} outside the graph")]
    BadVertex(Pos, Vertex),
    #[error("vertex {v} is in branch sets {a:?} and {b:?}")]
    Overlap { v: Vertex, a: Pos, b: Pos },
    #[error("branch set {0:?} is not connected")]
    Disconnected(Pos),
    #[error("{0} is missing")]
    MissingRef(RefPoint),
    #[error("{0}: {1}-{2} is not an edge")]
    RefNotEdge(RefPoint, Vertex, Vertex),
    #[error("{0}: {1}-{2} does not join branch sets {3:?} and {4:?}")]
    RefWrongEnds(RefPoint, Vertex, Vertex, Pos, Pos),
    #[error("edge {1:?} leaves interior branch set {0:?} for a non-neighbouring one")]
    Locality(Pos, Edge),
    #[error("position {0:?} is outside the grid")]
    OutOfRange(Pos),
}

#[derive(Clone, Debug, Default)]
pub struct ModelReport {
    pub issues: Vec<ModelIssue>,
}

impl ModelReport {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("grid model line {line}: {msg}")]
pub struct ModelParseError {
    pub line: usize,
    pub msg: String,
}

impl GridMinorModel {
    pub fn reference(&self, r: RefPoint) -> Option<Edge> {
        let m = match r.kind {
            RefKind::H => &self.refs_h,
            RefKind::V => &self.refs_v,
        };
        m.get(&(r.i, r.j)).map(|&(a, b)| edge(a, b))
    }

    /// Branch set of every vertex, if any.
    pub fn owner(&self, n: usize) -> Vec<Option<Pos>> {
        let mut own = vec![None; n];
        for (&p, vs) in &self.branch_sets {
            for &v in vs {
                if v < n {
                    own[v] = Some(p);
                }
            }
        }
        own
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "gridmodel {}", self.g).ok();
        for ((i, j), vs) in &self.branch_sets {
            let list: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
            writeln!(s, "branch {i} {j}: {}", list.join(" ")).ok();
        }
        for ((i, j), (a, b)) in &self.refs_h {
            writeln!(s, "refh {i} {j}: {a} {b}").ok();
        }
        for ((i, j), (a, b)) in &self.refs_v {
            writeln!(s, "refv {i} {j}: {a} {b}").ok();
        }
        s
    }
}

pub fn parse_grid_model(text: &str) -> Result<GridMinorModel, ModelParseError> {
    let mut m: Option<GridMinorModel> = None;
    for (k, raw) in text.lines().enumerate() {
        let ln = k + 1;
        let err = |msg: &str| ModelParseError { line: ln, msg: msg.to_string() };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let num = |t: &str| t.parse::<usize>().map_err(|_| err(&format!("bad number '{t}'")));
        if let Some(rest) = line.strip_prefix("gridmodel") {
            if m.is_some() {
                return Err(err("second header"));
            }
            m = Some(GridMinorModel { g: num(rest.trim())?, ..Default::default() });
            continue;
        }
        let model = m.as_mut().ok_or_else(|| err("expected 'gridmodel <g>' first"))?;
        let (head, tail) = line.split_once(':').ok_or_else(|| err("expected ':'"))?;
        let h: Vec<&str> = head.split_whitespace().collect();
        if h.len() != 3 {
            return Err(err("expected '<kind> <i> <j>:'"));
        }
        let pos = (num(h[1])?, num(h[2])?);
        let vs: Vec<Vertex> = tail.split_whitespace().map(num).collect::<Result<_, _>>()?;
        match h[0] {
            "branch" => {
                if model.branch_sets.insert(pos, vs).is_some() {
                    return Err(err("duplicate branch set"));
                }
            }
            "refh" | "refv" => {
                if vs.len() != 2 {
                    return Err(err("a reference edge has two endpoints"));
                }
                let map = if h[0] == "refh" { &mut model.refs_h } else { &mut model.refs_v };
                if map.insert(pos, (vs[0], vs[1])).is_some() {
                    return Err(err("duplicate reference edge"));
                }
            }
            other => return Err(err(&format!("unknown record '{other}'"))),
        }
    }
    m.ok_or(ModelParseError { line: 0, msg: "empty model".into() })
}

fn connected(g: &PlaneGraph, vs: &[Vertex]) -> bool {
    let set: BTreeSet<Vertex> = vs.iter().copied().collect();
    let Some(&s) = set.iter().next() else { return false };
    let mut seen = BTreeSet::from([s]);
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in g.rotation(v) {
            if set.contains(&w) && seen.insert(w) {
                q.push_back(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Checks every model condition and lists all failures.
pub fn validate_model(g: &PlaneGraph, m: &GridMinorModel) -> ModelReport {
    let mut issues = Vec::new();
    let n = g.vertex_count();
    if m.g < 2 {
        issues.push(ModelIssue::TooSmall(m.g));
        return ModelReport { issues };
    }
    let range = |p: Pos| (1..=m.g).contains(&p.0) && (1..=m.g).contains(&p.1);
    for &p in m.branch_sets.keys().chain(m.refs_h.keys()).chain(m.refs_v.keys()) {
        if !range(p) {
            issues.push(ModelIssue::OutOfRange(p));
        }
    }
    let mut own: Vec<Option<Pos>> = vec![None; n];
    for i in 1..=m.g {
        for j in 1..=m.g {
            let p = (i, j);
            let vs = match m.branch_sets.get(&p) {
                Some(vs) if !vs.is_empty() => vs,
                _ => {
                    issues.push(ModelIssue::MissingBranch(p));
                    continue;
                }
            };
            let mut fine = true;
            for &v in vs {
                if v >= n {
                    issues.push(ModelIssue::BadVertex(p, v));
                    fine = false;
                } else if let Some(q) = own[v] {
                    if q != p {
                        issues.push(ModelIssue::Overlap { v, a: q, b: p });
                    }
                } else {
                    own[v] = Some(p);
                }
            }
            if fine && !connected(g, vs) {
                issues.push(ModelIssue::Disconnected(p));
            }
        }
    }
    for i in 1..=m.g {
        for j in 1..=m.g {
            let mut refs = Vec::new();
            if i < m.g {
                refs.push((RefPoint::h(i, j), m.refs_h.get(&(i, j))));
            }
            if j < m.g {
                refs.push((RefPoint::v(i, j), m.refs_v.get(&(i, j))));
            }
            for (r, e) in refs {
                let Some(&(a, b)) = e else {
                    issues.push(ModelIssue::MissingRef(r));
                    continue;
                };
                if a >= n || b >= n || !g.has_edge(a, b) {
                    issues.push(ModelIssue::RefNotEdge(r, a, b));
                    continue;
                }
                let (pa, pb) = r.ends();
                if own[a] != Some(pa) || own[b] != Some(pb) {
                    issues.push(ModelIssue::RefWrongEnds(r, a, b, pa, pb));
                }
            }
        }
    }
    for v in 0..n {
        let Some(p) = own[v] else { continue };
        if p.0 < 2 || p.1 < 2 || p.0 + 1 > m.g || p.1 + 1 > m.g {
            continue;
        }
        for &w in g.rotation(v) {
            let near = own[w].is_some_and(|q| q.0.abs_diff(p.0) <= 1 && q.1.abs_diff(p.1) <= 1);
            if !near {
                issues.push(ModelIssue::Locality(p, edge(v, w)));
            }
        }
    }
    ModelReport { issues }
}

/// Smallest grid side guaranteed in a planar graph of tree-width `k`.
pub fn guaranteed_grid_side(k: usize) -> usize {
    (k + 4).div_ceil(6)
}

/// The `g x g` grid with singleton branch sets and its own edges as
/// references. Vertex `(i, j)` of the model is `(i - 1) * g + (j - 1)` in
/// [`samples::grid`].
pub fn identity_model(g: usize) -> (PlaneGraph, GridMinorModel) {
    block_grid(g, 1, None)
}

/// A `(g*s) x (g*s)` grid cut into `s x s` blocks, one per model position.
/// With a seed, every unit square gets one of its diagonals or none at
/// random, and reference edges are picked at random among the candidates;
/// without one the grid is plain and references run through the block
/// middles.
pub fn block_grid(g: usize, s: usize, seed: Option<u64>) -> (PlaneGraph, GridMinorModel) {
    let side = g * s;
    let id = |x: usize, y: usize| x * side + y;
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut edges = Vec::new();
    let mut pts = Vec::with_capacity(side * side);
    for x in 0..side {
        for y in 0..side {
            pts.push((x as f64, y as f64));
            if x + 1 < side {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < side {
                edges.push((id(x, y), id(x, y + 1)));
            }
            if x + 1 < side && y + 1 < side {
                if let Some(r) = rng.as_mut() {
                    match r.gen_range(0..3) {
                        0 => edges.push((id(x, y), id(x + 1, y + 1))),
                        1 => edges.push((id(x + 1, y), id(x, y + 1))),
                        _ => {}
                    }
                }
            }
        }
    }
    let mut outer = Vec::new();
    if side == 1 {
        outer.push(0);
    } else {
        outer.extend((0..side - 1).map(|y| id(0, y)));
        outer.extend((0..side - 1).map(|x| id(x, side - 1)));
        outer.extend((1..side).rev().map(|y| id(side - 1, y)));
        outer.extend((1..side).rev().map(|x| id(x, 0)));
    }
    let graph = samples::from_points(&pts, &edges, &outer);
    let mut m = GridMinorModel { g, ..Default::default() };
    let pick = |rng: &mut Option<ChaCha8Rng>| match rng.as_mut() {
        Some(r) => r.gen_range(0..s),
        None => s / 2,
    };
    for i in 1..=g {
        for j in 1..=g {
            let (x0, y0) = ((i - 1) * s, (j - 1) * s);
            let set = (x0..x0 + s).flat_map(|x| (y0..y0 + s).map(move |y| id(x, y))).collect();
            m.branch_sets.insert((i, j), set);
            if i < g {
                let y = y0 + pick(&mut rng);
                m.refs_h.insert((i, j), (id(x0 + s - 1, y), id(x0 + s, y)));
            }
            if j < g {
                let x = x0 + pick(&mut rng);
                m.refs_v.insert((i, j), (id(x, y0 + s - 1), id(x, y0 + s)));
            }
        }
    }
    (graph, m)
}
