use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::plane_graph::{PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ThreeTreeError {
    #[error("not a plane 3-tree: {0}")]
    NotThreeTree(String),
    #[error("cannot extend to a plane 3-tree: {0}")]
    Augment(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexType {
    A,
    B,
    C,
    D,
}

/// One triangle of the recursive decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    /// Outer triangle in counter-clockwise order.
    pub tri: [Vertex; 3],
    pub central: Option<Vertex>,
    /// Child triangles `(u,v,w)`, `(z,u,w)`, `(v,z,w)` for `tri = (u,v,z)`.
    pub children: Option<[usize; 3]>,
    pub kind: Option<VertexType>,
    pub parent: Option<usize>,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub m: usize,
    /// Number of maximal chains of type-B vertices inside this triangle.
    pub h: usize,
}

impl Node {
    fn leaf(tri: [Vertex; 3], parent: Option<usize>) -> Self {
        Node { tri, central: None, children: None, kind: None, parent, a: 0, b: 0, c: 0, d: 0, m: 0, h: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.central.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeTreeDecomp {
    pub nodes: Vec<Node>,
    pub root: usize,
    /// Maximal chains of type-B vertices, top to bottom.
    pub b_chains: Vec<Vec<Vertex>>,
    pub vertex_count: usize,
}

impl ThreeTreeDecomp {
    pub fn root(&self) -> &Node {
        &self.nodes[self.root]
    }

    /// The node whose central vertex is `x`.
    pub fn node_of(&self, x: Vertex) -> Option<usize> {
        self.nodes.iter().position(|n| n.central == Some(x))
    }

    pub fn vertex_types(&self) -> HashMap<Vertex, VertexType> {
        self.nodes.iter().filter_map(|n| Some((n.central?, n.kind?))).collect()
    }

    /// The only non-empty child of a type-B node.
    pub fn b_child(&self, id: usize) -> Option<usize> {
        let ch = self.nodes[id].children?;
        let full: Vec<usize> = ch.into_iter().filter(|&c| !self.nodes[c].is_empty()).collect();
        (full.len() == 1).then(|| full[0])
    }

    /// Indented tree with types and counters.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let mut stack = vec![(self.root, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let n = &self.nodes[id];
            let pad = "  ".repeat(depth);
            let [u, v, z] = n.tri;
            match n.central {
                None => {
                    writeln!(s, "{pad}({u},{v},{z}) empty").ok();
                }
                Some(w) => {
                    writeln!(
                        s,
                        "{pad}({u},{v},{z}) w={w} type={:?} m={} a={} b={} c={} d={} h={}",
                        n.kind.unwrap(),
                        n.m,
                        n.a,
                        n.b,
                        n.c,
                        n.d,
                        n.h
                    )
                    .ok();
                    let ch = n.children.unwrap();
                    for &c in ch.iter().rev() {
                        if !self.nodes[c].is_empty() {
                            stack.push((c, depth + 1));
                        }
                    }
                }
            }
        }
        s
    }
}

fn tri_key(t: [Vertex; 3]) -> [Vertex; 3] {
    let mut k = t;
    k.sort();
    k
}

/// Counter-clockwise outer triangle of a graph whose outer walk has length 3.
pub fn outer_triangle(g: &PlaneGraph) -> Option<[Vertex; 3]> {
    let w = g.outer_walk();
    if w.len() != 3 || w[0] == w[1] || w[1] == w[2] || w[0] == w[2] {
        return None;
    }
    Some([w[0], w[2], w[1]])
}

pub fn is_plane_3tree(g: &PlaneGraph) -> bool {
    decompose(g).is_ok()
}

/// Recursive decomposition, found by repeatedly removing internal vertices
/// of degree 3 and replaying the removals backwards.
pub fn decompose(g: &PlaneGraph) -> Result<ThreeTreeDecomp, ThreeTreeError> {
    let bad = |m: &str| ThreeTreeError::NotThreeTree(m.to_string());
    let n = g.vertex_count();
    let outer = outer_triangle(g).ok_or_else(|| bad("outer face is not a triangle"))?;
    if n > 3 && g.edge_count() != 3 * n - 6 {
        return Err(bad("not a triangulation"));
    }
    if (0..g.face_count()).any(|f| g.face_darts(f).len() != 3) {
        return Err(bad("a face is not a triangle"));
    }
    let is_outer = |v: Vertex| outer.contains(&v);
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut queue: Vec<Vertex> = (0..n).filter(|&v| !is_outer(v) && deg[v] == 3).collect();
    let mut peeled: Vec<(Vertex, [Vertex; 3])> = Vec::new();
    while let Some(w) = queue.pop() {
        if removed[w] || deg[w] != 3 {
            continue;
        }
        let nb: Vec<Vertex> = g.rotation(w).iter().copied().filter(|&x| !removed[x]).collect();
        if nb.len() != 3 {
            return Err(bad("degree bookkeeping failed"));
        }
        removed[w] = true;
        for &x in &nb {
            deg[x] -= 1;
            if !is_outer(x) && deg[x] == 3 {
                queue.push(x);
            }
        }
        peeled.push((w, [nb[0], nb[1], nb[2]]));
    }
    if peeled.len() != n - 3 {
        return Err(bad("no internal vertex of degree 3 left to remove"));
    }
    let mut nodes = vec![Node::leaf(outer, None)];
    let mut open: HashMap<[Vertex; 3], usize> = HashMap::new();
    open.insert(tri_key(outer), 0);
    for &(w, t) in peeled.iter().rev() {
        let id = open.remove(&tri_key(t)).ok_or_else(|| bad("vertex not stacked into a face"))?;
        let [u, v, z] = nodes[id].tri;
        let base = nodes.len();
        for tri in [[u, v, w], [z, u, w], [v, z, w]] {
            open.insert(tri_key(tri), nodes.len());
            nodes.push(Node::leaf(tri, Some(id)));
        }
        nodes[id].central = Some(w);
        nodes[id].children = Some([base, base + 1, base + 2]);
    }
    for id in (0..nodes.len()).rev() {
        let Some(ch) = nodes[id].children else { continue };
        let full: Vec<usize> = ch.into_iter().filter(|&c| !nodes[c].is_empty()).collect();
        let kind = match full.len() {
            0 => VertexType::A,
            1 => VertexType::B,
            2 => VertexType::C,
            _ => VertexType::D,
        };
        let (mut a, mut b, mut c, mut d, mut m, mut h) = (0, 0, 0, 0, 1, 0);
        for &x in &ch {
            let k = &nodes[x];
            a += k.a;
            b += k.b;
            c += k.c;
            d += k.d;
            m += k.m;
            h += k.h;
        }
        match kind {
            VertexType::A => a += 1,
            VertexType::B => {
                b += 1;
                if nodes[full[0]].kind != Some(VertexType::B) {
                    h += 1;
                }
            }
            VertexType::C => c += 1,
            VertexType::D => d += 1,
        }
        let nd = &mut nodes[id];
        (nd.kind, nd.a, nd.b, nd.c, nd.d, nd.m, nd.h) = (Some(kind), a, b, c, d, m, h);
    }
    let mut b_chains = Vec::new();
    for id in 0..nodes.len() {
        let starts = nodes[id].kind == Some(VertexType::B)
            && nodes[id].parent.map(|p| nodes[p].kind != Some(VertexType::B)).unwrap_or(true);
        if !starts {
            continue;
        }
        let mut chain = Vec::new();
        let mut cur = id;
        loop {
            chain.push(nodes[cur].central.unwrap());
            let ch = nodes[cur].children.unwrap();
            let next = ch.into_iter().find(|&c| !nodes[c].is_empty()).unwrap();
            if nodes[next].kind != Some(VertexType::B) {
                break;
            }
            cur = next;
        }
        b_chains.push(chain);
    }
    Ok(ThreeTreeDecomp { nodes, root: 0, b_chains, vertex_count: n })
}
