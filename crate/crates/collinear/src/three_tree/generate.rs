use rand::Rng;

use crate::plane_graph::{PlaneGraph, Vertex};

/// Grows a plane 3-tree by stacking vertices into inner faces.
#[derive(Clone, Debug)]
pub struct Stacker {
    rot: Vec<Vec<Vertex>>,
    /// Inner faces as counter-clockwise triples.
    pub faces: Vec<[Vertex; 3]>,
}

impl Default for Stacker {
    fn default() -> Self {
        Self::new()
    }
}

impl Stacker {
    /// The triangle with outer walk `0 1 2`.
    pub fn new() -> Self {
        Stacker { rot: vec![vec![1, 2], vec![2, 0], vec![0, 1]], faces: vec![[0, 2, 1]] }
    }

    pub fn vertex_count(&self) -> usize {
        self.rot.len()
    }

    /// Puts a new vertex into inner face `i` and returns it.
    pub fn stack(&mut self, i: usize) -> Vertex {
        let [a, b, c] = self.faces[i];
        let w = self.rot.len();
        let mut ins = |v: Vertex, after: Vertex| {
            let r = &mut self.rot[v];
            let at = r.iter().position(|&x| x == after).expect("face corner") + 1;
            r.insert(at, w);
        };
        ins(a, c);
        ins(b, a);
        ins(c, b);
        self.rot.push(vec![a, c, b]);
        self.faces[i] = [a, b, w];
        self.faces.push([b, c, w]);
        self.faces.push([c, a, w]);
        w
    }

    pub fn graph(&self) -> PlaneGraph {
        PlaneGraph::new(self.rot.clone(), &[0, 1, 2]).expect("stacked triangulation")
    }
}

/// Stacks into face indices taken in turn, each reduced modulo the current
/// face count.
pub fn plane_3tree_from_choices(choices: &[usize]) -> PlaneGraph {
    let mut s = Stacker::new();
    for &c in choices {
        let k = s.faces.len();
        s.stack(c % k);
    }
    s.graph()
}

/// Random plane 3-tree on `n >= 3` vertices. With probability `chain_bias`
/// the next vertex goes into a face of the previous one, which favours long
/// chains of vertices with one non-empty child.
pub fn random_plane_3tree<R: Rng>(n: usize, chain_bias: f64, rng: &mut R) -> PlaneGraph {
    assert!(n >= 3, "a plane 3-tree has at least three vertices");
    let mut s = Stacker::new();
    let mut last: Option<Vertex> = None;
    while s.vertex_count() < n {
        let k = s.faces.len();
        let i = match last {
            Some(w) if rng.gen_bool(chain_bias) => {
                // The three faces around the last vertex.
                let around: Vec<usize> = (0..k).filter(|&i| s.faces[i].contains(&w)).collect();
                around[rng.gen_range(0..around.len())]
            }
            _ => rng.gen_range(0..k),
        };
        last = Some(s.stack(i));
    }
    s.graph()
}
