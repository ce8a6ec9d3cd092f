//! Extending a plane graph to a plane 3-tree by adding edges only.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::decomp::{decompose, ThreeTreeError};
use crate::plane_graph::{edge, Edge, PlaneGraph, Vertex};

/// The full rotation system plus the set of vertices not yet eliminated.
struct Work {
    rot: Vec<Vec<Vertex>>,
    alive: Vec<bool>,
}

/// The graph induced by the alive vertices, with its own numbering.
struct Current {
    g: PlaneGraph,
    to_full: Vec<Vertex>,
    to_cur: Vec<usize>,
}

impl Work {
    fn current(&self) -> Current {
        let n = self.rot.len();
        let to_full: Vec<Vertex> = (0..n).filter(|&v| self.alive[v]).collect();
        let mut to_cur = vec![usize::MAX; n];
        for (i, &v) in to_full.iter().enumerate() {
            to_cur[v] = i;
        }
        let rot: Vec<Vec<Vertex>> = to_full
            .iter()
            .map(|&v| self.rot[v].iter().filter(|&&w| self.alive[w]).map(|&w| to_cur[w]).collect())
            .collect();
        let d = rot.iter().position(|r| !r.is_empty()).unwrap_or(0);
        let g = PlaneGraph::with_outer_dart(rot.clone(), d, rot[d][0]).expect("alive part stays embedded");
        Current { g, to_full, to_cur }
    }

    fn insert_after(&mut self, v: Vertex, after: Vertex, new: Vertex) {
        let at = self.rot[v].iter().position(|&w| w == after).expect("neighbor") + 1;
        self.rot[v].insert(at, new);
    }

    fn insert_before(&mut self, v: Vertex, before: Vertex, new: Vertex) {
        let at = self.rot[v].iter().position(|&w| w == before).expect("neighbor");
        self.rot[v].insert(at, new);
    }

    /// Adds edge `v-c` through the face left of dart `v -> next` (current
    /// numbering), where `c -> x` is a dart of the same face.
    fn add_in_face(&mut self, cur: &Current, v: usize, next: usize, c: usize, x: usize) {
        let (fv, fnext, fc, fx) = (cur.to_full[v], cur.to_full[next], cur.to_full[c], cur.to_full[x]);
        // The wedge of that face at v ends at `next`, and at c it ends at `x`.
        self.insert_before(fv, fnext, fc);
        self.insert_before(fc, fx, fv);
    }
}

/// Ways to give `v` one more edge: a vertex `c` on a face at `v`, listed
/// as `(w, c, x)` where the face is left of `v -> w` and `c -> x` is one of
/// its darts. Vertices right after `w` on the face come first, since they
/// close a triangle at once.
fn degree_options(cur: &Current, v: Vertex) -> Vec<(usize, usize, usize)> {
    let g = &cur.g;
    let cv = cur.to_cur[v];
    let mut first = Vec::new();
    let mut rest = Vec::new();
    for &w in g.rotation(cv) {
        let d0 = g.dart(cv, w).unwrap();
        let f = g.dart_face(d0);
        let darts = g.face_darts(f);
        let start = darts.iter().position(|&d| d == d0).unwrap();
        for k in 1..darts.len() {
            let d = darts[(start + k) % darts.len()];
            let c = g.tail(d);
            if c != cv && !g.has_edge(cv, c) {
                let opt = (w, c, g.head(d));
                if k == 1 {
                    first.push(opt);
                } else {
                    rest.push(opt);
                }
            }
        }
    }
    first.extend(rest);
    first.dedup();
    first
}

/// Raises the degree of `v` to three with edges to vertices on its faces,
/// then closes each wedge at `v` into a triangle. Tries the options for the
/// extra edges in turn; false when none works.
fn eliminate(work: &mut Work, v: Vertex) -> bool {
    let cur = work.current();
    let cv = cur.to_cur[v];
    if cur.g.degree(cv) < 3 {
        for (w, c, x) in degree_options(&cur, v) {
            let saved = work.rot.clone();
            work.add_in_face(&cur, cv, w, c, x);
            if eliminate(work, v) {
                return true;
            }
            work.rot = saved;
        }
        return false;
    }
    // Close the three wedges one at a time.
    for k in 0..3 {
        let cur = work.current();
        let cv = cur.to_cur[v];
        let g = &cur.g;
        let rot = g.rotation(cv).to_vec();
        if rot.len() != 3 {
            return false;
        }
        let (p, q) = (rot[k], rot[(k + 1) % 3]);
        let f = g.dart_face(g.dart(cv, q).unwrap());
        if g.face_darts(f).len() == 3 {
            continue;
        }
        if g.has_edge(p, q) {
            return false;
        }
        let (fp, fq) = (cur.to_full[p], cur.to_full[q]);
        work.insert_after(fq, v, fp);
        work.insert_before(fp, v, fq);
    }
    true
}

/// One elimination run; `rng` reorders candidates of equal degree.
fn eliminate_all(g: &PlaneGraph, mut rng: Option<&mut ChaCha8Rng>) -> Result<Vec<Vec<Vertex>>, Vec<Vertex>> {
    let n = g.vertex_count();
    let mut work = Work { rot: g.rotations().to_vec(), alive: vec![true; n] };
    let mut left = n;
    while left > 3 {
        let cur = work.current();
        let mut cands: Vec<(usize, u64, Vertex)> = (0..cur.to_full.len())
            .filter(|&i| cur.g.degree(i) <= 3)
            .map(|i| {
                let key = rng.as_mut().map(|r| r.gen::<u64>()).unwrap_or(0);
                (3 - cur.g.degree(i), key, cur.to_full[i])
            })
            .collect();
        cands.sort_unstable();
        let mut progressed = false;
        for &(_, _, v) in &cands {
            let saved = work.rot.clone();
            if eliminate(&mut work, v) {
                work.alive[v] = false;
                left -= 1;
                progressed = true;
                break;
            }
            work.rot = saved;
        }
        if !progressed {
            return Err((0..n).filter(|&v| work.alive[v]).collect());
        }
    }
    if n == 3 {
        // A path on three vertices: close it through its only face.
        let cur = work.current();
        let gg = &cur.g;
        if let Some(a) = (0..3).find(|&a| gg.degree(a) == 1) {
            let b = gg.rotation(a)[0];
            let c = (0..3).find(|&c| c != a && c != b).unwrap();
            let x = gg.rotation(c)[0];
            work.add_in_face(&cur, a, b, c, x);
        }
    }
    Ok(work.rot)
}

/// Elimination runs after the first one that got stuck.
const RESTARTS: u64 = 32;

/// A plane 3-tree containing `g` with the same rotations on `g`'s edges and
/// an outer face inside `g`'s outer face, plus the added edges.
pub fn augment_to_plane_3tree(g: &PlaneGraph) -> Result<(PlaneGraph, Vec<Edge>), ThreeTreeError> {
    let fail = |m: String| ThreeTreeError::Augment(m);
    let n = g.vertex_count();
    if n < 3 {
        return Err(fail(format!("{n} vertices")));
    }
    if !g.is_connected() {
        return Err(fail("graph is disconnected".into()));
    }
    if decompose(g).is_ok() {
        return Ok((g.clone(), Vec::new()));
    }
    let mut rot = eliminate_all(g, None);
    for seed in 0..RESTARTS {
        if rot.is_ok() {
            break;
        }
        rot = eliminate_all(g, Some(&mut ChaCha8Rng::seed_from_u64(seed)));
    }
    let rot = rot.map_err(|alive| fail(format!("no removable vertex among {alive:?}")))?;
    let outer = g.face_darts(g.outer_face())[0];
    let h = PlaneGraph::with_outer_dart(rot, g.tail(outer), g.head(outer))
        .map_err(|e| fail(format!("result is not embedded: {e}")))?;
    decompose(&h).map_err(|e| fail(format!("result is not a plane 3-tree: {e}")))?;
    let old: BTreeSet<Edge> = g.edges().into_iter().collect();
    let added = h.edges().into_iter().filter(|e| !old.contains(e)).map(|(a, b)| edge(a, b)).collect();
    Ok((h, added))
}
