//! Random triconnected cubic plane graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::CubicError;
use crate::plane_graph::{PlaneGraph, Vertex};

const RETRIES: usize = 64;

/// Grows K4 by joining the midpoints of two edges of one face until there
/// are `target_n` vertices, then checks cubicity and triconnectivity.
pub fn generate_triconnected_cubic(seed: u64, target_n: usize) -> Result<PlaneGraph, CubicError> {
    if target_n < 4 || target_n % 2 == 1 {
        return Err(CubicError::Generate(format!("need an even vertex count of at least 4, got {target_n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRIES {
        let g = grow(&mut rng, target_n)?;
        let ok = (0..g.vertex_count()).all(|x| g.degree(x) == 3)
            && g.separation_pairs().map(|s| s.is_triconnected()).unwrap_or(false);
        if ok {
            return Ok(g);
        }
    }
    Err(CubicError::Generate(format!("no triconnected graph after {RETRIES} tries")))
}

fn grow(rng: &mut ChaCha8Rng, target_n: usize) -> Result<PlaneGraph, CubicError> {
    let mut rot: Vec<Vec<Vertex>> = vec![vec![1, 3, 2], vec![0, 2, 3], vec![0, 3, 1], vec![0, 1, 2]];
    let mut outer = (0, 1);
    let mut g = PlaneGraph::with_outer_dart(rot.clone(), outer.0, outer.1)?;
    while g.vertex_count() < target_n {
        let f = rng.gen_range(0..g.face_count());
        let darts = g.face_darts(f).to_vec();
        let mut pick: Vec<usize> = darts.choose_multiple(rng, 2).copied().collect();
        pick.sort_unstable();
        let (x, y) = (rot.len(), rot.len() + 1);
        let (a, b) = (g.tail(pick[0]), g.head(pick[0]));
        let (c, d) = (g.tail(pick[1]), g.head(pick[1]));
        for (p, q, m) in [(a, b, x), (c, d, y)] {
            for (s, t) in [(p, q), (q, p)] {
                let i = rot[s].iter().position(|&w| w == t).expect("edge");
                rot[s][i] = m;
            }
            if outer == (p, q) {
                outer = (p, m);
            } else if outer == (q, p) {
                outer = (q, m);
            }
        }
        // Both new vertices face the chosen face between their two halves.
        rot.push(vec![a, y, b]);
        rot.push(vec![c, x, d]);
        g = PlaneGraph::with_outer_dart(rot.clone(), outer.0, outer.1)?;
    }
    Ok(g)
}
