use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use super::drawing::{verify_drawing, Drawing};
use crate::geometry::{from_f64_dyadic, Point, Q};
use crate::plane_graph::{PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TutteError {
    #[error("boundary vertex {0} given twice or out of range")]
    BadBoundary(Vertex),
    #[error("linear system is singular")]
    Singular,
    #[error("resulting drawing is not valid: {0}")]
    Invalid(String),
}

/// Vertices beyond this many unknowns are solved in floating point and then
/// rounded; the result is still checked exactly.
pub const EXACT_LIMIT: usize = 300;

/// Barycentric drawing with the given boundary vertices pinned.
pub fn tutte_convex(g: &PlaneGraph, polygon: &[(Vertex, Point)]) -> Result<Drawing, TutteError> {
    let n = g.vertex_count();
    let mut fixed: Vec<Option<Point>> = vec![None; n];
    for (v, p) in polygon {
        if *v >= n || fixed[*v].is_some() {
            return Err(TutteError::BadBoundary(*v));
        }
        fixed[*v] = Some(p.clone());
    }
    let adj: Vec<Vec<Vertex>> = (0..n).map(|v| g.rotation(v).to_vec()).collect();
    let interior = fixed.iter().filter(|p| p.is_none()).count();
    let coords = if interior <= EXACT_LIMIT {
        barycentric_exact(&adj, &fixed)?
    } else {
        let ff: Vec<Option<(f64, f64)>> = fixed.iter().map(|p| p.as_ref().map(|p| p.to_f64())).collect();
        let sol = barycentric_float(&adj, &ff);
        (0..n)
            .map(|v| match &fixed[v] {
                Some(p) => p.clone(),
                None => Point::new(from_f64_dyadic(sol[v].0, 40), from_f64_dyadic(sol[v].1, 40)),
            })
            .collect()
    };
    let d = Drawing::new(coords, Vec::new());
    let rep = verify_drawing(g, &d).map_err(|e| TutteError::Invalid(e.to_string()))?;
    if !(rep.planar && rep.rotation_ok) {
        return Err(TutteError::Invalid(rep.summary()));
    }
    Ok(d)
}

/// Solves the barycenter equations exactly by fraction-free elimination.
pub fn barycentric_exact(adj: &[Vec<Vertex>], fixed: &[Option<Point>]) -> Result<Vec<Point>, TutteError> {
    let n = adj.len();
    let unknown: Vec<Vertex> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in unknown.iter().enumerate() {
        index[v] = i;
    }
    let k = unknown.len();
    // Common denominator of all pinned coordinates, so the system is integral.
    let mut den = BigInt::one();
    for p in fixed.iter().flatten() {
        den = den.lcm(p.x.denom());
        den = den.lcm(p.y.denom());
    }
    let dq = Q::from_integer(den.clone());
    let mut m: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); k + 2]; k];
    for (i, &v) in unknown.iter().enumerate() {
        m[i][i] = BigInt::from(adj[v].len()) * &den;
        for &w in &adj[v] {
            match &fixed[w] {
                Some(p) => {
                    m[i][k] += (&p.x * &dq).to_integer();
                    m[i][k + 1] += (&p.y * &dq).to_integer();
                }
                None => m[i][index[w]] -= &den,
            }
        }
    }
    // Bareiss forward elimination.
    let mut prev = BigInt::one();
    for c in 0..k {
        let Some(r) = (c..k).find(|&r| !m[r][c].is_zero()) else {
            return Err(TutteError::Singular);
        };
        m.swap(c, r);
        for r in c + 1..k {
            if m[r][c].is_zero() {
                for j in c + 1..k + 2 {
                    let t = &m[r][j] * &m[c][c];
                    m[r][j] = t / &prev;
                }
                continue;
            }
            for j in c + 1..k + 2 {
                let t = &m[r][j] * &m[c][c] - &m[r][c] * &m[c][j];
                m[r][j] = t / &prev;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[c][c].clone();
    }
    let mut xs: Vec<Q> = vec![Q::zero(); k];
    let mut ys: Vec<Q> = vec![Q::zero(); k];
    for i in (0..k).rev() {
        let mut sx = Q::from_integer(m[i][k].clone());
        let mut sy = Q::from_integer(m[i][k + 1].clone());
        for j in i + 1..k {
            if m[i][j].is_zero() {
                continue;
            }
            let c = Q::from_integer(m[i][j].clone());
            sx -= &c * &xs[j];
            sy -= &c * &ys[j];
        }
        let piv = Q::from_integer(m[i][i].clone());
        xs[i] = sx / &piv;
        ys[i] = sy / &piv;
    }
    Ok((0..n)
        .map(|v| match &fixed[v] {
            Some(p) => p.clone(),
            None => Point::new(xs[index[v]].clone(), ys[index[v]].clone()),
        })
        .collect())
}

/// Barycentric positions in floating point (Jacobi-preconditioned conjugate
/// gradients on the interior Laplacian).
pub fn barycentric_float(adj: &[Vec<Vertex>], fixed: &[Option<(f64, f64)>]) -> Vec<(f64, f64)> {
    let n = adj.len();
    let unknown: Vec<Vertex> = (0..n).filter(|&v| fixed[v].is_none()).collect();
    let mut index = vec![usize::MAX; n];
    for (i, &v) in unknown.iter().enumerate() {
        index[v] = i;
    }
    let k = unknown.len();
    let mut out: Vec<(f64, f64)> = fixed.iter().map(|p| p.unwrap_or((0.0, 0.0))).collect();
    if k == 0 {
        return out;
    }
    let diag: Vec<f64> = unknown.iter().map(|&v| adj[v].len() as f64).collect();
    let apply = |x: &[f64], y: &mut [f64]| {
        for (i, &v) in unknown.iter().enumerate() {
            let mut s = diag[i] * x[i];
            for &w in &adj[v] {
                if index[w] != usize::MAX {
                    s -= x[index[w]];
                }
            }
            y[i] = s;
        }
    };
    for coord in 0..2 {
        let b: Vec<f64> = unknown
            .iter()
            .map(|&v| {
                adj[v]
                    .iter()
                    .filter_map(|&w| fixed[w].map(|p| if coord == 0 { p.0 } else { p.1 }))
                    .sum()
            })
            .collect();
        let bnorm = b.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
        let mut x = vec![0.0; k];
        let mut r = b.clone();
        let mut z: Vec<f64> = r.iter().zip(&diag).map(|(r, d)| r / d).collect();
        let mut p = z.clone();
        let mut rz: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
        let mut ap = vec![0.0; k];
        for _ in 0..(20 * k + 100) {
            apply(&p, &mut ap);
            let pap: f64 = p.iter().zip(&ap).map(|(a, b)| a * b).sum();
            if pap == 0.0 {
                break;
            }
            let alpha = rz / pap;
            for i in 0..k {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let rn = r.iter().map(|x| x * x).sum::<f64>().sqrt();
            if rn <= 1e-15 * bnorm {
                break;
            }
            for i in 0..k {
                z[i] = r[i] / diag[i];
            }
            let rz2: f64 = r.iter().zip(&z).map(|(a, b)| a * b).sum();
            let beta = rz2 / rz;
            rz = rz2;
            for i in 0..k {
                p[i] = z[i] + beta * p[i];
            }
        }
        for (i, &v) in unknown.iter().enumerate() {
            if coord == 0 {
                out[v].0 = x[i];
            } else {
                out[v].1 = x[i];
            }
        }
    }
    out
}
