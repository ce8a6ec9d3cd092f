//! Straight-line redrawing that keeps one coordinate of every vertex and the
//! order of vertices and edges along every line where that coordinate is
//! constant.

use std::collections::{HashMap, HashSet};

use minilp::{ComparisonOp, LinearExpr, OptimizationDirection, Problem};
use thiserror::Error;

use super::drawing::Drawing;
use crate::geometry::{cross_horizontal, from_f64_dyadic, to_f64, Point, Q};
use crate::plane_graph::{Edge, PlaneGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StraightenError {
    #[error("edge {0:?} is not y-monotone")]
    NotMonotone(Edge),
    #[error("levels admit no straight-line drawing: {0}")]
    Infeasible(String),
}

/// A drawing whose edges are straight or bent once.
#[derive(Clone, Debug)]
pub struct Polyline {
    pub coords: Vec<Point>,
    pub bends: HashMap<Edge, Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Item {
    V(Vertex),
    E(usize),
}

/// Left-to-right order of vertices and edge passages on each level.
#[derive(Clone, Debug)]
pub(crate) struct LevelOrders {
    pub edges: Vec<Edge>,
    pub vertex_level: Vec<usize>,
    pub lists: Vec<Vec<Item>>,
}

impl LevelOrders {
    fn span(&self, i: usize) -> (usize, usize) {
        let (a, b) = self.edges[i];
        let (la, lb) = (self.vertex_level[a], self.vertex_level[b]);
        (la.min(lb), la.max(lb))
    }
}

/// Reads level orders off a polyline drawing. Levels are the distinct
/// y-values of vertices and bends, bottom to top.
pub(crate) fn level_orders(g: &PlaneGraph, p: &Polyline) -> Result<(LevelOrders, Vec<Q>), StraightenError> {
    let edges = g.edges();
    let mut ys: Vec<Q> = p.coords.iter().map(|c| c.y.clone()).collect();
    for (e, b) in &p.bends {
        let (ya, yb) = (&p.coords[e.0].y, &p.coords[e.1].y);
        let (lo, hi) = if ya < yb { (ya, yb) } else { (yb, ya) };
        if !(lo < &b.y && &b.y < hi) {
            return Err(StraightenError::NotMonotone(*e));
        }
        ys.push(b.y.clone());
    }
    ys.sort();
    ys.dedup();
    let level_of = |y: &Q| ys.binary_search(y).expect("level");
    let vertex_level: Vec<usize> = p.coords.iter().map(|c| level_of(&c.y)).collect();
    let mut orders = LevelOrders { edges: edges.clone(), vertex_level, lists: vec![Vec::new(); ys.len()] };
    let mut starting: Vec<Vec<usize>> = vec![Vec::new(); ys.len()];
    for i in 0..edges.len() {
        let (lo, hi) = orders.span(i);
        if hi > lo + 1 {
            starting[lo + 1].push(i);
        }
    }
    let mut at_level: Vec<Vec<Vertex>> = vec![Vec::new(); ys.len()];
    for (v, &l) in orders.vertex_level.iter().enumerate() {
        at_level[l].push(v);
    }
    let fy: Vec<f64> = ys.iter().map(to_f64).collect();
    let fc: Vec<(f64, f64)> = p.coords.iter().map(|c| c.to_f64()).collect();
    let fb: HashMap<Edge, (f64, f64)> = p.bends.iter().map(|(e, b)| (*e, b.to_f64())).collect();
    let mut active: Vec<usize> = Vec::new();
    for k in 0..ys.len() {
        active.retain(|&i| orders.span(i).1 > k);
        active.extend(starting[k].iter().copied());
        let mut items: Vec<(f64, Item)> = at_level[k].iter().map(|&v| (fc[v].0, Item::V(v))).collect();
        for &i in &active {
            items.push((float_x(edges[i], &fc, &fb, fy[k]), Item::E(i)));
        }
        let scale = items.iter().map(|(x, _)| x.abs()).fold(1.0, f64::max);
        items.sort_by(|a, b| {
            if (a.0 - b.0).abs() > 1e-9 * scale {
                a.0.total_cmp(&b.0)
            } else {
                let xa = exact_x(a.1, &edges, p, &ys[k]);
                let xb = exact_x(b.1, &edges, p, &ys[k]);
                xa.cmp(&xb)
            }
        });
        orders.lists[k] = items.into_iter().map(|(_, it)| it).collect();
    }
    Ok((orders, ys))
}

fn segment_for<'a>(e: Edge, coords: &'a [Point], bend: Option<&'a Point>, y: &Q) -> (&'a Point, &'a Point) {
    let (a, b) = (&coords[e.0], &coords[e.1]);
    let (lo, hi) = if a.y < b.y { (a, b) } else { (b, a) };
    match bend {
        Some(c) if y <= &c.y => (lo, c),
        Some(c) => (c, hi),
        None => (lo, hi),
    }
}

fn exact_x(it: Item, edges: &[Edge], p: &Polyline, y: &Q) -> Q {
    match it {
        Item::V(v) => p.coords[v].x.clone(),
        Item::E(i) => {
            let e = edges[i];
            let (s, t) = segment_for(e, &p.coords, p.bends.get(&e), y);
            if s.y == t.y {
                s.x.clone()
            } else {
                cross_horizontal(s, t, y)
            }
        }
    }
}

fn float_x(e: Edge, fc: &[(f64, f64)], fb: &HashMap<Edge, (f64, f64)>, y: f64) -> f64 {
    let (a, b) = (fc[e.0], fc[e.1]);
    let (lo, hi) = if a.1 < b.1 { (a, b) } else { (b, a) };
    let (s, t) = match fb.get(&e) {
        Some(&c) if y <= c.1 => (lo, c),
        Some(&c) => (c, hi),
        None => (lo, hi),
    };
    if t.1 == s.1 {
        return s.0;
    }
    s.0 + (t.0 - s.0) * (y - s.1) / (t.1 - s.1)
}

/// One row `pos(right) - pos(left) >= gap` at level `k`.
type Row = (Item, Item, usize);

/// Consecutive pairs, kept only at the first and last level of each run in
/// which they stay consecutive; positions are linear in between.
fn constraint_rows(orders: &LevelOrders) -> Vec<Row> {
    let mut rows = Vec::new();
    let mut open: HashMap<(Item, Item), usize> = HashMap::new();
    let mut prev: HashSet<(Item, Item)> = HashSet::new();
    for (k, list) in orders.lists.iter().enumerate() {
        let cur: HashSet<(Item, Item)> = list.windows(2).map(|w| (w[0], w[1])).collect();
        for pr in prev.difference(&cur) {
            let s = open.remove(pr).expect("open run");
            rows.push((pr.0, pr.1, s));
            if s != k - 1 {
                rows.push((pr.0, pr.1, k - 1));
            }
        }
        for pr in &cur {
            open.entry(*pr).or_insert(k);
        }
        prev = cur;
    }
    let last = orders.lists.len().saturating_sub(1);
    let mut rest: Vec<_> = open.into_iter().collect();
    rest.sort();
    for (pr, s) in rest {
        rows.push((pr.0, pr.1, s));
        if s != last {
            rows.push((pr.0, pr.1, last));
        }
    }
    rows.sort();
    rows
}

/// Linear form of an item's position at level `k`, as (vertex, coefficient).
fn item_terms(orders: &LevelOrders, heights: &[f64], it: Item, k: usize) -> Vec<(Vertex, f64)> {
    match it {
        Item::V(v) => vec![(v, 1.0)],
        Item::E(i) => {
            let (a, b) = orders.edges[i];
            let (la, lb) = (orders.vertex_level[a], orders.vertex_level[b]);
            let t = (heights[k] - heights[la]) / (heights[lb] - heights[la]);
            vec![(a, 1.0 - t), (b, t)]
        }
    }
}

/// Chooses positions along the levels so that all straight edges keep the
/// level orders. Vertices with a `fixed` value keep it exactly; the minimum
/// gap is then maximized instead of being 1.
pub(crate) fn solve_positions(orders: &LevelOrders, heights: &[f64]) -> Result<Vec<Q>, StraightenError> {
    let n = orders.vertex_level.len();
    let rows = constraint_rows(orders);
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<minilp::Variable> = (0..n).map(|_| lp.add_var(1.0, (0.0, f64::INFINITY))).collect();
    for &(l, r, k) in &rows {
        let mut expr = LinearExpr::empty();
        let mut coef: HashMap<Vertex, f64> = HashMap::new();
        for (v, c) in item_terms(orders, heights, r, k) {
            *coef.entry(v).or_default() += c;
        }
        for (v, c) in item_terms(orders, heights, l, k) {
            *coef.entry(v).or_default() -= c;
        }
        let mut terms: Vec<(Vertex, f64)> = coef.into_iter().collect();
        terms.sort_by_key(|t| t.0);
        for (v, c) in terms {
            if c != 0.0 {
                expr.add(vars[v], c);
            }
        }
        lp.add_constraint(expr, ComparisonOp::Ge, 1.0);
    }
    // The solver panics on some singular bases instead of reporting them.
    let sol = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| lp.solve()))
        .map_err(|_| StraightenError::Infeasible("linear program solver failed".into()))?
        .map_err(|e| StraightenError::Infeasible(e.to_string()))?;
    Ok(vars.iter().map(|&x| from_f64_dyadic(*sol.var_value(x), 24)).collect())
}

/// Straight-line drawing with every vertex at its input height.
pub fn straighten_preserving_y(g: &PlaneGraph, p: &Polyline) -> Result<Drawing, StraightenError> {
    let (orders, ys) = level_orders(g, p)?;
    let heights: Vec<f64> = ys.iter().map(to_f64).collect();
    let xs = solve_positions(&orders, &heights)?;
    let coords = xs.into_iter().zip(&p.coords).map(|(x, c)| Point::new(x, c.y.clone())).collect();
    Ok(Drawing::new(coords, Vec::new()))
}
