//! Maximum number of vertices on a proper good curve of a plane 3-tree.
//!
//! Inside the outer triangle a proper good curve is one arc that either
//! cuts off a corner (crossing the two edges at it) or runs from a corner
//! to the opposite edge. For each node the table holds the most internal
//! vertices such an arc can visit, for all six cuts.

use super::bundle::FaceIndex;
use super::decomp::ThreeTreeDecomp;
use crate::curves::{validate_curve, GoodCurve, Station};
use crate::plane_graph::{edge, PlaneGraph, Vertex};

/// A way of cutting the outer triangle of a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cut {
    /// Crosses both edges at this corner.
    Corner(Vertex),
    /// Starts at this corner and crosses the opposite edge.
    Through(Vertex),
}

/// How the best arc for one cut is assembled from the children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rule {
    Empty,
    /// Corner x: the two children at x, joined across the edge x-w.
    CornerNear,
    /// Corner x: around through the child opposite x.
    CornerAround,
    /// Corner x: through the central vertex from both children at x.
    CornerCenter,
    /// Through x: into the child at x and y1, then across y1-w.
    ThroughFirst,
    /// Through x: into the child at x and y2, then across y2-w.
    ThroughSecond,
    /// Through x: along the edge x-w, then to the opposite edge.
    ThroughCenter,
}

#[derive(Clone, Debug)]
pub struct DpTable {
    /// Per node: `Through` values for the triangle corners, then `Corner`
    /// values, in the order of `Node::tri`.
    pub values: Vec<[usize; 6]>,
    rules: Vec<[Rule; 6]>,
}

impl DpTable {
    pub fn value(&self, dec: &ThreeTreeDecomp, node: usize, cut: Cut) -> usize {
        self.values[node][slot(dec.nodes[node].tri, cut)]
    }
}

#[derive(Clone, Debug)]
pub struct DpResult {
    pub table: DpTable,
    /// Most vertices on any proper good curve, outer vertices included.
    pub best_count: usize,
    /// Most internal vertices on any proper good curve.
    pub best_internal: usize,
    pub best: GoodCurve,
}

fn slot(tri: [Vertex; 3], cut: Cut) -> usize {
    let pos = |x: Vertex| tri.iter().position(|&y| y == x).expect("corner of the node");
    match cut {
        Cut::Through(x) => pos(x),
        Cut::Corner(x) => 3 + pos(x),
    }
}

fn others(t: [Vertex; 3], x: Vertex) -> [Vertex; 2] {
    let i = t.iter().position(|&y| y == x).unwrap();
    [t[(i + 1) % 3], t[(i + 2) % 3]]
}

fn child_with(dec: &ThreeTreeDecomp, id: usize, a: Vertex, b: Vertex) -> usize {
    let ch = dec.nodes[id].children.expect("inner node");
    ch.into_iter()
        .find(|&c| {
            let t = dec.nodes[c].tri;
            t.contains(&a) && t.contains(&b)
        })
        .expect("child on edge")
}

pub fn dp_table(dec: &ThreeTreeDecomp) -> DpTable {
    let k = dec.nodes.len();
    let mut values = vec![[0usize; 6]; k];
    let mut rules = vec![[Rule::Empty; 6]; k];
    for id in (0..k).rev() {
        let node = &dec.nodes[id];
        let Some(w) = node.central else { continue };
        let tri = node.tri;
        let val = |values: &Vec<[usize; 6]>, c: usize, cut: Cut| values[c][slot(dec.nodes[c].tri, cut)];
        let mut row = [0usize; 6];
        let mut rrow = [Rule::Empty; 6];
        for x in tri {
            let [y1, y2] = others(tri, x);
            let (c1, c2, c3) = (child_with(dec, id, x, y1), child_with(dec, id, x, y2), child_with(dec, id, y1, y2));
            let corner = [
                (val(&values, c1, Cut::Corner(x)) + val(&values, c2, Cut::Corner(x)), Rule::CornerNear),
                (
                    val(&values, c1, Cut::Corner(y1)) + val(&values, c3, Cut::Corner(w)) + val(&values, c2, Cut::Corner(y2)),
                    Rule::CornerAround,
                ),
                (1 + val(&values, c1, Cut::Through(w)) + val(&values, c2, Cut::Through(w)), Rule::CornerCenter),
            ];
            let through = [
                (val(&values, c1, Cut::Through(x)) + val(&values, c3, Cut::Corner(y1)), Rule::ThroughFirst),
                (val(&values, c2, Cut::Through(x)) + val(&values, c3, Cut::Corner(y2)), Rule::ThroughSecond),
                (1 + val(&values, c3, Cut::Through(w)), Rule::ThroughCenter),
            ];
            for (cut, opts) in [(Cut::Corner(x), corner), (Cut::Through(x), through)] {
                // First option wins ties.
                let best = opts.iter().fold(opts[0], |b, &o| if o.0 > b.0 { o } else { b });
                let s = slot(tri, cut);
                row[s] = best.0;
                rrow[s] = best.1;
            }
        }
        values[id] = row;
        rules[id] = rrow;
    }
    DpTable { values, rules }
}

/// Stations of the best arc for `cut` at `node`. Corner cuts run from the
/// edge to `others(x)[0]` to the edge to `others(x)[1]`; the other cuts run
/// from the corner to the opposite edge.
fn arc(g: &FaceIndex, dec: &ThreeTreeDecomp, t: &DpTable, id: usize, cut: Cut) -> Vec<Station> {
    let node = &dec.nodes[id];
    let tri = node.tri;
    let rule = t.rules[id][slot(tri, cut)];
    let x = match cut {
        Cut::Corner(x) | Cut::Through(x) => x,
    };
    let [y1, y2] = others(tri, x);
    let cross = |a: Vertex, b: Vertex| Station::Crossing(edge(a, b));
    if rule == Rule::Empty {
        let f = Station::Face(g.get(tri));
        return match cut {
            Cut::Corner(_) => vec![cross(x, y1), f, cross(x, y2)],
            Cut::Through(_) => vec![Station::Vertex(x), f, cross(y1, y2)],
        };
    }
    let w = node.central.unwrap();
    let (c1, c2, c3) = (child_with(dec, id, x, y1), child_with(dec, id, x, y2), child_with(dec, id, y1, y2));
    let sub = |c: usize, cut: Cut, from: Station| -> Vec<Station> {
        let a = arc(g, dec, t, c, cut);
        if a.first() == Some(&from) {
            a
        } else {
            debug_assert_eq!(a.last(), Some(&from));
            a.into_iter().rev().collect()
        }
    };
    let pieces = match rule {
        Rule::CornerNear => vec![sub(c1, Cut::Corner(x), cross(x, y1)), sub(c2, Cut::Corner(x), cross(x, w))],
        Rule::CornerAround => vec![
            sub(c1, Cut::Corner(y1), cross(x, y1)),
            sub(c3, Cut::Corner(w), cross(y1, w)),
            sub(c2, Cut::Corner(y2), cross(y2, w)),
        ],
        Rule::CornerCenter => {
            let mut a = sub(c1, Cut::Through(w), Station::Vertex(w));
            a.reverse();
            vec![a, sub(c2, Cut::Through(w), Station::Vertex(w))]
        }
        Rule::ThroughFirst => vec![sub(c1, Cut::Through(x), Station::Vertex(x)), sub(c3, Cut::Corner(y1), cross(y1, w))],
        Rule::ThroughSecond => vec![sub(c2, Cut::Through(x), Station::Vertex(x)), sub(c3, Cut::Corner(y2), cross(y2, w))],
        Rule::ThroughCenter => vec![vec![Station::Vertex(x)], sub(c3, Cut::Through(w), Station::Vertex(w))],
        Rule::Empty => unreachable!(),
    };
    let mut out: Vec<Station> = Vec::new();
    for p in pieces {
        let skip = usize::from(!out.is_empty() && out.last() == p.first());
        out.extend_from_slice(&p[skip..]);
    }
    out
}

/// The optimum over all proper good curves of `g`, with a validated witness.
pub fn dp_optimal_collinear(g: &PlaneGraph, dec: &ThreeTreeDecomp) -> DpResult {
    let table = dp_table(dec);
    let root = dec.root;
    let tri = dec.nodes[root].tri;
    // Ties prefer corner cuts, then earlier corners.
    let mut best_cut = Cut::Corner(tri[0]);
    let mut best_internal = table.value(dec, root, best_cut);
    let mut best_count = best_internal;
    for cut in tri.map(Cut::Corner).into_iter().chain(tri.map(Cut::Through)) {
        let v = table.value(dec, root, cut);
        let total = v + usize::from(matches!(cut, Cut::Through(_)));
        best_internal = best_internal.max(v);
        if total > best_count {
            best_count = total;
            best_cut = cut;
        }
    }
    let idx = FaceIndex::new(g);
    let best = if best_count < 2 {
        // Running along an outer edge beats every cut through the inside.
        best_count = 2;
        GoodCurve::open(vec![Station::Vertex(tri[0]), Station::Vertex(tri[1])])
    } else {
        GoodCurve::open(arc(&idx, dec, &table, root, best_cut))
    };
    let rep = validate_curve(g, &best).expect("well-formed witness");
    assert!(rep.good && rep.proper, "witness curve is not proper: {:?}", rep.violations);
    assert_eq!(rep.vertex_count_on_curve, best_count);
    DpResult { table, best_count, best_internal, best }
}
