//! Curves through many vertices of a plane graph that carries a large grid
//! minor. The curve snakes through the cells of the model and picks up one
//! vertex from each branch set at an even position in a central block.

mod cells;
mod model;

use std::collections::BTreeSet;

use thiserror::Error;

pub use cells::{route_type_a, route_type_b, route_type_c, CellMap, Region, Segment, SegmentKind};
pub use model::{
    block_grid, guaranteed_grid_side, identity_model, parse_grid_model, validate_model, GridMinorModel, ModelIssue,
    ModelParseError, ModelReport, Pos, RefKind, RefPoint,
};

use crate::curves::{cut_closed_curve, validate_curve, CurveError, GoodCurve, Station};
use crate::plane_graph::PlaneGraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreewidthError {
    #[error("invalid grid model: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    Model(Vec<ModelIssue>),
    #[error(transparent)]
    Parse(#[from] ModelParseError),
    #[error("grid side {0} is too small, need at least 6")]
    TooSmall(usize),
    #[error("cell {pos:?}: {msg}")]
    Cell { pos: Pos, msg: String },
    #[error("routing failed: {0}")]
    Route(String),
    #[error("region audit failed: {0}")]
    Audit(String),
    #[error("curve visits {got} vertices, expected at least {want}")]
    Count { got: usize, want: usize },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

impl TreewidthError {
    pub(crate) fn cell(pos: Pos, msg: String) -> Self {
        TreewidthError::Cell { pos, msg }
    }
}

/// Largest multiple of four that is at most `g - 2`.
pub fn snake_extent(g: usize) -> usize {
    g.saturating_sub(2) / 4 * 4
}

/// Branch sets the curve visits: even `i` in `4..=g'` and even `j` in
/// `2..=g'`, with `g' = snake_extent(g)`.
pub fn visited_positions(g: usize) -> Vec<Pos> {
    let gp = snake_extent(g);
    let mut out = Vec::new();
    for j in (2..=gp).step_by(2) {
        for i in (4..=gp).step_by(2) {
            out.push((i, j));
        }
    }
    out
}

pub fn visit_bound(g: usize) -> usize {
    visited_positions(g).len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Traverse(RefPoint, RefPoint),
    Turn(RefPoint, RefPoint),
    Getter(Pos, RefPoint, RefPoint),
}

impl Step {
    fn ends(&self) -> (RefPoint, RefPoint) {
        match *self {
            Step::Traverse(a, b) | Step::Turn(a, b) | Step::Getter(_, a, b) => (a, b),
        }
    }
}

/// Getters down column `j`, alternating between the two diagonal pairings,
/// starting with the one entering from the left cell column when `left`.
fn column(gp: usize, j: usize, left: bool) -> Vec<Step> {
    let v = RefPoint::v;
    (4..=gp)
        .step_by(2)
        .enumerate()
        .map(|(k, i)| {
            if (k % 2 == 0) == left {
                Step::Getter((i, j), v(i - 1, j - 1), v(i + 1, j))
            } else {
                Step::Getter((i, j), v(i - 1, j), v(i + 1, j - 1))
            }
        })
        .collect()
}

/// The closed sequence of steps for grid side `g`.
///
/// Columns `j = 2, 4, ..., g'` are walked alternately down and up. A down
/// column ends in cell row `g' + 1` and turns into the next column there;
/// an up column ends in cell row 2 and turns there. After the last column
/// the curve climbs to cell row 1, runs back to column 1 and drops into
/// the first column.
pub fn snake_plan(g: usize) -> Result<Vec<Step>, TreewidthError> {
    let gp = snake_extent(g);
    if gp < 4 {
        return Err(TreewidthError::TooSmall(g));
    }
    let (h, v) = (RefPoint::h, RefPoint::v);
    let mut steps = Vec::new();
    for j in (2..=gp).step_by(2) {
        if (j / 2) % 2 == 1 {
            steps.extend(column(gp, j, true));
            steps.push(Step::Turn(v(gp + 1, j), h(gp + 1, j + 1)));
            steps.push(Step::Turn(h(gp + 1, j + 1), v(gp + 1, j + 1)));
        } else {
            steps.extend(column(gp, j, false).into_iter().rev().map(|s| match s {
                Step::Getter(p, a, b) => Step::Getter(p, b, a),
                other => other,
            }));
            if j < gp {
                steps.push(Step::Turn(v(3, j), h(2, j + 1)));
                steps.push(Step::Turn(h(2, j + 1), v(3, j + 1)));
            }
        }
    }
    steps.push(Step::Traverse(v(3, gp), v(2, gp)));
    steps.push(Step::Turn(v(2, gp), h(1, gp)));
    for b in (2..gp).rev() {
        steps.push(Step::Traverse(h(1, b + 1), h(1, b)));
    }
    steps.push(Step::Turn(h(1, 2), v(2, 1)));
    steps.push(Step::Traverse(v(2, 1), v(3, 1)));
    Ok(steps)
}

/// Checks that every segment stays in its own region and that consecutive
/// segments meet on exactly one reference edge.
pub fn audit_regions(g: &PlaneGraph, cells: &CellMap, m: &GridMinorModel, segs: &[Segment]) -> Result<(), TreewidthError> {
    let fail = |k: usize, msg: String| Err(TreewidthError::Audit(format!("segment {k}: {msg}")));
    let own = m.owner(g.vertex_count());
    let mut used_cells = BTreeSet::new();
    let mut used_branch = BTreeSet::new();
    let mut junctions = BTreeSet::new();
    for (k, s) in segs.iter().enumerate() {
        let next = &segs[(k + 1) % segs.len()];
        if s.to != next.from {
            return fail(k, format!("ends on {} but the next starts on {}", s.to, next.from));
        }
        if !junctions.insert(s.to) {
            return fail(k, format!("{} is a junction twice", s.to));
        }
        for &c in &s.region.cells {
            if !used_cells.insert(c) {
                return fail(k, format!("cell {c:?} is in two regions"));
            }
        }
        if let Some(b) = s.region.branch {
            if !used_branch.insert(b) {
                return fail(k, format!("branch set {b:?} is in two regions"));
            }
        }
        let st = &s.stations;
        let cross = |r: RefPoint| m.reference(r).map(Station::Crossing);
        if st.len() < 3 || st.first().copied() != cross(s.from) || st.last().copied() != cross(s.to) {
            return fail(k, "does not run from its first reference edge to its last".into());
        }
        let inside = |f: usize| cells.cell_of[f].is_some_and(|c| s.region.cells.contains(&c));
        for x in &st[1..st.len() - 1] {
            match *x {
                Station::Face(f) if !inside(f) => return fail(k, format!("face {f} outside the region")),
                Station::Crossing(e) => {
                    let (l, r) = g.edge_faces(e.0, e.1).expect("edge of the graph");
                    if cells.walls.contains(&e) || !inside(l) || !inside(r) {
                        return fail(k, format!("crosses {e:?} on the region boundary"));
                    }
                }
                Station::Vertex(v) if s.region.branch.is_none() || own[v] != s.region.branch => {
                    return fail(k, format!("vertex {v} outside the region's branch set"));
                }
                _ => {}
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct GridCurve {
    pub segments: Vec<Segment>,
    pub closed: GoodCurve,
    /// The graph with the outer face moved to where the closed curve was
    /// opened.
    pub graph: PlaneGraph,
    pub open: GoodCurve,
    pub vertex_count: usize,
}

pub fn route_step(g: &PlaneGraph, cells: &CellMap, m: &GridMinorModel, s: Step) -> Result<Segment, TreewidthError> {
    match s {
        Step::Traverse(a, b) => route_type_a(g, cells, m, a, b),
        Step::Turn(a, b) => route_type_b(g, cells, m, a, b),
        Step::Getter(p, a, b) => route_type_c(g, cells, m, p, a, b),
    }
}

/// Closed good curve through at least [`visit_bound`] vertices, and the
/// proper curve obtained by opening it inside one of its faces.
pub fn theorem5_curve(g: &PlaneGraph, m: &GridMinorModel) -> Result<GridCurve, TreewidthError> {
    let rep = validate_model(g, m);
    if !rep.ok() {
        return Err(TreewidthError::Model(rep.issues));
    }
    let steps = snake_plan(m.g)?;
    let cells = CellMap::new(g, m)?;
    let segments: Vec<Segment> = steps.iter().map(|&s| route_step(g, &cells, m, s)).collect::<Result<_, _>>()?;
    debug_assert!(steps.iter().zip(&segments).all(|(s, g)| s.ends() == (g.from, g.to)));
    audit_regions(g, &cells, m, &segments)?;
    let mut stations = Vec::new();
    for s in &segments {
        stations.extend_from_slice(&s.stations[..s.stations.len() - 1]);
    }
    let closed = GoodCurve::closed(stations);
    let r = validate_curve(g, &closed)?;
    if !r.good {
        return Err(TreewidthError::Audit(format!("closed curve is not good: {:?}", r.violations)));
    }
    let want = visit_bound(m.g);
    if r.vertex_count_on_curve < want {
        return Err(TreewidthError::Count { got: r.vertex_count_on_curve, want });
    }
    let (graph, open) = cut_closed_curve(g, &closed)?;
    let r2 = validate_curve(&graph, &open)?;
    if !(r2.good && r2.proper) || r2.vertices_on_curve != r.vertices_on_curve {
        return Err(TreewidthError::Audit("opened curve is not proper".into()));
    }
    Ok(GridCurve { segments, closed, graph, open, vertex_count: r.vertex_count_on_curve })
}
