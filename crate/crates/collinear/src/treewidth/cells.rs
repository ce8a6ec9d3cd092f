//! Cells between four branch sets and routing inside them.
//!
//! Edges inside branch sets and reference edges are walls. The faces left
//! after removing the walls fall into groups joined through the remaining
//! edges; the cell at `(i, j)` is the group that touches all four of its
//! reference edges.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use super::model::{GridMinorModel, Pos, RefPoint};
use super::TreewidthError;
use crate::curves::Station;
use crate::plane_graph::{edge, Edge, FaceId, PlaneGraph, Vertex};

#[derive(Clone, Debug)]
pub struct CellMap {
    pub g: usize,
    /// Faces of each cell, keyed by `(i, j)` with `1 <= i, j < g`.
    pub cells: BTreeMap<Pos, BTreeSet<FaceId>>,
    /// Cell of each face, if any.
    pub cell_of: Vec<Option<Pos>>,
    pub walls: HashSet<Edge>,
    /// Position of each face when sorted by face key.
    rank: Vec<usize>,
    dual: Vec<Vec<(FaceId, Edge)>>,
}

/// Where a routed piece may go: some cells, plus at most one branch set
/// whose vertices it may visit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub cells: Vec<Pos>,
    pub branch: Option<Pos>,
}

/// One piece of the closed curve, from a point on one reference edge to a
/// point on another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub from: RefPoint,
    pub to: RefPoint,
    pub region: Region,
    /// Starts with the crossing of `from`, ends with the crossing of `to`.
    pub stations: Vec<Station>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    /// Between opposite sides of one cell.
    Traverse,
    /// Between adjacent sides of one cell.
    Turn,
    /// Through a vertex of a branch set, across the four cells around it.
    Getter,
}

impl CellMap {
    pub fn new(g: &PlaneGraph, m: &GridMinorModel) -> Result<CellMap, TreewidthError> {
        let own = m.owner(g.vertex_count());
        let mut walls: HashSet<Edge> = HashSet::new();
        for (a, b) in g.edges() {
            if own[a].is_some() && own[a] == own[b] {
                walls.insert(edge(a, b));
            }
        }
        walls.extend(m.refs_h.values().chain(m.refs_v.values()).map(|&(a, b)| edge(a, b)));
        // Face groups joined through non-wall edges.
        let nf = g.face_count();
        let dual = g.dual();
        let mut group = vec![usize::MAX; nf];
        let mut groups = 0;
        for s in 0..nf {
            if group[s] != usize::MAX {
                continue;
            }
            group[s] = groups;
            let mut q = VecDeque::from([s]);
            while let Some(f) = q.pop_front() {
                for &(h, e) in &dual[f] {
                    if !walls.contains(&e) && group[h] == usize::MAX {
                        group[h] = groups;
                        q.push_back(h);
                    }
                }
            }
            groups += 1;
        }
        let outer_group = group[g.outer_face()];
        let mut cells = BTreeMap::new();
        let mut cell_of = vec![None; nf];
        let mut taken: BTreeMap<usize, Pos> = BTreeMap::new();
        for i in 1..m.g {
            for j in 1..m.g {
                let sides = [RefPoint::h(i, j), RefPoint::v(i, j), RefPoint::h(i, j + 1), RefPoint::v(i + 1, j)];
                let mut common: Option<BTreeSet<usize>> = None;
                for r in sides {
                    let e = m.reference(r).ok_or_else(|| TreewidthError::cell((i, j), format!("{r} missing")))?;
                    let (l, rt) = g.edge_faces(e.0, e.1).ok_or_else(|| TreewidthError::cell((i, j), format!("{r} is not an edge")))?;
                    let here: BTreeSet<usize> = [group[l], group[rt]].into_iter().filter(|&x| x != outer_group).collect();
                    common = Some(match common {
                        None => here,
                        Some(c) => c.intersection(&here).copied().collect(),
                    });
                }
                let common = common.unwrap_or_default();
                if common.len() != 1 {
                    return Err(TreewidthError::cell((i, j), format!("{} face groups touch all four sides", common.len())));
                }
                let grp = *common.iter().next().unwrap();
                if let Some(p) = taken.insert(grp, (i, j)) {
                    return Err(TreewidthError::cell((i, j), format!("same faces as cell {p:?}")));
                }
                let faces: BTreeSet<FaceId> = (0..nf).filter(|&f| group[f] == grp).collect();
                for &f in &faces {
                    cell_of[f] = Some((i, j));
                }
                cells.insert((i, j), faces);
            }
        }
        let mut order: Vec<FaceId> = (0..nf).collect();
        let keys: Vec<String> = (0..nf).map(|f| g.face_key(f)).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut rank = vec![0; nf];
        for (k, &f) in order.iter().enumerate() {
            rank[f] = k;
        }
        Ok(CellMap { g: m.g, cells, cell_of, walls, rank, dual })
    }

    /// The face of cell `c` next to reference edge `r`.
    pub fn side_face(&self, g: &PlaneGraph, m: &GridMinorModel, c: Pos, r: RefPoint) -> Result<FaceId, TreewidthError> {
        let e = m.reference(r).ok_or_else(|| TreewidthError::Route(format!("{r} missing")))?;
        let (l, rt) = g.edge_faces(e.0, e.1).ok_or_else(|| TreewidthError::Route(format!("{r} is not an edge")))?;
        match (self.cell_of[l] == Some(c), self.cell_of[rt] == Some(c)) {
            (true, false) => Ok(l),
            (false, true) => Ok(rt),
            _ => Err(TreewidthError::Route(format!("{r} does not bound cell {c:?} on exactly one side"))),
        }
    }

    /// Shortest walk inside cell `c` from face `from` to the nearest face
    /// accepted by `goal`, as alternating face and crossing stations.
    /// Ties go to the face with the smaller key.
    fn dual_path(&self, c: Pos, from: FaceId, goal: impl Fn(FaceId) -> bool) -> Result<Vec<Station>, TreewidthError> {
        let inside = |f: FaceId| self.cell_of[f] == Some(c);
        let mut prev: BTreeMap<FaceId, (FaceId, Edge)> = BTreeMap::new();
        let mut seen = BTreeSet::from([from]);
        let mut q = VecDeque::from([from]);
        let dual = &self.dual;
        let mut end = None;
        while let Some(f) = q.pop_front() {
            if goal(f) {
                end = Some(f);
                break;
            }
            let mut next: Vec<(FaceId, Edge)> =
                dual[f].iter().copied().filter(|&(h, e)| inside(h) && !self.walls.contains(&e) && h != f).collect();
            next.sort_by_key(|&(h, e)| (self.rank[h], e));
            for (h, e) in next {
                if seen.insert(h) {
                    prev.insert(h, (f, e));
                    q.push_back(h);
                }
            }
        }
        let mut f = end.ok_or_else(|| TreewidthError::Route(format!("no path inside cell {c:?}")))?;
        let mut out = vec![Station::Face(f)];
        while let Some(&(p, e)) = prev.get(&f) {
            out.push(Station::Crossing(e));
            out.push(Station::Face(p));
            f = p;
        }
        out.reverse();
        Ok(out)
    }
}

fn cell_of_pair(a: RefPoint, b: RefPoint, g: usize) -> Option<Pos> {
    let ok = |c: (isize, isize)| c.0 >= 1 && c.1 >= 1 && (c.0 as usize) < g && (c.1 as usize) < g;
    a.cells().into_iter().find(|c| ok(*c) && b.cells().contains(c)).map(|c| (c.0 as usize, c.1 as usize))
}

/// The four sides of cell `c` in order around it.
fn sides(c: Pos) -> [RefPoint; 4] {
    [RefPoint::h(c.0, c.1), RefPoint::v(c.0, c.1), RefPoint::h(c.0, c.1 + 1), RefPoint::v(c.0 + 1, c.1)]
}

fn route_in_cell(
    g: &PlaneGraph,
    cells: &CellMap,
    m: &GridMinorModel,
    from: RefPoint,
    to: RefPoint,
    turn: bool,
) -> Result<Segment, TreewidthError> {
    let c = cell_of_pair(from, to, cells.g).ok_or_else(|| TreewidthError::Route(format!("{from} and {to} share no cell")))?;
    let s = sides(c);
    let (a, b) = (s.iter().position(|&r| r == from).unwrap(), s.iter().position(|&r| r == to).unwrap());
    let adjacent = (a + 1) % 4 == b || (b + 1) % 4 == a;
    if a == b || adjacent != turn {
        let want = if turn { "adjacent" } else { "opposite" };
        return Err(TreewidthError::Route(format!("{from} and {to} are not {want} sides of cell {c:?}")));
    }
    let fp = cells.side_face(g, m, c, from)?;
    let fq = cells.side_face(g, m, c, to)?;
    let mut stations = vec![Station::Crossing(m.reference(from).unwrap())];
    stations.extend(cells.dual_path(c, fp, |f| f == fq)?);
    stations.push(Station::Crossing(m.reference(to).unwrap()));
    let kind = if turn { SegmentKind::Turn } else { SegmentKind::Traverse };
    Ok(Segment { kind, from, to, region: Region { cells: vec![c], branch: None }, stations })
}

/// Across one cell between opposite sides.
pub fn route_type_a(g: &PlaneGraph, cells: &CellMap, m: &GridMinorModel, from: RefPoint, to: RefPoint) -> Result<Segment, TreewidthError> {
    route_in_cell(g, cells, m, from, to, false)
}

/// Across one cell between adjacent sides.
pub fn route_type_b(g: &PlaneGraph, cells: &CellMap, m: &GridMinorModel, from: RefPoint, to: RefPoint) -> Result<Segment, TreewidthError> {
    route_in_cell(g, cells, m, from, to, true)
}

/// Vertices of branch set `p` on faces of cell `c`, sorted.
fn facing(g: &PlaneGraph, cells: &CellMap, set: &BTreeSet<Vertex>, c: Pos) -> Vec<Vertex> {
    let mut out = BTreeSet::new();
    for &f in &cells.cells[&c] {
        for v in g.face_walk(f) {
            if set.contains(&v) {
                out.insert(v);
            }
        }
    }
    out.into_iter().collect()
}

/// Shortest path inside `set` from any vertex of `src` to any of `dst`.
fn shortest_between(g: &PlaneGraph, set: &BTreeSet<Vertex>, src: &[Vertex], dst: &[Vertex]) -> Option<Vec<Vertex>> {
    let dst: BTreeSet<Vertex> = dst.iter().copied().collect();
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut seen: BTreeSet<Vertex> = src.iter().copied().collect();
    let mut q: VecDeque<Vertex> = src.iter().copied().collect();
    while let Some(v) = q.pop_front() {
        if dst.contains(&v) {
            let mut path = vec![v];
            let mut x = v;
            while let Some(&p) = prev.get(&x) {
                path.push(p);
                x = p;
            }
            path.reverse();
            return Some(path);
        }
        let mut nb: Vec<Vertex> = g.rotation(v).iter().copied().filter(|w| set.contains(w)).collect();
        nb.sort_unstable();
        for w in nb {
            if seen.insert(w) {
                prev.insert(w, v);
                q.push_back(w);
            }
        }
    }
    None
}

/// Through a vertex of branch set `at = (i, j)`, from a side of the cell
/// above-left of it to a side of the cell below-right, or from above-right
/// to below-left. The accepted pairs are `refv (i-1, j-1) -> refv (i+1, j)`
/// and `refv (i-1, j) -> refv (i+1, j-1)`, in either direction.
pub fn route_type_c(
    g: &PlaneGraph,
    cells: &CellMap,
    m: &GridMinorModel,
    at: Pos,
    from: RefPoint,
    to: RefPoint,
) -> Result<Segment, TreewidthError> {
    let (i, j) = at;
    if i < 2 || j < 2 || i + 1 > m.g || j + 1 > m.g {
        return Err(TreewidthError::Route(format!("branch set {at:?} is on the grid border")));
    }
    let pairs = [(RefPoint::v(i - 1, j - 1), RefPoint::v(i + 1, j)), (RefPoint::v(i - 1, j), RefPoint::v(i + 1, j - 1))];
    let (top, bottom, rev) = match pairs.iter().find(|&&(a, b)| (a, b) == (from, to) || (b, a) == (from, to)) {
        Some(&(a, b)) => (a, b, a != from),
        None => return Err(TreewidthError::Route(format!("{from} and {to} are not a getter pair for {at:?}"))),
    };
    let c1 = (i - 1, top.j);
    let c3 = (i, bottom.j);
    let set: BTreeSet<Vertex> = m.branch_sets[&at].iter().copied().collect();
    let sp = facing(g, cells, &set, c1);
    let sq = facing(g, cells, &set, c3);
    let path = shortest_between(g, &set, &sp, &sq)
        .ok_or_else(|| TreewidthError::Route(format!("branch set {at:?} does not reach both cells")))?;
    let (vp, vq) = (path[0], *path.last().unwrap());
    let fp = cells.side_face(g, m, c1, top)?;
    let fq = cells.side_face(g, m, c3, bottom)?;
    let mut stations = vec![Station::Crossing(m.reference(top).unwrap())];
    stations.extend(cells.dual_path(c1, fp, |f| g.face_walk(f).contains(&vp))?);
    stations.extend(path.iter().map(|&v| Station::Vertex(v)));
    let mut back = cells.dual_path(c3, fq, |f| g.face_walk(f).contains(&vq))?;
    back.reverse();
    stations.extend(back);
    stations.push(Station::Crossing(m.reference(bottom).unwrap()));
    if rev {
        stations.reverse();
    }
    let region = Region { cells: vec![(i - 1, j - 1), (i - 1, j), (i, j - 1), (i, j)], branch: Some(at) };
    Ok(Segment { kind: SegmentKind::Getter, from, to, region, stations })
}

