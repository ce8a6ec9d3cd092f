//! One line per acceptance criterion. Runs without the test harness so the
//! lines show up in `cargo test` output; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use collinear::applications::{untangle, universal_placement, PointSet};
use collinear::cubic::{generate_triconnected_cubic, theorem4};
use collinear::curves::{curve_from_drawing, validate_curve, GoodCurve};
use collinear::geometry::{cross_horizontal, qr, Point, Q};
use collinear::oracle::{catalog_plane_3trees, enumerate_curves, DEFAULT_EDGE_LIMIT};
use collinear::plane_graph::{samples, PlaneGraph};
use collinear::realize::{curve_to_drawing, labeling_from_curve, place_free, verify_drawing, Drawing, Element, LabelingOrder};
use collinear::three_tree::{build_curve_bundle, check_counting_bounds, decompose, dp_optimal_collinear, node_bundles, random_plane_3tree};
use collinear::treewidth::{audit_regions, block_grid, identity_model, theorem5_curve, CellMap};

type Check = Result<String, String>;

fn ceil_div(a: usize, b: usize) -> usize {
    (a + b - 1) / b
}

/// Runs `f` on every item on all cores, results in input order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(4).min(items.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut out: Vec<(usize, R)> = std::thread::scope(|s| {
        let hs: Vec<_> = (0..threads)
            .map(|_| {
                s.spawn(|| {
                    let mut mine = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                        if i >= items.len() {
                            return mine;
                        }
                        mine.push((i, f(&items[i])));
                    }
                })
            })
            .collect();
        hs.into_iter().flat_map(|h| h.join().unwrap()).collect()
    });
    out.sort_by_key(|p| p.0);
    out.into_iter().map(|p| p.1).collect()
}

fn first_error(rs: Vec<Result<(), String>>) -> Result<(), String> {
    rs.into_iter().collect::<Result<Vec<()>, String>>().map(|_| ())
}

/// The 200 random plane 3-trees shared by the first two criteria.
fn three_tree_corpus() -> Vec<(usize, f64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    (0..200).map(|i| (rng.gen_range(10..=1000), rng.gen_range(0.0..0.9), 1000 + i)).collect()
}

fn corpus_graph(&(n, bias, seed): &(usize, f64, u64)) -> PlaneGraph {
    random_plane_3tree(n, bias, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn drawn_on_line(g: &PlaneGraph, c: &GoodCurve, want: usize) -> Result<usize, String> {
    let d = curve_to_drawing(g, c).map_err(|e| e.to_string())?;
    let rep = verify_drawing(g, &d).map_err(|e| e.to_string())?;
    if !rep.ok() {
        return Err(rep.summary());
    }
    if d.designated.len() < want {
        return Err(format!("{} vertices on the line, want {want}", d.designated.len()));
    }
    Ok(d.designated.len())
}

fn criterion1() -> Check {
    let corpus = three_tree_corpus();
    let rs = par_map(&corpus, |t| {
        let g = corpus_graph(t);
        let n = t.0;
        let dec = decompose(&g).map_err(|e| e.to_string())?;
        let b = build_curve_bundle(&g, &dec).map_err(|e| e.to_string())?;
        let want = ceil_div(n - 3, 8);
        let best = b.curves().iter().map(|c| c.vertex_count()).max().unwrap();
        if best < want {
            return Err(format!("n = {n}: best curve has {best} < {want}"));
        }
        drawn_on_line(&g, b.best(), want).map(|_| ()).map_err(|e| format!("n = {n}: {e}"))
    });
    first_error(rs)?;
    Ok(format!("{} plane 3-trees, n in [10, 1000]", corpus.len()))
}

fn criterion2() -> Check {
    let corpus = three_tree_corpus();
    let rs = par_map(&corpus, |t| {
        let g = corpus_graph(t);
        let dec = decompose(&g).map_err(|e| e.to_string())?;
        let nb = node_bundles(&g, &dec).map_err(|e| e.to_string())?;
        let rep = check_counting_bounds(&dec, &nb);
        match rep.first() {
            None if rep.ok() => Ok(()),
            f => Err(format!("n = {}: node {f:?}", t.0)),
        }
    });
    first_error(rs)?;
    Ok(format!("{} plane 3-trees, every node", corpus.len()))
}

fn criterion3() -> Check {
    let ns: Vec<usize> = (4..=200).step_by(2).collect();
    let rs = par_map(&ns, |&n| {
        let g = generate_triconnected_cubic(n as u64, n).map_err(|e| e.to_string())?;
        let c = theorem4(&g).map_err(|e| format!("n = {n}: {e}"))?;
        let rep = validate_curve(&g, &c.curve).map_err(|e| e.to_string())?;
        let want = ceil_div(n, 4);
        if !(rep.good && rep.proper) || rep.vertex_count_on_curve < want {
            return Err(format!("n = {n}: {} on curve, want {want}", rep.vertex_count_on_curve));
        }
        // Every skipped vertex is charged once to a curve vertex.
        let on: BTreeSet<usize> = rep.vertices_on_curve.iter().copied().collect();
        let off: BTreeSet<usize> = (0..n).filter(|v| !on.contains(v)).collect();
        let charged: BTreeSet<usize> = c.charges.keys().copied().collect();
        if charged != off || c.charges.values().any(|t| !on.contains(t)) {
            return Err(format!("n = {n}: charges do not cover the skipped vertices"));
        }
        let u = g.outer_walk()[0];
        for (&v, &k) in &c.load() {
            if k > 3 || (v == u && k > 1) {
                return Err(format!("n = {n}: vertex {v} carries {k} charges"));
            }
        }
        drawn_on_line(&g, &c.curve, want).map(|_| ()).map_err(|e| format!("n = {n}: {e}"))
    });
    first_error(rs)?;
    Ok(format!("{} triconnected cubic graphs, n = 4..200", ns.len()))
}

/// Positions (i, j) with both even, 4 <= i <= g' and 2 <= j <= g', where g'
/// is the largest multiple of four at most g - 2, counted one by one.
fn grid_count(g: usize) -> usize {
    let gp = (0..=g - 2).filter(|k| k % 4 == 0).max().unwrap();
    (1..=g).flat_map(|i| (1..=g).map(move |j| (i, j))).filter(|&(i, j)| i % 2 == 0 && j % 2 == 0 && i >= 4 && i <= gp && j >= 2 && j <= gp).count()
}

fn criterion4() -> Check {
    let mut seen = Vec::new();
    for g in [6, 10, 14, 20] {
        let want = grid_count(g);
        let (pg, m) = identity_model(g);
        let c = theorem5_curve(&pg, &m).map_err(|e| format!("g = {g}: {e}"))?;
        let rep = validate_curve(&c.graph, &c.open).map_err(|e| e.to_string())?;
        if !(rep.good && rep.proper) || rep.vertex_count_on_curve < want {
            return Err(format!("g = {g}: {} on curve, want {want}", rep.vertex_count_on_curve));
        }
        let cells = CellMap::new(&pg, &m).map_err(|e| e.to_string())?;
        audit_regions(&pg, &cells, &m, &c.segments).map_err(|e| e.to_string())?;
        seen.push(format!("N({g}) = {want}: {}", rep.vertex_count_on_curve));
    }
    if grid_count(6) != 2 || grid_count(10) != 12 {
        return Err("grid count differs from N(6) = 2, N(10) = 12".into());
    }
    Ok(seen.join(", "))
}

fn criterion5() -> Check {
    let cases: Vec<u64> = (0..100).collect();
    let rs = par_map(&cases, |&s| {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + s);
        let n = rng.gen_range(5..=250);
        let g = random_plane_3tree(n, rng.gen_range(0.0..0.9), &mut rng);
        let dec = decompose(&g).map_err(|e| e.to_string())?;
        let b = build_curve_bundle(&g, &dec).map_err(|e| e.to_string())?;
        let base = labeling_from_curve(&g, b.best()).map_err(|e| e.to_string())?;
        let y = qr(rng.gen_range(-50..50), rng.gen_range(1..9));
        let mut x = qr(rng.gen_range(-100..100), rng.gen_range(1..9));
        let mut targets = Vec::new();
        for _ in 0..base.order.len() {
            targets.push(Point::new(x.clone(), y.clone()));
            x += qr(rng.gen_range(1..40), rng.gen_range(1..13));
        }
        let lab = LabelingOrder::new(base.labels, base.order, targets).map_err(|e| e.to_string())?;
        let d = place_free(&g, &lab).map_err(|e| format!("seed {s}: {e}"))?;
        for (e, t) in lab.order.iter().zip(&lab.targets) {
            let hit = match *e {
                Element::Vertex(v) => d.coords[v] == *t,
                Element::Edge((a, b)) => {
                    let (pa, pb) = (&d.coords[a], &d.coords[b]);
                    (pa.y < y) != (pb.y < y) && pa.y != y && pb.y != y && cross_horizontal(pa, pb, &y) == t.x
                }
            };
            if !hit {
                return Err(format!("seed {s}: {e:?} misses its target"));
            }
        }
        let rep = verify_drawing(&g, &d).map_err(|e| e.to_string())?;
        if rep.ok() {
            Ok(())
        } else {
            Err(format!("seed {s}: {}", rep.summary()))
        }
    });
    first_error(rs)?;
    Ok("100 plane 3-trees with random increasing targets".into())
}

fn criterion6() -> Check {
    let mut graphs = Vec::new();
    for m in 0..=5 {
        graphs.extend(catalog_plane_3trees(m).map_err(|e| e.to_string())?);
    }
    let rs = par_map(&graphs, |g| {
        let dp = dp_optimal_collinear(g, &decompose(g).map_err(|e| e.to_string())?);
        let o = enumerate_curves(g, None, DEFAULT_EDGE_LIMIT).map_err(|e| e.to_string())?;
        if !o.exhaustive || o.max_vertices != dp.best_count {
            return Err(format!("{} vertices: dp {} oracle {}", g.vertex_count(), dp.best_count, o.max_vertices));
        }
        Ok(())
    });
    first_error(rs)?;
    let mut mins = Vec::new();
    for m in 1..=7 {
        let cat = catalog_plane_3trees(m).map_err(|e| e.to_string())?;
        let vals = par_map(&cat, |g| dp_optimal_collinear(g, &decompose(g).unwrap()).best_internal);
        let min = vals.into_iter().min().unwrap();
        if min != ceil_div(m + 2, 3) {
            return Err(format!("m = {m}: minimum {min}, want {}", ceil_div(m + 2, 3)));
        }
        mins.push(min.to_string());
    }
    Ok(format!("{} graphs with m <= 5 agree; minima for m = 1..7: {}", graphs.len(), mins.join(" ")))
}

fn criterion7() -> Check {
    let mut pairs: Vec<(PlaneGraph, GoodCurve)> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let g = random_plane_3tree(rng.gen_range(8..120), rng.gen_range(0.0..0.9), &mut rng);
        let b = build_curve_bundle(&g, &decompose(&g).unwrap()).map_err(|e| e.to_string())?;
        pairs.push((g.clone(), b.best().clone()));
    }
    for n in (6..=62).step_by(4) {
        let g = generate_triconnected_cubic(77 + n as u64, n).map_err(|e| e.to_string())?;
        let c = theorem4(&g).map_err(|e| e.to_string())?;
        pairs.push((g, c.curve));
    }
    for (g, s, seed) in [(6, 1, 1), (6, 2, 2), (7, 1, 3), (8, 1, 4), (6, 3, 5)] {
        let (pg, m) = block_grid(g, s, Some(seed));
        let c = theorem5_curve(&pg, &m).map_err(|e| e.to_string())?;
        pairs.push((c.graph, c.open));
    }
    let small = [samples::cube(), samples::octahedron(), samples::prism(), samples::cycle(5), samples::k4()];
    for g in small.into_iter().chain(catalog_plane_3trees(3).unwrap()).chain(catalog_plane_3trees(4).unwrap().into_iter().take(2)) {
        let o = enumerate_curves(&g, None, DEFAULT_EDGE_LIMIT).map_err(|e| e.to_string())?;
        pairs.push((g, o.witness));
    }
    if pairs.len() != 50 {
        return Err(format!("corpus has {} pairs", pairs.len()));
    }
    let rs = par_map(&pairs, |(g, c)| {
        let d = curve_to_drawing(g, c).map_err(|e| e.to_string())?;
        let want = c.vertex_count();
        if d.designated.len() < 2 {
            return Err("fewer than two vertices on the line".into());
        }
        let (p0, p1) = (&d.coords[d.designated[0]], &d.coords[d.designated[1]]);
        let back = curve_from_drawing(g, &d, p0, p1).map_err(|e| e.to_string())?;
        let rep = validate_curve(g, &back).map_err(|e| e.to_string())?;
        if !rep.good || rep.vertex_count_on_curve < want {
            return Err(format!("{} vertices back, {want} before", rep.vertex_count_on_curve));
        }
        Ok(())
    });
    first_error(rs)?;
    Ok("50 graph and curve pairs".into())
}

fn isqrt_up(k: usize) -> usize {
    let mut r = 0;
    while r * r < k {
        r += 1;
    }
    r
}

fn random_point(rng: &mut ChaCha8Rng) -> Point {
    Point::new(qr(rng.gen_range(-500..500), rng.gen_range(1..11)), qr(rng.gen_range(-500..500), rng.gen_range(1..11)))
}

fn distinct_points(rng: &mut ChaCha8Rng, k: usize) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    while out.len() < k {
        let p = random_point(rng);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn criterion8() -> Check {
    let cases: Vec<(usize, u64)> = [19, 83, 163].iter().flat_map(|&n| (0..3).map(move |s| (n, s))).collect();
    let rs = par_map(&cases, |&(n, s)| {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64 * 100 + s);
        let g = random_plane_3tree(n, rng.gen_range(0.0..0.9), &mut rng);
        let k = ceil_div(n - 3, 8);
        let pts = distinct_points(&mut rng, k);
        let d = universal_placement(&g, &PointSet { points: pts.clone() }).map_err(|e| format!("n = {n}: {e}"))?;
        let hit: BTreeSet<usize> = d.designated.iter().copied().collect();
        if hit.len() != k || (0..k).any(|i| d.coords[d.designated[i]] != pts[i]) {
            return Err(format!("n = {n}: points not covered"));
        }
        if !verify_drawing(&g, &Drawing::new(d.coords.clone(), Vec::new())).map_err(|e| e.to_string())?.ok() {
            return Err(format!("n = {n}: placement not planar"));
        }
        // Corrupt the placement: move a third of the vertices anywhere.
        let mut bad = d.coords.clone();
        for v in 0..n {
            if rng.gen_bool(0.33) {
                loop {
                    let p = random_point(&mut rng);
                    if !bad.contains(&p) {
                        bad[v] = p;
                        break;
                    }
                }
            }
        }
        let u = untangle(&g, &bad).map_err(|e| format!("n = {n}: {e}"))?;
        let want = isqrt_up(k);
        if u.fixed.len() < want || u.fixed.iter().any(|&v| u.drawing.coords[v] != bad[v]) {
            return Err(format!("n = {n}: {} fixed, want {want}", u.fixed.len()));
        }
        if !verify_drawing(&g, &Drawing::new(u.drawing.coords.clone(), Vec::new())).map_err(|e| e.to_string())?.ok() {
            return Err(format!("n = {n}: untangled drawing not planar"));
        }
        Ok(u.fixed.len())
    });
    let fixed: Vec<usize> = rs.into_iter().collect::<Result<_, _>>()?;
    Ok(format!("n = 19, 83, 163, three seeds each; fixed counts {fixed:?}"))
}

fn main() -> ExitCode {
    let criteria: [(usize, fn() -> Check); 8] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
    ];
    let mut failed = 0;
    for (k, f) in criteria {
        let start = std::time::Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("criterion {k}: pass ({detail}; {secs:.1}s)"),
            Err(e) => {
                failed += 1;
                println!("criterion {k}: FAIL ({e}; {secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
