use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use collinear::geometry::Point;
use collinear::plane_graph::parse_plane_graph;
use collinear::realize::{parse_drawing, Drawing};

fn dir(name: &str) -> PathBuf {
    let d = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(cwd: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_collinear")).current_dir(cwd).args(args).output().unwrap()
}

fn ok(cwd: &Path, args: &[&str]) -> String {
    let o = run(cwd, args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout).unwrap()
}

fn lines(s: &str) -> Vec<&str> {
    s.lines().collect()
}

#[test]
fn three_tree_curve_report() {
    let d = dir("three_tree_curve_report");
    ok(&d, &["gen", "3tree", "--n", "100", "--seed", "11", "--out", "g"]);
    let out = ok(&d, &["curve", "--method", "3tree", "g", "--out", "c"]);
    assert!(lines(&out).contains(&"vertices_on_curve >= 13"), "{out}");
    let got: usize = out.lines().find_map(|l| l.strip_prefix("vertices_on_curve = ")).unwrap().parse().unwrap();
    assert!(got >= 13);
    let v = ok(&d, &["verify", "g", "--curve", "c"]);
    assert_eq!(v, format!("curve ok vertices_on_curve {got}\n"));
}

#[test]
fn dodecahedron_curve_report() {
    let d = dir("dodecahedron_curve_report");
    ok(&d, &["gen", "dodecahedron", "--out", "g"]);
    let out = ok(&d, &["curve", "--method", "cubic", "g", "--out", "c"]);
    assert!(lines(&out).contains(&"vertices_on_curve >= 5"), "{out}");
    ok(&d, &["draw", "g", "c", "--out", "dr", "--svg", "dr.svg"]);
    assert!(std::fs::read_to_string(d.join("dr.svg")).unwrap().starts_with("<svg"));
    ok(&d, &["verify", "g", "--drawing", "dr"]);
}

#[test]
fn grid_curve_report() {
    let d = dir("grid_curve_report");
    ok(&d, &["gen", "identity", "--n", "10", "--out", "g"]);
    let out = ok(&d, &["curve", "--method", "grid", "g", "--model", "g.model", "--graph-out", "h", "--out", "c"]);
    assert!(lines(&out).contains(&"vertices_on_curve >= 12"), "{out}");
    ok(&d, &["verify", "h", "--curve", "c"]);
    let o = run(&d, &["curve", "--method", "grid", "g"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tampered_drawing_fails_with_a_witness() {
    let d = dir("tampered_drawing_fails_with_a_witness");
    ok(&d, &["gen", "3tree", "--n", "30", "--seed", "2", "--out", "g"]);
    ok(&d, &["curve", "--method", "3tree", "g", "--out", "c"]);
    ok(&d, &["draw", "g", "c", "--out", "dr"]);
    let g = parse_plane_graph(&std::fs::read_to_string(d.join("g")).unwrap()).unwrap();
    let mut dr = parse_drawing(&std::fs::read_to_string(d.join("dr")).unwrap()).unwrap();
    // An inner vertex with an inner neighbour, moved far outside: the edge
    // to that neighbour leaves the outer triangle.
    let outer = g.outer_walk();
    let w = (0..g.vertex_count())
        .find(|w| !outer.contains(w) && g.rotation(*w).iter().any(|x| !outer.contains(x)))
        .unwrap();
    let far = dr.coords.iter().map(|p| p.x.clone()).max().unwrap() * collinear::geometry::q(10) + collinear::geometry::q(1000);
    dr.coords[w] = Point::new(far.clone(), far);
    std::fs::write(d.join("bad"), Drawing::new(dr.coords, dr.designated).to_text()).unwrap();
    let o = run(&d, &["verify", "g", "--drawing", "bad"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error verification: edges ("), "{err}");
    assert!(err.contains("intersect"));
}

#[test]
fn placement_hits_targets() {
    let d = dir("placement_hits_targets");
    ok(&d, &["gen", "3tree", "--n", "25", "--seed", "4", "--out", "g"]);
    ok(&d, &["curve", "--method", "3tree", "g", "--out", "c"]);
    let rep = ok(&d, &["place", "g", "c", "--out", "p0"]);
    let k: usize = rep.lines().find_map(|l| l.strip_prefix("elements ")).unwrap().parse().unwrap();
    let targets: String = (0..k).map(|i| format!("{} -3/2\n", 3 * i as i64 - 7)).collect();
    std::fs::write(d.join("t"), targets).unwrap();
    let rep = ok(&d, &["place", "g", "c", "--targets", "t", "--out", "p"]);
    assert!(rep.contains("line_y -3/2"));
    std::fs::write(d.join("short"), "0 0\n").unwrap();
    assert_eq!(run(&d, &["place", "g", "c", "--targets", "short"]).status.code(), Some(2));
}

#[test]
fn placement_and_untangling() {
    let d = dir("placement_and_untangling");
    ok(&d, &["gen", "3tree", "--n", "83", "--seed", "5", "--out", "g"]);
    let pts = "3 4\n-1 2\n7/3 -9\n0 0\n5 5\n-8 1\n2 -2\n11 6\n-4 -7\n1/2 1/3\n";
    std::fs::write(d.join("pts"), pts).unwrap();
    let rep = ok(&d, &["ups", "g", "pts", "--out", "u"]);
    assert!(rep.contains("points 10\npoints <= 10\n"));
    let u = parse_drawing(&std::fs::read_to_string(d.join("u")).unwrap()).unwrap();
    for (i, l) in pts.lines().enumerate() {
        let mut it = l.split_whitespace().map(|t| collinear::geometry::parse_q(t).unwrap());
        assert_eq!(u.coords[u.designated[i]], Point::new(it.next().unwrap(), it.next().unwrap()));
    }
    std::fs::write(d.join("more"), format!("{pts}9 9\n")).unwrap();
    assert_eq!(run(&d, &["ups", "g", "more"]).status.code(), Some(2));
    let rep = ok(&d, &["untangle", "g", "u", "--out", "t"]);
    assert!(rep.contains("fixed >= 4"));
}

#[test]
fn guard_and_input_errors() {
    let d = dir("guard_and_input_errors");
    ok(&d, &["gen", "3tree", "--n", "40", "--out", "g"]);
    let o = run(&d, &["oracle", "g", "--oracle-limit", "30"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8(o.stderr).unwrap().starts_with("error guard: "));
    assert_eq!(run(&d, &["gen", "cubic", "--n", "7"]).status.code(), Some(2));
    assert_eq!(run(&d, &["curve", "--method", "3tree", "missing"]).status.code(), Some(2));
    std::fs::write(d.join("junk"), "planegraph 2\nrot 0: 1\n").unwrap();
    let o = run(&d, &["verify", "junk", "--curve", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8(o.stderr).unwrap().lines().count(), 1);
}

#[test]
fn small_oracle_and_dp_agree() {
    let d = dir("small_oracle_and_dp_agree");
    ok(&d, &["gen", "3tree", "--n", "7", "--seed", "1", "--out", "g"]);
    let o = run(&d, &["oracle", "g"]);
    let oracle = String::from_utf8(o.stderr).unwrap();
    let dp = String::from_utf8(run(&d, &["dp", "g"]).stderr).unwrap();
    let a = oracle.lines().find_map(|l| l.strip_prefix("max_vertices ")).unwrap();
    let b = dp.lines().find_map(|l| l.strip_prefix("best_count ")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let d = dir("outputs_are_byte_identical_across_runs");
    let mut graphs = Vec::new();
    for s in 0..4 {
        let name = format!("g{s}");
        let a = ok(&d, &["gen", "3tree", "--n", "60", "--seed", &s.to_string()]);
        assert_eq!(a, ok(&d, &["gen", "3tree", "--n", "60", "--seed", &s.to_string()]));
        std::fs::write(d.join(&name), a).unwrap();
        graphs.push(name);
    }
    assert_ne!(std::fs::read(d.join("g0")).unwrap(), std::fs::read(d.join("g1")).unwrap());
    let c1 = ok(&d, &["curve", "--method", "3tree", "g0"]);
    assert_eq!(c1, ok(&d, &["curve", "--method", "3tree", "g0"]));
    std::fs::write(d.join("c0"), &c1).unwrap();
    let dr = ok(&d, &["draw", "g0", "c0", "--svg", "s1"]);
    assert_eq!(dr, ok(&d, &["draw", "g0", "c0", "--svg", "s2"]));
    assert_eq!(std::fs::read(d.join("s1")).unwrap(), std::fs::read(d.join("s2")).unwrap());
    std::fs::write(d.join("dr"), &dr).unwrap();
    assert_eq!(ok(&d, &["untangle", "g0", "dr"]), ok(&d, &["untangle", "g0", "dr"]));
    let mut args = vec!["curve", "--method", "3tree"];
    args.extend(graphs.iter().map(String::as_str));
    let serial = ok(&d, &args);
    args.extend(["--jobs", "3"]);
    assert_eq!(serial, ok(&d, &args));
    assert_eq!(serial.matches("file g").count(), 4);
}
