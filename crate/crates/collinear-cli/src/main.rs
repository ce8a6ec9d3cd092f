use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use collinear::applications::{free_set_size, parse_point_set, untangle, untangle_bound, universal_placement};
use collinear::cubic::{generate_triconnected_cubic, theorem4};
use collinear::curves::{parse_curve, validate_curve, GoodCurve};
use collinear::geometry::{cross_horizontal, fmt_q};
use collinear::oracle::{enumerate_curves, OracleError};
use collinear::plane_graph::{parse_plane_graph, samples, PlaneGraph};
use collinear::realize::{
    curve_to_drawing, labeling_from_curve, parse_drawing, place_free, verify_drawing, Drawing, Element, LabelingOrder,
};
use collinear::three_tree::{build_curve_bundle, decompose, dp_optimal_collinear, is_plane_3tree, random_plane_3tree};
use collinear::treewidth::{block_grid, identity_model, parse_grid_model, theorem5_curve, visit_bound, TreewidthError};

#[derive(Parser)]
#[command(name = "collinear", about = "Planar drawings with many collinear vertices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Output {
    /// Write the main artifact here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG rendering here.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    #[value(name = "3tree")]
    ThreeTree,
    Cubic,
    Grid,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    #[value(name = "3tree")]
    ThreeTree,
    Cubic,
    Grid,
    Identity,
    Dodecahedron,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a proper good curve through many vertices.
    Curve {
        graphs: Vec<PathBuf>,
        #[arg(long, value_enum)]
        method: Method,
        /// Grid-minor model, for `--method grid`.
        #[arg(long)]
        model: Option<PathBuf>,
        /// For `--method grid`: where to write the graph re-rooted at the
        /// face where the curve was opened.
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// With several graphs, `--out` names a directory.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Straight-line drawing with the curve's vertices on a line.
    Draw {
        graph: PathBuf,
        curve: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Optimal curve of a plane 3-tree and the per-node table.
    Dp {
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive search for the best proper good curve of a small graph.
    Oracle {
        graph: PathBuf,
        #[arg(long, default_value_t = 24)]
        oracle_limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Place a plane 3-tree with the curve's on-line vertices and crossing
    /// edges at the given points of a horizontal line.
    Place {
        graph: PathBuf,
        curve: PathBuf,
        /// One `x y` point per element in line order; unit spacing on
        /// `y = 0` if omitted.
        #[arg(long)]
        targets: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Planar redrawing that keeps some vertices of a drawing in place.
    Untangle {
        graph: PathBuf,
        drawing: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Planar drawing with vertices at every given point.
    Ups {
        graph: PathBuf,
        points: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Generate a test graph.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Vertex count, or the grid side for grid kinds.
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid vertices per branch set side, for `grid`.
        #[arg(long, default_value_t = 1)]
        block: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the grid-minor model; defaults to `<out>.model`.
        #[arg(long)]
        model_out: Option<PathBuf>,
    },
    /// Check a drawing or a curve against a graph.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long)]
        curve: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Verification(String),
    Guard(String),
    Failed(String),
}

impl Failure {
    fn class(&self) -> (&'static str, &String, u8) {
        match self {
            Failure::Input(m) => ("input", m, 2),
            Failure::Verification(m) => ("verification", m, 1),
            Failure::Guard(m) => ("guard", m, 3),
            Failure::Failed(m) => ("failure", m, 1),
        }
    }
}

type Run<T> = Result<T, Failure>;

fn input<E: std::fmt::Display>(what: &Path) -> impl Fn(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{}: {e}", what.display()))
}

fn failed<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Failed(e.to_string())
}

fn read(p: &Path) -> Run<String> {
    std::fs::read_to_string(p).map_err(input(p))
}

fn write(p: &Path, text: &str) -> Run<()> {
    std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn read_graph(p: &Path) -> Run<PlaneGraph> {
    parse_plane_graph(&read(p)?).map_err(input(p))
}

fn read_curve(g: &PlaneGraph, p: &Path) -> Run<GoodCurve> {
    parse_curve(g, &read(p)?).map_err(input(p))
}

/// What a command prints: the artifact when no `--out` is given, and the
/// report, which moves to standard error when the artifact takes standard
/// output.
#[derive(Default)]
struct Outcome {
    stdout: String,
    report: String,
}

/// Writes `artifact` to `out`, or keeps it for standard output.
fn emit(out: &Option<PathBuf>, artifact: &str, o: &mut Outcome) -> Run<()> {
    match out {
        Some(p) => write(p, artifact),
        None => {
            o.stdout.push_str(artifact);
            Ok(())
        }
    }
}

fn emit_drawing(g: &PlaneGraph, d: &Drawing, output: &Output, o: &mut Outcome) -> Run<()> {
    if let Some(p) = &output.svg {
        write(p, &d.to_svg(g))?;
    }
    emit(&output.out, &d.to_text(), o)
}

fn check_drawing(g: &PlaneGraph, d: &Drawing) -> Run<()> {
    let rep = verify_drawing(g, d).map_err(failed)?;
    if rep.ok() {
        Ok(())
    } else {
        Err(Failure::Verification(rep.summary()))
    }
}

/// Curve for one graph and its report lines.
fn curve_for(g: &PlaneGraph, method: Method, model: Option<&Path>) -> Run<(GoodCurve, Option<PlaneGraph>, String)> {
    let n = g.vertex_count();
    let (curve, rooted, want, extra) = match method {
        Method::ThreeTree => {
            if !is_plane_3tree(g) {
                return Err(Failure::Input("graph is not a plane 3-tree".into()));
            }
            let dec = decompose(g).map_err(failed)?;
            let b = build_curve_bundle(g, &dec).map_err(failed)?;
            (b.best().clone(), None, free_set_size(n), String::new())
        }
        Method::Cubic => {
            let c = theorem4(g).map_err(|e| match e {
                collinear::cubic::CubicError::NotCubic | collinear::cubic::CubicError::NotTriconnected => Failure::Input(e.to_string()),
                e => failed(e),
            })?;
            let extra = format!("charged {}\nlevels {}\n", c.charges.len(), c.levels);
            (c.curve, None, n.div_ceil(4), extra)
        }
        Method::Grid => {
            let p = model.ok_or_else(|| Failure::Input("--method grid needs --model".into()))?;
            let m = parse_grid_model(&read(p)?).map_err(input(p))?;
            let c = theorem5_curve(g, &m).map_err(|e| match e {
                TreewidthError::Model(_) | TreewidthError::TooSmall(_) => Failure::Input(e.to_string()),
                e => failed(e),
            })?;
            let extra = format!("grid_side {}\nsegments {}\n", m.g, c.segments.len());
            (c.open, Some(c.graph), visit_bound(m.g), extra)
        }
    };
    let host = rooted.as_ref().unwrap_or(g);
    let rep = validate_curve(host, &curve).map_err(failed)?;
    if !(rep.good && rep.proper) {
        return Err(Failure::Verification(format!("curve is not good and proper: {:?}", rep.violations)));
    }
    let got = rep.vertex_count_on_curve;
    if got < want {
        return Err(Failure::Verification(format!("curve has {got} vertices, expected at least {want}")));
    }
    let mut report = String::new();
    writeln!(report, "vertices {n}").ok();
    report.push_str(&extra);
    writeln!(report, "vertices_on_curve = {got}").ok();
    writeln!(report, "vertices_on_curve >= {want}").ok();
    Ok((curve, rooted, report))
}

fn curve_cmd(graphs: &[PathBuf], method: Method, model: Option<&Path>, graph_out: Option<&Path>, out: Option<&Path>, jobs: usize) -> Run<Outcome> {
    if graphs.is_empty() {
        return Err(Failure::Input("no graph given".into()));
    }
    let many = graphs.len() > 1;
    if many && matches!(method, Method::Grid) {
        return Err(Failure::Input("--method grid takes one graph".into()));
    }
    let one = |p: &PathBuf| -> Run<(String, String)> {
        let g = read_graph(p)?;
        let (c, rooted, report) = curve_for(&g, method, model)?;
        let host = rooted.as_ref().unwrap_or(&g);
        if let (Some(gp), Some(r)) = (graph_out, &rooted) {
            write(gp, &r.to_text())?;
        }
        Ok((c.to_text(host), report))
    };
    let results: Vec<Run<(String, String)>> = if jobs > 1 && many {
        let chunk = graphs.len().div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = graphs.chunks(chunk).map(|part| s.spawn(move || part.iter().map(one).collect::<Vec<_>>())).collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker thread")).collect()
        })
    } else {
        graphs.iter().map(one).collect()
    };
    let mut o = Outcome::default();
    for (p, r) in graphs.iter().zip(results) {
        let (curve, rep) = r?;
        if many {
            writeln!(o.report, "file {}", p.display()).ok();
            o.report.push_str(&rep);
            if let Some(dir) = out {
                let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                write(&dir.join(format!("{stem}.curve")), &curve)?;
            }
        } else {
            o.report.push_str(&rep);
            emit(&out.map(Path::to_path_buf), &curve, &mut o)?;
        }
    }
    Ok(o)
}

fn dp_cmd(graph: &Path, out: &Option<PathBuf>) -> Run<Outcome> {
    let g = read_graph(graph)?;
    if !is_plane_3tree(&g) {
        return Err(Failure::Input("graph is not a plane 3-tree".into()));
    }
    let dec = decompose(&g).map_err(failed)?;
    let r = dp_optimal_collinear(&g, &dec);
    let mut o = Outcome::default();
    o.report.push_str("# node: outer triangle; through each corner; corner cut at each corner\n");
    for (id, node) in dec.nodes.iter().enumerate() {
        if node.is_empty() {
            continue;
        }
        let [u, v, z] = node.tri;
        let t = r.table.values[id];
        writeln!(o.report, "node {id} ({u},{v},{z}): through {} {} {} corner {} {} {}", t[0], t[1], t[2], t[3], t[4], t[5]).ok();
    }
    writeln!(o.report, "best_count {}", r.best_count).ok();
    writeln!(o.report, "best_internal {}", r.best_internal).ok();
    emit(out, &r.best.to_text(&g), &mut o)?;
    Ok(o)
}

fn oracle_cmd(graph: &Path, limit: usize, out: &Option<PathBuf>) -> Run<Outcome> {
    let g = read_graph(graph)?;
    let r = enumerate_curves(&g, None, limit).map_err(|e| match e {
        OracleError::TooLarge { .. } => Failure::Guard(e.to_string()),
        e => failed(e),
    })?;
    let mut o = Outcome::default();
    writeln!(o.report, "max_vertices {}", r.max_vertices).ok();
    writeln!(o.report, "explored {}", r.explored).ok();
    writeln!(o.report, "exhaustive {}", r.exhaustive).ok();
    emit(out, &r.witness.to_text(&g), &mut o)?;
    Ok(o)
}

fn place_cmd(graph: &Path, curve: &Path, targets: &Option<PathBuf>, output: &Output) -> Run<Outcome> {
    let g = read_graph(graph)?;
    let c = read_curve(&g, curve)?;
    let base = labeling_from_curve(&g, &c).map_err(|e| Failure::Input(e.to_string()))?;
    let lab = match targets {
        None => base,
        Some(p) => {
            let pts = parse_point_set(&read(p)?).map_err(input(p))?;
            LabelingOrder::new(base.labels, base.order, pts.points).map_err(input(p))?
        }
    };
    let d = place_free(&g, &lab).map_err(failed)?;
    check_drawing(&g, &d)?;
    let y = lab.line_y();
    for (e, t) in lab.order.iter().zip(&lab.targets) {
        let at = match *e {
            Element::Vertex(v) => d.coords[v] == *t,
            Element::Edge((a, b)) => cross_horizontal(&d.coords[a], &d.coords[b], &y) == t.x,
        };
        if !at {
            return Err(Failure::Verification(format!("{e:?} is not at its target")));
        }
    }
    let mut o = Outcome::default();
    writeln!(o.report, "elements {}", lab.order.len()).ok();
    writeln!(o.report, "on_line {}", lab.s_vertices().len()).ok();
    writeln!(o.report, "line_y {}", fmt_q(&y)).ok();
    emit_drawing(&g, &d, output, &mut o)?;
    Ok(o)
}

fn untangle_cmd(graph: &Path, drawing: &Path, output: &Output) -> Run<Outcome> {
    let g = read_graph(graph)?;
    let bad = parse_drawing(&read(drawing)?).map_err(input(drawing))?;
    let r = untangle(&g, &bad.coords).map_err(failed)?;
    let mut d = r.drawing.clone();
    d.designated = r.fixed.clone();
    let plain = Drawing::new(d.coords.clone(), Vec::new());
    check_drawing(&g, &plain)?;
    let mut o = Outcome::default();
    writeln!(o.report, "fixed = {}", r.fixed.len()).ok();
    writeln!(o.report, "fixed >= {}", untangle_bound(g.vertex_count())).ok();
    writeln!(o.report, "fixed_vertices {}", r.fixed.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")).ok();
    emit_drawing(&g, &d, output, &mut o)?;
    Ok(o)
}

fn ups_cmd(graph: &Path, points: &Path, output: &Output) -> Run<Outcome> {
    let g = read_graph(graph)?;
    let p = parse_point_set(&read(points)?).map_err(input(points))?;
    let d = universal_placement(&g, &p).map_err(|e| match e {
        collinear::applications::ApplicationError::TooManyPoints { .. } | collinear::applications::ApplicationError::DuplicatePoints(..) => {
            Failure::Input(e.to_string())
        }
        e => failed(e),
    })?;
    check_drawing(&g, &Drawing::new(d.coords.clone(), Vec::new()))?;
    if let Some(i) = (0..p.len()).find(|&i| d.coords[d.designated[i]] != p.points[i]) {
        return Err(Failure::Verification(format!("point {i} is not covered")));
    }
    let mut o = Outcome::default();
    writeln!(o.report, "points {}", p.len()).ok();
    writeln!(o.report, "points <= {}", free_set_size(g.vertex_count())).ok();
    emit_drawing(&g, &d, output, &mut o)?;
    Ok(o)
}

fn gen_cmd(kind: GenKind, n: usize, seed: u64, block: usize, out: &Option<PathBuf>, model_out: &Option<PathBuf>) -> Run<Outcome> {
    let (g, model) = match kind {
        GenKind::ThreeTree => {
            if n < 3 {
                return Err(Failure::Input("a plane 3-tree needs at least 3 vertices".into()));
            }
            (random_plane_3tree(n, 0.3, &mut ChaCha8Rng::seed_from_u64(seed)), None)
        }
        GenKind::Cubic => (generate_triconnected_cubic(seed, n).map_err(|e| Failure::Input(e.to_string()))?, None),
        GenKind::Grid | GenKind::Identity => {
            if n < 1 || block < 1 {
                return Err(Failure::Input("grid side and block must be positive".into()));
            }
            let (g, m) = match kind {
                GenKind::Identity => identity_model(n),
                _ => block_grid(n, block, Some(seed)),
            };
            (g, Some(m))
        }
        GenKind::Dodecahedron => (samples::dodecahedron(), None),
    };
    let mut o = Outcome::default();
    if let Some(m) = model {
        let path = match (model_out, out) {
            (Some(p), _) => p.clone(),
            (None, Some(o)) => PathBuf::from(format!("{}.model", o.display())),
            (None, None) => return Err(Failure::Input("grid kinds need --out or --model-out".into())),
        };
        write(&path, &m.to_text())?;
    }
    emit(out, &g.to_text(), &mut o)?;
    Ok(o)
}

fn verify_cmd(graph: &Path, drawing: &Option<PathBuf>, curve: &Option<PathBuf>) -> Run<Outcome> {
    let g = read_graph(graph)?;
    if drawing.is_none() && curve.is_none() {
        return Err(Failure::Input("nothing to verify: give --drawing or --curve".into()));
    }
    let mut o = Outcome::default();
    if let Some(p) = drawing {
        let d = parse_drawing(&read(p)?).map_err(input(p))?;
        let rep = verify_drawing(&g, &d).map_err(input(p))?;
        if !rep.ok() {
            return Err(Failure::Verification(rep.summary()));
        }
        writeln!(o.report, "drawing ok designated {}", d.designated.len()).ok();
    }
    if let Some(p) = curve {
        let c = read_curve(&g, p)?;
        let rep = validate_curve(&g, &c).map_err(input(p))?;
        if !rep.good {
            return Err(Failure::Verification(format!("curve is not good: {:?}", rep.violations)));
        }
        if !c.closed && !rep.proper {
            return Err(Failure::Verification("curve is not proper".into()));
        }
        writeln!(o.report, "curve ok vertices_on_curve {}", rep.vertex_count_on_curve).ok();
    }
    Ok(o)
}

fn run(cli: Cli) -> Run<Outcome> {
    match cli.cmd {
        Cmd::Curve { graphs, method, model, graph_out, out, jobs } => {
            curve_cmd(&graphs, method, model.as_deref(), graph_out.as_deref(), out.as_deref(), jobs.max(1))
        }
        Cmd::Draw { graph, curve, output } => {
            let g = read_graph(&graph)?;
            let c = read_curve(&g, &curve)?;
            let d = curve_to_drawing(&g, &c).map_err(|e| Failure::Input(e.to_string()))?;
            check_drawing(&g, &d)?;
            let mut o = Outcome { report: format!("collinear {}\n", d.designated.len()), ..Default::default() };
            emit_drawing(&g, &d, &output, &mut o)?;
            Ok(o)
        }
        Cmd::Dp { graph, out } => dp_cmd(&graph, &out),
        Cmd::Oracle { graph, oracle_limit, out } => oracle_cmd(&graph, oracle_limit, &out),
        Cmd::Place { graph, curve, targets, output } => place_cmd(&graph, &curve, &targets, &output),
        Cmd::Untangle { graph, drawing, output } => untangle_cmd(&graph, &drawing, &output),
        Cmd::Ups { graph, points, output } => ups_cmd(&graph, &points, &output),
        Cmd::Gen { kind, n, seed, block, out, model_out } => gen_cmd(kind, n, seed, block, &out, &model_out),
        Cmd::Verify { graph, drawing, curve } => verify_cmd(&graph, &drawing, &curve),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let first = e.to_string().lines().next().unwrap_or("bad arguments").trim_start_matches("error: ").to_string();
            eprintln!("error input: {first}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(o) => {
            if o.stdout.is_empty() {
                print!("{}", o.report);
            } else {
                print!("{}", o.stdout);
                eprint!("{}", o.report);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (class, msg, code) = f.class();
            eprintln!("error {class}: {msg}");
            ExitCode::from(code)
        }
    }
}
