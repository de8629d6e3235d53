//! The `trifol` command-line front end.
//!
//! Every subcommand fills one [`Report`]; `--json` prints it as JSON, the
//! default prints its text rendering. Exit codes: `0` when every requested
//! check passes, `1` when a mathematical check fails, `2` for input or usage
//! errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cover::cyclic_cover;
use crate::direction::{check_local_orientation, Direction};
use crate::expansion::check_expanding;
use crate::fibration::{
    build_fibration_map, default_theta, extract_fiber, render_weights, solve_triangle_system, verify_vertex_links,
    FibrationError,
};
use crate::generate::{pentachoron, product, ClosedSurface};
use crate::germ::{build_germ_with, germ_acyclic, AreaFiller, GermError, GermOptions};
use crate::isoperimetric::isoperimetric_constant;
use crate::normal::{surface_stats, validate_normal_vector};
use crate::report::{InputDigest, Report, Verdict};
use crate::simplex::FeasibilityOutcome;
use crate::triangulation::{Triangulation, VertexId};
use crate::Rational;

#[derive(Debug, Parser)]
#[command(name = "trifol", version, about = "Check foliation structures on triangulated closed 3-manifolds")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Leave timing fields out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a triangulation and check a direction on it.
    Check {
        tri: PathBuf,
        dir: PathBuf,
        /// Also build the N-fold cyclic cover from solver weights and re-check it.
        #[arg(long, value_name = "N")]
        cover: Option<usize>,
    },
    /// Solve the triangle equations, verify vertex links and extract a fiber.
    Fiber {
        tri: PathBuf,
        dir: PathBuf,
        /// Point of the unit circle, as `p/q`.
        #[arg(long, value_name = "p/q")]
        theta: Option<String>,
        /// Write PREFIX.wts and PREFIX.nsv.
        #[arg(long, value_name = "PREFIX")]
        out: Option<PathBuf>,
    },
    /// Build the combinatorial m-germ at a base vertex.
    Germ {
        tri: PathBuf,
        dir: PathBuf,
        #[arg(long, value_name = "N")]
        base: VertexId,
        #[arg(long, value_name = "N")]
        m: usize,
        /// Write PREFIX.dot.
        #[arg(long, value_name = "PREFIX")]
        out: Option<PathBuf>,
    },
    /// Write a generated triangulation (and direction, for products).
    Generate {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long, value_name = "N", default_value_t = 3)]
        layers: usize,
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Pentachoron,
    ProductS2,
    ProductT2,
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let report = dispatch(&cli);
    let text = if cli.json { report.to_json() } else { report.to_text() };
    let _ = stdout.write_all(text.as_bytes());
    if let Some(e) = &report.error {
        let _ = writeln!(stderr, "trifol: {e}");
    }
    report.status.exit_code()
}

pub fn dispatch(cli: &Cli) -> Report {
    let timing = !cli.no_timing;
    let (mut report, result) = match &cli.command {
        Command::Check { tri, dir, cover } => {
            let mut r = Report::new("check", timing);
            let res = cmd_check(&mut r, tri, dir, *cover);
            (r, res)
        }
        Command::Fiber { tri, dir, theta, out } => {
            let mut r = Report::new("fiber", timing);
            let res = cmd_fiber(&mut r, tri, dir, theta.as_deref(), out.as_deref());
            (r, res)
        }
        Command::Germ { tri, dir, base, m, out } => {
            let mut r = Report::new("germ", timing);
            let res = cmd_germ(&mut r, tri, dir, *base, *m, out.as_deref());
            (r, res)
        }
        Command::Generate { kind, layers, out } => {
            let mut r = Report::new("generate", timing);
            let res = cmd_generate(&mut r, *kind, *layers, out);
            (r, res)
        }
    };
    if let Err(e) = result {
        report.fail_with_error(e);
    }
    report
}

type CmdResult = Result<(), String>;

fn read_input(report: &mut Report, path: &Path) -> Result<String, String> {
    let bytes = fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    report.inputs.push(InputDigest::new(&path.display().to_string(), &bytes));
    String::from_utf8(bytes).map_err(|_| format!("{} is not UTF-8 text", path.display()))
}

fn load(report: &mut Report, tri: &Path, dir: &Path) -> Result<(Triangulation, Direction), String> {
    let tri_text = read_input(report, tri)?;
    let dir_text = read_input(report, dir)?;
    let t = Triangulation::parse(&tri_text).map_err(|e| format!("{}: {e}", tri.display()))?;
    let d = Direction::parse(&t, &dir_text).map_err(|e| format!("{}: {e}", dir.display()))?;
    Ok((t, d))
}

fn write_output(path: PathBuf, text: &str) -> CmdResult {
    fs::write(&path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn with_extension(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn verdict(pass: bool) -> Verdict {
    if pass {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn triangulation_check(report: &mut Report, t: &Triangulation) {
    report.check("triangulation", || {
        let f = t.f_vector();
        (
            Verdict::Pass,
            format!("closed simplicial 3-manifold, f-vector {f:?}, {} component(s)", t.component_count()),
            json!({
                "f_vector": [f.0, f.1, f.2, f.3],
                "euler_characteristic": t.euler_characteristic(),
                "components": t.component_count(),
                "max_edge_degree": t.max_edge_degree(),
            }),
        )
    });
}

/// Runs the three local-orientation checks and returns whether the direction
/// is recurrent.
fn local_orientation_checks(report: &mut Report, prefix: &str, t: &Triangulation, d: &Direction) -> bool {
    let start = std::time::Instant::now();
    let lo = check_local_orientation(t, d).expect("direction parsed against this triangulation");
    let ms = Some(start.elapsed().as_secs_f64() * 1e3);
    let lc = &lo.link_condition;
    report.push(
        &format!("{prefix}link_condition"),
        verdict(lc.pass),
        if lc.pass {
            "o(v) and i(v) nonempty and connected at every vertex".into()
        } else {
            format!("fails at vertices {:?}", lc.failing_vertices)
        },
        lc,
        ms,
    );
    let to = &lo.tet_order;
    report.push(
        &format!("{prefix}tet_order"),
        verdict(to.pass),
        if to.pass {
            "every tetrahedron is totally ordered".into()
        } else {
            format!("{} tetrahedra contain a directed 3-cycle", to.failures.len())
        },
        to,
        ms,
    );
    let rc = &lo.recurrence;
    report.push(
        &format!("{prefix}recurrence"),
        verdict(rc.pass),
        format!("{} strongly connected component(s)", rc.scc_count),
        rc,
        ms,
    );
    rc.pass
}

fn cmd_check(report: &mut Report, tri: &Path, dir: &Path, cover: Option<usize>) -> CmdResult {
    let (t, d) = load(report, tri, dir)?;
    if cover == Some(0) {
        return Err("--cover needs at least one sheet".into());
    }
    triangulation_check(report, &t);
    let recurrent = local_orientation_checks(report, "", &t, &d);

    report.check("expanding", || match check_expanding(&t, &d) {
        Ok(e) => (
            Verdict::Info,
            format!(
                "Γ has {} nodes, {} arcs, {} SCCs; expanding: {}",
                e.graph.nodes.len(),
                e.graph.arcs.len(),
                e.graph.scc_count,
                e.expanding
            ),
            json!({
                "expanding": e.expanding,
                "nodes": e.graph.nodes.len(),
                "arcs": e.graph.arcs.len(),
                "scc_count": e.graph.scc_count,
                "witness_face": e.witness_face,
            }),
        ),
        Err(e) => (Verdict::Info, format!("not computed: {e}"), json!({ "skipped": e.to_string() })),
    });

    if recurrent {
        report.check("isoperimetric", || {
            let k = isoperimetric_constant(&t, &d).expect("recurrent");
            (
                Verdict::Info,
                format!(
                    "closed walk of length {}, c1 = {}, max edge degree = {}, K = {}",
                    k.walk.len() - 1,
                    k.c1,
                    k.max_edge_degree,
                    k.k
                ),
                serde_json::to_value(&k).expect("constants serialize"),
            )
        });
    }

    if let Some(n) = cover {
        cover_checks(report, &t, &d, n);
    }
    Ok(())
}

fn cover_checks(report: &mut Report, t: &Triangulation, d: &Direction, n: usize) {
    let weights = match solve_triangle_system(t, d) {
        Ok((_, FeasibilityOutcome::Feasible { weights })) => weights,
        Ok((_, FeasibilityOutcome::Infeasible { .. })) => {
            report.push("cover", Verdict::Fail, "triangle system is infeasible".into(), json!({ "sheets": n }), None);
            return;
        }
        Err(e) => {
            report.push("cover", Verdict::Fail, format!("no weights: {e}"), json!({ "sheets": n }), None);
            return;
        }
    };
    let built = cyclic_cover(t, d, &weights, n);
    let c = match built {
        Ok(c) => c,
        Err(e) => {
            report.push("cover", Verdict::Fail, e.to_string(), json!({ "sheets": n }), None);
            return;
        }
    };
    report.push(
        "cover",
        Verdict::Pass,
        format!("{n}-fold cover: {} tetrahedra, {} component(s)", c.tets, c.components),
        &c,
        None,
    );
    if c.components == 1 {
        local_orientation_checks(report, "cover.", &c.triangulation, &c.direction);
    }
}

fn parse_theta(text: &str) -> Result<Rational, String> {
    Rational::from_str(text.trim()).map_err(|_| format!("--theta expects p/q, got `{text}`"))
}

fn cmd_fiber(report: &mut Report, tri: &Path, dir: &Path, theta: Option<&str>, out: Option<&Path>) -> CmdResult {
    let (t, d) = load(report, tri, dir)?;
    let theta = theta.map(parse_theta).transpose()?;
    triangulation_check(report, &t);

    let start = std::time::Instant::now();
    let (system, outcome) = solve_triangle_system(&t, &d).map_err(|e| e.to_string())?;
    let solve_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    let verified = outcome.verify(&system.matrix);
    let weights = match &outcome {
        FeasibilityOutcome::Feasible { weights } => {
            report.push(
                "triangle_system",
                verdict(verified),
                format!(
                    "{} equations in {} unknowns: feasible, weights verified: {verified}",
                    system.faces.len(),
                    system.matrix.cols()
                ),
                json!({ "outcome": &outcome, "verified": verified }),
                solve_ms,
            );
            weights.clone()
        }
        FeasibilityOutcome::Infeasible { .. } => {
            report.push(
                "triangle_system",
                Verdict::Fail,
                format!("infeasible; Farkas certificate verified: {verified}"),
                json!({ "outcome": &outcome, "verified": verified, "faces": &system.faces }),
                solve_ms,
            );
            return Ok(());
        }
    };
    if let Some(prefix) = out {
        write_output(with_extension(prefix, "wts"), &render_weights(&d, &weights))?;
    }

    let map = build_fibration_map(&t, &d, &weights).map_err(|e| e.to_string())?;
    report.push(
        "circle_map",
        Verdict::Info,
        format!("period {}, circumference {}", map.period, map.circumference()),
        &map,
        None,
    );
    let links = verify_vertex_links(&t, &d, &map);
    let bad: Vec<String> = links
        .vertices
        .iter()
        .filter(|c| c.circles != 1)
        .map(|c| format!("{}:{}", c.vertex, c.circles))
        .collect();
    report.push(
        "link_verification",
        verdict(links.pass),
        if links.pass {
            "every vertex link meets the level set in one circle".into()
        } else {
            format!("circle counts differ from 1 at {}", bad.join(", "))
        },
        &links,
        None,
    );
    if !links.pass {
        return Ok(());
    }

    let theta = theta.unwrap_or_else(|| default_theta(&map));
    let fiber = match extract_fiber(&t, &d, &map, &theta) {
        Ok(f) => f,
        Err(FibrationError::ThetaCollision { theta, vertex, suggested }) => {
            report.push(
                "fiber",
                Verdict::Fail,
                format!("theta {theta} hits vertex {vertex}"),
                json!({ "theta": theta.to_string(), "vertex": vertex, "suggested_theta": suggested.to_string() }),
                None,
            );
            return Err(format!("theta {theta} is the phase of vertex {vertex}; try --theta {suggested}"));
        }
        Err(e) => return Err(e.to_string()),
    };
    let validation = validate_normal_vector(&t, &fiber);
    let stats = surface_stats(&t, &fiber).map_err(|e| e.to_string())?;
    report.push(
        "fiber",
        verdict(validation.valid && stats.component_count > 0),
        format!(
            "theta {theta}: χ = {}, {} component(s), {} pieces",
            stats.euler_characteristic, stats.component_count, stats.piece_count
        ),
        json!({
            "theta": theta.to_string(),
            "euler_characteristic": stats.euler_characteristic,
            "components": stats.component_count,
            "pieces": stats.piece_count,
            "validation": validation,
        }),
        None,
    );
    if let Some(prefix) = out {
        write_output(with_extension(prefix, "nsv"), &fiber.render())?;
    }
    Ok(())
}

fn cmd_germ(report: &mut Report, tri: &Path, dir: &Path, base: VertexId, m: usize, out: Option<&Path>) -> CmdResult {
    let options = GermOptions::default();
    if m > options.cap {
        return Err(GermError::BudgetTooLarge { m, cap: options.cap }.to_string());
    }
    let (t, d) = load(report, tri, dir)?;
    if !t.contains_vertex(base) {
        return Err(GermError::UnknownVertex(base).to_string());
    }
    let mut filler = AreaFiller::new(&t);
    let mut counts = Vec::new();
    let mut last = None;
    let start = std::time::Instant::now();
    for k in 0..=m {
        let g = build_germ_with(&mut filler, &d, base, k, options).map_err(|e| e.to_string())?;
        counts.push(json!({ "m": k, "nodes": g.nodes.len(), "arcs": g.arcs.len() }));
        last = Some(g);
    }
    let g = last.expect("at least m = 0");
    let summary = format!("{} nodes, {} arcs at m = {m}", g.nodes.len(), g.arcs.len());
    report.push(
        "germ",
        Verdict::Info,
        summary,
        json!({ "base": base, "m": m, "counts": counts }),
        Some(start.elapsed().as_secs_f64() * 1e3),
    );
    report.check("germ_acyclic", || {
        let a = germ_acyclic(&g);
        let summary = match &a.witness {
            None => "no directed loop".to_string(),
            Some(w) => format!("directed loop through vertices {:?}", w.vertices),
        };
        let paths: Vec<_> = a
            .witness
            .iter()
            .flat_map(|w| w.nodes.iter().map(|&n| g.nodes[n].representative.clone()))
            .collect();
        (verdict(a.acyclic), summary, json!({ "acyclicity": a, "witness_paths": paths }))
    });
    if let Some(prefix) = out {
        write_output(with_extension(prefix, "dot"), &g.to_dot())?;
    }
    Ok(())
}

fn cmd_generate(report: &mut Report, kind: Kind, layers: usize, out: &Path) -> CmdResult {
    let (t, d) = match kind {
        Kind::Pentachoron => (pentachoron(), None),
        Kind::ProductS2 | Kind::ProductT2 => {
            let surface = if kind == Kind::ProductS2 {
                ClosedSurface::tetrahedron_boundary()
            } else {
                ClosedSurface::seven_vertex_torus()
            };
            let b = product(&surface, layers).map_err(|e| e.to_string())?;
            (b.triangulation, Some(b.direction))
        }
    };
    let tri_path = with_extension(out, "tri");
    write_output(tri_path.clone(), &t.render())?;
    let mut files = vec![tri_path.display().to_string()];
    if let Some(d) = &d {
        let dir_path = with_extension(out, "dir");
        write_output(dir_path.clone(), &d.render())?;
        files.push(dir_path.display().to_string());
    }
    let f = t.f_vector();
    report.push(
        "generate",
        Verdict::Pass,
        format!("wrote {} ({} tetrahedra)", files.join(", "), f.3),
        json!({ "files": files, "f_vector": [f.0, f.1, f.2, f.3] }),
        None,
    );
    Ok(())
}
