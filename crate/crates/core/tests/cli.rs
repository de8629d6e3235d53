use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use trifol::fibration::{check_weights, parse_weights};
use trifol::normal::{validate_normal_vector, NormalVector};
use trifol::{Direction, Triangulation};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn trifol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trifol")).args(args).output().unwrap()
}

/// Runs with `--json --no-timing`; fixture names are resolved.
fn json(args: &[&str]) -> (i32, Value) {
    let paths: Vec<String> = args
        .iter()
        .map(|a| {
            if a.ends_with(".tri") || a.ends_with(".dir") {
                fixture(a).display().to_string()
            } else {
                a.to_string()
            }
        })
        .collect();
    let mut full: Vec<&str> = paths.iter().map(String::as_str).collect();
    full.extend(["--json", "--no-timing"]);
    let out = trifol(&full);
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), value)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name} in {report}"))
}

#[test]
fn pentachoron_check_fails_at_the_extremes() {
    let (code, r) = json(&["check", "pentachoron.tri", "global.dir"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "fail");
    assert_eq!(check(&r, "tet_order")["verdict"], "pass");
    let link = check(&r, "link_condition");
    assert_eq!(link["verdict"], "fail");
    assert_eq!(link["details"]["failing_vertices"], serde_json::json!([0, 4]));
    assert_eq!(check(&r, "recurrence")["details"]["scc_count"], 5);
    assert_eq!(check(&r, "expanding")["verdict"], "info");
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["name"] != "isoperimetric"));
    assert_eq!(r["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn product_check_passes_with_cover() {
    let (code, r) = json(&["check", "product-s2.tri", "product-s2.dir"]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "isoperimetric")["verdict"], "info");
    let (code, r) = json(&["check", "product-t2.tri", "product-t2.dir", "--cover", "2"]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "cover")["details"]["components"], 1);
    assert_eq!(check(&r, "cover.recurrence")["verdict"], "pass");
}

#[test]
fn missing_input_is_a_usage_error() {
    let (code, r) = json(&["check", "pentachoron.tri", "missing.dir"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    let (code, _) = json(&["check", "pentachoron.tri", "global.dir", "--cover", "0"]);
    assert_eq!(code, 2);
    assert_eq!(trifol(&["check"]).status.code(), Some(2));
    assert_eq!(trifol(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(trifol(&["--help"]).status.code(), Some(0));
}

#[test]
fn mismatched_direction_is_a_usage_error() {
    let (code, r) = json(&["check", "product-s2.tri", "global.dir"]);
    assert_eq!(code, 2);
    assert!(r["error"].as_str().unwrap().contains("global.dir"));
}

#[test]
fn product_fiber_writes_weights_and_surface() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("s2");
    let (code, r) = json(&["fiber", "product-s2.tri", "product-s2.dir", "--out", prefix.to_str().unwrap()]);
    assert_eq!(code, 0);
    let fiber = &check(&r, "fiber")["details"];
    assert_eq!(fiber["euler_characteristic"], 2);
    assert_eq!(fiber["components"], 1);

    let t = Triangulation::parse(&std::fs::read_to_string(fixture("product-s2.tri")).unwrap()).unwrap();
    let d = Direction::parse(&t, &std::fs::read_to_string(fixture("product-s2.dir")).unwrap()).unwrap();
    let w = parse_weights(&t, &d, &std::fs::read_to_string(dir.path().join("s2.wts")).unwrap()).unwrap();
    check_weights(&t, &d, &w).unwrap();
    let n = NormalVector::parse(&t, &std::fs::read_to_string(dir.path().join("s2.nsv")).unwrap()).unwrap();
    assert!(validate_normal_vector(&t, &n).valid);
}

#[test]
fn pentachoron_fiber_reports_circle_counts() {
    let (code, r) = json(&["fiber", "pentachoron.tri", "global.dir"]);
    assert_eq!(code, 1);
    assert_eq!(check(&r, "triangle_system")["verdict"], "pass");
    let counts: Vec<i64> = check(&r, "link_verification")["details"]["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["circles"].as_i64().unwrap())
        .collect();
    assert_eq!(counts, vec![0, 1, 1, 1, 0]);
}

#[test]
fn infeasible_system_emits_a_verified_certificate() {
    let (code, r) = json(&["fiber", "join.tri", "join-cyclic.dir"]);
    assert_eq!(code, 1);
    let sys = &check(&r, "triangle_system")["details"];
    assert_eq!(sys["verified"], true);
    assert_eq!(sys["outcome"]["branch"], "infeasible");
    let combo: Vec<i64> = sys["outcome"]["combination"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    assert!(combo.iter().all(|&c| c >= 0) && combo.iter().any(|&c| c > 0));
}

#[test]
fn fiber_input_errors() {
    let (code, _) = json(&["fiber", "pentachoron.tri", "flipped.dir"]);
    assert_eq!(code, 2);
    let (code, _) = json(&["fiber", "product-s2.tri", "product-s2.dir", "--theta", "half"]);
    assert_eq!(code, 2);
    let (code, r) = json(&["fiber", "product-s2.tri", "product-s2.dir", "--theta", "0/1"]);
    assert_eq!(code, 2);
    let suggested = check(&r, "fiber")["details"]["suggested_theta"].as_str().unwrap().to_string();
    assert!(r["error"].as_str().unwrap().contains(&suggested));
    let (code, _) = json(&["fiber", "product-s2.tri", "product-s2.dir", "--theta", &suggested]);
    assert_eq!(code, 0);
}

#[test]
fn germ_commands() {
    let (code, r) = json(&["germ", "pentachoron.tri", "global.dir", "--base", "0", "--m", "3"]);
    assert_eq!(code, 0);
    assert_eq!(check(&r, "germ")["details"]["counts"].as_array().unwrap().len(), 4);

    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("g");
    let (code, r) = json(&[
        "germ",
        "pentachoron.tri",
        "flipped.dir",
        "--base",
        "1",
        "--m",
        "3",
        "--out",
        prefix.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    let a = &check(&r, "germ_acyclic")["details"]["acyclicity"];
    assert_eq!(a["acyclic"], false);
    assert!(a["witness"]["nodes"].as_array().unwrap().len() >= 2);
    let dot = std::fs::read_to_string(dir.path().join("g.dot")).unwrap();
    assert!(dot.starts_with("# germ base=1 m=3"));

    let (code, _) = json(&["germ", "pentachoron.tri", "global.dir", "--base", "0", "--m", "99"]);
    assert_eq!(code, 2);
    let (code, _) = json(&["germ", "pentachoron.tri", "global.dir", "--base", "9", "--m", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn generate_writes_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n);
    let s = |n: &str| p(n).to_str().unwrap().to_string();

    let (code, _) = json(&["generate", "--type", "pentachoron", "--out", &s("p")]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(p("p.tri")).unwrap().lines().count(), 5);

    let (code, _) = json(&["generate", "--type", "product-s2", "--layers", "3", "--out", &s("s")]);
    assert_eq!(code, 0);
    let tri = std::fs::read_to_string(p("s.tri")).unwrap();
    let t = Triangulation::parse(&tri).unwrap();
    assert_eq!(t.tets().len(), 36);
    Direction::parse(&t, &std::fs::read_to_string(p("s.dir")).unwrap()).unwrap();
    assert_eq!(tri, std::fs::read_to_string(fixture("product-s2.tri")).unwrap());

    let (code, _) = json(&["generate", "--type", "product-t2", "--layers", "2", "--out", &s("t")]);
    assert_eq!(code, 2);
    assert!(!p("t.tri").exists());
}

#[test]
fn text_output_renders_the_same_checks() {
    let out = trifol(&[
        "check",
        fixture("pentachoron.tri").to_str().unwrap(),
        fixture("global.dir").to_str().unwrap(),
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let (_, r) = json(&["check", "pentachoron.tri", "global.dir"]);
    for c in r["checks"].as_array().unwrap() {
        assert!(text.contains(&format!("{}:", c["name"].as_str().unwrap())));
    }
    assert!(text.contains("[FAIL] link_condition"));
    assert!(text.ends_with("status: fail\n"));
}

#[test]
fn in_process_run_matches_the_binary() {
    let (tri, dir) = (fixture("pentachoron.tri"), fixture("flipped.dir"));
    let args = [
        "trifol",
        "germ",
        tri.to_str().unwrap(),
        dir.to_str().unwrap(),
        "--base",
        "1",
        "--m",
        "2",
        "--json",
        "--no-timing",
    ];
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = trifol::cli::run(args, &mut stdout, &mut stderr);
    let out = trifol(&args[1..]);
    assert_eq!(Some(code), out.status.code());
    assert_eq!(stdout, out.stdout);
}
