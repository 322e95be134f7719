use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const QUAD_FORM: &str = "(4+4x-y)/(x*y*(1+x-y)*(4-2x-y)) dx^dy";

#[test]
fn canon_all_prints_form_once_with_agreement_note() {
    let q = data("quad.json");
    let o = run(&["canon", "--input", path(&q), "--method", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("{QUAD_FORM}\n"));
    assert!(stderr(&o).contains("triangulation, dualvol, laplace agree"));
}

#[test]
fn each_method_alone() {
    let q = data("quad.json");
    for m in ["triangulation", "dualvol", "laplace"] {
        let o = run(&["canon", "--input", path(&q), "--method", m]);
        assert_eq!(o.status.code(), Some(0), "{m}");
        assert_eq!(stdout(&o).trim(), QUAD_FORM, "{m}");
    }
}

#[test]
fn json_round_trip_is_byte_identical() {
    let q = data("quad.json");
    let o = run(&["canon", "--input", path(&q), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let form = canform::io::form_from_json(&text).unwrap();
    assert_eq!(form.format(), QUAD_FORM);
    let again = serde_json::to_string_pretty(&canform::io::form_to_json(&form)).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn residue_on_first_facet() {
    let q = data("quad.json");
    let o = run(&["residue", "--input", path(&q), "--facet", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("1/(y*(1-y)) dy\n"), "{out}");
    assert!(out.contains("chart: x = 0"), "{out}");

    let o = run(&["residue", "--input", path(&q), "--facet", "0", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["chart"]["pivot"], 0);
    assert_eq!(v["chart"]["kept"], serde_json::json!([1]));
}

#[test]
fn residue_facet_out_of_range_is_input_error() {
    let q = data("quad.json");
    let o = run(&["residue", "--input", path(&q), "--facet", "7"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--facet"));
}

#[test]
fn subdivision_passes_and_fails() {
    let (q, t1, t2) = (data("quad.json"), data("t1.json"), data("t2.json"));
    let o = run(&["check-subdivision", "--parent", path(&q), "--parts", path(&t1), path(&t2)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("subdivision: passed"));

    let o = run(&["check-subdivision", "--parent", path(&q), "--parts", path(&t1)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"), "report is still emitted");
}

#[test]
fn checks_pass_on_the_quadrilateral() {
    let q = data("quad.json");
    for verb in ["check-recursion", "check-filliman", "check-convexity"] {
        let o = run(&[verb, "--input", path(&q)]);
        assert_eq!(o.status.code(), Some(0), "{verb}: {}", stdout(&o));
    }
}

#[test]
fn adjoint_and_residual_points() {
    let q = data("quad.json");
    let o = run(&["adjoint", "--input", path(&q)]);
    assert!(stdout(&o).starts_with("adjoint: 4X0+4X1-X2\n"));
    let o = run(&["residual", "--input", path(&q), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let points: Vec<&serde_json::Value> = v["flats"].as_array().unwrap().iter().map(|f| &f["point"]).collect();
    assert_eq!(points.len(), 2);
    assert!(points.contains(&&serde_json::json!(["1", "0", "4"])));
    assert!(points.contains(&&serde_json::json!(["1", "-1", "0"])));
}

#[test]
fn hrep_square() {
    let s = data("square_hrep.json");
    let o = run(&["canon", "--input", path(&s)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1/(x*y*(1-y)*(1-x)) dx^dy");
}

#[test]
fn polar_and_terms() {
    let q = data("quad.json");
    let o = run(&["polar", "--input", path(&q), "--at", "1/2,1/2"]);
    assert!(stdout(&o).contains("volume: 44/5"), "{}", stdout(&o));
    let o = run(&["dualvol", "--input", path(&q)]);
    assert!(stdout(&o).ends_with(&format!("sum: {QUAD_FORM}\n")));
    let o = run(&["laplace", "--input", path(&q)]);
    assert!(stdout(&o).ends_with(&format!("sum at X0=1: {QUAD_FORM}\n")));
    let o = run(&["polar", "--input", path(&q), "--at", "5,5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mixed_volume_of_translated_square() {
    let (a, b, c) = (data("minus_e1.json"), data("minus_e2.json"), data("square2.json"));
    let o = run(&["mixedvol", "--inputs", path(&a), path(&b), path(&c)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("mixed-homogeneity: passed"));
}

#[test]
fn pushforward_report_list() {
    let p = data("pushforward_quad.json");
    let o = run(&["check-pushforward", "--input", path(&p), "--format", "json", "--threads", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reps = v.as_array().unwrap();
    assert_eq!(reps.len(), 10);
    assert!(reps.iter().all(|r| r["degree_found"] == 2 && r["passed"] == true));
}

#[test]
fn pushforward_with_mismatched_configurations_fails() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("bad.json");
    std::fs::write(
        &f,
        r#"{"W": [[1,0,0],[1,2,0],[1,1,2],[1,0,1]], "V": [[1,0,0],[1,1,0],[1,0,1],[1,1,1]]}"#,
    )
    .unwrap();
    let o = run(&["check-pushforward", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAILED"));
}

#[test]
fn threads_do_not_change_output() {
    let p = data("pushforward_quad.json");
    let a = run(&["check-pushforward", "--input", path(&p), "--threads", "1", "--seed", "4"]);
    let b = run(&["check-pushforward", "--input", path(&p), "--threads", "3", "--seed", "4"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn interior_point_is_dropped_with_warning() {
    let dir = TempDir::new().unwrap();
    let f = dir.path().join("quad_plus.json");
    std::fs::write(
        &f,
        r#"{"dim": 2, "vertices": [["0","0"],["2","0"],["1","2"],["0","1"],["1/2","1/2"]]}"#,
    )
    .unwrap();
    let o = run(&["canon", "--input", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), QUAD_FORM);
    assert!(stderr(&o).contains("warning") && stderr(&o).contains("vertices[4]"));
}

#[test]
fn input_errors_name_the_field() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"dim": 2, "vertices": [["0","0"],["1","x"]]}"#, "vertices[1][1]"),
        (r#"{"dim": 2, "vertices": [["0","0"],["1"]]}"#, "vertices[1]"),
        (r#"{"dim": 2, "vertex": []}"#, "vertex"),
        (r#"{"dim": 2, "vertices": [["0","0"],["1","1"],["2","2"]]}"#, "dimension"),
        (r#"{"dim": 2, "facets": [{"c0": "0", "coeffs": ["1","0"]}, {"c0": "0", "coeffs": ["0","1"]}]}"#, "unbounded"),
        ("not json", "polytope"),
    ];
    for (k, (text, needle)) in cases.iter().enumerate() {
        let f = dir.path().join(format!("bad{k}.json"));
        std::fs::write(&f, text).unwrap();
        let o = run(&["canon", "--input", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{text}");
        assert!(stderr(&o).contains(needle), "{text}: {}", stderr(&o));
    }
    let o = run(&["canon", "--input", "/definitely/missing.json"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["canon", "--input", path(&data("quad.json")), "--method", "simplex"]);
    assert_eq!(o.status.code(), Some(2));
}
