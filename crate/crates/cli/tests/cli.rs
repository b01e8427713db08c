//! End-to-end tests of the `yao` binary: reports, exit codes, input formats.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn yao(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_yao")).args(args).output().expect("binary runs")
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

struct Fixture {
    _dir: TempDir,
    matrix: String,
    f_opt: String,
    g_opt: String,
}

/// `[[1,3],[2,1]]` with its optimal pair f = (1/3, 2/3), g = (2/3, 1/3).
fn two_by_two() -> Fixture {
    let dir = TempDir::new().unwrap();
    let matrix = write(dir.path(), "m.json", r#"{"kind": "ratio", "ratio": [[1, 3], [2, 1]]}"#);
    let f_opt = write(dir.path(), "f.dist", "# optimal algorithm\ns1 0.3333333333333333\ns2 0.6666666666666667\n");
    let g_opt = write(dir.path(), "g.dist", "p1 0.6666666666666666\np2 0.3333333333333333\n");
    let s = |p: PathBuf| p.to_str().unwrap().to_string();
    Fixture { matrix: s(matrix), f_opt: s(f_opt), g_opt: s(g_opt), _dir: dir }
}

fn close(v: &Value, expected: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - expected).abs() <= tol
}

#[test]
fn solve_ski_rental_report() {
    let rep = report(&yao(&["solve", "--skirental", "4", "--horizon", "8", "--format", "report"]));
    assert!(close(&rep["solve"]["value"], 256.0 / 175.0, 1e-12));
    assert_eq!(rep["command"], "solve");
    assert_eq!(rep["problem"]["rows"], 4);
    assert_eq!(rep["problem"]["cols"], 8);
    assert_eq!(rep["solve"]["f_star"][0]["label"], "s=1");
    assert!(close(&rep["solve"]["f_star"][0]["weight"], 27.0 / 175.0, 1e-9));
    assert!(rep["input_digest"].as_str().unwrap().starts_with("sha256:"));
    assert_eq!(rep["certificates"][0]["kind"], "saddle");
    assert_eq!(rep["certificates"][0]["passed"], true);
}

#[test]
fn solve_with_fictitious_play() {
    let rep = report(&yao(&["solve", "--skirental", "4", "--method", "fp", "--fp-iters", "20000"]));
    assert_eq!(rep["solve"]["method"], "fictitious_play");
    assert!(close(&rep["solve"]["value"], 256.0 / 175.0, 5e-3));
}

#[test]
fn verify_saddle_on_optimal_pair() {
    let fx = two_by_two();
    let out = yao(&["verify", "--file", &fx.matrix, "--f", &fx.f_opt, "--g", &fx.g_opt, "--lemma", "saddle", "--require-pass"]);
    assert_eq!(out.status.code(), Some(0));
    let rep = report(&out);
    let cert = &rep["certificates"][0];
    assert_eq!(cert["kind"], "saddle");
    assert_eq!(cert["passed"], true);
    assert!(close(&cert["witnessed_constant"], 5.0 / 3.0, 1e-9));
}

#[test]
fn verify_all_emits_every_certificate() {
    let fx = two_by_two();
    let rep = report(&yao(&["verify", "--file", &fx.matrix, "--f", &fx.f_opt, "--g", &fx.g_opt]));
    let kinds: Vec<&str> = rep["certificates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"sufficient") && kinds.contains(&"necessary") && kinds.contains(&"saddle"));
    assert!(rep["certificates"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn failed_certificate_exit_code_depends_on_require_pass() {
    let fx = two_by_two();
    let args = ["verify", "--file", &fx.matrix, "--f", &fx.f_opt, "--g", "uniform", "--lemma", "saddle"];
    let lenient = yao(&args);
    assert_eq!(lenient.status.code(), Some(0));
    let rep = report(&lenient);
    assert_eq!(rep["certificates"][0]["passed"], false);
    let reason = rep["certificates"][0]["violations"][0].as_str().unwrap();
    assert!(reason.contains("not a best response") && reason.contains("s2"), "{reason}");

    let strict: Vec<&str> = args.iter().copied().chain(["--require-pass"]).collect();
    assert_eq!(yao(&strict).status.code(), Some(1));
}

#[test]
fn bound_with_uniform_adversary() {
    let fx = two_by_two();
    let rep = report(&yao(&["bound", "--file", &fx.matrix, "--g", "uniform"]));
    assert!(close(&rep["bound"]["lower_bound"], 1.5, 1e-12));
    assert_eq!(rep["bound"]["best_response"], "s2");
}

#[test]
fn bound_with_point_mass() {
    let fx = two_by_two();
    let rep = report(&yao(&["bound", "--file", &fx.matrix, "--g", "point:p2"]));
    assert!(close(&rep["bound"]["lower_bound"], 1.0, 1e-12));
}

#[test]
fn equalize_full_and_search() {
    let fx = two_by_two();
    let full = report(&yao(&["equalize", "--file", &fx.matrix, "--require-pass"]));
    assert_eq!(full["equalizers"]["f"]["ok"], true);
    assert!(close(&full["equalizers"]["f"]["constant"], 5.0 / 3.0, 1e-9));
    assert!(close(&full["equalizers"]["g"]["constant"], 5.0 / 3.0, 1e-9));

    let search = report(&yao(&["equalize", "--skirental", "4", "--horizon", "8", "--support", "search"]));
    assert_eq!(search["equalizers"]["mode"], "search");
    assert!(close(&search["equalizers"]["f"]["constant"], 256.0 / 175.0, 1e-8));
}

#[test]
fn equalize_failure_respects_require_pass() {
    // pure saddle at (s1, p2): no full-support equalizer for f
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "m.json", r#"{"kind": "ratio", "ratio": [[1, 2], [3, 4]]}"#);
    let m = m.to_str().unwrap();
    let lenient = report(&yao(&["equalize", "--file", m]));
    assert_eq!(lenient["equalizers"]["f"]["ok"], false);
    assert!(lenient["equalizers"]["f"]["error"].is_string());
    assert_eq!(yao(&["equalize", "--file", m, "--require-pass"]).status.code(), Some(1));
}

#[test]
fn sweep_csv_has_one_row_per_size_in_order() {
    let out = yao(&["skirental-sweep", "--b-min", "2", "--b-max", "16", "--doubling", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "buy_cost,horizon,value,closed_form,abs_error,gap,iterations");
    let sizes: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(sizes, ["2", "4", "8", "16"]);
}

#[test]
fn sweep_report_matches_closed_form() {
    let rep = report(&yao(&["skirental-sweep", "--b-min", "1", "--b-max", "6"]));
    let rows = rep["sweep"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert!(row["abs_error"].as_f64().unwrap() < 1e-9);
        assert_eq!(row["horizon"].as_u64().unwrap(), 2 * row["buy_cost"].as_u64().unwrap());
    }
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let args = ["solve", "--skirental", "5", "--deterministic"];
    let a = yao(&args);
    let b = yao(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["timing_ms"], 0.0);
}

#[test]
fn random_emit_round_trips_through_solve() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("r.json");
    let path = path.to_str().unwrap();
    let gen = report(&yao(&["random", "--rows", "4", "--cols", "6", "--seed", "11", "--emit", path]));
    let solved = report(&yao(&["solve", "--file", path]));
    assert_eq!(gen["solve"]["value"], solved["solve"]["value"]);
    assert_eq!(gen["input_digest"], solved["input_digest"]);
}

#[test]
fn costs_file_is_accepted() {
    let dir = TempDir::new().unwrap();
    // ski rental B=2, N=2 as raw costs
    let m = write(
        dir.path(),
        "c.json",
        r#"{"kind": "costs", "row_labels": ["buy", "rent"], "col_labels": ["short", "long"],
            "cost_on": [[2, 2], [1, 3]], "cost_off": [1, 2]}"#,
    );
    let rep = report(&yao(&["solve", "--file", m.to_str().unwrap()]));
    assert_eq!(rep["problem"]["row_labels"][0], "buy");
    assert!(close(&rep["solve"]["value"], 4.0 / 3.0, 1e-12));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let sub_unit = write(dir.path(), "low.json", r#"{"kind": "ratio", "ratio": [[0.5, 3], [2, 1]]}"#);
    let malformed = write(dir.path(), "bad.json", r#"{"kind": "ratio", "ratio": [[1, 2], [3"#);
    let ragged = write(dir.path(), "ragged.json", r#"{"kind": "ratio", "ratio": [[1, 2], [3]]}"#);
    for path in [&sub_unit, &malformed, &ragged] {
        let out = yao(&["solve", "--file", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{}", path.display());
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(yao(&["solve", "--file", "/nonexistent/problem.json"]).status.code(), Some(2));
}

#[test]
fn raw_game_allows_sub_unit_ratios() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "raw.json", r#"{"kind": "ratio", "ratio": [[0.5, 3], [2, 1]], "raw_game": true}"#);
    let rep = report(&yao(&["solve", "--file", m.to_str().unwrap()]));
    assert_eq!(rep["problem"]["ratio_at_least_one"], false);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec![],
        vec!["solve"],
        vec!["frobnicate"],
        vec!["solve", "--skirental", "4", "--tol", "abc"],
        vec!["solve", "--skirental", "4", "--file", "x.json"],
    ] {
        let out = yao(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn invalid_settings_exit_two() {
    assert_eq!(yao(&["solve", "--skirental", "4", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(yao(&["solve", "--skirental", "0"]).status.code(), Some(2));
    assert_eq!(yao(&["solve", "--skirental", "4", "--horizon", "2"]).status.code(), Some(2));
    assert_eq!(yao(&["random", "--rows", "2", "--cols", "2", "--lo", "0.5"]).status.code(), Some(2));
    assert_eq!(yao(&["equalize", "--skirental", "3", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn distribution_file_errors_exit_two() {
    let fx = two_by_two();
    let dir = TempDir::new().unwrap();
    let cases = [
        ("dup.dist", "p1 0.5\np1 0.5\n", "line 2"),
        ("unknown.dist", "p1 0.5\nq9 0.5\n", "line 2"),
        ("negative.dist", "p1 -1\np2 2\n", "p1"),
        ("garbage.dist", "p1 half\n", "line 1"),
        ("zero.dist", "p1 0\np2 0\n", ""),
    ];
    for (name, body, needle) in cases {
        let path = write(dir.path(), name, body);
        let out = yao(&["bound", "--file", &fx.matrix, "--g", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(needle), "{name}: {err}");
    }
    let out = yao(&["bound", "--file", &fx.matrix, "--g", "point:p7"]);
    assert_eq!(out.status.code(), Some(2));
}
