//! End-to-end runs of the `ribbon-tr` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbon-tr"))
        .args(args)
        .env_remove("RIBBON_TR_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn single_counts() {
    assert_eq!(stdout(&["count", "--gn", "1,1", "--p", "6"]), "2/3\n");
    assert_eq!(stdout(&["count", "--gn", "0,3", "--p", "1,1,1"]), "0\n");
    assert_eq!(stdout(&["count", "--gn", "0,4", "--p", "1,1,2,2"]), "2\n");
    assert_eq!(stdout(&["count", "--gn", "1,1", "--p", "4"]), "1/4\n");
}

#[test]
fn census_csv_and_cache() {
    let plain = stdout(&["count", "--gn", "0,4", "--max-sum", "8", "--format", "csv"]);
    assert!(plain.starts_with("g,n,p_1,p_2,p_3,p_4,numerator,denominator\n"));
    assert!(plain.contains("\n0,4,1,1,2,2,2,1\n"));

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "--cache",
        d,
        "count",
        "--gn",
        "0,4",
        "--max-sum",
        "8",
        "--format",
        "csv",
    ];
    assert_eq!(stdout(&args), plain);
    assert!(dir.path().join("census-g0-n4-P8.csv").exists());
    assert_eq!(stdout(&args), plain);
}

#[test]
fn census_json_is_valid() {
    let s = stdout(&["count", "--gn", "1,1", "--max-sum", "6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert_eq!(entries[5]["value"], "2/3");
}

#[test]
fn polynomials() {
    assert_eq!(stdout(&["poly", "VS", "1", "1"]), "-(1/32)·t₁²\n");
    assert_eq!(stdout(&["poly", "VE", "0", "3"]), "-1/16\n");
    let latex = stdout(&["poly", "L", "0", "3", "--format", "latex"]);
    assert!(latex.starts_with("% total degree 0\n- \\frac{1}{16}\n"));
}

#[test]
fn poly_json_round_trips() {
    let s = stdout(&["poly", "L", "1", "2", "--format", "json"]);
    let doc = ribbon_tr::exactmath::PolyDocument::from_json(&s).unwrap();
    let expected = ribbon_tr::golden::l12();
    assert_eq!(doc.to_poly().unwrap(), expected);
}

#[test]
fn intersections() {
    let s = stdout(&["intersect", "1", "1"]);
    assert!(s.starts_with("⟨τ₁⟩ = 1/24 (literal)"), "{s}");
    let s = stdout(&["intersect", "0", "4"]);
    assert!(s.starts_with("⟨τ₁τ₀³⟩ = 1/8 (literal)"), "{s}");
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "all",
        "--seed",
        "7",
        "--level",
        "3",
        "--max-sum",
        "8",
        "--trials",
        "2",
        "--points",
        "2",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stdout)
    );
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS ")));
    assert!(text.contains("PASS ratio (1,2) 16/1 2^4\n"));
}

#[test]
fn verify_json_lines() {
    let s = stdout(&["verify", "--suite", "golden", "--json"]);
    let lines: Vec<serde_json::Value> = s
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    assert!(lines
        .iter()
        .all(|l| l["status"] == "PASS" && l["suite"] == "golden"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["count", "--gn", "0,2", "--p", "1,1"][..],
        &["count", "--gn", "1,1", "--p", "0"],
        &["count", "--gn", "1,1", "--p", "1,2"],
        &["count", "--gn", "x"],
        &["poly", "X", "1", "1"],
        &["poly", "L", "0", "1"],
        &["verify", "--suite", "bogus"],
        &["verify", "--level", "0"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
