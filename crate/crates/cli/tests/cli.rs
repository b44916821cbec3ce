use std::process::{Command, Output};

use mindenom_cli::CSV_HEADER;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mindenom")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
}

#[test]
fn compute_small_n() {
    let out = run(&["compute", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "S"), Some("10"));
    assert_eq!(field(&text, "R"), Some("1/3"));
    assert_eq!(field(&text, "T"), Some("-1/6"));
    assert_eq!(field(&text, "integral"), Some("29/12"));
    for key in ["S_bar", "S_star", "S_tilde", "T1", "T11", "T12", "T2", "ratio", "R_over_bound"] {
        assert!(field(&text, key).is_some(), "missing {key}");
    }

    let one = stdout(&run(&["compute", "--n", "1"]));
    assert_eq!(field(&one, "S"), Some("1"));
    assert_eq!(field(&one, "R"), Some("0"));
}

#[test]
fn compute_variant_selects_s() {
    let text = stdout(&run(&["compute", "--n", "4", "--variant", "open"]));
    assert_eq!(field(&text, "S_variant"), field(&text, "S_tilde"));
}

#[test]
fn compute_budget_and_s_only() {
    assert_eq!(run(&["compute", "--n", "100000"]).status.code(), Some(3));
    let out = run(&["compute", "--n", "100000", "--s-only"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(field(&text, "S_variant").is_some());
    let ratio: f64 = field(&text, "ratio").unwrap().parse().unwrap();
    assert!(1.35 < ratio && ratio < 2.04);
    assert!(field(&text, "R").is_none());
}

#[test]
fn invalid_flags_exit_2() {
    assert_eq!(run(&["compute"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["compute", "--n", "4", "--variant", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--from", "2", "--to", "8"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn sweep_geometric_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let p = path.to_str().unwrap();
    assert!(run(&["sweep", "--from", "2", "--to", "1024", "--factor", "2", "--out", p]).status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 10);
    let ns: Vec<u64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert!(ns.windows(2).all(|w| w[0] < w[1]));
    let last = rows.last().unwrap();
    assert_eq!(last[0], "1024");
    let ratio: f64 = last[2].parse().unwrap();
    assert!(1.35 < ratio && ratio < 2.04);
}

#[test]
fn sweep_ratio_approaches_constant_monotonically() {
    let text = stdout(&run(&["sweep", "--from", "1", "--to", "65536", "--factor", "2"]));
    let km = 16.0 / std::f64::consts::PI.powi(2);
    let distances: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| (l.split(',').nth(2).unwrap().parse::<f64>().unwrap() - km).abs())
        .collect();
    assert!(distances.windows(2).all(|w| w[1] < w[0]), "{distances:?}");
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let args = ["sweep", "--from", "10", "--to", "400", "--step", "7"];
    let first = run(&args);
    assert!(first.status.success());
    for _ in 0..3 {
        assert_eq!(run(&args).stdout, first.stdout);
    }
}

#[test]
fn sweep_unwritable_output_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let out = run(&["sweep", "--from", "2", "--to", "8", "--step", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "identities", "--max-n", "60"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("suite identities: PASS"));

    let out = run(&["verify", "--suite", "variants", "--max-n", "500"]);
    assert!(out.status.success());

    let out = run(&["verify", "--suite", "all", "--max-n", "40"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    for suite in ["farey", "minden", "identities", "expsums", "variants"] {
        assert!(text.contains(&format!("suite {suite}: PASS")), "{suite}");
    }
}
