mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::corpus_dir;
use serde_json::Value;
use tempfile::TempDir;

fn pentgeom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pentgeom")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn cert(name: &str) -> String {
    corpus_dir().join(name).to_string_lossy().into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn line_count(path: &Path) -> usize {
    std::fs::read_to_string(path).unwrap().lines().filter(|l| !l.trim().is_empty()).count()
}

#[test]
fn verify_accepts_a_corpus_certificate() {
    let o = pentgeom(&["verify", &cert("pent_3_33_7.cert"), "--require-girth5", "--require-connected"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = json(&o);
    assert_eq!(report["overall"], true);
    assert_eq!(report["params"]["v"], 74);
    assert_eq!(report["params"]["lines"], 814);
}

#[test]
fn verify_reports_a_short_certificate_as_an_input_error() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(cert("pent_3_33_7.cert")).unwrap();
    let mut blocks: Vec<&str> = text.split(';').collect();
    blocks.remove(blocks.len() - 2);
    let path = write(&dir, "broken.cert", &blocks.join(";"));
    let o = pentgeom(&["verify", &path]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected 22"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_names_the_check_a_tampered_certificate_fails() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(cert("pent_3_33_7.cert")).unwrap();
    // The first base block is 5, 24, 49.
    let tampered = text.replacen("5, 24, 49", "5, 24, 48", 1);
    assert_ne!(tampered, text);
    let o = pentgeom(&["verify", &write(&dir, "tampered.cert", &tampered)]);
    assert_eq!(code(&o), 1);
    let report = json(&o);
    assert_eq!(report["overall"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"pairs on at most one line"), "{failed:?}");
}

#[test]
fn develop_writes_the_full_line_list() {
    let dir = TempDir::new().unwrap();
    for (name, lines) in [("pent_3_33_7.cert", 814), ("pent_4_112_13.cert", 9800)] {
        let out = dir.path().join(format!("{name}.lines"));
        let o = pentgeom(&["develop", &cert(name), "--out", &out.to_string_lossy()]);
        assert_eq!(code(&o), 0, "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(line_count(&out), lines, "{name}");
    }
}

#[test]
fn develop_rejects_a_step_that_does_not_divide_the_point_count() {
    let dir = TempDir::new().unwrap();
    // Two base blocks is the right count for d = 2, but 2 does not divide 5.
    let path = write(&dir, "period.cert", "PENT(2, 2, 2), d = 2:\n0, 1; 1, 2\n");
    let out = dir.path().join("out.lines");
    let o = pentgeom(&["develop", &path, "--out", &out.to_string_lossy()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not divide"));
}

#[test]
fn develop_then_verify_matches_verify() {
    let dir = TempDir::new().unwrap();
    let text = std::fs::read_to_string(cert("pent_3_33_7.cert")).unwrap();
    let tampered = write(&dir, "tampered.cert", &text.replacen("5, 24, 49", "5, 24, 48", 1));
    for path in [cert("pent_3_33_7.cert"), cert("pent_3_57_9.cert"), tampered] {
        let direct = code(&pentgeom(&["verify", &path]));
        let out = dir.path().join("developed.lines");
        let _ = pentgeom(&["develop", &path, "--out", &out.to_string_lossy()]);
        let developed = code(&pentgeom(&["verify", &out.to_string_lossy()]));
        assert_eq!(direct, developed, "{path}");
    }
}

#[test]
fn build_commands() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("hs.lines");
    let o = pentgeom(&["build", "overlay", "--graph", "hs", "--design", "sts", "--out", &out.to_string_lossy()]);
    assert_eq!(code(&o), 0);
    let report = json(&o);
    assert_eq!((report["params"]["k"].as_u64(), report["params"]["r"].as_u64()), (Some(3), Some(21)));
    assert_eq!(line_count(&out), 350);
    assert_eq!(code(&pentgeom(&["verify", &out.to_string_lossy()])), 0);

    let o = pentgeom(&["build", "fig1", "--m", "4"]);
    assert_eq!(code(&o), 0);
    let report = json(&o);
    assert_eq!((report["params"]["r"].as_u64(), report["params"]["w"].as_u64()), (Some(11), Some(8)));

    let o = pentgeom(&["build", "hill-climb", "--w", "7", "--r", "33", "--seed", "1", "--restarts", "50", "--jobs", "1"]);
    assert!([0, 1].contains(&code(&o)));
    if code(&o) == 0 {
        assert_eq!(json(&o)["overall"], true);
    }
}

#[test]
fn randomized_builds_require_a_seed_and_bad_flags_exit_two() {
    assert_eq!(code(&pentgeom(&["build", "hill-climb", "--w", "7", "--r", "33"])), 2);
    assert_eq!(code(&pentgeom(&["build", "fig1", "--m", "four"])), 2);
    assert_eq!(code(&pentgeom(&["verify", "/nonexistent/file.cert"])), 2);
    assert_eq!(code(&pentgeom(&["frobnicate"])), 2);
}

#[test]
fn admissible_table() {
    let o = pentgeom(&["admissible", "--k", "3", "--w", "7", "--r", "20..23"]);
    assert_eq!(code(&o), 0);
    let rows: Vec<String> = String::from_utf8(o.stdout).unwrap().lines().map(str::to_string).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("20\tbelow girth-5 bound"));
    assert!(rows[1].starts_with("21\tMoore case: exists"));
    assert!(rows[2].starts_with("22\tbound+1 excluded"));
    assert!(rows[3].starts_with("23\topen/possible"));
    let o = pentgeom(&["admissible", "--k", "2", "--w", "2", "--r", "2"]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("2\tMoore case: exists"));
    let o = pentgeom(&["admissible", "--k", "3", "--w", "9", "--r", "37"]);
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("37\tbound+1 excluded"));
}

#[test]
fn catalog_lookups() {
    let o = pentgeom(&["catalog", "--w", "33"]);
    assert_eq!(code(&o), 0);
    let row = json(&o);
    assert_eq!(row["smallest_pent3"][0], 5134);
    assert_eq!((row["moore_bound_girth6"].as_u64(), row["smallest_known_girth5"].as_u64()), (Some(2114), Some(1664)));
    assert_eq!(row["moore_bound_girth5"], 1090);
    let o = pentgeom(&["catalog", "--w", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["status"], "not-in-table");
}

#[test]
fn verify_detects_gdd_and_steiner_files() {
    let dir = TempDir::new().unwrap();
    let sts = pentgeom::designs::sts(7).unwrap();
    let o = pentgeom(&["verify", &write(&dir, "fano.txt", &sts.to_text())]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let gdd = pentgeom::designs::td(3, 5).unwrap();
    let o = pentgeom(&["verify", &write(&dir, "td.txt", &gdd.to_text())]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}
