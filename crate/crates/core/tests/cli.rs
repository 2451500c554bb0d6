//! The `apollon` binary end to end: exit codes, outputs, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scene(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenes").join(name)
}

fn apollon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apollon")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn birkhoff_passes() {
    let s = scene("birkhoff.json");
    let o = apollon(&["birkhoff", "--scene", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("scene-sha256 "));
    assert!(text.trim_end().ends_with("result PASS"));
}

#[test]
fn demanding_a_margin_fails() {
    let s = scene("concentric.json");
    let o = apollon(&["contract-check", "--scene", s.to_str().unwrap(), "--samples", "50", "--tol", "-0.25"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).trim_end().ends_with("result FAIL"));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{ "dimension": 2, "unknown": 1 }"#).unwrap();
    let o = apollon(&["dist", "--scene", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown"));

    // A section the scene does not have.
    let s = scene("birkhoff.json");
    assert_eq!(apollon(&["dist", "--scene", s.to_str().unwrap()]).status.code(), Some(2));

    // Rendering needs a planar scene.
    let solid = dir.path().join("solid.json");
    std::fs::write(
        &solid,
        r#"{ "dimension": 3,
             "domains": { "ball": { "obstacles": [ { "ball_exterior": { "center": [0, 0, 0], "radius": 1 } } ], "witness": [0, 0, 0] } },
             "commands": { "render": { "domain": "ball" } } }"#,
    )
    .unwrap();
    let o = apollon(&["render", "--scene", solid.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("dimension"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn ifs_writes_a_deterministic_cover() {
    let s = scene("cantor.json");
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let o = apollon(&["ifs", "--scene", s.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let csv = std::fs::read_to_string(a.path().join("ifs.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "word,center0,center1,euclidean_radius,apollonian_diameter_bound");
    assert_eq!(csv.lines().count(), 1 + 4096);
    for file in ["ifs.csv", "ifs.txt"] {
        let x = std::fs::read(a.path().join(file)).unwrap();
        let y = std::fs::read(b.path().join(file)).unwrap();
        assert_eq!(x, y, "{file} differs between runs");
    }
}

#[test]
fn seeded_runs_are_identical() {
    let s = scene("concentric.json");
    let run = |seed: &str| stdout(&apollon(&["contract-check", "--scene", s.to_str().unwrap(), "--samples", "40", "--seed", seed]));
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}

#[test]
fn render_writes_svg() {
    let s = scene("cantor.json");
    let dir = tempfile::tempdir().unwrap();
    let o = apollon(&["render", "--scene", s.to_str().unwrap(), "--out", dir.path().to_str().unwrap(), "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("render.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("viewport: world"));
}
