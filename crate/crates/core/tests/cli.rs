mod common;

use std::process::{Command, Output};

fn psg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psg"))
        .args(args)
        .env_remove("PSG_ORACLE_LIMIT")
        .output()
        .expect("run psg")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    common::test_dir().join("fixtures").join(name).to_string_lossy().into_owned()
}

#[test]
fn certificates_from_files() {
    for (cmd, name) in [
        ("certify-ladder", "ladder_small"),
        ("certify-ladder", "ladder_wide"),
        ("certify-hex", "hexagon"),
        ("certify-hex", "hexagon_single_r"),
    ] {
        let text = stdout(&psg(&[cmd, &fixture(&format!("{name}.psg")), &fixture(&format!("{name}.cfg"))]));
        let signs: Vec<char> = text.lines().take(2).map(|l| l.split_whitespace().nth(1).unwrap().chars().next().unwrap()).collect();
        assert_eq!(signs.len(), 2, "{name}: {text}");
        assert_ne!(signs[0], signs[1], "{name}: H1 and H2 must differ in sign");
    }
}

#[test]
fn coham_from_circle_round_trips() {
    let file = fixture("grid_4x4_box22.psg");
    let ham = stdout(&psg(&["ham", &file]));
    for line in ham.lines().skip(2) {
        let (sign, circle) = line.split_once(' ').unwrap();
        let out = stdout(&psg(&["coham", &file, "--circle", circle, "--oracle"]));
        assert!(out.ends_with(&format!("circle {sign} {circle}\n")), "{out}");
    }
}

#[test]
fn elimination_on_two_negative_boxes() {
    let out = stdout(&psg(&["dual", &fixture("grid_4x3_two_boxes.psg"), "--eliminate", "--policy", "min-phi"]));
    assert!(out.contains("tree no\n"));
    assert!(out.contains("outcome tree\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(psg(&["faces"]).status.code(), Some(2));
    assert_eq!(psg(&["faces", "/nonexistent.psg"]).status.code(), Some(2));
    let file = fixture("grid_3x4.psg");
    let out = psg(&["peel", &file, "--circle", "0 1 2 3 7 11 10 9 8 4 0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: NoHamiltonianCircle"));
    let limited = Command::new(env!("CARGO_BIN_EXE_psg"))
        .args(["census", &file])
        .env("PSG_ORACLE_LIMIT", "1")
        .output()
        .unwrap();
    assert_eq!(limited.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&limited.stderr).starts_with("error: LimitExceeded"));
}

#[test]
fn dot_exports() {
    let grid = stdout(&psg(&["grid", "2", "2"]));
    let dir = std::env::temp_dir().join(format!("psg-cli-it-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g22.psg");
    std::fs::write(&path, grid).unwrap();
    let dot = stdout(&psg(&["export-dot", path.to_str().unwrap()]));
    assert_eq!(dot.matches(" -- ").count(), 4);
    let dual = stdout(&psg(&["export-dot", &fixture("grid_4x3_two_boxes.psg"), "--dual"]));
    assert_eq!(dual.matches("[label=").count(), 6);
    assert_eq!(dual.matches("(-2,").count(), 2);
}
