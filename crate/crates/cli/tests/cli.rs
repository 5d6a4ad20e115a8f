use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const ROTATION: &str = r#"{"n":2,"matrices":[[["0","1"],["-1","0"]]]}"#;
const UPPER: &str = r#"{"n":2,"matrices":[[["0","1"],["0","0"]]]}"#;
const LOWER: &str = r#"{"n":2,"matrices":[[["0","0"],["1","0"]]]}"#;
const HEISENBERG: &str = r#"{"n":3,"matrices":[
  [["0","1","0"],["0","0","0"],["0","0","0"]],
  [["0","0","0"],["0","0","1"],["0","0","0"]],
  [["0","0","1"],["0","0","0"],["0","0","0"]]
]}"#;
const BOREL: &str = r#"{"n":2,"matrices":[[["1","0"],["0","0"]],[["0","1"],["0","0"]],[["0","0"],["0","1"]]]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn forge(args: &[&str], env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_forge"));
    cmd.args(args).env_remove("FORGE_LIMITS");
    if let Some(v) = env {
        cmd.env("FORGE_LIMITS", v);
    }
    cmd.output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn semisimple_group_of_rotation() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "rot.json", ROTATION);
    let out = forge(&["semisimple-group", s(&input)], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n=2\nx_1_2 + x_2_1\nx_1_1 - x_2_2\nx_2_1^2 + x_2_2^2 - 1\n");
}

#[test]
fn nilpotent_group_of_e12_is_linear() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "e12.json", UPPER);
    let out = forge(&["nilpotent-group", s(&input)], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n=2\nx_2_2 - 1\nx_2_1\nx_1_1 - 1\n");
}

#[test]
fn spair_cap_exits_with_resource_status() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "heis.json", HEISENBERG);
    let out = forge(&["nilpotent-group", s(&input), "--max-spairs", "1"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("S-pair cap"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());

    let from_env = forge(&["nilpotent-group", s(&input)], Some("max-spairs=1"));
    assert_eq!(from_env.status.code(), Some(2));
    let flag_wins = forge(&["nilpotent-group", s(&input), "--max-spairs", "1000"], Some("max-spairs=1"));
    assert_eq!(flag_wins.status.code(), Some(0));
}

#[test]
fn degree_cap_exits_with_resource_status() {
    let dir = TempDir::new().unwrap();
    // companion matrix of x^3 - 2, splitting field of degree 6
    let input = write(&dir, "cube.json", r#"{"n":3,"matrices":[[["0","0","2"],["1","0","0"],["0","1","0"]]]}"#);
    let out = forge(&["semisimple-group", s(&input), "--degree-cap", "4"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degree-cap"));
}

#[test]
fn parse_and_domain_errors_exit_one() {
    let dir = TempDir::new().unwrap();
    let ragged = write(&dir, "ragged.json", r#"{"n":2,"matrices":[[["0","1"],["0"]]]}"#);
    let out = forge(&["nilpotent-group", s(&ragged)], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("matrices[0][1]"));

    let not_nilpotent = write(&dir, "rot.json", ROTATION);
    assert_eq!(forge(&["nilpotent-group", s(&not_nilpotent)], None).status.code(), Some(1));
    assert_eq!(forge(&["nilpotent-group", "/nonexistent/input.json"], None).status.code(), Some(1));
    assert_eq!(forge(&["nilpotent-group"], None).status.code(), Some(1));
    assert_eq!(forge(&["nilpotent-group", s(&ragged), "--max-spairs", "0"], None).status.code(), Some(1));
    assert_eq!(forge(&["nilpotent-group", s(&not_nilpotent)], Some("max-spairs=x")).status.code(), Some(1));
}

#[test]
fn generated_group_from_serialized_groups() {
    let dir = TempDir::new().unwrap();
    let up = write(&dir, "up.json", UPPER);
    let low = write(&dir, "low.json", LOWER);
    let up_group = dir.path().join("up.group");
    let low_group = dir.path().join("low.group");
    assert_eq!(forge(&["nilpotent-group", s(&up), "--out", s(&up_group)], None).status.code(), Some(0));
    assert_eq!(forge(&["nilpotent-group", s(&low), "--out", s(&low_group)], None).status.code(), Some(0));
    let out = forge(&["generated-group", s(&up_group), s(&low_group), "--trace"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n=2\nx_1_2*x_2_1 - x_1_1*x_2_2 + 1\n");
    assert!(stderr(&out).lines().any(|l| l.starts_with("trace: round 1")));

    let capped = forge(&["generated-group", s(&up_group), s(&low_group), "--max-rounds", "1"], None);
    assert_eq!(capped.status.code(), Some(2));
    assert!(stderr(&capped).contains("max-rounds"));
}

#[test]
fn tangent_space_round_trip() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "heis.json", HEISENBERG);
    let group = dir.path().join("heis.group");
    assert_eq!(forge(&["nilpotent-group", s(&input), "--out", s(&group)], None).status.code(), Some(0));
    let out = forge(&["tangent-space", s(&group)], None);
    assert_eq!(out.status.code(), Some(0));
    let tangent = write(&dir, "tangent.json", &stdout(&out));
    let again = forge(&["nilpotent-group", s(&tangent)], None);
    assert_eq!(stdout(&again), std::fs::read_to_string(&group).unwrap());
}

#[test]
fn lie_algebra_commands() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "borel.json", BOREL);
    let split = forge(&["reductive-decomposition", s(&input)], None);
    assert_eq!(split.status.code(), Some(0));
    let text = stdout(&split);
    assert!(text.contains("[l] dim=0") && text.contains("[d] dim=2") && text.contains("[n] dim=1"), "{text}");

    let parts = forge(&["reductive-group-parts", s(&input)], None);
    assert_eq!(parts.status.code(), Some(0));
    assert_eq!(stdout(&parts), "[H]\nn=2\nx_2_1\nx_1_2\n[U]\nn=2\nx_2_2 - 1\nx_2_1\nx_1_1 - 1\n");

    let group = forge(&["group-from-lie-algebra", s(&input)], None);
    assert_eq!(group.status.code(), Some(0));
    assert_eq!(stdout(&group), "n=2\nx_2_1\n");
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "heis.json", HEISENBERG);
    let a = forge(&["nilpotent-group", s(&input)], None);
    let b = forge(&["nilpotent-group", s(&input)], None);
    assert_eq!(a.stdout, b.stdout);
    let rot = write(&dir, "rot.json", ROTATION);
    assert_eq!(forge(&["semisimple-group", s(&rot)], None).stdout, forge(&["semisimple-group", s(&rot)], None).stdout);
}
