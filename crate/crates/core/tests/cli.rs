use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str], input: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclofan")).args(args).arg("--input").arg(input).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn plane_defaults() {
    let o = run(&[], &fixture("projective_plane.json"));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("decomposition: G:3"), "{text}");
    assert!(text.contains("verdict: Permutation"));
}

#[test]
fn rotation_text() {
    let o = run(&["--graded"], &fixture("product_of_lines_rotation.json"));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("decomposition: G:2, <c^2>:1"), "{text}");
    assert!(text.contains("agree true"), "{text}");
}

#[test]
fn hexagon_graded_is_not_permutation_but_exits_zero() {
    let o = run(&["--graded", "--cross-check"], &fixture("hexagon.json"));
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("graded verdict: NotPermutation"), "{text}");
    assert!(text.contains("verdict: NotPermutation (multiplicity -1 at l=1)"), "{text}");
    assert!(text.contains("cross-check: all identities hold"), "{text}");
}

#[test]
fn improper_action_exits_with_validation_code() {
    let o = run(&[], &fixture("swap_on_projective_plane.json"));
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("proper"), "{err}");
}

#[test]
fn non_primitive_rays_need_the_flag() {
    let o = run(&[], &fixture("non_primitive_rays.json"));
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["--normalize-rays"], &fixture("non_primitive_rays.json"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("decomposition: G:3"));
}

#[test]
fn geometric_validation_runs_in_the_plane() {
    let o = run(&["--validation", "geometric", "--format", "json"], &fixture("hexagon.json"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"achieved\": \"geometric\""));
}

#[test]
fn order_cap() {
    let o = run(&["--max-order", "3"], &fixture("hexagon.json"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_failures_exit_with_three() {
    let dir = std::env::temp_dir().join(format!("cyclofan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ \"dim\": 2, \"rays\": [[1, 0]\n").unwrap();
    let o = run(&[], &bad);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let shape = dir.join("shape.json");
    std::fs::write(&shape, r#"{"dim": 2, "rays": [[1,0],[0,1],[-1,-1]], "maximal_cones": [[0,1],[1,2],[0,2]], "generator": [[1,0,0],[0,1,0]]}"#).unwrap();
    assert_eq!(run(&[], &shape).status.code(), Some(3));

    let missing = dir.join("missing.json");
    assert_eq!(run(&[], &missing).status.code(), Some(3));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_integers_are_strings() {
    let o = run(&["--format", "json"], &fixture("product_of_lines_rotation.json"));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], "4");
    assert_eq!(v["divisors"][0]["ungraded"], "2");
    assert_eq!(v["decomposition"]["rows"][1]["multiplicity"], "1");
}
