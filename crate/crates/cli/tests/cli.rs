//! End-to-end tests of the `intervals` binary: output shapes, exit codes,
//! and byte stability.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_intervals"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn analyze_running_example() {
    let out = bin().args(["analyze", "314297856"]).output().unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("proper intervals (6): [1,4] [5,6] [5,8] [5,9] [7,8] [7,9]"));
    assert!(text.contains("simple: false"));
}

#[test]
fn analyze_blockwise_example() {
    let out = bin().args(["analyze", "4253716"]).output().unwrap();
    let text = stdout(&out);
    assert!(text.contains("block-wise simple: true"));
    assert!(text.contains("simple: false"));
}

#[test]
fn analyze_trivial_permutation() {
    let out = bin().args(["analyze", "1"]).output().unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("n: 1"));
    assert!(text.contains("proper intervals (0):"));
}

#[test]
fn analyze_rejects_garbage_with_exit_2() {
    let out = bin().args(["analyze", "31x2"]).output().unwrap();
    assert_eq!(code(&out), 2);
    let out = bin().args(["analyze", "1123"]).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn analyze_writes_dot_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("p.dot");
    let json = dir.path().join("p.json");
    let out = bin()
        .args(["analyze", "2413"])
        .arg("--dot")
        .arg(&dot)
        .arg("--json")
        .arg(&json)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let dot_text = std::fs::read_to_string(&dot).unwrap();
    assert!(dot_text.starts_with("digraph interval_poset {"));
    assert_eq!(dot_text.matches(" -> ").count(), 4);
    let json_text = std::fs::read_to_string(&json).unwrap();
    assert_eq!(
        json_text.trim_end(),
        r#"{"n":4,"intervals":[[1,1],[1,4],[2,2],[3,3],[4,4]]}"#
    );
}

#[test]
fn convert_tengon_matches_fixture() {
    let out = bin()
        .arg("convert")
        .arg(fixture("tengon_dissection.json"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let expected = std::fs::read_to_string(fixture("tengon_poset.json")).unwrap();
    assert_eq!(stdout(&out).trim_end(), expected.trim_end());
}

#[test]
fn convert_empty_pentagon_gives_dual_claw() {
    let out = bin()
        .arg("convert")
        .arg(fixture("empty_pentagon_dissection.json"))
        .output()
        .unwrap();
    let expected = std::fs::read_to_string(fixture("dual_claw_poset.json")).unwrap();
    assert_eq!(stdout(&out).trim_end(), expected.trim_end());
}

#[test]
fn convert_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let diss = dir.path().join("d.json");
    let back = dir.path().join("p.json");
    let out = bin()
        .arg("convert")
        .arg(fixture("nested_poset.json"))
        .arg("--output")
        .arg(&diss)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let out = bin()
        .arg("convert")
        .arg(&diss)
        .arg("--output")
        .arg(&back)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let original = std::fs::read_to_string(fixture("nested_poset.json")).unwrap();
    let returned = std::fs::read_to_string(&back).unwrap();
    assert_eq!(original.trim_end(), returned.trim_end());
}

#[test]
fn convert_accepts_inline_json() {
    let out = bin()
        .args(["convert", r#"{"m":5,"diagonals":[]}"#])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).trim_end(),
        r#"{"n":4,"intervals":[[1,1],[1,4],[2,2],[3,3],[4,4]]}"#
    );
}

#[test]
fn convert_direction_mismatch_is_a_parse_error() {
    let out = bin()
        .arg("convert")
        .arg(fixture("nested_poset.json"))
        .args(["--direction", "dissection-to-poset"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn convert_crossing_square_on_psi_route_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let sq = dir.path().join("sq.json");
    std::fs::write(&sq, r#"{"m":4,"diagonals":[[1,3],[2,4]]}"#).unwrap();
    let out = bin()
        .arg("convert")
        .arg(&sq)
        .args(["--map", "psi"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("HasCrossings"));
}

#[test]
fn convert_unframed_c8_example_exits_3() {
    // the intersectional-components example is not diagonally framed
    let out = bin()
        .arg("convert")
        .arg(fixture("octagon_components_dissection.json"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("NotFramed"));
}

#[test]
fn convert_dual_claw_on_psi_route_exits_3() {
    let out = bin()
        .arg("convert")
        .arg(fixture("dual_claw_poset.json"))
        .args(["--map", "psi"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("NotBinary"));
}

#[test]
fn enumerate_blockwise_table() {
    let out = bin().args(["enumerate", "blockwise", "4..7"]).output().unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("family,n,count,method\n"));
    for line in [
        "blockwise,4,1,formula",
        "blockwise,5,1,brute_perm",
        "blockwise,6,1,structured_dissection",
        "blockwise,7,5,formula",
        "blockwise,7,5,brute_perm",
    ] {
        assert!(text.contains(line), "missing {line} in:\n{text}");
    }
}

#[test]
fn enumerate_json_format() {
    let out = bin()
        .args(["enumerate", "all", "2..3", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert!(rows.contains(&serde_json::json!({
        "family": "all", "n": 3, "count": "3", "method": "formula"
    })));
}

#[test]
fn enumerate_cap_violation_without_big_exits_5() {
    let out = bin()
        .args(["enumerate", "all", "2..10", "--methods", "brute_perm"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 5);
}

#[test]
fn enumerate_big_flag_allows_n_ten() {
    let out = bin()
        .args(["enumerate", "all", "10..10", "--methods", "formula,brute_perm", "--big"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("all,10,155025,formula"));
    assert!(text.contains("all,10,155025,brute_perm"));
}

#[test]
fn enumerate_method_family_mismatch_exits_5() {
    let out = bin()
        .args(["enumerate", "tree", "2..5", "--methods", "formula"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 5);
}

#[test]
fn enumerate_unknown_family_exits_2() {
    let out = bin().args(["enumerate", "everything", "2..5"]).output().unwrap();
    assert_eq!(code(&out), 2);
    let out = bin().args(["enumerate", "all", "5..2"]).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_small_run_passes() {
    let out = bin().args(["verify", "--max-n", "4"]).output().unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for suite in [
        "interval_algebra",
        "no_three_cover",
        "framed_image",
        "roundtrip_phi",
        "roundtrip_psi",
        "tree_restriction",
        "blockwise_restriction",
        "binary_restriction",
        "realize_roundtrip",
        "component_completeness",
    ] {
        assert!(text.contains(&format!("suite {suite}: pass")), "missing {suite}");
    }
}

#[test]
fn verify_suite_filter() {
    let out = bin()
        .args(["verify", "--max-n", "5", "--suites", "roundtrip_phi"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("suite roundtrip_phi: pass"));
    let out = bin()
        .args(["verify", "--suites", "bogus"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_corrupted_fixture_fails_with_reason() {
    let out = bin()
        .arg("verify")
        .arg("--poset")
        .arg(fixture("corrupted_tengon_poset.json"))
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("HasQuadrilateral"));
}

#[test]
fn verify_valid_fixture_passes() {
    for f in ["tengon_poset.json", "nested_poset.json", "dual_claw_poset.json"] {
        let out = bin().arg("verify").arg("--poset").arg(fixture(f)).output().unwrap();
        assert_eq!(code(&out), 0, "{f} should validate");
    }
}

#[test]
fn render_square_with_one_diagonal() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("sq.json");
    let svg = dir.path().join("sq.svg");
    std::fs::write(&input, r#"{"m":4,"diagonals":[[1,3]]}"#).unwrap();
    let out = bin().arg("render").arg(&input).arg(&svg).output().unwrap();
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line").count(), 5); // 4 outer + 1 diagonal
    assert_eq!(text.matches("<text").count(), 4);
    assert_eq!(text.matches("#c0392b").count(), 1);
}

#[test]
fn render_tengon_example() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("t.svg");
    let out = bin()
        .arg("render")
        .arg(fixture("tengon_dissection.json"))
        .arg(&svg)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<line").count(), 16); // 10 outer + 6 diagonals
    assert_eq!(text.matches("#c0392b").count(), 6);
    assert_eq!(text.matches("<text").count(), 10);
}

#[test]
fn outputs_are_byte_stable_across_runs_and_workers() {
    let run = |workers: &str| {
        let out = bin()
            .args(["--workers", workers, "enumerate", "all", "2..7"])
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("4"));

    let dir = tempfile::tempdir().unwrap();
    let svg_a = dir.path().join("a.svg");
    let svg_b = dir.path().join("b.svg");
    for path in [&svg_a, &svg_b] {
        let out = bin()
            .arg("render")
            .arg(fixture("tengon_dissection.json"))
            .arg(path)
            .output()
            .unwrap();
        assert_eq!(code(&out), 0);
    }
    assert_eq!(
        std::fs::read(&svg_a).unwrap(),
        std::fs::read(&svg_b).unwrap()
    );
}
