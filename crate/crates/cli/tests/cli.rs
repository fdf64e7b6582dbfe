//! End-to-end runs of the installed binary: output shapes, exit codes,
//! and determinism across worker counts.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use chibound::codec::to_graph6;
use chibound::patterns::PatternId;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chibound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_chibound"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("binary exits normally")
}

// C5 in graph6; the running example for most commands.
const C5: &str = "Dhc";

#[test]
fn analyze_reports_the_five_headline_facts() {
    let out = run(&["analyze", C5]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("omega=2"), "{text}");
    assert!(text.contains("chi=3"), "{text}");
    assert!(text.contains(" imperfect "), "{text}");
    assert!(text.contains(" perfectly-divisible "), "{text}");
    assert!(text.contains("trisimplicial=[0,1,2,3,4]"), "{text}");
    assert!(text.contains("odd-hole=[0,1,2,3,4]"), "{text}");
}

#[test]
fn analyze_json_is_byte_stable() {
    let a = run(&["analyze", C5, "--format", "json"]);
    let b = run(&["analyze", C5, "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let records: serde_json::Value = serde_json::from_str(&stdout(&a)).expect("valid json");
    let r = &records[0];
    assert_eq!(r["omega"], 2);
    assert_eq!(r["chi"], 3);
    assert_eq!(r["perfect"], false);
    assert_eq!(r["perfectly_divisible"], true);
    assert_eq!(r["trisimplicial"], serde_json::json!([0, 1, 2, 3, 4]));
}

#[test]
fn color_emits_a_replayable_log_for_c5() {
    let out = run(&["color", C5]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("palette=3"), "{text}");
    assert!(text.contains("steps: base-case"), "{text}");
}

#[test]
fn color_rejects_a_graph_with_a_fork() {
    // K(1,3) plus a pendant on one leaf is the fork itself.
    let out = run(&["color", "DsC"]);
    assert_eq!(code(&out), 65);
    assert!(stderr(&out).contains("fork"), "{}", stderr(&out));
}

#[test]
fn patterns_names_the_parachute_with_its_roles() {
    let (g, _) = PatternId::Parachute(5).build().expect("buildable pattern");
    let out = run(&["patterns", &to_graph6(&g)]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("5-parachute"), "{text}");
    assert!(text.contains("apex="), "{text}");
}

#[test]
fn verify_passes_and_is_worker_count_invariant() {
    let a = run(&["verify", "main", "--n", "5", "--format", "json", "--workers", "1"]);
    let b = run(&["verify", "main", "--n", "5", "--format", "json", "--workers", "2"]);
    assert_eq!(code(&a), 0, "stderr: {}", stderr(&a));
    assert_eq!(code(&b), 0, "stderr: {}", stderr(&b));
    let mut ja: serde_json::Value = serde_json::from_str(&stdout(&a)).expect("valid json");
    let mut jb: serde_json::Value = serde_json::from_str(&stdout(&b)).expect("valid json");
    ja["seconds"] = serde_json::json!(0);
    jb["seconds"] = serde_json::json!(0);
    assert_eq!(ja, jb);
    assert_eq!(ja["violations"], serde_json::json!([]));
}

#[test]
fn verify_text_mentions_vacuity() {
    let out = run(&["verify", "main", "--n", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("PASS"), "{text}");
    assert!(text.contains("vacuous"), "{text}");
}

#[test]
fn hunt_reports_the_frontier() {
    let out = run(&["hunt", "--n", "5"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(
        stdout(&out).contains("no counterexample below 6 vertices"),
        "{}",
        stdout(&out)
    );
}

#[test]
fn table_csv_has_the_fixed_header() {
    let out = run(&["table", "--class", "3p1-free", "--n", "5", "--format", "csv"]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).starts_with("omega,max_chi,graphs\n"), "{}", stdout(&out));
}

#[test]
fn convert_reads_edge_lists_and_stdin() {
    let out = run_with_stdin(&["convert", "--input", "-"], "5\n0 1\n0 2\n0 3\n3 4\n");
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert_eq!(stdout(&out), "DsC\n");

    let out = run_with_stdin(&["convert", "--input", "-", "--format", "json"], "Dhc\n");
    assert_eq!(code(&out), 0);
    let records: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(records[0]["graph6"], "Dhc");
    assert_eq!(records[0]["edges"].as_array().expect("edge array").len(), 5);
}

#[test]
fn convert_emits_dot() {
    let out = run(&["convert", C5, "--format", "dot"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("graph g0 {"), "{text}");
    assert!(text.contains("0 -- 1;"), "{text}");
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("chibound-cli-{}.json", std::process::id()));
    let path_str = path.to_str().expect("utf8 temp path");
    let out = run(&["analyze", C5, "--format", "json", "--out", path_str]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).expect("file written");
    assert!(written.contains("\"omega\": 2"), "{written}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["analyze"])), 64);
    assert_eq!(code(&run(&["analyze", C5, "--input", "x"])), 64);
    assert_eq!(code(&run(&["verify", "main", "--n", "11"])), 64);
    assert_eq!(code(&run(&["table", "--class", "bogus", "--n", "4"])), 64);
    assert_eq!(code(&run(&["verify", "main", "--format", "dot"])), 64);
}

#[test]
fn data_errors_exit_65() {
    assert_eq!(code(&run(&["analyze", "*bad*"])), 65);
    assert_eq!(code(&run(&["analyze", "--input", "/nonexistent/path"])), 65);
    let out = run_with_stdin(&["convert", "--input", "-"], "");
    assert_eq!(code(&out), 65);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&["verify", "--help"])), 0);
}
