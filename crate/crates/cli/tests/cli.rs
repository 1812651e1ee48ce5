//! End-to-end runs of the binary: encode, scripted corruption, decode.

use std::path::PathBuf;
use std::process::{Command, Output};

use syncode::channel::{apply_edit_script, parse_edit_script, QaryString};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_syncode"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("syncode-test-{}-{name}", std::process::id()));
    p
}

fn corrupt(x: &str, script: &str) -> String {
    let parsed = QaryString::parse(x, 2).unwrap();
    let ops = parse_edit_script(script).unwrap();
    apply_edit_script(&parsed, &ops).unwrap().to_string()
}

#[test]
fn encode_decode_round_trip_with_scripted_edits() {
    let syn = temp_path("edit.json");
    let x = "01011010";
    let out = run(&[
        "encode", "--n", "8", "--k", "1", "--q", "2", "--x", x,
        "--out", syn.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    for script in ["d5", "i3:1", "s7:0", ""] {
        let y = if script.is_empty() { x.to_string() } else { corrupt(x, script) };
        let out = run(&["decode", "--y", &y, "--syndrome", syn.to_str().unwrap()]);
        assert!(out.status.success(), "script {script}: {out:?}");
        let text = stdout(&out);
        assert!(text.contains(&format!("result: {x}")), "script {script}: {text}");
        assert!(text.contains("candidates-examined:"));
    }
    std::fs::remove_file(&syn).ok();
}

#[test]
fn undecodable_input_exits_2() {
    let syn = temp_path("undecodable.json");
    let out = run(&[
        "encode", "--n", "8", "--k", "1", "--x", "01011010",
        "--out", syn.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // length 4 is beyond one edit of any length-8 string
    let out = run(&["decode", "--y", "0101", "--syndrome", syn.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    std::fs::remove_file(&syn).ok();
}

#[test]
fn bad_parameters_exit_4() {
    let out = run(&["encode", "--n", "0", "--k", "1", "--x", ""]);
    assert_eq!(out.status.code(), Some(4), "{out:?}");
    let out = run(&["decode", "--y", "01", "--syndrome", "/nonexistent/path.json"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn zero_error_code_has_unit_range() {
    let syn = temp_path("k0.json");
    let out = run(&[
        "encode", "--n", "4", "--k", "0", "--x", "0110",
        "--out", syn.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&syn).unwrap();
    assert!(text.contains("\"range\": \"1\""), "{text}");
    let out = run(&["decode", "--y", "0110", "--syndrome", syn.to_str().unwrap()]);
    assert!(out.status.success());
    std::fs::remove_file(&syn).ok();
}

#[test]
fn list_mode_round_trip() {
    let syn = temp_path("list.json");
    let x = "010110";
    let out = run(&[
        "encode", "--mode", "list", "--n", "6", "--k", "1", "--ell", "2",
        "--seed", "3", "--x", x, "--out", syn.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let y = corrupt(x, "d3");
    let out = run(&["list-decode", "--y", &y, "--syndrome", syn.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.lines().any(|line| line == x), "{text}");
    let count: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("candidates: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(count <= 2);
    std::fs::remove_file(&syn).ok();
}

#[test]
fn burst_mode_round_trip() {
    let syn = temp_path("burst.json");
    let x = "110100101101";
    let out = run(&[
        "encode", "--mode", "burst", "--n", "12", "--l", "3", "--x", x,
        "--out", syn.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = std::fs::read_to_string(&syn).unwrap();
    assert!(text.contains("phi1_bits"));
    // delete a 2-burst at position 4
    let y = corrupt(&corrupt(x, "d4"), "d4");
    let out = run(&["decode", "--y", &y, "--syndrome", syn.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains(&format!("result: {x}")));
    std::fs::remove_file(&syn).ok();
}

#[test]
fn protect_round_trip() {
    let x = "010110";
    let out = run(&["protect-encode", "--n", "6", "--k", "1", "--x", x]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let codeword = text
        .lines()
        .find_map(|l| l.strip_prefix("codeword: "))
        .unwrap()
        .to_string();
    let y = corrupt(&codeword, "d17");
    let out = run(&["protect-decode", "--n", "6", "--k", "1", "--y", &y]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains(&format!("result: {x}")));
}

#[test]
fn sync_sim_outputs_json_and_csv() {
    let json = temp_path("sim.json");
    let csv = temp_path("sim.csv");
    let out = run(&[
        "sync-sim", "--n", "6", "--a", "1", "--b", "2", "--p", "0", "--trials", "10",
        "--seed", "5", "--json", json.to_str().unwrap(), "--csv", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(summary["trials"], 10);
    // p = 0: fallback and incremental stop at step 2 with one syndrome sent
    let transcripts = summary["sample_transcripts"].as_array().unwrap();
    for t in transcripts {
        if t["mode"] != "naive" {
            assert_eq!(t["messages"].as_array().unwrap().len(), 2, "{t}");
        }
    }
    let csv_text = std::fs::read_to_string(&csv).unwrap();
    assert!(csv_text.starts_with("p,mode,mean_bits\n"));
    assert_eq!(csv_text.lines().count(), 5); // header + 3 modes + oracle
    std::fs::remove_file(&json).ok();
    std::fs::remove_file(&csv).ok();
}

#[test]
fn verify_suites_pass_and_fail_as_expected() {
    let out = run(&["verify", "--suite", "cff", "--cap-q", "5", "--b", "1", "--r", "2"]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("PASS"));

    let out = run(&["verify", "--suite", "coloring", "--n", "6", "--k", "1"]);
    assert!(out.status.success(), "{out:?}");
    assert!(stdout(&out).contains("properness: PASS"));

    // corrupted (undersized) family must fail with the obstruction printed
    let out = run(&[
        "verify", "--suite", "rvl", "--n-sets", "16", "--r", "2", "--v", "3",
        "--ell", "2", "--seed", "1", "--t-override", "10",
    ]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn bounds_table_includes_example_row() {
    let out = run(&["bounds", "--n", "16", "--k", "1", "--l", "2"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let row = text.lines().last().unwrap();
    assert!(row.trim_start().starts_with("16"), "{text}");
    assert!(row.contains("4.00"), "{text}");
}

#[test]
fn identical_invocations_are_byte_identical()  {
    let a = temp_path("det-a.json");
    let b = temp_path("det-b.json");
    for p in [&a, &b] {
        let out = run(&[
            "encode", "--mode", "list", "--n", "6", "--k", "1", "--ell", "2",
            "--seed", "9", "--x", "110010", "--out", p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_file(&a).ok();
    std::fs::remove_file(&b).ok();
}
