//! Command-line behavior: outputs, exit codes and file formats.

use std::path::PathBuf;
use std::process::Command;

use chm_mub::cli::{run, CommandConfig};
use chm_mub::io::read_sweep_csv;
use chm_mub::CMatrix;
use clap::Parser;

fn exec(args: &[&str]) -> (i32, String, String) {
    let cfg = CommandConfig::try_parse_from(std::iter::once("chm-mub").chain(args.iter().copied()))
        .unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cfg, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chm-mub-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn preset_rank_is_three() {
    let (code, out, _) = exec(&["chm-rank", "--preset", "eq5"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("3"));
    assert_eq!(lines.next().unwrap().split_whitespace().count(), 4);
}

#[test]
fn optimize_example1_reaches_log2_3() {
    let (code, out, _) = exec(&["ep-optimize", "--preset", "example1"]);
    assert_eq!(code, 0);
    let v: f64 = out.lines().next().unwrap().parse().unwrap();
    assert!((v - 1.584962500721).abs() < 1e-9);
    let json: serde_json::Value = serde_json::from_str(out.lines().nth(1).unwrap()).unwrap();
    assert!(json["input"]["d"].is_array());
}

#[test]
fn identity_is_not_a_chm() {
    let ident = serde_json::to_string(&CMatrix::identity(6)).unwrap();
    let p = tmp("identity.json", &ident);
    let (code, out, err) = exec(&["chm-check", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("modulus deviation"));
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["is_chm"], false);
}

#[test]
fn malformed_json_reports_line() {
    let p = tmp(
        "bad.json",
        "{\n  \"rows\": 6,\n  \"cols\": 6,\n  \"data\": [[1, 0],]\n}\n",
    );
    let (code, _, err) = exec(&["chm-check", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn wrong_shape_is_bad_input() {
    let m = serde_json::to_string(&CMatrix::identity(4)).unwrap();
    let p = tmp("four.json", &m);
    assert_eq!(exec(&["chm-check", "--input", p.to_str().unwrap()]).0, 2);
    assert_eq!(exec(&["chm-rank", "--preset", "nope"]).0, 2);
}

#[test]
fn build_round_trips_bit_exact() {
    let (code, out, _) = exec(&["chm-build", "--preset", "lemma2i"]);
    assert_eq!(code, 0);
    let m: CMatrix = serde_json::from_str(&out).unwrap();
    let want = chm_mub::presets::Preset::Lemma2i
        .matrix(&Default::default())
        .unwrap();
    assert_eq!(m, want);
    let p = tmp("built.json", &out);
    let (code, out2, _) = exec(&["chm-rank", "--input", p.to_str().unwrap()]);
    assert_eq!((code, out2.lines().next()), (0, Some("3")));
}

#[test]
fn build_from_params_file() {
    let params = r#"{"alpha":[0.7853981633974483,0.7853981633974483,0.7853981633974483],
        "beta":[0,0.5235987755982988,1.0471975511965976],
        "gamma":[0,1.0471975511965976,2.0943951023931953],
        "v":{"rows":3,"cols":3,"data":[[0.5773502691896258,0],[0.5773502691896258,0],[0.5773502691896258,0],
            [0.5773502691896258,0],[-0.2886751345948129,0.5],[-0.2886751345948129,-0.5],
            [0.5773502691896258,0],[-0.2886751345948129,-0.5],[-0.2886751345948129,0.5]]},
        "w":{"rows":3,"cols":3,"data":[[1,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[0,0],[1,0]]}}"#;
    let p = tmp("params.json", params);
    let (code, out, err) = exec(&["chm-check", "--input", p.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("\"is_chm\": true"));
}

#[test]
fn scan_emits_json_lines() {
    let (code, out, _) = exec(&["mub-scan", "--preset", "eq5"]);
    assert_eq!(code, 0);
    let findings = chm_mub::io::read_findings(&out).unwrap();
    assert!(findings
        .iter()
        .any(|f| f.rows == [3, 4, 5] && f.cols == [0, 1]));
    let (_, strict, _) = exec(&["mub-scan", "--preset", "eq5", "--strict-real"]);
    let (_, deph, _) = exec(&["mub-scan", "--preset", "eq5", "--dephased"]);
    assert!(strict.lines().count() <= out.lines().count());
    assert!(deph.lines().count() >= out.lines().count());
    let (code, prod, _) = exec(&["mub-scan", "--preset", "eq5", "--scan-products"]);
    assert_eq!(code, 0);
    assert!(prod.contains("\"product\""));
}

#[test]
fn certify_exit_codes() {
    let (code, out, _) = exec(&["ep-certify", "--preset", "example1"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"certified\": true"));
    assert_eq!(exec(&["ep-certify", "--preset", "lemma2ii"]).0, 1);
    assert_eq!(exec(&["ep-certify", "--preset", "eq5"]).0, 2);
}

#[test]
fn sweep_csv_contract() {
    let (code, out, _) = exec(&["ep-sweep", "--figure", "3", "--points", "5"]);
    assert_eq!(code, 0);
    let rows = read_sweep_csv(out.as_bytes()).unwrap();
    assert_eq!(rows.len(), 35);
    assert!(out.starts_with("x,value_ebits,curve_label\n"));
    let (code, custom, _) = exec(&[
        "ep-sweep",
        "--points",
        "3",
        "--beta1",
        "-1.5",
        "--d",
        "0.6,0.8,0",
        "--label",
        "mine",
    ]);
    assert_eq!(code, 0);
    let rows = read_sweep_csv(custom.as_bytes()).unwrap();
    assert!(rows.iter().all(|r| r.curve_label == "mine"));
    assert_eq!(exec(&["ep-sweep", "--points", "0"]).0, 2);
    assert_eq!(exec(&["ep-sweep", "--d", "1,1,1"]).0, 2);
}

#[test]
fn one_zero_scan_report() {
    let (code, out, _) = exec(&["appendix-c", "--grid-n", "50"]);
    assert_eq!(code, 0);
    assert!(out.contains("to_origin"));
    assert_eq!(exec(&["appendix-c", "--grid-n", "3"]).0, 2);
}

#[test]
fn search_is_thread_count_independent() {
    let args = [
        "mub-search",
        "--preset",
        "eq5",
        "--restarts",
        "3",
        "--max-iters",
        "300",
    ];
    let (code, a, _) = exec(&args);
    assert_eq!(code, 0);
    let mut one = args.to_vec();
    one.extend(["--threads", "1"]);
    assert_eq!(exec(&one).1, a);
    assert_eq!(exec(&["mub-search", "--preset", "lemma2ii"]).0, 2);
}

#[test]
fn output_file_is_byte_identical() {
    let dir = std::env::temp_dir().join(format!("chm-mub-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("a.csv"), dir.join("b.csv"));
    for p in [&a, &b] {
        let (code, out, _) = exec(&[
            "ep-sweep",
            "--figure",
            "5",
            "--points",
            "7",
            "--output",
            p.to_str().unwrap(),
        ]);
        assert_eq!((code, out.as_str()), (0, ""));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_chm-mub");
    let st = Command::new(bin)
        .args(["chm-rank", "--preset", "eq5"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(0));
    let st = Command::new(bin)
        .args(["chm-check", "--preset", "example1"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(1));
    let st = Command::new(bin)
        .args(["no-such-command"])
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = Command::new(bin)
        .args(["chm-check", "--preset", "eq5"])
        .env("CHM_MUB_TOL", "-1")
        .output()
        .unwrap();
    assert_eq!(st.status.code(), Some(2));
}
