use std::process::{Command, Output};

fn enm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn headers_match_golden_file() {
    let golden = include_str!("golden/headers.csv");
    for line in golden.lines() {
        let (command, header) = line.split_once(',').unwrap();
        let args: Vec<&str> = match command {
            "verify" => vec![command, "--cases", "1"],
            _ => vec![command, "--points", "2", "--t-max", "1"],
        };
        let out = enm(&args);
        assert!(
            out.status.success(),
            "{command}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert_eq!(stdout(&out).lines().next(), Some(header), "{command}");
    }
}

#[test]
fn correlations_example() {
    let out = enm(&[
        "correlations",
        "--a",
        "1",
        "--x",
        "0",
        "--f",
        "optimal",
        "--t-max",
        "3",
        "--points",
        "50",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.ends_with('\n') && !text.ends_with("\n\n"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 51);
    let first: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(first[0], "0");
    assert_eq!(first[1], "0.5");
    assert_eq!(first[5], "1");
}

#[test]
fn spectrum_example() {
    let out = enm(&["spectrum", "--s-max", "4", "--points", "10", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 10);
    for key in ["lambda1", "lambda2", "lambda3", "lambda4"] {
        assert_eq!(rows[0][key], 1.0);
    }
    assert_eq!(rows[9]["s"], 4.0);
}

#[test]
fn verify_example_passes() {
    let out = enm(&["verify", "--suite", "all", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for suite in ["roundtrip", "subadditivity", "monotonicity", "discord", "saturation"] {
        assert!(
            text.lines().any(|l| l.starts_with(suite) && l.ends_with(",pass")),
            "{suite}"
        );
    }
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["correlations", "--x", "0.4", "--points", "40", "--format", "json"];
    let base = enm(&args).stdout;
    for threads in ["1", "3"] {
        let out = Command::new(env!("CARGO_BIN_EXE_enm"))
            .args(args)
            .env("ENM_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(out.stdout, base);
    }
    let verify = ["verify", "--seed", "3", "--cases", "30"];
    assert_eq!(enm(&verify).stdout, enm(&verify).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(enm(&["choi", "--bogus"]).status.code(), Some(1));
    assert_eq!(enm(&["choi", "--points", "1"]).status.code(), Some(1));
    assert_eq!(enm(&["choi", "--spacing", "log"]).status.code(), Some(1));
    assert_eq!(enm(&["choi", "--f", "wobble(t)"]).status.code(), Some(1));
    assert_eq!(enm(&["choi", "--x", "1.5"]).status.code(), Some(2));
    assert_eq!(enm(&["choi", "--x", "1.5", "--f", "zero"]).status.code(), Some(0));
    assert_eq!(enm(&["--help"]).status.code(), Some(0));
    let out = enm(&["choi", "--x", "2"]);
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn expression_rates() {
    let out = enm(&["coherence", "--f", "expr:-0.5*tanh(t)", "--points", "5", "--t-max", "2"]);
    assert!(out.status.success());
    for line in stdout(&out).lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!((v[1] - v[2]).abs() < 1e-7, "{line}");
    }
}

#[test]
fn zero_information_reports_infinite_bound() {
    let out = enm(&["qfi", "--points", "3", "--t-max", "1"]);
    let text = stdout(&out);
    assert_eq!(text.lines().nth(1), Some("0,0,inf"));
}
