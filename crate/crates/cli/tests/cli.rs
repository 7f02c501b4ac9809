use std::process::{Command, Output};

use serde_json::Value;

fn cubeclif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubeclif"))
        .args(args)
        .env_remove("CUBE_CLIFFORD_TOLERANCE")
        .env_remove("CUBE_CLIFFORD_RESIDUAL_TOLERANCE")
        .env_remove("CUBE_CLIFFORD_PIVOT_TOLERANCE")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = cubeclif(args);
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "{args:?}: {e}\nstdout: {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (out.status.code().unwrap(), value)
}

fn code(args: &[&str]) -> i32 {
    cubeclif(args).status.code().unwrap()
}

fn close(v: &Value, expected: f64) -> bool {
    (v.as_f64().unwrap() - expected).abs() <= 1e-9
}

#[test]
fn matrix_n1_is_the_swap() {
    let (code, v) = json(&["matrix", "--n", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["matrix"], serde_json::json!([[0, 1], [1, 0]]));
}

#[test]
fn matrix_huang_cross_check() {
    let (code, v) = json(&["matrix", "--n", "2", "--huang"]);
    assert_eq!(code, 0);
    assert_eq!(v["identical"], Value::Bool(true));
}

#[test]
fn weighted_matrix_entries() {
    let (code, v) = json(&["matrix", "--n", "2", "--weights", "3,4"]);
    assert_eq!(code, 0);
    let rows = v["matrix"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    for row in rows {
        for x in row.as_array().unwrap() {
            assert!([0, 3, -3, 4, -4].contains(&x.as_i64().unwrap()));
        }
    }
}

#[test]
fn fractional_weights_use_floats_unless_rational() {
    let (status, v) = json(&["matrix", "--n", "2", "--weights", "0.5,2"]);
    assert_eq!(status, 0);
    assert_eq!(v["matrix"][0][1].as_f64(), Some(0.5));
    assert_eq!(
        code(&["matrix", "--n", "2", "--weights", "0.5,2", "--rational"]),
        2
    );
}

#[test]
fn matrix_usage_errors() {
    assert_eq!(code(&["matrix", "--n", "2", "--weights", "1"]), 2);
    assert_eq!(code(&["matrix", "--n", "2", "--weights", "-1,2"]), 2);
    assert_eq!(code(&["matrix", "--n", "2", "--weights", "x,2"]), 2);
    assert_eq!(code(&["matrix", "--n", "0"]), 2);
    assert_eq!(code(&["matrix", "--n", "13"]), 2);
}

#[test]
fn verify_exhaustive_n4() {
    let (code, v) = json(&["verify", "--n", "4", "--mode", "exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["instances_checked"], 11440);
    assert_eq!(v["min_max_degree"], 2);
    assert_eq!(v["all_hold"], Value::Bool(true));
    for key in [
        "n",
        "weights",
        "mode",
        "failures",
        "slack_histogram",
        "seed",
        "elapsed",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn verify_sample_n6() {
    let (code, v) = json(&[
        "verify",
        "--n",
        "6",
        "--mode",
        "sample",
        "--samples",
        "100000",
        "--seed",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["instances_checked"], 100000);
    assert_eq!(v["all_hold"], Value::Bool(true));
    assert_eq!(v["seed"], 0);
}

#[test]
fn heavy_exhaustive_run_is_refused() {
    let out = cubeclif(&["verify", "--n", "5", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-heavy"));
}

#[test]
fn verify_usage_errors() {
    assert_eq!(code(&["verify", "--n", "4"]), 2);
    assert_eq!(code(&["verify", "--n", "4", "--mode", "both"]), 2);
    assert_eq!(code(&["verify", "--n", "6", "--mode", "exhaustive"]), 2);
    assert_eq!(
        code(&[
            "verify",
            "--n",
            "3",
            "--mode",
            "exhaustive",
            "--weights",
            "1,2,3"
        ]),
        2
    );
    assert_eq!(
        code(&["verify", "--n", "3", "--mode", "sample", "--threads", "0"]),
        2
    );
    assert_eq!(
        code(&[
            "verify",
            "--n",
            "3",
            "--mode",
            "sample",
            "--weights",
            "1,2",
            "--random-weights",
            "3"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "verify",
            "--n",
            "3",
            "--mode",
            "sample",
            "--certificate-fraction",
            "2"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "verify",
            "--n",
            "3",
            "--mode",
            "sample",
            "--tolerance",
            "-1"
        ]),
        2
    );
}

fn without_elapsed(args: &[&str]) -> Vec<u8> {
    let out = cubeclif(args);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    text.lines()
        .filter(|l| !l.trim_start().starts_with("\"elapsed\""))
        .flat_map(|l| l.bytes().chain(std::iter::once(b'\n')))
        .collect()
}

#[test]
fn identical_config_gives_identical_json() {
    let args = [
        "verify",
        "--n",
        "6",
        "--mode",
        "sample",
        "--samples",
        "3000",
        "--seed",
        "11",
        "--random-weights",
        "10",
        "--threads",
        "3",
        "--certificate-fraction",
        "0.1",
    ];
    assert_eq!(without_elapsed(&args), without_elapsed(&args));
    let mut single = args.to_vec();
    single[12] = "1";
    assert_eq!(without_elapsed(&args), without_elapsed(&single));
    let exhaustive = [
        "verify",
        "--n",
        "4",
        "--mode",
        "exhaustive",
        "--threads",
        "4",
    ];
    assert_eq!(
        without_elapsed(&exhaustive),
        without_elapsed(&exhaustive[..5])
    );
}

#[test]
fn unweighted_certificate() {
    let (code, v) = json(&["certificate", "--n", "2", "--vertices", "0,1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["v0"], 0);
    assert!(close(&v["v0_weighted_degree"], 2.0));
    assert!(close(&v["lambda"], 2f64.sqrt()));
    assert_eq!(v["holds"], Value::Bool(true));
    let r = 0.5f64.sqrt();
    let x: Vec<f64> = v["x"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert!(x
        .iter()
        .zip([1.0, r, r])
        .all(|(a, b)| (a - b).abs() <= 1e-9));
}

#[test]
fn weighted_certificate_from_hex() {
    let (code, v) = json(&[
        "certificate",
        "--n",
        "2",
        "--vertices-hex",
        "0x7",
        "--weights",
        "3,4",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["v0"], 0);
    assert!(close(&v["v0_weighted_degree"], 7.0));
    assert!(close(&v["lambda"], 5.0));
    assert!(close(&v["x"][1], 0.6) && close(&v["x"][2], 0.8));
    assert_eq!(v["holds"], Value::Bool(true));
}

#[test]
fn certificate_usage_errors() {
    assert_eq!(code(&["certificate", "--n", "2", "--vertices", "0,1"]), 2);
    assert_eq!(code(&["certificate", "--n", "2", "--vertices", "0,1,1"]), 2);
    assert_eq!(code(&["certificate", "--n", "2", "--vertices", "0,1,9"]), 2);
    assert_eq!(
        code(&[
            "certificate",
            "--n",
            "2",
            "--vertices",
            "0,1,2",
            "--weights",
            "0,0"
        ]),
        2
    );
    assert_eq!(code(&["certificate", "--n", "2"]), 2);
    assert_eq!(
        code(&["certificate", "--n", "2", "--vertices-hex", "0xzz"]),
        2
    );
    assert_eq!(
        code(&[
            "certificate",
            "--n",
            "2",
            "--vertices",
            "0,1,2",
            "--vertices-hex",
            "0x7"
        ]),
        2
    );
}

#[test]
fn pivot_tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_cubeclif"))
        .args(["certificate", "--n", "2", "--vertices", "0,1,2"])
        .env("CUBE_CLIFFORD_PIVOT_TOLERANCE", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sensitivity_single_functions() {
    let (code, v) = json(&["sensitivity", "--fn", "0x8", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["s"].as_u64(), v["deg"].as_u64()), (Some(2), Some(2)));
    let (code, v) = json(&["sensitivity", "--fn", "0x0", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!((v["s"].as_u64(), v["deg"].as_u64()), (Some(0), Some(0)));
    assert_eq!(v["constant"], Value::Bool(true));
}

#[test]
fn sensitivity_runs() {
    let (code, v) = json(&["sensitivity", "--n", "3", "--mode", "exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["functions_checked"], 256);
    assert_eq!(v["violations"], 0);
    let (code, v) = json(&[
        "sensitivity",
        "--n",
        "4",
        "--mode",
        "sample",
        "--samples",
        "2000",
        "--seed",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["violations"], 0);
    assert_eq!(v["seed"], 0);
}

#[test]
fn sensitivity_usage_errors() {
    assert_eq!(
        code(&["sensitivity", "--n", "4", "--mode", "exhaustive"]),
        2
    );
    assert_eq!(code(&["sensitivity", "--n", "2"]), 2);
    assert_eq!(code(&["sensitivity", "--n", "2", "--fn", "0x1ff"]), 2);
    assert_eq!(
        code(&[
            "sensitivity",
            "--n",
            "2",
            "--fn",
            "0x8",
            "--mode",
            "exhaustive"
        ]),
        2
    );
}

#[test]
fn csv_and_plain_formats() {
    let out = cubeclif(&["--format", "csv", "matrix", "--n", "1"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "0,1\n1,0\n");
    let out = cubeclif(&[
        "sensitivity",
        "--fn",
        "0x8",
        "--n",
        "2",
        "--format",
        "plain",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "s: 2"));
    assert!(text.lines().any(|l| l == "deg: 2"));
}

#[test]
fn malformed_input_never_panics() {
    for args in [
        &["--format", "xml", "matrix", "--n", "1"][..],
        &["frobnicate"],
        &[],
        &["matrix", "--n", "-3"],
        &["matrix", "--n", "99999999999"],
        &["certificate", "--n", "40", "--vertices", "0"],
        &["verify", "--n", "0", "--mode", "sample"],
        &["verify", "--n", "30", "--mode", "sample", "--samples", "1"],
        &["sensitivity", "--n", "40", "--mode", "sample"],
    ] {
        let out = cubeclif(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            !String::from_utf8_lossy(&out.stderr).contains("panicked"),
            "{args:?}"
        );
    }
    assert_eq!(code(&["--help"]), 0);
}
