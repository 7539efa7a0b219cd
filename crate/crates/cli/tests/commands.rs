use std::process::Command;

use serde_json::Value;

fn flt(args: &[&str]) -> (Value, String, i32) {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_flt"))
        .args(args)
        .env("FLT_CACHE_DIR", dir.path())
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let v = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (v, String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

#[test]
fn field_info_of_the_smallest_cubic() {
    let (v, _, code) = flt(&["field-info", "x^3-3*x-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["disc"], "81");
    assert_eq!(v["signature"], serde_json::json!([3, 0]));
    assert_eq!(v["index"], "1");
}

#[test]
fn field_info_imaginary_quadratic() {
    let (v, _, code) = flt(&["field-info", "x^2+3"]);
    assert_eq!(code, 0);
    assert_eq!(v["disc"], "-3");
    // (1 + sqrt -3)/2 is integral, so Z[x] has index 2
    assert_eq!(v["index"], "2");
}

#[test]
fn reducible_input_exits_1() {
    let (_, err, code) = flt(&["field-info", "x^2-1"]);
    assert_eq!(code, 1);
    assert!(err.contains("reducible"), "{err}");
}

#[test]
fn parse_error_and_bad_flag_exit_1() {
    assert_eq!(flt(&["field-info", "x^^2"]).2, 1);
    assert_eq!(flt(&["table"]).2, 1);
    assert_eq!(flt(&["--threads", "0", "field-info", "x"]).2, 1);
}

#[test]
fn help_exits_0() {
    let out = Command::new(env!("CARGO_BIN_EXE_flt")).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("table"));
}

#[test]
fn check_real_quadratics() {
    let (v, _, code) = flt(&["check", "x^2-13"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "fails");
    assert_eq!(v["reasons"][0], "class number even");
    let (v, _, _) = flt(&["check", "x^2-2"]);
    assert_eq!(v["reasons"][0], "T_3 empty");
}

#[test]
fn check_degree_cap() {
    let (_, err, code) = flt(&["--max-degree", "2", "check", "x^3-3*x-1"]);
    assert_eq!(code, 2);
    assert!(err.contains("max-degree"), "{err}");
}

#[test]
fn small_tables() {
    let (v, _, code) = flt(&["table", "--max-disc", "81", "--diff-golden"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);
    assert_eq!(v["rows"][0]["abs_disc"], 81);
    assert_eq!(v["diff"]["passes"], true);
    let (v, _, code) = flt(&["table", "--max-disc", "50"]);
    assert_eq!(code, 0);
    assert!(v["rows"].as_array().unwrap().is_empty());
}

#[test]
fn table_csv_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_flt"))
        .args(["--format", "csv", "table", "--max-disc", "100"])
        .env("FLT_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    let s = String::from_utf8(out.stdout).unwrap();
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("f_K,abs_disc,h_K_sqrt_minus3,ramification_of_3"));
    assert!(lines.next().unwrap().contains(",81,1,p^3"));
}

#[test]
fn cyclotomic_cap_exits_2() {
    let (_, err, code) = flt(&["cyclotomic", "--n", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("27"), "{err}");
}

#[test]
fn pomey_subcommands() {
    let (v, _, code) = flt(&["pomey", "steinberg", "--f", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["margin"], "676");
    let (v, _, _) = flt(&["pomey", "represent", "--d", "7"]);
    assert_eq!((v["x"].as_str(), v["y"].as_str()), (Some("2"), Some("1")));
    let (v, _, code) = flt(&["pomey", "identities", "--p", "11"]);
    assert_eq!(code, 0);
    assert_eq!(v["all_hold"], true);
    let (_, _, code) = flt(&["pomey", "identities", "--p", "4"]);
    assert_eq!(code, 1);
    let (v, _, _) = flt(&["pomey", "contradiction", "--p", "5", "--t", "1"]);
    assert_eq!(v["contradiction"], true);
}

#[test]
fn frey_formal_solution_in_a_pure_cubic() {
    // 1 + 1 + (-t)^3 = 0 when t^3 = 2
    let (v, _, code) = flt(&["frey", "--a", "1", "--b", "1", "--c", "-t", "--p", "3", "--field", "x^3-2"]);
    assert_eq!(code, 0);
    assert_eq!(v["is_fermat_solution"], true);
    assert_eq!(v["discriminant"], "64");
    assert_eq!(v["matches_closed_form"], true);
}

#[test]
fn frey_non_solution() {
    let (v, _, code) = flt(&["frey", "--a", "1", "--b", "2", "--c", "-3", "--p", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["is_fermat_solution"], false);
    // 16 A^2 B^2 (A + B)^2 with A = 1, B = 32
    assert_eq!(v["discriminant"], (16u64 * 32 * 32 * 33 * 33).to_string());
}
