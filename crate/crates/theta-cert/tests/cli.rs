//! End-to-end CLI tests: exit codes, report contents, and JSON determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_theta-cert"))
        .args(args)
        .output()
        .expect("spawn theta-cert")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn tables_validate_passes() {
    let out = run(&["tables", "--validate"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: pass"));
}

#[test]
fn tables_list_shows_degrees() {
    let out = run(&["tables", "--list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("odd_9"), "{text}");
    assert!(text.contains("deg_x=12"), "{text}");
    // 5 odd + 4 pow2 entries
    assert_eq!(text.matches("[PASS]").count(), 9, "{text}");
}

#[test]
fn tables_load_bad_file_exits_2() {
    let dir = std::env::temp_dir().join("theta_cert_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.mptab");
    std::fs::write(&path, "family=odd n=3\n0 0 not_a_number\n").unwrap();
    let out = run(&["tables", "--load", path.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "{}", stdout(&out));
    assert!(stdout(&out).contains("line"), "{}", stdout(&out));
}

#[test]
fn tables_load_good_file_passes() {
    let entry = theta_cert::get_poly(theta_cert::Family::Odd, 5).unwrap();
    let text = theta_cert::tables::serialize(entry);
    let dir = std::env::temp_dir().join("theta_cert_cli_test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("good.mptab");
    std::fs::write(&path, text).unwrap();
    let out = run(&["tables", "--load", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("deg_x=6"));
}

#[test]
fn certify_theta3_20_matches_paper_value() {
    let out = run(&["certify", "--target", "theta3", "--n", "20", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("\"y0\": \"1\""), "{text}");
    assert!(text.contains("\"p\": \"2\""), "{text}");
    assert!(text.contains("\"residue\": \"1\""), "{text}");
}

#[test]
fn certify_unsupported_pair_exits_2() {
    let out = run(&["certify", "--target", "theta2", "--n", "20"]);
    assert_eq!(code(&out), 2, "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: error"));
}

#[test]
fn certify_n12_uses_l5() {
    let out = run(&["certify", "--target", "theta3", "--n", "12"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("lemma = L5"), "{}", stdout(&out));
}

#[test]
fn certify_exhausted_candidates_exits_1() {
    // resultant(theta2, 6) at Y=1 is -(3^5)(5^2)(7^4)(13^2): zero mod 5
    let out = run(&[
        "certify", "--target", "theta2", "--n", "6", "--y", "1", "--primes", "5",
    ]);
    assert_eq!(code(&out), 1, "{}", stdout(&out));
    assert!(stdout(&out).contains("verdict: fail"));
}

#[test]
fn verify_identities_pass() {
    let out = run(&["verify", "--tau", "0,2", "--prec", "192", "--identities"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("[PASS]").count(), 8);
}

#[test]
fn verify_modular_vanishing_n7() {
    let out = run(&[
        "verify", "--tau", "0,1", "--prec", "192", "--n", "7", "--target", "theta3",
    ]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("modular_vanishing_theta3_7"));
}

#[test]
fn verify_lower_half_plane_exits_2() {
    let out = run(&["verify", "--tau", "0,-1", "--prec", "192"]);
    assert_eq!(code(&out), 2, "{}", stdout(&out));
}

#[test]
fn verify_product_form_n3() {
    let out = run(&["verify", "--tau", "0,2", "--prec", "256", "--product-form", "3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("[PASS]").count(), 3);
}

#[test]
fn json_reports_are_byte_identical() {
    let a = run(&["certify", "--target", "theta4", "--n", "10", "--format", "json"]);
    let b = run(&["certify", "--target", "theta4", "--n", "10", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "--tau", "0,1", "--format", "json"]);
    let d = run(&["verify", "--tau", "0,1", "--format", "json"]);
    assert_eq!(code(&c), 0);
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn external_table_path_is_scanned() {
    let dir = std::env::temp_dir().join("theta_cert_cli_ext");
    std::fs::create_dir_all(&dir).unwrap();
    let entry = theta_cert::get_poly(theta_cert::Family::Odd, 3).unwrap();
    std::fs::write(dir.join("p3.mptab"), theta_cert::tables::serialize(entry)).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_theta-cert"))
        .args(["tables", "--list"])
        .env("THETA_CERT_TABLE_PATH", &dir)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("p3.mptab"), "{}", stdout(&out));
}
