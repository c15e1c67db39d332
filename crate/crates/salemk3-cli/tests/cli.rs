//! End-to-end tests against the compiled binary: output schemas, exit
//! codes, determinism, and round-tripping of emitted JSON.

use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_salemk3"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn run_json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, stderr) = run(&full);
    assert_eq!(code, 0, "exit {code}, stderr: {stderr}");
    serde_json::from_str(&stdout).expect("valid JSON on stdout")
}

#[test]
fn classify_k3_emits_both_verdicts() {
    let v = run_json(&["classify", "k3", "smyth"]);
    assert_eq!(v["sm"]["answer"], "yes");
    assert_eq!(v["automorphism"]["answer"], "no");
    let evidence = v["sm"]["evidence"].as_array().expect("evidence array");
    assert!(evidence.iter().any(|e| e["condition"] == "S(1)" && e["value"] == "-3"));
}

#[test]
fn vk3_invariants_match_the_table() {
    let v = run_json(&["form", "invariants", "VK3"]);
    assert_eq!(v["dim"], 22);
    assert_eq!(v["det"]["sign"], -1);
    assert_eq!(v["det"]["radical"], "1");
    assert_eq!(v["signature"][0], 3);
    assert_eq!(v["signature"][1], 19);
    assert_eq!(v["hasse"][0], 2);
    assert_eq!(v["hasse"][1], "inf");
}

#[test]
fn named_form_parameter_flag() {
    let v = run_json(&["form", "named", "I", "--n", "4"]);
    assert_eq!(v["invariants"]["dim"], 4);
    let v = run_json(&["form", "named", "H", "--n", "3"]);
    assert_eq!(v["invariants"]["signature"][0], 3);
}

#[test]
fn hyphenated_form_names_parse() {
    let v = run_json(&["form", "invariants", "-I(2)"]);
    assert_eq!(v["signature"][1], 2);
}

#[test]
fn unit_circle_polynomial_is_invalid_but_computed() {
    let (code, stdout, _) = run(&["salem", "validate", "1,0,0,0,1"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("not a Salem polynomial"));
    let v = run_json(&["salem", "validate", "1,0,0,0,1"]);
    assert_eq!(v["valid"], false);
    assert!(!v["reasons"].as_array().expect("reasons").is_empty());
}

#[test]
fn polynomial_inputs_are_interchangeable() {
    let expr = run_json(&["salem", "disc", "x^4 - x^3 - x^2 - x + 1"]);
    let list = run_json(&["salem", "disc", "1,-1,-1,-1,1"]);
    let corpus = run_json(&["salem", "disc", "deg4"]);
    assert_eq!(expr, list);
    assert_eq!(expr, corpus);
    assert_eq!(expr["disc_class"]["sign"], -1);
    assert_eq!(expr["disc_class"]["radical"], "3");
}

#[test]
fn emitted_polynomial_round_trips() {
    let v = run_json(&["salem", "validate", "lehmer"]);
    assert_eq!(v["valid"], true);
    let poly = serde_json::to_string(&v["poly"]).expect("poly JSON");
    let again = run_json(&["salem", "validate", &poly]);
    assert_eq!(v, again);
}

#[test]
fn emitted_gram_round_trips() {
    let v = run_json(&["form", "named", "BBF(og6)"]);
    let gram = serde_json::to_string(&serde_json::json!({ "gram": v["gram"] })).expect("gram");
    let again = run_json(&["form", "invariants", &gram]);
    assert_eq!(v["invariants"], again);
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let (c1, out1, _) = run(&["--json", "transfer", "salem", "--poly", "lehmer"]);
    let (c2, out2, _) = run(&["--json", "transfer", "salem", "--poly", "lehmer"]);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(out1, out2);
}

#[test]
fn exit_codes_separate_usage_from_computation() {
    let (code, _, _) = run(&["--no-such-flag"]);
    assert_eq!(code, 1);
    let (code, _, stderr) = run(&["salem", "lambda", "x^3 + 1"]);
    assert_eq!(code, 2, "non-Salem input is a computation error");
    assert!(stderr.contains("odd degree"));
    let (code, _, _) = run(&["classify", "rm-hk", "--type", "og6", "--m", "4"]);
    assert_eq!(code, 1, "missing field spec is a usage error");
    let (code, _, _) = run(&["norm", "--disc", "12", "--value", "-1"]);
    assert_eq!(code, 2, "non-squarefree discriminant is rejected");
}

#[test]
fn norm_solvability_matches_two_squares() {
    let yes = run_json(&["norm", "--disc", "5", "--value", "-1"]);
    assert_eq!(yes["answer"], "yes");
    let no = run_json(&["norm", "--disc", "3", "--value", "-1"]);
    assert_eq!(no["answer"], "no");
}

#[test]
fn transfer_quad_reports_closed_form() {
    let v = run_json(&[
        "transfer", "quad", "--field", "x^2-5", "--diag", "x,1,-1",
    ]);
    assert_eq!(v["closed_form_signature"][0], 3);
    assert_eq!(v["closed_form_signature"][1], 3);
    assert_eq!(v["det_check"], true);
    assert_eq!(v["invariants"]["dim"], 6);
}

#[test]
fn period_salem_checks_pass() {
    let v = run_json(&["period", "salem", "deg4b", "--alpha", "1", "--bits", "40"]);
    assert_eq!(v["companion_isometry"], true);
    for check in v["checks"].as_array().expect("checks") {
        assert_eq!(check["pass"], true, "{check}");
    }
    assert_eq!(v["period"]["precision_bits"], 40);
    assert_eq!(v["period"]["omega"].as_array().expect("omega").len(), 4);
}

#[test]
fn period_rm_is_seed_deterministic() {
    let args = [
        "period", "rm", "--field", "x^2-5", "--diag", "1,1,-1",
        "--sigma", "0", "--seed", "7", "--bits", "48",
    ];
    let a = run_json(&args);
    let b = run_json(&args);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 7);
}

#[test]
fn entropy_encloses_the_logarithm() {
    let v = run_json(&["entropy", "lehmer", "--bits", "64"]);
    let lo = v["entropy"]["decimal_lo"].as_str().expect("decimal");
    assert!(lo.starts_with("1.6235761200773"), "{lo}");
}

#[test]
fn rm_classification_paths() {
    let v = run_json(&["classify", "rm-k3", "--degree", "2", "--m", "5"]);
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["witness"]["family_dim"], 3);
    let v = run_json(&["classify", "rm-hk", "--type", "og6", "--disc", "5", "--m", "4"]);
    assert_eq!(v["answer"], "yes");
    assert_eq!(v["witness"]["u"], 1);
    assert_eq!(v["witness"]["v"], 2);
}

#[test]
fn hk_type_flag_forms() {
    let flat = run_json(&["classify", "hk", "lehmer", "--type", "kummer(2)"]);
    let split = run_json(&["classify", "hk", "lehmer", "--type", "kummer", "--n", "2"]);
    assert_eq!(flat, split);
    assert_eq!(flat["answer"], "no");
}

#[test]
fn split_statuses_are_reported_per_prime() {
    let v = run_json(&["salem", "split", "deg6", "--primes", "3,5,7,11"]);
    let rows = v.as_array().expect("rows");
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["status"] == "split"
        || r["status"] == "nonsplit"
        || r["status"] == "indeterminate"));
}
