//! End-to-end checks of the binary contract: JSON shapes, exit codes, and
//! the worked examples from the command documentation.

use std::process::Command;

use serde_json::{json, Value};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer-kit"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("no signal");
    let stdout = String::from_utf8(out.stdout).expect("utf8 output");
    let doc = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(stdout.trim())
            .unwrap_or_else(|e| panic!("stdout is not one JSON document: {e}\n{stdout}"))
    };
    (code, doc)
}

#[test]
fn azumaya_check_quaternion_shorthand() {
    let (code, doc) = run(&["azumaya-check", "--ring", "GF(5)", "--quaternion", "2,3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["ok"], json!(true));
    assert_eq!(doc["result"], json!({ "is_azumaya": true, "n": 1 }));
}

#[test]
fn azumaya_check_reports_failure_reasons() {
    let diag = r#"{"ring":"GF(5)","rank":4,"unit":[1,1,1,1],
        "sc":[[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]],
              [[0,0,0,0],[0,1,0,0],[0,0,0,0],[0,0,0,0]],
              [[0,0,0,0],[0,0,0,0],[0,0,1,0],[0,0,0,0]],
              [[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,1]]]}"#;
    let (code, doc) = run(&["azumaya-check", "--algebra", diag]);
    assert_eq!(code, 0, "a clean negative answer is still a success");
    assert_eq!(doc["result"]["is_azumaya"], json!(false));
    let reason = doc["result"]["reason"].as_str().unwrap();
    assert!(reason.contains("invertible"), "reason: {reason}");
}

#[test]
fn delta_example_yields_the_first_two_matrix_units() {
    let (code, doc) = run(&["delta", "--ring", "GF(5)", "--n", "1", "--point", "1,0"]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["result"]["space"]["basis"],
        json!([["1", "0", "0", "0"], ["0", "1", "0", "0"]])
    );
    assert_eq!(doc["result"]["verified"], json!(true));
    assert_eq!(doc["verification"]["inversion_recheck"], json!(true));
}

#[test]
fn delta_roundtrips_through_delta_inv() {
    let (code, doc) = run(&["delta", "--ring", "GF(5)", "--n", "1", "--point", "2,3"]);
    assert_eq!(code, 0);
    let space = doc["result"]["space"].to_string();
    let (code, doc) = run(&["delta-inv", "--ring", "GF(5)", "--ideal", &space]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["point"], json!(["1", "4"]));
}

#[test]
fn delta_inv_rejects_a_malformed_subspace() {
    let bad = r#"[["1","0","0","0"],["0","0","0","1"]]"#;
    let (code, doc) = run(&["delta-inv", "--ring", "GF(5)", "--ideal", bad]);
    assert_eq!(code, 2);
    assert_eq!(doc["ok"], json!(false));
    assert_eq!(doc["error"], json!("NotInDeltaImage"));
}

#[test]
fn param_conic_example_verifies_the_roundtrip() {
    let (code, doc) = run(&[
        "param-conic",
        "--ring",
        "QQ",
        "--a",
        "1",
        "--b",
        "1",
        "--point",
        "1,1,0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["base_point"], json!(["1", "1", "0"]));
    assert_eq!(doc["result"]["transform"], json!("identity"));
    assert_eq!(doc["verification"]["roundtrip"], json!("sampled"));
    let samples = doc["result"]["samples"].as_array().unwrap();
    assert_eq!(samples.len(), 5);
    // psi([1:0]) is the base point.
    assert_eq!(samples[1]["t"], json!(["1", "0"]));
    assert_eq!(samples[1]["point"], json!(["1", "1", "0"]));
}

#[test]
fn param_conic_no_verify_skips_and_point_search_works() {
    let (code, doc) = run(&[
        "param-conic",
        "--ring",
        "GF(7)",
        "--a",
        "3",
        "--b",
        "5",
        "--no-verify",
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["verification"]["roundtrip"], json!("skipped"));
    let (code, doc) = run(&["param-conic", "--ring", "GF(7)", "--a", "3", "--b", "5"]);
    assert_eq!(code, 0);
    assert_eq!(doc["verification"]["roundtrip"], json!("exhaustive"));
}

#[test]
fn conic_points_counts_q_plus_one() {
    let (code, doc) = run(&["conic-points", "--ring", "GF(7)", "--a", "3", "--b", "5"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["count"], json!(8));
    assert_eq!(doc["result"]["points"].as_array().unwrap().len(), 8);
}

#[test]
fn conjugator_recovers_identity_from_standard_units() {
    let units = r#"[[[1,0],[0,0]],[[0,1],[0,0]],[[0,0],[1,0]],[[0,0],[0,1]]]"#;
    let (code, doc) = run(&["conjugator", "--ring", "GF(5)", "--matrix", units]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["result"]["pgl"]["entries"],
        json!([["1", "0"], ["0", "1"]])
    );
}

#[test]
fn aut_to_pgl_identity_map() {
    let id4 = r#"[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]"#;
    let (code, doc) = run(&["aut-to-pgl", "--ring", "GF(5)", "--n", "1", "--matrix", id4]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["result"]["pgl"]["entries"],
        json!([["1", "0"], ["0", "1"]])
    );
    assert_eq!(doc["verification"]["conjugation_roundtrip"], json!(true));
}

#[test]
fn aut_to_pgl_rejects_the_transpose_map() {
    // Transposition is an anti-automorphism: basis order 1 <-> 1, E01 <-> E10.
    let transpose = r#"[[1,0,0,0],[0,0,1,0],[0,1,0,0],[0,0,0,1]]"#;
    let (code, doc) = run(&["aut-to-pgl", "--ring", "GF(5)", "--matrix", transpose]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"], json!("NotAutomorphism"));
}

#[test]
fn find_ideal_feeds_split_and_chatelet() {
    let (code, doc) = run(&["find-ideal", "--ring", "GF(5)", "--quaternion", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["found"], json!(true));
    let space = doc["result"]["ideal"]["space"].to_string();

    let (code, doc) = run(&[
        "split",
        "--ring",
        "GF(5)",
        "--quaternion",
        "1,1",
        "--ideal",
        &space,
    ]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["hom_verified"], json!(true));
    assert_eq!(doc["verification"]["inverse_hom"], json!(true));

    let (code, doc) = run(&[
        "chatelet",
        "--ring",
        "GF(5)",
        "--quaternion",
        "1,1",
        "--ideal",
        &space,
    ]);
    assert_eq!(code, 0);
    let point = doc["result"]["point"].as_array().unwrap();
    assert_eq!(point.len(), 2);
}

#[test]
fn split_rejects_a_span_that_is_not_an_ideal() {
    let bad = r#"[["1","0","0","0"],["0","1","0","0"]]"#;
    let (code, doc) = run(&[
        "split",
        "--ring",
        "GF(5)",
        "--quaternion",
        "1,1",
        "--ideal",
        bad,
    ]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"], json!("NotRightIdeal"));
}

#[test]
fn hamilton_search_reports_unknown() {
    let (code, doc) = run(&[
        "find-ideal",
        "--ring",
        "QQ",
        "--quaternion",
        "-1,-1",
        "--bound",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        doc["result"],
        json!({ "found": false, "status": "unknown" })
    );
}

#[test]
fn domain_errors_exit_2_with_stable_codes() {
    let cases: &[(&[&str], &str)] = &[
        (
            &["delta", "--ring", "GF(4)", "--n", "1", "--point", "1,0"],
            "NotPrime",
        ),
        (
            &["delta", "--ring", "GF(5)", "--n", "1", "--point", "0,0"],
            "NoUnitCoordinate",
        ),
        (
            &["delta", "--ring", "GF(5)", "--n", "2", "--point", "1,0"],
            "DimensionMismatch",
        ),
        (
            &["conic-points", "--ring", "QQ", "--a", "1", "--b", "1"],
            "InfiniteRing",
        ),
        (&["quat-split", "--ring", "GF(5)", "--b", "0"], "NotUnit"),
        (
            &[
                "param-conic",
                "--ring",
                "QQ",
                "--a",
                "1",
                "--b",
                "1",
                "--point",
                "1,1,1",
            ],
            "NotOnConic",
        ),
    ];
    for (args, want) in cases {
        let (code, doc) = run(args);
        assert_eq!(code, 2, "args: {args:?}");
        assert_eq!(doc["ok"], json!(false), "args: {args:?}");
        assert_eq!(doc["error"], json!(want), "args: {args:?}");
    }
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["frobnicate"] as &[&str],
        &["delta", "--ring", "GF(5)", "--n", "1"],
        &["azumaya-check", "--ring", "GF(5)"],
        &["selftest", "sideways"],
    ] {
        let out = Command::new(env!("CARGO_BIN_EXE_brauer-kit"))
            .args(args)
            .output()
            .expect("binary runs");
        assert_eq!(out.status.code(), Some(64), "args: {args:?}");
    }
}

#[test]
fn selftest_quick_passes() {
    let (code, doc) = run(&["selftest", "quick"]);
    assert_eq!(code, 0);
    assert_eq!(doc["verification"]["failures"], json!(0));
    let criteria = doc["result"]["criteria"].as_array().unwrap();
    assert_eq!(criteria.len(), 7);
    assert!(criteria.iter().all(|c| c["passed"] == json!(true)));
}

#[test]
fn output_is_deterministic() {
    let first = Command::new(env!("CARGO_BIN_EXE_brauer-kit"))
        .args(["find-ideal", "--ring", "GF(5)", "--algebra", "builtin:M2"])
        .output()
        .expect("binary runs");
    let second = Command::new(env!("CARGO_BIN_EXE_brauer-kit"))
        .args(["find-ideal", "--ring", "GF(5)", "--algebra", "builtin:M2"])
        .output()
        .expect("binary runs");
    assert_eq!(first.stdout, second.stdout);
}
