use std::path::PathBuf;
use std::process::Command;

use fanodist::cli::run;
use fanodist::report::Report;
use serde_json::{json, Value};

fn testdata(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("testdata")
        .join(name)
        .display()
        .to_string()
}

fn report(args: &[&str]) -> Report {
    let mut argv = vec!["fanodist"];
    argv.extend_from_slice(args);
    let out = run(argv);
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    let parsed: Report = serde_json::from_str(&out.stdout).unwrap();
    // byte-identical after a round trip
    assert_eq!(parsed.to_json() + "\n", out.stdout);
    parsed
}

#[test]
fn bundled_example_class() {
    let r = report(&["class", "--matrix", &testdata("k1_p3.json")]);
    assert_eq!(r.values, json!({"class": 1, "rank": 4, "stratum": 2}));
    assert_eq!(r.verdict, "class-1");
}

#[test]
fn bott_value_on_p9() {
    let r = report(&["bott", "--n", "9", "--p", "0", "--q", "1", "--t", "2"]);
    assert_eq!(r.values["value"], json!(45));
    assert!(r.branch.is_some());
}

#[test]
fn golden_outputs() {
    let cases: &[(&[&str], &str)] = &[
        (
            &["wps-h0", "--weights", "1,1,1", "--q", "1", "--t", "2"],
            r#"{"command":"wps-h0","verdict":"ok","branch":"alternating sum over J","values":{"value":3}}"#,
        ),
        (
            &["deform", "--weights", "1,1,1,1,1", "--degrees", "3"],
            r#"{"command":"deform","verdict":"ok","anchor":"deformation-count","branch":"h1 = sum h0(O_X(d_j)) - dim Aut","values":{"aut_dim":24,"h0":0,"h1":10,"h2":0,"sections":34}}"#,
        ),
        (
            &["grass", "dims", "--n", "4", "--section-codim", "1"],
            r#"{"command":"grass dims","verdict":"ok","anchor":"grassmannian-dimensions","values":{"ambient_dim":9,"codim":1,"form_space_dim":45,"kernel_dim":9,"kernel_steps":[9],"n":4,"section_form_space_dim":36}}"#,
        ),
    ];
    for (args, expected) in cases {
        let mut argv = vec!["fanodist"];
        argv.extend_from_slice(args);
        let out = run(argv);
        assert_eq!(out.stdout.trim_end(), *expected, "{args:?}");
    }
}

#[test]
fn secant_and_pfaffian_reports() {
    let path = testdata("k1_p3.json");
    let r = report(&["secant", "--matrix", &path]);
    assert_eq!(r.values["vanished_pfaffian_size"], json!(6));
    assert_eq!(r.values["singular_locus_dim"], json!(-1));
    let r = report(&["pfaffian", "--matrix", &path]);
    assert_eq!(r.values["pfaffian"], json!("-5"));
    let r = report(&["pfaffian", "--matrix", &path, "--size", "2"]);
    assert_eq!(r.values["sub_pfaffians"]["0,1"], json!("1"));
    assert_eq!(r.values["sub_pfaffians"]["0,3"], json!("0"));
}

#[test]
fn normal_form_is_canonical() {
    let r = report(&["normal-form", "--matrix", &testdata("k1_p3.json")]);
    assert_eq!(
        r.values["normal_form"],
        json!([
            ["0", "1", "0", "0"],
            ["-1", "0", "0", "0"],
            ["0", "0", "0", "1"],
            ["0", "0", "-1", "0"]
        ])
    );
}

#[test]
fn form_classes() {
    let r = report(&["class", "--form", "z0 dz1 - z1 dz0", "--dim", "3"]);
    assert_eq!(r.values["class"], json!(0));
    let r = report(&["class", "--form", "0 dz0", "--dim", "3"]);
    assert_eq!(r.verdict, "zero-form");
    let r = report(&[
        "restrict-class",
        "--form",
        "z0 dz1 - z1 dz0 + z2 dz3 - z3 dz2 + z4 dz5 - z5 dz4",
        "--hypersurface",
        "z0^2 + z1^2 + z2^2 + z3^2 + z4^2 + z5^2",
        "--weights",
        "1,1,1,1,1,1",
    ]);
    assert_eq!(r.values["class"], json!(1));
}

#[test]
fn grass_commands() {
    let r = report(&["grass", "dominance", "--h-span", &testdata("h_e0.json")]);
    assert_eq!(r.verdict, "not-dominant");
    let r = report(&["grass", "lines", "--point", "0,1,0,0,0"]);
    assert_eq!(r.values["inside_grassmannian"], json!(true));
    assert_eq!(r.values["basis"].as_array().unwrap().len(), 4);
}

#[test]
fn determinism_under_fixed_seed() {
    let args = [
        "fanodist",
        "verify-paper",
        "--only",
        "cohomology",
        "--seed",
        "11",
    ];
    let a = run(args);
    let b = run(args);
    assert_eq!(a, b);
    assert_eq!(a.code, 0);
    let parsed: Report = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(parsed.values["seed"], json!(11));
    let criteria = parsed.values["criteria"].as_array().unwrap();
    let ids: Vec<&Value> = criteria.iter().map(|c| &c["id"]).collect();
    assert_eq!(ids, [&json!(3), &json!(9)]);
}

#[test]
fn text_format_lists_one_line_per_criterion() {
    let out = run([
        "fanodist",
        "verify-paper",
        "--only",
        "cohomology",
        "--format",
        "text",
    ]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "verify-paper: pass");
    assert!(lines[1].starts_with("[PASS] 3 "));
    assert!(lines[2].starts_with("[PASS] 9 "));
}

#[test]
fn domain_errors_are_json_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"[["0","1"],["1","0"]]"#).unwrap();
    let out = run(["fanodist", "class", "--matrix", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    let err: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(err["error"], "not-skew");

    std::fs::write(&bad, r#"[["0","1"],["-1","0""#).unwrap();
    let out = run(["fanodist", "class", "--matrix", bad.to_str().unwrap()]);
    let err: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");

    let out = run([
        "fanodist",
        "grass",
        "dims",
        "--n",
        "4",
        "--section-codim",
        "3",
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("hypothesis"));

    let out = run(["fanodist", "class", "--matrix", "/nonexistent/m.json"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("\"io\""));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(["fanodist", "bott", "--n", "3"]).code, 2);
    assert_eq!(run(["fanodist", "frobnicate"]).code, 2);
    assert_eq!(
        run(["fanodist", "bott", "--n", "3", "--p", "0", "--q", "1", "--t", "2", "--bogus"]).code,
        2
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_fanodist");
    let ok = Command::new(bin)
        .args(["class", "--matrix", &testdata("k1_p3.json")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(ok.stdout).unwrap().trim_end(),
        r#"{"command":"class","verdict":"class-1","anchor":"secant-stratification","values":{"class":1,"rank":4,"stratum":2}}"#
    );
    let usage = Command::new(bin).arg("bott").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let threads = Command::new(bin)
        .env("FANODIST_THREADS", "2")
        .args(["bott", "--n", "4", "--p", "0", "--q", "0", "--t", "1"])
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(0));
}
