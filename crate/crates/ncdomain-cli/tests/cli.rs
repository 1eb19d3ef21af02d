//! End-to-end tests of the binary: exit codes, JSON schemas, determinism.

use std::process::{Command, Output};

fn ncdomain(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncdomain"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8")
}

#[test]
fn validate_reports_and_exits_zero() {
    let out = ncdomain(&["validate", "X1+X2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("canonical: 1*X1 + 1*X2"));
    assert!(text.contains("valid: n=2, degree=1, terms=2"));
}

#[test]
fn validate_rejects_with_exit_two() {
    let out = ncdomain(&["validate", "X1 + X1X2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("X2"));

    let out = ncdomain(&["validate", "X1 + + X2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("byte 5"));
}

#[test]
fn classify_exit_codes() {
    let eq = ncdomain(&["classify", "2X1+3X2+6X1X2", "X1+X2+X1X2"]);
    assert_eq!(eq.status.code(), Some(0));
    assert!(stdout(&eq).contains("completely isometrically isomorphic"));
    assert!(stdout(&eq).contains("sigma = [1, 2]"));
    assert!(stdout(&eq).contains("lambda = [2, 3]"));

    let ne = ncdomain(&["classify", "X1+X2+X1X1", "X1+X2+X1X2"]);
    assert_eq!(ne.status.code(), Some(1));
    assert!(stdout(&ne).contains("Inequivalent"));

    let arity = ncdomain(&["classify", "X1", "X1+X2"]);
    assert_eq!(arity.status.code(), Some(1));
    assert!(stdout(&arity).contains("arity mismatch"));

    let bad = ncdomain(&["classify", "X1+", "X1"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn resource_guard_exits_three() {
    let out = ncdomain(&["weights", "X1+X2", "--N", "30"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cap"));

    let out = ncdomain(&["weights", "X1+X2", "--N", "3", "--cap", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn weights_json_round_trips() {
    let out = ncdomain(&["weights", "X1+X1X1", "--N", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let export: ncdomain::fock::WeightExport =
        serde_json::from_str(&stdout(&out)).expect("schema");
    assert_eq!(export.weights.len(), 6);
    let b5 = export.weights.last().unwrap();
    assert_eq!(b5.word, vec![1, 1, 1, 1, 1]);
    assert_eq!((b5.num.as_str(), b5.den.as_str()), ("8", "1"));
}

#[test]
fn shifts_json_round_trips() {
    let out = ncdomain(&["shifts", "X1+X2", "--N", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let export: ncdomain::fock::ShiftExport = serde_json::from_str(&stdout(&out)).expect("schema");
    assert_eq!(export.n, 2);
    assert_eq!(export.dim, 7);
    assert_eq!(export.order, "graded-lex");
    // 3 nonzero columns per shift below the top level
    assert!(export.shifts.iter().all(|s| s.entries.len() == 3));
}

#[test]
fn classify_json_round_trips() {
    let out = ncdomain(&["classify", "2X1+3X2+6X1X2", "X1+X2+X1X2", "--json"]);
    let parsed: ncdomain::classify::ClassificationJson =
        serde_json::from_str(&stdout(&out)).expect("schema");
    match parsed {
        ncdomain::classify::ClassificationJson::Equivalent { witness } => {
            assert_eq!(witness.sigma, vec![1, 2]);
            let w = ncdomain::Witness::from_json(&witness).expect("valid");
            assert_eq!(w.sigma(), &[1, 2]);
        }
        other => panic!("expected equivalent, got {other:?}"),
    }

    let out = ncdomain(&["classify", "X1", "X1+X2", "--json"]);
    let parsed: ncdomain::classify::ClassificationJson =
        serde_json::from_str(&stdout(&out)).expect("schema");
    assert!(matches!(
        parsed,
        ncdomain::classify::ClassificationJson::Inequivalent { .. }
    ));
}

#[test]
fn defect_and_member_reports() {
    let out = ncdomain(&["defect", "X1+X2", "--N", "3", "--json"]);
    let report: ncdomain::MembershipReport = serde_json::from_str(&stdout(&out)).expect("schema");
    assert!(report.member);
    assert!(report.min_eig >= -1e-9);
    assert_eq!(report.dim, 15);

    let out = ncdomain(&["member", "X1+X2+X1X2", "--point", "0.6,0.8", "--json"]);
    let report: ncdomain::MembershipReport = serde_json::from_str(&stdout(&out)).expect("schema");
    assert!(!report.member);
    assert!((report.min_eig + 0.2304).abs() < 1e-12);

    // missing input selection is an input error
    let out = ncdomain(&["member", "X1+X2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn member_accepts_tuple_files() {
    let dir = std::env::temp_dir().join("ncdomain-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tuple.json");
    // the nilpotent pair: T1 = e_12, T2 = e_21 — inside the free-shift domain
    std::fs::write(
        &path,
        r#"{"mats": [[[[0,0],[0.5,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[0.5,0],[0,0]]]]}"#,
    )
    .unwrap();
    let arg = format!("@{}", path.display());
    let out = ncdomain(&["member", "X1+X2", "--tuple", &arg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("member: true"));
}

#[test]
fn symbols_load_from_files() {
    let dir = std::env::temp_dir().join("ncdomain-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("symbol.txt");
    std::fs::write(&path, "vars=2; X1 + X2 + 1/2*X1X2\n").unwrap();
    let arg = format!("@{}", path.display());
    let out = ncdomain(&["validate", &arg]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("n=2, degree=2, terms=3"));

    let out = ncdomain(&["validate", "@/nonexistent/path.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn boundary_matches_closed_form() {
    let out = ncdomain(&["boundary", "X1+X2+X1X2", "--dir", "1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("radius = 0.91017"), "got: {text}");

    let out = ncdomain(&["boundary", "2X1", "--dir", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("json");
    let r = v["radius"].as_f64().unwrap();
    assert!((r - 0.5f64.sqrt()).abs() < 1e-6);
}

#[test]
fn moebius_point_and_circle() {
    let out = ncdomain(&["moebius", "--omega", "0.5,0", "--z", "0,0.3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("image = [0.5, -0.2598"));

    let out = ncdomain(&["moebius", "--omega", "0.3,0", "--circle", "64", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let fit: ncdomain::geometry::CircleFitJson =
        serde_json::from_str(&stdout(&out)).expect("schema");
    assert!(fit.residual <= 1e-9);

    let out = ncdomain(&["moebius", "--omega", "0.5,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_operators_flag_reports_membership() {
    let out = ncdomain(&[
        "classify",
        "2X1+3X2+6X1X2",
        "X1+X2+X1X2",
        "--check-operators",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("operator check at N=4: member=true"));
}

#[test]
fn broken_pipe_exits_quietly() {
    use std::io::Read;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_ncdomain"))
        .args(["weights", "X1+X2+X3", "--N", "9"])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    // read a little, then close our end while the child is still writing
    let mut child_stdout = child.stdout.take().unwrap();
    let mut child_stderr = child.stderr.take().unwrap();
    let mut buf = [0u8; 256];
    let _ = child_stdout.read(&mut buf);
    drop(child_stdout);
    let status = child.wait().expect("wait");
    assert_eq!(status.code(), Some(0));
    let mut err = String::new();
    child_stderr.read_to_string(&mut err).unwrap();
    assert!(!err.contains("panicked"), "stderr: {err}");
}

#[test]
fn identical_inputs_are_byte_identical() {
    for args in [
        vec!["weights", "X1+X2+1/3*X1X2", "--N", "4", "--json"],
        vec!["classify", "2X1+3X2+6X1X2", "X1+X2+X1X2", "--json"],
        vec!["defect", "X1+2X2", "--N", "3"],
        vec!["boundary", "X1+X2+X1X2", "--dir", "1,1"],
        vec!["moebius", "--omega", "0.4,0.1i", "--circle", "64", "--json"],
    ] {
        let a = ncdomain(&args);
        let b = ncdomain(&args);
        assert_eq!(a.stdout, b.stdout, "nondeterministic output for {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
