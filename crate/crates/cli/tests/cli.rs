use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn graph(name: &str) -> String {
    fixtures().join("graphs").join(format!("{name}.toml")).display().to_string()
}

fn cocycle(name: &str) -> String {
    fixtures().join("cocycles").join(format!("{name}.toml")).display().to_string()
}

fn tkg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tkg")).args(args).output().expect("tkg runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = tkg(&a);
    let code = out.status.code().expect("exit code");
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)));
    assert_eq!(v["exit_code"].as_i64(), Some(code as i64));
    (code, v)
}

#[test]
fn simplicity_b2xt1_theta_is_certified_simple() {
    let (code, v) = json(&["simplicity", &graph("B2xT1"), "--cocycle", &cocycle("b2t1_phi_theta")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "CERTIFIED_SIMPLE");
    assert_eq!(v["result"]["certificate"]["kind"], "KRONECKER_DENSE");
    assert_eq!(v["result"]["certificate_verified"], true);
    assert_eq!(v["command"], "simplicity");
    assert_eq!(v["inputs"]["graph"]["sha256"].as_str().map(str::len), Some(64));
}

#[test]
fn simplicity_verdicts_on_fixtures() {
    let cases = [
        ("T2", "t2_pullback_theta", "CERTIFIED_SIMPLE", "Z_OMEGA_TRIVIAL"),
        ("T2", "t2_pullback_half", "CERTIFIED_NONSIMPLE", "FINITE_ORBIT"),
        ("B2xT1", "b2t1_phi_zero", "CERTIFIED_NONSIMPLE", "ANNIHILATOR_POTENTIAL"),
        ("B2xT3", "b2t3_example", "CERTIFIED_SIMPLE", "KRONECKER_DENSE"),
        ("DISJOINT2", "disjoint2_table", "CERTIFIED_NONSIMPLE", "NOT_COFINAL"),
        ("C2xT1", "c2t1_phi_cancel", "CERTIFIED_NONSIMPLE", "FINITE_ORBIT"),
        ("C2xT1", "c2t1_phi_twist", "CERTIFIED_SIMPLE", "Z_OMEGA_TRIVIAL"),
    ];
    for (g, c, verdict, kind) in cases {
        let (code, v) = json(&["simplicity", &graph(g), "--cocycle", &cocycle(c)]);
        assert_eq!(code, 0, "{g} {c}");
        assert_eq!(v["result"]["verdict"], verdict, "{g} {c}");
        assert_eq!(v["result"]["certificate"]["kind"], kind, "{g} {c}");
        assert_eq!(v["result"]["certificate_verified"], true, "{g} {c}");
    }
}

#[test]
fn analyze_disjoint_is_not_cofinal() {
    let (code, v) = json(&["analyze", "builtin:DISJOINT2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cofinal"]["status"], "NO_CERTIFIED");
    assert_eq!(v["result"]["cofinal_certificate_verified"], true);
    assert_eq!(v["inputs"]["graph"]["builtin"], "DISJOINT2");
}

#[test]
fn oracle_t2_passes_all_suites() {
    let (code, v) = json(&["oracle", &graph("T2"), "--cocycle", &cocycle("t2_pullback_theta"), "--depth", "2"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["passed"], true);
    for suite in ["cocycle_identity", "r_formula", "isotropy_triviality", "coboundary"] {
        assert_eq!(r[suite]["passed"], true, "{suite}");
    }
    assert!(r["cocycle_identity"]["triples_checked"].as_u64().unwrap() > 0);
}

#[test]
fn validate_and_per() {
    let (code, v) = json(&["validate", &graph("B2xT3"), "--cocycle", &cocycle("b2t3_example"), "--depth", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["graph"]["valid"], true);
    assert_eq!(v["result"]["cocycle"]["valid"], true);
    let (code, v) = json(&["per", &graph("T2")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["exact"], true);
}

#[test]
fn reports_are_deterministic() {
    let args = ["simplicity", &graph("B2xT3"), "--cocycle", &cocycle("b2t3_example"), "--format", "json"];
    let a = tkg(&args);
    let b = tkg(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["omega", &graph("T2"), "--cocycle", &cocycle("t2_pullback_theta"), "--format", "json"];
    assert_eq!(tkg(&args).stdout, tkg(&args).stdout);
}

#[test]
fn emit_writes_the_structured_report() {
    let dir = std::env::temp_dir().join(format!("tkg-emit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let p = path.display().to_string();
    let out = tkg(&["simplicity", &graph("T2"), "--cocycle", &cocycle("t2_pullback_half"), "--emit", &p]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("tkg simplicity"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["verdict"], "CERTIFIED_NONSIMPLE");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn errors_exit_one() {
    let missing = tkg(&["analyze", "does/not/exist.toml"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("error"));
    let unknown = tkg(&["analyze", "builtin:NOPE"]);
    assert_eq!(unknown.status.code(), Some(1));
    let no_cocycle = tkg(&["simplicity", &graph("T2")]);
    assert_eq!(no_cocycle.status.code(), Some(1));
    let wrong_graph = tkg(&["simplicity", &graph("T2"), "--cocycle", &cocycle("b2t1_phi_theta")]);
    assert_eq!(wrong_graph.status.code(), Some(1));
}

#[test]
fn incomplete_graph_exits_one() {
    let dir = std::env::temp_dir().join(format!("tkg-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let text = std::fs::read_to_string(graph("T2")).unwrap();
    // without its square the factorization property fails
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, &text[..text.find("[[squares]]").unwrap()]).unwrap();
    let bad = bad.display().to_string();
    let out = tkg(&["validate", &bad, "--cocycle", &cocycle("t2_pullback_theta")]);
    assert_eq!(out.status.code(), Some(1));
    for cmd in ["analyze", "per", "omega", "simplicity", "oracle"] {
        let out = tkg(&[cmd, &bad, "--cocycle", &cocycle("t2_pullback_theta")]);
        assert_eq!(out.status.code(), Some(1), "{cmd}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("not a k-graph"), "{cmd}");
    }
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn unknown_exits_two() {
    // bound 1 is too small to certify the period lattice of C2 x T1
    let (code, v) = json(&["simplicity", &graph("C2xT1"), "--cocycle", &cocycle("c2t1_phi_twist"), "--bound", "1"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["verdict"], "UNKNOWN");
    assert!(!v["result"]["notes"].as_array().unwrap().is_empty());
}
