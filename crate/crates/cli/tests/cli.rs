use std::process::{Command, Output};

fn cgl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cgl")).args(args).output().expect("run cgl")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn analyze_group_json() {
    let o = cgl(&["analyze", "GL(2,3)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 46);
    assert_eq!(v["genus"]["exact_genus"], 3);
    let o = cgl(&["analyze", "D18", "--format", "csv"]);
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let headers = rows.headers().unwrap().clone();
    let row = rows.records().next().unwrap().unwrap();
    let col = headers.iter().position(|h| h == "hypoenergetic").unwrap();
    assert_eq!(&row[col], "true");
}

#[test]
fn analyze_raw_shape() {
    let o = cgl(&["analyze", "K8 + 5*K2", "--graph", "raw"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["zagreb"]["m1"], 402);
    assert_eq!(v["zagreb"]["m2"], 1377);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cgl(&["analyze", "NotAGroup"]).status.code(), Some(2));
    assert_eq!(cgl(&["analyze", "K8 + + K2", "--graph", "raw"]).status.code(), Some(2));
    assert_eq!(cgl(&["analyze", "D18", "--graph", "raw"]).status.code(), Some(2));
    assert_eq!(cgl(&["analyze", "D18", "--format", "xml"]).status.code(), Some(2));
    assert_eq!(cgl(&["verify", "no-such-case"]).status.code(), Some(2));
    assert_eq!(cgl(&[]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = cgl(&["verify", "K8⊔9K1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 14);
    let o = cgl(&["verify", "hv-counterexample"]);
    assert_eq!(o.status.code(), Some(0));
    // Zero tolerance rejects the rounded decimals.
    let o = cgl(&["verify", "nc(K8⊔9(K1∨3K2))", "--tolerance", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn full_verification_has_no_failures() {
    let o = cgl(&["verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn output_is_deterministic() {
    let args = ["analyze", "D20", "Q8xZ3", "K8 + 9F3", "--graph", "nc", "--jobs", "3"];
    let a = cgl(&args);
    let b = cgl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let md1 = cgl(&["analyze", "A5", "--format", "md"]);
    let md2 = cgl(&["analyze", "A5", "--format", "md", "--jobs", "1"]);
    assert_eq!(md1.stdout, md2.stdout);
    assert_eq!(cgl(&["verify"]).stdout, cgl(&["verify"]).stdout);
}

#[test]
fn export_dot_and_catalog() {
    let o = cgl(&["export-dot", "Q8"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.contains("graph"));
    assert_eq!(dot.matches("--").count(), 3);
    let o = cgl(&["catalog"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.as_array().unwrap().len() >= 30);
}

#[test]
fn cache_dir_round_trip() {
    let dir = std::env::temp_dir().join(format!("cgl-cache-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_cgl"))
            .args(["analyze", "Q16"])
            .env("CGL_CACHE_DIR", &dir)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(std::fs::read_dir(&dir).unwrap().count() >= 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
