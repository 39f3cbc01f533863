use std::process::Command;

fn qkv(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qkv")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn dims_table() {
    let (code, out) = qkv(&["dims", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("base  [5, 8, 3] total 16"));
    assert!(out.contains("cone  [14, 28, 18, 4] total 64"));
    assert!(out.contains("parallel spinors 4"));
    let (code, out) = qkv(&["dims", "--n", "2..3", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[1]["cone_total"], 256);
}

#[test]
fn dump_triplets() {
    let (code, out) = qkv(&["dump", "--operator", "killing:0:1", "--n", "2"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().starts_with("# killing:0:1 n=2"));
    let body: Vec<&str> = lines.collect();
    assert!(!body.is_empty());
    assert!(body.iter().all(|l| l.split(' ').count() == 3 && l.starts_with("phi")));
    assert_eq!(qkv(&["dump", "--operator", "bogus", "--n", "2"]).0, 2);
}

#[test]
fn markdown_report_and_env_jobs() {
    let out = Command::new(env!("CARGO_BIN_EXE_qkv"))
        .args(["verify", "--check", "sp1-wedge-identity", "--n", "2", "--format", "markdown"])
        .env("QKV_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("| `sp1-wedge-identity` | 2 | pass | exact |"));
    assert!(s.contains("## Cross-reference"));
    assert_eq!(qkv(&["verify", "--backend", "quantum"]).0, 2);
}
