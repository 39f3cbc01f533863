//! JSON and markdown reports.

use std::fmt::Write as _;

use serde::Serialize;

use super::{CheckResult, REGISTRY};

#[derive(Serialize)]
struct Report<'a> {
    version: u32,
    kappa_normalization: &'static str,
    results: &'a [CheckResult],
}

/// `{"version": 1, "kappa_normalization": "16n(n+2)", "results": [...]}`.
pub fn to_json(results: &[CheckResult]) -> String {
    let r = Report { version: 1, kappa_normalization: "16n(n+2)", results };
    let mut s = serde_json::to_string_pretty(&r).expect("serializable");
    s.push('\n');
    s
}

/// The JSON document without `elapsed_ms`; byte-identical across runs.
pub fn canonical_json(results: &[CheckResult]) -> String {
    let mut v: serde_json::Value = serde_json::from_str(&to_json(results)).expect("own output");
    if let Some(arr) = v.get_mut("results").and_then(|r| r.as_array_mut()) {
        for r in arr {
            if let Some(o) = r.as_object_mut() {
                o.remove("elapsed_ms");
            }
        }
    }
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

/// Check id to the statement it decides, one row per registered check.
pub fn cross_reference_table() -> String {
    let mut s = String::from("| check | statement | default n | cost |\n|---|---|---|---|\n");
    for c in REGISTRY {
        let _ = writeln!(s, "| `{}` | {} | {}..{} | {} |", c.id, c.statement, c.default_range.0, c.default_range.1, c.cost);
    }
    s
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn to_markdown(results: &[CheckResult]) -> String {
    let mut s = String::from("# qkv verification report\n\nκ normalization: 16n(n+2)\n\n");
    s.push_str("| check | n | status | backend | ms | witness |\n|---|---|---|---|---|---|\n");
    for r in results {
        let _ = writeln!(
            s,
            "| `{}` | {} | {} | {} | {} | {} |",
            r.check_id,
            r.n,
            r.status,
            r.backend,
            r.elapsed_ms,
            r.witness.as_deref().map(cell).unwrap_or_default()
        );
    }
    s.push_str("\n## Details\n\n");
    for r in results {
        let _ = writeln!(s, "- `{}` n={}: {}", r.check_id, r.n, cell(&r.detail));
    }
    s.push_str("\n## Cross-reference\n\n");
    s.push_str(&cross_reference_table());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{Backend, Status};

    fn sample(status: Status) -> CheckResult {
        CheckResult {
            check_id: "dims-2n".into(),
            n: 2,
            status,
            witness: (status == Status::Fail).then(|| "r0 dim 1".into()),
            elapsed_ms: 17,
            backend: Backend::Exact,
            detail: "x".into(),
        }
    }

    #[test]
    fn empty_report_is_valid() {
        let v: serde_json::Value = serde_json::from_str(&to_json(&[])).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["kappa_normalization"], "16n(n+2)");
        assert_eq!(v["results"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn canonical_drops_timing() {
        let mut a = sample(Status::Pass);
        let c1 = canonical_json(std::slice::from_ref(&a));
        a.elapsed_ms = 9999;
        assert_eq!(c1, canonical_json(&[a]));
        assert!(!c1.contains("elapsed_ms"));
        let v: serde_json::Value = serde_json::from_str(&to_json(&[sample(Status::Fail)])).unwrap();
        assert_eq!(v["results"][0]["status"], "fail");
        assert_eq!(v["results"][0]["witness"], "r0 dim 1");
    }

    #[test]
    fn cross_reference_covers_registry() {
        let table = cross_reference_table();
        let rows: Vec<&str> = table.lines().skip(2).collect();
        assert_eq!(rows.len(), REGISTRY.len());
        for c in REGISTRY {
            assert_eq!(rows.iter().filter(|r| r.starts_with(&format!("| `{}` |", c.id))).count(), 1, "{}", c.id);
            assert!(!c.statement.is_empty());
        }
        assert!(to_markdown(&[sample(Status::Pass)]).contains("## Cross-reference"));
    }
}
