//! Acceptance criteria 1–10, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use qkv::linspaces::{phi_ct, phi_inv_tensor, CTVector, HETensor};
use qkv::scalars::{Ext2Scalar, Rational};
use qkv::spinors::{SpinorSpace, CLIFFORD_CONSTANT};
use qkv::verify::{expand_specs, run_checks, Backend, CheckResult, RunOptions, Status};

type Outcome = Result<String, String>;

fn run(id: &str, n: std::ops::RangeInclusive<usize>, backend: Backend, tol: f64, opts: &RunOptions) -> Vec<CheckResult> {
    run_checks(&expand_specs(id, Some(n), backend, tol).unwrap(), opts).unwrap()
}

fn all_pass(res: &[CheckResult]) -> Outcome {
    match res.iter().find(|r| r.status != Status::Pass) {
        Some(r) => Err(format!("{} n={} {} witness {:?}", r.check_id, r.n, r.status, r.witness)),
        None => Ok(res.iter().map(|r| format!("n={}: {}", r.n, r.detail)).collect::<Vec<_>>().join("; ")),
    }
}

fn criterion_1() -> Outcome {
    for n in 2..=4 {
        let d = 4 * n;
        for a in 0..d {
            let v = CTVector::basis(n, a);
            if phi_inv_tensor(&phi_ct(&v)) != v {
                return Err(format!("Φ⁻¹Φ ≠ id at n={n}, ct{a}"));
            }
            for b in 0..d {
                let want = if a == b { Ext2Scalar::one() } else { Ext2Scalar::zero() };
                if phi_ct(&v).pairing(&phi_ct(&CTVector::basis(n, b))) != want {
                    return Err(format!("isometry fails at n={n}, ({a}, {b})"));
                }
            }
        }
        for h in 0..2 {
            for e in 0..2 * n {
                let x = HETensor::basis(n, h, e);
                if phi_ct(&phi_inv_tensor(&x)) != x {
                    return Err(format!("ΦΦ⁻¹ ≠ id at n={n}, h{h}e{e}"));
                }
            }
        }
    }
    all_pass(&run("lemma-ctishe-roundtrip", 2..=4, Backend::Exact, 0.0, &RunOptions::default())).map(|_| "n = 2..4 exact".into())
}

// ---- independent kernel-rank oracle over 𝔽_p

const P: u64 = 1_000_003;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + P - f * rows[rank][k] % P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subsets(d: usize, s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..d {
        for mut rest in subsets(d, s - 1).into_iter().filter(|r| r.first().map_or(true, |&x| x > first)) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `dim ker(σ⌟: Λˢ → Λˢ⁻²)` on a `2m`-dimensional symplectic space.
fn primitive_dim_oracle(m: usize, s: usize) -> usize {
    let src = subsets(2 * m, s);
    if s < 2 {
        return src.len();
    }
    let dst = subsets(2 * m, s - 2);
    let mut rows = vec![vec![0u64; src.len()]; dst.len()];
    for (c, blade) in src.iter().enumerate() {
        for k in 0..m {
            if blade.contains(&(2 * k)) && blade.contains(&(2 * k + 1)) {
                let rest: Vec<usize> = blade.iter().copied().filter(|&x| x != 2 * k && x != 2 * k + 1).collect();
                let r = dst.iter().position(|b| *b == rest).unwrap();
                rows[r][c] = (rows[r][c] + 1) % P;
            }
        }
    }
    src.len() - rank_mod_p(rows)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_2() -> Outcome {
    let mut summary = Vec::new();
    for n in 2..=5 {
        for (space, m, total) in [(SpinorSpace::base(n), n, 1usize << (2 * n)), (SpinorSpace::cone(n), n + 1, 1usize << (2 * n + 2))] {
            let oracle: Vec<usize> = space.summands.iter().map(|sm| (sm.r + 1) * primitive_dim_oracle(m, sm.s)).collect();
            let closed: Vec<usize> = space
                .summands
                .iter()
                .map(|sm| (sm.r + 1) * (binom(2 * m, sm.s) - if sm.s >= 2 { binom(2 * m, sm.s - 2) } else { 0 }))
                .collect();
            if space.summand_dims() != oracle || oracle != closed || oracle.iter().sum::<usize>() != total {
                return Err(format!("n={n}: library {:?}, oracle {oracle:?}, closed form {closed:?}", space.summand_dims()));
            }
            if n == 2 {
                summary.push(format!("{oracle:?}"));
            }
        }
    }
    if summary != ["[5, 8, 3]", "[14, 28, 18, 4]"] {
        return Err(format!("n = 2 values {summary:?}"));
    }
    Ok(format!("n = 2..5 totals 2^(2n), 2^(2n+2); n = 2 base {} cone {}", summary[0], summary[1]))
}

fn criterion_3() -> Outcome {
    all_pass(&run("lemma-decomp-equivariance", 2..=3, Backend::Exact, 0.0, &RunOptions::default()))
}

fn criterion_4() -> Outcome {
    all_pass(&run("prop-62-wedge-identity", 2..=2, Backend::Exact, 0.0, &RunOptions::default()))
}

fn criterion_5() -> Outcome {
    all_pass(&run("thetastar-sigma1", 2..=2, Backend::Exact, 0.0, &RunOptions::default()))
}

fn criterion_6() -> Outcome {
    let res = run("appendix-b-re-claim", 2..=3, Backend::Exact, 0.0, &RunOptions::default());
    for r in &res {
        let pairs = 16 * r.n * r.n;
        let holds = r.detail.starts_with("sp(n) claim HOLDS") && r.detail.contains(&format!("2R^H on {pairs}/{pairs}"));
        if r.status != Status::Reported || !holds {
            return Err(format!("n={}: {} {}", r.n, r.status, r.detail));
        }
    }
    Ok("sp(1) part = 2R^H and sp(n) part = 2R^E at n = 2, 3 (κ = 16n(n+2))".into())
}

fn criterion_7() -> Outcome {
    let res = run("clifford-anticommutator", 2..=2, Backend::Exact, 0.0, &RunOptions::default());
    all_pass(&res)?;
    if CLIFFORD_CONSTANT != -1 {
        return Err(format!("frozen constant changed to {CLIFFORD_CONSTANT}"));
    }
    Ok(format!("c = {CLIFFORD_CONSTANT}"))
}

fn criterion_8() -> Outcome {
    let ok = run("killing-scaling-equivalence", 2..=2, Backend::Float, 1e-12, &RunOptions::default());
    all_pass(&ok)?;
    let opts = RunOptions { lambda_sq: Some(Rational::from_integer(41.into())), jobs: None };
    let bad = run("killing-scaling-equivalence", 2..=2, Backend::Float, 1e-12, &opts);
    if bad[0].status != Status::Fail || bad[0].witness.is_none() {
        return Err("λ² = 41 did not fail".into());
    }
    Ok(format!("λ² = 40 holds at 1e-12; λ² = 41 fails with witness `{}`", bad[0].witness.as_deref().unwrap_or("")))
}

fn criterion_9() -> Outcome {
    let mut res = run("sp1-wedge-identity", 2..=2, Backend::Exact, 0.0, &RunOptions::default());
    res.extend(run("cartan-bracket-oracle", 2..=2, Backend::Exact, 0.0, &RunOptions::default()));
    all_pass(&res)
}

fn qkv(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qkv")).args(args).env_remove("QKV_JOBS").output().expect("spawn qkv");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn canonical(json: &str) -> Result<String, String> {
    let mut v: serde_json::Value = serde_json::from_str(json).map_err(|e| e.to_string())?;
    for r in v["results"].as_array_mut().ok_or("no results")? {
        r.as_object_mut().ok_or("entry")?.remove("elapsed_ms");
    }
    Ok(v.to_string())
}

fn criterion_10() -> Outcome {
    let args = ["verify", "--check", "all", "--n", "2", "--format", "json"];
    let (c1, j1) = qkv(&args);
    let (c2, j2) = qkv(&[&args[..], &["--jobs", "1"]].concat());
    if (c1, c2) != (0, 0) {
        return Err(format!("all-pass run exited {c1}/{c2}"));
    }
    if canonical(&j1)? != canonical(&j2)? {
        return Err("canonical JSON differs between runs".into());
    }
    if j1.contains('\r') {
        return Err("CRLF in output".into());
    }
    let (c_fail, j_fail) = qkv(&["verify", "--check", "killing-scaling-equivalence", "--n", "2", "--backend", "float", "--lambda-sq", "41"]);
    let v: serde_json::Value = serde_json::from_str(&j_fail).map_err(|e| e.to_string())?;
    if c_fail != 1 || v["results"][0]["status"] != "fail" || v["results"][0]["witness"].as_str().map_or(true, |w| w.split(' ').count() != 3) {
        return Err(format!("induced failure: exit {c_fail}, {}", v["results"][0]));
    }
    let (c_unknown, _) = qkv(&["verify", "--check", "nonexistent"]);
    let (c_range, _) = qkv(&["verify", "--check", "dims-2n", "--n", "1"]);
    if (c_unknown, c_range) != (2, 2) {
        return Err(format!("usage errors exited {c_unknown}/{c_range}"));
    }
    Ok("identical canonical JSON over two runs; exit codes 0 / 1 (λ² = 41) / 2 (unknown id, n = 1)".into())
}

fn main() {
    let criteria: [(&str, f64, fn() -> Outcome); 10] = [
        ("Φ round trip and isometry", 1.0, criterion_1),
        ("spinor dimension identities", 10.0, criterion_2),
        ("ι primitive and intertwining", 60.0, criterion_3),
        ("wedge identity on cone spinors", 120.0, criterion_4),
        ("θ⋆ identity on Σ1", 60.0, criterion_5),
        ("sp(1) and sp(n) parts of ½[ω∧ω]", 120.0, criterion_6),
        ("Clifford anticommutator", 30.0, criterion_7),
        ("Killing scaling equivalence", 1.0, criterion_8),
        ("quaternion identity and bracket oracle", 1.0, criterion_9),
        ("determinism and exit codes", f64::INFINITY, criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let time = if budget.is_finite() { format!("{secs:.2} s, budget {budget} s") } else { format!("{secs:.2} s") };
        match out {
            Ok(msg) => println!("criterion {:>2}: PASS  {name} ({time}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({time}): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
