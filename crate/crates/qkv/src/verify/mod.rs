//! Check registry, comparison oracles and the parallel runner behind `qkv verify`.

mod checks;
pub mod dump;
pub mod report;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::operator::OperatorMatrix;
use crate::scalars::{Ext2Scalar, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("invalid n range `{0}`: expected `k` or `a..b` with 2 <= a <= b")]
    BadRange(String),
    #[error("unknown backend `{0}`")]
    BadBackend(String),
    #[error("tolerance must be a nonnegative number")]
    BadTolerance,
    #[error("thread pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl FromStr for Backend {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(VerifyError::BadBackend(s.to_string())),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        })
    }
}

/// Parse `k` or `a..b` (inclusive); `n` must be at least 2.
pub fn parse_n_range(s: &str) -> Result<RangeInclusive<usize>, VerifyError> {
    let bad = || VerifyError::BadRange(s.to_string());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim_start_matches('=').trim()),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a < 2 || b < a {
        return Err(bad());
    }
    Ok(a..=b)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckSpec {
    pub check_id: String,
    pub n_range: RangeInclusive<usize>,
    pub backend: Backend,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub n: usize,
    pub status: Status,
    /// `row col scalar` of the first offending entry.
    pub witness: Option<String>,
    pub elapsed_ms: u64,
    pub backend: Backend,
    pub detail: String,
}

/// Knobs shared by all checks of one run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunOptions {
    /// Replaces `λ²` in the Killing scaling check.
    pub lambda_sq: Option<Rational>,
    /// Worker threads; `None` uses the available parallelism.
    pub jobs: Option<usize>,
}

/// Per-run comparison context.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub n: usize,
    pub backend: Backend,
    pub tolerance: f64,
    pub lambda_sq: Option<Rational>,
}

impl Ctx {
    pub fn new(n: usize, backend: Backend, tolerance: f64) -> Self {
        Ctx { n, backend, tolerance, lambda_sq: None }
    }

    /// Equal exactly, or within `tolerance` on the float backend.
    pub fn same(&self, a: &Ext2Scalar, b: &Ext2Scalar) -> bool {
        match self.backend {
            Backend::Exact => a == b,
            Backend::Float => (a - b).to_float().approx_eq(&crate::scalars::FloatScalar::new(0.0, 0.0), self.tolerance),
        }
    }

    /// First entry where `lhs` and `rhs` disagree, as a `row col scalar`
    /// witness carrying `lhs − rhs`.
    pub fn compare(&self, lhs: &OperatorMatrix, rhs: &OperatorMatrix, row: &dyn Fn(usize) -> String, col: &dyn Fn(usize) -> String) -> Option<String> {
        assert_eq!((lhs.rows, lhs.cols), (rhs.rows, rhs.cols), "operator shapes");
        match self.backend {
            Backend::Exact => lhs.first_difference(rhs).map(|(r, c, x, y)| format!("{} {} {}", row(r), col(c), x - y)),
            Backend::Float => {
                let diff = lhs.sub(rhs).expect("same shape");
                let found = diff
                    .entries()
                    .find(|(_, _, v)| !self.same(v, &Ext2Scalar::zero()))
                    .map(|(r, c, v)| format!("{} {} {}", row(r), col(c), v));
                found
            }
        }
    }
}

/// Outcome of one check at one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<String>,
    pub detail: String,
    /// Backend actually used, when the check overrides the request.
    pub backend: Option<Backend>,
}

impl Outcome {
    pub fn verdict(witness: Option<String>, detail: impl Into<String>) -> Self {
        let status = if witness.is_some() { Status::Fail } else { Status::Pass };
        Outcome { status, witness, detail: detail.into(), backend: None }
    }
}

/// A registered check.
pub struct CheckInfo {
    pub id: &'static str,
    /// The mathematical statement the check decides.
    pub statement: &'static str,
    pub default_range: (usize, usize),
    /// Rough cost at the top of the default range, debug build.
    pub cost: &'static str,
    pub run: fn(&Ctx) -> Outcome,
}

impl fmt::Debug for CheckInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CheckInfo").field("id", &self.id).finish()
    }
}

pub static REGISTRY: &[CheckInfo] = &[
    CheckInfo {
        id: "lemma-ctishe-roundtrip",
        statement: "Φ: ℂ⊗T → H⊗E is inverted by Φ⁻¹ and carries ⟨,⟩ᶜ to σ_H⊗σ_E",
        default_range: (2, 4),
        cost: "< 10 ms",
        run: checks::ctishe_roundtrip,
    },
    CheckInfo {
        id: "dims-2n",
        statement: "Σ_r (r+1)(C(2n,n−r) − C(2n,n−r−2)) = 2^{2n}, the cone analogue 2^{2n+2}, and n+2 parallel spinors",
        default_range: (2, 4),
        cost: "< 0.1 s",
        run: checks::dims_2n,
    },
    CheckInfo {
        id: "lemma-decomp-equivariance",
        statement: "ι lands in primitive forms and (h⊗e)⋆ι(φ) = ι((1/√2)A_{h⊗e}φ)",
        default_range: (2, 3),
        cost: "< 0.1 s",
        run: checks::decomp_equivariance,
    },
    CheckInfo {
        id: "prop-62-wedge-identity",
        statement: "(p⊗f₁)∧(q⊗f₂) − (q⊗f₁)∧(p⊗f₂) acts on the cone spinors as id⊗(f₁f₂)⋆",
        default_range: (2, 3),
        cost: "< 0.5 s",
        run: checks::cone_wedge_identity,
    },
    CheckInfo {
        id: "thetastar-sigma1",
        statement: "the θ⋆ identity Σ_u spin(ut∧U) = √2 id⊗Φ(t)⋆ on Σ₁, with its extension to every Σ_r reported",
        default_range: (2, 3),
        cost: "~1 s",
        run: checks::thetastar,
    },
    CheckInfo {
        id: "appendix-b-re-claim",
        statement: "the sp(1) and sp(n) parts of ½[ω∧ω] equal κ/(8n(n+2)) R^H and κ/(8n(n+2)) R^E",
        default_range: (2, 3),
        cost: "~3 s",
        run: checks::bracket_curvature,
    },
    CheckInfo {
        id: "clifford-anticommutator",
        statement: "{t₁·, t₂·} = 2c⟨t₁,t₂⟩ on the base spinors with one global constant c",
        default_range: (2, 3),
        cost: "< 0.2 s",
        run: checks::clifford,
    },
    CheckInfo {
        id: "killing-scaling-equivalence",
        statement: "conjugation by D turns the scaled Killing system into the original one iff λ² = (κ/4)(n+3)/(n+2)",
        default_range: (2, 3),
        cost: "< 1 ms",
        run: checks::killing_scaling,
    },
    CheckInfo {
        id: "sp1-wedge-identity",
        statement: "−qz = ½ad(z)q + (z∧1)q for z ∈ {i,j,k}, q ∈ {1,i,j,k}",
        default_range: (2, 3),
        cost: "< 1 ms",
        run: checks::sp1_wedge,
    },
    CheckInfo {
        id: "cartan-bracket-oracle",
        statement: "[a₁∧b₁, a₂∧b₂] expands to the wedge formula, and the Cartan grading of sp(n+1) is respected",
        default_range: (2, 3),
        cost: "~2 s",
        run: checks::cartan_bracket_oracle,
    },
];

pub fn find_check(id: &str) -> Result<&'static CheckInfo, VerifyError> {
    REGISTRY.iter().find(|c| c.id == id).ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))
}

/// Specs for `all` or a single id, with default ranges when `n_range` is `None`.
pub fn expand_specs(id: &str, n_range: Option<RangeInclusive<usize>>, backend: Backend, tolerance: f64) -> Result<Vec<CheckSpec>, VerifyError> {
    if !(tolerance >= 0.0) {
        return Err(VerifyError::BadTolerance);
    }
    let infos: Vec<&CheckInfo> = if id == "all" { REGISTRY.iter().collect() } else { vec![find_check(id)?] };
    Ok(infos
        .into_iter()
        .map(|c| CheckSpec {
            check_id: c.id.to_string(),
            n_range: n_range.clone().unwrap_or(c.default_range.0..=c.default_range.1),
            backend,
            tolerance,
        })
        .collect())
}

/// Run every `(spec, n)` job in a work pool; results come back in spec order, then by `n`.
pub fn run_checks(specs: &[CheckSpec], opts: &RunOptions) -> Result<Vec<CheckResult>, VerifyError> {
    let mut jobs = Vec::new();
    for spec in specs {
        let info = find_check(&spec.check_id)?;
        if *spec.n_range.start() < 2 {
            return Err(VerifyError::BadRange(format!("{:?}", spec.n_range)));
        }
        for n in spec.n_range.clone() {
            jobs.push((info, spec, n));
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build().map_err(|e| VerifyError::Pool(e.to_string()))?;
    Ok(pool.install(|| {
        jobs.par_iter()
            .map(|(info, spec, n)| {
                let ctx = Ctx { n: *n, backend: spec.backend, tolerance: spec.tolerance, lambda_sq: opts.lambda_sq.clone() };
                let start = Instant::now();
                let out = (info.run)(&ctx);
                CheckResult {
                    check_id: info.id.to_string(),
                    n: *n,
                    status: out.status,
                    witness: out.witness,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                    backend: out.backend.unwrap_or(spec.backend),
                    detail: out.detail,
                }
            })
            .collect()
    }))
}

/// Process exit code: 0 when nothing failed, 1 otherwise.
pub fn exit_code(results: &[CheckResult]) -> i32 {
    if results.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}
