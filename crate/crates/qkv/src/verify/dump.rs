//! `qkv dims` tables and `qkv dump` operator dumps.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::curvature::{curvature_value, CurvatureKind};
use crate::killing::{iota_op, killing_matrix, killing_space};
use crate::linspaces::{phi, HVector, TVector};
use crate::multilinear::{primitive_basis, SpaceTag};
use crate::operator::OperatorMatrix;
use crate::scalars::Ext2Scalar;
use crate::spinors::{clifford_real, mu, mu_he, PairTensor, SpinorSpace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DumpError {
    #[error("unknown operator `{0}`; expected mu:<h>:<e>, clifford:<t>, killing:<h>:<e>, cone-mu:<h>:<f>, iota, RH:<a>:<b> or RE:<a>:<b>")]
    Unknown(String),
    #[error("index out of range in `{0}`")]
    Range(String),
    #[error("{0}")]
    Compute(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsRecord {
    pub n: usize,
    pub base: Vec<usize>,
    pub base_total: usize,
    pub cone: Vec<usize>,
    pub cone_total: usize,
    /// `dim Λˢ∘E` for `s = 0..=n`.
    pub primitive_e: Vec<usize>,
    /// `dim Λˢ∘F` for `s = 0..=n+1`.
    pub primitive_f: Vec<usize>,
    pub parallel_spinors: usize,
}

pub fn dims(n: usize) -> DimsRecord {
    let base = SpinorSpace::base(n);
    let cone = SpinorSpace::cone(n);
    let prim = |tag, m: usize| (0..=m).map(|s| primitive_basis(tag, n, s).map(|b| b.len()).unwrap_or(0)).collect();
    DimsRecord {
        n,
        base: base.summand_dims(),
        base_total: base.dim,
        cone: cone.summand_dims(),
        cone_total: cone.dim,
        primitive_e: prim(SpaceTag::E, n),
        primitive_f: prim(SpaceTag::F, n + 1),
        parallel_spinors: cone.summands.last().map(|s| s.sym_dim).unwrap_or(0),
    }
}

impl DimsRecord {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n = {}", self.n);
        let _ = writeln!(s, "base  {:?} total {}", self.base, self.base_total);
        let _ = writeln!(s, "cone  {:?} total {}", self.cone, self.cone_total);
        let _ = writeln!(s, "prim E {:?}", self.primitive_e);
        let _ = writeln!(s, "prim F {:?}", self.primitive_f);
        let _ = writeln!(s, "parallel spinors {}", self.parallel_spinors);
        s
    }
}

fn parse_idx(name: &str, s: &str, bound: usize) -> Result<usize, DumpError> {
    let v: usize = s.parse().map_err(|_| DumpError::Unknown(name.to_string()))?;
    if v >= bound {
        return Err(DumpError::Range(name.to_string()));
    }
    Ok(v)
}

/// Sparse-triplet dump of a named operator: one `#` header line, then
/// `row col scalar` per nonzero entry.
pub fn dump_operator(name: &str, n: usize) -> Result<String, DumpError> {
    let parts: Vec<&str> = name.split(':').collect();
    let compute = |e: &dyn std::fmt::Display| DumpError::Compute(e.to_string());
    let (m, rows, cols): (OperatorMatrix, Box<dyn Fn(usize) -> String>, Box<dyn Fn(usize) -> String>) = match parts.as_slice() {
        ["mu", h, e] => {
            let (h, e) = (parse_idx(name, h, 2)?, parse_idx(name, e, 2 * n)?);
            let space = SpinorSpace::base(n);
            let m = mu_he(&HVector::basis(h), &crate::linspaces::EVector::basis(n, e), &space).map_err(|e| compute(&e))?;
            let l = move |i| space.label(i);
            (m, Box::new(l.clone()), Box::new(l))
        }
        ["clifford", t] => {
            let t = parse_idx(name, t, 4 * n)?;
            let space = SpinorSpace::base(n);
            let m = clifford_real(&TVector::real_basis(n, t), &space).map_err(|e| compute(&e))?;
            let l = move |i| space.label(i);
            (m, Box::new(l.clone()), Box::new(l))
        }
        ["killing", h, e] => {
            let (h, e) = (parse_idx(name, h, 2)?, parse_idx(name, e, 2 * n)?);
            let space = killing_space(n);
            let m = killing_matrix(&PairTensor::basis(SpaceTag::E, n, h, e)).map_err(|e| compute(&e))?;
            let l = move |i| space.label(i);
            (m, Box::new(l.clone()), Box::new(l))
        }
        ["cone-mu", h, f] => {
            let (h, f) = (parse_idx(name, h, 2)?, parse_idx(name, f, 2 * n + 2)?);
            let space = SpinorSpace::cone(n);
            let m = mu(&PairTensor::basis(SpaceTag::F, n, h, f), &space).map_err(|e| compute(&e))?;
            let l = move |i| space.label(i);
            (m, Box::new(l.clone()), Box::new(l))
        }
        ["iota"] => {
            let space = killing_space(n);
            let m = iota_op(n).map_err(|e| compute(&e))?;
            (m, Box::new(|i| format!("w{i}")), Box::new(move |i| space.label(i)))
        }
        [kind @ ("RH" | "RE"), a, b] => {
            let (a, b) = (parse_idx(name, a, 4 * n)?, parse_idx(name, b, 4 * n)?);
            let kind = if *kind == "RH" { CurvatureKind::RH } else { CurvatureKind::RE };
            let one = Ext2Scalar::one();
            let m = curvature_value(kind, &phi(&one, &TVector::real_basis(n, a)), &phi(&one, &TVector::real_basis(n, b)), None);
            let l = move |i: usize| format!("h{}e{}", i / (2 * n), i % (2 * n));
            (m, Box::new(l), Box::new(l))
        }
        _ => return Err(DumpError::Unknown(name.to_string())),
    };
    let mut out = format!("# {name} n={n} rows={} cols={} nnz={}\n", m.rows, m.cols, m.nnz());
    out.push_str(&m.dump(&*rows, &*cols));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims_n2() {
        let d = dims(2);
        assert_eq!(d.base, vec![5, 8, 3]);
        assert_eq!(d.cone, vec![14, 28, 18, 4]);
        assert_eq!((d.base_total, d.cone_total, d.parallel_spinors), (16, 64, 4));
        assert_eq!(d.primitive_e, vec![1, 4, 5]);
    }

    #[test]
    fn dumps() {
        let s = dump_operator("mu:0:1", 2).unwrap();
        let mut lines = s.lines();
        assert!(lines.next().unwrap().starts_with("# mu:0:1 n=2 rows=16 cols=16"));
        for l in lines {
            assert_eq!(l.split(' ').count(), 3, "{l}");
        }
        assert!(dump_operator("iota", 2).unwrap().contains("phi1."));
        assert!(dump_operator("RH:0:1", 2).is_ok());
        assert_eq!(dump_operator("nope", 2), Err(DumpError::Unknown("nope".into())));
        assert_eq!(dump_operator("clifford:99", 2), Err(DumpError::Range("clifford:99".into())));
    }
}
