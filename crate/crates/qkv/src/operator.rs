//! Sparse exact linear operators.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::scalars::Ext2Scalar;

/// Sparse vector: index to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Ext2Scalar>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    Shape(usize, usize, usize, usize),
}

/// Add `c·src` into `dst`, pruning zeros.
pub fn axpy(dst: &mut SparseVec, c: &Ext2Scalar, src: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, x) in src {
        let e = dst.entry(*i).or_insert_with(Ext2Scalar::zero);
        *e += c * x;
        if e.is_zero() {
            dst.remove(i);
        }
    }
}

/// Exact `rows × cols` matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec>,
}

impl OperatorMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        OperatorMatrix { rows, cols, columns: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Ext2Scalar::one())
    }

    pub fn scalar(n: usize, c: Ext2Scalar) -> Self {
        let mut m = Self::zero(n, n);
        if !c.is_zero() {
            for (i, col) in m.columns.iter_mut().enumerate() {
                col.insert(i, c.clone());
            }
        }
        m
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.keys().all(|&r| r < rows)));
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.retain(|_, v| !v.is_zero());
                c
            })
            .collect::<Vec<_>>();
        OperatorMatrix { rows, cols: columns.len(), columns }
    }

    pub fn get(&self, r: usize, c: usize) -> Ext2Scalar {
        self.columns[c].get(&r).cloned().unwrap_or_else(Ext2Scalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Ext2Scalar) {
        if v.is_zero() {
            self.columns[c].remove(&r);
        } else {
            self.columns[c].insert(r, v);
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, x) in v {
            axpy(&mut out, x, &self.columns[*c]);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &OperatorMatrix) -> Result<Self, OperatorError> {
        if self.cols != other.rows {
            return Err(OperatorError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        Ok(OperatorMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        })
    }

    fn check_same(&self, other: &OperatorMatrix) -> Result<(), OperatorError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(OperatorError::Shape(self.rows, self.cols, other.rows, other.cols));
        }
        Ok(())
    }

    /// `self + c·other`.
    pub fn add_scaled(&self, c: &Ext2Scalar, other: &OperatorMatrix) -> Result<Self, OperatorError> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (dst, src) in out.columns.iter_mut().zip(&other.columns) {
            axpy(dst, c, src);
        }
        Ok(out)
    }

    pub fn add(&self, other: &OperatorMatrix) -> Result<Self, OperatorError> {
        self.add_scaled(&Ext2Scalar::one(), other)
    }

    pub fn sub(&self, other: &OperatorMatrix) -> Result<Self, OperatorError> {
        self.add_scaled(&Ext2Scalar::from_int(-1), other)
    }

    pub fn scale(&self, c: &Ext2Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        let mut out = self.clone();
        for col in out.columns.iter_mut() {
            for v in col.values_mut() {
                *v = c * &*v;
            }
        }
        out
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &OperatorMatrix) -> Result<Self, OperatorError> {
        self.compose(other)?.add(&other.compose(self)?)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &OperatorMatrix) -> Result<Self, OperatorError> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// Nonzero entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Ext2Scalar)> {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, v)))
    }

    /// Kronecker product; index `(a, b) ↦ a·dim_b + b`.
    pub fn kron(&self, other: &OperatorMatrix) -> Self {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for (r1, c1, v1) in self.entries() {
            for (r2, c2, v2) in other.entries() {
                out.columns[c1 * other.cols + c2].insert(r1 * other.rows + r2, v1 * v2);
            }
        }
        out
    }

    /// Add `block` into `self` with its top-left corner at `(row0, col0)`.
    pub fn add_block(&mut self, row0: usize, col0: usize, block: &OperatorMatrix) {
        assert!(row0 + block.rows <= self.rows && col0 + block.cols <= self.cols);
        for (c, col) in block.columns.iter().enumerate() {
            let shifted: SparseVec = col.iter().map(|(r, v)| (r + row0, v.clone())).collect();
            axpy(&mut self.columns[col0 + c], &Ext2Scalar::one(), &shifted);
        }
    }

    /// Submatrix `rows × cols` starting at `(row0, col0)`.
    pub fn block(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> Self {
        let columns = self.columns[col0..col0 + cols]
            .iter()
            .map(|col| col.range(row0..row0 + rows).map(|(r, v)| (r - row0, v.clone())).collect())
            .collect();
        OperatorMatrix { rows, cols, columns }
    }

    /// First entry (column-major) where `self` and `other` differ.
    pub fn first_difference(&self, other: &OperatorMatrix) -> Option<(usize, usize, Ext2Scalar, Ext2Scalar)> {
        for c in 0..self.cols.min(other.cols) {
            let (a, b) = (&self.columns[c], &other.columns[c]);
            if a == b {
                continue;
            }
            let keys: std::collections::BTreeSet<usize> = a.keys().chain(b.keys()).copied().collect();
            for r in keys {
                let (x, y) = (self.get(r, c), other.get(r, c));
                if x != y {
                    return Some((r, c, x, y));
                }
            }
        }
        None
    }

    /// Sparse-triplet text: one `row col scalar` line per nonzero entry.
    pub fn dump(&self, row_label: &dyn Fn(usize) -> String, col_label: &dyn Fn(usize) -> String) -> String {
        let mut s = String::new();
        for (r, c, v) in self.entries() {
            let _ = writeln!(s, "{} {} {}", row_label(r), col_label(c), v);
        }
        s
    }
}
