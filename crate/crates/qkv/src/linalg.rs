//! Sparse exact row reduction over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalars::Rational;

/// Sparse row: column index to nonzero value.
pub type SparseRow = BTreeMap<usize, Rational>;

/// Reduced row echelon form of a sparse matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    pub cols: usize,
    /// `(pivot column, row)` with the pivot entry normalised to 1.
    pub rows: Vec<(usize, SparseRow)>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let piv: std::collections::BTreeSet<usize> = self.rows.iter().map(|(c, _)| *c).collect();
        (0..self.cols).filter(|c| !piv.contains(c)).collect()
    }

    /// One kernel vector per free column, ascending. Each has a 1 at its own
    /// free column and 0 at every other free column.
    pub fn kernel(&self) -> Vec<SparseRow> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = SparseRow::new();
                v.insert(f, Rational::one());
                for (pc, row) in &self.rows {
                    if let Some(x) = row.get(&f) {
                        v.insert(*pc, -x);
                    }
                }
                v
            })
            .collect()
    }
}

fn axpy(target: &mut SparseRow, factor: &Rational, src: &SparseRow) {
    for (c, x) in src {
        let entry = target.entry(*c).or_insert_with(Rational::zero);
        *entry -= factor * x;
        if entry.is_zero() {
            target.remove(c);
        }
    }
}

/// Row reduce `rows` (each a sparse row over `cols` columns).
pub fn rref(mut rows: Vec<SparseRow>, cols: usize) -> Rref {
    rows.retain(|r| !r.is_empty());
    let mut done: Vec<(usize, SparseRow)> = Vec::new();
    for c in 0..cols {
        let Some(pos) = rows.iter().position(|r| r.contains_key(&c)) else {
            continue;
        };
        let mut pivot = rows.swap_remove(pos);
        let inv = Rational::one() / pivot[&c].clone();
        for v in pivot.values_mut() {
            *v *= &inv;
        }
        for r in rows.iter_mut() {
            if let Some(f) = r.get(&c).cloned() {
                axpy(r, &f, &pivot);
            }
        }
        rows.retain(|r| !r.is_empty());
        for (_, r) in done.iter_mut() {
            if let Some(f) = r.get(&c).cloned() {
                axpy(r, &f, &pivot);
            }
        }
        done.push((c, pivot));
    }
    Rref { cols, rows: done }
}

/// Solve `A x = b` where `A` is given by sparse rows and `b` is dense.
/// Returns one solution (free variables set to zero) and the nullity,
/// or `None` if the system is inconsistent.
pub fn solve(a_rows: &[SparseRow], cols: usize, b: &[Rational]) -> Option<(Vec<Rational>, usize)> {
    let aug: Vec<SparseRow> = a_rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            if !bi.is_zero() {
                r.insert(cols, bi.clone());
            }
            r
        })
        .collect();
    let red = rref(aug, cols + 1);
    if red.rows.iter().any(|(c, _)| *c == cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (pc, row) in &red.rows {
        if let Some(v) = row.get(&cols) {
            x[*pc] = v.clone();
        }
    }
    let nullity = cols - red.rank();
    Some((x, nullity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|(c, v)| (*c, int(*v))).collect()
    }

    #[test]
    fn kernel_of_small_matrix() {
        // x0 + x1 = 0, x2 - x3 = 0
        let red = rref(vec![row(&[(0, 1), (1, 1)]), row(&[(2, 1), (3, -1)])], 4);
        assert_eq!(red.rank(), 2);
        let ker = red.kernel();
        assert_eq!(ker.len(), 2);
        assert_eq!(ker[0], row(&[(0, -1), (1, 1)]));
        assert_eq!(ker[1], row(&[(2, 1), (3, 1)]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = vec![row(&[(0, 2), (1, 1)]), row(&[(1, 3)])];
        let (x, nullity) = solve(&a, 2, &[int(5), int(3)]).unwrap();
        assert_eq!(x, vec![int(2), int(1)]);
        assert_eq!(nullity, 0);
        let a = vec![row(&[(0, 1)]), row(&[(0, 2)])];
        assert!(solve(&a, 1, &[int(1), int(1)]).is_none());
    }
}
