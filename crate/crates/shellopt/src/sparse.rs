//! Minimal deterministic sparse-matrix plumbing.
//!
//! Assembly always goes triplets -> sorted/merged CSR, so identical inputs
//! produce identical matrices regardless of insertion order. Symmetric
//! positive-definite solves are delegated to faer's supernodal Cholesky;
//! [`SpdPattern`] keeps the symbolic factorization so repeated numeric
//! refactorizations (same sparsity, new values) stay cheap.

use faer::linalg::solvers::Solve;
use faer::sparse::linalg::solvers::{Llt, SymbolicLlt};
use faer::sparse::SymbolicSparseColMatRef;
use faer::{Mat, Side};
use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Triplet accumulator; duplicate entries are summed at build time.
#[derive(Debug, Clone)]
pub struct TripletBuilder {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl TripletBuilder {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            entries: Vec::new(),
        }
    }

    pub fn add(&mut self, row: usize, col: usize, val: f64) {
        debug_assert!(row < self.n_rows && col < self.n_cols);
        self.entries.push((row, col, val));
    }

    pub fn build(mut self) -> CsrMatrix {
        self.entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; self.n_rows + 1];
        let mut col_idx = Vec::with_capacity(self.entries.len());
        let mut vals: Vec<f64> = Vec::with_capacity(self.entries.len());
        let mut last = None;
        for &(r, c, v) in &self.entries {
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
            } else {
                col_idx.push(c);
                vals.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for i in 0..self.n_rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        CsrMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            row_ptr,
            col_idx,
            vals,
        }
    }
}

/// Compressed sparse row matrix with merged, column-sorted entries per row.
#[derive(Debug, Clone)]
pub struct CsrMatrix {
    n_rows: usize,
    n_cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    vals: Vec<f64>,
}

impl CsrMatrix {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Entries of one row as (column, value) pairs, column-ascending.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        self.col_idx[lo..hi]
            .iter()
            .copied()
            .zip(self.vals[lo..hi].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        let lo = self.row_ptr[r];
        let hi = self.row_ptr[r + 1];
        match self.col_idx[lo..hi].binary_search(&c) {
            Ok(k) => self.vals[lo + k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_cols);
        (0..self.n_rows)
            .map(|r| self.row(r).map(|(c, v)| v * x[c]).sum())
            .collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n_rows)
            .map(|r| self.row(r).map(|(_, v)| v).sum())
            .collect()
    }

    pub fn max_symmetry_error(&self) -> f64 {
        let mut err: f64 = 0.0;
        for r in 0..self.n_rows {
            for (c, v) in self.row(r) {
                err = err.max((v - self.get(c, r)).abs());
            }
        }
        err
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n_rows, self.n_cols);
        for r in 0..self.n_rows {
            for (c, v) in self.row(r) {
                m[(r, c)] = v;
            }
        }
        m
    }

    /// Extract the submatrix with the given (sorted, deduplicated) row and
    /// column index sets; indices are renumbered to 0..len.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> CsrMatrix {
        let mut col_map = vec![usize::MAX; self.n_cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let mut b = TripletBuilder::new(rows.len(), cols.len());
        for (new_r, &old_r) in rows.iter().enumerate() {
            for (c, v) in self.row(old_r) {
                if col_map[c] != usize::MAX {
                    b.add(new_r, col_map[c], v);
                }
            }
        }
        b.build()
    }
}

fn csr_to_csc_arrays(m: &CsrMatrix) -> (Vec<usize>, Vec<usize>, Vec<f64>) {
    // CSC of a matrix equals CSR of its transpose; for the symmetric
    // matrices we factorize the two coincide, but build the transpose
    // properly so the pattern helper also works for near-symmetric checks.
    let mut col_counts = vec![0usize; m.n_cols + 1];
    for &c in &m.col_idx {
        col_counts[c + 1] += 1;
    }
    for i in 0..m.n_cols {
        col_counts[i + 1] += col_counts[i];
    }
    let col_ptr = col_counts.clone();
    let mut cursor = col_counts;
    let mut row_idx = vec![0usize; m.nnz()];
    let mut vals = vec![0.0f64; m.nnz()];
    for r in 0..m.n_rows {
        for (c, v) in m.row(r) {
            let slot = cursor[c];
            row_idx[slot] = r;
            vals[slot] = v;
            cursor[c] += 1;
        }
    }
    (col_ptr, row_idx, vals)
}

/// Sparsity pattern of a symmetric positive-definite matrix together with
/// its symbolic Cholesky factorization. Numeric factorizations against the
/// same pattern reuse the fill-reducing ordering and elimination tree.
pub struct SpdPattern {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    symbolic: SymbolicLlt<usize>,
}

impl SpdPattern {
    /// Build from the full (both triangles) entry list of a symmetric matrix.
    pub fn from_csr(m: &CsrMatrix) -> Result<Self> {
        assert_eq!(m.n_rows, m.n_cols);
        let (col_ptr, row_idx, _) = csr_to_csc_arrays(m);
        let sym =
            SymbolicSparseColMatRef::new_checked(m.n_rows, m.n_cols, &col_ptr, None, &row_idx);
        let symbolic =
            SymbolicLlt::try_new(sym, Side::Lower).map_err(|_| Error::SingularInteriorBlock)?;
        Ok(Self {
            n: m.n_rows,
            col_ptr,
            row_idx,
            symbolic,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    /// Value-slot of entry (r, c) in the CSC value array.
    pub fn slot(&self, r: usize, c: usize) -> usize {
        let lo = self.col_ptr[c];
        let hi = self.col_ptr[c + 1];
        lo + self.row_idx[lo..hi]
            .binary_search(&r)
            .expect("entry not present in pattern")
    }

    /// Numeric factorization of the matrix whose CSC values are `vals`.
    pub fn factorize(&self, vals: &[f64]) -> Result<SpdFactor> {
        assert_eq!(vals.len(), self.nnz());
        let sym =
            SymbolicSparseColMatRef::new_checked(self.n, self.n, &self.col_ptr, None, &self.row_idx);
        let mat = faer::sparse::SparseColMatRef::new(sym, vals);
        let llt = Llt::try_new_with_symbolic(self.symbolic.clone(), mat, Side::Lower)
            .map_err(|_| Error::SingularSystem)?;
        Ok(SpdFactor { n: self.n, llt })
    }
}

/// A numeric Cholesky factorization, ready for repeated solves.
pub struct SpdFactor {
    n: usize,
    llt: Llt<usize, f64>,
}

impl SpdFactor {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        assert_eq!(rhs.len(), self.n);
        let mut b = Mat::<f64>::zeros(self.n, 1);
        for (i, &v) in rhs.iter().enumerate() {
            b[(i, 0)] = v;
        }
        let x = self.llt.solve(&b);
        (0..self.n).map(|i| x[(i, 0)]).collect()
    }

    /// Solve several right-hand sides in one call.
    pub fn solve_many(&self, rhs: &[Vec<f64>]) -> Vec<Vec<f64>> {
        if rhs.is_empty() {
            return Vec::new();
        }
        let k = rhs.len();
        let mut b = Mat::<f64>::zeros(self.n, k);
        for (j, col) in rhs.iter().enumerate() {
            assert_eq!(col.len(), self.n);
            for (i, &v) in col.iter().enumerate() {
                b[(i, j)] = v;
            }
        }
        let x = self.llt.solve(&b);
        (0..k)
            .map(|j| (0..self.n).map(|i| x[(i, j)]).collect())
            .collect()
    }
}

/// One-shot convenience: pattern + numeric factorization of a CSR matrix.
pub fn cholesky(m: &CsrMatrix) -> Result<SpdFactor> {
    let (_, _, vals) = csr_to_csc_arrays(m);
    let pattern = SpdPattern::from_csr(m)?;
    pattern.factorize(&vals)
}

/// CSC value array of a CSR matrix (entry order matches `SpdPattern` slots).
pub fn csc_values(m: &CsrMatrix) -> Vec<f64> {
    csr_to_csc_arrays(m).2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn laplacian_1d(n: usize) -> CsrMatrix {
        let mut b = TripletBuilder::new(n, n);
        for i in 0..n {
            b.add(i, i, 2.0);
            if i > 0 {
                b.add(i, i - 1, -1.0);
            }
            if i + 1 < n {
                b.add(i, i + 1, -1.0);
            }
        }
        b.build()
    }

    #[test]
    fn triplets_merge_duplicates() {
        let mut b = TripletBuilder::new(2, 2);
        b.add(0, 0, 1.0);
        b.add(0, 0, 2.5);
        b.add(1, 0, -1.0);
        let m = b.build();
        assert_eq!(m.nnz(), 2);
        assert_relative_eq!(m.get(0, 0), 3.5);
        assert_relative_eq!(m.get(1, 0), -1.0);
        assert_relative_eq!(m.get(1, 1), 0.0);
    }

    #[test]
    fn deterministic_build_independent_of_insertion_order() {
        let mut a = TripletBuilder::new(3, 3);
        let mut b = TripletBuilder::new(3, 3);
        let entries = [(0, 1, 1.0), (2, 2, 3.0), (0, 0, 2.0), (1, 0, 1.0)];
        for e in entries {
            a.add(e.0, e.1, e.2);
        }
        for e in entries.iter().rev() {
            b.add(e.0, e.1, e.2);
        }
        let (a, b) = (a.build(), b.build());
        assert_eq!(a.col_idx, b.col_idx);
        assert_eq!(a.vals, b.vals);
    }

    #[test]
    fn cholesky_solves_spd_system() {
        let m = laplacian_1d(50);
        let f = cholesky(&m).unwrap();
        let rhs: Vec<f64> = (0..50).map(|i| (i as f64 * 0.1).sin()).collect();
        let x = f.solve(&rhs);
        let r = m.matvec(&x);
        for (a, b) in r.iter().zip(&rhs) {
            assert_relative_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn pattern_refactorize_matches_fresh() {
        let m = laplacian_1d(20);
        let pattern = SpdPattern::from_csr(&m).unwrap();
        let mut vals = csc_values(&m);
        // scale values: factorization of 2*A
        for v in &mut vals {
            *v *= 2.0;
        }
        let f = pattern.factorize(&vals).unwrap();
        let rhs = vec![1.0; 20];
        let x = f.solve(&rhs);
        let expect = cholesky(&m).unwrap().solve(&rhs);
        for (a, b) in x.iter().zip(&expect) {
            assert_relative_eq!(*a * 2.0, *b, epsilon = 1e-10);
        }
    }

    #[test]
    fn submatrix_extracts_block() {
        let m = laplacian_1d(5);
        let s = m.submatrix(&[1, 2], &[0, 1, 2]);
        assert_eq!(s.n_rows(), 2);
        assert_relative_eq!(s.get(0, 0), -1.0);
        assert_relative_eq!(s.get(0, 1), 2.0);
        assert_relative_eq!(s.get(1, 2), 2.0);
    }
}
