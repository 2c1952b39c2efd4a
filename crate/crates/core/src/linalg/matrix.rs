use std::collections::HashMap;
use std::fmt;

use super::sparse::{Accumulator, SparseVec};
use crate::field::Field;

/// Exact sparse matrix stored by columns. Column `j` is the image of the
/// `j`-th standard basis vector, so `m * x` maps `F^cols` to `F^rows`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F>>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("columns", &self.columns)
            .finish()
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            columns: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            columns: (0..n).map(SparseVec::unit).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec<F>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.max_index().is_none_or(|i| i < rows)));
        Matrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    /// Row-major dense input.
    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut acc: Vec<Vec<(usize, F)>> = vec![Vec::new(); c];
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    acc[j].push((i, x.clone()));
                }
            }
        }
        Matrix::from_columns(r, acc.into_iter().map(SparseVec::from_pairs).collect())
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let conv: Vec<Vec<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| F::from_i64(x)).collect())
            .collect();
        Self::from_rows(&conv)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &SparseVec<F> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.columns[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, x: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new();
        for (j, c) in x.iter() {
            acc.push_scaled(&self.columns[j], c, 0);
        }
        acc.finish()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        Matrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .zip(&other.columns)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix<F> {
        let mut acc: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.iter() {
                acc[i].push((j, x.clone()));
            }
        }
        Matrix::from_columns(
            self.cols,
            acc.into_iter().map(|p| SparseVec::from_pairs(p)).collect(),
        )
    }

    /// Kronecker product: entry `(i*b.rows + j, k*b.cols + l)` is `a[i,k] * b[j,l]`.
    pub fn kronecker(&self, b: &Matrix<F>) -> Matrix<F> {
        let mut columns = Vec::with_capacity(self.cols * b.cols);
        for a_col in &self.columns {
            for b_col in &b.columns {
                let mut pairs = Vec::with_capacity(a_col.nnz() * b_col.nnz());
                for (i, x) in a_col.iter() {
                    for (j, y) in b_col.iter() {
                        pairs.push((i * b.rows + j, x.mul(y)));
                    }
                }
                columns.push(SparseVec::from_pairs(pairs));
            }
        }
        Matrix {
            rows: self.rows * b.rows,
            cols: self.cols * b.cols,
            columns,
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows);
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        Matrix {
            rows: self.rows,
            cols: self.cols + other.cols,
            columns,
        }
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols);
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.add(&b.shifted(self.rows)))
            .collect();
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            columns,
        }
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let columns = cols
            .iter()
            .map(|&c| self.columns[c].remap(|r| pos.get(&r).copied()))
            .collect();
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            columns,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col.iter() {
                out[i][j] = x.clone();
            }
        }
        out
    }
}
