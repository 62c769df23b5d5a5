use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::Matrix;

pub type SparseVec = Vec<(usize, BigInt)>;

/// Column-major sparse integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn from_dense(m: &Matrix) -> SparseMatrix {
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !m[(i, j)].is_zero())
                    .map(|i| (i, m[(i, j)].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            columns,
        }
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.columns[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, x)| x.clone())
            .unwrap_or_default()
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, y) in col {
                    for (i, x) in &self.columns[*k] {
                        *acc.entry(*i).or_default() += x * y;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(|(_, x)| x.is_zero()))
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &[(usize, BigInt)]) -> SparseVec {
        let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (j, y) in v {
            for (i, x) in &self.columns[*j] {
                *acc.entry(*i).or_default() += x * y;
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}
