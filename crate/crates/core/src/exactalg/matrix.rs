//! Sparse integer matrices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Row-major sparse matrix; the entry map never holds zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), BigInt::one());
        }
        m
    }

    pub fn from_dense<T: Into<BigInt> + Copy>(rows: usize, cols: usize, data: &[T]) -> Self {
        assert_eq!(data.len(), rows * cols);
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, data[i * cols + j].into());
            }
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<Vec<(usize, BigInt)>>) -> Self {
        assert_eq!(data.len(), rows);
        let mut m = Self::zero(rows, cols);
        for (i, row) in data.into_iter().enumerate() {
            for (j, v) in row {
                m.add_to(i, j, v);
            }
        }
        m
    }

    /// Builds from column lists; convenient for matrices of linear maps given
    /// on basis vectors.
    pub fn from_columns(rows: usize, cols: usize, data: Vec<Vec<(usize, BigInt)>>) -> Self {
        assert_eq!(data.len(), cols);
        let mut m = Self::zero(rows, cols);
        for (j, col) in data.into_iter().enumerate() {
            for (i, v) in col {
                m.add_to(i, j, v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        assert!(i < self.rows && j < self.cols, "entry ({i},{j}) outside {}x{}", self.rows, self.cols);
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: BigInt) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(i, j), v)| (i, j, v))
    }

    /// `(rows, cols, entries)`, the debugging serialization.
    pub fn to_triple(&self) -> (usize, usize, Vec<(usize, usize, BigInt)>) {
        (self.rows, self.cols, self.entries().map(|(i, j, v)| (i, j, v.clone())).collect())
    }

    pub fn row_lists(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(i, j), v) in &self.entries {
            out[i].push((j, v.clone()));
        }
        out
    }

    pub fn col_lists(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = vec![Vec::new(); self.cols];
        for (&(i, j), v) in &self.entries {
            out[j].push((i, v.clone()));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            m.entries.insert((j, i), v.clone());
        }
        m
    }

    pub fn mul(&self, other: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rhs = other.row_lists();
        let mut acc: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.rows];
        for (&(i, k), a) in &self.entries {
            for (j, b) in &rhs[k] {
                *acc[i].entry(*j).or_default() += a * b;
            }
        }
        let mut m = Self::zero(self.rows, other.cols);
        for (i, row) in acc.into_iter().enumerate() {
            for (j, v) in row {
                if !v.is_zero() {
                    m.entries.insert((i, j), v);
                }
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    /// Rows `lo..hi` as a new matrix.
    pub fn row_slice(&self, lo: usize, hi: usize) -> SparseIntMatrix {
        let mut m = Self::zero(hi - lo, self.cols);
        for (&(i, j), v) in self.entries.range((lo, 0)..(hi, 0)) {
            m.entries.insert((i - lo, j), v.clone());
        }
        m
    }

    /// Columns listed in `idx`, in that order.
    pub fn select_columns(&self, idx: &[usize]) -> SparseIntMatrix {
        let mut pos = vec![usize::MAX; self.cols];
        for (k, &j) in idx.iter().enumerate() {
            pos[j] = k;
        }
        let mut m = Self::zero(self.rows, idx.len());
        for (&(i, j), v) in &self.entries {
            if pos[j] != usize::MAX {
                m.entries.insert((i, pos[j]), v.clone());
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.rows];
        for (&(i, jj), v) in &self.entries {
            if jj == j {
                out[i] = v.clone();
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(i, j), v) in &self.entries {
            out[i][j] = v.clone();
        }
        out
    }
}
