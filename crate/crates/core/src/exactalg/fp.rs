//! Dense linear algebra over a prime field.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A dense matrix over `F_p`, entries kept in `0..p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    // Fermat
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    a = r as u32;
    a
}

impl FpMatrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    /// Reduces arbitrary integers into the field.
    pub fn from_i64(p: u32, rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        let data = data.iter().map(|&x| x.rem_euclid(p as i64) as u32).collect();
        FpMatrix { p, rows, cols, data }
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, &v) in row.iter().enumerate() {
                m.data[i * c + j] = v % p;
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.p, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        assert_eq!(self.p, o.p);
        let p = self.p as u64;
        let mut out = Self::zero(self.p, self.rows, o.cols);
        let mut acc = vec![0u64; o.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let orow = o.row(k);
                for (x, &b) in acc.iter_mut().zip(orow) {
                    *x += a * b as u64;
                }
                // keep headroom: flush every so often
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|x| *x %= p);
                }
            }
            for j in 0..o.cols {
                out.data[i * o.cols + j] = (acc[j] % p) as u32;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| (self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32)
            .collect()
    }

    pub fn add(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| (a + b) % p).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let p = self.p;
        let data = self.data.iter().zip(&o.data).map(|(&a, &b)| (a + p - b) % p).collect();
        FpMatrix { p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p as u64;
        let data = self.data.iter().map(|&a| (a as u64 * c as u64 % p) as u32).collect();
        FpMatrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert_eq!(self.rows, self.cols);
        let mut r = Self::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        r
    }

    pub fn trace(&self) -> u32 {
        let p = self.p as u64;
        ((0..self.rows.min(self.cols)).map(|i| self.get(i, i) as u64).sum::<u64>() % p) as u32
    }

    pub fn kron(&self, o: &FpMatrix) -> FpMatrix {
        let p = self.p as u64;
        let (r, c) = (self.rows * o.rows, self.cols * o.cols);
        let mut out = Self::zero(self.p, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j) as u64;
                if a == 0 {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.data[(i * o.rows + k) * c + j * o.cols + l] = (a * o.get(k, l) as u64 % p) as u32;
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(&self, o: &FpMatrix) -> FpMatrix {
        let mut out = Self::zero(self.p, self.rows + o.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..o.rows {
            for j in 0..o.cols {
                out.set(self.rows + i, self.cols + j, o.get(i, j));
            }
        }
        out
    }

    /// Columns `idx` of `self`.
    pub fn select_columns(&self, idx: &[usize]) -> FpMatrix {
        let mut out = Self::zero(self.p, self.rows, idx.len());
        for i in 0..self.rows {
            for (k, &j) in idx.iter().enumerate() {
                out.data[i * idx.len() + k] = self.get(i, j);
            }
        }
        out
    }

    pub fn from_columns(p: u32, rows: usize, cols: &[Vec<u32>]) -> FpMatrix {
        let mut out = Self::zero(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, &v) in c.iter().enumerate() {
                out.set(i, j, v);
            }
        }
        out
    }

    /// Rows `start..end`.
    pub fn row_slice(&self, start: usize, end: usize) -> FpMatrix {
        FpMatrix { p: self.p, rows: end - start, cols: self.cols, data: self.data[start * self.cols..end * self.cols].to_vec() }
    }

    pub fn hcat(&self, o: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, o.rows);
        let mut out = Self::zero(self.p, self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..o.cols {
                out.set(i, self.cols + j, o.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for j in c..self.cols {
                let k = r * self.cols + j;
                self.data[k] = (self.data[k] as u64 * inv % p) as u32;
            }
            let prow: Vec<u32> = self.row(r)[c..].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                let base = i * self.cols + c;
                for (off, &pv) in prow.iter().enumerate() {
                    if pv != 0 {
                        let x = &mut self.data[base + off];
                        *x = ((*x as u64 + (p - f) * pv as u64) % p) as u32;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self·x = 0}`, as vectors.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let p = self.p;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &c) in pivots.iter().enumerate() {
                let a = m.get(r, free);
                v[c] = (p - a) % p;
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, as column indices of `self` (first
    /// independent columns).
    pub fn column_basis(&self) -> Vec<usize> {
        self.clone().rref()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = self.hcat(&Self::identity(self.p, n));
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let idx: Vec<usize> = (n..2 * n).collect();
        Some(aug.select_columns(&idx))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F{} {}x{}", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Rank of an integer matrix reduced modulo the prime `q`, by sparse
/// echelon reduction. Never exceeds the rank over `Q`.
pub fn sparse_rank_mod(m: &crate::exactalg::SparseIntMatrix, q: u32) -> usize {
    use alloc::collections::BTreeMap;
    use num_bigint::BigInt;
    use num_integer::Integer;
    let qb = BigInt::from(q);
    let lists = if m.rows() <= m.cols() { m.row_lists() } else { m.col_lists() };
    let q64 = q as u64;
    // pivot rows keyed by leading index, normalized to a leading 1
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for list in lists {
        let mut work: BTreeMap<usize, u64> = BTreeMap::new();
        for (j, v) in list {
            let r = u64::try_from(v.mod_floor(&qb)).expect("reduced");
            if r != 0 {
                work.insert(j, r);
            }
        }
        while let Some((&lead, &c)) = work.iter().next() {
            match pivots.get(&lead) {
                Some(row) => {
                    for &(j, v) in row {
                        let e = work.entry(j).or_insert(0);
                        *e = (*e + q64 - c * v % q64) % q64;
                        if *e == 0 {
                            work.remove(&j);
                        }
                    }
                }
                None => {
                    let inv = inv_mod((c % q64) as u32, q) as u64;
                    let row: Vec<(usize, u64)> = work.iter().map(|(&j, &v)| (j, v * inv % q64)).collect();
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}
