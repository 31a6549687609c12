//! Smith normal form by sparse elimination.
//!
//! Pivots are chosen with minimal absolute value (ties broken by shortest
//! row), the pivot row and column are cleared with rounded division, and any
//! remainder becomes the next pivot. Transforms are tracked only on request
//! because they dominate memory for tall matrices.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::SparseIntMatrix;

type Row = Vec<(usize, BigInt)>;

/// `M = L·D·R` and `U·M·V = D` with `U = L⁻¹`, `V = R⁻¹`, all unimodular.
/// `D` is the rows×cols matrix with `diagonal` on its leading diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Positive entries, each dividing the next.
    pub diagonal: Vec<BigInt>,
    pub left: Option<SparseIntMatrix>,
    pub left_inv: Option<SparseIntMatrix>,
    pub right: Option<SparseIntMatrix>,
    pub right_inv: Option<SparseIntMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    pub fn d_matrix(&self) -> SparseIntMatrix {
        let mut d = SparseIntMatrix::zero(self.rows, self.cols);
        for (k, v) in self.diagonal.iter().enumerate() {
            d.set(k, k, v.clone());
        }
        d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Transforms {
    pub left: bool,
    pub right: bool,
}

impl Transforms {
    pub const NONE: Transforms = Transforms { left: false, right: false };
    pub const ALL: Transforms = Transforms { left: true, right: true };
    pub const LEFT: Transforms = Transforms { left: true, right: false };
    pub const RIGHT: Transforms = Transforms { left: false, right: true };
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    smith_with(m, Transforms::ALL)
}

/// Invariant factors only.
pub fn smith_diagonal(m: &SparseIntMatrix) -> Vec<BigInt> {
    smith_with(m, Transforms::NONE).diagonal
}

pub fn smith_with(m: &SparseIntMatrix, want: Transforms) -> SmithForm {
    let mut e = Engine::new(m, want);
    e.eliminate();
    e.fix_divisibility();
    e.finish()
}

/// `dst + c·src` for sorted sparse rows; reports columns entering and leaving
/// the support.
fn axpy(dst: &Row, src: &Row, c: &BigInt, added: &mut Vec<usize>, removed: &mut Vec<usize>) -> Row {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut a, mut b) = (0, 0);
    while a < dst.len() || b < src.len() {
        let ca = dst.get(a).map_or(usize::MAX, |x| x.0);
        let cb = src.get(b).map_or(usize::MAX, |x| x.0);
        if ca < cb {
            out.push(dst[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, c * &src[b].1));
            added.push(cb);
            b += 1;
        } else {
            let v = &dst[a].1 + c * &src[b].1;
            if v.is_zero() {
                removed.push(ca);
            } else {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

fn axpy_plain(dst: &Row, src: &Row, c: &BigInt) -> Row {
    let (mut x, mut y) = (Vec::new(), Vec::new());
    axpy(dst, src, c, &mut x, &mut y)
}

fn entry(row: &Row, j: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&j, |x| x.0).ok().map(|k| &row[k].1)
}

fn identity_rows(n: usize) -> Vec<Row> {
    (0..n).map(|i| vec![(i, BigInt::one())]).collect()
}

/// Quotient rounded to nearest, so the remainder is at most half the divisor.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // floor division leaves r with the sign of b and |r| < |b|
    let (q, r) = a.div_mod_floor(b);
    let twice: BigInt = &r * 2;
    if twice.abs() > b.abs() {
        q + 1
    } else {
        q
    }
}

struct Engine {
    rows: usize,
    cols: usize,
    a: Vec<Row>,
    colrows: Vec<BTreeSet<usize>>,
    active_row: Vec<bool>,
    active_col: Vec<bool>,
    pivots: Vec<(usize, usize)>,
    want: Transforms,
    u: Vec<Row>,
    lt: Vec<Row>,
    vt: Vec<Row>,
    r: Vec<Row>,
}

impl Engine {
    fn new(m: &SparseIntMatrix, want: Transforms) -> Self {
        let a = m.row_lists();
        let mut colrows = vec![BTreeSet::new(); m.cols()];
        for (i, row) in a.iter().enumerate() {
            for (j, _) in row {
                colrows[*j].insert(i);
            }
        }
        let (u, lt) = if want.left {
            (identity_rows(m.rows()), identity_rows(m.rows()))
        } else {
            (Vec::new(), Vec::new())
        };
        let (vt, r) = if want.right {
            (identity_rows(m.cols()), identity_rows(m.cols()))
        } else {
            (Vec::new(), Vec::new())
        };
        Engine {
            rows: m.rows(),
            cols: m.cols(),
            a,
            colrows,
            active_row: vec![true; m.rows()],
            active_col: vec![true; m.cols()],
            pivots: Vec::new(),
            want,
            u,
            lt,
            vt,
            r,
        }
    }

    fn val(&self, i: usize, j: usize) -> BigInt {
        entry(&self.a[i], j).cloned().unwrap_or_default()
    }

    /// row_k += c·row_i
    fn row_op(&mut self, k: usize, i: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let (mut added, mut removed) = (Vec::new(), Vec::new());
        let new = axpy(&self.a[k], &self.a[i], c, &mut added, &mut removed);
        self.a[k] = new;
        for j in added {
            self.colrows[j].insert(k);
        }
        for j in removed {
            self.colrows[j].remove(&k);
        }
        if self.want.left {
            self.u[k] = axpy_plain(&self.u[k], &self.u[i], c);
            let neg = -c;
            self.lt[i] = axpy_plain(&self.lt[i], &self.lt[k], &neg);
        }
    }

    fn negate_row(&mut self, k: usize) {
        for (_, v) in self.a[k].iter_mut() {
            *v = -&*v;
        }
        if self.want.left {
            for (_, v) in self.u[k].iter_mut() {
                *v = -&*v;
            }
            for (_, v) in self.lt[k].iter_mut() {
                *v = -&*v;
            }
        }
    }

    /// col_l += c·col_j, assuming column j is supported only on row i.
    fn col_op_single(&mut self, i: usize, l: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.colrows[j].iter().all(|&k| k == i));
        let pj = self.val(i, j);
        let cur = self.val(i, l);
        let v = cur + c * pj;
        self.set_entry(i, l, v);
        if self.want.right {
            self.vt[l] = axpy_plain(&self.vt[l], &self.vt[j], c);
            let neg = -c;
            self.r[j] = axpy_plain(&self.r[j], &self.r[l], &neg);
        }
    }

    fn set_entry(&mut self, i: usize, j: usize, v: BigInt) {
        let row = &mut self.a[i];
        match row.binary_search_by_key(&j, |x| x.0) {
            Ok(k) => {
                if v.is_zero() {
                    row.remove(k);
                    self.colrows[j].remove(&i);
                } else {
                    row[k].1 = v;
                }
            }
            Err(k) => {
                if !v.is_zero() {
                    row.insert(k, (j, v));
                    self.colrows[j].insert(i);
                }
            }
        }
    }

    fn best_in_column(&self, j: usize) -> Option<usize> {
        self.colrows[j]
            .iter()
            .copied()
            .filter(|&k| self.active_row[k])
            .min_by(|&x, &y| {
                let vx = self.val(x, j).abs();
                let vy = self.val(y, j).abs();
                vx.cmp(&vy).then(self.a[x].len().cmp(&self.a[y].len())).then(x.cmp(&y))
            })
    }

    /// Clears row i and column j around the pivot, moving the pivot to any
    /// smaller remainder, until both are clean. Returns the final position.
    fn settle(&mut self, mut i: usize, mut j: usize) -> (usize, usize) {
        loop {
            let p = self.val(i, j);
            debug_assert!(!p.is_zero());
            let others: Vec<usize> = self.colrows[j].iter().copied().filter(|&k| k != i).collect();
            let mut dirty = false;
            for k in others {
                let q = round_div(&self.val(k, j), &p);
                self.row_op(k, i, &-q);
                if entry(&self.a[k], j).is_some() {
                    dirty = true;
                }
            }
            if dirty {
                i = self.best_in_column(j).expect("column still has entries");
                continue;
            }
            let row_cols: Vec<usize> = self.a[i].iter().map(|x| x.0).filter(|&l| l != j).collect();
            for &l in &row_cols {
                let q = round_div(&self.val(i, l), &p);
                self.col_op_single(i, l, j, &-q);
            }
            let rest: Vec<(usize, BigInt)> =
                self.a[i].iter().filter(|x| x.0 != j).map(|x| (x.0, x.1.abs())).collect();
            if let Some((l, _)) = rest.into_iter().min_by(|x, y| x.1.cmp(&y.1).then(x.0.cmp(&y.0))) {
                j = l;
                continue;
            }
            return (i, j);
        }
    }

    fn eliminate(&mut self) {
        let mut order: Vec<usize> = (0..self.cols).collect();
        order.sort_by_key(|&j| (self.colrows[j].len(), j));
        for j in order {
            while self.active_col[j] {
                let Some(i) = self.best_in_column(j) else { break };
                let (pi, pj) = self.settle(i, j);
                self.active_row[pi] = false;
                self.active_col[pj] = false;
                self.pivots.push((pi, pj));
            }
        }
    }

    fn fix_divisibility(&mut self) {
        for k in 0..self.pivots.len() {
            let (i, j) = self.pivots[k];
            if self.val(i, j).is_negative() {
                self.negate_row(i);
            }
        }
        let r = self.pivots.len();
        for x in 0..r {
            for y in x + 1..r {
                loop {
                    let (ix, jx) = self.pivots[x];
                    let (iy, jy) = self.pivots[y];
                    let dx = self.val(ix, jx);
                    let dy = self.val(iy, jy);
                    if dy.is_multiple_of(&dx) {
                        break;
                    }
                    self.row_op(ix, iy, &BigInt::one());
                    for &(a, b) in &[(ix, jx), (iy, jy)] {
                        self.active_row[a] = true;
                        self.active_col[b] = true;
                    }
                    // start from the smaller of the two entries in row ix
                    let start = if dx.abs() <= dy.abs() { jx } else { jy };
                    let (pi, pj) = self.settle(ix, start);
                    let oi = if pi == ix { iy } else { ix };
                    let oj = if pj == jx { jy } else { jx };
                    for &(a, b) in &[(ix, jx), (iy, jy)] {
                        self.active_row[a] = false;
                        self.active_col[b] = false;
                    }
                    if self.val(pi, pj).is_negative() {
                        self.negate_row(pi);
                    }
                    if self.val(oi, oj).is_negative() {
                        self.negate_row(oi);
                    }
                    self.pivots[x] = (pi, pj);
                    self.pivots[y] = (oi, oj);
                }
            }
        }
    }

    fn finish(self) -> SmithForm {
        let r = self.pivots.len();
        let mut row_order: Vec<usize> = self.pivots.iter().map(|p| p.0).collect();
        let mut col_order: Vec<usize> = self.pivots.iter().map(|p| p.1).collect();
        let mut used = vec![false; self.rows];
        for &i in &row_order {
            used[i] = true;
        }
        row_order.extend((0..self.rows).filter(|&i| !used[i]));
        let mut used = vec![false; self.cols];
        for &j in &col_order {
            used[j] = true;
        }
        col_order.extend((0..self.cols).filter(|&j| !used[j]));
        let diagonal: Vec<BigInt> = self.pivots.iter().map(|&(i, j)| self.val(i, j)).collect();
        debug_assert_eq!(diagonal.len(), r);

        let pick = |store: &Vec<Row>, order: &[usize], n: usize| -> SparseIntMatrix {
            let rows: Vec<Row> = order.iter().map(|&k| store[k].clone()).collect();
            SparseIntMatrix::from_rows(n, n, rows)
        };
        let (left, left_inv) = if self.want.left {
            (
                Some(pick(&self.lt, &row_order, self.rows).transpose()),
                Some(pick(&self.u, &row_order, self.rows)),
            )
        } else {
            (None, None)
        };
        let (right, right_inv) = if self.want.right {
            (
                Some(pick(&self.r, &col_order, self.cols)),
                Some(pick(&self.vt, &col_order, self.cols).transpose()),
            )
        } else {
            (None, None)
        };
        SmithForm { rows: self.rows, cols: self.cols, diagonal, left, left_inv, right, right_inv }
    }
}
