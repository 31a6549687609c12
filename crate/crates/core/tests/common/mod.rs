#![allow(dead_code)]
//! Independent dense oracles used only by tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Dense = Vec<Vec<BigInt>>;

pub fn dense(rows: usize, cols: usize, data: &[i64]) -> Dense {
    (0..rows).map(|i| (0..cols).map(|j| BigInt::from(data[i * cols + j])).collect()).collect()
}

/// Textbook Smith normal form: move the smallest entry to the corner, clear
/// its row and column, repeat on remainders, then enforce divisibility by
/// adding rows. Returns the nonzero diagonal.
pub fn dense_smith(mut a: Dense, rows: usize, cols: usize) -> Vec<BigInt> {
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero in the lower-right block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        let mut done = false;
        while !done {
            done = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let v = &a[t][j] * &q;
                        a[i][j] -= v;
                    }
                    if !a[i][t].is_zero() {
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for i in t..rows {
                        let v = &a[i][t] * &q;
                        a[i][j] -= v;
                    }
                    if !a[t][j].is_zero() {
                        done = false;
                    }
                }
            }
            if !done {
                // bring the new smallest entry of row/column t to the corner
                let mut bi = t;
                let mut bj = t;
                for i in t..rows {
                    if !a[i][t].is_zero() && (a[bi][bj].is_zero() || a[i][t].abs() < a[bi][bj].abs()) {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && (a[bi][bj].is_zero() || a[t][j].abs() < a[bi][bj].abs()) {
                        bi = t;
                        bj = j;
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            // divisibility of the remaining block
            let p = a[t][t].clone();
            'outer: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a[i][j].is_multiple_of(&p) {
                        for jj in t..cols {
                            let v = a[i][jj].clone();
                            a[t][jj] += v;
                        }
                        done = false;
                        break 'outer;
                    }
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

pub fn dense_rank(a: &Dense, rows: usize, cols: usize) -> usize {
    dense_smith(a.clone(), rows, cols).len()
}

/// (free rank, torsion chain) of ker(d_out)/im(d_in) by the textbook route:
/// rank–nullity for the free part, invariant factors of d_in for torsion.
pub fn dense_homology(d_out: &Dense, out_rows: usize, d_in: &Dense, m: usize, in_cols: usize) -> (usize, Vec<BigInt>) {
    let r_out = if out_rows == 0 { 0 } else { dense_rank(d_out, out_rows, m) };
    let diag = if in_cols == 0 { vec![] } else { dense_smith(d_in.clone(), m, in_cols) };
    let free = m - r_out - diag.len();
    (free, diag.into_iter().filter(|d| !d.is_one()).collect())
}

pub fn dense_mul(a: &Dense, b: &Dense, n: usize, k: usize, m: usize) -> Dense {
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}
