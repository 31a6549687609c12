//! The indecomposable C2×C2-modules `M_n`.

use alloc::vec;

use super::group::{build_group, GroupName};
use super::rep::{Domain, IntMat, MatrixRep};
use crate::Result;

/// Basis `x_1..x_n, y_0..y_n`, acting by
///
/// ```text
/// g1·y_i = (−1)^i y_i        g1·x_i = (−1)^i x_i + y_{i−1}
/// g2·y_i = −(−1)^i y_i       g2·x_i = (−1)^i x_i + y_i
/// ```
///
/// The `x` rules carry the sign that makes `g1² = g2² = 1` hold over the
/// integers; modulo 2 every sign disappears.
pub fn m_n(n: usize, domain: Domain) -> Result<MatrixRep> {
    let g = build_group(GroupName::C2xC2)?;
    let rank = 2 * n + 1;
    let x = |i: usize| i - 1;
    let y = |i: usize| n + i;
    let sgn = |i: usize| if i % 2 == 0 { 1i64 } else { -1 };
    let mut g1 = IntMat::zero(rank, rank);
    let mut g2 = IntMat::zero(rank, rank);
    for i in 0..=n {
        g1.set(y(i), y(i), sgn(i));
        g2.set(y(i), y(i), -sgn(i));
    }
    for i in 1..=n {
        g1.set(x(i), x(i), sgn(i));
        g1.set(y(i - 1), x(i), 1);
        g2.set(x(i), x(i), sgn(i));
        g2.set(y(i), x(i), 1);
    }
    MatrixRep::new(g, domain, vec![g1, g2])
}

/// `M̄_n = M_n ⊗ F2`.
pub fn mbar(n: usize) -> Result<MatrixRep> {
    m_n(n, Domain::FiniteField(2))
}
