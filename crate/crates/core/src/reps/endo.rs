//! Hom spaces, endomorphism algebras and their radicals over prime fields.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::rep::MatrixRep;
use crate::exactalg::fp::FpMatrix;
use crate::{Error, Result};

fn field_of(a: &MatrixRep) -> Result<u32> {
    a.modulus().ok_or_else(|| Error::InvalidArgument(format!("needs a finite field, got {}", a.domain())))
}

/// Basis of `Hom_G(A, B)`, as `rank B × rank A` matrices.
pub fn hom_space(a: &MatrixRep, b: &MatrixRep) -> Result<Vec<FpMatrix>> {
    let q = field_of(a)?;
    if a.group().name() != b.group().name() || a.domain() != b.domain() {
        return Err(Error::InvalidArgument("Hom between different settings".into()));
    }
    let (ra, rb) = (a.rank(), b.rank());
    let n = ra * rb;
    let ga: Vec<FpMatrix> = a.generator_matrices().iter().map(|m| m.to_fp(q)).collect();
    let gb: Vec<FpMatrix> = b.generator_matrices().iter().map(|m| m.to_fp(q)).collect();
    // current solution space, one unknown vector (row-major X) per column
    let mut basis: Option<Vec<Vec<u32>>> = None;
    for (x, y) in ga.iter().zip(&gb) {
        let cols: Vec<Vec<u32>> = match &basis {
            None => (0..n).map(|k| unit_vec(n, k)).collect(),
            Some(b) => b.clone(),
        };
        if cols.is_empty() {
            break;
        }
        // X·x − y·X for each candidate X
        let images: Vec<Vec<u32>> = cols
            .iter()
            .map(|v| {
                let m = FpMatrix::from_rows(q, &v.chunks(ra.max(1)).take(rb).map(|r| r.to_vec()).collect::<Vec<_>>());
                let m = if ra == 0 { FpMatrix::zero(q, rb, 0) } else { m };
                m.mul(x).sub(&y.mul(&m)).data().to_vec()
            })
            .collect();
        let eq = FpMatrix::from_columns(q, n, &images);
        let null = eq.nullspace();
        let new: Vec<Vec<u32>> = null
            .iter()
            .map(|c| {
                let mut v = vec![0u32; n];
                for (coef, col) in c.iter().zip(&cols) {
                    if *coef != 0 {
                        for (vi, ci) in v.iter_mut().zip(col) {
                            *vi = ((*vi as u64 + *coef as u64 * *ci as u64) % q as u64) as u32;
                        }
                    }
                }
                v
            })
            .collect();
        basis = Some(new);
    }
    let basis = basis.unwrap_or_else(|| (0..n).map(|k| unit_vec(n, k)).collect());
    Ok(basis.iter().map(|v| FpMatrix::from_i64(q, rb, ra, &v.iter().map(|&x| x as i64).collect::<Vec<_>>())).collect())
}

fn unit_vec(n: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub basis: Vec<FpMatrix>,
    pub radical: Vec<FpMatrix>,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    /// `dim End/rad = 1`: indecomposable over every extension field.
    pub fn absolutely_local(&self) -> bool {
        self.quotient_dim() == 1
    }
}

pub fn end_algebra(rep: &MatrixRep) -> Result<EndAlgebra> {
    let basis = hom_space(rep, rep)?;
    let radical = radical(&basis, rep.rank())?;
    Ok(EndAlgebra { basis, radical })
}

/// Jacobson radical of the matrix algebra spanned by `basis` inside
/// `M_n(F_p)`, by iterated trace forms: `I_{-1}` is the algebra,
/// `I_i = {a ∈ I_{i−1} : g_i(ab) = 0 for all b}` with
/// `g_i(x) = Tr(x̂^{p^i})/p^i mod p` for an integral lift `x̂`, and the
/// radical is `I_l` with `p^l ≤ n < p^{l+1}`.
pub fn radical(basis: &[FpMatrix], n: usize) -> Result<Vec<FpMatrix>> {
    let Some(first) = basis.first() else { return Ok(Vec::new()) };
    let p = first.p();
    let mut ideal: Vec<FpMatrix> = basis.to_vec();
    let mut i = 0u32;
    loop {
        if ideal.is_empty() {
            break;
        }
        // coefficients live mod p^{i+1}
        let modulus = (p as u64).checked_pow(i + 1).ok_or_else(|| Error::OutOfRange("radical modulus".into()))?;
        let scale = (p as u64).pow(i);
        let mut form = FpMatrix::zero(p, basis.len(), ideal.len());
        for (k, a) in ideal.iter().enumerate() {
            for (l, b) in basis.iter().enumerate() {
                let t = lifted_power_trace(&a.mul(b), p, i, modulus);
                if t % scale != 0 {
                    return Err(Error::Invariant("trace form not divisible; input is not an algebra".into()));
                }
                form.set(l, k, ((t / scale) % p as u64) as u32);
            }
        }
        let null = form.nullspace();
        ideal = null
            .iter()
            .map(|c| {
                let mut m = FpMatrix::zero(p, n, n);
                for (coef, a) in c.iter().zip(&ideal) {
                    if *coef != 0 {
                        m = m.add(&a.scale(*coef));
                    }
                }
                m
            })
            .collect();
        if (p as u64).pow(i + 1) > n as u64 {
            break;
        }
        i += 1;
    }
    Ok(ideal)
}

/// `Tr(x̂^{p^i}) mod p^{i+1}` with `x̂` the lift of `x` to `0..p`.
fn lifted_power_trace(x: &FpMatrix, p: u32, i: u32, modulus: u64) -> u64 {
    let n = x.rows();
    let mut m: Vec<u64> = x.data().iter().map(|&v| v as u64).collect();
    for _ in 0..i {
        // raise to the p-th power
        let base = m.clone();
        for _ in 1..p {
            m = mat_mul_mod(&m, &base, n, modulus);
        }
    }
    (0..n).map(|k| m[k * n + k]).sum::<u64>() % modulus
}

fn mat_mul_mod(a: &[u64], b: &[u64], n: usize, q: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[k * n + j]) % q;
            }
        }
    }
    out
}
