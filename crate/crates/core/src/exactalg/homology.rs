//! Homology of integer chain complexes with explicit class coordinates.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::abgroup::{p_part, FGAbGroup};
use super::fp::sparse_rank_mod;
use super::matrix::SparseIntMatrix;
use super::smith::{smith_with, Transforms};
use crate::{Error, Result};

/// `ker(d_out)/im(d_in)` at the middle spot of `· -d_in-> Z^m -d_out-> ·`.
pub fn homology_at(d_out: &SparseIntMatrix, d_in: &SparseIntMatrix) -> Result<FGAbGroup> {
    Ok(Homology::compute(d_out, d_in)?.group().clone())
}

/// The data needed to name classes.
///
/// With `U·d_in·V = D` the Smith form of the incoming map, a chain `z` has
/// coordinates `y = U·z`. The first `r` of them carry the torsion `Z/D_ii`;
/// the rest map to the free quotient, where cycles form the kernel of
/// `B = d_out·U⁻¹[:, r..]`.
///
/// Generator order is free summands first, then torsion in Smith order.
#[derive(Clone, Debug)]
pub struct Homology {
    m: usize,
    d_out: SparseIntMatrix,
    /// `U`, `m × m`.
    u: SparseIntMatrix,
    /// `U⁻¹`, `m × m`.
    l: SparseIntMatrix,
    diagonal: Vec<BigInt>,
    /// Kernel basis of `B` (columns) and the matching coordinate projection.
    free_basis: SparseIntMatrix,
    free_proj: SparseIntMatrix,
    group: FGAbGroup,
    /// Smith indices of the torsion generators.
    torsion_slots: Vec<usize>,
}

/// A large prime for rank certificates.
const RANK_PRIME: u32 = 2_147_483_647;

impl Homology {
    pub fn compute(d_out: &SparseIntMatrix, d_in: &SparseIntMatrix) -> Result<Self> {
        let m = d_in.rows();
        if d_out.cols() != m {
            return Err(Error::Dimension(format!(
                "d_out has {} columns but d_in has {} rows",
                d_out.cols(),
                m
            )));
        }
        if !d_out.mul(d_in)?.is_zero() {
            return Err(Error::NonzeroComposite);
        }
        let si = smith_with(d_in, Transforms::LEFT);
        let r = si.rank();
        let u = si.left_inv.expect("left transform requested");
        let l = si.left.expect("left transform requested");
        let tail: Vec<usize> = (r..m).collect();
        let b = d_out.mul(&l.select_columns(&tail))?;
        let k = tail.len();
        // full column rank modulo a prime certifies a trivial kernel
        let (free_basis, free_proj) = if sparse_rank_mod(&b, RANK_PRIME) == k {
            (SparseIntMatrix::zero(k, 0), SparseIntMatrix::zero(0, k))
        } else {
            let sb = smith_with(&b, Transforms::RIGHT);
            let rb = sb.rank();
            let right = sb.right.expect("right transform requested");
            let right_inv = sb.right_inv.expect("right transform requested");
            (right_inv.select_columns(&(rb..k).collect::<Vec<_>>()), right.row_slice(rb, k))
        };
        let torsion_slots: Vec<usize> = (0..r).filter(|&i| !si.diagonal[i].is_one()).collect();
        let torsion: Vec<BigInt> = torsion_slots.iter().map(|&i| si.diagonal[i].clone()).collect();
        let group = FGAbGroup::new(free_basis.cols(), torsion)?;
        Ok(Homology {
            m,
            d_out: d_out.clone(),
            u,
            l,
            diagonal: si.diagonal,
            free_basis,
            free_proj,
            group,
            torsion_slots,
        })
    }

    pub fn group(&self) -> &FGAbGroup {
        &self.group
    }

    pub fn chain_dim(&self) -> usize {
        self.m
    }

    fn rank_in(&self) -> usize {
        self.diagonal.len()
    }

    /// Coordinates in the generator order; torsion entries reduced into
    /// `0..t`.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.m {
            return Err(Error::Dimension(format!("chain of length {} in dimension {}", z.len(), self.m)));
        }
        if self.d_out.mul_vec(z).iter().any(|x| !x.is_zero()) {
            return Err(Error::Invariant("element is not a cycle".into()));
        }
        let y = self.u.mul_vec(z);
        let r = self.rank_in();
        let mut out = self.free_proj.mul_vec(&y[r..]);
        for &i in &self.torsion_slots {
            out.push(y[i].mod_floor(&self.diagonal[i]));
        }
        Ok(out)
    }

    pub fn is_boundary(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(z)?.iter().all(|c| c.is_zero()))
    }

    /// A cycle representing generator `g`.
    pub fn generator(&self, g: usize) -> Vec<BigInt> {
        let r = self.rank_in();
        let f = self.free_basis.cols();
        let mut y = vec![BigInt::zero(); self.m];
        if g < f {
            for (i, v) in self.free_basis.column(g).into_iter().enumerate() {
                y[r + i] = v;
            }
        } else {
            y[self.torsion_slots[g - f]] = BigInt::one();
        }
        self.l.mul_vec(&y)
    }

    /// Moduli per generator: `0` for free summands, else the torsion order.
    pub fn moduli(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.free_basis.cols()];
        v.extend(self.torsion_slots.iter().map(|&i| self.diagonal[i].clone()));
        v
    }

    /// The localization at `p`, as a view: which generators survive and with
    /// which modulus (`0` = free).
    pub fn local(&self, p: u64) -> LocalView {
        let mut keep = Vec::new();
        let mut torsion = Vec::new();
        for (g, t) in self.moduli().into_iter().enumerate() {
            if t.is_zero() {
                keep.push((g, t));
            } else {
                let q = p_part(&t, p);
                if !q.is_one() {
                    torsion.push(q.clone());
                    keep.push((g, q));
                }
            }
        }
        let free = keep.iter().filter(|(_, t)| t.is_zero()).count();
        let group = FGAbGroup::new(free, torsion).expect("p-parts of a chain form a chain");
        LocalView { keep, group }
    }

    pub fn local_coordinates(&self, view: &LocalView, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let c = self.coordinates(z)?;
        Ok(view
            .keep
            .iter()
            .map(|(g, t)| if t.is_zero() { c[*g].clone() } else { c[*g].mod_floor(t) })
            .collect())
    }
}

/// Generators of `H ⊗ Z_(p)` as a subset of the integral generators.
#[derive(Clone, Debug)]
pub struct LocalView {
    /// (integral generator index, modulus with 0 for free)
    pub keep: Vec<(usize, BigInt)>,
    pub group: FGAbGroup,
}

impl LocalView {
    pub fn moduli(&self) -> Vec<BigInt> {
        self.keep.iter().map(|(_, t)| t.clone()).collect()
    }
}

/// Whether the homomorphism `⊕ Z/a_i → ⊕ Z/b_j` given by `m` (rows indexed by
/// target generators) is injective. Modulus `0` means a free summand.
pub fn hom_is_injective(src: &[BigInt], tgt: &[BigInt], m: &SparseIntMatrix) -> Result<bool> {
    if m.rows() != tgt.len() || m.cols() != src.len() {
        return Err(Error::Dimension("hom matrix does not match the groups".into()));
    }
    let k = src.len();
    if k == 0 {
        return Ok(true);
    }
    // kernel of [m | diag(b)] projected to the first k coordinates
    let mut big = SparseIntMatrix::zero(tgt.len(), k + tgt.len());
    for (i, j, v) in m.entries() {
        big.set(i, j, v.clone());
    }
    for (j, b) in tgt.iter().enumerate() {
        if !b.is_zero() {
            big.set(j, k + j, b.clone());
        }
    }
    let sf = smith_with(&big, Transforms::RIGHT);
    let rank = sf.rank();
    let v = sf.right_inv.expect("right transform requested");
    for col in rank..big.cols() {
        let x = v.column(col);
        for i in 0..k {
            let ok = if src[i].is_zero() { x[i].is_zero() } else { x[i].is_multiple_of(&src[i]) };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
