//! The S3-lattices over Z_(3) built from the permutation module.

use alloc::vec;
use alloc::vec::Vec;

use super::group::{build_group, FiniteGroup, GroupName};
use super::rep::{Domain, IntMat, MatrixRep, RepMap};
use crate::exactalg::fp::FpMatrix;
use crate::exactalg::{smith_normal_form, SparseIntMatrix};
use crate::Result;

const P3: Domain = Domain::LocalizedAt(3);

/// `P` (basis t1, t2, t3), `Z_(3)[ζ]` (basis 1, ζ) and the ideal `(1−ζ)`
/// (basis b1 = 1−ζ, b2 = ζ−ζ²), together with the maps between them.
#[derive(Clone, Debug)]
pub struct S3Lattices {
    pub unit: MatrixRep,
    pub p: MatrixRep,
    pub zzeta: MatrixRep,
    pub ideal: MatrixRep,
    /// `Z → P`, `1 ↦ t1+t2+t3`.
    pub diagonal: RepMap,
    /// `P → Z[ζ]`, `t_k ↦ ζ^{k−1}`.
    pub to_zeta: RepMap,
    /// `(1−ζ) → P`, `1−ζ ↦ t1−t2`, `ζ−ζ² ↦ t2−t3`.
    pub ideal_to_p: RepMap,
    /// `P → Z`, `t_k ↦ 1`.
    pub sum: RepMap,
    /// `(1−ζ) ⊂ Z[ζ]`.
    pub ideal_inclusion: RepMap,
}

/// Coordinates of `ζ^k` in the basis (1, ζ).
fn zeta_power(k: u8) -> [i64; 2] {
    match k % 3 {
        0 => [1, 0],
        1 => [0, 1],
        _ => [-1, -1],
    }
}

fn perm(g: &FiniteGroup, x: usize) -> [usize; 3] {
    let k = g.key(x);
    [k[0] as usize, k[1] as usize, k[2] as usize]
}

pub fn s3_lattices() -> Result<S3Lattices> {
    let g = build_group(GroupName::S3)?;
    let gens = g.generators().to_vec();
    let p_mats: Vec<IntMat> = gens
        .iter()
        .map(|&x| {
            let s = perm(&g, x);
            let mut m = IntMat::zero(3, 3);
            for k in 0..3 {
                m.set(s[k], k, 1);
            }
            m
        })
        .collect();
    let zeta_mats: Vec<IntMat> = gens
        .iter()
        .map(|&x| {
            let s = perm(&g, x);
            let mut m = IntMat::zero(2, 2);
            for k in 0..2 {
                let c = zeta_power(s[k] as u8);
                m.set(0, k, c[0]);
                m.set(1, k, c[1]);
            }
            m
        })
        .collect();
    // action on the sum-zero part of P in the basis t1−t2, t2−t3
    let ideal_mats: Vec<IntMat> = gens
        .iter()
        .map(|&x| {
            let s = perm(&g, x);
            let mut m = IntMat::zero(2, 2);
            for (col, (a, b)) in [(0usize, 1usize), (1, 2)].into_iter().enumerate() {
                let mut v = [0i64; 3];
                v[s[a]] += 1;
                v[s[b]] -= 1;
                m.set(0, col, v[0]);
                m.set(1, col, v[0] + v[1]);
            }
            m
        })
        .collect();
    let unit = MatrixRep::trivial(g.clone(), P3)?;
    let p = MatrixRep::new(g.clone(), P3, p_mats)?;
    let zzeta = MatrixRep::new(g.clone(), P3, zeta_mats)?;
    let ideal = MatrixRep::new(g, P3, ideal_mats)?;
    let diagonal = RepMap::new(unit.clone(), p.clone(), IntMat::from_rows(&[vec![1], vec![1], vec![1]]))?;
    let to_zeta = RepMap::new(p.clone(), zzeta.clone(), IntMat::from_rows(&[vec![1, 0, -1], vec![0, 1, -1]]))?;
    let ideal_to_p =
        RepMap::new(ideal.clone(), p.clone(), IntMat::from_rows(&[vec![1, 0], vec![-1, 1], vec![0, -1]]))?;
    let sum = RepMap::new(p.clone(), unit.clone(), IntMat::from_rows(&[vec![1, 1, 1]]))?;
    let ideal_inclusion = RepMap::new(ideal.clone(), zzeta.clone(), IntMat::from_rows(&[vec![1, 1], vec![-1, 2]]))?;
    Ok(S3Lattices { unit, p, zzeta, ideal, diagonal, to_zeta, ideal_to_p, sum, ideal_inclusion })
}

/// The checks making `0 → A -f→ B -g→ C → 0` a short exact sequence of
/// lattices over `Z_(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Exactness {
    pub composite_zero: bool,
    /// Rational rank of `f`, equal to rank A when injective.
    pub image_rank: usize,
    /// Rational rank of `ker g`.
    pub kernel_rank: usize,
    /// `coker f` has no p-torsion (f stays injective mod p).
    pub cokernel_torsion_free: bool,
    /// `g` is onto (onto mod p, by Nakayama).
    pub surjective: bool,
}

impl Exactness {
    pub fn holds(&self, rank_a: usize) -> bool {
        self.composite_zero
            && self.image_rank == rank_a
            && self.kernel_rank == self.image_rank
            && self.cokernel_torsion_free
            && self.surjective
    }
}

fn rational_rank(m: &IntMat) -> usize {
    let mut s = SparseIntMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            s.set(i, j, m.get(i, j).into());
        }
    }
    smith_normal_form(&s).rank()
}

pub fn check_exact(f: &RepMap, g: &RepMap, p: u32) -> Result<Exactness> {
    let gf = g.matrix().mul_mod(f.matrix(), None)?;
    let image_rank = rational_rank(f.matrix());
    let kernel_rank = g.source().rank() - rational_rank(g.matrix());
    let f_mod: FpMatrix = f.matrix().to_fp(p);
    let g_mod: FpMatrix = g.matrix().to_fp(p);
    Ok(Exactness {
        composite_zero: gf.is_zero(),
        image_rank,
        kernel_rank,
        cokernel_torsion_free: f_mod.rank() == f.source().rank(),
        surjective: g_mod.rank() == g.target().rank(),
    })
}

/// `Z_(3)⟨λ1, λ2⟩ → (1−ζ)`, `λ1 ↦ ζ−1`, `λ2 ↦ ζ²−1`. The S3-action on the
/// source is transported along this map, so equivariance holds by
/// construction; what is checked is that the map is a lattice isomorphism.
pub fn lambda2_identification() -> Result<RepMap> {
    let l = s3_lattices()?;
    // ζ−1 = −b1 and ζ²−1 = −b1 − b2
    let t = IntMat::from_rows(&[vec![-1, -1], vec![0, -1]]);
    let t_inv = IntMat::from_rows(&[vec![-1, 1], vec![0, -1]]);
    let gens = l
        .ideal
        .generator_matrices()
        .iter()
        .map(|m| t_inv.mul_mod(&m.mul_mod(&t, None)?, None))
        .collect::<Result<Vec<_>>>()?;
    let lambda = MatrixRep::new(l.ideal.group().clone(), P3, gens)?;
    RepMap::new(lambda, l.ideal, t)
}
