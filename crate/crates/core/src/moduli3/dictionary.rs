//! The functor `I` from S3-lattices over Z_(3) to bundles, on the lattices
//! it is known on.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::bundle::{StandardBundle, StandardSummand};
use crate::exactalg::{smith_normal_form, SparseIntMatrix};
use crate::reps::{s3_lattices, Domain, GroupName, IntMat, MatrixRep};
use crate::{Error, Result};

/// `(name, lattice, image)` for the unit, `P`, `Z_(3)[ζ]` and `(1−ζ)`.
pub fn dictionary() -> Result<Vec<(&'static str, MatrixRep, StandardSummand)>> {
    let l = s3_lattices()?;
    Ok(vec![
        ("trivial", l.unit, StandardSummand::line(0)),
        ("P", l.p, StandardSummand::fpush(0)),
        ("Zzeta", l.zzeta, StandardSummand::ealpha(-2)),
        ("IdealZeta", l.ideal, StandardSummand::ealpha(4)),
    ])
}

/// 3-adic profile of an integer matrix: rank mod 3, then the numbers of
/// nonzero invariant factors with valuation 0, 1 and at least 2 (what
/// survives reduction mod 9).
fn profile(m: &IntMat, out: &mut Vec<usize>) {
    out.push(m.to_fp(3).rank());
    let mut s = SparseIntMatrix::zero(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if m.get(i, j) != 0 {
                s.set(i, j, m.get(i, j).into());
            }
        }
    }
    let mut counts = [0usize; 3];
    let three = BigInt::from(3);
    for d in smith_normal_form(&s).diagonal.iter().filter(|d| !d.is_zero()) {
        let mut v = 0;
        let mut x = d.clone();
        while v < 2 && x.is_multiple_of(&three) {
            x /= &three;
            v += 1;
        }
        counts[v] += 1;
    }
    out.extend_from_slice(&counts);
}

/// Additive over direct sums.
pub fn lattice_fingerprint(rep: &MatrixRep) -> Vec<usize> {
    let n = rep.rank();
    let one = IntMat::identity(n);
    let g = rep.group();
    let mut out = vec![n];
    for x in 0..g.order() {
        for lambda in [1i64, -1] {
            let a = rep.matrix_of(x).sub(&one.scale(lambda));
            let mut pw = a.clone();
            for _ in 0..2 {
                profile(&pw, &mut out);
                pw = pw.mul_mod(&a, None).expect("small entries");
            }
        }
    }
    // invariants and sign-invariants of the whole group (both generators are
    // transpositions)
    for lambda in [1i64, -1] {
        let mut stacked = IntMat::zero(2 * n, n);
        for (k, m) in rep.generator_matrices().iter().enumerate() {
            stacked.put(k * n, 0, &m.sub(&one.scale(lambda)));
        }
        profile(&stacked, &mut out);
    }
    out
}

/// `I(rep)` for `rep` a direct sum of dictionary lattices, recognized by
/// rank and 3-adic fingerprints; the decomposition must be unique.
pub fn i_functor(rep: &MatrixRep) -> Result<StandardBundle> {
    if rep.group().name() != GroupName::S3 || matches!(rep.domain(), Domain::FiniteField(_)) {
        return Err(Error::NotInDictionary);
    }
    let dict = dictionary()?;
    let fps: Vec<Vec<usize>> = dict.iter().map(|(_, r, _)| lattice_fingerprint(r)).collect();
    let target = lattice_fingerprint(rep);
    let n = rep.rank();
    let mut found: Option<[usize; 4]> = None;
    for b in 0..=n / 3 {
        for c in 0..=(n - 3 * b) / 2 {
            for d in 0..=(n - 3 * b - 2 * c) / 2 {
                let a = n - 3 * b - 2 * c - 2 * d;
                let m = [a, b, c, d];
                let sum: Vec<usize> =
                    (0..target.len()).map(|t| (0..4).map(|k| m[k] * fps[k][t]).sum()).collect();
                if sum == target {
                    if found.is_some() {
                        return Err(Error::NotInDictionary);
                    }
                    found = Some(m);
                }
            }
        }
    }
    let m = found.ok_or(Error::NotInDictionary)?;
    let mut out = StandardBundle::zero();
    for (k, &mult) in m.iter().enumerate() {
        for _ in 0..mult {
            out = out.with(dict[k].2);
        }
    }
    Ok(out)
}

/// The sign character over Z_(3), which the dictionary does not contain.
pub fn sign_lattice() -> Result<MatrixRep> {
    let g = crate::reps::build_group(GroupName::S3)?;
    let gens = vec![IntMat::from_rows(&[vec![-1]]); g.generators().len()];
    MatrixRep::new(g, Domain::LocalizedAt(3), gens)
}
