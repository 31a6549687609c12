//! Krull–Remak–Schmidt decomposition over prime fields.
//!
//! Summands are split off by Fitting decompositions `V = ker ψ^N ⊕ im ψ^N`
//! for polynomials `ψ` in random endomorphisms. Randomness only picks the
//! endomorphisms; every split is checked (the idempotents are verified to be
//! orthogonal, complete and equivariant) and every final summand carries
//! `dim End` and `dim End/rad`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::endo::{end_algebra, hom_space};
use super::rep::{IntMat, MatrixRep};
use crate::exactalg::fp::FpMatrix;
use crate::{Error, Result};

pub const DEFAULT_RANK_BOUND: usize = 128;

/// Random endomorphisms tried before a module is declared indecomposable
/// (then certified through its radical).
const ATTEMPTS: usize = 24;
/// Hard stop when `End/rad` says a split exists but none was found.
const MAX_ATTEMPTS: usize = 400;

/// Ranks of `(ρ(g) − 1)^k` for every element `g` and `k = 1..=rank`.
pub type Fingerprint = Vec<u32>;

#[derive(Clone, Debug)]
pub struct Component {
    pub rep: MatrixRep,
    pub multiplicity: usize,
    pub end_dim: usize,
    pub end_mod_rad_dim: usize,
    /// `dim End/rad = 1`; otherwise the summand is flagged.
    pub certified: bool,
    pub fingerprint: Fingerprint,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub rank: usize,
    pub field: u32,
    pub seed: u64,
    /// Isomorphism classes of summands with multiplicities.
    pub components: Vec<Component>,
    /// For each summand in the splitting order: its class and its basis
    /// (columns, in the input coordinates).
    pub summands: Vec<(usize, FpMatrix)>,
    /// Projections onto the summands along the others.
    pub idempotents: Vec<FpMatrix>,
    pub end_dim: usize,
}

impl DecompositionReport {
    pub fn summand_ranks(&self) -> Vec<usize> {
        self.summands.iter().map(|(_, b)| b.cols()).collect()
    }

    pub fn flagged(&self) -> Vec<usize> {
        (0..self.components.len()).filter(|&c| !self.components[c].certified).collect()
    }

    /// Sorted `(rank, fingerprint, multiplicity)` triples.
    pub fn signature(&self) -> Vec<(usize, Fingerprint, usize)> {
        let mut v: Vec<_> =
            self.components.iter().map(|c| (c.rep.rank(), c.fingerprint.clone(), c.multiplicity)).collect();
        v.sort();
        v
    }

    /// Whether some summand is isomorphic to `m` (an indecomposable).
    pub fn contains(&self, m: &MatrixRep) -> Result<bool> {
        for c in &self.components {
            if c.rep.rank() == m.rank() && is_isomorphic(&c.rep, m)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Both reports list isomorphic summands with equal multiplicities.
pub fn same_krs(a: &DecompositionReport, b: &DecompositionReport) -> Result<bool> {
    if a.signature() != b.signature() {
        return Ok(false);
    }
    let mut used = vec![false; b.components.len()];
    'outer: for ca in &a.components {
        for (j, cb) in b.components.iter().enumerate() {
            if !used[j]
                && ca.multiplicity == cb.multiplicity
                && ca.fingerprint == cb.fingerprint
                && is_isomorphic(&ca.rep, &cb.rep)?
            {
                used[j] = true;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

pub fn fingerprint(rep: &MatrixRep) -> Result<Fingerprint> {
    let q = rep.modulus().ok_or_else(|| Error::InvalidArgument("fingerprint needs a finite field".into()))?;
    let n = rep.rank();
    let one = FpMatrix::identity(q, n);
    let mut out = vec![n as u32];
    for g in 0..rep.group().order() {
        let a = rep.matrix_of(g).to_fp(q).sub(&one);
        let mut pw = a.clone();
        for _ in 0..n {
            out.push(pw.rank() as u32);
            pw = pw.mul(&a);
        }
    }
    Ok(out)
}

/// Isomorphism of indecomposables: `A ≅ B` iff some `g∘f` with `f: A → B`,
/// `g: B → A` from Hom bases is invertible (End A is local, so its non-units
/// form the radical, an ideal and a subspace).
pub fn is_isomorphic(a: &MatrixRep, b: &MatrixRep) -> Result<bool> {
    if a.rank() != b.rank() {
        return Ok(false);
    }
    let fs = hom_space(a, b)?;
    let gs = hom_space(b, a)?;
    for f in &fs {
        for g in &gs {
            if g.mul(f).is_invertible() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Splits `rep` into indecomposable summands.
pub fn decompose(rep: &MatrixRep, seed: u64, rank_bound: usize) -> Result<DecompositionReport> {
    let q = rep.modulus().ok_or_else(|| Error::InvalidArgument("decompose needs a finite field".into()))?;
    if rep.rank() > rank_bound {
        return Err(Error::OutOfRange(format!("rank {} above the bound {rank_bound}", rep.rank())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rep.rank();
    let mut pieces: Vec<(FpMatrix, MatrixRep)> = Vec::new();
    let mut end_dim = 0;
    let mut stack = vec![(FpMatrix::identity(q, n), rep.clone())];
    let mut top = true;
    while let Some((basis, sub)) = stack.pop() {
        if sub.rank() == 0 {
            continue;
        }
        let end = hom_space(&sub, &sub)?;
        if top {
            end_dim = end.len();
            top = false;
        }
        match split(&sub, &end, q, &mut rng)? {
            Some((left, right)) => {
                for part in [left, right] {
                    let b = basis.mul(&part);
                    let r = restrict_to(&sub, &part)?;
                    stack.push((b, r));
                }
            }
            None => pieces.push((basis, sub)),
        }
    }
    pieces.sort_by_key(|(b, _)| core::cmp::Reverse(b.cols()));
    let idempotents = certify_idempotents(rep, &pieces, q)?;
    let mut components: Vec<Component> = Vec::new();
    let mut summands = Vec::new();
    for (basis, sub) in pieces {
        let fp = fingerprint(&sub)?;
        let mut class = None;
        for (c, comp) in components.iter().enumerate() {
            if comp.fingerprint == fp && is_isomorphic(&comp.rep, &sub)? {
                class = Some(c);
                break;
            }
        }
        let c = match class {
            Some(c) => {
                components[c].multiplicity += 1;
                c
            }
            None => {
                let e = end_algebra(&sub)?;
                components.push(Component {
                    rep: sub,
                    multiplicity: 1,
                    end_dim: e.dim(),
                    end_mod_rad_dim: e.quotient_dim(),
                    certified: e.absolutely_local(),
                    fingerprint: fp,
                });
                components.len() - 1
            }
        };
        summands.push((c, basis));
    }
    Ok(DecompositionReport { rank: n, field: q, seed, components, summands, idempotents, end_dim })
}

/// `e_k = P E_k P⁻¹`; checks `e_k² = e_k`, `e_k e_l = 0`, `Σ e_k = 1` and
/// that each `e_k` commutes with the action.
fn certify_idempotents(rep: &MatrixRep, pieces: &[(FpMatrix, MatrixRep)], q: u32) -> Result<Vec<FpMatrix>> {
    let n = rep.rank();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut cols = Vec::new();
    for (b, _) in pieces {
        for j in 0..b.cols() {
            cols.push(b.column(j));
        }
    }
    let p = FpMatrix::from_columns(q, n, &cols);
    let p_inv = p.inverse().ok_or_else(|| Error::Invariant("summands do not span the module".into()))?;
    let gens: Vec<FpMatrix> = rep.generator_matrices().iter().map(|m| m.to_fp(q)).collect();
    let mut out = Vec::new();
    let mut total = FpMatrix::zero(q, n, n);
    let mut start = 0;
    for (b, _) in pieces {
        let mut e = FpMatrix::zero(q, n, n);
        for j in start..start + b.cols() {
            e.set(j, j, 1);
        }
        start += b.cols();
        let e = p.mul(&e).mul(&p_inv);
        if e.mul(&e) != e || gens.iter().any(|g| g.mul(&e) != e.mul(g)) {
            return Err(Error::Invariant("summand projection is not an equivariant idempotent".into()));
        }
        total = total.add(&e);
        out.push(e);
    }
    for (i, a) in out.iter().enumerate() {
        for (j, b) in out.iter().enumerate() {
            if i != j && !a.mul(b).is_zero() {
                return Err(Error::Invariant("summand projections are not orthogonal".into()));
            }
        }
    }
    if total != FpMatrix::identity(q, n) {
        return Err(Error::Invariant("summand projections do not sum to 1".into()));
    }
    Ok(out)
}

/// The action on the invariant subspace spanned by the columns of `part`.
fn restrict_to(rep: &MatrixRep, part: &FpMatrix) -> Result<MatrixRep> {
    let q = part.p();
    let k = part.cols();
    // left inverse of `part` from any complement
    let n = part.rows();
    let mut cols: Vec<Vec<u32>> = (0..k).map(|j| part.column(j)).collect();
    let extra = FpMatrix::from_columns(q, n, &cols).hcat(&FpMatrix::identity(q, n)).column_basis();
    for c in extra.into_iter().filter(|&c| c >= k) {
        cols.push(unit(n, c - k));
    }
    let full_inv = FpMatrix::from_columns(q, n, &cols)
        .inverse()
        .ok_or_else(|| Error::Invariant("split part is not independent".into()))?;
    let left = full_inv.row_slice(0, k);
    let gens = rep
        .generator_matrices()
        .iter()
        .map(|m| IntMat::from_fp(&left.mul(&m.to_fp(q)).mul(part)))
        .collect();
    MatrixRep::new(rep.group().clone(), rep.domain(), gens)
}

fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

/// Fitting decomposition of `psi`: `(ker ψ^N, im ψ^N)` as column bases, if
/// both are nonzero.
fn fitting(psi: &FpMatrix) -> Option<(FpMatrix, FpMatrix)> {
    let n = psi.rows();
    let mut pw = psi.clone();
    let mut e = 1;
    while e < n {
        pw = pw.mul(&pw);
        e *= 2;
    }
    let ker = pw.nullspace();
    if ker.is_empty() || ker.len() == n {
        return None;
    }
    let q = psi.p();
    let img = pw.select_columns(&pw.column_basis());
    Some((FpMatrix::from_columns(q, n, &ker), img))
}

fn random_element(end: &[FpMatrix], q: u32, rng: &mut ChaCha8Rng) -> FpMatrix {
    let mut m = FpMatrix::zero(q, end[0].rows(), end[0].cols());
    for b in end {
        let c = rng.next_u32() % q;
        if c != 0 {
            m = m.add(&b.scale(c));
        }
    }
    m
}

fn split(
    rep: &MatrixRep,
    end: &[FpMatrix],
    q: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Option<(FpMatrix, FpMatrix)>> {
    if end.len() <= 1 {
        return Ok(None);
    }
    let n = rep.rank();
    let mut certified_local = false;
    for attempt in 0..MAX_ATTEMPTS {
        if attempt == ATTEMPTS {
            // out of luck so far: decide whether a split exists at all
            let rad = super::endo::radical(end, n)?;
            certified_local = is_local(end, &rad, q) == Some(true);
        }
        if certified_local {
            return Ok(None);
        }
        let phi = random_element(end, q, rng);
        if let Some(s) = split_with(&phi, q) {
            return Ok(Some(s));
        }
    }
    Err(Error::Invariant(format!("no idempotent found in {MAX_ATTEMPTS} attempts")))
}

/// Tries the Fitting decompositions of `φ − λ`, `φ^{q^j} − φ`, and an
/// equal-degree splitter on the part where all eigenvalues have one degree.
fn split_with(phi: &FpMatrix, q: u32) -> Option<(FpMatrix, FpMatrix)> {
    let n = phi.rows();
    let one = FpMatrix::identity(q, n);
    if q <= 64 {
        for lambda in 0..q {
            if let Some(s) = fitting(&phi.sub(&one.scale(lambda))) {
                return Some(s);
            }
        }
    }
    // frob[j] = φ^{q^j}
    let mut frob = vec![phi.clone()];
    for j in 1..=n {
        let next = frob[j - 1].pow(q as u64);
        frob.push(next);
        let psi = frob[j].sub(phi);
        if let Some(s) = fitting(&psi) {
            return Some(s);
        }
        if nilpotent(&psi) {
            // every eigenvalue lies in F_{q^j}; split by a character
            let psi = if q == 2 {
                frob[..j].iter().fold(FpMatrix::zero(q, n, n), |acc, f| acc.add(f))
            } else {
                let half = (q as u64 - 1) / 2;
                frob[..j].iter().fold(one.clone(), |acc, f| acc.mul(&f.pow(half))).sub(&one)
            };
            return fitting(&psi);
        }
    }
    None
}

fn nilpotent(m: &FpMatrix) -> bool {
    let n = m.rows();
    let mut pw = m.clone();
    let mut e = 1;
    while e < n {
        pw = pw.mul(&pw);
        e *= 2;
    }
    pw.is_zero()
}

/// Largest `q^k` for which locality is decided by enumeration.
const LOCAL_ENUMERATION: u64 = 4096;

/// `End` is local iff every element outside the radical is a unit; elements
/// differ from complement combinations by radical elements, so it suffices to
/// test every nonzero combination of a complement basis. `None` when there
/// are too many combinations.
fn is_local(end: &[FpMatrix], rad: &[FpMatrix], q: u32) -> Option<bool> {
    let comp = complement(end, rad);
    let k = comp.len() as u32;
    let total = (q as u64).checked_pow(k).filter(|&t| t <= LOCAL_ENUMERATION)?;
    let n = end[0].rows();
    for code in 1..total {
        let mut m = FpMatrix::zero(q, n, n);
        let mut c = code;
        for b in &comp {
            let d = (c % q as u64) as u32;
            c /= q as u64;
            if d != 0 {
                m = m.add(&b.scale(d));
            }
        }
        if !m.is_invertible() {
            return Some(false);
        }
    }
    Some(true)
}

fn complement<'a>(end: &'a [FpMatrix], rad: &[FpMatrix]) -> Vec<&'a FpMatrix> {
    let mut span: Vec<FpMatrix> = rad.to_vec();
    let mut out = Vec::new();
    for e in end {
        if !in_span(e, &span) {
            span.push(e.clone());
            out.push(e);
        }
    }
    out
}

fn in_span(x: &FpMatrix, span: &[FpMatrix]) -> bool {
    if x.is_zero() {
        return true;
    }
    if span.is_empty() {
        return false;
    }
    let q = x.p();
    let len = x.rows() * x.cols();
    let cols: Vec<Vec<u32>> = span.iter().map(|m| m.data().to_vec()).collect();
    let a = FpMatrix::from_columns(q, len, &cols);
    let mut all = cols.clone();
    all.push(x.data().to_vec());
    FpMatrix::from_columns(q, len, &all).rank() == a.rank()
}
