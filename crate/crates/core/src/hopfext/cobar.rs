//! Cobar complex of a Hopf algebroid, degree by degree.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::algebroid::HopfAlgebroid;
use super::packed::{Overflow, Packed, MAX_VARS};
use crate::exactalg::poly::Substitution;
use crate::exactalg::{monomials_of_degree, Monomial, Poly, SparseIntMatrix};
use crate::{Error, Result};

/// Largest basis any single cobar group may have before construction stops.
pub const DEFAULT_BASIS_CAP: usize = 20_000;

/// `C^s(n)` for `0 ≤ s ≤ s_max`, `0 ≤ n ≤ n_max`, and the differentials
/// `d^s : C^s(n) → C^{s+1}(n)` for `s < s_max`.
#[derive(Clone, Debug)]
pub struct CobarComplex {
    s_max: usize,
    n_max: usize,
    bases: Vec<Vec<Vec<Monomial>>>,
    index: Vec<Vec<BTreeMap<Monomial, usize>>>,
    differentials: Vec<Vec<SparseIntMatrix>>,
}

/// Monomials of `A[x_1..x_s]` of degree `n` with every block non-constant.
pub fn cobar_basis(alg: &HopfAlgebroid, s: usize, n: usize, cap: usize) -> Result<Vec<Monomial>> {
    let nv = alg.nvars(s);
    let base_w = alg.base().degrees().to_vec();
    let cover_w = alg.cover_degrees().to_vec();
    // block monomials by degree, computed once
    let mut block_by_deg: Vec<Vec<Monomial>> = vec![Vec::new(); n + 1];
    for (e, slot) in block_by_deg.iter_mut().enumerate().skip(1) {
        *slot = monomials_of_degree(&cover_w, e as u64);
    }
    let mut out = Vec::new();
    let too_big = |size: usize| Error::ResourceCap { s, n, size, cap };
    for da in 0..=n {
        let rest = n - da;
        if s == 0 && rest != 0 {
            continue;
        }
        if rest < s {
            continue;
        }
        let amons = monomials_of_degree(&base_w, da as u64);
        if amons.is_empty() {
            continue;
        }
        // compositions of `rest` into s positive parts, each with block monomials
        let mut partial: Vec<(usize, Vec<u16>)> = vec![(0, Vec::new())];
        for b in 0..s {
            let remaining_blocks = s - b - 1;
            let mut next = Vec::new();
            for (used, exps) in &partial {
                let max_e = rest - used - remaining_blocks;
                for e in 1..=max_e {
                    if b + 1 == s && used + e != rest {
                        continue;
                    }
                    for m in &block_by_deg[e] {
                        let mut v = exps.clone();
                        v.extend_from_slice(&m.0);
                        next.push((used + e, v));
                    }
                }
            }
            partial = next;
            if partial.len().saturating_mul(amons.len()) + out.len() > cap {
                return Err(too_big(partial.len() * amons.len() + out.len()));
            }
        }
        let blocks: Vec<Vec<u16>> = partial.into_iter().map(|(_, v)| v).collect();
        for am in &amons {
            for bl in &blocks {
                let mut e = am.0.clone();
                e.extend_from_slice(bl);
                debug_assert_eq!(e.len(), nv);
                out.push(Monomial(e));
            }
        }
        if out.len() > cap {
            return Err(too_big(out.len()));
        }
    }
    Ok(out)
}

impl CobarComplex {
    pub fn build(alg: &HopfAlgebroid, s_max: usize, n_max: usize, cap: usize) -> Result<Self> {
        let mut bases = Vec::with_capacity(s_max + 1);
        let mut index = Vec::with_capacity(s_max + 1);
        for s in 0..=s_max {
            let mut bs = Vec::with_capacity(n_max + 1);
            let mut ix: Vec<BTreeMap<Monomial, usize>> = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let b = cobar_basis(alg, s, n, cap)?;
                ix.push(b.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect());
                bs.push(b);
            }
            bases.push(bs);
            index.push(ix);
        }
        let mut differentials = Vec::with_capacity(s_max);
        for s in 0..s_max {
            let faces: Vec<Vec<Poly>> = (0..=s + 1).map(|i| alg.coface(s, i)).collect();
            let mut subs: Vec<Substitution<'_>> = faces.iter().map(|f| Substitution::new(f)).collect();
            let mut ds = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let src = &bases[s][n];
                let tgt_index = &index[s + 1][n];
                let mut d = SparseIntMatrix::zero(bases[s + 1][n].len(), src.len());
                for (col, m) in src.iter().enumerate() {
                    let mut image = Poly::zero(alg.nvars(s + 1));
                    for (i, sub) in subs.iter_mut().enumerate() {
                        let face = sub.apply_monomial(m);
                        image.add_scaled(&face, &sign(i));
                    }
                    for (tm, c) in image.terms() {
                        let row = *tgt_index.get(tm).ok_or_else(|| {
                            Error::Invariant(format!("differential left the normalized complex at ({s},{n})"))
                        })?;
                        d.set(row, col, c.clone());
                    }
                }
                ds.push(d);
            }
            differentials.push(ds);
        }
        Ok(CobarComplex { s_max, n_max, bases, index, differentials })
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn basis(&self, s: usize, n: usize) -> &[Monomial] {
        &self.bases[s][n]
    }

    pub fn bases(&self) -> &Vec<Vec<Vec<Monomial>>> {
        &self.bases
    }

    pub fn dim(&self, s: usize, n: usize) -> usize {
        self.bases[s][n].len()
    }

    /// `d^s` in internal degree `n`.
    pub fn differential(&self, s: usize, n: usize) -> &SparseIntMatrix {
        &self.differentials[s][n]
    }

    pub fn differentials(&self) -> &Vec<Vec<SparseIntMatrix>> {
        &self.differentials
    }

    /// Coordinates of a homogeneous cochain in the basis of `C^s(n)`.
    pub fn to_vector(&self, s: usize, n: usize, p: &Poly) -> Result<Vec<BigInt>> {
        let mut v = vec![BigInt::zero(); self.dim(s, n)];
        for (m, c) in p.terms() {
            let i = self.index[s][n]
                .get(m)
                .ok_or_else(|| Error::Invariant(format!("element is not a normalized cochain of bidegree ({s},{n})")))?;
            v[*i] += c;
        }
        Ok(v)
    }

    pub fn to_poly(&self, s: usize, n: usize, v: &[BigInt]) -> Poly {
        let nv = self.bases[s][n].first().map(|m| m.nvars()).unwrap_or(0);
        let mut p = Poly::zero(nv);
        for (m, c) in self.bases[s][n].iter().zip(v) {
            if !c.is_zero() {
                p.add_term(m.clone(), c.clone());
            }
        }
        p
    }

    /// `d^{s+1} d^s = 0` as matrices for every `n`.
    pub fn verify_d_squared(&self) -> Result<()> {
        for s in 0..self.s_max.saturating_sub(1) {
            for n in 0..=self.n_max {
                let dd = self.differentials[s + 1][n].mul(&self.differentials[s][n])?;
                if !dd.is_zero() {
                    return Err(Error::NonzeroComposite);
                }
            }
        }
        Ok(())
    }
}

/// `Σ (-1)^i d_i` applied to a cochain of cohomological degree `s`.
pub fn cobar_differential(alg: &HopfAlgebroid, s: usize, p: &Poly) -> Poly {
    let mut out = Poly::zero(alg.nvars(s + 1));
    for i in 0..=s + 1 {
        out.add_scaled(&p.substitute(&alg.coface(s, i)), &sign(i));
    }
    out
}

/// Evaluates `d(d(m))` for every basis monomial `m` of `C^s(n)`,
/// `s + 2 ≤ s_max`, `n ≤ n_max`. Only source bases are enumerated, so this
/// reaches bidegrees whose targets exceed the cap. Returns the number of
/// monomials checked.
///
/// `d∘d = Σ ± d_j d_i`; each composite is a ring map, so its value on `m` is
/// the product of its values on powers of single variables, which are
/// memoized. Word-sized arithmetic is used when it provably suffices.
pub fn verify_d_squared_symbolic(alg: &HopfAlgebroid, s_max: usize, n_max: usize, cap: usize) -> Result<usize> {
    let mut checked = 0;
    for s in 0..s_max.saturating_sub(1) {
        let first: Vec<Vec<Poly>> = (0..=s + 1).map(|i| alg.coface(s, i)).collect();
        let second: Vec<Vec<Poly>> = (0..=s + 2).map(|i| alg.coface(s + 1, i)).collect();
        let mut composites: Vec<(i128, Vec<Poly>)> = Vec::new();
        for (i, fi) in first.iter().enumerate() {
            for (j, sj) in second.iter().enumerate() {
                let images: Vec<Poly> = fi.iter().map(|p| p.substitute(sj)).collect();
                composites.push((if (i + j) % 2 == 0 { 1 } else { -1 }, images));
            }
        }
        let mut fast = FastComposites::new(&composites, alg.nvars(s + 2));
        let mut slow: Vec<Substitution<'_>> = composites.iter().map(|(_, im)| Substitution::new(im)).collect();
        for n in 0..=n_max {
            for m in cobar_basis(alg, s, n, cap)? {
                let zero = match fast.as_mut().map(|f| f.eval(&m)) {
                    Some(Ok(z)) => z,
                    _ => {
                        let mut total = Poly::zero(alg.nvars(s + 2));
                        for (h, sub) in slow.iter_mut().enumerate() {
                            total.add_scaled(&sub.apply_monomial(&m), &BigInt::from(composites[h].0));
                        }
                        total.is_zero()
                    }
                };
                if !zero {
                    return Err(Error::NonzeroComposite);
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Packed images of every composite with a per-variable power cache.
struct FastComposites {
    signs: Vec<i128>,
    images: Vec<Vec<Packed>>,
    powers: Vec<Vec<Vec<Packed>>>,
}

impl FastComposites {
    fn new(composites: &[(i128, Vec<Poly>)], target_vars: usize) -> Option<Self> {
        if target_vars > MAX_VARS {
            return None;
        }
        let mut images = Vec::new();
        for (_, im) in composites {
            images.push(im.iter().map(Packed::from_poly).collect::<Option<Vec<_>>>()?);
        }
        let nv = images.first().map_or(0, |v| v.len());
        Some(FastComposites {
            signs: composites.iter().map(|c| c.0).collect(),
            powers: vec![vec![vec![Packed::one()]; nv]; images.len()],
            images,
        })
    }

    fn power(&mut self, h: usize, v: usize, e: usize) -> core::result::Result<Packed, Overflow> {
        while self.powers[h][v].len() <= e {
            let last = self.powers[h][v].last().expect("seeded with one");
            let next = last.mul(&self.images[h][v])?;
            self.powers[h][v].push(next);
        }
        Ok(self.powers[h][v][e].clone())
    }

    /// Whether `Σ ± h(m)` vanishes.
    fn eval(&mut self, m: &Monomial) -> core::result::Result<bool, Overflow> {
        let mut total = Packed::default();
        for h in 0..self.signs.len() {
            let mut acc = Packed::one();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let pw = self.power(h, v, e as usize)?;
                    acc = acc.mul(&pw)?;
                }
            }
            total = total.merge(&acc, self.signs[h])?;
        }
        Ok(total.is_zero())
    }
}

fn sign(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}
