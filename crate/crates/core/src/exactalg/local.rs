//! Homology localized at a prime, by elimination over `Z/p^N`.
//!
//! Integral Smith transforms of cobar differentials grow to thousands of
//! bits, while over `Z/p^N` every entry is a machine word. The result is
//! certified exactly: a pivot of valuation `< N` is a genuine `Z_(p)` pivot,
//! and when the ranks found add up to the chain dimension nothing can hide
//! above `p^N`. Otherwise [`LocalizedHomology`] falls back to integers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::abgroup::FGAbGroup;
use super::fp::sparse_rank_mod;
use super::homology::{Homology, LocalView};
use super::matrix::SparseIntMatrix;
use crate::{Error, Result};

const RANK_PRIME: u32 = 2_147_483_647;

#[derive(Clone, Copy, Debug)]
enum Op {
    Swap(usize, usize),
    Scale(usize, u64),
    /// `x[target] -= f · x[source]`
    Axpy { target: usize, source: usize, f: u64 },
}

fn inv_mod_u64(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

/// Homology at a spot of a complex of free modules, tensored with `Z_(p)`,
/// when it is `p`-torsion. Generators are integral cocycles.
#[derive(Clone, Debug)]
pub struct LocalHomology {
    p: u64,
    modulus: u64,
    m: usize,
    d_out: SparseIntMatrix,
    row_ops: Vec<Op>,
    /// Pivot valuations, nondecreasing.
    valuations: Vec<u32>,
    slots: Vec<usize>,
    generators: Vec<Vec<BigInt>>,
    group: FGAbGroup,
}

impl LocalHomology {
    /// Returns `None` when the certificate fails (free summands, unlucky
    /// rank prime, or torsion too deep for the word-sized modulus).
    pub fn compute(d_out: &SparseIntMatrix, d_in: &SparseIntMatrix, p: u64) -> Result<Option<Self>> {
        let m = d_in.rows();
        if d_out.cols() != m {
            return Err(Error::Dimension(format!("d_out has {} columns but d_in has {} rows", d_out.cols(), m)));
        }
        if !d_out.mul(d_in)?.is_zero() {
            return Err(Error::NonzeroComposite);
        }
        let mut exp = 0u32;
        let mut modulus = 1u64;
        while modulus.checked_mul(p).is_some_and(|x| x < (1 << 31)) {
            modulus *= p;
            exp += 1;
        }
        if exp < 3 {
            return Ok(None);
        }
        let c = d_in.cols();
        let bm = BigInt::from(modulus);
        let mut a = vec![0u64; m * c];
        for (i, j, v) in d_in.entries() {
            a[i * c + j] = v.mod_floor(&bm).to_u64().expect("reduced");
        }
        let val = |x: u64| -> u32 {
            if x == 0 {
                return exp;
            }
            let mut x = x;
            let mut v = 0;
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            v
        };
        let mut row_ops = Vec::new();
        let mut col_ops = Vec::new();
        let mut valuations = Vec::new();
        for k in 0..m.min(c) {
            // pivot of least valuation
            let mut best: Option<(u32, usize, usize)> = None;
            'search: for j in k..c {
                for i in k..m {
                    let x = a[i * c + j];
                    if x == 0 {
                        continue;
                    }
                    let v = val(x);
                    if best.map_or(true, |b| v < b.0) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
            let Some((v, pi, pj)) = best else { break };
            if pi != k {
                for j in 0..c {
                    a.swap(pi * c + j, k * c + j);
                }
                row_ops.push(Op::Swap(k, pi));
            }
            if pj != k {
                for i in 0..m {
                    a.swap(i * c + pj, i * c + k);
                }
                col_ops.push(Op::Swap(k, pj));
            }
            let pv = p.pow(v);
            let unit = a[k * c + k] / pv;
            let uinv = inv_mod_u64(unit % modulus, modulus);
            if uinv != 1 {
                for j in k..c {
                    a[k * c + j] = a[k * c + j] * uinv % modulus;
                }
                row_ops.push(Op::Scale(k, uinv));
            }
            for i in k + 1..m {
                let b = a[i * c + k];
                if b == 0 {
                    continue;
                }
                let f = b / pv;
                for j in k..c {
                    let s = a[k * c + j];
                    if s != 0 {
                        a[i * c + j] = (a[i * c + j] + modulus - f * s % modulus) % modulus;
                    }
                }
                row_ops.push(Op::Axpy { target: i, source: k, f });
            }
            for j in k + 1..c {
                let b = a[k * c + j];
                if b == 0 {
                    continue;
                }
                a[k * c + j] = 0;
                col_ops.push(Op::Axpy { target: j, source: k, f: b / pv });
            }
            valuations.push(v);
        }
        // certificate: rank_Q(d_in) ≥ #pivots, rank_Q(d_out) ≥ rank mod q, and
        // the two add up to at most m.
        if valuations.len() + sparse_rank_mod(d_out, RANK_PRIME) != m {
            return Ok(None);
        }
        let e_max = valuations.last().copied().unwrap_or(0);
        if 2 * e_max >= exp {
            return Ok(None);
        }
        let slots: Vec<usize> = (0..valuations.len()).filter(|&i| valuations[i] > 0).collect();
        let torsion: Vec<BigInt> = slots.iter().map(|&i| BigInt::from(p).pow(valuations[i])).collect();
        let group = FGAbGroup::new(0, torsion)?;
        let mut out = LocalHomology {
            p,
            modulus,
            m,
            d_out: d_out.clone(),
            row_ops,
            valuations,
            slots,
            generators: Vec::new(),
            group,
        };
        // generator i is d_in(V e_i) / p^{e_i}
        let half = modulus / 2;
        for (g, &i) in out.slots.clone().iter().enumerate() {
            let mut w = vec![0u64; c];
            w[i] = 1;
            for op in col_ops.iter().rev() {
                match *op {
                    Op::Swap(x, y) => w.swap(x, y),
                    Op::Scale(x, u) => w[x] = w[x] * u % modulus,
                    Op::Axpy { target, source, f } => {
                        // column op col_t -= f col_s acts on V e_i as x_s -= f x_t
                        w[source] = (w[source] + modulus - f * w[target] % modulus) % modulus;
                    }
                }
            }
            let lifted: Vec<BigInt> =
                w.iter().map(|&x| if x > half { BigInt::from(x) - &bm } else { BigInt::from(x) }).collect();
            let image = d_in.mul_vec(&lifted);
            let pe = BigInt::from(p).pow(out.valuations[i]);
            let mut z = Vec::with_capacity(m);
            for x in image {
                let (q, r) = x.div_rem(&pe);
                if !r.is_zero() {
                    return Ok(None);
                }
                z.push(q);
            }
            let coords = out.coordinates(&z)?;
            let expect_unit = coords.iter().enumerate().all(|(h, x)| if h == g { x.is_one() } else { x.is_zero() });
            if !expect_unit {
                return Ok(None);
            }
            out.generators.push(z);
        }
        Ok(Some(out))
    }

    pub fn group(&self) -> &FGAbGroup {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        if z.len() != self.m {
            return Err(Error::Dimension(format!("chain of length {} in dimension {}", z.len(), self.m)));
        }
        if self.d_out.mul_vec(z).iter().any(|x| !x.is_zero()) {
            return Err(Error::Invariant("element is not a cycle".into()));
        }
        let modulus = self.modulus;
        let bm = BigInt::from(modulus);
        let mut y: Vec<u64> = z.iter().map(|x| x.mod_floor(&bm).to_u64().expect("reduced")).collect();
        for op in &self.row_ops {
            match *op {
                Op::Swap(a, b) => y.swap(a, b),
                Op::Scale(a, u) => y[a] = y[a] * u % modulus,
                Op::Axpy { target, source, f } => {
                    y[target] = (y[target] + modulus - f * y[source] % modulus) % modulus;
                }
            }
        }
        Ok(self.slots.iter().map(|&i| BigInt::from(y[i] % self.p.pow(self.valuations[i]))).collect())
    }

    pub fn generator(&self, g: usize) -> Vec<BigInt> {
        self.generators[g].clone()
    }

    pub fn moduli(&self) -> Vec<BigInt> {
        self.group.torsion().to_vec()
    }
}

/// `H ⊗ Z_(p)` with class coordinates, by the fastest exact route.
#[derive(Clone, Debug)]
pub enum LocalizedHomology {
    Modular(LocalHomology),
    Exact { homology: Homology, view: LocalView },
}

impl LocalizedHomology {
    pub fn compute(d_out: &SparseIntMatrix, d_in: &SparseIntMatrix, p: u64) -> Result<Self> {
        if d_in.cols() > 0 {
            if let Some(h) = LocalHomology::compute(d_out, d_in, p)? {
                return Ok(LocalizedHomology::Modular(h));
            }
        }
        Self::exact(d_out, d_in, p)
    }

    /// Always through integral Smith forms.
    pub fn exact(d_out: &SparseIntMatrix, d_in: &SparseIntMatrix, p: u64) -> Result<Self> {
        let homology = Homology::compute(d_out, d_in)?;
        let view = homology.local(p);
        Ok(LocalizedHomology::Exact { homology, view })
    }

    pub fn group(&self) -> &FGAbGroup {
        match self {
            LocalizedHomology::Modular(h) => h.group(),
            LocalizedHomology::Exact { view, .. } => &view.group,
        }
    }

    /// The integral group, when it was computed.
    pub fn integral_group(&self) -> Option<&FGAbGroup> {
        match self {
            LocalizedHomology::Modular(_) => None,
            LocalizedHomology::Exact { homology, .. } => Some(homology.group()),
        }
    }

    /// `0` for free generators.
    pub fn moduli(&self) -> Vec<BigInt> {
        match self {
            LocalizedHomology::Modular(h) => h.moduli(),
            LocalizedHomology::Exact { view, .. } => view.moduli(),
        }
    }

    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        match self {
            LocalizedHomology::Modular(h) => h.coordinates(z),
            LocalizedHomology::Exact { homology, view } => homology.local_coordinates(view, z),
        }
    }

    pub fn generator(&self, g: usize) -> Vec<BigInt> {
        match self {
            LocalizedHomology::Modular(h) => h.generator(g),
            LocalizedHomology::Exact { homology, view } => homology.generator(view.keep[g].0),
        }
    }

    pub fn is_zero(&self, z: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(z)?.iter().all(|x| x.is_zero()))
    }
}

