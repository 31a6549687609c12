//! Line bundles on a weighted projective line `P(k,l)`.
//!
//! Sections of `O(m)` have a basis indexed by `A(m) = {(a,b) ≥ 0 : ak+bl = m}`
//! and `H^1` by `B(m) = {(c,d) < 0 : ck+dl = m}`.

use alloc::vec::Vec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightedLine {
    pub k: u32,
    pub l: u32,
}

impl WeightedLine {
    pub fn new(k: u32, l: u32) -> crate::Result<Self> {
        if k == 0 || l == 0 {
            return Err(crate::Error::InvalidArgument("weights must be positive".into()));
        }
        Ok(WeightedLine { k, l })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    pub degree: u8,
    pub m: i64,
    pub points: Vec<(i64, i64)>,
}

impl LatticePointSet {
    pub fn rank(&self) -> usize {
        self.points.len()
    }
}

/// `{(a,b) ≥ 0 : ak+bl = m}`, ordered by increasing `a`.
pub fn h0_basis(w: WeightedLine, m: i64) -> LatticePointSet {
    let (k, l) = (w.k as i64, w.l as i64);
    let mut points = Vec::new();
    if m >= 0 {
        let mut a = 0;
        while a * k <= m {
            let rest = m - a * k;
            if rest % l == 0 {
                points.push((a, rest / l));
            }
            a += 1;
        }
    }
    LatticePointSet { degree: 0, m, points }
}

/// `{(c,d) < 0 : ck+dl = m}`, ordered by decreasing `c`.
pub fn h1_basis(w: WeightedLine, m: i64) -> LatticePointSet {
    // (c,d) < 0 with ck+dl = m  ⇔  (-c-1, -d-1) ∈ A(-m-k-l)
    let (k, l) = (w.k as i64, w.l as i64);
    let points = h0_basis(w, -m - k - l).points.into_iter().map(|(a, b)| (-a - 1, -b - 1)).collect();
    LatticePointSet { degree: 1, m, points }
}

/// Pairs `(a,b) ∈ A(m)` with `(-a-1,-b-1) ∈ B(-m-k-l)`; checks both directions.
pub fn serre_pairing(w: WeightedLine, m: i64) -> crate::Result<Vec<((i64, i64), (i64, i64))>> {
    let a = h0_basis(w, m);
    let b = h1_basis(w, -m - w.k as i64 - w.l as i64);
    let pairs: Vec<_> = a.points.iter().map(|&(x, y)| ((x, y), (-x - 1, -y - 1))).collect();
    let forward_ok = pairs.iter().all(|(_, q)| b.points.contains(q));
    let backward_ok = b.points.iter().all(|&(c, d)| a.points.contains(&(-c - 1, -d - 1)));
    if !(forward_ok && backward_ok && a.rank() == b.rank()) {
        return Err(crate::Error::Invariant("Serre pairing is not a bijection".into()));
    }
    Ok(pairs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohChart {
    pub weights: WeightedLine,
    pub m_lo: i64,
    pub m_hi: i64,
    pub h0: Vec<LatticePointSet>,
    pub h1: Vec<LatticePointSet>,
}

impl CohChart {
    pub fn h0_ranks(&self) -> Vec<usize> {
        self.h0.iter().map(|s| s.rank()).collect()
    }

    pub fn h1_ranks(&self) -> Vec<usize> {
        self.h1.iter().map(|s| s.rank()).collect()
    }
}

pub fn chart(w: WeightedLine, m_lo: i64, m_hi: i64) -> crate::Result<CohChart> {
    if m_lo > m_hi {
        return Err(crate::Error::InvalidArgument("empty twist range".into()));
    }
    Ok(CohChart {
        weights: w,
        m_lo,
        m_hi,
        h0: (m_lo..=m_hi).map(|m| h0_basis(w, m)).collect(),
        h1: (m_lo..=m_hi).map(|m| h1_basis(w, m)).collect(),
    })
}
