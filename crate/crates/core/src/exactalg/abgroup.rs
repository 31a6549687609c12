//! Finitely generated abelian groups in invariant-factor form.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// `Z^free ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `t_1 | t_2 | … | t_k`, all `t_i ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FGAbGroup {
    free: usize,
    torsion: Vec<BigInt>,
}

impl FGAbGroup {
    pub fn new(free: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for t in &torsion {
            if *t < BigInt::from(2) {
                return Err(Error::Invariant(format!("torsion coefficient {t} below 2")));
            }
        }
        for w in torsion.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::Invariant(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        Ok(FGAbGroup { free, torsion })
    }

    pub fn trivial() -> Self {
        FGAbGroup { free: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FGAbGroup { free: rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => Self::free(1),
            1 => Self::trivial(),
            _ => FGAbGroup { free: 0, torsion: alloc::vec![BigInt::from(n)] },
        }
    }

    /// From the nonzero Smith diagonal of a relation matrix of `generators`
    /// generators: units drop out, missing entries become free summands.
    pub fn from_smith(generators: usize, diagonal: &[BigInt]) -> Self {
        let torsion = diagonal.iter().filter(|d| !d.is_one()).map(|d| d.abs()).collect();
        FGAbGroup { free: generators - diagonal.len(), torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands in the invariant-factor decomposition.
    pub fn ngens(&self) -> usize {
        self.free + self.torsion.len()
    }

    pub fn is_finite(&self) -> bool {
        self.free == 0
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().fold(BigInt::one(), |a, t| a * t))
    }

    pub fn localize_at_p(&self, p: u64) -> FGAbGroup {
        localize_at_p(self, p)
    }
}

/// `v_p(n)` for nonzero `n`.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn p_part(n: &BigInt, p: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), valuation(n, p) as usize)
}

/// Tensoring with `Z_(p)`: free rank kept, torsion replaced by p-parts.
pub fn localize_at_p(g: &FGAbGroup, p: u64) -> FGAbGroup {
    let torsion = g.torsion.iter().map(|t| p_part(t, p)).filter(|t| !t.is_one()).collect();
    FGAbGroup { free: g.free, torsion }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl fmt::Display for FGAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        f.write_str(&parts.join(" + "))
    }
}
