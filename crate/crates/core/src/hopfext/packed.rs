//! Word-packed polynomials for the bulk `d∘d` evaluation.
//!
//! Exponents sit in 8-bit lanes of a `u128` (at most 16 variables, each
//! exponent below 256), so multiplying monomials is integer addition and the
//! numeric order of keys is lexicographic order of exponents. Coefficients are
//! `i128` with checked arithmetic; any overflow is reported, never wrapped.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::exactalg::Poly;

pub(crate) const MAX_VARS: usize = 16;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Packed {
    /// Sorted by key, no zero coefficients.
    terms: Vec<(u128, i128)>,
}

#[derive(Debug)]
pub(crate) struct Overflow;

pub(crate) fn pack(exps: &[u16]) -> Option<u128> {
    if exps.len() > MAX_VARS {
        return None;
    }
    let mut key = 0u128;
    for (i, &e) in exps.iter().enumerate() {
        if e > 255 {
            return None;
        }
        key |= (e as u128) << (8 * (MAX_VARS - 1 - i));
    }
    Some(key)
}

/// Whether adding two keys could carry between lanes.
fn lanes_fit(a: u128, b: u128) -> bool {
    (0..MAX_VARS).all(|i| ((a >> (8 * i)) & 0xff) + ((b >> (8 * i)) & 0xff) < 256)
}

impl Packed {
    pub(crate) fn one() -> Self {
        Packed { terms: alloc::vec![(0, 1)] }
    }

    pub(crate) fn from_poly(p: &Poly) -> Option<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            terms.push((pack(&m.0)?, c.to_i128()?));
        }
        terms.sort_unstable_by_key(|t| t.0);
        Some(Packed { terms })
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn mul(&self, other: &Packed) -> Result<Packed, Overflow> {
        let (small, big) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc = Packed::default();
        for &(k, c) in &small.terms {
            let mut shifted = Vec::with_capacity(big.terms.len());
            for &(kb, cb) in &big.terms {
                if !lanes_fit(k, kb) {
                    return Err(Overflow);
                }
                shifted.push((k + kb, c.checked_mul(cb).ok_or(Overflow)?));
            }
            acc = acc.merge(&Packed { terms: shifted }, 1)?;
        }
        Ok(acc)
    }

    /// `self + sign·other`
    pub(crate) fn merge(&self, other: &Packed, sign: i128) -> Result<Packed, Overflow> {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, b[j].1.checked_mul(sign).ok_or(Overflow)?));
                j += 1;
            } else {
                let c = a[i].1.checked_add(b[j].1.checked_mul(sign).ok_or(Overflow)?).ok_or(Overflow)?;
                if c != 0 {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Ok(Packed { terms: out })
    }
}
