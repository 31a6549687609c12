//! Sparse multivariate polynomials with big-integer coefficients.

use alloc::collections::btree_map::{BTreeMap, Entry};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exponent vector. The derived order is plain lexicographic on exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn degree(&self, weights: &[u32]) -> u64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    /// Exponents restricted to the variable range `lo..hi`.
    pub fn block(&self, lo: usize, hi: usize) -> &[u16] {
        &self.0[lo..hi]
    }
}

/// A polynomial in a fixed number of variables. Zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::monomial(Monomial::var(nvars, i), BigInt::one())
    }

    pub fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    /// Builds from `(coefficient, exponents)` pairs; handy for literals.
    pub fn from_terms(nvars: usize, terms: &[(i64, &[u16])]) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Monomial(e.to_vec()), BigInt::from(*c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Poly, c: &BigInt) {
        assert_eq!(self.nvars, other.nvars);
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        let mut p = Poly::zero(self.nvars);
        if c.is_zero() {
            return p;
        }
        for (m, a) in &self.terms {
            p.terms.insert(m.clone(), a * c);
        }
        p
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Poly {
        let mut p = Poly::zero(self.nvars);
        if c.is_zero() {
            return p;
        }
        for (n, a) in &self.terms {
            p.terms.insert(n.mul(m), a * c);
        }
        p
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `Some(n)` if every term has weighted degree `n`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut it = self.terms.keys().map(|m| m.degree(weights));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        self.is_zero() || self.homogeneous_degree(weights).is_some()
    }

    /// Renames variables: variable `i` of `self` becomes variable `map[i]` of
    /// a ring with `nvars` variables.
    pub fn relabel(&self, map: &[usize], nvars: usize) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut p = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Applies the ring map sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        Substitution::new(images).apply(self)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

/// A ring homomorphism out of a polynomial ring, given on variables, with a
/// cache of powers of the images. Reuse one instance across many monomials.
pub struct Substitution<'a> {
    images: &'a [Poly],
    target: usize,
    powers: Vec<Vec<Poly>>,
}

impl<'a> Substitution<'a> {
    pub fn new(images: &'a [Poly]) -> Self {
        let target = images.first().map_or(0, |p| p.nvars);
        assert!(images.iter().all(|p| p.nvars == target), "images live in different rings");
        Substitution { images, target, powers: vec![Vec::new(); images.len()] }
    }

    fn power(&mut self, v: usize, e: u16) -> &Poly {
        let cache = &mut self.powers[v];
        if cache.is_empty() {
            cache.push(Poly::one(self.target));
        }
        while cache.len() <= e as usize {
            let next = cache.last().unwrap() * &self.images[v];
            cache.push(next);
        }
        &cache[e as usize]
    }

    pub fn apply_monomial(&mut self, m: &Monomial) -> Poly {
        assert_eq!(m.nvars(), self.images.len());
        let mut acc: Option<Poly> = None;
        for (v, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = self.power(v, e).clone();
            acc = Some(match acc {
                None => p,
                Some(a) => &a * &p,
            });
        }
        acc.unwrap_or_else(|| Poly::one(self.target))
    }

    pub fn apply(&mut self, p: &Poly) -> Poly {
        let mut out = Poly::zero(self.target);
        for (m, c) in &p.terms {
            let img = self.apply_monomial(m);
            out.add_scaled(&img, c);
        }
        out
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(rhs, &BigInt::one());
        p
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(rhs, &-BigInt::one());
        p
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigInt::one())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut p = Poly::zero(self.nvars);
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        for (m, c) in &small.terms {
            for (n, d) in &big.terms {
                p.add_term(m.mul(n), c * d);
            }
        }
        p
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            let unit = a.is_one();
            if !unit || m.is_one() {
                write!(f, "{a}")?;
            }
            let mut first = unit;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                write!(f, "x{i}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
