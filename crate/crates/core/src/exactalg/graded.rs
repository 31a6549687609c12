//! Graded polynomial rings and monomial enumeration.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::{Monomial, Poly};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    LocalizedAt(u64),
    FiniteField(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    names: Vec<String>,
    degrees: Vec<u32>,
    coefficients: Coefficients,
    inverted: Vec<Poly>,
}

impl GradedRing {
    pub fn new(names: &[&str], degrees: &[u32], coefficients: Coefficients) -> Result<Self> {
        if names.len() != degrees.len() {
            return Err(Error::Dimension(format!(
                "{} generator names for {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::Invariant(format!("generator {} has degree 0", names[i])));
        }
        Ok(GradedRing {
            names: names.iter().map(|s| s.to_string()).collect(),
            degrees: degrees.to_vec(),
            coefficients,
            inverted: Vec::new(),
        })
    }

    /// Records a homogeneous element as inverted (e.g. the discriminant).
    pub fn invert(mut self, p: Poly) -> Result<Self> {
        self.check(&p)?;
        self.inverted.push(p);
        Ok(self)
    }

    pub fn ngens(&self) -> usize {
        self.degrees.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn inverted(&self) -> &[Poly] {
        &self.inverted
    }

    pub fn gen(&self, i: usize) -> Poly {
        Poly::var(self.ngens(), i)
    }

    /// Looks a generator up by name.
    pub fn gen_named(&self, name: &str) -> Option<Poly> {
        self.names.iter().position(|n| n == name).map(|i| self.gen(i))
    }

    /// Rejects elements of the wrong arity or mixed degree.
    pub fn check(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.ngens() {
            return Err(Error::Dimension(format!(
                "element in {} variables, ring has {}",
                p.nvars(),
                self.ngens()
            )));
        }
        if !p.is_homogeneous(&self.degrees) {
            return Err(Error::Invariant(format!("element {p} is not homogeneous")));
        }
        Ok(())
    }

    pub fn degree_of(&self, p: &Poly) -> Option<u64> {
        p.homogeneous_degree(&self.degrees)
    }

    pub fn monomials_of_degree(&self, n: u64) -> Vec<Monomial> {
        monomials_of_degree(&self.degrees, n)
    }

    pub fn render(&self, p: &Poly) -> String {
        render_with(p, &self.names)
    }
}

/// All exponent vectors of weighted degree `n`, lexicographically descending
/// (`x0^k` first). Degree 0 gives the single constant monomial.
pub fn monomials_of_degree(weights: &[u32], n: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(weights.len());
    fill(weights, n, &mut cur, &mut out);
    out
}

fn fill(weights: &[u32], rest: u64, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    let i = cur.len();
    if i == weights.len() {
        if rest == 0 {
            out.push(Monomial(cur.clone()));
        }
        return;
    }
    let w = weights[i] as u64;
    if i + 1 == weights.len() {
        if rest % w == 0 {
            cur.push((rest / w) as u16);
            out.push(Monomial(cur.clone()));
            cur.pop();
        }
        return;
    }
    for e in (0..=rest / w).rev() {
        cur.push(e as u16);
        fill(weights, rest - e * w, cur, out);
        cur.pop();
    }
}

/// Human-readable rendering using generator names.
pub fn render_with(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut s = String::new();
    let terms: Vec<_> = p.terms().collect();
    for (k, (m, c)) in terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        if k > 0 {
            s.push_str(if neg { " - " } else { " + " });
        } else if neg {
            s.push('-');
        }
        let a: BigInt = c.abs();
        let mut factors = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], e)),
            }
        }
        if factors.is_empty() {
            s.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                s.push_str(&a.to_string());
                s.push('*');
            }
            s.push_str(&factors.join("*"));
        }
    }
    s
}
