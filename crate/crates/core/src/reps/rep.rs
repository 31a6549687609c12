//! Matrix representations of the small groups and equivariant maps.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::group::{build_group, embedding, q8_to_klein, FiniteGroup, GroupName};
use crate::exactalg::fp::FpMatrix;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Integers,
    LocalizedAt(u32),
    /// Prime fields only.
    FiniteField(u32),
}

impl Domain {
    fn check(self) -> Result<Self> {
        match self {
            Domain::LocalizedAt(p) | Domain::FiniteField(p) if !is_prime(p) => {
                Err(Error::InvalidArgument(format!("{p} is not prime")))
            }
            d => Ok(d),
        }
    }

    fn modulus(self) -> Option<u32> {
        match self {
            Domain::FiniteField(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_unit(self, x: &BigInt) -> bool {
        match self {
            Domain::Integers => x.abs().is_one(),
            Domain::LocalizedAt(p) | Domain::FiniteField(p) => !(x % p).is_zero(),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Integers => f.write_str("Z"),
            Domain::LocalizedAt(p) => write!(f, "Z_({p})"),
            Domain::FiniteField(q) => write!(f, "F_{q}"),
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d: &u32| (*d as u64) * (*d as u64) <= p as u64).all(|d| p % d != 0)
}

/// Dense integer matrix, row-major. Over a finite field entries are kept
/// reduced into `0..q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMat { rows: r, cols: c, data: rows.concat() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Product, reduced mod `q` when given.
    pub fn mul_mod(&self, o: &IntMat, q: Option<u32>) -> Result<IntMat> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!("{}×{} times {}×{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zero(self.rows, o.cols);
        let mut acc = vec![0i128; o.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as i128;
                if a != 0 {
                    for (x, &b) in acc.iter_mut().zip(o.row(k)) {
                        *x += a * b as i128;
                    }
                }
            }
            for (j, &x) in acc.iter().enumerate() {
                let v = match q {
                    Some(q) => x.rem_euclid(q as i128),
                    None => x,
                };
                out.data[i * o.cols + j] =
                    i64::try_from(v).map_err(|_| Error::OutOfRange("matrix entry exceeds 64 bits".into()))?;
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &IntMat) -> IntMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: i64) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn reduce(&self, q: u32) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.rem_euclid(q as i64)).collect() }
    }

    pub fn block_diag(&self, o: &IntMat) -> IntMat {
        let mut m = Self::zero(self.rows + o.rows, self.cols + o.cols);
        m.put(0, 0, self);
        m.put(self.rows, self.cols, o);
        m
    }

    /// Writes `b` with its top-left corner at `(r, c)`.
    pub fn put(&mut self, r: usize, c: usize, b: &IntMat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r + i, c + j, b.get(i, j));
            }
        }
    }

    pub fn kron(&self, o: &IntMat) -> IntMat {
        let mut m = Self::zero(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a != 0 {
                    m.put(i * o.rows, j * o.cols, &o.scale(a));
                }
            }
        }
        m
    }

    pub fn to_fp(&self, q: u32) -> FpMatrix {
        FpMatrix::from_i64(q, self.rows, self.cols, &self.data)
    }

    pub fn from_fp(m: &FpMatrix) -> IntMat {
        IntMat { rows: m.rows(), cols: m.cols(), data: m.data().iter().map(|&x| x as i64).collect() }
    }

    /// Exact determinant by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            sign
        } else {
            sign * &a[n - 1][n - 1]
        }
    }
}

/// A representation given by one matrix per designated generator, acting on
/// column vectors.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    group: FiniteGroup,
    domain: Domain,
    rank: usize,
    gens: Vec<IntMat>,
    /// The matrix of every group element.
    all: Vec<IntMat>,
}

impl PartialEq for MatrixRep {
    fn eq(&self, o: &Self) -> bool {
        self.group.name() == o.group.name() && self.domain == o.domain && self.gens == o.gens
    }
}

impl MatrixRep {
    /// Checks that the generator matrices extend to a homomorphism: every
    /// element gets the matrix of a shortest word and `ρ(a)ρ(g) = ρ(ag)` is
    /// verified for all elements `a` and generators `g`.
    pub fn new(group: FiniteGroup, domain: Domain, gens: Vec<IntMat>) -> Result<Self> {
        let domain = domain.check()?;
        if gens.len() != group.generators().len() {
            return Err(Error::Dimension(format!(
                "{} generator matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let rank = gens.first().map_or(0, |g| g.rows());
        if gens.iter().any(|g| g.rows() != rank || g.cols() != rank) {
            return Err(Error::Dimension("generator matrices must be square of one size".into()));
        }
        let q = domain.modulus();
        let gens: Vec<IntMat> = match q {
            Some(q) => gens.iter().map(|g| g.reduce(q)).collect(),
            None => gens,
        };
        let words = group.words();
        let mut all = Vec::with_capacity(group.order());
        for w in &words {
            let w = w.as_ref().ok_or_else(|| Error::Invariant("group not generated".into()))?;
            let mut m = IntMat::identity(rank);
            for &gi in w {
                m = m.mul_mod(&gens[gi], q)?;
            }
            all.push(m);
        }
        for a in 0..group.order() {
            for (gi, &g) in group.generators().iter().enumerate() {
                if all[a].mul_mod(&gens[gi], q)? != all[group.mul(a, g)] {
                    return Err(Error::Invariant(format!(
                        "generator matrices violate a relation of {}",
                        group.name()
                    )));
                }
            }
        }
        // ρ(g)ρ(g⁻¹) = 1 with entries in the domain: invertible over it
        let one = IntMat::identity(rank);
        for (gi, &g) in group.generators().iter().enumerate() {
            if gens[gi].mul_mod(&all[group.inv(g)], q)? != one {
                return Err(Error::Invariant(format!("generator matrix not invertible over {domain}")));
            }
        }
        Ok(MatrixRep { group, domain, rank, gens, all })
    }

    pub fn trivial(group: FiniteGroup, domain: Domain) -> Result<Self> {
        let gens = vec![IntMat::identity(1); group.generators().len()];
        Self::new(group, domain, gens)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generator_matrices(&self) -> &[IntMat] {
        &self.gens
    }

    pub fn matrix_of(&self, g: usize) -> &IntMat {
        &self.all[g]
    }

    pub(crate) fn modulus(&self) -> Option<u32> {
        self.domain.modulus()
    }

    fn same_setting(&self, o: &MatrixRep) -> Result<()> {
        if self.group.name() != o.group.name() || self.domain != o.domain {
            return Err(Error::InvalidArgument(format!(
                "representations over {}/{} and {}/{}",
                self.group.name(),
                self.domain,
                o.group.name(),
                o.domain
            )));
        }
        Ok(())
    }

    pub fn sum(&self, o: &MatrixRep) -> Result<MatrixRep> {
        self.same_setting(o)?;
        let gens = self.gens.iter().zip(&o.gens).map(|(a, b)| a.block_diag(b)).collect();
        MatrixRep::new(self.group.clone(), self.domain, gens)
    }

    pub fn tensor(&self, o: &MatrixRep) -> Result<MatrixRep> {
        self.same_setting(o)?;
        let gens = self.gens.iter().zip(&o.gens).map(|(a, b)| a.kron(b)).collect::<Vec<_>>();
        let gens = match self.modulus() {
            Some(q) => gens.iter().map(|g| g.reduce(q)).collect(),
            None => gens,
        };
        MatrixRep::new(self.group.clone(), self.domain, gens)
    }

    /// `g ↦ ρ(g⁻¹)ᵀ` in the dual basis.
    pub fn dual(&self) -> Result<MatrixRep> {
        let gens = self.group.generators().iter().map(|&g| self.all[self.group.inv(g)].transpose()).collect();
        MatrixRep::new(self.group.clone(), self.domain, gens)
    }

    pub fn reduce_mod(&self, q: u32) -> Result<MatrixRep> {
        if let Domain::FiniteField(r) = self.domain {
            if r != q {
                return Err(Error::InvalidArgument(format!("cannot reduce F_{r} modulo {q}")));
            }
        }
        MatrixRep::new(self.group.clone(), Domain::FiniteField(q), self.gens.clone())
    }

    /// Restriction to `h`, a subgroup by element inclusion.
    pub fn restrict(&self, h: &FiniteGroup) -> Result<MatrixRep> {
        let e = embedding(h, &self.group)?;
        let gens = h.generators().iter().map(|&x| self.all[e[x]].clone()).collect();
        MatrixRep::new(h.clone(), self.domain, gens)
    }

    /// `ind_H^G`, with `self` over `H`. The basis is `t_i ⊗ v` for left coset
    /// representatives `t_i`, blocked by coset.
    pub fn induce(&self, g: &FiniteGroup) -> Result<MatrixRep> {
        let h = &self.group;
        let e = embedding(h, g)?;
        let mut back = vec![None; g.order()];
        for (x, &y) in e.iter().enumerate() {
            back[y] = Some(x);
        }
        let reps = g.coset_reps(&e);
        let k = reps.len();
        let r = self.rank;
        let mut gens = Vec::new();
        for &x in g.generators() {
            let mut m = IntMat::zero(k * r, k * r);
            for (i, &ti) in reps.iter().enumerate() {
                let xt = g.mul(x, ti);
                let (j, hh) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(j, &tj)| back[g.mul(g.inv(tj), xt)].map(|hh| (j, hh)))
                    .ok_or_else(|| Error::Invariant("coset representatives do not cover".into()))?;
                m.put(j * r, i * r, &self.all[hh]);
            }
            gens.push(m);
        }
        MatrixRep::new(g.clone(), self.domain, gens)
    }

    /// Composition with a homomorphism `src → self.group` given on elements.
    pub fn pullback(&self, src: &FiniteGroup, hom: &[usize]) -> Result<MatrixRep> {
        let gens = src.generators().iter().map(|&x| self.all[hom[x]].clone()).collect();
        MatrixRep::new(src.clone(), self.domain, gens)
    }
}

/// Inflation along `ρ : Q8 → C2×C2`.
pub fn pullback_q8(rep: &MatrixRep) -> Result<MatrixRep> {
    if rep.group().name() != GroupName::C2xC2 {
        return Err(Error::InvalidArgument("pullback_q8 needs a C2xC2 representation".into()));
    }
    let q8 = build_group(GroupName::Q8)?;
    let rho = q8_to_klein(&q8, rep.group())?;
    rep.pullback(&q8, &rho)
}

/// An equivariant map, `target.rank × source.rank`.
#[derive(Clone, Debug)]
pub struct RepMap {
    source: MatrixRep,
    target: MatrixRep,
    matrix: IntMat,
}

impl RepMap {
    pub fn new(source: MatrixRep, target: MatrixRep, matrix: IntMat) -> Result<Self> {
        source.same_setting(&target)?;
        if matrix.rows() != target.rank || matrix.cols() != source.rank {
            return Err(Error::Dimension(format!(
                "map matrix is {}×{}, expected {}×{}",
                matrix.rows(),
                matrix.cols(),
                target.rank,
                source.rank
            )));
        }
        let q = source.modulus();
        let matrix = match q {
            Some(q) => matrix.reduce(q),
            None => matrix,
        };
        for (a, b) in source.gens.iter().zip(&target.gens) {
            if matrix.mul_mod(a, q)? != b.mul_mod(&matrix, q)? {
                return Err(Error::Invariant("map does not commute with the group action".into()));
            }
        }
        Ok(RepMap { source, target, matrix })
    }

    pub fn source(&self) -> &MatrixRep {
        &self.source
    }

    pub fn target(&self) -> &MatrixRep {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    pub fn compose(&self, after: &RepMap) -> Result<RepMap> {
        let m = after.matrix.mul_mod(&self.matrix, self.source.modulus())?;
        RepMap::new(self.source.clone(), after.target.clone(), m)
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.det()
    }
}
