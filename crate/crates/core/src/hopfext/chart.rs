//! Bigraded Ext charts, products and Δ-periodicity.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::algebroid::HopfAlgebroid;
use super::cobar::CobarComplex;
use crate::exactalg::fp::FpMatrix;
use crate::exactalg::homology::hom_is_injective;
use crate::exactalg::{FGAbGroup, Homology, LocalizedHomology, Poly, SparseIntMatrix};
use crate::{Error, Result};

/// A cocycle of bidegree `(s, n)`, as an element of `A[x_1..x_s]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    pub s: usize,
    pub n: usize,
    pub cocycle: Poly,
}

#[derive(Clone, Debug)]
pub struct ExtCell {
    pub local: FGAbGroup,
    homology: LocalizedHomology,
}

impl ExtCell {
    pub fn homology(&self) -> &LocalizedHomology {
        &self.homology
    }

    /// The group over `Z`, when the cell was computed integrally.
    pub fn integral(&self) -> Option<&FGAbGroup> {
        self.homology.integral_group()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChartFlag {
    /// Multiplication by Δ out of `(s, n)` has a kernel: a class that dies
    /// once Δ is inverted.
    DeltaTorsion { s: usize, n: usize },
    /// A distinguished class could not be named because its group is not
    /// cyclic of order `p`.
    Unnamed { name: String, s: usize, n: usize },
}

#[derive(Clone, Debug)]
pub struct ExtChart {
    prime: u64,
    s_max: usize,
    n_max: usize,
    algebroid: HopfAlgebroid,
    complex: CobarComplex,
    cells: BTreeMap<(usize, usize), ExtCell>,
    named: BTreeMap<String, ExtClass>,
    flags: Vec<ChartFlag>,
}

/// Ext chart over the Weierstraß algebroid localized at `p`. At odd primes
/// the short form `y² = x³ + a2x² + a4x + a6` is used, which has the same
/// cohomology once 2 is inverted and much smaller cobar groups.
pub fn ext_chart(s_max: usize, n_max: usize, p: u64) -> Result<ExtChart> {
    ext_chart_with_cap(s_max, n_max, p, super::DEFAULT_BASIS_CAP)
}

pub fn ext_chart_with_cap(s_max: usize, n_max: usize, p: u64, cap: usize) -> Result<ExtChart> {
    if !crate::exactalg::abgroup::is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    let alg = if p == 2 { HopfAlgebroid::weierstrass()? } else { HopfAlgebroid::short_weierstrass()? };
    ExtChart::compute(alg, s_max, n_max, p, cap)
}

pub const ALPHA: &str = "alpha";
pub const BETA: &str = "beta";
pub const DELTA: &str = "Delta";
pub const UNIT: &str = "1";

impl ExtChart {
    pub fn compute(algebroid: HopfAlgebroid, s_max: usize, n_max: usize, p: u64, cap: usize) -> Result<Self> {
        let complex = CobarComplex::build(&algebroid, s_max + 1, n_max, cap)?;
        let mut cells = BTreeMap::new();
        for s in 0..=s_max {
            for n in 0..=n_max {
                let d_out = complex.differential(s, n);
                let d_in = if s == 0 {
                    SparseIntMatrix::zero(complex.dim(0, n), 0)
                } else {
                    complex.differential(s - 1, n).clone()
                };
                let homology = LocalizedHomology::compute(d_out, &d_in, p)?;
                let local = homology.group().clone();
                cells.insert((s, n), ExtCell { local, homology });
            }
        }
        let mut chart =
            ExtChart { prime: p, s_max, n_max, algebroid, complex, cells, named: BTreeMap::new(), flags: Vec::new() };
        chart.name_classes()?;
        chart.flag_delta_torsion()?;
        Ok(chart)
    }

    fn name_classes(&mut self) -> Result<()> {
        let nv0 = self.algebroid.nvars(0);
        self.named.insert(UNIT.into(), ExtClass { s: 0, n: 0, cocycle: Poly::one(nv0) });
        if self.n_max >= 12 {
            let delta = ExtClass { s: 0, n: 12, cocycle: self.algebroid.discriminant().clone() };
            self.check_named(&delta)?;
            self.named.insert(DELTA.into(), delta);
        }
        if self.prime != 3 {
            return Ok(());
        }
        for (name, s, n) in [(ALPHA, 1, 2), (BETA, 2, 6)] {
            if s > self.s_max || n > self.n_max {
                continue;
            }
            let cell = &self.cells[&(s, n)];
            if cell.local != FGAbGroup::cyclic(3) {
                self.flags.push(ChartFlag::Unnamed { name: name.into(), s, n });
                continue;
            }
            let v = cell.homology.generator(0);
            let class = ExtClass { s, n, cocycle: self.complex.to_poly(s, n, &v) };
            self.check_named(&class)?;
            self.named.insert(name.into(), class);
        }
        Ok(())
    }

    fn check_named(&self, c: &ExtClass) -> Result<()> {
        if self.is_zero(c)? {
            return Err(Error::Invariant(format!("named class at ({},{}) is zero", c.s, c.n)));
        }
        Ok(())
    }

    /// Flags every `(s, n)` with `s ≥ 1`, `n + 12 ≤ n_max` where Δ-multiplication
    /// fails to be injective.
    fn flag_delta_torsion(&mut self) -> Result<()> {
        if self.n_max < 12 || !self.named.contains_key(DELTA) {
            return Ok(());
        }
        let mut flags = Vec::new();
        for s in 1..=self.s_max {
            for n in 0..=self.n_max - 12 {
                let (m, src, tgt) = self.delta_map(s, n)?;
                if !hom_is_injective(&src, &tgt, &m)? {
                    flags.push(ChartFlag::DeltaTorsion { s, n });
                }
            }
        }
        self.flags.extend(flags);
        Ok(())
    }

    /// Matrix of `Δ· : Ext^{s,n} → Ext^{s,n+12}` in generator coordinates,
    /// with the source and target moduli.
    pub fn delta_map(&self, s: usize, n: usize) -> Result<(SparseIntMatrix, Vec<BigInt>, Vec<BigInt>)> {
        let delta = self.class(DELTA)?.clone();
        let src = self.cell(s, n)?;
        let tgt = self.cell(s, n + 12)?;
        let (src_mod, tgt_mod) = (src.homology.moduli(), tgt.homology.moduli());
        let mut m = SparseIntMatrix::zero(tgt_mod.len(), src_mod.len());
        for col in 0..src_mod.len() {
            let v = src.homology.generator(col);
            let x = ExtClass { s, n, cocycle: self.complex.to_poly(s, n, &v) };
            let y = self.product(&delta, &x)?;
            for (row, c) in self.coordinates(&y)?.into_iter().enumerate() {
                if !c.is_zero() {
                    m.set(row, col, c);
                }
            }
        }
        Ok((m, src_mod, tgt_mod))
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn algebroid(&self) -> &HopfAlgebroid {
        &self.algebroid
    }

    pub fn complex(&self) -> &CobarComplex {
        &self.complex
    }

    pub fn cells(&self) -> &BTreeMap<(usize, usize), ExtCell> {
        &self.cells
    }

    pub fn cell(&self, s: usize, n: usize) -> Result<&ExtCell> {
        self.cells.get(&(s, n)).ok_or_else(|| Error::OutOfRange(format!("({s},{n}) is outside the chart")))
    }

    /// `Ext^{s,n} ⊗ Z_(p)`.
    pub fn group(&self, s: usize, n: usize) -> Result<&FGAbGroup> {
        Ok(&self.cell(s, n)?.local)
    }

    /// `Ext^{s,n}` over `Z`, recomputed through integral Smith forms.
    pub fn integral_group(&self, s: usize, n: usize) -> Result<FGAbGroup> {
        self.check_range(s, n)?;
        let d_in = if s == 0 {
            SparseIntMatrix::zero(self.complex.dim(0, n), 0)
        } else {
            self.complex.differential(s - 1, n).clone()
        };
        Ok(Homology::compute(self.complex.differential(s, n), &d_in)?.group().clone())
    }

    pub fn named(&self) -> &BTreeMap<String, ExtClass> {
        &self.named
    }

    pub fn class(&self, name: &str) -> Result<&ExtClass> {
        self.named.get(name).ok_or_else(|| Error::OutOfRange(format!("no class named {name} in this chart")))
    }

    /// Names of the distinguished classes living at `(s, n)`.
    pub fn names_at(&self, s: usize, n: usize) -> Vec<String> {
        self.named.iter().filter(|(_, c)| c.s == s && c.n == n).map(|(k, _)| k.to_string()).collect()
    }

    pub fn flags(&self) -> &[ChartFlag] {
        &self.flags
    }

    fn check_range(&self, s: usize, n: usize) -> Result<()> {
        if s > self.s_max || n > self.n_max {
            return Err(Error::OutOfRange(format!(
                "({s},{n}) is outside the chart range ({},{})",
                self.s_max, self.n_max
            )));
        }
        Ok(())
    }

    /// Coordinates of the class in `Ext^{s,n} ⊗ Z_(p)`, generator order.
    pub fn coordinates(&self, c: &ExtClass) -> Result<Vec<BigInt>> {
        self.check_range(c.s, c.n)?;
        let v = self.complex.to_vector(c.s, c.n, &c.cocycle)?;
        self.cell(c.s, c.n)?.homology.coordinates(&v)
    }

    /// Whether the class vanishes after localization at `p`.
    pub fn is_zero(&self, c: &ExtClass) -> Result<bool> {
        Ok(self.coordinates(c)?.iter().all(|x| x.is_zero()))
    }

    /// Cup product `x · d_0^{s_x}(y)` on cocycles.
    pub fn product(&self, x: &ExtClass, y: &ExtClass) -> Result<ExtClass> {
        let (s, n) = (x.s + y.s, x.n + y.n);
        self.check_range(x.s, x.n)?;
        self.check_range(y.s, y.n)?;
        self.check_range(s, n)?;
        let mut shifted = self.algebroid.widen(&y.cocycle, y.s);
        for q in y.s..s {
            shifted = shifted.substitute(&self.algebroid.coface(q, 0));
        }
        let left = self.algebroid.widen(&x.cocycle, s);
        Ok(ExtClass { s, n, cocycle: &left * &shifted })
    }

    /// Whether `Δ·` out of `(s, n)` is an isomorphism after localization: the
    /// groups agree and the map is onto modulo `p`.
    pub fn delta_is_iso(&self, s: usize, n: usize) -> Result<bool> {
        let src = self.group(s, n)?;
        let tgt = self.group(s, n + 12)?;
        if src != tgt {
            return Ok(false);
        }
        let (m, _, tgt_mod) = self.delta_map(s, n)?;
        if tgt_mod.is_empty() {
            return Ok(true);
        }
        let p = self.prime as u32;
        let mut fm = FpMatrix::zero(p, m.rows(), m.cols());
        for (i, j, v) in m.entries() {
            let r = v.mod_floor(&BigInt::from(p));
            fm.set(i, j, u32::try_from(r).expect("reduced mod p"));
        }
        Ok(fm.rank() == tgt_mod.len())
    }
}

/// The Δ-periodic value of `Ext^{s,n} ⊗ Z_(p)`: requires the two Δ-multiplications
/// `(s,n) → (s,n+12) → (s,n+24)` to be isomorphisms.
pub fn delta_stabilize(chart: &ExtChart, s: usize, n: usize) -> Result<FGAbGroup> {
    chart.check_range(s, n + 24)?;
    if chart.delta_is_iso(s, n)? && chart.delta_is_iso(s, n + 12)? {
        Ok(chart.group(s, n)?.clone())
    } else {
        Err(Error::NotStabilized { s, n })
    }
}

/// `yoneda_product` over a chart's range.
pub fn yoneda_product(chart: &ExtChart, x: &ExtClass, y: &ExtClass) -> Result<ExtClass> {
    chart.product(x, y)
}
