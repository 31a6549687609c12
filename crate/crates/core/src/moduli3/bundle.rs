//! Standard summands, their cohomology and Ext tables, duals and tensors.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::{Error, Result};

/// `Pic` is `Z/12`, generated by `ω`.
pub const PIC_ORDER: i64 = 12;
/// `f^*ω^4` is trivial, so `f_*f^*O ⊗ ω^k` only depends on `k mod 4`.
pub const FPUSH_PERIOD: i64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Line,
    Ealpha,
    FPush,
}

impl Kind {
    pub fn rank(self) -> usize {
        match self {
            Kind::Line => 1,
            Kind::Ealpha => 2,
            Kind::FPush => 3,
        }
    }

    pub fn period(self) -> i64 {
        match self {
            Kind::FPush => FPUSH_PERIOD,
            _ => PIC_ORDER,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Line => "Line",
            Kind::Ealpha => "Ealpha",
            Kind::FPush => "FPush",
        }
    }
}

impl core::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Line" | "line" => Ok(Kind::Line),
            "Ealpha" | "ealpha" | "Ea" => Ok(Kind::Ealpha),
            "FPush" | "fpush" => Ok(Kind::FPush),
            _ => Err(Error::InvalidArgument(format!("unknown summand kind {s}"))),
        }
    }
}

/// `ω^k`, `E_α ⊗ ω^k` or `f_*f^*O ⊗ ω^k`. The twist is kept as given;
/// comparisons use its residue.
#[derive(Clone, Copy, Debug)]
pub struct StandardSummand {
    pub kind: Kind,
    pub twist: i64,
}

impl StandardSummand {
    pub fn line(k: i64) -> Self {
        StandardSummand { kind: Kind::Line, twist: k }
    }

    pub fn ealpha(k: i64) -> Self {
        StandardSummand { kind: Kind::Ealpha, twist: k }
    }

    pub fn fpush(k: i64) -> Self {
        StandardSummand { kind: Kind::FPush, twist: k }
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn residue(&self) -> i64 {
        self.twist.rem_euclid(self.kind.period())
    }

    fn key(&self) -> (Kind, i64) {
        (self.kind, self.residue())
    }

    pub fn twisted(&self, j: i64) -> Self {
        StandardSummand { kind: self.kind, twist: self.twist + j }
    }

    pub fn dual(&self) -> Self {
        match self.kind {
            // Ě_α ≅ E_α ⊗ ω²
            Kind::Ealpha => StandardSummand::ealpha(2 - self.twist),
            _ => StandardSummand { kind: self.kind, twist: -self.twist },
        }
    }
}

impl PartialEq for StandardSummand {
    fn eq(&self, o: &Self) -> bool {
        self.key() == o.key()
    }
}
impl Eq for StandardSummand {}
impl PartialOrd for StandardSummand {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for StandardSummand {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}
impl Hash for StandardSummand {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.key().hash(h)
    }
}

impl fmt::Display for StandardSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |k: i64| if k == 0 { String::new() } else { format!("⊗ω^{k}") };
        match self.kind {
            Kind::Line if self.twist == 0 => f.write_str("O"),
            Kind::Line => write!(f, "ω^{}", self.twist),
            Kind::Ealpha => write!(f, "E_α{}", w(self.twist)),
            Kind::FPush => write!(f, "f_*f^*O{}", w(self.twist)),
        }
    }
}

/// A direct sum of standard summands. The listing order is kept (class
/// vectors refer to it); equality and ordering ignore it.
#[derive(Clone, Debug, Default)]
pub struct StandardBundle {
    summands: Vec<StandardSummand>,
}

impl StandardBundle {
    pub fn new(summands: Vec<StandardSummand>) -> Self {
        StandardBundle { summands }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(s: StandardSummand) -> Self {
        StandardBundle { summands: alloc::vec![s] }
    }

    pub fn summands(&self) -> &[StandardSummand] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.summands.iter().map(|s| s.rank()).sum()
    }

    pub fn with(&self, s: StandardSummand) -> Self {
        let mut v = self.summands.clone();
        v.push(s);
        StandardBundle { summands: v }
    }

    pub fn without(&self, i: usize) -> Self {
        let mut v = self.summands.clone();
        v.remove(i);
        StandardBundle { summands: v }
    }

    pub fn plus(&self, o: &StandardBundle) -> Self {
        let mut v = self.summands.clone();
        v.extend_from_slice(&o.summands);
        StandardBundle { summands: v }
    }

    pub fn twisted(&self, j: i64) -> Self {
        StandardBundle { summands: self.summands.iter().map(|s| s.twisted(j)).collect() }
    }

    /// Summands in canonical order (kind, residue).
    pub fn canonical(&self) -> Vec<StandardSummand> {
        let mut v = self.summands.clone();
        v.sort();
        v
    }

    /// Canonical form with twists replaced by their residues.
    pub fn reduced(&self) -> Self {
        StandardBundle {
            summands: self.canonical().into_iter().map(|s| StandardSummand { kind: s.kind, twist: s.residue() }).collect(),
        }
    }

    pub fn count(&self, kind: Kind) -> usize {
        self.summands.iter().filter(|s| s.kind == kind).count()
    }
}

impl PartialEq for StandardBundle {
    fn eq(&self, o: &Self) -> bool {
        self.canonical() == o.canonical()
    }
}
impl Eq for StandardBundle {}
impl PartialOrd for StandardBundle {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for StandardBundle {
    fn cmp(&self, o: &Self) -> Ordering {
        self.canonical().cmp(&o.canonical())
    }
}
impl Hash for StandardBundle {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.canonical().hash(h)
    }
}

impl fmt::Display for StandardBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (i, s) in self.canonical().iter().enumerate() {
            if i > 0 {
                f.write_str(" ⊕ ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

fn check_degree(i: usize) -> Result<()> {
    if i == 1 || i == 2 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("cohomological degree {i} (only 1 and 2 are tabulated)")))
    }
}

fn is(x: i64, r: i64) -> bool {
    (x - r).rem_euclid(PIC_ORDER) == 0
}

/// `dim_F3 H^i(s ⊗ ω^j)`, `i ∈ {1, 2}`.
pub fn summand_cohomology(s: &StandardSummand, i: usize, j: i64) -> Result<usize> {
    check_degree(i)?;
    let m = s.twist + j;
    let hit = match (s.kind, i) {
        (Kind::Line, 1) => is(m, 2),
        (Kind::Line, _) => is(m, 6),
        (Kind::Ealpha, 1) => is(m, 4),
        (Kind::Ealpha, _) => is(m, 6),
        (Kind::FPush, _) => false,
    };
    Ok(hit as usize)
}

pub fn cohomology_dim(b: &StandardBundle, i: usize, j: i64) -> Result<usize> {
    check_degree(i)?;
    b.summands.iter().map(|s| summand_cohomology(s, i, j)).sum()
}

/// One entry of the Ext table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtEntry {
    pub dim: usize,
    /// Read off through `E_α ⊗ E_α ≅ f_*f^*O ⊕ ω^{−2}` rather than stated
    /// directly (the `Ext²(E_α, E_α)` entries).
    pub derived: bool,
}

/// `dim_F3 Ext^i(s, t)`, `i ∈ {1, 2}`.
pub fn summand_ext(s: &StandardSummand, t: &StandardSummand, i: usize) -> Result<ExtEntry> {
    check_degree(i)?;
    let (a, b) = (s.twist, t.twist);
    let d = a - b;
    let (hit, derived) = match (s.kind, t.kind) {
        (Kind::FPush, _) | (_, Kind::FPush) => (false, false),
        // Ext^i(ω^a, ω^b) = H^i(ω^{b−a})
        (Kind::Line, Kind::Line) => (if i == 1 { is(b - a, 2) } else { is(b - a, 6) }, false),
        // Ext^i(ω^{a−b}, E_α)
        (Kind::Line, Kind::Ealpha) => (if i == 1 { is(d, -4) } else { is(d, -6) }, false),
        // Ext^i(E_α ⊗ ω^{a−b}, O) ≅ Ext^i(ω^{a−b−2}, E_α)
        (Kind::Ealpha, Kind::Line) => (if i == 1 { is(d, -2) } else { is(d, -4) }, false),
        // Ext^i(E_α ⊗ ω^d, E_α) ≅ Ext^i(ω^{d−2}, E_α ⊗ E_α) ≅ H^i(ω^{−d})
        (Kind::Ealpha, Kind::Ealpha) => {
            if i == 1 {
                (is(d, -2), false)
            } else {
                (is(d, 6), true)
            }
        }
    };
    Ok(ExtEntry { dim: hit as usize, derived: derived && hit })
}

pub fn ext_entry(x: &StandardBundle, y: &StandardBundle, i: usize) -> Result<ExtEntry> {
    check_degree(i)?;
    let mut dim = 0;
    let mut derived = false;
    for s in &x.summands {
        for t in &y.summands {
            let e = summand_ext(s, t, i)?;
            dim += e.dim;
            derived |= e.derived;
        }
    }
    Ok(ExtEntry { dim, derived })
}

pub fn ext_dim(x: &StandardBundle, y: &StandardBundle, i: usize) -> Result<usize> {
    Ok(ext_entry(x, y, i)?.dim)
}

pub fn dual(b: &StandardBundle) -> StandardBundle {
    StandardBundle { summands: b.summands.iter().map(|s| s.dual()).collect() }
}

pub fn tensor_summands(s: &StandardSummand, t: &StandardSummand) -> Result<StandardBundle> {
    let k = s.twist + t.twist;
    use StandardSummand as S;
    Ok(match (s.kind, t.kind) {
        (Kind::Line, _) | (_, Kind::Line) => {
            let other = if s.kind == Kind::Line { t } else { s };
            StandardBundle::single(StandardSummand { kind: other.kind, twist: k })
        }
        (Kind::Ealpha, Kind::Ealpha) => StandardBundle::new(alloc::vec![S::fpush(k), S::line(k - 2)]),
        (Kind::Ealpha, Kind::FPush) | (Kind::FPush, Kind::Ealpha) => {
            StandardBundle::new(alloc::vec![S::fpush(k), S::fpush(k - 2)])
        }
        (Kind::FPush, Kind::FPush) => {
            return Err(Error::Unsupported("f_*f^*O ⊗ f_*f^*O is not determined".into()))
        }
    })
}

pub fn tensor(x: &StandardBundle, y: &StandardBundle) -> Result<StandardBundle> {
    let mut out = StandardBundle::zero();
    for s in &x.summands {
        for t in &y.summands {
            out = out.plus(&tensor_summands(s, t)?);
        }
    }
    Ok(out)
}

/// Whether `H^1(b ⊗ ω^j) = 0` for every `j`.
pub fn h1_vanishes(b: &StandardBundle) -> bool {
    (0..PIC_ORDER).all(|j| cohomology_dim(b, 1, j) == Ok(0))
}

/// The implication "H^1 vanishes in every twist ⇒ rank ≡ 0 mod 3".
pub fn rank_h1_corollary_check(b: &StandardBundle) -> bool {
    !h1_vanishes(b) || b.rank() % 3 == 0
}
