//! Rewriting iterated extensions of line bundles into direct sums.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::bundle::{summand_ext, Kind, StandardBundle, StandardSummand, PIC_ORDER};
use crate::{Error, Result};

/// The class of `0 → ω^base → X → top → 0`, one F3 value per summand of
/// `top` in listing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClassVector {
    base: i64,
    top: StandardBundle,
    components: Vec<u8>,
}

impl ExtClassVector {
    /// Rejects values outside F3 and nonzero values where
    /// `Ext^1(summand, ω^base)` vanishes.
    pub fn new(base: i64, top: StandardBundle, components: Vec<u8>) -> Result<Self> {
        if components.len() != top.len() {
            return Err(Error::MalformedClass(format!(
                "{} components for {} summands",
                components.len(),
                top.len()
            )));
        }
        let line = StandardSummand::line(base);
        for (s, &c) in top.summands().iter().zip(&components) {
            if c >= 3 {
                return Err(Error::MalformedClass(format!("component {c} is not in F3")));
            }
            if c != 0 && summand_ext(s, &line, 1)?.dim == 0 {
                return Err(Error::MalformedClass(format!("Ext^1({s}, ω^{base}) = 0 but the component is {c}")));
            }
        }
        Ok(ExtClassVector { base, top, components })
    }

    pub fn split(base: i64, top: StandardBundle) -> Self {
        let n = top.len();
        ExtClassVector { base, top, components: vec![0; n] }
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn top(&self) -> &StandardBundle {
        &self.top
    }

    pub fn components(&self) -> &[u8] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    fn support(&self) -> Vec<bool> {
        self.components.iter().map(|&c| c != 0).collect()
    }
}

/// Stages bottom-up: stage `k` extends its top by a line, and the top of
/// stage `k+1` must be a normal form of stages `0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedExtension {
    stages: Vec<ExtClassVector>,
}

impl IteratedExtension {
    pub fn new(stages: Vec<ExtClassVector>) -> Result<Self> {
        if stages.is_empty() {
            return Err(Error::MalformedClass("no stages".into()));
        }
        for w in stages.windows(2) {
            if w[1].top.rank() != w[0].top.rank() + 1 {
                return Err(Error::MalformedClass("stage tops must grow by one line at a time".into()));
            }
        }
        Ok(IteratedExtension { stages })
    }

    pub fn stages(&self) -> &[ExtClassVector] {
        &self.stages
    }

    pub fn rank(&self) -> usize {
        self.stages.last().map_or(0, |s| s.top.rank() + 1)
    }
}

/// A choice for a residual class the input does not determine: zero, or
/// nonzero on the `k`-th eligible summand (in listing order).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Choice {
    Zero,
    Use(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resolver {
    /// Every choice, each giving its own branch.
    EnumerateAll,
    /// Choices consumed in order.
    Fixed(Vec<Choice>),
    /// Every residual class is zero.
    Zero,
}

/// Which summand to use when a class is nonzero on several candidates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Priority {
    #[default]
    SmallestTwist,
    LargestTwist,
    FirstListed,
}

impl Priority {
    fn pick(self, top: &StandardBundle, candidates: &[usize]) -> usize {
        let s = top.summands();
        match self {
            Priority::FirstListed => candidates[0],
            Priority::SmallestTwist => *candidates.iter().min_by_key(|&&i| s[i].twist).expect("nonempty"),
            Priority::LargestTwist => *candidates.iter().rev().max_by_key(|&&i| s[i].twist).expect("nonempty"),
        }
    }
}

struct Session {
    resolver: Resolver,
    cursor: usize,
    priority: Priority,
}

impl Session {
    fn choices(&mut self, eligible: usize) -> Result<Vec<Choice>> {
        if eligible == 0 {
            return Ok(vec![Choice::Zero]);
        }
        match &self.resolver {
            Resolver::EnumerateAll => {
                Ok(core::iter::once(Choice::Zero).chain((0..eligible).map(Choice::Use)).collect())
            }
            Resolver::Zero => Ok(vec![Choice::Zero]),
            Resolver::Fixed(v) => {
                let c = *v.get(self.cursor).ok_or(Error::ResolverExhausted)?;
                self.cursor += 1;
                if let Choice::Use(k) = c {
                    if k >= eligible {
                        return Err(Error::MalformedClass(format!(
                            "resolver chose summand {k} of {eligible} eligible"
                        )));
                    }
                }
                Ok(vec![c])
            }
        }
    }

    /// Normal forms of `0 → ω^q → X → top → 0` for a class with the given
    /// support.
    fn stage(&mut self, q: i64, top: &StandardBundle, support: &[bool]) -> Result<BTreeSet<StandardBundle>> {
        let s = top.summands();
        let cong = |x: i64, r: i64| (x - r).rem_euclid(PIC_ORDER) == 0;
        if !support.iter().any(|&b| b) {
            return Ok(BTreeSet::from([top.with(StandardSummand::line(q))]));
        }
        // the only nonsplit extension of ω^q by E_α⊗ω^{q−2} is f_*f^*O⊗ω^q
        let ea: Vec<usize> =
            (0..s.len()).filter(|&i| support[i] && s[i].kind == Kind::Ealpha && cong(s[i].twist, q - 2)).collect();
        if !ea.is_empty() {
            let i = self.priority.pick(top, &ea);
            return Ok(BTreeSet::from([top.without(i).with(StandardSummand::fpush(q))]));
        }
        let lines: Vec<usize> =
            (0..s.len()).filter(|&i| support[i] && s[i].kind == Kind::Line && cong(s[i].twist, q - 2)).collect();
        if lines.is_empty() {
            return Err(Error::MalformedClass("class supported where Ext^1 vanishes".into()));
        }
        // merge into E_α ⊗ ω^q, then the residual class in Ext^1(rest, E_α⊗ω^q)
        let i = self.priority.pick(top, &lines);
        let rest = top.without(i);
        let r = rest.summands();
        let eligible: Vec<usize> = (0..r.len())
            .filter(|&j| match r[j].kind {
                Kind::Line => cong(r[j].twist, q - 4),
                Kind::Ealpha => cong(r[j].twist, q - 2),
                Kind::FPush => false,
            })
            .collect();
        let mut out = BTreeSet::new();
        for c in self.choices(eligible.len())? {
            match c {
                Choice::Zero => {
                    out.insert(rest.with(StandardSummand::ealpha(q)));
                }
                Choice::Use(k) => {
                    let j = eligible[k];
                    let z = rest.without(j).with(StandardSummand::fpush(q));
                    if r[j].kind == Kind::Line {
                        out.insert(z);
                    } else {
                        // X is an extension of Z by ω^{q−2}, with a fresh class
                        let zs = z.summands();
                        let line = StandardSummand::line(q - 2);
                        let mut cands = Vec::new();
                        for (t, s) in zs.iter().enumerate() {
                            if summand_ext(s, &line, 1)?.dim > 0 {
                                cands.push(t);
                            }
                        }
                        for c2 in self.choices(cands.len())? {
                            let mut sup = vec![false; zs.len()];
                            if let Choice::Use(k2) = c2 {
                                sup[cands[k2]] = true;
                            }
                            out.extend(self.stage(q - 2, &z, &sup)?);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// All normal forms of `e` under the resolver's residual choices.
pub fn normalize(e: &IteratedExtension, resolver: Resolver, priority: Priority) -> Result<BTreeSet<StandardBundle>> {
    let mut session = Session { resolver, cursor: 0, priority };
    let mut previous: Option<BTreeSet<StandardBundle>> = None;
    for (k, st) in e.stages.iter().enumerate() {
        if let Some(prev) = &previous {
            if !prev.contains(&st.top) {
                return Err(Error::MalformedClass(format!(
                    "top of stage {k} is not a normal form of the stages below it"
                )));
            }
        }
        previous = Some(session.stage(st.base, &st.top, &st.support())?);
    }
    Ok(previous.expect("at least one stage"))
}

/// Normal forms of a single extension `0 → ω^base → X → top → 0`.
pub fn normalize_stage(x: &ExtClassVector, resolver: Resolver, priority: Priority) -> Result<BTreeSet<StandardBundle>> {
    normalize(&IteratedExtension { stages: vec![x.clone()] }, resolver, priority)
}

/// A random iterated extension of total rank at most `max_rank` (at least
/// 2). Bases are biased towards twists where Ext^1 can be nonzero, and each
/// stage's top is drawn from the normal forms of the stages below it.
pub fn random_iterated_extension(seed: u64, max_rank: usize) -> Result<IteratedExtension> {
    use rand_chacha::ChaCha8Rng;
    use rand_core::{RngCore, SeedableRng};
    if max_rank < 2 {
        return Err(Error::InvalidArgument("an extension has rank at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut below = |n: u32| (rng.next_u32() % n) as usize;
    let twist = |r: usize| r as i64 - 12;
    // the first top, of rank below max_rank
    let mut top = StandardBundle::zero();
    let first_rank = 1 + below((max_rank - 1).min(4) as u32);
    while top.rank() < first_rank {
        let room = first_rank - top.rank();
        let kind = match below(3) {
            2 if room >= 3 => Kind::FPush,
            1 if room >= 2 => Kind::Ealpha,
            _ => Kind::Line,
        };
        top = top.with(StandardSummand { kind, twist: twist(below(25)) });
    }
    let stages_count = 1 + below((max_rank - first_rank) as u32);
    let mut stages = Vec::new();
    for _ in 0..stages_count {
        let s = top.summands();
        let q = if below(3) < 2 {
            s[below(s.len() as u32)].twist + 2
        } else {
            twist(below(25))
        };
        let line = StandardSummand::line(q);
        let mut comps = Vec::new();
        for x in s {
            comps.push(if summand_ext(x, &line, 1)?.dim > 0 { below(3) as u8 } else { 0 });
        }
        let stage = ExtClassVector::new(q, top.clone(), comps)?;
        stages.push(stage.clone());
        let forms: Vec<StandardBundle> =
            normalize_stage(&stage, Resolver::EnumerateAll, Priority::default())?.into_iter().collect();
        top = forms[below(forms.len() as u32)].clone();
    }
    IteratedExtension::new(stages)
}
