//! The computations behind manifest check names.
//!
//! Each check returns a JSON value that the runner compares with the pinned
//! expectation. Oracles used here (lattice point boxes, monomial counts,
//! brute-force Hom dimensions) are independent of the code they test.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use ellvb_core::exactalg::homology::hom_is_injective;
use ellvb_core::exactalg::FGAbGroup;
use ellvb_core::hopfext::{
    build_algebroid, delta_stabilize, ext_chart, verify_d_squared_symbolic, CobarComplex, ExtChart, HopfAlgebroid,
    DEFAULT_BASIS_CAP,
};
use ellvb_core::moduli3::{
    cohomology_dim, dual, ext_dim, i_functor, normalize, normalize_stage, random_iterated_extension,
    rank_h1_corollary_check, sign_lattice, tensor, ExtClassVector, Priority, Resolver, StandardBundle,
    StandardSummand, PIC_ORDER,
};
use ellvb_core::reps::{
    build_group, check_exact, decompose, end_algebra, mbar, pullback_q8, same_krs, s3_lattices, GroupName, MatrixRep,
    DEFAULT_RANK_BOUND,
};
use ellvb_core::wpl::{chart, h0_basis, h1_basis, serre_pairing, WeightedLine};

use crate::render::bundle_key;
use crate::{CliError, CliResult};

/// Internal degrees at which the Δ-stabilized groups are read.
pub const STABLE_CHART: (usize, usize) = (2, 37);
/// Range for products.
pub const PRODUCT_CHART: (usize, usize) = (3, 20);
const PRIME: u64 = 3;

#[derive(Default)]
pub struct Context {
    stable: Option<ExtChart>,
    products: Option<ExtChart>,
}

fn fail(msg: impl Into<String>) -> CliError {
    CliError::Failed(msg.into())
}

fn weights(k: u32, l: u32) -> CliResult<WeightedLine> {
    Ok(WeightedLine::new(k, l)?)
}

/// `#{(a,b) ∈ [0,|m|]² : ak + bl = m}` by scanning a box.
fn box_count(k: i64, l: i64, m: i64) -> usize {
    let mut n = 0;
    for a in 0..=m.abs() {
        for b in 0..=m.abs() {
            if a * k + b * l == m {
                n += 1;
            }
        }
    }
    n
}

/// `#{(c,d) ∈ [−|m|−1, −1]² : ck + dl = m}`.
fn negative_box_count(k: i64, l: i64, m: i64) -> usize {
    let r = m.abs() + 1;
    let mut n = 0;
    for c in -r..0 {
        for d in -r..0 {
            if c * k + d * l == m {
                n += 1;
            }
        }
    }
    n
}

/// `#{(a,b,c) : 4a + 6b + 12c = n, b ∈ {0,1}}`.
pub fn modular_form_count(n: usize) -> usize {
    let mut count = 0;
    for c in 0..=n / 12 {
        for b in 0..=1 {
            for a in 0..=n / 4 {
                if 4 * a + 6 * b + 12 * c == n {
                    count += 1;
                }
            }
        }
    }
    count
}

fn group_text(g: &FGAbGroup) -> Value {
    Value::String(g.to_string())
}

fn b(v: &[StandardSummand]) -> StandardBundle {
    StandardBundle::new(v.to_vec())
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn stable_chart(&mut self) -> CliResult<&ExtChart> {
        if self.stable.is_none() {
            self.stable = Some(ext_chart(STABLE_CHART.0, STABLE_CHART.1, PRIME)?);
        }
        Ok(self.stable.as_ref().expect("just computed"))
    }

    pub fn product_chart(&mut self) -> CliResult<&ExtChart> {
        if self.products.is_none() {
            self.products = Some(ext_chart(PRODUCT_CHART.0, PRODUCT_CHART.1, PRIME)?);
        }
        Ok(self.products.as_ref().expect("just computed"))
    }

    pub fn evaluate(&mut self, name: &str) -> CliResult<Value> {
        match name {
            "wpl.h0_ranks.4_6.0_12" => {
                let c = chart(weights(4, 6)?, 0, 12)?;
                Ok(json!(c.h0_ranks()))
            }
            "wpl.h1_ranks.4_6.-22_-10" => {
                let c = chart(weights(4, 6)?, -22, -10)?;
                Ok(json!(c.h1_ranks()))
            }
            "wpl.box_oracle_mismatches.4_6" => {
                let w = weights(4, 6)?;
                let bad = (-60..=60)
                    .filter(|&m| {
                        h0_basis(w, m).rank() != box_count(4, 6, m)
                            || h1_basis(w, m).rank() != negative_box_count(4, 6, m)
                    })
                    .count();
                Ok(json!(bad))
            }
            "wpl.serre_bijections.k_l_le_8" => {
                let mut ok = 0usize;
                for k in 1..=8 {
                    for l in 1..=8 {
                        let w = weights(k, l)?;
                        for m in -60..=60 {
                            let pairs = serre_pairing(w, m)?;
                            let b = h1_basis(w, -m - (k + l) as i64);
                            if pairs.len() == b.rank() && pairs.iter().all(|(x, y)| (-x.0 - 1, -x.1 - 1) == *y) {
                                ok += 1;
                            }
                        }
                    }
                }
                Ok(json!(ok))
            }
            "hopf.structure_maps" => {
                let mut out = Vec::new();
                for alg in [build_algebroid()?, HopfAlgebroid::short_weierstrass()?] {
                    alg.verify()?;
                    out.push(json!({
                        "algebroid": alg.name(),
                        "coassociative": alg.coassociativity_holds(),
                        "right_unit_compatible": alg.right_unit_compatible(),
                    }));
                }
                Ok(Value::Array(out))
            }
            "hopf.cosimplicial_identities.s3" => {
                build_algebroid()?.check_cosimplicial(3)?;
                Ok(json!(true))
            }
            "hopf.d_squared.full.monomials_s3_n20" => {
                let n = verify_d_squared_symbolic(&build_algebroid()?, 3, 20, DEFAULT_BASIS_CAP)?;
                Ok(json!(n))
            }
            "hopf.d_squared.short.matrices_s3_n20" => {
                let c = CobarComplex::build(&HopfAlgebroid::short_weierstrass()?, 3, 20, DEFAULT_BASIS_CAP)?;
                c.verify_d_squared()?;
                Ok(json!(true))
            }
            "ext.stable.1_2" => Ok(group_text(&delta_stabilize(self.stable_chart()?, 1, 2)?)),
            "ext.stable.2_6" => Ok(group_text(&delta_stabilize(self.stable_chart()?, 2, 6)?)),
            "ext.stable.1_n.n_1_3_to_13" => {
                let c = self.stable_chart()?;
                let v = (1..=13)
                    .filter(|&n| n != 2)
                    .map(|n| Ok(group_text(&delta_stabilize(c, 1, n)?)))
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(Value::Array(v))
            }
            "ext.names" => {
                let c = self.product_chart()?;
                Ok(json!({ "1_2": c.names_at(1, 2), "2_6": c.names_at(2, 6), "0_12": c.names_at(0, 12) }))
            }
            "ext.alpha_squared_is_zero" => {
                let c = self.product_chart()?;
                let a = c.class("alpha")?;
                Ok(json!(c.is_zero(&c.product(a, a)?)?))
            }
            "ext.beta_alpha_is_nonzero" => {
                let c = self.product_chart()?;
                let (a, bb) = (c.class("alpha")?, c.class("beta")?);
                Ok(json!(!c.is_zero(&c.product(bb, a)?)?))
            }
            "ext.delta_torsion_flags" => {
                let mut n = self.stable_chart()?.flags().len();
                n += self.product_chart()?.flags().len();
                Ok(json!(n))
            }
            "ext.ext0_free_ranks.n_le_24" => {
                let c = self.stable_chart()?;
                let v = (0..=24)
                    .map(|n| {
                        let g = c.group(0, n)?;
                        if !g.torsion().is_empty() {
                            return Err(fail(format!("Ext^0 at {n} has torsion")));
                        }
                        Ok(g.free_rank())
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(json!(v))
            }
            "ext.ext0_monomial_oracle_mismatches" => {
                let c = self.stable_chart()?;
                let mut bad = 0;
                for n in 0..=24 {
                    if c.group(0, n)?.free_rank() != modular_form_count(n) {
                        bad += 1;
                    }
                }
                Ok(json!(bad))
            }
            "reps.mbar_end_mod_rad.n_1_4" => {
                let v = (1..=4).map(|n| Ok(end_algebra(&mbar(n)?)?.quotient_dim())).collect::<CliResult<Vec<_>>>()?;
                Ok(json!(v))
            }
            "reps.res_ind_ranks.n_1_2" => {
                let v = (1..=2).map(|n| Ok(res_ind(n)?.rank())).collect::<CliResult<Vec<_>>>()?;
                Ok(json!(v))
            }
            "reps.res_ind_contains_mbar.n_1_2" => {
                let v = (1..=2)
                    .map(|n| {
                        let r = decompose(&res_ind(n)?, 3, DEFAULT_RANK_BOUND)?;
                        if !r.flagged().is_empty() {
                            return Err(fail("uncertified summand"));
                        }
                        Ok(r.contains(&pullback_q8(&mbar(n)?)?)?)
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(json!(v))
            }
            "reps.ind_mbar1_summand_ranks" => {
                let g = build_group(GroupName::GL2F3)?;
                let r = decompose(&pullback_q8(&mbar(1)?)?.induce(&g)?, 7, DEFAULT_RANK_BOUND)?;
                let mut ranks = r.summand_ranks();
                ranks.sort_unstable();
                Ok(json!({ "ranks": ranks, "certified": r.flagged().is_empty() }))
            }
            "reps.krs_agrees_over_5_seeds" => {
                let m = res_ind(1)?;
                let reports = (0..5).map(|s| decompose(&m, 100 + s, DEFAULT_RANK_BOUND)).collect::<Result<Vec<_>, _>>()?;
                let mut same = true;
                for r in &reports[1..] {
                    same &= same_krs(r, &reports[0])?;
                }
                Ok(json!(same))
            }
            "bundles.tensor.ea_ea" => {
                Ok(json!(bundle_key(&tensor(&b(&[StandardSummand::ealpha(0)]), &b(&[StandardSummand::ealpha(0)]))?)))
            }
            "bundles.tensor.ea_fpush" => {
                Ok(json!(bundle_key(&tensor(&b(&[StandardSummand::ealpha(0)]), &b(&[StandardSummand::fpush(0)]))?)))
            }
            "bundles.dual.ea" => Ok(json!(bundle_key(&dual(&b(&[StandardSummand::ealpha(0)]))))),
            "bundles.dual.fpush" => Ok(json!(bundle_key(&dual(&b(&[StandardSummand::fpush(0)]))))),
            "bundles.i_functor.dictionary" => {
                let l = s3_lattices()?;
                let mut out = serde_json::Map::new();
                for (name, rep) in [("unit", &l.unit), ("perm", &l.p), ("zeta", &l.zzeta), ("ideal", &l.ideal)] {
                    out.insert(name.into(), json!(bundle_key(&i_functor(rep)?)));
                }
                let sign = match i_functor(&sign_lattice()?) {
                    Err(ellvb_core::Error::NotInDictionary) => "rejected".to_string(),
                    Ok(x) => bundle_key(&x),
                    Err(e) => return Err(e.into()),
                };
                out.insert("sign".into(), json!(sign));
                Ok(Value::Object(out))
            }
            "bundles.i_functor.lattice_sequences" => {
                let l = s3_lattices()?;
                let (z, p, zz, id) = (i_functor(&l.unit)?, i_functor(&l.p)?, i_functor(&l.zzeta)?, i_functor(&l.ideal)?);
                // unit → perm → zeta: the nonsplit extension of I(zeta) by I(unit)
                let first_exact = check_exact(&l.diagonal, &l.to_zeta, 3)?.holds(l.unit.rank());
                let first = ExtClassVector::new(0, zz.clone(), vec![1])?;
                let first_ok = first_exact
                    && p.rank() == z.rank() + zz.rank()
                    && ext_dim(&zz, &z, 1)? == 1
                    && normalize_stage(&first, Resolver::Zero, Priority::default())? == BTreeSet::from([p.clone()]);
                // ideal → perm → unit
                let second_exact = check_exact(&l.ideal_to_p, &l.sum, 3)?.holds(l.ideal.rank());
                let second_ok = second_exact && p.rank() == id.rank() + z.rank() && ext_dim(&z, &id, 1)? == 1;
                Ok(json!([first_ok, second_ok]))
            }
            "bundles.random_extensions.200" => {
                let mut violations = 0usize;
                for seed in 0..200 {
                    let e = random_iterated_extension(seed, 8)?;
                    let forms = normalize(&e, Resolver::EnumerateAll, Priority::default())?;
                    if e.rank() > 8 || forms.is_empty() {
                        violations += 1;
                    }
                    for f in &forms {
                        let again = normalize_stage(
                            &ExtClassVector::split(1, f.clone()),
                            Resolver::EnumerateAll,
                            Priority::default(),
                        )?;
                        if f.rank() != e.rank()
                            || !rank_h1_corollary_check(f)
                            || again != BTreeSet::from([f.with(StandardSummand::line(1))])
                        {
                            violations += 1;
                        }
                    }
                }
                Ok(json!({ "extensions": 200, "violations": violations }))
            }
            "cross.line_cohomology_vs_stable_chart" => {
                let c = self.stable_chart()?;
                let mut compared = Vec::new();
                let mut mismatches = Vec::new();
                for s in 1..=2usize {
                    for n in 1..=PIC_ORDER as usize {
                        let Ok(g) = delta_stabilize(c, s, n) else { continue };
                        let table = cohomology_dim(&b(&[StandardSummand::line(0)]), s, n as i64)?;
                        compared.push(json!([s, n]));
                        if table != g.ngens() {
                            mismatches.push(json!([s, n]));
                        }
                    }
                }
                Ok(json!({ "compared": compared.len(), "mismatches": mismatches }))
            }
            "cross.delta_injective_positive_degrees" => {
                let c = self.stable_chart()?;
                let mut bad = Vec::new();
                for s in 1..=2 {
                    for n in 0..=STABLE_CHART.1 - 12 {
                        let (m, src, tgt) = c.delta_map(s, n)?;
                        if !hom_is_injective(&src, &tgt, &m)? {
                            bad.push(json!([s, n]));
                        }
                    }
                }
                Ok(Value::Array(bad))
            }
            other => Err(CliError::Usage(format!("unknown check {other}"))),
        }
    }
}

/// `res_Q ind_Q^G M̄_n` over Q8 ⊂ GL2(F3).
fn res_ind(n: usize) -> CliResult<MatrixRep> {
    let g = build_group(GroupName::GL2F3)?;
    let q = build_group(GroupName::Q8)?;
    Ok(pullback_q8(&mbar(n)?)?.induce(&g)?.restrict(&q)?)
}
