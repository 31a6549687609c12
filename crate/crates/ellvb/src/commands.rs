//! One function per subcommand. Each returns the text for stdout and an exit
//! code; errors are mapped to exit codes by the caller.

use std::io::Read;

use serde::{Deserialize, Serialize};

use ellvb_core::exactalg::fp::FpMatrix;
use ellvb_core::hopfext::ext_chart_with_cap;
use ellvb_core::moduli3::{
    normalize, Choice, ExtClassVector, IteratedExtension, Kind, Priority, Resolver, StandardBundle, StandardSummand,
};
use ellvb_core::reps::{decompose, DecompositionReport, MatrixRep, DEFAULT_RANK_BOUND};
use ellvb_core::wpl::{chart, WeightedLine};

use crate::cli::{
    BundlesCommand, Command, DecomposeArgs, ExtChartArgs, Format, NormalizeArgs, PriorityArg, RepsCommand,
    VerifyArgs, WplArgs,
};
use crate::construct::{parse, Evaluator};
use crate::manifest::{self, Manifest, VerifyReport};
use crate::render::{json, BundleEntry, ChartReport, WplReport};
use crate::{basis_cap, CliError, CliResult};

pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report { code: 0, stdout, stderr: String::new() }
    }
}

pub fn dispatch(c: &Command) -> CliResult<Report> {
    match c {
        Command::Wpl(a) => wpl(a),
        Command::ExtChart(a) => ext_chart(a),
        Command::Reps(RepsCommand::Decompose(a)) => reps_decompose(a),
        Command::Bundles(BundlesCommand::Normalize(a)) => bundles_normalize(a),
        Command::Verify(a) => verify(a),
    }
}

fn wpl(a: &WplArgs) -> CliResult<Report> {
    let w = WeightedLine::new(a.weights.0, a.weights.1)?;
    let r = WplReport::from_chart(&chart(w, a.range.0, a.range.1)?);
    Ok(Report::ok(match a.format {
        Format::Json => json(&r)?,
        Format::Ascii => r.ascii(),
    }))
}

fn ext_chart(a: &ExtChartArgs) -> CliResult<Report> {
    if a.smin > a.smax || a.nmin > a.nmax {
        return Err(CliError::Usage("--smin/--nmin above --smax/--nmax".into()));
    }
    let cap = basis_cap(a.cap)?;
    let c = ext_chart_with_cap(a.smax, a.nmax, a.prime, cap)?;
    let r = ChartReport::from_chart(&c, a.smin, a.nmin)?;
    Ok(Report::ok(match a.format {
        Format::Json => r.to_json()?,
        Format::Ascii => r.ascii(a.smin, a.nmin),
    }))
}

#[derive(Serialize)]
struct DecomposeJson {
    group: String,
    construct: String,
    field: u32,
    seed: u64,
    rank: usize,
    end_dim: usize,
    summand_ranks: Vec<usize>,
    components: Vec<ComponentJson>,
    flagged: Vec<usize>,
    certificates: Certificates,
}

#[derive(Serialize)]
struct ComponentJson {
    rank: usize,
    multiplicity: usize,
    end_dim: usize,
    end_mod_rad_dim: usize,
    certified: bool,
}

#[derive(Serialize)]
struct Certificates {
    /// Idempotents are orthogonal, sum to 1, commute with the action, and
    /// have the summand ranks.
    idempotents_verified: bool,
    /// Class index of each summand, in splitting order.
    summand_classes: Vec<usize>,
    idempotents: Vec<Vec<Vec<u32>>>,
}

/// Independent re-check of the idempotent certificate.
fn idempotents_ok(rep: &MatrixRep, r: &DecompositionReport) -> bool {
    let q = r.field;
    let n = rep.rank();
    let es = &r.idempotents;
    let mut total = FpMatrix::zero(q, n, n);
    for (i, e) in es.iter().enumerate() {
        if e.mul(e) != *e || e.rank() != r.summands[i].1.cols() {
            return false;
        }
        for (j, f) in es.iter().enumerate() {
            if i != j && !e.mul(f).is_zero() {
                return false;
            }
        }
        for g in rep.generator_matrices() {
            let g = g.to_fp(q);
            if g.mul(e) != e.mul(&g) {
                return false;
            }
        }
        total = total.add(e);
    }
    total.is_identity()
}

fn rows(m: &FpMatrix) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn reps_decompose(a: &DecomposeArgs) -> CliResult<Report> {
    let ev = Evaluator { ambient: a.group, field: a.field };
    let rep = ev.eval(&parse(&a.construct)?)?;
    let bound = a.bound.unwrap_or(DEFAULT_RANK_BOUND);
    if rep.rank() > bound {
        return Err(CliError::Cap(format!("rank {} is above the bound {bound}", rep.rank())));
    }
    let r = decompose(&rep, a.seed, bound)?;
    let verified = idempotents_ok(&rep, &r);
    let out = DecomposeJson {
        group: rep.group().name().to_string(),
        construct: a.construct.clone(),
        field: a.field,
        seed: a.seed,
        rank: r.rank,
        end_dim: r.end_dim,
        summand_ranks: r.summand_ranks(),
        components: r
            .components
            .iter()
            .map(|c| ComponentJson {
                rank: c.rep.rank(),
                multiplicity: c.multiplicity,
                end_dim: c.end_dim,
                end_mod_rad_dim: c.end_mod_rad_dim,
                certified: c.certified,
            })
            .collect(),
        flagged: r.flagged(),
        certificates: Certificates {
            idempotents_verified: verified,
            summand_classes: r.summands.iter().map(|(c, _)| *c).collect(),
            idempotents: r.idempotents.iter().map(rows).collect(),
        },
    };
    let text = match a.format {
        Format::Json => json(&out)?,
        Format::Ascii => {
            let mut s = format!(
                "{} over F_{}: rank {}, dim End = {}, seed {}\n",
                a.construct, a.field, out.rank, out.end_dim, a.seed
            );
            s.push_str("class  rank  mult  dim End  dim End/rad  certified\n");
            for (i, c) in out.components.iter().enumerate() {
                s.push_str(&format!(
                    "{i:>5}  {:>4}  {:>4}  {:>7}  {:>11}  {}\n",
                    c.rank, c.multiplicity, c.end_dim, c.end_mod_rad_dim, c.certified
                ));
            }
            s.push_str(&format!("summand ranks: {:?}\n", out.summand_ranks));
            s.push_str(&format!("idempotents verified: {verified}\n"));
            s
        }
    };
    Ok(Report { code: if verified { 0 } else { 1 }, stdout: text, stderr: String::new() })
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    pub stages: Vec<StageSpec>,
}

/// `0 → ω^twist → X → ⊕ components → 0`.
#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct StageSpec {
    pub twist: i64,
    pub components: Vec<ComponentSpec>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub kind: String,
    pub twist: i64,
    /// Class component in F3; any integer, read mod 3.
    pub value: i64,
}

impl ExtensionSpec {
    pub fn build(&self) -> CliResult<IteratedExtension> {
        let mut stages = Vec::new();
        for st in &self.stages {
            let mut summands = Vec::new();
            let mut values = Vec::new();
            for c in &st.components {
                let kind: Kind = c.kind.parse()?;
                summands.push(StandardSummand { kind, twist: c.twist });
                values.push(c.value.rem_euclid(3) as u8);
            }
            stages.push(ExtClassVector::new(st.twist, StandardBundle::new(summands), values)?);
        }
        Ok(IteratedExtension::new(stages)?)
    }
}

pub fn parse_resolver(s: &str) -> CliResult<Resolver> {
    match s {
        "enumerate" => Ok(Resolver::EnumerateAll),
        "zero" => Ok(Resolver::Zero),
        _ => {
            let rest = s
                .strip_prefix("fixed:")
                .ok_or_else(|| CliError::Usage(format!("unknown resolver {s}; use enumerate, zero or fixed:...")))?;
            let choices = rest
                .split(',')
                .filter(|t| !t.is_empty())
                .map(|t| match t.trim() {
                    "z" | "zero" => Ok(Choice::Zero),
                    k => k.parse().map(Choice::Use).map_err(|_| CliError::Usage(format!("bad resolver choice {k}"))),
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Resolver::Fixed(choices))
        }
    }
}

#[derive(Serialize)]
struct NormalizeJson {
    resolver: String,
    priority: String,
    rank: usize,
    stages: usize,
    normal_forms: Vec<BundleEntry>,
}

fn bundles_normalize(a: &NormalizeArgs) -> CliResult<Report> {
    let text = if a.spec.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&a.spec).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", a.spec.display())))?
    };
    let spec: ExtensionSpec = serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("spec: {e}")))?;
    let e = spec.build()?;
    let resolver = parse_resolver(&a.resolver)?;
    let priority = match a.priority {
        PriorityArg::Smallest => Priority::SmallestTwist,
        PriorityArg::Largest => Priority::LargestTwist,
        PriorityArg::First => Priority::FirstListed,
    };
    let forms = normalize(&e, resolver, priority)?;
    let out = NormalizeJson {
        resolver: a.resolver.clone(),
        priority: format!("{:?}", a.priority).to_lowercase(),
        rank: e.rank(),
        stages: e.stages().len(),
        normal_forms: forms.iter().map(BundleEntry::new).collect::<CliResult<_>>()?,
    };
    Ok(Report::ok(match a.format {
        Format::Json => json(&out)?,
        Format::Ascii => {
            let mut s = format!("rank {} in {} stage(s), {} normal form(s)\n", out.rank, out.stages, out.normal_forms.len());
            for f in &out.normal_forms {
                s.push_str(&format!("{}\n", f.display));
                s.push_str(&format!("  j    {}\n", (0..12).map(|j| format!("{j:>2}")).collect::<Vec<_>>().join(" ")));
                for (label, row) in [("H^1", &f.h1), ("H^2", &f.h2)] {
                    s.push_str(&format!(
                        "  {label}  {}\n",
                        row.iter().map(|v| format!("{v:>2}")).collect::<Vec<_>>().join(" ")
                    ));
                }
            }
            s
        }
    }))
}

fn verify(a: &VerifyArgs) -> CliResult<Report> {
    let m = match &a.manifest {
        Some(p) => Manifest::load(p)?,
        None => Manifest::bundled(&a.suite)?,
    };
    let results = manifest::run(&m, a.criteria.as_deref())?;
    let passed = results.iter().all(|r| r.passed);
    let stdout = match a.format {
        Format::Json => json(&VerifyReport { suite: &m.suite, passed, criteria: &results })?,
        Format::Ascii => manifest::ascii(&results, a.timings),
    };
    let failed = results.iter().filter(|r| !r.passed).count();
    let stderr = if failed > 0 { format!("{failed} criterion/criteria failed\n") } else { String::new() };
    Ok(Report { code: if passed { 0 } else { 1 }, stdout, stderr })
}
