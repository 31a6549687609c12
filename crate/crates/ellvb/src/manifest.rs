//! Regression manifests: named checks with pinned expected values.
//!
//! A manifest is a versioned JSON document. Every check names the criterion
//! it belongs to, its expected value, a tolerance (only `exact` exists) and a
//! provenance label saying where the expected value comes from:
//! `literature` (a published statement), `oracle` (an independent brute-force
//! computation) or `structural` (a definition or identity).

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::checks::Context;
use crate::{CliError, CliResult};

pub const MANIFEST_FORMAT: &str = "ellvb-manifest";
pub const MANIFEST_VERSION: u32 = 1;
pub const PROVENANCE: [&str; 3] = ["literature", "oracle", "structural"];

/// Manifests shipped with the binary.
pub const BUNDLED: [&str; 1] = [include_str!("../../../manifests/acceptance.json")];

#[derive(Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub format: String,
    pub version: u32,
    pub suite: String,
    #[serde(default)]
    pub aliases: Vec<String>,
    pub criteria: Vec<Criterion>,
    pub checks: Vec<Check>,
}

#[derive(Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct Criterion {
    pub id: u32,
    pub title: String,
    pub budget_seconds: f64,
}

#[derive(Deserialize, Serialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub criterion: u32,
    pub expected: Value,
    pub tolerance: String,
    pub provenance: String,
    /// Reported, never failing (diagnostic flags).
    #[serde(default)]
    pub informational: bool,
}

impl Manifest {
    pub fn parse(text: &str) -> CliResult<Self> {
        let m: Manifest = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("manifest: {e}")))?;
        m.validate()?;
        Ok(m)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn bundled(suite: &str) -> CliResult<Self> {
        for text in BUNDLED {
            let m = Self::parse(text)?;
            if m.suite == suite || m.aliases.iter().any(|a| a == suite) {
                return Ok(m);
            }
        }
        Err(CliError::Usage(format!("no bundled suite named {suite}")))
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Usage(format!("manifest {}: {msg}", self.suite)));
        if self.format != MANIFEST_FORMAT || self.version != MANIFEST_VERSION {
            return bad(format!("unsupported format {} v{}", self.format, self.version));
        }
        let ids: BTreeSet<u32> = self.criteria.iter().map(|c| c.id).collect();
        if ids.len() != self.criteria.len() {
            return bad("duplicate criterion id".into());
        }
        let mut names = BTreeSet::new();
        for c in &self.checks {
            if !names.insert(c.name.as_str()) {
                return bad(format!("duplicate check {}", c.name));
            }
            if !ids.contains(&c.criterion) {
                return bad(format!("check {} refers to unknown criterion {}", c.name, c.criterion));
            }
            if c.tolerance != "exact" {
                return bad(format!("check {} has tolerance {}; only exact is supported", c.name, c.tolerance));
            }
            if !PROVENANCE.contains(&c.provenance.as_str()) {
                return bad(format!("check {} has provenance {}", c.name, c.provenance));
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub informational: bool,
    pub provenance: String,
    pub expected: Value,
    pub actual: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub seconds: f64,
}

#[derive(Serialize, Debug, Clone)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub seconds: f64,
    #[serde(skip)]
    pub budget_seconds: f64,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.seconds <= self.budget_seconds
    }
}

/// Runs the selected criteria in manifest order. Charts and other shared
/// inputs are computed once; their cost is charged to the first criterion
/// that needs them.
pub fn run(m: &Manifest, only: Option<&[u32]>) -> CliResult<Vec<CriterionResult>> {
    if let Some(o) = only {
        if let Some(missing) = o.iter().find(|id| !m.criteria.iter().any(|c| c.id == **id)) {
            return Err(CliError::Usage(format!("manifest {} has no criterion {missing}", m.suite)));
        }
    }
    let mut ctx = Context::new();
    let mut out = Vec::new();
    for crit in &m.criteria {
        if only.is_some_and(|o| !o.contains(&crit.id)) {
            continue;
        }
        let start = Instant::now();
        let mut checks = Vec::new();
        for c in m.checks.iter().filter(|c| c.criterion == crit.id) {
            let t = Instant::now();
            let (actual, error) = match ctx.evaluate(&c.name) {
                Ok(v) => (v, None),
                Err(CliError::Usage(msg)) => return Err(CliError::Usage(msg)),
                Err(e) => (Value::Null, Some(e.to_string())),
            };
            let passed = error.is_none() && actual == c.expected;
            checks.push(CheckResult {
                name: c.name.clone(),
                passed,
                informational: c.informational,
                provenance: c.provenance.clone(),
                expected: c.expected.clone(),
                actual,
                error,
                seconds: t.elapsed().as_secs_f64(),
            });
        }
        let passed = !checks.is_empty() && checks.iter().all(|c| c.passed || c.informational);
        out.push(CriterionResult {
            id: crit.id,
            title: crit.title.clone(),
            passed,
            checks,
            seconds: start.elapsed().as_secs_f64(),
            budget_seconds: crit.budget_seconds,
        });
    }
    Ok(out)
}

/// `PASS`/`FAIL`/`FLAG` lines, one per check and one per criterion.
pub fn ascii(results: &[CriterionResult], timings: bool) -> String {
    let mut out = String::new();
    for r in results {
        for c in &r.checks {
            let tag = match (c.passed, c.informational) {
                (true, _) => "pass",
                (false, true) => "flag",
                (false, false) => "FAIL",
            };
            let mut line = format!("  {tag} {} [{}]", c.name, c.provenance);
            if !c.passed {
                match &c.error {
                    Some(e) => line.push_str(&format!(": error {e}")),
                    None => line.push_str(&format!(": expected {} got {}", c.expected, c.actual)),
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
        let mut line = format!("{} criterion {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.title);
        if timings {
            line.push_str(&format!(" ({:.2} s, budget {} s)", r.seconds, r.budget_seconds));
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
pub struct VerifyReport<'a> {
    pub suite: &'a str,
    pub passed: bool,
    pub criteria: &'a [CriterionResult],
}
