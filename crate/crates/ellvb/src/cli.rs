//! Command-line surface. Flags are validated here, before any computation.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellvb_core::reps::GroupName;

#[derive(Parser, Debug)]
#[command(name = "ellvb", version, about = "Exact computations with vector bundles on the moduli of elliptic curves at 3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cohomology of O(m) on a weighted projective line.
    Wpl(WplArgs),
    /// Ext chart of the Weierstraß Hopf algebroid localized at a prime.
    ExtChart(ExtChartArgs),
    /// Modular representations of small finite groups.
    #[command(subcommand)]
    Reps(RepsCommand),
    /// Standard bundles and iterated extensions.
    #[command(subcommand)]
    Bundles(BundlesCommand),
    /// Run a regression manifest.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Ascii,
}

#[derive(Args, Debug)]
pub struct WplArgs {
    /// Weights `k,l`.
    #[arg(long, value_parser = parse_weights)]
    pub weights: (u32, u32),
    /// Inclusive twist range `lo..hi`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    pub range: (i64, i64),
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ExtChartArgs {
    #[arg(long, default_value_t = 2)]
    pub smax: usize,
    #[arg(long, default_value_t = 12)]
    pub nmax: usize,
    #[arg(long, default_value_t = 3)]
    pub prime: u64,
    /// Lowest cohomological degree shown.
    #[arg(long, default_value_t = 0)]
    pub smin: usize,
    /// Lowest internal degree shown.
    #[arg(long, default_value_t = 0)]
    pub nmin: usize,
    /// Largest cobar basis allowed in one bidegree. Overrides ELLVB_BASIS_CAP.
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum RepsCommand {
    /// Krull-Schmidt decomposition with certificates.
    Decompose(DecomposeArgs),
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    /// Ambient group, the target of `ind`.
    #[arg(long, value_parser = parse_group)]
    pub group: GroupName,
    /// Expression such as `ind(Q8, mbar(1))`.
    #[arg(long)]
    pub construct: String,
    /// Prime field of coefficients.
    #[arg(long, default_value_t = 2)]
    pub field: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest rank accepted.
    #[arg(long)]
    pub bound: Option<usize>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum BundlesCommand {
    /// Normal forms of an iterated extension by line bundles.
    Normalize(NormalizeArgs),
}

#[derive(Args, Debug)]
pub struct NormalizeArgs {
    /// JSON stage list; `-` reads standard input.
    #[arg(long)]
    pub spec: PathBuf,
    /// `enumerate`, `zero`, or `fixed:c1,c2,...` with each `c` a summand index or `z`.
    #[arg(long, default_value = "enumerate")]
    pub resolver: String,
    #[arg(long, value_enum, default_value_t)]
    pub priority: PriorityArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PriorityArg {
    #[default]
    Smallest,
    Largest,
    First,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name (or alias) of a bundled manifest.
    #[arg(long, default_value = "acceptance")]
    pub suite: String,
    /// Manifest file instead of a bundled suite.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Only these criteria.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Option<Vec<u32>>,
    /// Append wall-clock times (makes the output nondeterministic).
    #[arg(long)]
    pub timings: bool,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

fn parse_weights(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s.split_once(',').ok_or("expected k,l")?;
    let k: u32 = a.trim().parse().map_err(|e| format!("bad weight {a}: {e}"))?;
    let l: u32 = b.trim().parse().map_err(|e| format!("bad weight {b}: {e}"))?;
    if k == 0 || l == 0 {
        return Err("weights must be positive".into());
    }
    Ok((k, l))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected lo..hi")?;
    let lo: i64 = a.trim().parse().map_err(|e| format!("bad bound {a}: {e}"))?;
    let hi: i64 = b.trim().trim_start_matches('=').parse().map_err(|e| format!("bad bound {b}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    if hi - lo > 100_000 {
        return Err("range longer than 100000".into());
    }
    Ok((lo, hi))
}

fn parse_group(s: &str) -> Result<GroupName, String> {
    s.parse().map_err(|e: ellvb_core::Error| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-22..12"), Ok((-22, 12)));
        assert_eq!(parse_range("0..=12"), Ok((0, 12)));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("3").is_err());
        assert_eq!(parse_weights("4,6"), Ok((4, 6)));
        assert!(parse_weights("0,6").is_err());
    }
}
