//! Report types and their JSON / ASCII renderings.
//!
//! JSON is pretty-printed with a fixed field order and a trailing newline.
//! ASCII charts use fixed-width columns.

use serde::Serialize;

use ellvb_core::exactalg::FGAbGroup;
use ellvb_core::hopfext::{ChartFlag, ExtChart};
use ellvb_core::moduli3::{cohomology_dim, h1_vanishes, rank_h1_corollary_check, StandardBundle, PIC_ORDER};
use ellvb_core::wpl::CohChart;

use crate::{CliError, CliResult};

pub fn json<T: Serialize>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Failed(format!("serialization: {e}")))?;
    s.push('\n');
    Ok(s)
}

/// Glyph for one basis element in the weighted-line chart.
pub const BOX: char = '■';

#[derive(Serialize, Debug, Clone)]
pub struct WplReport {
    pub weights: [u32; 2],
    pub range: [i64; 2],
    pub rows: WplRows,
}

#[derive(Serialize, Debug, Clone)]
pub struct WplRows {
    pub h0: Vec<WplCell>,
    pub h1: Vec<WplCell>,
}

#[derive(Serialize, Debug, Clone)]
pub struct WplCell {
    pub m: i64,
    pub rank: usize,
    pub points: Vec<[i64; 2]>,
}

impl WplReport {
    pub fn from_chart(c: &CohChart) -> Self {
        let row = |v: &[ellvb_core::wpl::LatticePointSet]| {
            v.iter()
                .map(|s| WplCell { m: s.m, rank: s.rank(), points: s.points.iter().map(|&(a, b)| [a, b]).collect() })
                .collect()
        };
        WplReport {
            weights: [c.weights.k, c.weights.l],
            range: [c.m_lo, c.m_hi],
            rows: WplRows { h0: row(&c.h0), h1: row(&c.h1) },
        }
    }

    /// Each row is drawn as stacked boxes, one per basis element, over a
    /// twist axis; a rank line follows each row.
    pub fn ascii(&self) -> String {
        let ms: Vec<i64> = self.rows.h0.iter().map(|c| c.m).collect();
        let width = ms.iter().map(|m| m.to_string().len()).max().unwrap_or(1).max(2) + 1;
        let mut out = format!("O(m) on P({},{})\n", self.weights[0], self.weights[1]);
        for (label, cells) in [("H^1", &self.rows.h1), ("H^0", &self.rows.h0)] {
            let height = cells.iter().map(|c| c.rank).max().unwrap_or(0);
            out.push_str(&format!("{label}\n"));
            for level in (1..=height).rev() {
                let mut line = String::from("    |");
                for c in cells.iter() {
                    let g = if c.rank >= level { BOX.to_string() } else { String::new() };
                    line.push_str(&format!("{g:>width$}"));
                }
                out.push_str(line.trim_end());
                out.push('\n');
            }
            let mut ranks = String::from("rank|");
            for c in cells.iter() {
                ranks.push_str(&format!("{:>width$}", c.rank));
            }
            out.push_str(&ranks);
            out.push('\n');
        }
        let mut axis = String::from("   m|");
        for m in &ms {
            axis.push_str(&format!("{m:>width$}"));
        }
        out.push_str(&axis);
        out.push('\n');
        out
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct ChartReport {
    pub prime: u64,
    pub smax: usize,
    pub nmax: usize,
    pub bidegrees: Vec<ChartCell>,
    pub flags: Vec<FlagEntry>,
}

#[derive(Serialize, Debug, Clone)]
pub struct ChartCell {
    pub s: usize,
    pub n: usize,
    pub free: usize,
    pub torsion: Vec<u64>,
    pub group: String,
    pub classes: Vec<String>,
}

#[derive(Serialize, Debug, Clone)]
pub struct FlagEntry {
    pub kind: String,
    pub s: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

pub fn torsion_orders(g: &FGAbGroup) -> CliResult<Vec<u64>> {
    g.torsion()
        .iter()
        .map(|t| u64::try_from(t).map_err(|_| CliError::Failed(format!("torsion order {t} does not fit in 64 bits"))))
        .collect()
}

impl ChartReport {
    /// Nonzero cells with `s ≥ smin`, `n ≥ nmin`.
    pub fn from_chart(c: &ExtChart, smin: usize, nmin: usize) -> CliResult<Self> {
        let mut bidegrees = Vec::new();
        for (&(s, n), cell) in c.cells() {
            if s < smin || n < nmin || cell.local.is_trivial() {
                continue;
            }
            bidegrees.push(ChartCell {
                s,
                n,
                free: cell.local.free_rank(),
                torsion: torsion_orders(&cell.local)?,
                group: cell.local.to_string(),
                classes: c.names_at(s, n),
            });
        }
        let flags = c
            .flags()
            .iter()
            .map(|f| match f {
                ChartFlag::DeltaTorsion { s, n } => FlagEntry { kind: "delta-torsion".into(), s: *s, n: *n, name: None },
                ChartFlag::Unnamed { name, s, n } => {
                    FlagEntry { kind: "unnamed".into(), s: *s, n: *n, name: Some(name.clone()) }
                }
            })
            .collect();
        Ok(ChartReport { prime: c.prime(), smax: c.s_max(), nmax: c.n_max(), bidegrees, flags })
    }

    pub fn is_empty(&self) -> bool {
        self.bidegrees.is_empty() && self.flags.is_empty()
    }

    pub fn to_json(&self) -> CliResult<String> {
        if self.is_empty() {
            return Ok("{}\n".into());
        }
        json(self)
    }

    /// One column per internal degree, one row per cohomological degree
    /// (highest on top). `Z` is a free summand, `3` a `Z/3`, `9` a `Z/9`;
    /// several summands are joined by `+`. Named classes are listed below.
    pub fn ascii(&self, smin: usize, nmin: usize) -> String {
        if self.is_empty() {
            return "{}\n".into();
        }
        let cell_text = |c: &ChartCell| {
            let mut parts = Vec::new();
            match c.free {
                0 => {}
                1 => parts.push("Z".to_string()),
                r => parts.push(format!("Z^{r}")),
            }
            parts.extend(c.torsion.iter().map(|t| t.to_string()));
            parts.join("+")
        };
        let texts: Vec<((usize, usize), String)> = self.bidegrees.iter().map(|c| ((c.s, c.n), cell_text(c))).collect();
        let width = texts
            .iter()
            .map(|(_, t)| t.chars().count())
            .chain([self.nmax.to_string().len()])
            .max()
            .unwrap_or(1)
            + 1;
        let lookup = |s: usize, n: usize| texts.iter().find(|(k, _)| *k == (s, n)).map(|(_, t)| t.as_str());
        let mut out = format!("Ext^(s,n) localized at {}\n", self.prime);
        for s in (smin..=self.smax).rev() {
            let mut line = format!("s={s:<2}|");
            for n in nmin..=self.nmax {
                line.push_str(&format!("{:>width$}", lookup(s, n).unwrap_or(".")));
            }
            out.push_str(&line);
            out.push('\n');
        }
        let mut axis = String::from("  n |");
        for n in nmin..=self.nmax {
            axis.push_str(&format!("{n:>width$}"));
        }
        out.push_str(&axis);
        out.push('\n');
        for c in &self.bidegrees {
            for name in &c.classes {
                out.push_str(&format!("{name} at ({},{})\n", c.s, c.n));
            }
        }
        for f in &self.flags {
            out.push_str(&format!("flag {} at ({},{})\n", f.kind, f.s, f.n));
        }
        out
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct SummandEntry {
    pub kind: String,
    pub twist: i64,
    pub residue: i64,
}

#[derive(Serialize, Debug, Clone)]
pub struct BundleEntry {
    pub display: String,
    pub rank: usize,
    pub summands: Vec<SummandEntry>,
    /// `dim H^i(X ⊗ ω^j)` for `j = 0..11`.
    pub h1: Vec<usize>,
    pub h2: Vec<usize>,
    pub h1_vanishes: bool,
    pub corollary_holds: bool,
}

impl BundleEntry {
    pub fn new(b: &StandardBundle) -> CliResult<Self> {
        let table = |i: usize| (0..PIC_ORDER).map(|j| cohomology_dim(b, i, j)).collect::<Result<Vec<_>, _>>();
        Ok(BundleEntry {
            display: b.to_string(),
            rank: b.rank(),
            summands: b
                .canonical()
                .iter()
                .map(|s| SummandEntry { kind: s.kind.as_str().into(), twist: s.twist, residue: s.residue() })
                .collect(),
            h1: table(1)?,
            h2: table(2)?,
            h1_vanishes: h1_vanishes(b),
            corollary_holds: rank_h1_corollary_check(b),
        })
    }
}

/// Compact text form `Kind(twist) + ...` used in manifests.
pub fn bundle_key(b: &StandardBundle) -> String {
    if b.is_empty() {
        return "0".into();
    }
    b.canonical().iter().map(|s| format!("{}({})", s.kind.as_str(), s.residue())).collect::<Vec<_>>().join(" + ")
}
