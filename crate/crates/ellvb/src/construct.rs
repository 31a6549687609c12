//! The `--construct` expression language for `reps decompose`.
//!
//! ```text
//! expr  := name | name "(" args ")"
//! args  := arg ("," arg)*
//! arg   := expr | integer | group
//! ```
//!
//! | form | meaning |
//! |---|---|
//! | `mbar(n)` | `M_n ⊗ F_q` over C2×C2 (for `q = 2` this is `M̄_n`) |
//! | `trivial`, `trivial(G)` | trivial rank 1 module over `G` (default: the ambient group) |
//! | `unit`, `perm`, `zeta`, `ideal`, `sign` | the S3 lattices, reduced mod `q` |
//! | `pull(e)` | inflation of a C2×C2 module along Q8 → C2×C2 |
//! | `ind(H, e)`, `ind(H, G, e)` | induction from `H` to the ambient group, or to `G` |
//! | `res(K, e)` | restriction to `K` |
//! | `sum(e, ...)`, `tensor(e, ...)`, `dual(e)` | |
//!
//! A C2×C2 module used where Q8 is expected is inflated automatically.

use ellvb_core::moduli3::sign_lattice;
use ellvb_core::reps::{build_group, m_n, pullback_q8, s3_lattices, Domain, GroupName, MatrixRep};

use crate::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Open,
    Close,
    Comma,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn lex(s: &str) -> CliResult<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            c if c.is_ascii_digit() || c == '-' => {
                let start = i;
                i += 1;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = cs[start..i].iter().collect();
                out.push(Tok::Int(t.parse().map_err(|_| usage(format!("bad integer {t}")))?));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[start..i].iter().collect()));
            }
            c => return Err(usage(format!("unexpected character {c:?} in construct"))),
        }
    }
    Ok(out)
}

pub fn parse(s: &str) -> CliResult<Expr> {
    let toks = lex(s)?;
    let mut pos = 0;
    let e = parse_expr(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(usage(format!("trailing input in construct {s:?}")));
    }
    Ok(e)
}

fn parse_expr(t: &[Tok], pos: &mut usize) -> CliResult<Expr> {
    match t.get(*pos) {
        Some(Tok::Int(v)) => {
            *pos += 1;
            Ok(Expr::Int(*v))
        }
        Some(Tok::Ident(name)) => {
            *pos += 1;
            let mut args = Vec::new();
            if t.get(*pos) == Some(&Tok::Open) {
                *pos += 1;
                loop {
                    args.push(parse_expr(t, pos)?);
                    match t.get(*pos) {
                        Some(Tok::Comma) => *pos += 1,
                        Some(Tok::Close) => {
                            *pos += 1;
                            break;
                        }
                        _ => return Err(usage(format!("expected ',' or ')' after arguments of {name}"))),
                    }
                }
            }
            Ok(Expr::Call(name.to_ascii_lowercase(), args))
        }
        _ => Err(usage("expected an expression")),
    }
}

pub struct Evaluator {
    pub ambient: GroupName,
    pub field: u32,
}

impl Evaluator {
    pub fn eval(&self, e: &Expr) -> CliResult<MatrixRep> {
        let (name, args) = match e {
            Expr::Int(v) => return Err(usage(format!("integer {v} where a module is expected"))),
            Expr::Call(n, a) => (n.as_str(), a.as_slice()),
        };
        let q = self.field;
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(usage(format!("{name} takes {k} argument(s), got {}", args.len())))
            }
        };
        match name {
            "mbar" => {
                arity(1)?;
                let n = int(&args[0])?;
                if !(0..=64).contains(&n) {
                    return Err(usage(format!("mbar({n}) is out of range 0..=64")));
                }
                Ok(m_n(n as usize, Domain::FiniteField(q))?)
            }
            "trivial" => {
                let g = match args {
                    [] => self.ambient,
                    [x] => group(x)?,
                    _ => return Err(usage("trivial takes at most one argument")),
                };
                Ok(MatrixRep::trivial(build_group(g)?, Domain::FiniteField(q))?)
            }
            "unit" | "perm" | "zeta" | "ideal" | "sign" => {
                arity(0)?;
                let l = s3_lattices()?;
                let rep = match name {
                    "unit" => l.unit,
                    "perm" => l.p,
                    "zeta" => l.zzeta,
                    "ideal" => l.ideal,
                    _ => sign_lattice()?,
                };
                Ok(rep.reduce_mod(q)?)
            }
            "pull" => {
                arity(1)?;
                Ok(pullback_q8(&self.eval(&args[0])?)?)
            }
            "ind" => {
                let (h, g, inner) = match args {
                    [h, x] => (group(h)?, self.ambient, x),
                    [h, g, x] => (group(h)?, group(g)?, x),
                    _ => return Err(usage("ind takes (H, e) or (H, G, e)")),
                };
                let m = self.over(h, self.eval(inner)?)?;
                Ok(m.induce(&build_group(g)?)?)
            }
            "res" => {
                arity(2)?;
                let k = group(&args[0])?;
                Ok(self.eval(&args[1])?.restrict(&build_group(k)?)?)
            }
            "sum" | "tensor" => {
                if args.is_empty() {
                    return Err(usage(format!("{name} needs at least one argument")));
                }
                let mut acc = self.eval(&args[0])?;
                for a in &args[1..] {
                    let b = self.eval(a)?;
                    let (x, y) = if acc.group().name() == GroupName::C2xC2 {
                        (self.over(b.group().name(), acc)?, b)
                    } else {
                        let g = acc.group().name();
                        (acc, self.over(g, b)?)
                    };
                    acc = if name == "sum" { x.sum(&y)? } else { x.tensor(&y)? };
                }
                Ok(acc)
            }
            "dual" => {
                arity(1)?;
                Ok(self.eval(&args[0])?.dual()?)
            }
            other => Err(usage(format!("unknown construct {other}"))),
        }
    }

    /// `m` as a module over `g`, inflating C2×C2 modules to Q8.
    fn over(&self, g: GroupName, m: MatrixRep) -> CliResult<MatrixRep> {
        let have = m.group().name();
        if have == g {
            Ok(m)
        } else if have == GroupName::C2xC2 && g == GroupName::Q8 {
            Ok(pullback_q8(&m)?)
        } else {
            Err(usage(format!("a {have} module is used where a {g} module is expected")))
        }
    }
}

fn int(e: &Expr) -> CliResult<i64> {
    match e {
        Expr::Int(v) => Ok(*v),
        _ => Err(usage("expected an integer")),
    }
}

fn group(e: &Expr) -> CliResult<GroupName> {
    match e {
        Expr::Call(n, a) if a.is_empty() => n.parse().map_err(|e: ellvb_core::Error| usage(e.to_string())),
        _ => Err(usage("expected a group name")),
    }
}
