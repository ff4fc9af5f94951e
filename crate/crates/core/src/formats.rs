//! Text formats for hypersubstitutions, multi-hypersubstitutions, algebras,
//! equation sets and coloration specs.
//!
//! ```text
//! # hypersubstitution: one line per symbol
//! f -> f(x2,x1)
//!
//! # multi-hypersubstitution
//! default id
//! color 0 swap.hyp
//!
//! # algebra: k^n entries per table, last argument fastest
//! carrier 2
//! table f
//! 0 0 1 1
//!
//! # equation set
//! f(x,y) = f(y,x)
//! ```
//!
//! `#` starts a comment everywhere.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, FiniteAlgebra};
use crate::coloration::{Color, ColorationError, ColorationRule};
use crate::hyp::{HypError, Hypersubstitution};
use crate::mhyp::MultiHypersubstitution;
use crate::parse::{parse_equation, parse_term, strip_comment, ParseError};
use crate::term::{Equation, Signature, Term};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Parse {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("symbol `{0}` is given twice")]
    DuplicateSymbol(String),
    #[error("no image given for symbol `{0}`")]
    MissingSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("`{spec}`: {message}")]
    Coloration { spec: String, message: String },
    #[error(transparent)]
    Hyp(#[from] HypError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rule(#[from] ColorationError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty())
}

fn term_at(line: usize, text: &str, sig: &Signature) -> Result<Term, FormatError> {
    parse_term(text, sig).map_err(|source| FormatError::Parse { line, source })
}

/// Reads `<symbol> -> <term>` lines, one per symbol.
pub fn parse_hyp(text: &str, sig: &Signature) -> Result<Hypersubstitution, FormatError> {
    let mut images: Vec<Option<Term>> = vec![None; sig.len()];
    for (n, line) in lines(text) {
        let (name, rhs) = line
            .split_once("->")
            .ok_or_else(|| syntax(n, "expected `<symbol> -> <term>`"))?;
        let name = name.trim();
        let op = sig
            .lookup(name)
            .ok_or_else(|| FormatError::UnknownSymbol(name.to_string()))?;
        let slot = &mut images[op.index()];
        if slot.is_some() {
            return Err(FormatError::DuplicateSymbol(name.to_string()));
        }
        *slot = Some(term_at(n, rhs, sig)?);
    }
    let images = sig
        .ops()
        .zip(images)
        .map(|(op, t)| t.ok_or_else(|| FormatError::MissingSymbol(sig.name(op).to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Hypersubstitution::new(sig, images)?)
}

pub fn write_hyp(hyp: &Hypersubstitution, sig: &Signature) -> String {
    let mut out = String::new();
    for op in sig.ops() {
        let _ = writeln!(out, "{} -> {}", sig.name(op), hyp.image(op).display(sig));
    }
    out
}

/// Reads `default <ref>` and `color <n> <ref>` lines. Each `<ref>` is handed
/// to `resolve`, which typically accepts a built-in name or a file path.
pub fn parse_mhyp(
    text: &str,
    mut resolve: impl FnMut(&str) -> Result<Hypersubstitution, FormatError>,
) -> Result<MultiHypersubstitution, FormatError> {
    let mut default = None;
    let mut colors: Vec<(Color, Hypersubstitution)> = Vec::new();
    for (n, line) in lines(text) {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["default", r] => {
                if default.is_some() {
                    return Err(syntax(n, "second `default` line"));
                }
                default = Some(resolve(r)?);
            }
            ["color", c, r] => {
                let c: Color = c
                    .parse()
                    .map_err(|_| syntax(n, format!("`{c}` is not a color")))?;
                if colors.iter().any(|(d, _)| *d == c) {
                    return Err(syntax(n, format!("color {c} is given twice")));
                }
                colors.push((c, resolve(r)?));
            }
            _ => return Err(syntax(n, "expected `default <hyp>` or `color <n> <hyp>`")),
        }
    }
    let mut rho = MultiHypersubstitution::new(default.ok_or(FormatError::Missing("default"))?);
    for (c, h) in colors {
        rho.set(c, h);
    }
    Ok(rho)
}

/// Writes `rho` with each hypersubstitution rendered by `name`.
pub fn write_mhyp(
    rho: &MultiHypersubstitution,
    mut name: impl FnMut(&Hypersubstitution) -> String,
) -> String {
    let mut out = format!("default {}\n", name(rho.default_hyp()));
    for (c, h) in rho.table() {
        let _ = writeln!(out, "color {c} {}", name(h));
    }
    out
}

pub fn parse_algebra(text: &str, sig: &Signature) -> Result<FiniteAlgebra, FormatError> {
    let mut tokens = lines(text).flat_map(|(n, l)| l.split_whitespace().map(move |w| (n, w)));
    let size = match tokens.next() {
        Some((_, "carrier")) => {
            let (n, k) = tokens.next().ok_or(FormatError::Missing("carrier size"))?;
            k.parse::<usize>()
                .map_err(|_| syntax(n, format!("`{k}` is not a carrier size")))?
        }
        Some((n, _)) => return Err(syntax(n, "expected `carrier <k>` first")),
        None => return Err(FormatError::Missing("carrier")),
    };
    if size == 0 || size > crate::algebra::MAX_CARRIER {
        return Err(AlgebraError::CarrierSize(size).into());
    }
    let mut tables: Vec<Option<Vec<Elem>>> = vec![None; sig.len()];
    let mut current: Option<usize> = None;
    for (n, w) in tokens {
        if w == "table" {
            continue;
        }
        if let Some(op) = sig.lookup(w) {
            if tables[op.index()].is_some() {
                return Err(FormatError::DuplicateSymbol(w.to_string()));
            }
            tables[op.index()] = Some(Vec::new());
            current = Some(op.index());
            continue;
        }
        let v: usize = w
            .parse()
            .map_err(|_| syntax(n, format!("`{w}` is neither a symbol nor an entry")))?;
        let i = current.ok_or_else(|| syntax(n, "entry before any `table` line"))?;
        let e = Elem::try_from(v).map_err(|_| AlgebraError::EntryOutOfRange {
            symbol: sig.symbols()[i].name.clone(),
            value: v,
            size,
        })?;
        tables[i].as_mut().expect("current table exists").push(e);
    }
    let tables = sig
        .ops()
        .zip(tables)
        .map(|(op, t)| t.ok_or_else(|| FormatError::MissingSymbol(sig.name(op).to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteAlgebra::new(sig, size, tables)?)
}

pub fn write_algebra(a: &FiniteAlgebra, sig: &Signature) -> String {
    let mut out = format!("carrier {}\n", a.size());
    for op in sig.ops() {
        let _ = writeln!(out, "table {}", sig.name(op));
        let row = a.size();
        for chunk in a.table(op).chunks(row) {
            let line: Vec<String> = chunk.iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
    }
    out
}

/// One `<term> = <term>` per line, in file order.
pub fn parse_equations(text: &str, sig: &Signature) -> Result<Vec<Equation>, FormatError> {
    lines(text)
        .map(|(n, l)| {
            parse_equation(l, sig).map_err(|source| FormatError::Parse { line: n, source })
        })
        .collect()
}

pub fn write_equations<'a>(eqs: impl IntoIterator<Item = &'a Equation>, sig: &Signature) -> String {
    let mut out = String::new();
    for e in eqs {
        let _ = writeln!(out, "{}", e.display(sig));
    }
    out
}

/// Parses a coloration spec such as `uniform:0`, `rb-firstlast`,
/// `singleton:f(x,x):1:0` or `one-var-split:uniform:3`.
pub fn parse_coloration(spec: &str, sig: &Signature) -> Result<ColorationRule, FormatError> {
    let bad = |message: &str| FormatError::Coloration {
        spec: spec.to_string(),
        message: message.to_string(),
    };
    let color = |s: &str| -> Result<Color, FormatError> {
        s.trim()
            .parse()
            .map_err(|_| bad(&format!("`{s}` is not a color")))
    };
    let term = |s: &str| -> Result<Term, FormatError> {
        parse_term(s, sig).map_err(|e| bad(&format!("term `{s}`: {e}")))
    };
    let (head, rest) = match spec.split_once(':') {
        Some((h, r)) => (h.trim(), Some(r)),
        None => (spec.trim(), None),
    };
    // Terms never contain `:`, so parameters split cleanly from the right.
    let params = |n: usize| -> Result<Vec<&str>, FormatError> {
        let r = rest.ok_or_else(|| bad("missing parameters"))?;
        let parts: Vec<&str> = r.split(':').collect();
        if parts.len() != n {
            return Err(bad(&format!(
                "expected {n} parameters, found {}",
                parts.len()
            )));
        }
        Ok(parts)
    };
    let rule = match head {
        "uniform" => ColorationRule::Uniform(color(params(1)?[0])?),
        "rb-firstlast" if rest.is_none() => ColorationRule::RbFirstLast,
        "enumeration" if rest.is_none() => ColorationRule::Enumeration(sig.clone()),
        "singleton" => {
            let p = params(3)?;
            ColorationRule::singleton(term(p[0])?, color(p[1])?, color(p[2])?)
        }
        "leftmost-special" => {
            let p = params(4)?;
            ColorationRule::leftmost_special(term(p[0])?, color(p[1])?, color(p[2])?, color(p[3])?)
        }
        "term-equals" => {
            let p = params(3)?;
            ColorationRule::term_equals(term(p[0])?, color(p[1])?, color(p[2])?)
        }
        "one-var-split" => {
            let inner = rest.ok_or_else(|| bad("missing inner rule"))?;
            ColorationRule::one_variable_split(parse_coloration(inner, sig)?)
        }
        "prop63" => {
            let name = params(1)?[0].trim();
            let op = sig
                .lookup(name)
                .ok_or_else(|| FormatError::UnknownSymbol(name.to_string()))?;
            ColorationRule::non_conjugacy(sig, op)?
        }
        "rb-firstlast" | "enumeration" => return Err(bad("takes no parameters")),
        _ => return Err(bad("unknown rule")),
    };
    Ok(rule)
}

/// Builds an explicit table rule from `(term, colors)` pairs.
pub fn table_rule(
    entries: impl IntoIterator<Item = (Term, Vec<Color>)>,
    default: Color,
) -> Result<ColorationRule, FormatError> {
    let entries: BTreeMap<Term, Vec<Color>> = entries.into_iter().collect();
    Ok(ColorationRule::table(entries, default)?)
}
