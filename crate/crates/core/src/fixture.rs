//! Line-oriented text format for L∞-algebras.
//!
//! ```text
//! # comment
//! name heisenberg
//! basis e 0
//! basis x -1
//! basis y -1
//! flag dgla
//! op 2 e x -> 1*y
//! ```
//!
//! `op` lines give `ℓ_n` on the listed inputs; other orderings follow by
//! graded antisymmetry. With `flag symmetric` they give `m_n` on the
//! suspended inputs instead. Brackets not listed are zero.

use std::fmt;

use crate::ce::check_jacobi;
use crate::error::{Error, Result};
use crate::graded::{format_scalar, parse_scalar, Convention, GradedBasis, Scalar};
use crate::linf::{LInfinityAlgebra, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: Option<String>,
    pub dgla: bool,
    pub symmetric: bool,
    pub algebra: LInfinityAlgebra,
}

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, i));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, line.len()));
    }
    out.into_iter()
        .map(|(s, e)| Token {
            text: &line[s..e],
            column: line[..s].chars().count() + 1,
        })
        .collect()
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn valid_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

struct RawOp<'a> {
    line: usize,
    column: usize,
    inputs: Vec<Token<'a>>,
    output: Vec<(Token<'a>, Scalar)>,
}

fn parse_term(line: usize, tok: Token<'_>, negate: bool) -> Result<(Token<'_>, Scalar)> {
    let (coef, sym, offset) = match tok.text.rsplit_once('*') {
        Some((c, s)) => {
            let c = parse_scalar(c)
                .map_err(|_| err(line, tok.column, format!("invalid coefficient `{c}`")))?;
            (c, s, tok.text.len() - s.len())
        }
        None => (Scalar::from_integer(1.into()), tok.text, 0),
    };
    let column = tok.column + tok.text[..offset].chars().count();
    if !valid_symbol(sym) {
        return Err(err(line, column, format!("invalid symbol `{sym}`")));
    }
    let coef = if negate { -coef } else { coef };
    Ok((Token { text: sym, column }, coef))
}

fn parse_op<'a>(line: usize, toks: &[Token<'a>]) -> Result<RawOp<'a>> {
    let head = toks[0];
    let arity_tok = toks
        .get(1)
        .ok_or_else(|| err(line, head.column + 2, "expected arity after `op`"))?;
    let arity: usize = arity_tok
        .text
        .parse()
        .map_err(|_| err(line, arity_tok.column, format!("invalid arity `{}`", arity_tok.text)))?;
    if arity == 0 {
        return Err(err(line, arity_tok.column, "arity must be positive"));
    }
    let arrow = toks
        .iter()
        .position(|t| t.text == "->")
        .ok_or_else(|| err(line, head.column, "expected `->`"))?;
    let inputs = toks[2..arrow].to_vec();
    if inputs.len() != arity {
        let column = inputs.first().map_or(toks[arrow].column, |t| t.column);
        return Err(err(
            line,
            column,
            format!("arity {arity} but {} inputs", inputs.len()),
        ));
    }
    for t in &inputs {
        if !valid_symbol(t.text) {
            return Err(err(line, t.column, format!("invalid symbol `{}`", t.text)));
        }
    }
    let rest = &toks[arrow + 1..];
    if rest.is_empty() {
        return Err(err(line, toks[arrow].column + 2, "expected output after `->`"));
    }
    let mut output = Vec::new();
    if !(rest.len() == 1 && rest[0].text == "0") {
        let mut i = 0;
        let mut negate = false;
        if rest[0].text == "-" {
            negate = true;
            i = 1;
        }
        loop {
            let tok = *rest
                .get(i)
                .ok_or_else(|| err(line, rest[i - 1].column + rest[i - 1].text.len() + 1, "expected term"))?;
            output.push(parse_term(line, tok, negate)?);
            i += 1;
            match rest.get(i) {
                None => break,
                Some(t) if t.text == "+" => negate = false,
                Some(t) if t.text == "-" => negate = true,
                Some(t) => {
                    return Err(err(line, t.column, format!("expected `+` or `-`, found `{}`", t.text)))
                }
            }
            i += 1;
        }
    }
    Ok(RawOp {
        line,
        column: head.column,
        inputs,
        output,
    })
}

/// Parses a fixture and checks the generalized Jacobi identities as
/// `d² = 0` on the Chevalley–Eilenberg algebra.
pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let fixture = parse_fixture_unchecked(text)?;
    check_jacobi(&fixture.algebra)?;
    Ok(fixture)
}

/// Parsing and degree validation only.
pub fn parse_fixture_unchecked(text: &str) -> Result<Fixture> {
    let mut name = None;
    let mut dgla = false;
    let mut symmetric = false;
    let mut basis: Vec<(String, i32)> = Vec::new();
    let mut ops = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(head) = toks.first() else {
            continue;
        };
        match head.text {
            "name" => {
                if toks.len() != 2 {
                    return Err(err(line, head.column, "expected `name <identifier>`"));
                }
                if name.is_some() {
                    return Err(err(line, head.column, "duplicate `name`"));
                }
                name = Some(toks[1].text.to_string());
            }
            "basis" => {
                if toks.len() != 3 {
                    return Err(err(line, head.column, "expected `basis <symbol> <degree>`"));
                }
                if !ops.is_empty() {
                    return Err(err(line, head.column, "`basis` lines must precede `op` lines"));
                }
                if !valid_symbol(toks[1].text) {
                    return Err(err(line, toks[1].column, format!("invalid symbol `{}`", toks[1].text)));
                }
                if basis.iter().any(|(s, _)| s == toks[1].text) {
                    return Err(err(line, toks[1].column, format!("duplicate symbol `{}`", toks[1].text)));
                }
                let degree: i32 = toks[2]
                    .text
                    .parse()
                    .map_err(|_| err(line, toks[2].column, format!("invalid degree `{}`", toks[2].text)))?;
                basis.push((toks[1].text.to_string(), degree));
            }
            "flag" => match toks.get(1).map(|t| t.text) {
                Some("dgla") if toks.len() == 2 => dgla = true,
                Some("symmetric") if toks.len() == 2 => symmetric = true,
                _ => {
                    let column = toks.get(1).map_or(head.column, |t| t.column);
                    return Err(err(line, column, "expected `flag dgla` or `flag symmetric`"));
                }
            },
            "op" => ops.push(parse_op(line, &toks)?),
            other => {
                return Err(err(line, head.column, format!("unknown directive `{other}`")));
            }
        }
    }
    let arity_cap = ops.iter().map(|o| o.inputs.len()).max().unwrap_or(0).max(2);
    let mut algebra = LInfinityAlgebra::new(
        GradedBasis::new(basis, Convention::Homological)?,
        arity_cap,
    )?;
    for op in &ops {
        if dgla && op.inputs.len() >= 3 {
            return Err(err(op.line, op.column, "`flag dgla` forbids brackets of arity ≥ 3"));
        }
        let lookup = |t: &Token<'_>| {
            algebra
                .index(t.text)
                .map_err(|_| err(op.line, t.column, format!("unknown symbol `{}`", t.text)))
        };
        let inputs: Vec<usize> = op.inputs.iter().map(lookup).collect::<Result<_>>()?;
        let mut output = SparseVec::new();
        for (t, c) in &op.output {
            *output.entry(lookup(t)?).or_default() += c;
        }
        let result = if symmetric {
            algebra.set_symmetric(&inputs, output)
        } else {
            algebra.set_bracket(&inputs, output)
        };
        result.map_err(|e| err(op.line, op.column, e.to_string()))?;
    }
    Ok(Fixture {
        name,
        dgla,
        symmetric,
        algebra,
    })
}

impl fmt::Display for Fixture {
    /// Canonical form: name, basis, flags, then one `op` line per stored
    /// value with inputs in basis order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.algebra;
        if let Some(name) = &self.name {
            writeln!(f, "name {name}")?;
        }
        for e in g.basis().entries() {
            writeln!(f, "basis {} {}", e.symbol, e.degree)?;
        }
        if self.dgla {
            writeln!(f, "flag dgla")?;
        }
        if self.symmetric {
            writeln!(f, "flag symmetric")?;
        }
        for n in g.arities() {
            for (key, _) in g.symmetric_entries(n) {
                let value = if self.symmetric {
                    g.m_basis(key)
                } else {
                    g.ell_basis(key)
                };
                let inputs: Vec<&str> = key.iter().map(|&i| g.basis().symbol(i)).collect();
                let terms: Vec<String> = value
                    .iter()
                    .map(|(&o, c)| format!("{}*{}", format_scalar(c), g.basis().symbol(o)))
                    .collect();
                writeln!(f, "op {n} {} -> {}", inputs.join(" "), terms.join(" + "))?;
            }
        }
        Ok(())
    }
}

/// Fixture texts shipped with the library.
pub const BUILTIN: &[(&str, &str)] = &[
    ("abelian", include_str!("../fixtures/abelian.linf")),
    ("filiform", include_str!("../fixtures/filiform.linf")),
    ("free_odd_y", include_str!("../fixtures/free_odd_y.linf")),
    ("heis3", include_str!("../fixtures/heis3.linf")),
    ("heis3_module", include_str!("../fixtures/heis3_module.linf")),
    ("heisenberg", include_str!("../fixtures/heisenberg.linf")),
    ("jacobi_violation", include_str!("../fixtures/jacobi_violation.linf")),
    ("non_nilpotent", include_str!("../fixtures/non_nilpotent.linf")),
    ("truncation", include_str!("../fixtures/truncation.linf")),
];

pub fn builtin_text(name: &str) -> Option<&'static str> {
    BUILTIN.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A shipped fixture, parsed and checked.
pub fn builtin(name: &str) -> Result<Fixture> {
    let text = builtin_text(name).ok_or_else(|| Error::InvalidArgument(format!("no fixture named `{name}`")))?;
    parse_fixture(text)
}
