//! Reading and writing polynomial systems.
//!
//! Text format:
//!
//! ```text
//! ring q=73 vars=x1,x2,x3
//! x1^2 + 3*x1*x2 - 2*x1
//! x2^2 - x3
//! ```
//!
//! An optional `order=hdrl` in the header marks the last variable as the
//! homogenizing one. Blank lines and lines starting with `#` are skipped.
//! The JSON mirror stores each polynomial as a list of
//! `[exponents, coefficient]` pairs.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, OrderKind};
use crate::poly::{PolyError, PolySystem, Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `ring q=<prime> vars=...` header")]
    MissingHeader,
    #[error("bad header: {0}")]
    Header(String),
    #[error("line {0}: constant or zero polynomial")]
    Constant(usize),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn parse_header(line: &str) -> Result<Arc<Ring>, ParseError> {
    let mut words = line.split_whitespace();
    if words.next() != Some("ring") {
        return Err(ParseError::MissingHeader);
    }
    let (mut q, mut vars, mut kind) = (None, None, OrderKind::Drl);
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| ParseError::Header(w.to_string()))?;
        match k {
            "q" => q = Some(v.parse::<u64>().map_err(|_| ParseError::Header(format!("q={v}")))?),
            "vars" => vars = Some(v.split(',').map(str::to_string).collect::<Vec<_>>()),
            "order" => {
                kind = match v {
                    "drl" => OrderKind::Drl,
                    "hdrl" => OrderKind::Hdrl,
                    _ => return Err(ParseError::Header(format!("order={v}"))),
                }
            }
            _ => return Err(ParseError::Header(w.to_string())),
        }
    }
    let q = q.ok_or_else(|| ParseError::Header("missing q".into()))?;
    let names = vars.ok_or_else(|| ParseError::Header("missing vars".into()))?;
    ring_from_parts(q, names, kind)
}

fn ring_from_parts(q: u64, names: Vec<String>, kind: OrderKind) -> Result<Arc<Ring>, ParseError> {
    let field = PrimeField::new(q).map_err(|e| ParseError::Header(e.to_string()))?;
    if names.is_empty() || names.iter().any(|v| !is_ident(v)) {
        return Err(ParseError::Header(format!("bad variable list {names:?}")));
    }
    let mut sorted = names.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != names.len() {
        return Err(ParseError::Header("duplicate variable".into()));
    }
    let order = match kind {
        OrderKind::Drl => MonomialOrder::drl(names.len()),
        OrderKind::Hdrl => {
            if names.len() < 2 {
                return Err(ParseError::Header("hdrl needs at least two variables".into()));
            }
            MonomialOrder::drl(names.len() - 1).homogenized()
        }
    };
    Ok(Ring::with_names(field, names, order)?)
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u128),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex(s: &str, line: usize) -> Result<Vec<Tok>, ParseError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = cs[st..i].iter().collect();
                out.push(Tok::Num(text.parse().map_err(|_| syntax(line, "number too large"))?));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let st = i;
                while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(cs[st..i].iter().collect()));
            }
            other => return Err(syntax(line, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

/// Parse one polynomial in `ring`. `line` is only used for messages.
pub fn parse_polynomial(ring: &Arc<Ring>, s: &str, line: usize) -> Result<Polynomial, ParseError> {
    let toks = lex(s, line)?;
    let field = ring.field();
    let q = field.modulus() as u128;
    let n = ring.nvars();
    let mut terms: Vec<(Monomial, i64)> = Vec::new();
    let mut i = 0;
    if toks.is_empty() {
        return Err(syntax(line, "empty polynomial"));
    }
    loop {
        let mut sign = 1i64;
        while let Some(t @ (Tok::Plus | Tok::Minus)) = toks.get(i) {
            if *t == Tok::Minus {
                sign = -sign;
            }
            i += 1;
        }
        let mut coeff: u128 = 1;
        let mut exps = vec![0u16; n];
        loop {
            match toks.get(i) {
                Some(Tok::Num(v)) => {
                    coeff = coeff * (v % q) % q;
                    i += 1;
                }
                Some(Tok::Ident(name)) => {
                    let v = ring
                        .names()
                        .iter()
                        .position(|x| x == name)
                        .ok_or_else(|| syntax(line, format!("unknown variable {name}")))?;
                    i += 1;
                    let mut e: u128 = 1;
                    if toks.get(i) == Some(&Tok::Caret) {
                        match toks.get(i + 1) {
                            Some(Tok::Num(k)) => e = *k,
                            _ => return Err(syntax(line, "expected exponent after ^")),
                        }
                        i += 2;
                    }
                    let total = exps[v] as u128 + e;
                    if total > u16::MAX as u128 {
                        return Err(syntax(line, "exponent too large"));
                    }
                    exps[v] = total as u16;
                }
                _ => return Err(syntax(line, "expected a number or variable")),
            }
            if toks.get(i) == Some(&Tok::Star) {
                i += 1;
            } else {
                break;
            }
        }
        terms.push((Monomial::new(&exps), sign * coeff as i64));
        match toks.get(i) {
            None => break,
            Some(Tok::Plus | Tok::Minus) => continue,
            Some(t) => return Err(syntax(line, format!("unexpected token {t:?}"))),
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Parse a whole system in the text format.
pub fn parse_system(text: &str) -> Result<PolySystem, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('#')
    });
    let (_, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let ring = parse_header(header.trim())?;
    let mut polys = Vec::new();
    for (k, l) in lines {
        let f = parse_polynomial(&ring, l, k + 1)?;
        if f.is_constant() {
            return Err(ParseError::Constant(k + 1));
        }
        polys.push(f);
    }
    Ok(PolySystem::new(&ring, polys)?)
}

fn header_line(ring: &Ring) -> String {
    let order = if ring.is_homogenized() { " order=hdrl" } else { "" };
    format!("ring q={} vars={}{}", ring.field().modulus(), ring.names().join(","), order)
}

/// Inverse of [`parse_system`].
pub fn write_system(sys: &PolySystem) -> String {
    let mut s = header_line(sys.ring());
    s.push('\n');
    for p in sys.polys() {
        s.push_str(&p.to_string());
        s.push('\n');
    }
    s
}

/// Header plus one polynomial per line, for bases that are not systems
/// (they may contain constants).
pub fn write_basis(ring: &Ring, basis: &[Polynomial]) -> String {
    let mut s = header_line(ring);
    s.push('\n');
    for p in basis {
        s.push_str(&p.to_string());
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemJson {
    pub q: u64,
    pub vars: Vec<String>,
    #[serde(default = "default_kind")]
    pub order: OrderKind,
    pub polys: Vec<Vec<(Vec<u16>, i64)>>,
}

fn default_kind() -> OrderKind {
    OrderKind::Drl
}

impl SystemJson {
    pub fn from_system(sys: &PolySystem) -> Self {
        let r = sys.ring();
        SystemJson {
            q: r.field().modulus() as u64,
            vars: r.names().to_vec(),
            order: r.order().kind(),
            polys: sys
                .polys()
                .iter()
                .map(|p| p.terms().iter().map(|t| (t.monomial.exponents().to_vec(), t.coeff as i64)).collect())
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<PolySystem, ParseError> {
        let ring = ring_from_parts(self.q, self.vars.clone(), self.order)?;
        let mut polys = Vec::new();
        for (k, ts) in self.polys.iter().enumerate() {
            if ts.iter().any(|(e, _)| e.len() != ring.nvars()) {
                return Err(ParseError::Json(format!("polynomial {k}: exponent vector length")));
            }
            let f = Polynomial::from_terms(&ring, ts.iter().map(|(e, c)| (Monomial::new(e), *c)));
            if f.is_constant() {
                return Err(ParseError::Constant(k + 1));
            }
            polys.push(f);
        }
        Ok(PolySystem::new(&ring, polys)?)
    }
}

pub fn system_to_json(sys: &PolySystem) -> String {
    serde_json::to_string_pretty(&SystemJson::from_system(sys)).expect("serializable")
}

pub fn system_from_json(s: &str) -> Result<PolySystem, ParseError> {
    let j: SystemJson = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
    j.to_system()
}

/// Sniff the format: JSON if the first non-space character is `{`.
pub fn read_system(s: &str) -> Result<PolySystem, ParseError> {
    if s.trim_start().starts_with('{') {
        system_from_json(s)
    } else {
        parse_system(s)
    }
}
