//! Line-oriented text formats for catalogs, witnesses, certificates and
//! published claims, plus DOT and JSON output.
//!
//! All formats share the expression syntax `TERM (+ TERM)*` with
//! `TERM := [RAT] [t^INT] SYM`; the `t` factor is only legal in witness files.
//! Lines starting with `#` are comments.

mod catalog_file;
mod cert_file;
mod claims_file;
mod dot;
pub mod report;
mod witness_file;

pub use catalog_file::{parse_catalog, serialize_catalog};
pub use cert_file::{parse_certificate_kind, parse_certificates, serialize_certificates};
pub use claims_file::{parse_claims, Claims, ClosureClaim};
pub use dot::export_dot;
pub use witness_file::{parse_witnesses, serialize_witnesses};

use std::fmt;

use crate::scalars::Rational;
use crate::superalgebra::{Parity, SuperType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate product {0}")]
    DuplicateProduct(String),
    #[error("symbol {sym} out of range for type {stype}")]
    IndexOutOfRange { sym: String, stype: SuperType },
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("{lhs} is {expected} but {sym} is not")]
    ParityMixing { lhs: String, sym: String, expected: Parity },
    #[error("{0} is never assigned")]
    MissingAssignment(String),
    #[error("{0} is assigned twice")]
    DuplicateAssignment(String),
    #[error("unknown certificate kind {0:?}")]
    UnknownKind(String),
    #[error("bad recursion: {0}")]
    BadRecursion(String),
    #[error("{0}")]
    Invalid(String),
}

/// Error with a 1-based position in the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.kind)
    }
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }

    pub(crate) fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        ParseError::new(line, column, ParseErrorKind::Syntax(msg.into()))
    }
}

/// A line with its 1-based number, skipping nothing.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Line<'a> {
    pub no: usize,
    pub text: &'a str,
}

impl<'a> Line<'a> {
    pub fn is_blank(&self) -> bool {
        self.text.trim().is_empty()
    }

    pub fn is_comment(&self) -> bool {
        self.text.trim_start().starts_with('#')
    }

    /// Whitespace-separated tokens with their 1-based columns.
    pub fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s + 1, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s + 1, &self.text[s..]));
        }
        out
    }

    pub fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.no, column, kind)
    }

    pub fn syntax(&self, column: usize, msg: impl Into<String>) -> ParseError {
        ParseError::syntax(self.no, column, msg)
    }
}

pub(crate) fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines().enumerate().map(|(i, text)| Line { no: i + 1, text }).collect()
}

/// Groups lines into blocks that start at a `[` header. Comments and blank
/// lines are dropped; text before the first header is an error.
pub(crate) fn blocks<'a>(text: &'a str) -> Result<Vec<(Line<'a>, Vec<Line<'a>>)>, ParseError> {
    let mut out: Vec<(Line<'a>, Vec<Line<'a>>)> = Vec::new();
    for line in lines(text) {
        if line.is_blank() || line.is_comment() {
            continue;
        }
        if line.text.trim_start().starts_with('[') {
            out.push((line, Vec::new()));
        } else {
            match out.last_mut() {
                Some((_, body)) => body.push(line),
                None => return Err(line.syntax(1, "expected a `[...]` header")),
            }
        }
    }
    Ok(out)
}

/// Parses `[word "A"]` or `[word "A" -> "B"]`, returning the quoted names.
pub(crate) fn parse_header(line: &Line<'_>, word: &str) -> Result<Vec<String>, ParseError> {
    let t = line.text.trim();
    let col0 = line.text.len() - line.text.trim_start().len() + 1;
    let inner = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .and_then(|s| s.strip_prefix(word))
        .ok_or_else(|| line.syntax(col0, format!("expected `[{word} \"NAME\"]`")))?;
    let mut names = Vec::new();
    let mut rest = inner.trim_start();
    loop {
        let col = col0 + t.len() - rest.len() - 1;
        let body = rest.strip_prefix('"').ok_or_else(|| line.syntax(col, "expected a quoted name"))?;
        let end = body.find('"').ok_or_else(|| line.syntax(col, "unterminated name"))?;
        if end == 0 {
            return Err(line.syntax(col, "empty name"));
        }
        names.push(body[..end].to_string());
        rest = body[end + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix("->").ok_or_else(|| line.syntax(col0 + t.len() - rest.len() - 1, "expected `->`"))?.trim_start();
    }
    Ok(names)
}

/// Basis symbol `e<i>` / `f<j>` to a combined index.
pub(crate) fn parse_symbol(line: &Line<'_>, col: usize, tok: &str, stype: SuperType) -> Result<usize, ParseError> {
    let (parity, digits) = match tok.split_at(tok.len().min(1)) {
        ("e", d) => (Parity::Even, d),
        ("f", d) => (Parity::Odd, d),
        _ => return Err(line.syntax(col, format!("expected a basis symbol, found `{tok}`"))),
    };
    let i: usize = digits.parse().map_err(|_| line.syntax(col, format!("expected a basis symbol, found `{tok}`")))?;
    let bound = if parity == Parity::Even { stype.m } else { stype.n };
    if i == 0 || i > bound {
        return Err(line.err(col, ParseErrorKind::IndexOutOfRange { sym: tok.to_string(), stype }));
    }
    Ok(if parity == Parity::Even { i - 1 } else { stype.m + i - 1 })
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Term {
    pub coeff: Rational,
    pub t_power: i64,
    pub sym: usize,
    pub column: usize,
}

fn parse_t_factor(tok: &str) -> Option<i64> {
    match tok {
        "t" => Some(1),
        _ => tok.strip_prefix("t^").and_then(|k| k.parse().ok()),
    }
}

/// Parses an expression from `tokens` (already split off the `=`).
pub(crate) fn parse_expr(line: &Line<'_>, tokens: &[(usize, &str)], stype: SuperType, allow_t: bool) -> Result<Vec<Term>, ParseError> {
    let end_col = line.text.trim_end().len() + 1;
    if tokens.is_empty() {
        return Err(line.syntax(end_col, "expected an expression"));
    }
    if tokens.len() == 1 && tokens[0].1 == "0" {
        return Ok(Vec::new());
    }
    let mut terms = Vec::new();
    for group in tokens.split(|(_, tok)| *tok == "+") {
        let Some(&(sym_col, sym_tok)) = group.last() else {
            let col = tokens.iter().find(|(_, t)| *t == "+").map_or(end_col, |(c, _)| *c);
            return Err(line.syntax(col, "empty term"));
        };
        let sym = parse_symbol(line, sym_col, sym_tok, stype)?;
        let mut coeff = Rational::from_int(1);
        let mut t_power = 0;
        let prefix = &group[..group.len() - 1];
        let mut rest = prefix;
        if let Some(&(col, tok)) = rest.first() {
            if parse_t_factor(tok).is_none() {
                coeff = tok.parse().map_err(|_| line.syntax(col, format!("expected a rational coefficient, found `{tok}`")))?;
                rest = &rest[1..];
            }
        }
        if let Some(&(col, tok)) = rest.first() {
            let k = parse_t_factor(tok).ok_or_else(|| line.syntax(col, format!("unexpected `{tok}`")))?;
            if !allow_t {
                return Err(line.syntax(col, "parameter `t` is only allowed in witness files"));
            }
            t_power = k;
            rest = &rest[1..];
        }
        if let Some(&(col, tok)) = rest.first() {
            return Err(line.syntax(col, format!("unexpected `{tok}`")));
        }
        terms.push(Term { coeff, t_power, sym, column: group[0].0 });
    }
    Ok(terms)
}

/// Formats `coeff [t^k] sym` terms joined by ` + `; `0` when empty.
pub(crate) fn format_terms(terms: &[(Rational, i64, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(c, k, sym)| {
            let mut parts = Vec::new();
            if *c != Rational::from_int(1) {
                parts.push(c.to_string());
            }
            match k {
                0 => {}
                1 => parts.push("t".into()),
                k => parts.push(format!("t^{k}")),
            }
            parts.push(sym.clone());
            parts.join(" ")
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(text: &str) -> Line<'_> {
        Line { no: 3, text }
    }

    #[test]
    fn tokens_have_columns() {
        let l = line("  ab  c");
        assert_eq!(l.tokens(), vec![(3, "ab"), (7, "c")]);
    }

    #[test]
    fn headers() {
        assert_eq!(parse_header(&line("[algebra \"(1,3)_2\"]"), "algebra").unwrap(), vec!["(1,3)_2"]);
        assert_eq!(parse_header(&line("[witness \"a\" -> \"b\"]"), "witness").unwrap(), vec!["a", "b"]);
        assert!(parse_header(&line("[witness \"a\" \"b\"]"), "witness").is_err());
        assert!(parse_header(&line("[algebra a]"), "algebra").is_err());
    }

    #[test]
    fn expressions() {
        let st = SuperType::new(1, 3).unwrap();
        let l = line("1/4 t^2 f2 + t^-1 f3 + -2 e1");
        let terms = parse_expr(&l, &l.tokens(), st, true).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!((terms[0].coeff.clone(), terms[0].t_power, terms[0].sym), (Rational::new(1, 4), 2, 2));
        assert_eq!((terms[1].t_power, terms[1].sym), (-1, 3));
        assert_eq!((terms[2].coeff.clone(), terms[2].sym), (Rational::from_int(-2), 0));
        assert!(parse_expr(&l, &l.tokens(), st, false).is_err());
        let bad = line("e1 + f4");
        let e = parse_expr(&bad, &bad.tokens(), st, false).unwrap_err();
        assert_eq!(e.column, 6);
        assert!(matches!(e.kind, ParseErrorKind::IndexOutOfRange { .. }));
        let zero = line("0");
        assert!(parse_expr(&zero, &zero.tokens(), st, false).unwrap().is_empty());
        let dec = line("0.5 e1");
        assert!(parse_expr(&dec, &dec.tokens(), st, false).is_err());
    }

    #[test]
    fn term_formatting() {
        let t = vec![(Rational::new(1, 2), 1, "f3".to_string()), (Rational::from_int(1), 0, "e1".into()), (Rational::from_int(-1), -2, "e2".into())];
        assert_eq!(format_terms(&t), "1/2 t f3 + e1 + -1 t^-2 e2");
        assert_eq!(format_terms(&[]), "0");
    }
}
