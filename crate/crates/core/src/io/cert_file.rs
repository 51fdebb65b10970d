use std::fmt::Write as _;

use super::{blocks, parse_header, ParseError, ParseErrorKind};
use crate::certify::{Certificate, Identity, ListedCertificate, Reduction, MAX_DEPTH};
use crate::superalgebra::Parity;

struct KindParser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col0: usize,
}

impl<'a> KindParser<'a> {
    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line, self.col0 + self.pos, kind)
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        self.err(ParseErrorKind::Syntax(msg.into()))
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| c.is_whitespace() || c == '{' || c == '}' || c == '"').unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn expect(&mut self, token: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len_utf8();
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{token}`")))
        }
    }

    fn citation(&mut self) -> Result<String, ParseError> {
        let w = self.word();
        if w != "cite=" {
            return Err(self.syntax("expected `cite=\"...\"`"));
        }
        self.expect('"')?;
        let rest = &self.src[self.pos..];
        let end = rest.find('"').ok_or_else(|| self.syntax("unterminated citation"))?;
        self.pos += end + 1;
        let text = rest[..end].to_string();
        if text.trim().is_empty() {
            return Err(self.err(ParseErrorKind::Invalid("citation must be nonempty".into())));
        }
        Ok(text)
    }

    fn keyed<T>(&mut self, key: &str, parse: impl Fn(&str) -> Option<T>) -> Result<T, ParseError> {
        let w = self.word();
        w.strip_prefix(key)
            .and_then(|v| v.strip_prefix('='))
            .and_then(parse)
            .ok_or_else(|| self.syntax(format!("expected `{key}=...`, found `{w}`")))
    }

    fn kind(&mut self, depth: usize) -> Result<Certificate, ParseError> {
        if depth > MAX_DEPTH {
            return Err(self.err(ParseErrorKind::BadRecursion(format!("nesting deeper than {MAX_DEPTH}"))));
        }
        let start = self.pos;
        let w = self.word();
        let reduction = match w {
            "aut-dim" => return Ok(Certificate::AutDim),
            "power-dim" => {
                let r = self.keyed("r", |v| v.parse::<usize>().ok())?;
                let parity = self.keyed("parity", |v| match v {
                    "even" => Some(Parity::Even),
                    "odd" => Some(Parity::Odd),
                    _ => None,
                })?;
                return Ok(Certificate::PowerDim { r, parity });
            }
            "identity" => {
                let id = self.word();
                if id != "associativity" {
                    return Err(self.syntax(format!("unknown identity `{id}`")));
                }
                return Ok(Certificate::IdentityPreservation(Identity::Associativity));
            }
            "external" => return Ok(Certificate::ExternalFact { citation: self.citation()? }),
            "rigid-even-part" => return Ok(Certificate::RigidEvenPart { citation: self.citation()? }),
            "even-part" => Reduction::EvenPart,
            "a-part" => Reduction::APart,
            "f-part" => Reduction::FPart,
            "" => return Err(self.syntax("expected a certificate kind")),
            other => {
                self.pos = start;
                self.skip_ws();
                return Err(self.err(ParseErrorKind::UnknownKind(other.to_string())));
            }
        };
        self.expect('{').map_err(|_| self.err(ParseErrorKind::BadRecursion(format!("`{w}` needs a braced inner kind"))))?;
        self.skip_ws();
        if self.src[self.pos..].starts_with('}') {
            return Err(self.err(ParseErrorKind::BadRecursion(format!("`{w}` has an empty body"))));
        }
        let inner = self.kind(depth + 1)?;
        self.expect('}').map_err(|_| self.err(ParseErrorKind::BadRecursion("unbalanced braces".into())))?;
        Ok(Certificate::reduced(reduction, inner))
    }
}

/// Parses the text after `kind =`. `line`/`col0` locate it for errors.
pub fn parse_certificate_kind(src: &str, line: usize, col0: usize) -> Result<Certificate, ParseError> {
    let mut p = KindParser { src, pos: 0, line, col0 };
    let c = p.kind(1)?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.syntax("trailing input after certificate kind"));
    }
    Ok(c)
}

pub fn parse_certificates(text: &str) -> Result<Vec<ListedCertificate>, ParseError> {
    let mut out = Vec::new();
    for (header, body) in blocks(text)? {
        let names = parse_header(&header, "noncert")?;
        if names.len() != 2 {
            return Err(header.syntax(1, "expected `[noncert \"SOURCE\" -> \"TARGET\"]`"));
        }
        let mut certificate = None;
        for line in body {
            let trimmed = line.text.trim_start();
            let indent = line.text.len() - trimmed.len();
            let rest = trimmed
                .strip_prefix("kind")
                .map(str::trim_start)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| line.syntax(indent + 1, "expected `kind = ...`"))?;
            if certificate.is_some() {
                return Err(line.syntax(indent + 1, "certificate kind given twice"));
            }
            let col0 = line.text.len() - rest.len() + 1;
            certificate = Some(parse_certificate_kind(rest, line.no, col0)?);
        }
        let certificate = certificate.ok_or_else(|| header.syntax(1, "missing `kind = ...` line"))?;
        let mut names = names.into_iter();
        out.push(ListedCertificate { source: names.next().unwrap(), target: names.next().unwrap(), certificate });
    }
    Ok(out)
}

pub fn serialize_certificates(certs: &[ListedCertificate]) -> String {
    let mut out = String::new();
    for (i, c) in certs.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "[noncert \"{}\" -> \"{}\"]\nkind = {}", c.source, c.target, c.certificate).unwrap();
    }
    out
}
