use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::Zero;

use super::{blocks, format_terms, parse_expr, parse_header, parse_symbol, ParseError, ParseErrorKind};
use crate::catalog::{Catalog, CatalogEntry, Expectations};
use crate::scalars::Rational;
use crate::superalgebra::{StructureConstants, SuperAlgebra, SuperType};

fn parse_type(s: &str) -> Option<(usize, usize)> {
    let (m, n) = s.strip_prefix('(')?.strip_suffix(')')?.split_once(',')?;
    Some((m.trim().parse().ok()?, n.trim().parse().ok()?))
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" => Some(true),
        "false" => Some(false),
        _ => None,
    }
}

/// Parses a catalog file. Omitted products are zero; each product line also
/// fixes its supercommuted partner.
pub fn parse_catalog(text: &str) -> Result<Catalog, ParseError> {
    let mut entries: Vec<CatalogEntry> = Vec::new();
    let mut catalog_type: Option<SuperType> = None;
    for (header, body) in blocks(text)? {
        let name = parse_header(&header, "algebra")?.into_iter().next().unwrap();
        if entries.iter().any(|e| e.name() == name) {
            return Err(header.err(1, ParseErrorKind::DuplicateName(name)));
        }
        let mut constants: Option<StructureConstants<Rational>> = None;
        let mut expected = Expectations::default();
        let mut seen = HashSet::new();
        for line in body {
            let toks = line.tokens();
            let words: Vec<&str> = toks.iter().map(|(_, t)| *t).collect();
            match words.as_slice() {
                ["type", "=", rest @ ..] => {
                    let joined = rest.join("");
                    let (m, n) = parse_type(&joined).ok_or_else(|| line.syntax(toks[2].0, "expected `(m,n)`"))?;
                    let stype = SuperType::new(m, n).map_err(|e| line.err(toks[2].0, ParseErrorKind::Invalid(e.to_string())))?;
                    if constants.is_some() {
                        return Err(line.syntax(toks[0].0, "type given twice"));
                    }
                    if let Some(ct) = catalog_type {
                        if ct != stype {
                            return Err(line.err(toks[2].0, ParseErrorKind::Invalid(format!("type {stype} differs from catalog type {ct}"))));
                        }
                    }
                    catalog_type = Some(stype);
                    constants = Some(StructureConstants::zero(stype));
                }
                ["product", _, _, "=", ..] => {
                    let c = constants.as_mut().ok_or_else(|| line.syntax(toks[0].0, "product before `type`"))?;
                    let stype = c.stype();
                    let a = parse_symbol(&line, toks[1].0, toks[1].1, stype)?;
                    let b = parse_symbol(&line, toks[2].0, toks[2].1, stype)?;
                    if !seen.insert((a.min(b), a.max(b))) {
                        return Err(line.err(toks[1].0, ParseErrorKind::DuplicateProduct(format!("{} {}", toks[1].1, toks[2].1))));
                    }
                    let mut v = vec![Rational::zero(); stype.dim()];
                    for term in parse_expr(&line, &toks[4..], stype, false)? {
                        v[term.sym] = &v[term.sym] + &term.coeff;
                    }
                    c.set_product(a, b, &v).map_err(|e| line.err(toks[1].0, ParseErrorKind::Invalid(e.to_string())))?;
                }
                ["expect", key, "=", value] => {
                    let col = toks[3].0;
                    match *key {
                        "dim_aut" => expected.dim_aut = Some(value.parse().map_err(|_| line.syntax(col, "expected an integer"))?),
                        "associative" => expected.associative = Some(parse_bool(value).ok_or_else(|| line.syntax(col, "expected a boolean"))?),
                        "nilpotent" => expected.nilpotent = Some(parse_bool(value).ok_or_else(|| line.syntax(col, "expected a boolean"))?),
                        other => return Err(line.syntax(toks[1].0, format!("unknown expectation `{other}`"))),
                    }
                }
                _ => return Err(line.syntax(toks.first().map_or(1, |t| t.0), "expected `type`, `product` or `expect` line")),
            }
        }
        let constants = constants.ok_or_else(|| header.syntax(1, format!("algebra {name:?} has no `type` line")))?;
        entries.push(CatalogEntry { algebra: SuperAlgebra::new(name, constants), expected });
    }
    Catalog::new(entries).map_err(|e| ParseError::new(1, 1, ParseErrorKind::Invalid(e.to_string())))
}

/// Normalized text: products `a <= b` in index order, coefficient-1 terms bare.
pub fn serialize_catalog(catalog: &Catalog) -> String {
    let mut out = String::new();
    for (i, e) in catalog.entries().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let st = e.algebra.stype();
        writeln!(out, "[algebra \"{}\"]", e.name()).unwrap();
        writeln!(out, "type = ({},{})", st.m, st.n).unwrap();
        for (a, b, v) in e.algebra.constants.nonzero_products() {
            let terms: Vec<_> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c.clone(), 0, st.symbol(k))).collect();
            writeln!(out, "product {} {} = {}", st.symbol(a), st.symbol(b), format_terms(&terms)).unwrap();
        }
        if let Some(d) = e.expected.dim_aut {
            writeln!(out, "expect dim_aut = {d}").unwrap();
        }
        if let Some(a) = e.expected.associative {
            writeln!(out, "expect associative = {a}").unwrap();
        }
        if let Some(n) = e.expected.nilpotent {
            writeln!(out, "expect nilpotent = {n}").unwrap();
        }
    }
    out
}
