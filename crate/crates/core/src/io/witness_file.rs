use std::fmt::Write as _;

use num_traits::Zero;

use super::{blocks, format_terms, parse_expr, parse_header, ParseError, ParseErrorKind};
use crate::deformation::{BasisFamily, DeformationWitness};
use crate::scalars::{FieldMatrix, RatFunc};
use crate::superalgebra::{Parity, SuperType};

fn parse_lhs(tok: &str, stype: SuperType) -> Option<(Parity, usize)> {
    let (parity, digits) = match tok.split_at(tok.len().min(1)) {
        ("E", d) => (Parity::Even, d),
        ("F", d) => (Parity::Odd, d),
        _ => return None,
    };
    let i: usize = digits.parse().ok()?;
    let bound = if parity == Parity::Even { stype.m } else { stype.n };
    (1..=bound).contains(&i).then_some((parity, i - 1))
}

/// Parses witness blocks for algebras of type `stype`.
///
/// `Ei = ...` must use even symbols and `Fj = ...` odd ones; each new basis
/// vector is assigned exactly once.
pub fn parse_witnesses(text: &str, stype: SuperType) -> Result<Vec<DeformationWitness>, ParseError> {
    let mut out = Vec::new();
    for (header, body) in blocks(text)? {
        let names = parse_header(&header, "witness")?;
        if names.len() != 2 {
            return Err(header.syntax(1, "expected `[witness \"SOURCE\" -> \"TARGET\"]`"));
        }
        let mut even = FieldMatrix::<RatFunc>::zeros(stype.m, stype.m);
        let mut odd = FieldMatrix::<RatFunc>::zeros(stype.n, stype.n);
        let mut assigned = vec![false; stype.dim()];
        for line in body {
            let toks = line.tokens();
            if toks.len() < 3 || toks[1].1 != "=" {
                return Err(line.syntax(toks.first().map_or(1, |t| t.0), "expected `Ei = EXPR` or `Fj = EXPR`"));
            }
            let (lhs_col, lhs) = toks[0];
            let (parity, j) = parse_lhs(lhs, stype).ok_or_else(|| line.syntax(lhs_col, format!("expected E1..E{} or F1..F{}, found `{lhs}`", stype.m, stype.n)))?;
            let combined = if parity == Parity::Even { j } else { stype.m + j };
            if assigned[combined] {
                return Err(line.err(lhs_col, ParseErrorKind::DuplicateAssignment(lhs.to_string())));
            }
            assigned[combined] = true;
            for term in parse_expr(&line, &toks[2..], stype, true)? {
                if stype.parity(term.sym) != parity {
                    return Err(line.err(term.column, ParseErrorKind::ParityMixing { lhs: lhs.to_string(), sym: stype.symbol(term.sym), expected: parity }));
                }
                let value = RatFunc::laurent_monomial(term.coeff, term.t_power);
                let (block, row) = match parity {
                    Parity::Even => (&mut even, term.sym),
                    Parity::Odd => (&mut odd, term.sym - stype.m),
                };
                block[(row, j)] = &block[(row, j)] + &value;
            }
        }
        if let Some(missing) = assigned.iter().position(|a| !a) {
            let label = if missing < stype.m { format!("E{}", missing + 1) } else { format!("F{}", missing - stype.m + 1) };
            return Err(header.err(1, ParseErrorKind::MissingAssignment(label)));
        }
        let family = BasisFamily::new(even, odd).expect("blocks are square");
        let mut names = names.into_iter();
        out.push(DeformationWitness { source: names.next().unwrap(), target: names.next().unwrap(), family });
    }
    Ok(out)
}

/// Normalized text. Entries must be Laurent polynomials in `t`, which is
/// always the case for parsed families.
pub fn serialize_witnesses(witnesses: &[DeformationWitness]) -> String {
    let mut out = String::new();
    for (i, w) in witnesses.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let st = w.family.stype();
        writeln!(out, "[witness \"{}\" -> \"{}\"]", w.source, w.target).unwrap();
        for (parity, letter, offset, size) in [(Parity::Even, 'E', 0, st.m), (Parity::Odd, 'F', st.m, st.n)] {
            let block = w.family.block(parity);
            for j in 0..size {
                let mut terms = Vec::new();
                for r in 0..size {
                    let entry = &block[(r, j)];
                    if entry.is_zero() {
                        continue;
                    }
                    let laurent = entry.laurent_terms().expect("witness entries are Laurent polynomials");
                    terms.extend(laurent.into_iter().map(|(k, c)| (c, k, st.symbol(offset + r))));
                }
                writeln!(out, "{letter}{} = {}", j + 1, format_terms(&terms)).unwrap();
            }
        }
    }
    out
}
