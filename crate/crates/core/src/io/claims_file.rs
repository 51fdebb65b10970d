//! Published claims to reconcile against: rigid list, closure lists, subvariety
//! components, open pairs and the quoted determination rate. Entries are
//! catalog short labels (`14` for `(1,3)_14`).
//!
//! ```text
//! rigid = 1 2 4
//! closure 6 = 4 6 12 ? 2 3
//! component nilpotent 15 = 14 15 19 20
//! open 6 -> 2 3 28 40
//! determination-rate = 99.05
//! ```
//!
//! Labels after `?` in a closure are members the source leaves undecided.

use std::collections::BTreeMap;

use super::{lines, ParseError};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClosureClaim {
    pub generator: String,
    pub members: Vec<String>,
    pub open: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Claims {
    pub rigid: Option<Vec<String>>,
    pub closures: Vec<ClosureClaim>,
    /// Keyed by `associative` / `nilpotent`.
    pub subvarieties: BTreeMap<String, Vec<ClosureClaim>>,
    pub open_pairs: Vec<(String, String)>,
    /// Percentage exactly as quoted.
    pub determination_rate: Option<String>,
}

fn labels(toks: &[(usize, &str)]) -> Vec<String> {
    toks.iter().map(|(_, t)| t.to_string()).collect()
}

fn closure(generator: &str, toks: &[(usize, &str)]) -> ClosureClaim {
    let split = toks.iter().position(|(_, t)| *t == "?").unwrap_or(toks.len());
    ClosureClaim {
        generator: generator.to_string(),
        members: labels(&toks[..split]),
        open: labels(toks.get(split + 1..).unwrap_or(&[])),
    }
}

pub fn parse_claims(text: &str) -> Result<Claims, ParseError> {
    let mut claims = Claims::default();
    for line in lines(text) {
        if line.is_blank() || line.is_comment() {
            continue;
        }
        let toks = line.tokens();
        let words: Vec<&str> = toks.iter().map(|(_, t)| *t).collect();
        match words.as_slice() {
            ["rigid", "=", ..] => {
                if claims.rigid.is_some() {
                    return Err(line.syntax(toks[0].0, "rigid list given twice"));
                }
                claims.rigid = Some(labels(&toks[2..]));
            }
            ["closure", g, "=", ..] => claims.closures.push(closure(g, &toks[3..])),
            ["component", sub @ ("associative" | "nilpotent"), g, "=", ..] => {
                claims.subvarieties.entry(sub.to_string()).or_default().push(closure(g, &toks[4..]))
            }
            ["component", other, ..] => return Err(line.syntax(toks[1].0, format!("unknown subvariety `{other}`"))),
            ["open", s, "->", targets @ ..] if !targets.is_empty() => {
                claims.open_pairs.extend(targets.iter().map(|t| (s.to_string(), t.to_string())))
            }
            ["determination-rate", "=", rate] => {
                rate.parse::<f64>().map_err(|_| line.syntax(toks[2].0, "expected a percentage"))?;
                claims.determination_rate = Some(rate.to_string());
            }
            _ => return Err(line.syntax(toks[0].0, "expected `rigid`, `closure`, `component`, `open` or `determination-rate`")),
        }
    }
    Ok(claims)
}
