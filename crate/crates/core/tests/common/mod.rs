#![allow(dead_code)]

use std::path::PathBuf;

use jsvariety::catalog::Catalog;
use jsvariety::certify::ListedCertificate;
use jsvariety::deformation::DeformationWitness;
use jsvariety::io::report::{self, PipelineInput, Report};
use jsvariety::io::{parse_catalog, parse_certificates, parse_claims, parse_witnesses, Claims};
use jsvariety::variety::Relation;

pub fn data_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(file)
}

pub fn read(file: &str) -> String {
    std::fs::read_to_string(data_path(file)).unwrap_or_else(|e| panic!("{file}: {e}"))
}

pub struct Dataset {
    pub catalog: Catalog,
    pub witnesses: Vec<DeformationWitness>,
    pub certificates: Vec<ListedCertificate>,
    pub claims: Claims,
}

/// `tag` is `13` or `31`.
pub fn dataset(tag: &str) -> Dataset {
    let catalog = parse_catalog(&read(&format!("catalog{tag}.jsv"))).unwrap();
    let stype = catalog.stype().unwrap();
    Dataset {
        witnesses: parse_witnesses(&read(&format!("witnesses{tag}.jsw")), stype).unwrap(),
        certificates: parse_certificates(&read(&format!("certs{tag}.jsc"))).unwrap(),
        claims: parse_claims(&read(&format!("claims{tag}.jsr"))).unwrap(),
        catalog,
    }
}

impl Dataset {
    pub fn input(&self, with_claims: bool) -> PipelineInput<'_> {
        PipelineInput {
            catalog: &self.catalog,
            witnesses: &self.witnesses,
            certificates: &self.certificates,
            claims: with_claims.then_some(&self.claims),
            sweep: true,
        }
    }

    pub fn relation(&self) -> Relation {
        report::build_relation(&self.input(false)).unwrap().2
    }

    pub fn report(&self) -> Report {
        report::run_pipeline(&self.input(true)).unwrap()
    }

    /// Index of the entry with short label `label`.
    pub fn idx(&self, label: &str) -> usize {
        (0..self.catalog.len()).find(|&i| self.catalog.short_label(i) == label).unwrap_or_else(|| panic!("no entry {label}"))
    }

    pub fn labels(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.catalog.short_label(i)).collect()
    }
}

pub fn nums(v: &[u32]) -> Vec<String> {
    v.iter().map(u32::to_string).collect()
}

/// Edges `(s, t)` of a DOT digraph whose nodes are named `n<index>`.
pub fn dot_edges(dot: &str) -> Vec<(usize, usize)> {
    dot.lines()
        .filter_map(|l| {
            let (s, t) = l.trim().strip_suffix(';')?.split_once(" -> ")?;
            Some((s.strip_prefix('n')?.parse().ok()?, t.strip_prefix('n')?.parse().ok()?))
        })
        .collect()
}
