//! Full pipeline and its machine-readable report.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::claims_file::{Claims, ClosureClaim};
use crate::catalog::Catalog;
use crate::certify::{certificate_suite_check, CertReport, CertifyError, KindCount, ListedCertificate, Origin, SuiteSummary};
use crate::deformation::{witness_verify, DeformationError, DeformationWitness, Validity, WitnessReport};
use crate::grassmann::{envelope_jordan_check, DEFAULT_GENERATORS};
use crate::superalgebra::{format_vector, SuperAlgebra, SuperType};
use crate::scalars::Rational;
use crate::variety::{
    closure_at, components, determination_rate, hasse_reduction, relation_build, robustness_check, subvariety_components, Cell, ComponentReport,
    DeterminationRate, Relation, RobustnessReport, Subvariety, VarietyError,
};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Catalog(#[from] crate::catalog::CatalogError),
    #[error(transparent)]
    Deformation(#[from] DeformationError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("claims refer to unknown label {0:?}")]
    UnknownLabel(String),
}

/// Expected-vs-computed mismatch. Findings never abort the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub section: String,
    pub subject: String,
    pub message: String,
}

impl Finding {
    fn new(section: &str, subject: impl Into<String>, message: impl Into<String>) -> Self {
        Finding { section: section.into(), subject: subject.into(), message: message.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityItem {
    pub name: String,
    pub supercommutative: bool,
    pub jordan: bool,
    /// First failing basis quadruple with its residual, when not Jordan.
    pub violation: Option<String>,
    /// Grassmann-envelope check with four generators.
    pub envelope_jordan: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantItem {
    pub name: String,
    pub aut_dim: usize,
    pub associative: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    /// `(dim even, dim odd)` of `J, J^2, ...` until zero or stable.
    pub power_chain: Vec<(usize, usize)>,
    pub derived_series: Vec<(usize, usize)>,
    pub expected_dim_aut: Option<usize>,
    pub expected_associative: Option<bool>,
    pub expected_nilpotent: Option<bool>,
}

pub fn identity_checks(catalog: &Catalog) -> Vec<IdentityItem> {
    catalog
        .entries()
        .iter()
        .map(|e| {
            let j = &e.algebra;
            let jordan = j.check_jordan_superidentity();
            IdentityItem {
                name: e.name().to_string(),
                supercommutative: j.check_supercommutativity().is_ok(),
                jordan: jordan.is_ok(),
                violation: jordan.err().map(|v| {
                    let st = j.stype();
                    let syms: Vec<String> = v.quadruple.iter().map(|&i| st.symbol(i)).collect();
                    format!("({}) residual {}", syms.join(", "), format_vector(st, &v.residual))
                }),
                envelope_jordan: matches!(envelope_jordan_check(j, DEFAULT_GENERATORS), Ok(Ok(()))),
            }
        })
        .collect()
}

pub fn invariant_items(catalog: &Catalog) -> Vec<InvariantItem> {
    let dims = |v: Vec<crate::superalgebra::GradedSubspace<Rational>>| v.iter().map(|s| s.dims()).collect();
    catalog
        .entries()
        .iter()
        .map(|e| {
            let j = &e.algebra;
            InvariantItem {
                name: e.name().to_string(),
                aut_dim: crate::invariants::aut_dim(j),
                associative: j.is_associative(),
                nilpotent: j.is_nilpotent(),
                solvable: j.is_solvable(),
                power_chain: dims(j.power_chain(crate::superalgebra::POWER_CHAIN_CAP)),
                derived_series: dims(j.derived_series()),
                expected_dim_aut: e.expected.dim_aut,
                expected_associative: e.expected.associative,
                expected_nilpotent: e.expected.nilpotent,
            }
        })
        .collect()
}

/// Catalog metadata mismatches.
pub fn metadata_findings(items: &[InvariantItem]) -> Vec<Finding> {
    let mut out = Vec::new();
    for it in items {
        if let Some(d) = it.expected_dim_aut.filter(|d| *d != it.aut_dim) {
            out.push(Finding::new("invariants", &it.name, format!("dim Aut computed {}, expected {d}", it.aut_dim)));
        }
        if let Some(a) = it.expected_associative.filter(|a| *a != it.associative) {
            out.push(Finding::new("invariants", &it.name, format!("associative computed {}, expected {a}", it.associative)));
        }
        if let Some(n) = it.expected_nilpotent.filter(|n| *n != it.nilpotent) {
            out.push(Finding::new("invariants", &it.name, format!("nilpotent computed {}, expected {n}", it.nilpotent)));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessItem {
    pub source: String,
    pub target: String,
    pub validity: Validity,
    pub even_det: Option<String>,
    pub odd_det: Option<String>,
    pub aut_dims: (usize, usize),
    pub aut_increases: bool,
    pub limit_is_jordan: Option<bool>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct WitnessTotals {
    pub total: usize,
    pub strict: usize,
    pub generic: usize,
    pub invalid: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSection {
    pub items: Vec<WitnessItem>,
    pub totals: WitnessTotals,
}

pub fn witness_section(catalog: &Catalog, witnesses: &[DeformationWitness]) -> Result<(WitnessSection, Vec<WitnessReport>), PipelineError> {
    let mut items = Vec::new();
    let mut reports = Vec::new();
    let mut totals = WitnessTotals::default();
    for w in witnesses {
        let r = witness_verify(w, catalog)?;
        let (a, b) = (crate::invariants::aut_dim(catalog.algebra(&w.source)?), crate::invariants::aut_dim(catalog.algebra(&w.target)?));
        totals.total += 1;
        match r.validity {
            Validity::Strict => totals.strict += 1,
            Validity::Generic => totals.generic += 1,
            Validity::Invalid { .. } => totals.invalid += 1,
        }
        items.push(WitnessItem {
            source: r.source.clone(),
            target: r.target.clone(),
            validity: r.validity.clone(),
            even_det: r.even_det.as_ref().map(ToString::to_string),
            odd_det: r.odd_det.as_ref().map(ToString::to_string),
            aut_dims: (a, b),
            aut_increases: a < b,
            limit_is_jordan: r.validity.is_valid().then(|| r.limit.as_ref().map(|c| SuperAlgebra::new("limit", c.clone()).is_jordan())).flatten(),
        });
        reports.push(r);
    }
    Ok((WitnessSection { items, totals }, reports))
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateItem {
    pub source: String,
    pub target: String,
    pub certificate: String,
    pub origin: Origin,
    pub report: CertReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificateSection {
    pub items: Vec<CertificateItem>,
    pub listed: KindCount,
    pub swept: usize,
    pub by_kind: BTreeMap<String, KindCount>,
}

pub fn certificate_section(catalog: &Catalog, summary: &SuiteSummary) -> CertificateSection {
    let name = |i: usize| catalog.entries()[i].name().to_string();
    CertificateSection {
        items: summary
            .entries
            .iter()
            .map(|e| CertificateItem {
                source: name(e.source),
                target: name(e.target),
                certificate: e.certificate.to_string(),
                origin: e.origin,
                report: e.report.clone(),
            })
            .collect(),
        listed: summary.listed_totals(),
        swept: summary.entries.iter().filter(|e| e.origin == Origin::Sweep).count(),
        by_kind: summary.by_kind.clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationSection {
    pub yes: usize,
    pub no: usize,
    pub unknown: usize,
    pub unknown_pairs: Vec<(String, String)>,
    pub determination: DeterminationRate,
    pub hasse_edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedClosure {
    pub generator: String,
    pub yes: Vec<String>,
    pub unknown: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentsSection {
    pub rigid_certain: Vec<String>,
    pub rigid_possible: Vec<String>,
    pub components: Vec<NamedClosure>,
    pub covered_by_yes: bool,
    pub covered: bool,
    pub uncovered: Vec<String>,
    /// Rigid entries whose derived series reaches zero.
    pub solvable_rigid: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubvarietySection {
    pub filter: Subvariety,
    pub members: Vec<String>,
    pub components: ComponentsSection,
}

fn names(rel: &Relation, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| rel.entries()[i].name.clone()).collect()
}

pub fn components_section(rel: &Relation, report: &ComponentReport, catalog: &Catalog) -> ComponentsSection {
    ComponentsSection {
        rigid_certain: names(rel, &report.rigid.certain),
        rigid_possible: names(rel, &report.rigid.possible),
        components: report
            .components
            .iter()
            .map(|c| NamedClosure { generator: rel.entries()[c.generator].name.clone(), yes: names(rel, &c.yes), unknown: names(rel, &c.unknown) })
            .collect(),
        covered_by_yes: report.covered_by_yes,
        covered: report.covered,
        uncovered: names(rel, &report.uncovered),
        solvable_rigid: report.rigid.certain.iter().filter(|&&i| catalog.entries()[i].algebra.is_solvable()).map(|&i| rel.entries()[i].name.clone()).collect(),
    }
}

pub fn relation_section(rel: &Relation) -> RelationSection {
    let pair = |(s, t): (usize, usize)| (rel.entries()[s].name.clone(), rel.entries()[t].name.clone());
    RelationSection {
        yes: rel.count(Cell::is_yes),
        no: rel.count(Cell::is_no),
        unknown: rel.count(Cell::is_unknown),
        unknown_pairs: rel.unknown_cells().into_iter().map(pair).collect(),
        determination: determination_rate(rel),
        hasse_edges: hasse_reduction(rel).into_iter().map(pair).collect(),
    }
}

/// Full relation matrix for `relation --json`.
pub fn relation_json(rel: &Relation) -> serde_json::Value {
    let n = rel.len();
    let cells: Vec<serde_json::Value> = (0..n)
        .flat_map(|s| (0..n).map(move |t| (s, t)))
        .map(|(s, t)| serde_json::json!({ "source": rel.entries()[s].name, "target": rel.entries()[t].name, "cell": rel.cell(s, t) }))
        .collect();
    serde_json::json!({ "entries": rel.entries(), "cells": cells })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureComparison {
    pub generator: String,
    pub claimed_members: Vec<String>,
    pub claimed_open: Vec<String>,
    pub computed_yes: Vec<String>,
    pub computed_unknown: Vec<String>,
    pub agrees: bool,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Reconciliation {
    pub closures: Vec<ClosureComparison>,
    pub subvarieties: BTreeMap<String, Vec<ClosureComparison>>,
    pub findings: Vec<Finding>,
}

fn label_index(catalog: &Catalog, label: &str) -> Result<usize, PipelineError> {
    (0..catalog.len()).find(|&i| catalog.short_label(i) == label).ok_or_else(|| PipelineError::UnknownLabel(label.to_string()))
}

fn label_set(catalog: &Catalog, labels: &[String]) -> Result<BTreeSet<usize>, PipelineError> {
    labels.iter().map(|l| label_index(catalog, l)).collect()
}

fn show(rel: &Relation, set: &BTreeSet<usize>) -> String {
    let v: Vec<&str> = set.iter().map(|&i| rel.entries()[i].label.as_str()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Compares a claimed closure with the computed one. `check_open` also
/// requires the undecided members to match.
fn compare_closure(catalog: &Catalog, rel: &Relation, claim: &ClosureClaim, check_open: bool) -> Result<ClosureComparison, PipelineError> {
    let g = label_index(catalog, &claim.generator)?;
    let members = label_set(catalog, &claim.members)?;
    let open = label_set(catalog, &claim.open)?;
    let c = closure_at(rel, g);
    let yes: BTreeSet<usize> = c.yes.iter().copied().collect();
    let unknown: BTreeSet<usize> = c.unknown.iter().copied().collect();
    let agrees = members == yes && (!check_open || open == unknown);
    let all = |s: &BTreeSet<usize>| s.iter().map(|&i| rel.entries()[i].name.clone()).collect();
    Ok(ClosureComparison {
        generator: rel.entries()[g].name.clone(),
        claimed_members: all(&members),
        claimed_open: all(&open),
        computed_yes: all(&yes),
        computed_unknown: all(&unknown),
        agrees,
    })
}

pub fn reconcile(catalog: &Catalog, rel: &Relation, claims: &Claims) -> Result<Reconciliation, PipelineError> {
    let mut rec = Reconciliation::default();
    let computed_rigid: BTreeSet<usize> = components(rel).rigid.certain.into_iter().collect();
    if let Some(rigid) = &claims.rigid {
        let claimed = label_set(catalog, rigid)?;
        if claimed != computed_rigid {
            rec.findings.push(Finding::new(
                "components",
                "rigid set",
                format!("claimed {}, computed {}", show(rel, &claimed), show(rel, &computed_rigid)),
            ));
        }
    }
    for claim in &claims.closures {
        let cmp = compare_closure(catalog, rel, claim, true)?;
        if !cmp.agrees {
            let g = label_index(catalog, &claim.generator)?;
            let c = closure_at(rel, g);
            rec.findings.push(Finding::new(
                "components",
                format!("closure of {}", cmp.generator),
                format!(
                    "claimed {} with undecided {}, computed yes {} with undecided {}",
                    show(rel, &label_set(catalog, &claim.members)?),
                    show(rel, &label_set(catalog, &claim.open)?),
                    show(rel, &c.yes.iter().copied().collect()),
                    show(rel, &c.unknown.iter().copied().collect()),
                ),
            ));
        }
        rec.closures.push(cmp);
    }
    for (key, claimed) in &claims.subvarieties {
        let filter = if key == "associative" { Subvariety::Associative } else { Subvariety::Nilpotent };
        let (keep, report) = subvariety_components(rel, filter);
        let sub = rel.restrict(&keep);
        let mut cmps = Vec::new();
        for claim in claimed {
            let g = label_index(catalog, &claim.generator)?;
            let Some(local) = keep.iter().position(|&i| i == g) else {
                rec.findings.push(Finding::new(
                    "subvarieties",
                    format!("{key} component of {}", rel.entries()[g].name),
                    format!("claimed generator {} is not {key} by computation", rel.entries()[g].name),
                ));
                continue;
            };
            let local_claim = ClosureClaim {
                generator: sub.entries()[local].label.clone(),
                members: claim.members.clone(),
                open: claim.open.clone(),
            };
            let cmp = compare_closure(&restricted_catalog_labels(catalog, &keep), &sub, &local_claim, false)?;
            if !cmp.agrees {
                rec.findings.push(Finding::new(
                    "subvarieties",
                    format!("{key} component of {}", cmp.generator),
                    format!("claimed {:?}, computed {:?}", cmp.claimed_members, cmp.computed_yes),
                ));
            }
            if !report.rigid.certain.contains(&g) {
                rec.findings.push(Finding::new(
                    "subvarieties",
                    format!("{key} component of {}", cmp.generator),
                    "claimed generator is not rigid inside the subvariety",
                ));
            }
            cmps.push(cmp);
        }
        if claimed.len() != report.components.len() {
            let gens: Vec<&str> = report.components.iter().map(|c| rel.entries()[c.generator].name.as_str()).collect();
            rec.findings.push(Finding::new(
                "subvarieties",
                key.clone(),
                format!("claimed {} components, computed {} generated by {}", claimed.len(), report.components.len(), gens.join(", ")),
            ));
        }
        rec.subvarieties.insert(key.clone(), cmps);
    }
    if !claims.open_pairs.is_empty() {
        let mut claimed = BTreeSet::new();
        for (s, t) in &claims.open_pairs {
            claimed.insert((label_index(catalog, s)?, label_index(catalog, t)?));
        }
        let computed: BTreeSet<(usize, usize)> = rel.unknown_cells().into_iter().collect();
        let fmt = |v: Vec<&(usize, usize)>| v.iter().map(|(s, t)| format!("{} -> {}", rel.entries()[*s].label, rel.entries()[*t].label)).collect::<Vec<_>>().join(", ");
        let extra: Vec<_> = computed.difference(&claimed).collect();
        let missing: Vec<_> = claimed.difference(&computed).collect();
        if !extra.is_empty() || !missing.is_empty() {
            rec.findings.push(Finding::new(
                "relation",
                "undecided pairs",
                format!("computed but not claimed open: [{}]; claimed open but decided: [{}]", fmt(extra), fmt(missing)),
            ));
        }
    }
    for ex in crate::variety::transitivity_exclusions(rel) {
        let e = rel.entries();
        if claims.open_pairs.iter().any(|(s, t)| *s == e[ex.source].label && *t == e[ex.target].label) {
            rec.findings.push(Finding::new(
                "relation",
                format!("{} -> {}", e[ex.source].name, e[ex.target].name),
                format!(
                    "claimed open, but {} -> {} is yes while {} -> {} is no ({}); transitivity excludes it",
                    e[ex.target].name, e[ex.via].name, e[ex.source].name, e[ex.via].name, ex.no_provenance
                ),
            ));
        }
    }
    if let Some(quoted) = &claims.determination_rate {
        let rate = determination_rate(rel);
        let rounded = format!("{:.2}", rate.percent);
        if &rounded != quoted {
            rec.findings.push(Finding::new(
                "relation",
                "determination rate",
                format!("exact {}/{} = {} ({:.4}%) rounds to {rounded}%, quoted {quoted}%", rate.determined, rate.total, rate.exact, rate.percent),
            ));
        }
    }
    Ok(rec)
}

/// Label lookup for a restriction: a catalog stand-in whose short labels are
/// those of the kept entries, in order.
fn restricted_catalog_labels(catalog: &Catalog, keep: &[usize]) -> Catalog {
    Catalog::new(keep.iter().map(|&i| catalog.entries()[i].clone()).collect()).expect("restriction of a valid catalog")
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    #[serde(rename = "type")]
    pub stype: Option<SuperType>,
    pub identity_checks: Vec<IdentityItem>,
    pub invariants: Vec<InvariantItem>,
    pub witnesses: WitnessSection,
    pub certificates: CertificateSection,
    pub relation: RelationSection,
    pub components: ComponentsSection,
    pub subvarieties: Vec<SubvarietySection>,
    pub robustness: RobustnessReport,
    pub reconciliation: Reconciliation,
    pub reconciliation_findings: Vec<Finding>,
}

impl Report {
    /// Identity failures, invalid witnesses and failed listed certificates.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in &self.identity_checks {
            if !i.supercommutative || !i.jordan {
                out.push(format!("{} fails the identity suite", i.name));
            }
        }
        for w in &self.witnesses.items {
            if let Validity::Invalid { reason } = &w.validity {
                out.push(format!("witness {} -> {} invalid: {reason}", w.source, w.target));
            }
        }
        for c in &self.certificates.items {
            if let crate::certify::CertStatus::Failed { reason } = &c.report.status {
                out.push(format!("certificate {} -> {} ({}) failed: {reason}", c.source, c.target, c.certificate));
            }
        }
        out
    }

    /// 1 on failures, 2 on reconciliation findings, 0 otherwise.
    pub fn exit_code(&self) -> i32 {
        if !self.failures().is_empty() {
            1
        } else if !self.reconciliation_findings.is_empty() {
            2
        } else {
            0
        }
    }
}

pub struct PipelineInput<'a> {
    pub catalog: &'a Catalog,
    pub witnesses: &'a [DeformationWitness],
    pub certificates: &'a [ListedCertificate],
    pub claims: Option<&'a Claims>,
    /// Try machine certificates on pairs without a listed reason.
    pub sweep: bool,
}

pub fn build_relation(input: &PipelineInput<'_>) -> Result<(WitnessSection, SuiteSummary, Relation), PipelineError> {
    let (ws, reports) = witness_section(input.catalog, input.witnesses)?;
    let suite = certificate_suite_check(input.certificates, input.catalog, input.sweep)?;
    let rel = relation_build(input.catalog, &reports, &suite)?;
    Ok((ws, suite, rel))
}

pub fn run_pipeline(input: &PipelineInput<'_>) -> Result<Report, PipelineError> {
    let catalog = input.catalog;
    let identity = identity_checks(catalog);
    let invariants = invariant_items(catalog);
    let mut findings = metadata_findings(&invariants);
    let (witnesses, suite, rel) = build_relation(input)?;
    let comp = components(&rel);
    let subvarieties = [Subvariety::Associative, Subvariety::Nilpotent]
        .into_iter()
        .map(|f| {
            let (keep, r) = subvariety_components(&rel, f);
            SubvarietySection { filter: f, members: names(&rel, &keep), components: components_section(&rel, &r, catalog) }
        })
        .collect();
    let rigid_for_robustness = match input.claims.and_then(|c| c.rigid.as_ref()) {
        Some(r) => label_set(catalog, r)?.into_iter().collect(),
        None => comp.rigid.certain.clone(),
    };
    let reconciliation = match input.claims {
        Some(c) => reconcile(catalog, &rel, c)?,
        None => Reconciliation::default(),
    };
    findings.extend(reconciliation.findings.iter().cloned());
    Ok(Report {
        stype: catalog.stype(),
        identity_checks: identity,
        invariants,
        witnesses,
        certificates: certificate_section(catalog, &suite),
        relation: relation_section(&rel),
        components: components_section(&rel, &comp, catalog),
        subvarieties,
        robustness: robustness_check(&rel, &rigid_for_robustness),
        reconciliation,
        reconciliation_findings: findings,
    })
}
