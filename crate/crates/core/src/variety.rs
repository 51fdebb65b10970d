//! The three-valued degeneration relation on a catalog and everything read off
//! it: rigid entries, orbit closures, irreducible components, subvarieties.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::catalog::{Catalog, CatalogError};
use crate::certify::{CertStatus, SuiteSummary};
use crate::deformation::WitnessReport;
use crate::invariants::aut_dim;
use crate::scalars::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "by", rename_all = "kebab-case")]
pub enum Provenance {
    Reflexive,
    TrivialTarget,
    Witness { id: String },
    Transitivity { via: String },
    Certificate { kind: String, assumed: bool },
    /// `from -> source` is Yes and `from -> target` is No.
    Propagation { from: String },
    /// Synthetic data and resolutions of undecided cells.
    Assumption,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Reflexive => write!(f, "reflexive"),
            Provenance::TrivialTarget => write!(f, "trivial family to the zero algebra"),
            Provenance::Witness { id } => write!(f, "witness {id}"),
            Provenance::Transitivity { via } => write!(f, "transitivity via {via}"),
            Provenance::Certificate { kind, assumed } => {
                write!(f, "certificate {kind}{}", if *assumed { " (assumed)" } else { "" })
            }
            Provenance::Propagation { from } => write!(f, "propagation from {from}"),
            Provenance::Assumption => write!(f, "assumption"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "value", content = "provenance", rename_all = "lowercase")]
pub enum Cell {
    Yes(Provenance),
    No(Provenance),
    Unknown,
}

impl Cell {
    pub fn is_yes(&self) -> bool {
        matches!(self, Cell::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Cell::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Cell::Unknown)
    }
}

/// Per-entry data the relation carries for reports and subvariety filters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryInfo {
    pub name: String,
    pub label: String,
    pub aut_dim: usize,
    pub associative: bool,
    pub nilpotent: bool,
}

impl EntryInfo {
    pub fn from_catalog(catalog: &Catalog) -> Vec<EntryInfo> {
        catalog
            .entries()
            .iter()
            .enumerate()
            .map(|(i, e)| EntryInfo {
                name: e.name().to_string(),
                label: catalog.short_label(i),
                aut_dim: aut_dim(&e.algebra),
                associative: e.algebra.is_associative(),
                nilpotent: e.algebra.is_nilpotent(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarietyError {
    #[error("contradiction at {source_name} -> {target}: yes by {yes}, no by {no}")]
    Contradiction { source_name: String, target: String, yes: Provenance, no: Provenance },
    #[error("{source_name} -> {target} ({provenance}) but dim Aut goes {from} -> {to}, not strictly up")]
    AutDimNotIncreasing { source_name: String, target: String, provenance: Provenance, from: usize, to: usize },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    entries: Vec<EntryInfo>,
    cells: Vec<Vec<Cell>>,
}

impl Relation {
    /// Seeds reflexivity, `yes`, transitive closure, `no`, then No-propagation.
    pub fn assemble(
        entries: Vec<EntryInfo>,
        yes: Vec<(usize, usize, Provenance)>,
        no: Vec<(usize, usize, Provenance)>,
    ) -> Result<Relation, VarietyError> {
        let n = entries.len();
        let mut cells = vec![vec![Cell::Unknown; n]; n];
        for (i, row) in cells.iter_mut().enumerate() {
            row[i] = Cell::Yes(Provenance::Reflexive);
        }
        let mut rel = Relation { entries, cells };
        for (s, t, p) in yes {
            if s == t || rel.cells[s][t].is_yes() {
                continue;
            }
            let (from, to) = (rel.entries[s].aut_dim, rel.entries[t].aut_dim);
            if from >= to {
                return Err(VarietyError::AutDimNotIncreasing {
                    source_name: rel.entries[s].name.clone(),
                    target: rel.entries[t].name.clone(),
                    provenance: p,
                    from,
                    to,
                });
            }
            rel.cells[s][t] = Cell::Yes(p);
        }
        rel.close_transitively();
        for (s, t, p) in no {
            rel.set_no(s, t, p)?;
        }
        rel.propagate_no()?;
        Ok(rel)
    }

    fn set_no(&mut self, s: usize, t: usize, p: Provenance) -> Result<bool, VarietyError> {
        match &self.cells[s][t] {
            Cell::Yes(yes) => Err(VarietyError::Contradiction {
                source_name: self.entries[s].name.clone(),
                target: self.entries[t].name.clone(),
                yes: yes.clone(),
                no: p,
            }),
            Cell::No(_) => Ok(false),
            Cell::Unknown => {
                self.cells[s][t] = Cell::No(p);
                Ok(true)
            }
        }
    }

    fn close_transitively(&mut self) {
        let n = self.len();
        for k in 0..n {
            for i in 0..n {
                if i == k || !self.cells[i][k].is_yes() {
                    continue;
                }
                for j in 0..n {
                    if j != k && !self.cells[i][j].is_yes() && self.cells[k][j].is_yes() {
                        self.cells[i][j] = Cell::Yes(Provenance::Transitivity { via: self.entries[k].name.clone() });
                    }
                }
            }
        }
    }

    /// `J -> J'` Yes and `J -> J''` No force `J' -> J''` No.
    fn propagate_no(&mut self) -> Result<(), VarietyError> {
        let n = self.len();
        loop {
            let mut changed = false;
            for j in 0..n {
                let below: Vec<usize> = (0..n).filter(|&jp| jp != j && self.cells[j][jp].is_yes()).collect();
                for jp in below {
                    for jpp in 0..n {
                        if self.cells[j][jpp].is_no() && self.cells[jp][jpp].is_unknown() {
                            changed |= self.set_no(jp, jpp, Provenance::Propagation { from: self.entries[j].name.clone() })?;
                        } else if self.cells[j][jpp].is_no() && self.cells[jp][jpp].is_yes() {
                            // J -> J' -> J'' would make J -> J'' yes
                            return Err(VarietyError::Contradiction {
                                source_name: self.entries[j].name.clone(),
                                target: self.entries[jpp].name.clone(),
                                yes: Provenance::Transitivity { via: self.entries[jp].name.clone() },
                                no: match &self.cells[j][jpp] {
                                    Cell::No(p) => p.clone(),
                                    _ => unreachable!(),
                                },
                            });
                        }
                    }
                }
            }
            if !changed {
                return Ok(());
            }
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[EntryInfo] {
        &self.entries
    }

    pub fn cell(&self, s: usize, t: usize) -> &Cell {
        &self.cells[s][t]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name == name)
    }

    pub fn is_yes(&self, s: usize, t: usize) -> bool {
        self.cells[s][t].is_yes()
    }

    /// Off-diagonal cells still undecided, in index order.
    pub fn unknown_cells(&self) -> Vec<(usize, usize)> {
        self.pairs().filter(|&(s, t)| self.cells[s][t].is_unknown()).collect()
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
    }

    pub fn count(&self, pred: impl Fn(&Cell) -> bool) -> usize {
        self.pairs().filter(|&(s, t)| pred(&self.cells[s][t])).count()
    }

    /// Restriction to the entries in `keep` (index order preserved).
    pub fn restrict(&self, keep: &[usize]) -> Relation {
        Relation {
            entries: keep.iter().map(|&i| self.entries[i].clone()).collect(),
            cells: keep.iter().map(|&s| keep.iter().map(|&t| self.cells[s][t].clone()).collect()).collect(),
        }
    }

    /// Copy with every Unknown replaced by `yes` (then closed) or No.
    pub fn resolve(&self, yes: bool) -> Relation {
        let mut r = self.clone();
        for (s, t) in self.unknown_cells() {
            r.cells[s][t] = if yes { Cell::Yes(Provenance::Assumption) } else { Cell::No(Provenance::Assumption) };
        }
        if yes {
            r.close_transitively();
        }
        r
    }
}

/// Builds the relation from verified witnesses and a checked certificate suite.
///
/// Invalid witnesses and Failed certificates contribute nothing; the trivial
/// family `t * id` supplies `J -> 0` for every `J` when the catalog has a zero
/// entry.
pub fn relation_build(catalog: &Catalog, witnesses: &[WitnessReport], certificates: &SuiteSummary) -> Result<Relation, VarietyError> {
    let entries = EntryInfo::from_catalog(catalog);
    let mut yes = Vec::new();
    for w in witnesses.iter().filter(|w| w.validity.is_valid()) {
        let s = catalog.index_of(&w.source).ok_or_else(|| CatalogError::UnknownName(w.source.clone()))?;
        let t = catalog.index_of(&w.target).ok_or_else(|| CatalogError::UnknownName(w.target.clone()))?;
        yes.push((s, t, Provenance::Witness { id: format!("{} -> {}", w.source, w.target) }));
    }
    if let Some(z) = catalog.zero_index() {
        yes.extend((0..catalog.len()).filter(|&i| i != z).map(|i| (i, z, Provenance::TrivialTarget)));
    }
    let no = certificates
        .entries
        .iter()
        .filter_map(|e| {
            let assumed = match e.report.status {
                CertStatus::Proven => false,
                CertStatus::AssumedExternal { .. } => true,
                CertStatus::Failed { .. } => return None,
            };
            Some((e.source, e.target, Provenance::Certificate { kind: e.certificate.to_string(), assumed }))
        })
        .collect();
    Relation::assemble(entries, yes, no)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RigidSet {
    pub certain: Vec<usize>,
    pub possible: Vec<usize>,
}

/// Certain: every incoming off-diagonal cell is No. Possible: no incoming Yes
/// but at least one incoming Unknown.
pub fn rigid_set(rel: &Relation) -> RigidSet {
    let n = rel.len();
    let mut out = RigidSet::default();
    for t in 0..n {
        let incoming: Vec<&Cell> = (0..n).filter(|&s| s != t).map(|s| rel.cell(s, t)).collect();
        if incoming.iter().all(|c| c.is_no()) {
            out.certain.push(t);
        } else if !incoming.iter().any(|c| c.is_yes()) {
            out.possible.push(t);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Closure {
    pub generator: usize,
    pub yes: Vec<usize>,
    pub unknown: Vec<usize>,
}

pub fn closure_at(rel: &Relation, s: usize) -> Closure {
    let n = rel.len();
    Closure {
        generator: s,
        yes: (0..n).filter(|&t| rel.cell(s, t).is_yes()).collect(),
        unknown: (0..n).filter(|&t| rel.cell(s, t).is_unknown()).collect(),
    }
}

pub fn closure_of(rel: &Relation, name: &str) -> Result<Closure, VarietyError> {
    let s = rel.index_of(name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))?;
    Ok(closure_at(rel, s))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub rigid: RigidSet,
    pub components: Vec<Closure>,
    /// Every entry lies in some component's yes set.
    pub covered_by_yes: bool,
    /// Every entry lies in some component's yes-or-unknown set.
    pub covered: bool,
    pub uncovered: Vec<usize>,
    pub unknown_edges: Vec<(usize, usize)>,
}

/// Components are the closures of the rigid-certain entries.
pub fn components(rel: &Relation) -> ComponentReport {
    let rigid = rigid_set(rel);
    let components: Vec<Closure> = rigid.certain.iter().map(|&r| closure_at(rel, r)).collect();
    let in_yes: BTreeSet<usize> = components.iter().flat_map(|c| c.yes.iter().copied()).collect();
    let in_any: BTreeSet<usize> = components.iter().flat_map(|c| c.yes.iter().chain(&c.unknown).copied()).collect();
    let n = rel.len();
    ComponentReport {
        covered_by_yes: in_yes.len() == n,
        covered: in_any.len() == n,
        uncovered: (0..n).filter(|i| !in_any.contains(i)).collect(),
        unknown_edges: rel.unknown_cells(),
        rigid,
        components,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Subvariety {
    Associative,
    Nilpotent,
}

impl Subvariety {
    pub fn keyword(self) -> &'static str {
        match self {
            Subvariety::Associative => "associative",
            Subvariety::Nilpotent => "nilpotent",
        }
    }

    pub fn contains(self, e: &EntryInfo) -> bool {
        match self {
            Subvariety::Associative => e.associative,
            Subvariety::Nilpotent => e.nilpotent,
        }
    }
}

/// Member indices (into `rel`) and components of the restricted relation,
/// with closure indices mapped back to `rel`.
pub fn subvariety_components(rel: &Relation, filter: Subvariety) -> (Vec<usize>, ComponentReport) {
    let keep: Vec<usize> = (0..rel.len()).filter(|&i| filter.contains(&rel.entries()[i])).collect();
    let mut report = components(&rel.restrict(&keep));
    let map = |v: &mut Vec<usize>| v.iter_mut().for_each(|i| *i = keep[*i]);
    map(&mut report.rigid.certain);
    map(&mut report.rigid.possible);
    map(&mut report.uncovered);
    for c in &mut report.components {
        c.generator = keep[c.generator];
        map(&mut c.yes);
        map(&mut c.unknown);
    }
    for e in &mut report.unknown_edges {
        *e = (keep[e.0], keep[e.1]);
    }
    (keep, report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionOutcome {
    pub rigid_certain: Vec<usize>,
    pub component_count: usize,
    /// Per rigid entry of the unresolved relation: members gained over its yes set.
    pub closure_deltas: Vec<(usize, Vec<usize>)>,
    /// No cells overridden when closing the all-Yes resolution transitively;
    /// nonempty exactly when some exclusion exists.
    pub conflicts: Vec<(usize, usize)>,
}

/// Unknown `J -> J'` for which some `J' -> J''` is Yes while `J -> J''` is No:
/// transitivity would exclude the pair. Reported, not applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub source: usize,
    pub target: usize,
    pub via: usize,
    pub no_provenance: Provenance,
}

pub fn transitivity_exclusions(rel: &Relation) -> Vec<Exclusion> {
    let n = rel.len();
    rel.unknown_cells()
        .into_iter()
        .filter_map(|(s, t)| {
            (0..n).find(|&u| rel.is_yes(t, u) && rel.cell(s, u).is_no()).map(|via| Exclusion {
                source: s,
                target: t,
                via,
                no_provenance: match rel.cell(s, via) {
                    Cell::No(p) => p.clone(),
                    _ => unreachable!(),
                },
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RobustnessReport {
    pub unknown_into_rigid: Vec<(usize, usize)>,
    pub exclusions: Vec<Exclusion>,
    pub all_yes: ResolutionOutcome,
    pub all_no: ResolutionOutcome,
    pub holds: bool,
}

fn outcome(base: &Relation, resolved: &Relation, rigid: &[usize]) -> ResolutionOutcome {
    let report = components(resolved);
    let closure_deltas = rigid
        .iter()
        .map(|&r| {
            let before: BTreeSet<usize> = closure_at(base, r).yes.into_iter().collect();
            (r, closure_at(resolved, r).yes.into_iter().filter(|t| !before.contains(t)).collect())
        })
        .collect();
    let conflicts = base.pairs().filter(|&(s, t)| base.cell(s, t).is_no() && resolved.cell(s, t).is_yes()).collect();
    ResolutionOutcome { rigid_certain: report.rigid.certain, component_count: report.components.len(), closure_deltas, conflicts }
}

/// (a) no Unknown cell points at an entry of `rigid` (typically a published
/// rigid list); (b) both extreme resolutions of the Unknowns keep the
/// rigid-certain set and component count of `rel`.
pub fn robustness_check(rel: &Relation, rigid: &[usize]) -> RobustnessReport {
    let certain = rigid_set(rel).certain;
    let unknown_into_rigid: Vec<(usize, usize)> = rel.unknown_cells().into_iter().filter(|(_, t)| rigid.contains(t)).collect();
    let all_yes = outcome(rel, &rel.resolve(true), &certain);
    let all_no = outcome(rel, &rel.resolve(false), &certain);
    let holds = unknown_into_rigid.is_empty()
        && all_yes.rigid_certain == certain
        && all_no.rigid_certain == certain
        && all_yes.component_count == certain.len()
        && all_no.component_count == certain.len();
    RobustnessReport { unknown_into_rigid, exclusions: transitivity_exclusions(rel), all_yes, all_no, holds }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeterminationRate {
    pub determined: usize,
    pub total: usize,
    /// Exact fraction `determined / total`.
    pub exact: String,
    pub percent: f64,
}

/// Fraction of ordered distinct pairs decided Yes or No; 1 when there are none.
pub fn determination_rate(rel: &Relation) -> DeterminationRate {
    let n = rel.len();
    let total = n * n.saturating_sub(1);
    let determined = total - rel.unknown_cells().len();
    let (exact, percent) = if total == 0 {
        (Rational::from_int(1), 100.0)
    } else {
        let q = Rational::new(determined as i64, total as i64);
        let pct = 100.0 * determined as f64 / total as f64;
        (q, pct)
    };
    DeterminationRate { determined, total, exact: exact.to_string(), percent }
}

/// Transitive reduction of Yes on distinct entries, ordered by `(source, target)`.
pub fn hasse_reduction(rel: &Relation) -> Vec<(usize, usize)> {
    let n = rel.len();
    rel.pairs()
        .filter(|&(s, t)| rel.is_yes(s, t) && !(0..n).any(|k| k != s && k != t && rel.is_yes(s, k) && rel.is_yes(k, t)))
        .collect()
}

/// Reflexive-transitive closure of `edges` on `n` nodes, as a boolean matrix.
pub fn closure_of_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut m = vec![vec![false; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(s, t) in edges {
        m[s][t] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if m[i][k] {
                for j in 0..n {
                    if m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
    }
    m
}
