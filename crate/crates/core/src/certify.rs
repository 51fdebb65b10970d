//! Non-deformation certificates.
//!
//! Every machine kind is the contrapositive of a necessary condition for
//! `J -> J'`: automorphism dimension strictly increases, power dimensions do
//! not increase, even parts / `a(J)` / `F(J)` deform accordingly, and
//! associativity is inherited.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::{Catalog, CatalogError};
use crate::invariants::aut_dim;
use crate::scalars::Rational;
use crate::superalgebra::{GradedSubspace, Parity, SuperAlgebra, POWER_CHAIN_CAP};

/// Certificates nest at most this deep.
pub const MAX_DEPTH: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Identity {
    Associativity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reduction {
    EvenPart,
    APart,
    FPart,
}

impl Reduction {
    pub const ALL: [Reduction; 3] = [Reduction::EvenPart, Reduction::APart, Reduction::FPart];

    pub fn apply(self, j: &SuperAlgebra<Rational>) -> SuperAlgebra<Rational> {
        match self {
            Reduction::EvenPart => j.even_part(),
            Reduction::APart => j.a_of(),
            Reduction::FPart => j.f_of(),
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            Reduction::EvenPart => "even-part",
            Reduction::APart => "a-part",
            Reduction::FPart => "f-part",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Certificate {
    AutDim,
    PowerDim { r: usize, parity: Parity },
    Reduced { reduction: Reduction, inner: Box<Certificate> },
    IdentityPreservation(Identity),
    ExternalFact { citation: String },
    RigidEvenPart { citation: String },
}

impl Certificate {
    pub fn reduced(reduction: Reduction, inner: Certificate) -> Self {
        Certificate::Reduced { reduction, inner: Box::new(inner) }
    }

    pub fn depth(&self) -> usize {
        match self {
            Certificate::Reduced { inner, .. } => 1 + inner.depth(),
            _ => 1,
        }
    }

    /// Kind label used in summaries, e.g. `even-part/aut-dim`.
    pub fn kind_label(&self) -> String {
        match self {
            Certificate::AutDim => "aut-dim".into(),
            Certificate::PowerDim { .. } => "power-dim".into(),
            Certificate::Reduced { reduction, inner } => format!("{}/{}", reduction.keyword(), inner.kind_label()),
            Certificate::IdentityPreservation(_) => "identity".into(),
            Certificate::ExternalFact { .. } => "external".into(),
            Certificate::RigidEvenPart { .. } => "rigid-even-part".into(),
        }
    }

    /// True when no external citation occurs anywhere in the chain.
    pub fn is_machine(&self) -> bool {
        match self {
            Certificate::Reduced { inner, .. } => inner.is_machine(),
            Certificate::ExternalFact { .. } | Certificate::RigidEvenPart { .. } => false,
            _ => true,
        }
    }
}

/// Textual form used in certificate files: `aut-dim`, `even-part { aut-dim }`, ...
impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::AutDim => write!(f, "aut-dim"),
            Certificate::PowerDim { r, parity } => write!(f, "power-dim r={r} parity={parity}"),
            Certificate::Reduced { reduction, inner } => write!(f, "{} {{ {inner} }}", reduction.keyword()),
            Certificate::IdentityPreservation(Identity::Associativity) => write!(f, "identity associativity"),
            Certificate::ExternalFact { citation } => write!(f, "external cite=\"{citation}\""),
            Certificate::RigidEvenPart { citation } => write!(f, "rigid-even-part cite=\"{citation}\""),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CertStatus {
    Proven,
    AssumedExternal { citation: String },
    Failed { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    AutDims { source: usize, target: usize, distinct_fingerprints: bool },
    PowerDims { r: usize, parity: Parity, source: usize, target: usize },
    Associativity { source: bool, target: bool },
    Reduction { reduction: Reduction, inner: Box<CertReport> },
    Citation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertReport {
    #[serde(flatten)]
    pub status: CertStatus,
    pub evidence: Evidence,
}

impl CertReport {
    pub fn is_failed(&self) -> bool {
        matches!(self.status, CertStatus::Failed { .. })
    }

    pub fn is_proven(&self) -> bool {
        self.status == CertStatus::Proven
    }
}

/// Isomorphism invariants used by the machine kinds.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Profile {
    pub aut_dim: usize,
    pub associative: bool,
    /// `(dim even, dim odd)` of `J^1 .. J^cap`.
    pub power_dims: Vec<(usize, usize)>,
    pub derived_dims: Vec<(usize, usize)>,
}

impl Profile {
    pub fn of(j: &SuperAlgebra<Rational>) -> Self {
        Profile {
            aut_dim: aut_dim(j),
            associative: j.is_associative(),
            power_dims: j.powers(POWER_CHAIN_CAP).iter().map(GradedSubspace::dims).collect(),
            derived_dims: j.derived_series().iter().map(GradedSubspace::dims).collect(),
        }
    }

    pub fn power_dim(&self, r: usize, parity: Parity) -> Option<usize> {
        let (e, o) = *self.power_dims.get(r.checked_sub(1)?)?;
        Some(match parity {
            Parity::Even => e,
            Parity::Odd => o,
        })
    }
}

/// Profiles of an algebra and of its three reductions.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSet {
    pub full: Profile,
    pub reduced: BTreeMap<Reduction, Profile>,
}

impl ProfileSet {
    pub fn of(j: &SuperAlgebra<Rational>) -> Self {
        ProfileSet { full: Profile::of(j), reduced: Reduction::ALL.iter().map(|&r| (r, Profile::of(&r.apply(j)))).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("certificate nests {0} levels, limit is {MAX_DEPTH}")]
    TooDeep(usize),
    #[error("{kind} needs a nonempty citation")]
    EmptyCitation { kind: &'static str },
    #[error("power index {0} outside 1..={POWER_CHAIN_CAP}")]
    PowerIndex(usize),
    #[error("certificate for {0} -> {0} compares an entry with itself")]
    SamePair(String),
}

fn validate(c: &Certificate) -> Result<(), CertifyError> {
    if c.depth() > MAX_DEPTH {
        return Err(CertifyError::TooDeep(c.depth()));
    }
    match c {
        Certificate::Reduced { inner, .. } => validate(inner),
        Certificate::PowerDim { r, .. } if *r == 0 || *r > POWER_CHAIN_CAP => Err(CertifyError::PowerIndex(*r)),
        Certificate::ExternalFact { citation } if citation.trim().is_empty() => Err(CertifyError::EmptyCitation { kind: "external" }),
        Certificate::RigidEvenPart { citation } if citation.trim().is_empty() => {
            Err(CertifyError::EmptyCitation { kind: "rigid-even-part" })
        }
        _ => Ok(()),
    }
}

/// Evaluates `c` on profiles.
///
/// `distinct` records whether the two sides are known to be non-isomorphic
/// (distinct catalog entries). Reduced images may be isomorphic, in which case
/// equal automorphism dimensions prove nothing; then the kind succeeds only if
/// the dims differ strictly or the fingerprints tell the images apart.
fn evaluate(
    c: &Certificate,
    j: &SuperAlgebra<Rational>,
    jp: &SuperAlgebra<Rational>,
    pj: &ProfileSet,
    pjp: &ProfileSet,
    reduced: Option<Reduction>,
    distinct: bool,
) -> CertReport {
    let (p, pp) = match reduced {
        None => (&pj.full, &pjp.full),
        Some(r) => (&pj.reduced[&r], &pjp.reduced[&r]),
    };
    match c {
        Certificate::AutDim => {
            let distinct_fingerprints = p != pp;
            let evidence = Evidence::AutDims { source: p.aut_dim, target: pp.aut_dim, distinct_fingerprints };
            let proven = if distinct {
                p.aut_dim >= pp.aut_dim
            } else {
                p.aut_dim > pp.aut_dim || (p.aut_dim == pp.aut_dim && distinct_fingerprints)
            };
            let status = if proven {
                CertStatus::Proven
            } else if !distinct && p.aut_dim == pp.aut_dim {
                CertStatus::Failed { reason: format!("equal dims {} and images not distinguishable", p.aut_dim) }
            } else {
                CertStatus::Failed { reason: format!("dim Aut increases {} < {}", p.aut_dim, pp.aut_dim) }
            };
            CertReport { status, evidence }
        }
        Certificate::PowerDim { r, parity } => {
            let (s, t) = (p.power_dim(*r, *parity).unwrap_or(0), pp.power_dim(*r, *parity).unwrap_or(0));
            let status = if s < t {
                CertStatus::Proven
            } else {
                CertStatus::Failed { reason: format!("dim (J^{r})_{} is {s}, not below {t}", parity.bit()) }
            };
            CertReport { status, evidence: Evidence::PowerDims { r: *r, parity: *parity, source: s, target: t } }
        }
        Certificate::IdentityPreservation(Identity::Associativity) => {
            let status = if p.associative && !pp.associative {
                CertStatus::Proven
            } else {
                CertStatus::Failed { reason: "needs associative source and non-associative target".into() }
            };
            CertReport { status, evidence: Evidence::Associativity { source: p.associative, target: pp.associative } }
        }
        Certificate::Reduced { reduction, inner } => {
            let inner_report = match reduced {
                None => evaluate(inner, j, jp, pj, pjp, Some(*reduction), false),
                Some(outer) => {
                    // reduction of a reduction: profile the nested images afresh
                    let (rj, rjp) = (outer.apply(j), outer.apply(jp));
                    let (prj, prjp) = (ProfileSet::of(&rj), ProfileSet::of(&rjp));
                    evaluate(inner, &rj, &rjp, &prj, &prjp, Some(*reduction), false)
                }
            };
            CertReport {
                status: inner_report.status.clone(),
                evidence: Evidence::Reduction { reduction: *reduction, inner: Box::new(inner_report) },
            }
        }
        Certificate::ExternalFact { citation } | Certificate::RigidEvenPart { citation } => {
            CertReport { status: CertStatus::AssumedExternal { citation: citation.clone() }, evidence: Evidence::Citation }
        }
    }
}

/// Evaluates `c` as evidence that `j` does not deform to `jp`, where the two
/// are distinct catalog entries.
pub fn certificate_check(c: &Certificate, j: &SuperAlgebra<Rational>, jp: &SuperAlgebra<Rational>) -> Result<CertReport, CertifyError> {
    validate(c)?;
    if j.name == jp.name {
        return Err(CertifyError::SamePair(j.name.clone()));
    }
    Ok(evaluate(c, j, jp, &ProfileSet::of(j), &ProfileSet::of(jp), None, true))
}

/// A transcribed non-deformation claim.
#[derive(Debug, Clone, PartialEq)]
pub struct ListedCertificate {
    pub source: String,
    pub target: String,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Listed,
    Sweep,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteEntry {
    pub source: usize,
    pub target: usize,
    pub certificate: Certificate,
    pub origin: Origin,
    pub report: CertReport,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct KindCount {
    pub proven: usize,
    pub assumed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteSummary {
    pub entries: Vec<SuiteEntry>,
    pub by_kind: BTreeMap<String, KindCount>,
}

impl SuiteSummary {
    fn totals(&self, origin: Option<Origin>) -> KindCount {
        let mut k = KindCount::default();
        for e in self.entries.iter().filter(|e| origin.is_none_or(|o| e.origin == o)) {
            match e.report.status {
                CertStatus::Proven => k.proven += 1,
                CertStatus::AssumedExternal { .. } => k.assumed += 1,
                CertStatus::Failed { .. } => k.failed += 1,
            }
        }
        k
    }

    pub fn listed_totals(&self) -> KindCount {
        self.totals(Some(Origin::Listed))
    }

    pub fn totals_all(&self) -> KindCount {
        self.totals(None)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.entries.iter().filter(|e| e.report.is_failed())
    }
}

/// First machine kind that proves `j -> jp` impossible, trying invariants of
/// the pair before those of its reductions.
pub fn machine_certificate(
    j: &SuperAlgebra<Rational>,
    jp: &SuperAlgebra<Rational>,
    pj: &ProfileSet,
    pjp: &ProfileSet,
) -> Option<(Certificate, CertReport)> {
    let mut leaf_kinds = vec![Certificate::AutDim, Certificate::IdentityPreservation(Identity::Associativity)];
    for r in 2..=POWER_CHAIN_CAP {
        for parity in [Parity::Even, Parity::Odd] {
            leaf_kinds.push(Certificate::PowerDim { r, parity });
        }
    }
    let candidates = leaf_kinds
        .iter()
        .cloned()
        .chain(Reduction::ALL.iter().flat_map(|&red| leaf_kinds.iter().map(move |k| Certificate::reduced(red, k.clone()))));
    for c in candidates {
        let report = evaluate(&c, j, jp, pj, pjp, None, true);
        if report.is_proven() {
            return Some((c, report));
        }
    }
    None
}

/// Checks every listed certificate and, when `sweep` is set, tries the machine
/// kinds on every other ordered pair of distinct entries.
pub fn certificate_suite_check(certs: &[ListedCertificate], catalog: &Catalog, sweep: bool) -> Result<SuiteSummary, CertifyError> {
    let profiles: Vec<ProfileSet> = catalog.entries().iter().map(|e| ProfileSet::of(&e.algebra)).collect();
    let mut summary = SuiteSummary::default();
    let mut listed = vec![vec![false; catalog.len()]; catalog.len()];
    for lc in certs {
        validate(&lc.certificate)?;
        let s = catalog.index_of(&lc.source).ok_or_else(|| CatalogError::UnknownName(lc.source.clone()))?;
        let t = catalog.index_of(&lc.target).ok_or_else(|| CatalogError::UnknownName(lc.target.clone()))?;
        if s == t {
            return Err(CertifyError::SamePair(lc.source.clone()));
        }
        let (j, jp) = (&catalog.entries()[s].algebra, &catalog.entries()[t].algebra);
        let report = evaluate(&lc.certificate, j, jp, &profiles[s], &profiles[t], None, true);
        listed[s][t] = true;
        summary.entries.push(SuiteEntry { source: s, target: t, certificate: lc.certificate.clone(), origin: Origin::Listed, report });
    }
    if sweep {
        for s in 0..catalog.len() {
            for t in 0..catalog.len() {
                if s == t || listed[s][t] {
                    continue;
                }
                let (j, jp) = (&catalog.entries()[s].algebra, &catalog.entries()[t].algebra);
                if let Some((certificate, report)) = machine_certificate(j, jp, &profiles[s], &profiles[t]) {
                    summary.entries.push(SuiteEntry { source: s, target: t, certificate, origin: Origin::Sweep, report });
                }
            }
        }
    }
    for e in &summary.entries {
        let k = summary.by_kind.entry(e.certificate.kind_label()).or_default();
        match e.report.status {
            CertStatus::Proven => k.proven += 1,
            CertStatus::AssumedExternal { .. } => k.assumed += 1,
            CertStatus::Failed { .. } => k.failed += 1,
        }
    }
    Ok(summary)
}
