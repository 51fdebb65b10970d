use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jsvariety::catalog::Catalog;
use jsvariety::certify::{certificate_suite_check, CertStatus};
use jsvariety::io::report::{self, PipelineInput};
use jsvariety::io::{export_dot, parse_catalog, parse_certificates, parse_claims, parse_witnesses};
use jsvariety::variety::{components, subvariety_components, Subvariety};

#[derive(Parser)]
#[command(name = "jsv", version, about = "Degenerations of Jordan superalgebras: exact checks over Q and Q(t)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DataFiles {
    catalog: PathBuf,
    witnesses: PathBuf,
    certificates: PathBuf,
    /// Skip the machine sweep over pairs without a listed certificate.
    #[arg(long)]
    no_sweep: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum SubvarietyArg {
    Associative,
    Nilpotent,
}

#[derive(Subcommand)]
enum Command {
    /// Identity suite and metadata reconciliation.
    Validate { catalog: PathBuf },
    /// dim Aut, associativity, nilpotency and solvability per entry.
    Invariants { catalog: PathBuf },
    /// Verify deformation witnesses.
    Witnesses { catalog: PathBuf, witnesses: PathBuf },
    /// Check non-deformation certificates.
    Certs {
        catalog: PathBuf,
        certificates: PathBuf,
        #[arg(long)]
        no_sweep: bool,
    },
    /// Build the degeneration relation.
    Relation {
        #[command(flatten)]
        files: DataFiles,
        /// Write the full cell matrix as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Irreducible components, optionally of a subvariety.
    Components {
        #[command(flatten)]
        files: DataFiles,
        #[arg(long, value_enum)]
        subvariety: Option<SubvarietyArg>,
    },
    /// Hasse diagram in DOT.
    Dot {
        #[command(flatten)]
        files: DataFiles,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Full pipeline with JSON report.
    Report {
        #[command(flatten)]
        files: DataFiles,
        /// Published claims to reconcile against.
        #[arg(long)]
        claims: Option<PathBuf>,
        /// Report destination; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

type Res<T> = Result<T, String>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_catalog(path: &Path) -> Res<Catalog> {
    parse_catalog(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn with_pipeline<T>(files: &DataFiles, claims: Option<&Path>, f: impl FnOnce(&PipelineInput<'_>) -> Res<T>) -> Res<T> {
    let catalog = load_catalog(&files.catalog)?;
    let stype = catalog.stype().ok_or("empty catalog")?;
    let witnesses = parse_witnesses(&read(&files.witnesses)?, stype).map_err(|e| format!("{}: {e}", files.witnesses.display()))?;
    let certificates = parse_certificates(&read(&files.certificates)?).map_err(|e| format!("{}: {e}", files.certificates.display()))?;
    let claims = match claims {
        Some(p) => Some(parse_claims(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?),
        None => None,
    };
    f(&PipelineInput { catalog: &catalog, witnesses: &witnesses, certificates: &certificates, claims: claims.as_ref(), sweep: !files.no_sweep })
}

fn labels(names: &[String]) -> String {
    names.iter().map(|n| n.rsplit_once('_').map_or(n.as_str(), |(_, l)| l)).collect::<Vec<_>>().join(" ")
}

fn run(cmd: Command) -> Res<u8> {
    match cmd {
        Command::Validate { catalog } => {
            let c = load_catalog(&catalog)?;
            let ids = report::identity_checks(&c);
            let inv = report::invariant_items(&c);
            let mut failed = false;
            for i in &ids {
                let ok = i.supercommutative && i.jordan;
                failed |= !ok;
                println!("{:<12} {}{}", i.name, if ok { "jordan" } else { "NOT JORDAN" }, i.violation.as_deref().map(|v| format!(" {v}")).unwrap_or_default());
            }
            let findings = report::metadata_findings(&inv);
            for f in &findings {
                println!("finding: {}: {}", f.subject, f.message);
            }
            println!("{} entries, {} identity failures, {} findings", ids.len(), ids.iter().filter(|i| !(i.supercommutative && i.jordan)).count(), findings.len());
            Ok(if failed { 1 } else if findings.is_empty() { 0 } else { 2 })
        }
        Command::Invariants { catalog } => {
            let c = load_catalog(&catalog)?;
            println!("{:<12} {:>7} {:>5} {:>5} {:>5}  powers", "name", "dim Aut", "assoc", "nilp", "solv");
            for i in report::invariant_items(&c) {
                let yn = |b: bool| if b { "yes" } else { "no" };
                let chain: Vec<String> = i.power_chain.iter().map(|(e, o)| format!("{e}|{o}")).collect();
                println!("{:<12} {:>7} {:>5} {:>5} {:>5}  {}", i.name, i.aut_dim, yn(i.associative), yn(i.nilpotent), yn(i.solvable), chain.join(" "));
            }
            Ok(0)
        }
        Command::Witnesses { catalog, witnesses } => {
            let c = load_catalog(&catalog)?;
            let ws = parse_witnesses(&read(&witnesses)?, c.stype().ok_or("empty catalog")?).map_err(|e| format!("{}: {e}", witnesses.display()))?;
            let (section, _) = report::witness_section(&c, &ws).map_err(|e| e.to_string())?;
            for w in &section.items {
                let status = match &w.validity {
                    jsvariety::deformation::Validity::Invalid { reason } => format!("INVALID {reason}"),
                    v => format!("{v:?}").to_lowercase(),
                };
                println!("{} -> {}: {status}, dim Aut {} -> {}", w.source, w.target, w.aut_dims.0, w.aut_dims.1);
            }
            let t = &section.totals;
            println!("{} witnesses: {} strict, {} generic, {} invalid", t.total, t.strict, t.generic, t.invalid);
            Ok(if t.invalid > 0 { 1 } else { 0 })
        }
        Command::Certs { catalog, certificates, no_sweep } => {
            let c = load_catalog(&catalog)?;
            let certs = parse_certificates(&read(&certificates)?).map_err(|e| format!("{}: {e}", certificates.display()))?;
            let suite = certificate_suite_check(&certs, &c, !no_sweep).map_err(|e| e.to_string())?;
            for e in suite.failures() {
                if let CertStatus::Failed { reason } = &e.report.status {
                    println!("FAILED {} -> {} ({}): {reason}", c.entries()[e.source].name(), c.entries()[e.target].name(), e.certificate);
                }
            }
            for (kind, k) in &suite.by_kind {
                println!("{kind:<28} proven {:>4}  assumed {:>4}  failed {:>3}", k.proven, k.assumed, k.failed);
            }
            let l = suite.listed_totals();
            println!("listed: {} proven, {} assumed, {} failed; sweep added {}", l.proven, l.assumed, l.failed, suite.entries.len() - certs.len());
            Ok(if l.failed > 0 { 1 } else { 0 })
        }
        Command::Relation { files, json } => with_pipeline(&files, None, |input| {
            let (_, _, rel) = report::build_relation(input).map_err(|e| e.to_string())?;
            let s = report::relation_section(&rel);
            println!("yes {}  no {}  unknown {}", s.yes, s.no, s.unknown);
            for (a, b) in &s.unknown_pairs {
                println!("unknown {a} -> {b}");
            }
            let d = &s.determination;
            println!("determined {}/{} = {} ({:.4}%)", d.determined, d.total, d.exact, d.percent);
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&report::relation_json(&rel)).map_err(|e| e.to_string())?;
                fs::write(&path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(0)
        }),
        Command::Components { files, subvariety } => with_pipeline(&files, None, |input| {
            let (_, _, rel) = report::build_relation(input).map_err(|e| e.to_string())?;
            let (title, comp) = match subvariety {
                None => ("variety".to_string(), components(&rel)),
                Some(s) => {
                    let f = match s {
                        SubvarietyArg::Associative => Subvariety::Associative,
                        SubvarietyArg::Nilpotent => Subvariety::Nilpotent,
                    };
                    (format!("{} subvariety", f.keyword()), subvariety_components(&rel, f).1)
                }
            };
            let sec = report::components_section(&rel, &comp, input.catalog);
            println!("{title}: {} components", sec.components.len());
            for c in &sec.components {
                let unk = if c.unknown.is_empty() { String::new() } else { format!("  undecided: {}", labels(&c.unknown)) };
                println!("  {}: {}{unk}", c.generator, labels(&c.yes));
            }
            if !sec.rigid_possible.is_empty() {
                println!("possibly rigid: {}", labels(&sec.rigid_possible));
            }
            Ok(0)
        }),
        Command::Dot { files, output } => with_pipeline(&files, None, |input| {
            let (_, _, rel) = report::build_relation(input).map_err(|e| e.to_string())?;
            fs::write(&output, export_dot(&rel)).map_err(|e| format!("{}: {e}", output.display()))?;
            Ok(0)
        }),
        Command::Report { files, claims, output } => with_pipeline(&files, claims.as_deref(), |input| {
            let rep = report::run_pipeline(input).map_err(|e| e.to_string())?;
            let text = serde_json::to_string_pretty(&rep).map_err(|e| e.to_string())? + "\n";
            match output {
                Some(path) => fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?,
                None => print!("{text}"),
            }
            for f in rep.failures() {
                eprintln!("failure: {f}");
            }
            for f in &rep.reconciliation_findings {
                eprintln!("finding [{}] {}: {}", f.section, f.subject, f.message);
            }
            eprintln!(
                "{} components, {} unknown cells, {} findings",
                rep.components.components.len(),
                rep.relation.unknown,
                rep.reconciliation_findings.len()
            );
            Ok(rep.exit_code() as u8)
        }),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
