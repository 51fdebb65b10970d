//! Full (3,1) pipeline reconciled against the published claims; prints the
//! findings and the robustness check.
//!
//! cargo run --example reconcile

use jsvariety::io::report::{run_pipeline, PipelineInput};
use jsvariety::io::{parse_catalog, parse_certificates, parse_claims, parse_witnesses};

fn read(file: &str) -> String {
    std::fs::read_to_string(format!("{}/../../data/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let catalog = parse_catalog(&read("catalog31.jsv")).unwrap();
    let witnesses = parse_witnesses(&read("witnesses31.jsw"), catalog.stype().unwrap()).unwrap();
    let certificates = parse_certificates(&read("certs31.jsc")).unwrap();
    let claims = parse_claims(&read("claims31.jsr")).unwrap();
    let input = PipelineInput { catalog: &catalog, witnesses: &witnesses, certificates: &certificates, claims: Some(&claims), sweep: true };
    let report = run_pipeline(&input).unwrap();
    let d = &report.relation.determination;
    println!("unknown cells {}, determination {} ({:.4}%)", report.relation.unknown, d.exact, d.percent);
    println!("robustness holds: {}", report.robustness.holds);
    for f in &report.reconciliation_findings {
        println!("[{}] {}: {}", f.section, f.subject, f.message);
    }
    println!("exit code {}", report.exit_code());
}
