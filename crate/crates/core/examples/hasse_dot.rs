//! Print the Hasse diagram of the (1,3) deformation order as DOT.
//!
//! cargo run --example hasse_dot | dot -Tsvg > hasse13.svg

use jsvariety::io::report::{build_relation, PipelineInput};
use jsvariety::io::{export_dot, parse_catalog, parse_certificates, parse_witnesses};

fn read(file: &str) -> String {
    std::fs::read_to_string(format!("{}/../../data/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let catalog = parse_catalog(&read("catalog13.jsv")).unwrap();
    let witnesses = parse_witnesses(&read("witnesses13.jsw"), catalog.stype().unwrap()).unwrap();
    let certificates = parse_certificates(&read("certs13.jsc")).unwrap();
    let input = PipelineInput { catalog: &catalog, witnesses: &witnesses, certificates: &certificates, claims: None, sweep: true };
    let (_, _, rel) = build_relation(&input).unwrap();
    print!("{}", export_dot(&rel));
}
