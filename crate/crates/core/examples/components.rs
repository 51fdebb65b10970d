//! Build the three-valued deformation relation for (1,3) and read off rigid
//! entries and irreducible components.
//!
//! cargo run --example components

use jsvariety::io::report::{build_relation, PipelineInput};
use jsvariety::io::{parse_catalog, parse_certificates, parse_witnesses};
use jsvariety::variety::{components, determination_rate};

fn read(file: &str) -> String {
    std::fs::read_to_string(format!("{}/../../data/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let catalog = parse_catalog(&read("catalog13.jsv")).unwrap();
    let witnesses = parse_witnesses(&read("witnesses13.jsw"), catalog.stype().unwrap()).unwrap();
    let certificates = parse_certificates(&read("certs13.jsc")).unwrap();
    let input = PipelineInput { catalog: &catalog, witnesses: &witnesses, certificates: &certificates, claims: None, sweep: true };
    let (_, _, rel) = build_relation(&input).unwrap();
    let rate = determination_rate(&rel);
    println!("determined {} of {} pairs", rate.determined, rate.total);
    let comp = components(&rel);
    for c in &comp.components {
        let members: Vec<String> = c.yes.iter().map(|&i| catalog.short_label(i)).collect();
        println!("closure of {}: {}", catalog.entries()[c.generator].name(), members.join(" "));
    }
}
