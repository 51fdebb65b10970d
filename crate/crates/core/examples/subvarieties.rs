//! Components of the associative and nilpotent subvarieties of (3,1),
//! including members the data leaves undecided.
//!
//! cargo run --example subvarieties

use jsvariety::io::report::{build_relation, PipelineInput};
use jsvariety::io::{parse_catalog, parse_certificates, parse_witnesses};
use jsvariety::variety::{subvariety_components, Subvariety};

fn read(file: &str) -> String {
    std::fs::read_to_string(format!("{}/../../data/{file}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn main() {
    let catalog = parse_catalog(&read("catalog31.jsv")).unwrap();
    let witnesses = parse_witnesses(&read("witnesses31.jsw"), catalog.stype().unwrap()).unwrap();
    let certificates = parse_certificates(&read("certs31.jsc")).unwrap();
    let input = PipelineInput { catalog: &catalog, witnesses: &witnesses, certificates: &certificates, claims: None, sweep: true };
    let (_, _, rel) = build_relation(&input).unwrap();
    let labels = |v: &[usize]| v.iter().map(|&i| catalog.short_label(i)).collect::<Vec<_>>().join(" ");
    for f in [Subvariety::Associative, Subvariety::Nilpotent] {
        let (members, comp) = subvariety_components(&rel, f);
        println!("{} ({} members)", f.keyword(), members.len());
        for c in &comp.components {
            println!("  {}: {}  undecided: {}", catalog.short_label(c.generator), labels(&c.yes), labels(&c.unknown));
        }
    }
}
