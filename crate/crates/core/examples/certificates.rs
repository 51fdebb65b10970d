//! Evaluate non-deformation certificates, machine-checked and cited.
//!
//! cargo run --example certificates

use jsvariety::certify::{certificate_check, Certificate, Reduction};
use jsvariety::io::parse_catalog;
use jsvariety::superalgebra::Parity;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/catalog13.jsv");
    let catalog = parse_catalog(&std::fs::read_to_string(path).unwrap()).unwrap();
    let cases = [
        ("(1,3)_1", "(1,3)_14", Certificate::AutDim),
        // a witnessed pair: the aut-dim argument must fail
        ("(1,3)_2", "(1,3)_14", Certificate::AutDim),
        ("(1,3)_19", "(1,3)_15", Certificate::PowerDim { r: 2, parity: Parity::Odd }),
        ("(1,3)_3", "(1,3)_9", Certificate::reduced(Reduction::FPart, Certificate::AutDim)),
        ("(1,3)_4", "(1,3)_1", Certificate::reduced(Reduction::FPart, Certificate::ExternalFact { citation: "as algebras".into() })),
    ];
    for (s, t, c) in cases {
        let rep = certificate_check(&c, catalog.algebra(s).unwrap(), catalog.algebra(t).unwrap()).unwrap();
        println!("{s} -/-> {t} by {c}: {}", serde_json::to_string(&rep).unwrap());
    }
}
