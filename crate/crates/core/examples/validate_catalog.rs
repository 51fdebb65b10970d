//! Parse the (1,3) catalog and run the identity suite on every entry.
//!
//! cargo run --example validate_catalog

use jsvariety::io::parse_catalog;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/catalog13.jsv");
    let catalog = parse_catalog(&std::fs::read_to_string(path).unwrap()).unwrap();
    for e in catalog.entries() {
        let j = &e.algebra;
        let verdict = match j.check_jordan_superidentity() {
            Ok(()) => "jordan".to_string(),
            Err(v) => format!("violated on {:?}", v.quadruple),
        };
        println!("{:<10} supercommutative={} {verdict}", e.name(), j.check_supercommutativity().is_ok());
    }
}
