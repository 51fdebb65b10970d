//! Verify a one-parameter basis change over Q(t): invertible for t != 0, with
//! the transformed table tending to the target as t -> 0.
//!
//! cargo run --example verify_witness

use jsvariety::deformation::{specialize, witness_verify};
use jsvariety::io::{parse_catalog, parse_witnesses};
use jsvariety::superalgebra::format_vector;

const WITNESS: &str = r#"
[witness "(1,3)_2" -> "(1,3)_14"]
E1 = t e1
F1 = 1/2 t f3
F2 = f1 + f3
F3 = f2
"#;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/catalog13.jsv");
    let catalog = parse_catalog(&std::fs::read_to_string(path).unwrap()).unwrap();
    let w = &parse_witnesses(WITNESS, catalog.stype().unwrap()).unwrap()[0];
    let source = catalog.algebra(&w.source).unwrap();
    let st = source.stype();
    let family = specialize(source, &w.family).unwrap();
    for (a, b, v) in family.nonzero_products() {
        println!("{} {} = {}", st.symbol(a), st.symbol(b), format_vector(st, &v));
    }
    let report = witness_verify(w, &catalog).unwrap();
    println!("determinants: {} / {}", report.even_det.unwrap(), report.odd_det.unwrap());
    println!("{} -> {}: {:?}", report.source, report.target, report.validity);
}
