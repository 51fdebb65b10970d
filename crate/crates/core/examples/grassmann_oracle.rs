//! Compare the direct Jordan superidentity check with the Grassmann-envelope
//! check on catalog entries and on a broken table.
//!
//! cargo run --example grassmann_oracle

use jsvariety::grassmann::{envelope_jordan_check, DEFAULT_GENERATORS};
use jsvariety::io::parse_catalog;
use jsvariety::scalars::Rational;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/catalog13.jsv");
    let catalog = parse_catalog(&std::fs::read_to_string(path).unwrap()).unwrap();
    for e in catalog.entries().iter().take(5) {
        let env = envelope_jordan_check(&e.algebra, DEFAULT_GENERATORS).unwrap();
        println!("{:<10} direct={} envelope={}", e.name(), e.algebra.is_jordan(), env.is_ok());
    }
    // e1 acting on f1 with eigenvalue 1/3 is not Jordan
    let mut j = catalog.algebra("(1,3)_1").unwrap().clone();
    let st = j.stype();
    let mut v = vec![Rational::from_int(0); st.dim()];
    v[1] = Rational::new(1, 3);
    j.constants.set_product(0, 1, &v).unwrap();
    let env = envelope_jordan_check(&j, DEFAULT_GENERATORS).unwrap();
    println!("broken     direct={} envelope={:?}", j.is_jordan(), env);
}
