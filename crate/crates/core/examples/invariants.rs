//! dim Aut via even derivations, associativity, nilpotency and the derived
//! series for each (3,1) entry, next to the tabulated values.
//!
//! cargo run --example invariants

use jsvariety::invariants::even_derivations;
use jsvariety::io::parse_catalog;
use jsvariety::superalgebra::POWER_CHAIN_CAP;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/catalog31.jsv");
    let catalog = parse_catalog(&std::fs::read_to_string(path).unwrap()).unwrap();
    println!("{:<10} {:>8} {:>6} {:>6} {:>5}  powers", "entry", "Aut", "table", "assoc", "nilp");
    for e in catalog.entries() {
        let j = &e.algebra;
        let der = even_derivations(j);
        assert!(der.basis.iter().all(|d| d.is_derivation_of(j)));
        let chain: Vec<String> = j.power_chain(POWER_CHAIN_CAP).iter().map(|s| format!("{:?}", s.dims())).collect();
        println!(
            "{:<10} {:>8} {:>6} {:>6} {:>5}  {}",
            e.name(),
            der.dimension,
            e.expected.dim_aut.map_or("-".into(), |d| d.to_string()),
            j.is_associative(),
            j.is_nilpotent(),
            chain.join(" ")
        );
    }
    let j16 = parse_catalog(&std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/catalog13.jsv")).unwrap()).unwrap();
    let j = j16.algebra("(1,3)_16").unwrap();
    println!("(1,3)_16 derived length {:?}", j.solvability_length());
}
