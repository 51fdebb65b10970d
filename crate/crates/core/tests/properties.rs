use num_traits::{One, Zero};
use proptest::prelude::*;

use jsvariety::catalog::{Catalog, CatalogEntry, Expectations};
use jsvariety::certify::{Certificate, Identity, Reduction};
use jsvariety::deformation::{trivial_witness, verify_family, BasisFamily, Validity};
use jsvariety::grassmann::{envelope_is_commutative, envelope_jordan_check, GrassmannWord};
use jsvariety::invariants::{aut_dim, even_derivations};
use jsvariety::io::{parse_catalog, parse_certificate_kind, serialize_catalog};
use jsvariety::scalars::{Field, RatFunc, Rational, UniPoly};
use jsvariety::superalgebra::{Parity, StructureConstants, SuperAlgebra, SuperType};
use jsvariety::variety::{closure_of_edges, hasse_reduction, rigid_set, Cell, EntryInfo, Provenance, Relation};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

fn small() -> impl Strategy<Value = Rational> {
    prop_oneof![3 => Just(Rational::zero()), 1 => (-2i64..=2, 1i64..=2).prop_map(|(n, d)| Rational::new(n, d))]
}

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..4).prop_map(UniPoly::new)
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| RatFunc::normalize(n, d).ok())
}

fn stype() -> impl Strategy<Value = SuperType> {
    prop_oneof![Just((1, 3)), Just((3, 1)), Just((2, 2)), Just((1, 1))].prop_map(|(m, n)| SuperType::new(m, n).unwrap())
}

/// Random supercommutative table with small sparse coefficients.
fn table() -> impl Strategy<Value = SuperAlgebra<Rational>> {
    stype().prop_flat_map(|st| {
        let dim = st.dim();
        prop::collection::vec(small(), dim * dim * dim).prop_map(move |coeffs| {
            let mut c = StructureConstants::zero(st);
            for a in 0..dim {
                for b in a..dim {
                    if a == b && a >= st.m {
                        continue;
                    }
                    let p = st.parity(a).add(st.parity(b));
                    let v: Vec<Rational> = (0..dim)
                        .map(|k| if st.parity(k) == p { coeffs[(a * dim + b) * dim + k].clone() } else { Rational::zero() })
                        .collect();
                    c.set_product(a, b, &v).unwrap();
                }
            }
            SuperAlgebra::new("r", c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(64) })]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Rational::zero());
        if let Some(inv) = a.inv() {
            prop_assert_eq!(a.clone() * inv, Rational::one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn rational_display_parses_back(a in rational()) {
        prop_assert_eq!(a.to_string().parse::<Rational>().unwrap(), a);
    }

    #[test]
    fn polynomial_division(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(q * b.clone() + r.clone(), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if let Some(q) = a.div(&b) {
            prop_assert_eq!(q * b.clone(), a.clone());
        }
    }

    #[test]
    fn laurent_terms_rebuild_the_function(c in rational(), k in -4i64..=4, d in rational(), l in -4i64..=4) {
        let f = RatFunc::laurent_monomial(c, k) + RatFunc::laurent_monomial(d, l);
        let terms = f.laurent_terms().unwrap();
        let rebuilt = terms.iter().fold(RatFunc::zero(), |acc, (e, q)| acc + RatFunc::laurent_monomial(q.clone(), *e));
        prop_assert_eq!(rebuilt, f);
        prop_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
    }

    #[test]
    fn tables_are_supercommutative(j in table()) {
        let st = j.stype();
        prop_assert!(j.check_supercommutativity().is_ok());
        for a in 0..st.dim() {
            for b in 0..st.dim() {
                let ab = j.constants.basis_product(a, b);
                let ba = j.constants.basis_product(b, a);
                let odd = st.parity(a) == Parity::Odd && st.parity(b) == Parity::Odd;
                let expected: Vec<Rational> = if odd { ba.into_iter().map(|x| -x).collect() } else { ba };
                prop_assert_eq!(ab, expected);
            }
        }
        prop_assert!(envelope_is_commutative(&j, 4));
    }

    #[test]
    fn envelope_oracle_agrees(j in table()) {
        let env = envelope_jordan_check(&j, 4).unwrap().is_ok();
        prop_assert_eq!(env, j.is_jordan());
    }

    #[test]
    fn derivation_basis_satisfies_leibniz(j in table()) {
        let space = even_derivations(&j);
        for d in &space.basis {
            prop_assert!(d.is_derivation_of(&j));
        }
        let st = j.stype();
        prop_assert!(space.dimension <= st.m * st.m + st.n * st.n);
    }

    #[test]
    fn reductions_keep_closure_invariants(j in table()) {
        let st = j.stype();
        prop_assert_eq!(aut_dim(&SuperAlgebra::<Rational>::zero("0", st)), st.m * st.m + st.n * st.n);
        for red in Reduction::ALL {
            let r = red.apply(&j);
            prop_assert!(r.check_supercommutativity().is_ok());
        }
        prop_assert_eq!(j.a_of().f_of().constants.is_zero(), true);
    }

    #[test]
    fn every_table_deforms_to_zero_and_to_itself(j in table()) {
        let st = j.stype();
        let (v, _, _, limit) = verify_family(&j, &StructureConstants::zero(st), &trivial_witness(&j, "0").family);
        prop_assert_eq!(v, Validity::Strict);
        prop_assert!(limit.unwrap().is_zero());
        let (v, _, _, limit) = verify_family(&j, &j.constants, &BasisFamily::identity(st));
        prop_assert_eq!(v, Validity::Strict);
        prop_assert_eq!(limit.unwrap(), j.constants.clone());
    }

    #[test]
    fn catalog_text_round_trips(tables in prop::collection::vec(table(), 1..4)) {
        let st = tables[0].stype();
        let entries: Vec<CatalogEntry> = tables
            .into_iter()
            .filter(|j| j.stype() == st)
            .enumerate()
            .map(|(i, mut j)| {
                j.name = format!("x_{i}");
                CatalogEntry { algebra: j, expected: Expectations { dim_aut: Some(i), associative: None, nilpotent: Some(i % 2 == 0) } }
            })
            .collect();
        let catalog = Catalog::new(entries).unwrap();
        let text = serialize_catalog(&catalog);
        prop_assert_eq!(parse_catalog(&text).unwrap(), catalog);
    }

    #[test]
    fn grassmann_product_is_associative(a in 0u16..16, b in 0u16..16, c in 0u16..16) {
        let word = |m: u16| GrassmannWord::from_generators(&(0..4).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>()).unwrap();
        let (a, b, c) = (word(a), word(b), word(c));
        let left = a.times(b).and_then(|(s1, ab)| ab.times(c).map(|(s2, w)| (s1 ^ s2, w)));
        let right = b.times(c).and_then(|(s1, bc)| a.times(bc).map(|(s2, w)| (s1 ^ s2, w)));
        prop_assert_eq!(left, right);
        if let Some((sign, _)) = a.times(b) {
            let odd = a.parity() == Parity::Odd && b.parity() == Parity::Odd;
            prop_assert_eq!(b.times(a).unwrap().0, sign ^ odd);
        }
    }
}

fn certificate() -> impl Strategy<Value = Certificate> {
    let leaf = prop_oneof![
        Just(Certificate::AutDim),
        Just(Certificate::IdentityPreservation(Identity::Associativity)),
        (1usize..=10, prop::bool::ANY).prop_map(|(r, odd)| Certificate::PowerDim { r, parity: if odd { Parity::Odd } else { Parity::Even } }),
        "[a-z][a-z ]{0,12}[a-z]".prop_map(|citation| Certificate::ExternalFact { citation }),
        "[a-z]{1,8}".prop_map(|citation| Certificate::RigidEvenPart { citation }),
    ];
    leaf.prop_recursive(2, 4, 1, |inner| (0usize..3, inner).prop_map(|(r, c)| Certificate::reduced(Reduction::ALL[r], c)))
}

fn entries(n: usize) -> Vec<EntryInfo> {
    (0..n).map(|i| EntryInfo { name: format!("x_{i}"), label: i.to_string(), aut_dim: i, associative: false, nilpotent: false }).collect()
}

/// dim Aut is the index: Yes only upward, every downward pair No (as the
/// aut-dim certificate would give).
fn relation() -> impl Strategy<Value = Option<Relation>> {
    (2usize..8).prop_flat_map(|n| {
        let pair = (0..n, 0..n).prop_filter_map("upward", |(s, t)| (s < t).then_some((s, t)));
        (prop::collection::vec(pair.clone(), 0..10), prop::collection::vec(pair, 0..10)).prop_map(move |(yes, no)| {
            let tag = |v: Vec<(usize, usize)>| v.into_iter().map(|(s, t)| (s, t, Provenance::Assumption)).collect();
            let down = (0..n).flat_map(|s| (0..s).map(move |t| (s, t)));
            Relation::assemble(entries(n), tag(yes), tag(no.into_iter().chain(down).collect())).ok()
        })
    })
}

fn assert_partial_order(rel: &Relation) -> Result<(), TestCaseError> {
    let n = rel.len();
    for s in 0..n {
        prop_assert!(rel.is_yes(s, s));
        for t in 0..n {
            if s != t && rel.is_yes(s, t) {
                prop_assert!(!rel.is_yes(t, s));
                for u in 0..n {
                    prop_assert!(!rel.is_yes(t, u) || rel.is_yes(s, u));
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(128) })]

    #[test]
    fn certificate_kinds_round_trip(c in certificate()) {
        prop_assert_eq!(parse_certificate_kind(&c.to_string(), 1, 1).unwrap(), c);
    }

    #[test]
    fn relation_is_a_partial_order(rel in relation()) {
        let Some(rel) = rel else { return Ok(()) };
        assert_partial_order(&rel)?;
        for yes in [true, false] {
            let r = rel.resolve(yes);
            assert_partial_order(&r)?;
            prop_assert_eq!(r.unknown_cells().len(), 0);
        }
    }

    #[test]
    fn no_propagates_along_yes(rel in relation()) {
        let Some(rel) = rel else { return Ok(()) };
        let n = rel.len();
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if rel.is_yes(s, t) && rel.cell(s, u).is_no() {
                        prop_assert!(rel.cell(t, u).is_no(), "{} -> {} yes, {} -> {} no, {} -> {} not no", s, t, s, u, t, u);
                    }
                }
            }
        }
    }

    #[test]
    fn hasse_closure_round_trips(rel in relation()) {
        let Some(rel) = rel else { return Ok(()) };
        let n = rel.len();
        let edges = hasse_reduction(&rel);
        let m = closure_of_edges(n, &edges);
        for s in 0..n {
            for t in 0..n {
                prop_assert_eq!(m[s][t], rel.is_yes(s, t));
            }
        }
        let all: Vec<(usize, usize)> = (0..n).flat_map(|s| (0..n).map(move |t| (s, t))).filter(|&(s, t)| m[s][t]).collect();
        prop_assert_eq!(closure_of_edges(n, &all), m);
    }

    #[test]
    fn rigid_entries_have_only_no_incoming(rel in relation()) {
        let Some(rel) = rel else { return Ok(()) };
        let rs = rigid_set(&rel);
        for &t in &rs.certain {
            prop_assert!((0..rel.len()).filter(|&s| s != t).all(|s| matches!(rel.cell(s, t), Cell::No(_))));
        }
        for &t in &rs.possible {
            prop_assert!((0..rel.len()).filter(|&s| s != t).all(|s| !rel.is_yes(s, t)));
        }
    }
}
