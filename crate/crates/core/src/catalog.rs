//! Ordered list of named superalgebras of one type, with the metadata the
//! source tables claim for each entry (recorded, never trusted).

use serde::Serialize;

use crate::scalars::Rational;
use crate::superalgebra::{SuperAlgebra, SuperType};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Expectations {
    pub dim_aut: Option<usize>,
    pub associative: Option<bool>,
    pub nilpotent: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub algebra: SuperAlgebra<Rational>,
    pub expected: Expectations,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.algebra.name
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("duplicate algebra name {0:?}")]
    DuplicateName(String),
    #[error("entry {name:?} has type {found}, catalog type is {expected}")]
    MixedTypes { name: String, expected: SuperType, found: SuperType },
    #[error("unknown algebra {0:?}")]
    UnknownName(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self, CatalogError> {
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].iter().any(|p| p.name() == e.name()) {
                return Err(CatalogError::DuplicateName(e.name().to_string()));
            }
            let first = entries[0].algebra.stype();
            if e.algebra.stype() != first {
                return Err(CatalogError::MixedTypes { name: e.name().to_string(), expected: first, found: e.algebra.stype() });
            }
        }
        Ok(Catalog { entries })
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Shared type, `None` for an empty catalog.
    pub fn stype(&self) -> Option<SuperType> {
        self.entries.first().map(|e| e.algebra.stype())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|e| e.name() == name)
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries.iter().find(|e| e.name() == name).ok_or_else(|| CatalogError::UnknownName(name.to_string()))
    }

    pub fn algebra(&self, name: &str) -> Result<&SuperAlgebra<Rational>, CatalogError> {
        self.get(name).map(|e| &e.algebra)
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(CatalogEntry::name).collect()
    }

    /// Index of the entry with all structure constants zero, if present.
    pub fn zero_index(&self) -> Option<usize> {
        self.entries.iter().position(|e| e.algebra.constants.is_zero())
    }

    /// Short label for reports: the part after the last `_`, e.g. `14` for `(1,3)_14`.
    pub fn short_label(&self, index: usize) -> String {
        let name = self.entries[index].name();
        name.rsplit_once('_').map_or(name, |(_, s)| s).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(name: &str, m: usize, n: usize) -> CatalogEntry {
        CatalogEntry { algebra: SuperAlgebra::zero(name, SuperType::new(m, n).unwrap()), expected: Expectations::default() }
    }

    #[test]
    fn rejects_duplicates_and_mixed_types() {
        assert_eq!(Catalog::new(vec![entry("a", 1, 3), entry("a", 1, 3)]), Err(CatalogError::DuplicateName("a".into())));
        assert!(matches!(Catalog::new(vec![entry("a", 1, 3), entry("b", 3, 1)]), Err(CatalogError::MixedTypes { .. })));
    }

    #[test]
    fn lookup() {
        let c = Catalog::new(vec![entry("(1,3)_1", 1, 3), entry("(1,3)_20", 1, 3)]).unwrap();
        assert_eq!(c.index_of("(1,3)_20"), Some(1));
        assert_eq!(c.zero_index(), Some(0));
        assert_eq!(c.short_label(1), "20");
        assert!(c.get("x").is_err());
    }
}
