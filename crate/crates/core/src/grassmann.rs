//! Truncated Grassmann envelope `(G_0 ⊗ A_0) ⊕ (G_1 ⊗ A_1)`, used as an
//! independent oracle for the signed superidentity checker.
//!
//! Here the identities are the ordinary (unsigned) ones; all signs come from
//! reordering Grassmann generators.

use std::collections::BTreeMap;

use crate::scalars::Field;
use crate::superalgebra::{Parity, SuperAlgebra, SuperType};

pub const DEFAULT_GENERATORS: usize = 4;
const MAX_GENERATORS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrassmannError {
    #[error("generator count {0} outside 1..={MAX_GENERATORS}")]
    GeneratorCount(usize),
    #[error("envelope elements use {0} and {1} generators")]
    MismatchedGenerators(usize, usize),
    #[error("word of parity {word} paired with a vector that is not {word}")]
    ParityMismatch { word: Parity },
    #[error("generator index {0} out of range")]
    GeneratorIndex(usize),
    #[error("the 4-variable identity needs at least 4 generators, got {0}")]
    TooFewGenerators(usize),
}

/// Monomial `g_{i1} g_{i2} ... ` with `i1 < i2 < ...`, stored as a bit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GrassmannWord(u16);

impl GrassmannWord {
    pub const EMPTY: GrassmannWord = GrassmannWord(0);

    pub fn generator(i: usize) -> Result<Self, GrassmannError> {
        if i >= MAX_GENERATORS {
            return Err(GrassmannError::GeneratorIndex(i));
        }
        Ok(GrassmannWord(1 << i))
    }

    pub fn from_generators(gens: &[usize]) -> Result<Self, GrassmannError> {
        gens.iter().try_fold(GrassmannWord::EMPTY, |w, &g| Ok(GrassmannWord(w.0 | GrassmannWord::generator(g)?.0)))
    }

    pub fn generators(self) -> Vec<usize> {
        (0..MAX_GENERATORS).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn parity(self) -> Parity {
        if self.len() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `self * other` as `(sign is negative, word)`, `None` on a repeated generator.
    pub fn times(self, other: GrassmannWord) -> Option<(bool, GrassmannWord)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // each generator of `other` moves left past the larger generators of `self`
        let swaps: u32 = other.generators().iter().map(|&j| (self.0 >> (j + 1)).count_ones()).sum();
        Some((swaps % 2 == 1, GrassmannWord(self.0 | other.0)))
    }
}

/// Finite sum of `word ⊗ vector` terms with matched parities.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeElement<F> {
    generators: usize,
    terms: BTreeMap<GrassmannWord, Vec<F>>,
}

impl<F: Field> EnvelopeElement<F> {
    pub fn zero(generators: usize) -> Self {
        EnvelopeElement { generators, terms: BTreeMap::new() }
    }

    /// Single term `word ⊗ v`; `v` must be homogeneous of the word's parity.
    pub fn term(stype: SuperType, generators: usize, word: GrassmannWord, v: Vec<F>) -> Result<Self, GrassmannError> {
        if generators == 0 || generators > MAX_GENERATORS {
            return Err(GrassmannError::GeneratorCount(generators));
        }
        if word.generators().iter().any(|&g| g >= generators) {
            return Err(GrassmannError::GeneratorIndex(*word.generators().last().unwrap()));
        }
        let bad = v.iter().enumerate().any(|(i, c)| !c.is_zero() && stype.parity(i) != word.parity());
        if bad {
            return Err(GrassmannError::ParityMismatch { word: word.parity() });
        }
        let mut e = EnvelopeElement::zero(generators);
        e.add_term(word, v, false);
        Ok(e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GrassmannWord, &Vec<F>)> {
        self.terms.iter()
    }

    fn add_term(&mut self, word: GrassmannWord, v: Vec<F>, negate: bool) {
        let entry = self.terms.entry(word).or_insert_with(|| vec![F::zero(); v.len()]);
        for (e, c) in entry.iter_mut().zip(v) {
            *e = if negate { e.clone() - c } else { e.clone() + c };
        }
        if entry.iter().all(|c| c.is_zero()) {
            self.terms.remove(&word);
        }
    }

    pub fn add(&self, other: &Self, negate: bool) -> Result<Self, GrassmannError> {
        if self.generators != other.generators {
            return Err(GrassmannError::MismatchedGenerators(self.generators, other.generators));
        }
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_term(*w, v.clone(), negate);
        }
        Ok(out)
    }
}

/// `(x ⊗ u)(y ⊗ v) = xy ⊗ uv`, extended bilinearly.
pub fn envelope_product<F: Field>(
    j: &SuperAlgebra<F>,
    u: &EnvelopeElement<F>,
    v: &EnvelopeElement<F>,
) -> Result<EnvelopeElement<F>, GrassmannError> {
    if u.generators != v.generators {
        return Err(GrassmannError::MismatchedGenerators(u.generators, v.generators));
    }
    let mut out = EnvelopeElement::zero(u.generators);
    for (wu, a) in &u.terms {
        for (wv, b) in &v.terms {
            if let Some((neg, w)) = wu.times(*wv) {
                let p = j.multiply(a, b).expect("envelope vectors match the algebra");
                if p.iter().any(|c| !c.is_zero()) {
                    out.add_term(w, p, neg);
                }
            }
        }
    }
    Ok(out)
}

/// Generator-tagged lift of basis vector `i` into slot `slot`: odd basis
/// vectors get the single generator `g_slot`, even ones the empty word.
fn tagged<F: Field>(j: &SuperAlgebra<F>, k: usize, slot: usize, i: usize) -> EnvelopeElement<F> {
    let word = match j.stype().parity(i) {
        Parity::Even => GrassmannWord::EMPTY,
        Parity::Odd => GrassmannWord::generator(slot).unwrap(),
    };
    EnvelopeElement::term(j.stype(), k, word, j.basis_vector(i)).unwrap()
}

/// Checks the multilinear Jordan identity
/// `(wx)(yz) + (wy)(xz) + (wz)(xy) - x(w(yz)) - y(w(xz)) - z(w(xy)) = 0`
/// in the envelope with `k` generators, on all generator-tagged quadruples.
/// Returns the first failing basis quadruple.
pub fn envelope_jordan_check<F: Field>(j: &SuperAlgebra<F>, k: usize) -> Result<Result<(), [usize; 4]>, GrassmannError> {
    if k < 4 {
        return Err(GrassmannError::TooFewGenerators(k));
    }
    if k > MAX_GENERATORS {
        return Err(GrassmannError::GeneratorCount(k));
    }
    let dim = j.dim();
    let mul = |a: &EnvelopeElement<F>, b: &EnvelopeElement<F>| envelope_product(j, a, b).unwrap();
    for iw in 0..dim {
        for ix in 0..dim {
            for iy in 0..dim {
                for iz in 0..dim {
                    let w = tagged(j, k, 0, iw);
                    let x = tagged(j, k, 1, ix);
                    let y = tagged(j, k, 2, iy);
                    let z = tagged(j, k, 3, iz);
                    let positive = [
                        mul(&mul(&w, &x), &mul(&y, &z)),
                        mul(&mul(&w, &y), &mul(&x, &z)),
                        mul(&mul(&w, &z), &mul(&x, &y)),
                    ];
                    let negative = [
                        mul(&x, &mul(&w, &mul(&y, &z))),
                        mul(&y, &mul(&w, &mul(&x, &z))),
                        mul(&z, &mul(&w, &mul(&x, &y))),
                    ];
                    let mut total = EnvelopeElement::zero(k);
                    for p in &positive {
                        total = total.add(p, false)?;
                    }
                    for n in &negative {
                        total = total.add(n, true)?;
                    }
                    if !total.is_zero() {
                        return Ok(Err([iw, ix, iy, iz]));
                    }
                }
            }
        }
    }
    Ok(Ok(()))
}

/// `uv = vu` for all pairs of generator-tagged basis elements.
pub fn envelope_is_commutative<F: Field>(j: &SuperAlgebra<F>, k: usize) -> bool {
    let dim = j.dim();
    (0..dim).all(|a| {
        (0..dim).all(|b| {
            let u = tagged(j, k, 0, a);
            let v = tagged(j, k, 1, b);
            envelope_product(j, &u, &v).unwrap() == envelope_product(j, &v, &u).unwrap()
        })
    })
}
