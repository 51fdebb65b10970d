//! One-parameter deformation witnesses: a change of basis `g(t)` applied over
//! `Q(t)`, with the limit at `t = 0` matched exactly against a target table.
//!
//! Column `j` of each block holds the old coordinates of the `j`-th new basis
//! vector, so `E1 = t e1` is the block `diag(t, ...)`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::catalog::{Catalog, CatalogError};
use crate::scalars::{FieldMatrix, RatFunc, Rational, ScalarError};
use crate::superalgebra::{Parity, StructureConstants, SuperAlgebra, SuperType};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DeformationError {
    #[error("{parity} block is singular over Q(t)")]
    Singular { parity: Parity },
    #[error("family blocks are {even}x{even} / {odd}x{odd}, algebra type is {stype}")]
    Shape { even: usize, odd: usize, stype: SuperType },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// Block-diagonal change of basis over `Q(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisFamily {
    pub even: FieldMatrix<RatFunc>,
    pub odd: FieldMatrix<RatFunc>,
}

impl BasisFamily {
    pub fn new(even: FieldMatrix<RatFunc>, odd: FieldMatrix<RatFunc>) -> Result<Self, ScalarError> {
        for b in [&even, &odd] {
            if !b.is_square() {
                return Err(ScalarError::NotSquare { rows: b.rows(), cols: b.cols() });
            }
        }
        Ok(BasisFamily { even, odd })
    }

    pub fn identity(stype: SuperType) -> Self {
        BasisFamily { even: FieldMatrix::identity(stype.m), odd: FieldMatrix::identity(stype.n) }
    }

    /// `c * t^k * identity` on both blocks.
    pub fn scaling(stype: SuperType, k: i64) -> Self {
        let s = RatFunc::laurent_monomial(Rational::one(), k);
        let diag = |n: usize| FieldMatrix::from_fn(n, n, |i, j| if i == j { s.clone() } else { RatFunc::zero() });
        BasisFamily { even: diag(stype.m), odd: diag(stype.n) }
    }

    pub fn stype(&self) -> SuperType {
        SuperType { m: self.even.rows(), n: self.odd.rows() }
    }

    pub fn block(&self, parity: Parity) -> &FieldMatrix<RatFunc> {
        match parity {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    /// Determinants of the even and odd blocks (`1` for an empty block).
    pub fn determinants(&self) -> (RatFunc, RatFunc) {
        (self.even.det().unwrap(), self.odd.det().unwrap())
    }

    /// Old coordinates of new basis vector `a` (combined index).
    pub fn new_basis_vector(&self, a: usize) -> Vec<RatFunc> {
        let SuperType { m, n } = self.stype();
        let mut v = vec![RatFunc::zero(); m + n];
        if a < m {
            v[..m].clone_from_slice(&self.even.column(a));
        } else {
            v[m..].clone_from_slice(&self.odd.column(a - m));
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeformationWitness {
    pub source: String,
    pub target: String,
    pub family: BasisFamily,
}

impl DeformationWitness {
    pub fn id(&self) -> String {
        format!("{} -> {}", self.source, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InvalidReason {
    SingularBlock { parity: Parity },
    TypeMismatch { family: String, algebra: String },
    /// Structure constant of `left * right` on `out` has a pole at `t = 0`.
    Pole { left: String, right: String, out: String, value: String },
    LimitMismatch { left: String, right: String, got: String, expected: String },
}

impl std::fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InvalidReason::SingularBlock { parity } => write!(f, "{parity} block is singular"),
            InvalidReason::TypeMismatch { family, algebra } => write!(f, "family of type {family} on algebra of type {algebra}"),
            InvalidReason::Pole { left, right, out, value } => {
                write!(f, "coefficient of {out} in {left}{right} is {value}, which has a pole at t = 0")
            }
            InvalidReason::LimitMismatch { left, right, got, expected } => {
                write!(f, "limit of {left}{right} is {got}, target has {expected}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Validity {
    /// Both block determinants are `c t^k`: invertible for every `t != 0`.
    Strict,
    /// Determinants are nonzero rational functions that are not monomials.
    Generic,
    Invalid { reason: InvalidReason },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        !matches!(self, Validity::Invalid { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport {
    pub source: String,
    pub target: String,
    pub validity: Validity,
    pub even_det: Option<RatFunc>,
    pub odd_det: Option<RatFunc>,
    /// Limit constants whenever every coefficient is regular at `t = 0`.
    pub limit: Option<StructureConstants<Rational>>,
}

/// Structure constants of `J` in the basis given by `fam` over `Q(t)`.
pub fn specialize(j: &SuperAlgebra<Rational>, fam: &BasisFamily) -> Result<StructureConstants<RatFunc>, DeformationError> {
    let st = j.stype();
    if fam.stype() != st {
        return Err(DeformationError::Shape { even: fam.even.rows(), odd: fam.odd.rows(), stype: st });
    }
    let even_inv = fam.even.inverse().map_err(|_| DeformationError::Singular { parity: Parity::Even })?;
    let odd_inv = fam.odd.inverse().map_err(|_| DeformationError::Singular { parity: Parity::Odd })?;
    let jt: SuperAlgebra<RatFunc> = j.lift();
    let new_basis: Vec<Vec<RatFunc>> = (0..st.dim()).map(|a| fam.new_basis_vector(a)).collect();
    let mut out = StructureConstants::zero(st);
    for a in 0..st.dim() {
        for b in a..st.dim() {
            if a >= st.m && a == b {
                continue;
            }
            let p = jt.multiply(&new_basis[a], &new_basis[b]).expect("basis vectors match the type");
            let mut coords = even_inv.mul_vec(&p[..st.m]).unwrap();
            coords.extend(odd_inv.mul_vec(&p[st.m..]).unwrap());
            out.set_product(a, b, &coords).expect("graded change of basis preserves the grading");
        }
    }
    Ok(out)
}

/// Result of evaluating specialized constants at `t = 0`.
pub enum Limit {
    Regular(StructureConstants<Rational>),
    Pole(InvalidReason),
}

pub fn limit_at_zero(c: &StructureConstants<RatFunc>) -> Limit {
    let st = c.stype();
    let mut out = StructureConstants::zero(st);
    for a in 0..st.dim() {
        for b in a..st.dim() {
            let p = c.basis_product(a, b);
            let mut v = Vec::with_capacity(p.len());
            for (k, x) in p.iter().enumerate() {
                match x.eval_at_zero() {
                    Ok(q) => v.push(q),
                    Err(_) => {
                        return Limit::Pole(InvalidReason::Pole {
                            left: new_symbol(st, a),
                            right: new_symbol(st, b),
                            out: new_symbol(st, k),
                            value: x.to_string(),
                        })
                    }
                }
            }
            if a >= st.m && a == b {
                continue;
            }
            out.set_product(a, b, &v).expect("limit of graded constants is graded");
        }
    }
    Limit::Regular(out)
}

fn new_symbol(st: SuperType, i: usize) -> String {
    st.symbol(i).to_uppercase()
}

/// Verifies `fam` as a deformation of `source` into the table `target`.
pub fn verify_family(source: &SuperAlgebra<Rational>, target: &StructureConstants<Rational>, fam: &BasisFamily) -> (Validity, Option<RatFunc>, Option<RatFunc>, Option<StructureConstants<Rational>>) {
    let st = source.stype();
    if fam.stype() != st || target.stype() != st {
        let reason = InvalidReason::TypeMismatch { family: fam.stype().to_string(), algebra: st.to_string() };
        return (Validity::Invalid { reason }, None, None, None);
    }
    let (de, dodd) = fam.determinants();
    for (d, parity) in [(&de, Parity::Even), (&dodd, Parity::Odd)] {
        if d.is_zero() {
            return (Validity::Invalid { reason: InvalidReason::SingularBlock { parity } }, Some(de.clone()), Some(dodd.clone()), None);
        }
    }
    let specialized = specialize(source, fam).expect("determinants are nonzero");
    let limit = match limit_at_zero(&specialized) {
        Limit::Regular(l) => l,
        Limit::Pole(reason) => return (Validity::Invalid { reason }, Some(de), Some(dodd), None),
    };
    for a in 0..st.dim() {
        for b in a..st.dim() {
            let got = limit.basis_product(a, b);
            let expected = target.basis_product(a, b);
            if got != expected {
                let reason = InvalidReason::LimitMismatch {
                    left: new_symbol(st, a),
                    right: new_symbol(st, b),
                    got: crate::superalgebra::format_vector(st, &got),
                    expected: crate::superalgebra::format_vector(st, &expected),
                };
                return (Validity::Invalid { reason }, Some(de), Some(dodd), Some(limit));
            }
        }
    }
    let validity = if de.is_laurent_monomial() && dodd.is_laurent_monomial() { Validity::Strict } else { Validity::Generic };
    (validity, Some(de), Some(dodd), Some(limit))
}

/// Resolves the witness's names in `catalog` and verifies it.
pub fn witness_verify(w: &DeformationWitness, catalog: &Catalog) -> Result<WitnessReport, DeformationError> {
    let source = catalog.algebra(&w.source)?;
    let target = catalog.algebra(&w.target)?;
    let (validity, even_det, odd_det, limit) = verify_family(source, &target.constants, &w.family);
    Ok(WitnessReport { source: w.source.clone(), target: w.target.clone(), validity, even_det, odd_det, limit })
}

/// The scaling family `t * identity`, degenerating any algebra to the zero
/// algebra of its type (named `zero_name` in the catalog).
pub fn trivial_witness(j: &SuperAlgebra<Rational>, zero_name: &str) -> DeformationWitness {
    DeformationWitness { source: j.name.clone(), target: zero_name.to_string(), family: BasisFamily::scaling(j.stype(), 1) }
}

/// The specialized table as an algebra over `Q(t)`, for reuse of the identity checks.
pub fn specialized_algebra(j: &SuperAlgebra<Rational>, fam: &BasisFamily) -> Result<SuperAlgebra<RatFunc>, DeformationError> {
    Ok(SuperAlgebra::new(format!("{}(t)", j.name), specialize(j, fam)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Field, UniPoly};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn mono(n: i64, d: i64, k: i64) -> RatFunc {
        RatFunc::laurent_monomial(q(n, d), k)
    }

    fn table(st: SuperType, products: &[(usize, usize, &[(usize, Rational)])]) -> StructureConstants<Rational> {
        let mut c = StructureConstants::zero(st);
        for (a, b, terms) in products {
            let mut v = vec![Rational::zero(); st.dim()];
            for (k, x) in terms.iter() {
                v[*k] = x.clone();
            }
            c.set_product(*a, *b, &v).unwrap();
        }
        c
    }

    fn st13() -> SuperType {
        SuperType::new(1, 3).unwrap()
    }

    // indices: e1 = 0, f1 = 1, f2 = 2, f3 = 3
    fn js13_2() -> SuperAlgebra<Rational> {
        SuperAlgebra::new("(1,3)_2", table(st13(), &[(0, 0, &[(0, q(1, 1))]), (0, 3, &[(3, q(1, 2))])]))
    }

    fn js13_7() -> SuperAlgebra<Rational> {
        SuperAlgebra::new("(1,3)_7", table(st13(), &[(0, 0, &[(0, q(1, 1))]), (0, 2, &[(2, q(1, 2))]), (0, 3, &[(3, q(1, 1))])]))
    }

    #[test]
    fn identity_family_is_identity() {
        let j = js13_7();
        let c = specialize(&j, &BasisFamily::identity(st13())).unwrap();
        assert_eq!(c, j.constants.map(RatFunc::from_rational));
    }

    #[test]
    fn table_row_2_to_14() {
        // E1 = t e1, F1 = t/2 f3, F2 = f1 + f3, F3 = f2
        let even = FieldMatrix::from_rows(vec![vec![RatFunc::t()]]).unwrap();
        let z = RatFunc::zero;
        let o = RatFunc::one;
        let odd = FieldMatrix::from_rows(vec![vec![z(), o(), z()], vec![z(), z(), o()], vec![mono(1, 2, 1), o(), z()]]).unwrap();
        let fam = BasisFamily::new(even, odd).unwrap();
        // (1,3)_14: e1 f2 = f1
        let target = table(st13(), &[(0, 2, &[(1, q(1, 1))])]);
        let (validity, _, _, limit) = verify_family(&js13_2(), &target, &fam);
        assert_eq!(validity, Validity::Strict);
        assert_eq!(limit.unwrap(), target);
        let (validity, ..) = verify_family(&js13_2(), &table(st13(), &[]), &BasisFamily::identity(st13()));
        assert!(matches!(validity, Validity::Invalid { reason: InvalidReason::LimitMismatch { .. } }));
    }

    #[test]
    fn products_reexpressed_in_new_basis() {
        let even = FieldMatrix::from_rows(vec![vec![RatFunc::t()]]).unwrap();
        let z = RatFunc::zero;
        let o = RatFunc::one;
        // E1 = t e1, F1 = f1, F2 = 1/2 f2 + f3, F3 = f1 + f2 + f3
        let odd = FieldMatrix::from_rows(vec![vec![o(), z(), o()], vec![z(), mono(1, 2, 0), o()], vec![z(), o(), o()]]).unwrap();
        let fam = BasisFamily::new(even, odd).unwrap();
        let c = specialize(&js13_7(), &fam).unwrap();
        // E1 F3 = t e1 (f1 + f2 + f3) = t (1/2 f2 + f3) = t F2
        let e1f3 = c.basis_product(0, 3);
        assert_eq!(e1f3, vec![z(), z(), RatFunc::t(), z()]);
    }

    #[test]
    fn pole_is_invalid() {
        // scaling by t^-1 blows up e1 e1 = e1
        let fam = BasisFamily::scaling(st13(), -1);
        let (validity, ..) = verify_family(&js13_2(), &js13_2().constants, &fam);
        assert!(matches!(validity, Validity::Invalid { reason: InvalidReason::Pole { .. } }));
    }

    #[test]
    fn singular_block_is_invalid() {
        let fam = BasisFamily { even: FieldMatrix::zeros(1, 1), odd: FieldMatrix::identity(3) };
        let (validity, ..) = verify_family(&js13_2(), &js13_2().constants, &fam);
        assert_eq!(validity, Validity::Invalid { reason: InvalidReason::SingularBlock { parity: Parity::Even } });
    }

    #[test]
    fn trivial_witness_reaches_zero() {
        let j = js13_7();
        let w = trivial_witness(&j, "(1,3)_20");
        let (validity, _, _, limit) = verify_family(&j, &StructureConstants::zero(st13()), &w.family);
        assert_eq!(validity, Validity::Strict);
        assert!(limit.unwrap().is_zero());
    }

    #[test]
    fn generic_when_determinant_not_monomial() {
        // E1 = (1 + t) e1 on the zero algebra: det 1 + t
        let one_plus_t = RatFunc::from_poly(UniPoly::new(vec![q(1, 1), q(1, 1)]));
        let fam = BasisFamily { even: FieldMatrix::from_rows(vec![vec![one_plus_t]]).unwrap(), odd: FieldMatrix::identity(3) };
        let zero = SuperAlgebra::zero("0", st13());
        let (validity, ..) = verify_family(&zero, &zero.constants, &fam);
        assert_eq!(validity, Validity::Generic);
    }
}
