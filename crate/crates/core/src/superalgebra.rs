//! Graded structure constants and the identity/structure checks run on them.
//!
//! The homogeneous basis is `e_1..e_m` (even) followed by `f_1..f_n` (odd);
//! a graded element is its coordinate vector of length `m + n` in that order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalars::echelon_basis;
use crate::scalars::{Field, Rational};

/// Cap on the power chain length; the chain is descending in a space of
/// dimension at most `m + n`, so it stabilizes well before this.
pub const POWER_CHAIN_CAP: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SuperType {
    pub m: usize,
    pub n: usize,
}

impl SuperType {
    pub fn new(m: usize, n: usize) -> Result<Self, AlgebraError> {
        if m + n == 0 {
            return Err(AlgebraError::EmptyType);
        }
        Ok(SuperType { m, n })
    }

    pub fn dim(&self) -> usize {
        self.m + self.n
    }

    /// Dimension `m^3 + 2 m n^2` of the ambient space of structure constants.
    pub fn coordinate_count(&self) -> usize {
        self.m.pow(3) + 2 * self.m * self.n.pow(2)
    }

    pub fn parity(&self, index: usize) -> Parity {
        if index < self.m {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `e<i>` / `f<j>` label (1-based) of a combined basis index.
    pub fn symbol(&self, index: usize) -> String {
        if index < self.m {
            format!("e{}", index + 1)
        } else {
            format!("f{}", index - self.m + 1)
        }
    }
}

impl fmt::Display for SuperType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("type must have positive total dimension")]
    EmptyType,
    #[error("basis index {index} out of range for type {stype}")]
    IndexOutOfRange { index: usize, stype: SuperType },
    #[error("vector of length {got} does not match dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("product {left}{right} is not homogeneous of parity {expected}")]
    Grading { left: String, right: String, expected: Parity },
    #[error("odd square {sym}{sym} must vanish by antisymmetry")]
    OddSquare { sym: String },
    #[error("supercommutativity fails for {left}, {right}")]
    Supercommutativity { left: String, right: String },
    #[error("algebras have different types {0} and {1}")]
    TypeMismatch(SuperType, SuperType),
}

/// Structure constants `(alpha, beta, gamma)`:
/// `e_i e_j = sum alpha_ij^k e_k`, `e_i f_j = sum beta_ij^k f_k`,
/// `f_i f_j = sum gamma_ij^k e_k`.
///
/// `alpha` is kept symmetric and `gamma` antisymmetric in `(i, j)`; the
/// products `f_j e_i` are read from `beta`.
#[derive(Clone, PartialEq)]
pub struct StructureConstants<F> {
    stype: SuperType,
    alpha: Vec<F>,
    beta: Vec<F>,
    gamma: Vec<F>,
}

impl<F: Field> StructureConstants<F> {
    pub fn zero(stype: SuperType) -> Self {
        let SuperType { m, n } = stype;
        StructureConstants {
            stype,
            alpha: vec![F::zero(); m * m * m],
            beta: vec![F::zero(); m * n * n],
            gamma: vec![F::zero(); n * n * m],
        }
    }

    pub fn stype(&self) -> SuperType {
        self.stype
    }

    pub fn alpha(&self, i: usize, j: usize, k: usize) -> &F {
        let m = self.stype.m;
        &self.alpha[(i * m + j) * m + k]
    }

    pub fn beta(&self, i: usize, j: usize, k: usize) -> &F {
        let n = self.stype.n;
        &self.beta[(i * n + j) * n + k]
    }

    pub fn gamma(&self, i: usize, j: usize, k: usize) -> &F {
        let (m, n) = (self.stype.m, self.stype.n);
        &self.gamma[(i * n + j) * m + k]
    }

    /// Sets the product of two basis vectors (combined indices) and its
    /// supercommuted partner. `coords` is a full graded vector.
    pub fn set_product(&mut self, a: usize, b: usize, coords: &[F]) -> Result<(), AlgebraError> {
        let SuperType { m, n } = self.stype;
        let dim = m + n;
        for &idx in &[a, b] {
            if idx >= dim {
                return Err(AlgebraError::IndexOutOfRange { index: idx, stype: self.stype });
            }
        }
        if coords.len() != dim {
            return Err(AlgebraError::Dimension { expected: dim, got: coords.len() });
        }
        let target = self.stype.parity(a).add(self.stype.parity(b));
        let wrong_part = match target {
            Parity::Even => &coords[m..],
            Parity::Odd => &coords[..m],
        };
        if wrong_part.iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::Grading {
                left: self.stype.symbol(a),
                right: self.stype.symbol(b),
                expected: target,
            });
        }
        match (a < m, b < m) {
            (true, true) => {
                for k in 0..m {
                    self.alpha[(a * m + b) * m + k] = coords[k].clone();
                    self.alpha[(b * m + a) * m + k] = coords[k].clone();
                }
            }
            (true, false) | (false, true) => {
                let (i, j) = if a < m { (a, b - m) } else { (b, a - m) };
                for k in 0..n {
                    self.beta[(i * n + j) * n + k] = coords[m + k].clone();
                }
            }
            (false, false) => {
                let (i, j) = (a - m, b - m);
                if i == j {
                    if coords.iter().any(|c| !c.is_zero()) {
                        return Err(AlgebraError::OddSquare { sym: self.stype.symbol(a) });
                    }
                    return Ok(());
                }
                for k in 0..m {
                    self.gamma[(i * n + j) * m + k] = coords[k].clone();
                    self.gamma[(j * n + i) * m + k] = -coords[k].clone();
                }
            }
        }
        Ok(())
    }

    /// Product of basis vectors `a` and `b` (combined indices) as a graded vector.
    pub fn basis_product(&self, a: usize, b: usize) -> Vec<F> {
        let SuperType { m, n } = self.stype;
        let mut out = vec![F::zero(); m + n];
        match (a < m, b < m) {
            (true, true) => {
                for k in 0..m {
                    out[k] = self.alpha(a, b, k).clone();
                }
            }
            (true, false) => {
                for k in 0..n {
                    out[m + k] = self.beta(a, b - m, k).clone();
                }
            }
            (false, true) => {
                for k in 0..n {
                    out[m + k] = self.beta(b, a - m, k).clone();
                }
            }
            (false, false) => {
                for k in 0..m {
                    out[k] = self.gamma(a - m, b - m, k).clone();
                }
            }
        }
        out
    }

    /// All `m^3 + 2 m n^2` coordinates, in the order alpha, beta, gamma.
    pub fn coordinates(&self) -> Vec<F> {
        self.alpha.iter().chain(&self.beta).chain(&self.gamma).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates().iter().all(|c| c.is_zero())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> StructureConstants<G> {
        StructureConstants {
            stype: self.stype,
            alpha: self.alpha.iter().map(&f).collect(),
            beta: self.beta.iter().map(&f).collect(),
            gamma: self.gamma.iter().map(&f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<StructureConstants<G>, E> {
        Ok(StructureConstants {
            stype: self.stype,
            alpha: self.alpha.iter().map(&f).collect::<Result<_, _>>()?,
            beta: self.beta.iter().map(&f).collect::<Result<_, _>>()?,
            gamma: self.gamma.iter().map(&f).collect::<Result<_, _>>()?,
        })
    }

    /// Keeps only the odd-odd products.
    pub fn a_part(&self) -> Self {
        let mut c = self.clone();
        c.alpha.iter_mut().chain(c.beta.iter_mut()).for_each(|x| *x = F::zero());
        c
    }

    /// Drops the odd-odd products.
    pub fn f_part(&self) -> Self {
        let mut c = self.clone();
        c.gamma.iter_mut().for_each(|x| *x = F::zero());
        c
    }

    /// The even subalgebra as a type `(m, 0)` table.
    pub fn even_part(&self) -> Self {
        StructureConstants {
            stype: SuperType { m: self.stype.m, n: 0 },
            alpha: self.alpha.clone(),
            beta: Vec::new(),
            gamma: Vec::new(),
        }
    }

    /// Nonzero basis products `(a, b, coords)` with `a <= b`.
    pub fn nonzero_products(&self) -> Vec<(usize, usize, Vec<F>)> {
        let dim = self.stype.dim();
        let mut out = Vec::new();
        for a in 0..dim {
            for b in a..dim {
                let p = self.basis_product(a, b);
                if p.iter().any(|c| !c.is_zero()) {
                    out.push((a, b, p));
                }
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for StructureConstants<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StructureConstants{} {{", self.stype)?;
        let products = self.nonzero_products();
        for (i, (a, b, p)) in products.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}{} = {}", self.stype.symbol(*a), self.stype.symbol(*b), format_vector(self.stype, p))?;
        }
        write!(f, " }}")
    }
}

/// Renders a graded vector as `c1 e1 + c2 f3`.
pub fn format_vector<F: Field>(stype: SuperType, v: &[F]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            if c.is_one() {
                stype.symbol(i)
            } else {
                format!("({c}) {}", stype.symbol(i))
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// A named superalgebra given by structure constants in a fixed homogeneous basis.
#[derive(Clone, PartialEq)]
pub struct SuperAlgebra<F> {
    pub name: String,
    pub constants: StructureConstants<F>,
}

/// Violation of the Jordan superidentity on basis vectors `(w, x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanViolation<F> {
    pub quadruple: [usize; 4],
    pub residual: Vec<F>,
}

/// Violation of associativity on basis vectors `(x, y, z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociativityViolation<F> {
    pub triple: [usize; 3],
    pub left: Vec<F>,
    pub right: Vec<F>,
}

/// Homogeneous subspace given by echelonized bases of its even and odd parts.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedSubspace<F> {
    pub stype: SuperType,
    pub even: Vec<Vec<F>>,
    pub odd: Vec<Vec<F>>,
}

impl<F: Field> GradedSubspace<F> {
    pub fn full(stype: SuperType) -> Self {
        let unit = |len: usize, i: usize| (0..len).map(|k| if k == i { F::one() } else { F::zero() }).collect();
        GradedSubspace {
            stype,
            even: (0..stype.m).map(|i| unit(stype.m, i)).collect(),
            odd: (0..stype.n).map(|i| unit(stype.n, i)).collect(),
        }
    }

    pub fn zero(stype: SuperType) -> Self {
        GradedSubspace { stype, even: Vec::new(), odd: Vec::new() }
    }

    /// Span of arbitrary graded vectors, split into homogeneous components.
    pub fn span(stype: SuperType, vectors: &[Vec<F>]) -> Self {
        let m = stype.m;
        let even: Vec<Vec<F>> = vectors.iter().map(|v| v[..m].to_vec()).filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        let odd: Vec<Vec<F>> = vectors.iter().map(|v| v[m..].to_vec()).filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        GradedSubspace { stype, even: echelon_basis(&even, m), odd: echelon_basis(&odd, stype.n) }
    }

    /// `(dim even part, dim odd part)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.even.len(), self.odd.len())
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn dim(&self, parity: Parity) -> usize {
        match parity {
            Parity::Even => self.even.len(),
            Parity::Odd => self.odd.len(),
        }
    }

    /// Homogeneous spanning vectors embedded in the full graded space.
    pub fn spanning_vectors(&self) -> Vec<Vec<F>> {
        let SuperType { m, n } = self.stype;
        let even = self.even.iter().map(|v| v.iter().cloned().chain((0..n).map(|_| F::zero())).collect());
        let odd = self.odd.iter().map(|v| (0..m).map(|_| F::zero()).chain(v.iter().cloned()).collect());
        even.chain(odd).collect()
    }

    pub fn contains(&self, other: &GradedSubspace<F>) -> bool {
        let joined = [self.spanning_vectors(), other.spanning_vectors()].concat();
        GradedSubspace::span(self.stype, &joined).dims() == self.dims()
    }
}

impl<F: Field> SuperAlgebra<F> {
    pub fn new(name: impl Into<String>, constants: StructureConstants<F>) -> Self {
        SuperAlgebra { name: name.into(), constants }
    }

    pub fn zero(name: impl Into<String>, stype: SuperType) -> Self {
        SuperAlgebra::new(name, StructureConstants::zero(stype))
    }

    pub fn stype(&self) -> SuperType {
        self.constants.stype()
    }

    pub fn dim(&self) -> usize {
        self.stype().dim()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F> {
        (0..self.dim()).map(|k| if k == i { F::one() } else { F::zero() }).collect()
    }

    /// Bilinear product of two graded vectors.
    pub fn multiply(&self, x: &[F], y: &[F]) -> Result<Vec<F>, AlgebraError> {
        let dim = self.dim();
        for v in [x, y] {
            if v.len() != dim {
                return Err(AlgebraError::Dimension { expected: dim, got: v.len() });
            }
        }
        Ok(self.mul_unchecked(x, y))
    }

    fn mul_unchecked(&self, x: &[F], y: &[F]) -> Vec<F> {
        let dim = self.dim();
        let mut out = vec![F::zero(); dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let p = self.constants.basis_product(a, b);
                if p.iter().all(|c| c.is_zero()) {
                    continue;
                }
                let coeff = xa.clone() * yb.clone();
                for (o, pk) in out.iter_mut().zip(p) {
                    if !pk.is_zero() {
                        *o = o.clone() + coeff.clone() * pk;
                    }
                }
            }
        }
        out
    }

    /// Checks `xy = (-1)^{|x||y|} yx` and the grading on all basis pairs.
    pub fn check_supercommutativity(&self) -> Result<(), AlgebraError> {
        let st = self.stype();
        let m = st.m;
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let ab = self.constants.basis_product(a, b);
                let ba = self.constants.basis_product(b, a);
                let sign_odd = a >= m && b >= m;
                let ok = ab.iter().zip(&ba).all(|(u, v)| if sign_odd { *u == -v.clone() } else { u == v });
                if !ok {
                    return Err(AlgebraError::Supercommutativity { left: st.symbol(a), right: st.symbol(b) });
                }
                let target = st.parity(a).add(st.parity(b));
                let bad = ab.iter().enumerate().any(|(k, c)| !c.is_zero() && st.parity(k) != target);
                if bad {
                    return Err(AlgebraError::Grading { left: st.symbol(a), right: st.symbol(b), expected: target });
                }
            }
        }
        Ok(())
    }

    /// Evaluates the signed Jordan superidentity
    /// `(wx)(yz) + s1 (wy)(xz) + s2 (wz)(xy) - s3 x(w(yz)) - s4 y(w(xz)) - s5 z(w(xy))`
    /// on every quadruple of basis vectors.
    pub fn check_jordan_superidentity(&self) -> Result<(), JordanViolation<F>> {
        let dim = self.dim();
        let st = self.stype();
        let p = |i: usize| st.parity(i).bit();
        let basis: Vec<Vec<F>> = (0..dim).map(|i| self.basis_vector(i)).collect();
        let prod: Vec<Vec<Vec<F>>> =
            (0..dim).map(|a| (0..dim).map(|b| self.constants.basis_product(a, b)).collect()).collect();
        let sign = |e: usize| if e % 2 == 0 { F::one() } else { -F::one() };
        for w in 0..dim {
            for x in 0..dim {
                for y in 0..dim {
                    for z in 0..dim {
                        let (pw, px, py, pz) = (p(w), p(x), p(y), p(z));
                        let terms = [
                            (F::one(), self.mul_unchecked(&prod[w][x], &prod[y][z])),
                            (sign(px * py), self.mul_unchecked(&prod[w][y], &prod[x][z])),
                            (sign((px + py) * pz), self.mul_unchecked(&prod[w][z], &prod[x][y])),
                            (-sign(pw * px), self.mul_unchecked(&basis[x], &self.mul_unchecked(&basis[w], &prod[y][z]))),
                            (-sign(py * (pw + px)), self.mul_unchecked(&basis[y], &self.mul_unchecked(&basis[w], &prod[x][z]))),
                            (-sign(pz * (pw + px + py)), self.mul_unchecked(&basis[z], &self.mul_unchecked(&basis[w], &prod[x][y]))),
                        ];
                        let mut residual = vec![F::zero(); dim];
                        for (s, v) in terms {
                            for (r, c) in residual.iter_mut().zip(v) {
                                if !c.is_zero() {
                                    *r = r.clone() + s.clone() * c;
                                }
                            }
                        }
                        if residual.iter().any(|c| !c.is_zero()) {
                            return Err(JordanViolation { quadruple: [w, x, y, z], residual });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Supercommutativity plus the Jordan superidentity.
    pub fn is_jordan(&self) -> bool {
        self.check_supercommutativity().is_ok() && self.check_jordan_superidentity().is_ok()
    }

    /// `(xy)z = x(yz)` on every basis triple.
    pub fn check_associativity(&self) -> Result<(), AssociativityViolation<F>> {
        let dim = self.dim();
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let left = self.mul_unchecked(&self.constants.basis_product(x, y), &self.basis_vector(z));
                    let right = self.mul_unchecked(&self.basis_vector(x), &self.constants.basis_product(y, z));
                    if left != right {
                        return Err(AssociativityViolation { triple: [x, y, z], left, right });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_associative(&self) -> bool {
        self.check_associativity().is_ok()
    }

    /// Span of all products `u v` with `u` in `left`, `v` in `right`.
    pub fn product_space(&self, left: &GradedSubspace<F>, right: &GradedSubspace<F>) -> GradedSubspace<F> {
        let lv = left.spanning_vectors();
        let rv = right.spanning_vectors();
        let products: Vec<Vec<F>> = lv.iter().flat_map(|u| rv.iter().map(move |v| (u, v))).map(|(u, v)| self.mul_unchecked(u, v)).collect();
        GradedSubspace::span(self.stype(), &products)
    }

    /// `J^1, ..., J^cap` with `J^r = sum_{i=1}^{r-1} J^i J^{r-i}`, no truncation.
    pub fn powers(&self, cap: usize) -> Vec<GradedSubspace<F>> {
        let st = self.stype();
        let mut powers: Vec<GradedSubspace<F>> = vec![GradedSubspace::full(st)];
        for r in 2..=cap {
            let mut vectors = Vec::new();
            for i in 1..r {
                vectors.extend(self.product_space(&powers[i - 1], &powers[r - i - 1]).spanning_vectors());
            }
            powers.push(GradedSubspace::span(st, &vectors));
        }
        powers
    }

    /// The power chain `J^1 ⊇ J^2 ⊇ ...`, stopping at `cap`, at the zero
    /// subspace, or at the first term equal to its predecessor (inclusive).
    pub fn power_chain(&self, cap: usize) -> Vec<GradedSubspace<F>> {
        let all = self.powers(cap.max(1));
        let mut chain: Vec<GradedSubspace<F>> = Vec::new();
        for term in all {
            let stop = term.is_zero() || chain.last() == Some(&term);
            chain.push(term);
            if stop {
                break;
            }
        }
        chain
    }

    /// `dim (J^r)_parity`.
    pub fn power_dim(&self, r: usize, parity: Parity) -> usize {
        self.powers(r.max(1))[r.max(1) - 1].dim(parity)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.power_chain(POWER_CHAIN_CAP).last().is_some_and(GradedSubspace::is_zero)
    }

    /// `J^(1) = JJ`, `J^(k+1) = J^(k) J^(k)`, until zero or stable.
    pub fn derived_series(&self) -> Vec<GradedSubspace<F>> {
        let full = GradedSubspace::full(self.stype());
        let mut series = vec![self.product_space(&full, &full)];
        for _ in 0..=self.dim() {
            let last = series.last().unwrap();
            if last.is_zero() {
                break;
            }
            let next = self.product_space(last, last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(GradedSubspace::is_zero)
    }

    /// Number of derived steps needed to reach zero, if solvable.
    pub fn solvability_length(&self) -> Option<usize> {
        let s = self.derived_series();
        s.last().is_some_and(GradedSubspace::is_zero).then_some(s.len())
    }

    /// `a(J)`: same type, only the odd-odd products kept.
    pub fn a_of(&self) -> Self {
        SuperAlgebra::new(format!("a({})", self.name), self.constants.a_part())
    }

    /// `F(J)`: odd-odd products dropped.
    pub fn f_of(&self) -> Self {
        SuperAlgebra::new(format!("F({})", self.name), self.constants.f_part())
    }

    /// The even part as an ordinary algebra of type `(m, 0)`.
    pub fn even_part(&self) -> Self {
        SuperAlgebra::new(format!("{}_0", self.name), self.constants.even_part())
    }

    pub fn map_scalars<G: Field>(&self, f: impl Fn(&F) -> G) -> SuperAlgebra<G> {
        SuperAlgebra::new(self.name.clone(), self.constants.map(f))
    }
}

impl SuperAlgebra<Rational> {
    pub fn lift<G: Field>(&self) -> SuperAlgebra<G> {
        self.map_scalars(G::from_rational)
    }
}

impl<F: Field> fmt::Debug for SuperAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperAlgebra({:?}, {:?})", self.name, self.constants)
    }
}
