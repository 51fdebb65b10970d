//! Automorphism-group dimension via even derivations.

use crate::scalars::{Field, FieldMatrix};
use crate::superalgebra::SuperAlgebra;

/// Even derivation given by its `m x m` and `n x n` blocks; column `j` is the
/// image of the `j`-th basis vector of that parity.
#[derive(Debug, Clone, PartialEq)]
pub struct EvenMap<F> {
    pub even: FieldMatrix<F>,
    pub odd: FieldMatrix<F>,
}

impl<F: Field> EvenMap<F> {
    /// Image of a graded vector.
    pub fn apply(&self, v: &[F]) -> Vec<F> {
        let m = self.even.rows();
        let mut out = self.even.mul_vec(&v[..m]).expect("even block matches type");
        out.extend(self.odd.mul_vec(&v[m..]).expect("odd block matches type"));
        out
    }

    /// `D(xy) = D(x)y + xD(y)` on every pair of basis vectors.
    pub fn is_derivation_of(&self, j: &SuperAlgebra<F>) -> bool {
        let dim = j.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| {
                let x = j.basis_vector(a);
                let y = j.basis_vector(b);
                let lhs = self.apply(&j.multiply(&x, &y).unwrap());
                let r1 = j.multiply(&self.apply(&x), &y).unwrap();
                let r2 = j.multiply(&x, &self.apply(&y)).unwrap();
                lhs.into_iter().zip(r1.into_iter().zip(r2)).all(|(l, (p, q))| l == p + q)
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DerivationSpace<F> {
    pub dimension: usize,
    pub basis: Vec<EvenMap<F>>,
}

/// Index of unknown `d_{k,a}` (image coordinate `k` of basis vector `a`).
fn unknown(m: usize, n: usize, k: usize, a: usize) -> Option<usize> {
    match (k < m, a < m) {
        (true, true) => Some(k * m + a),
        (false, false) => Some(m * m + (k - m) * n + (a - m)),
        _ => None,
    }
}

/// Solution space of the Leibniz system in `m^2 + n^2` unknowns.
///
/// Pairs are taken with `a <= b`: the `(b, a)` equation is `±` the `(a, b)` one.
pub fn even_derivations<F: Field>(j: &SuperAlgebra<F>) -> DerivationSpace<F> {
    let st = j.stype();
    let (m, n) = (st.m, st.n);
    let dim = st.dim();
    let vars = m * m + n * n;
    let prod: Vec<Vec<Vec<F>>> = (0..dim).map(|a| (0..dim).map(|b| j.constants.basis_product(a, b)).collect()).collect();
    let same_block = |k: usize, a: usize| (k < m) == (a < m);

    let mut rows: Vec<Vec<F>> = Vec::new();
    for a in 0..dim {
        for b in a..dim {
            // coefficient of basis vector `out` in D(ab) - D(a)b - aD(b)
            for out in 0..dim {
                let mut row = vec![F::zero(); vars];
                // D(ab): sum_l c_ab^l d_{out,l}
                for (l, c) in prod[a][b].iter().enumerate() {
                    if !c.is_zero() && same_block(out, l) {
                        let u = unknown(m, n, out, l).unwrap();
                        row[u] = row[u].clone() + c.clone();
                    }
                }
                // D(a) b = sum_k d_{k,a} (e_k b)
                for k in (0..dim).filter(|&k| same_block(k, a)) {
                    let c = &prod[k][b][out];
                    if !c.is_zero() {
                        let u = unknown(m, n, k, a).unwrap();
                        row[u] = row[u].clone() - c.clone();
                    }
                }
                // a D(b) = sum_k d_{k,b} (a e_k)
                for k in (0..dim).filter(|&k| same_block(k, b)) {
                    let c = &prod[a][k][out];
                    if !c.is_zero() {
                        let u = unknown(m, n, k, b).unwrap();
                        row[u] = row[u].clone() - c.clone();
                    }
                }
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }

    let ns = if rows.is_empty() {
        FieldMatrix::<F>::zeros(0, vars).nullspace()
    } else {
        FieldMatrix::from_rows(rows).expect("rows have equal length").nullspace()
    };
    let basis = ns
        .basis
        .iter()
        .map(|v| EvenMap {
            even: FieldMatrix::from_fn(m, m, |k, a| v[k * m + a].clone()),
            odd: FieldMatrix::from_fn(n, n, |k, a| v[m * m + k * n + a].clone()),
        })
        .collect();
    DerivationSpace { dimension: ns.dimension, basis }
}

/// `dim Aut(J)`, identified with the dimension of the even derivation algebra.
pub fn aut_dim<F: Field>(j: &SuperAlgebra<F>) -> usize {
    even_derivations(j).dimension
}
