use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Field, Rational, ScalarError, UniPoly};

/// Element of the rational function field `Q(t)`.
///
/// Stored reduced: `gcd(num, den) = 1` and `den` monic, which makes `==`
/// structural. Laurent polynomials are the special case `den = t^k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Reduces `num / den`. Fails only on a zero denominator.
    pub fn normalize(num: UniPoly, den: UniPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc_inv = den.leading().unwrap().recip().unwrap();
        Ok(RatFunc { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    /// `c * t^k` for any integer `k`.
    pub fn laurent_monomial(c: Rational, k: i64) -> Self {
        if c.is_zero() {
            return RatFunc::zero();
        }
        if k >= 0 {
            RatFunc::from_poly(UniPoly::monomial(c, k as usize))
        } else {
            RatFunc { num: UniPoly::constant(c), den: UniPoly::monomial(Rational::one(), (-k) as usize) }
        }
    }

    pub fn t() -> Self {
        RatFunc::from_poly(UniPoly::t())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_regular_at_zero(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Value at `t = 0`, or [`ScalarError::Pole`] if the denominator vanishes there.
    pub fn eval_at_zero(&self) -> Result<Rational, ScalarError> {
        let d0 = self.den.coeff(0);
        match d0.recip() {
            Some(inv) => Ok(&self.num.coeff(0) * &inv),
            None => Err(ScalarError::Pole),
        }
    }

    /// True for `c * t^k`, `c != 0`, `k` any integer.
    pub fn is_laurent_monomial(&self) -> bool {
        self.num.is_monomial() && self.den.is_monomial()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent when
    /// this is a Laurent polynomial, `None` otherwise.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, Rational)>> {
        if !self.den.is_monomial() {
            return None;
        }
        let shift = self.den.degree().unwrap() as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 - shift, c.clone()))
                .collect(),
        )
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone()).unwrap();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::normalize(num, &self.den * &rhs.den).unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        let neg = -rhs.clone();
        self + &neg
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::normalize(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl Field for RatFunc {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::normalize(self.den.clone(), self.num.clone()).unwrap())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[(i64, i64)]) -> UniPoly {
        UniPoly::new(c.iter().map(|&(n, d)| Rational::new(n, d)).collect())
    }

    fn int(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| Rational::from_int(x)).collect())
    }

    #[test]
    fn cancels_common_factor() {
        // (t^2 - t) / t = t - 1
        let f = RatFunc::normalize(int(&[0, -1, 1]), int(&[0, 1])).unwrap();
        assert_eq!(f, RatFunc::from_poly(int(&[-1, 1])));
        assert_eq!(f.den(), &UniPoly::one());
    }

    #[test]
    fn zero_numerator_is_canonical_zero() {
        let f = RatFunc::normalize(UniPoly::zero(), int(&[0, 0, 0, 1])).unwrap();
        assert!(f.is_zero());
        assert_eq!(f.den(), &UniPoly::one());
    }

    #[test]
    fn hand_expanded_quotient() {
        // (t^3/4 - t^3/2) / t = -t^2/4
        let num = &p(&[(0, 1), (0, 1), (0, 1), (1, 4)]) - &p(&[(0, 1), (0, 1), (0, 1), (1, 2)]);
        let f = RatFunc::normalize(num, int(&[0, 1])).unwrap();
        assert_eq!(f, RatFunc::laurent_monomial(Rational::new(-1, 4), 2));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFunc::normalize(int(&[1]), UniPoly::zero()), Err(ScalarError::ZeroDenominator));
    }

    #[test]
    fn denominator_is_monic() {
        let f = RatFunc::normalize(int(&[1]), int(&[2, 4])).unwrap();
        assert_eq!(f.den().leading(), Some(&Rational::one()));
        assert_eq!(f.num(), &UniPoly::constant(Rational::new(1, 4)));
    }

    #[test]
    fn evaluation_at_zero() {
        let f = RatFunc::laurent_monomial(Rational::new(3, 2), 1);
        assert_eq!(f.eval_at_zero().unwrap(), Rational::zero());
        let g = RatFunc::laurent_monomial(Rational::one(), -1);
        assert_eq!(g.eval_at_zero(), Err(ScalarError::Pole));
        // t^3 / (t^2 + t) reduces to t^2 / (t + 1), regular with value 0
        let h = RatFunc::normalize(int(&[0, 0, 0, 1]), int(&[0, 1, 1])).unwrap();
        assert!(h.is_regular_at_zero());
        assert_eq!(h.eval_at_zero().unwrap(), Rational::zero());
    }

    #[test]
    fn laurent_monomials() {
        let f = RatFunc::laurent_monomial(Rational::from_int(5), -2);
        assert!(f.is_laurent_monomial());
        let g = &f * &RatFunc::laurent_monomial(Rational::new(1, 5), 2);
        assert_eq!(g, RatFunc::one());
        let h = &RatFunc::one() + &RatFunc::t();
        assert!(!h.is_laurent_monomial());
    }
}
