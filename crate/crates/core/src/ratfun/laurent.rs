use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Polynomial;
use crate::scalar::Scalar;

/// Laurent polynomial `q^shift * body(q)`.
///
/// Invariant: `body` has a nonzero constant term, or is zero with `shift = 0`.
/// This makes the representation unique, so derived equality is semantic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly<T> {
    shift: i64,
    body: Polynomial<T>,
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn new(shift: i64, body: Polynomial<T>) -> Self {
        match body.valuation() {
            None => Self::zero(),
            Some(v) => LaurentPoly {
                shift: shift + v as i64,
                body: body.shift_down(v),
            },
        }
    }

    pub fn zero() -> Self {
        LaurentPoly {
            shift: 0,
            body: Polynomial::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn monomial(c: T, exp: i64) -> Self {
        Self::new(exp, Polynomial::constant(c))
    }

    pub fn from_poly(p: Polynomial<T>) -> Self {
        Self::new(0, p)
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let terms: Vec<(i64, T)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some(lo) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![T::zero(); (hi - lo) as usize + 1];
        for (e, c) in terms {
            let i = (e - lo) as usize;
            coeffs[i] = coeffs[i].clone() + &c;
        }
        Self::new(lo, Polynomial::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Lowest exponent (0 for the zero polynomial).
    pub fn low_exp(&self) -> i64 {
        self.shift
    }

    /// Highest exponent; `None` for zero.
    pub fn top_exp(&self) -> Option<i64> {
        self.body.degree().map(|d| self.shift + d as i64)
    }

    pub fn body(&self) -> &Polynomial<T> {
        &self.body
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &T)> + '_ {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.shift + i as i64, c))
    }

    pub fn coeff(&self, exp: i64) -> T {
        let i = exp - self.shift;
        if i < 0 {
            T::zero()
        } else {
            self.body.coeff(i as usize)
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.shift, self.body.scale(c))
    }

    pub fn mul_monomial(&self, exp: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            shift: self.shift + exp,
            body: self.body.clone(),
        }
    }

    /// Substitute `q -> q^k`.
    pub fn compose_power(&self, k: u64) -> Self {
        LaurentPoly::new(
            self.shift * k as i64,
            self.body.compose_power(k as usize),
        )
    }

    /// Split as `q^e * p(q)` with `p` an ordinary polynomial.
    pub fn as_parts(&self) -> (i64, &Polynomial<T>) {
        (self.shift, &self.body)
    }

    /// Evaluate at a nonzero point (or at zero when no negative exponents).
    pub fn eval(&self, x: &T) -> Option<T> {
        if self.is_zero() {
            return Some(T::zero());
        }
        let v = self.body.eval(x);
        pow_signed(x, self.shift).map(|p| p * &v)
    }

    pub fn eval_one(&self) -> T {
        self.body.eval_one()
    }
}

pub(crate) fn pow_signed<T: Scalar>(x: &T, e: i64) -> Option<T> {
    if e < 0 && x.is_zero() {
        return None;
    }
    let mut acc = T::one();
    for _ in 0..e.unsigned_abs() {
        acc = acc * x;
    }
    Some(if e < 0 { T::one() / &acc } else { acc })
}

impl<T: Scalar> Add for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn add(self, rhs: Self) -> LaurentPoly<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.shift.min(rhs.shift);
        let a = self.body.shift_up((self.shift - lo) as usize);
        let b = rhs.body.shift_up((rhs.shift - lo) as usize);
        LaurentPoly::new(lo, &a + &b)
    }
}

impl<T: Scalar> Neg for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn neg(self) -> LaurentPoly<T> {
        LaurentPoly {
            shift: self.shift,
            body: -&self.body,
        }
    }
}

impl<T: Scalar> Sub for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn sub(self, rhs: Self) -> LaurentPoly<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &LaurentPoly<T> {
    type Output = LaurentPoly<T>;

    fn mul(self, rhs: Self) -> LaurentPoly<T> {
        LaurentPoly::new(self.shift + rhs.shift, &self.body * &rhs.body)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = LaurentPoly<BigRational>;

    fn c(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    #[test]
    fn normal_form_absorbs_low_zeros() {
        let a = L::new(-3, Polynomial::new(vec![c(0), c(0), c(2)]));
        assert_eq!(a.low_exp(), -1);
        assert_eq!(a.top_exp(), Some(-1));
        assert_eq!(a, L::monomial(c(2), -1));
    }

    #[test]
    fn cancellation_to_zero() {
        let a = L::from_terms([(2, c(1)), (-1, c(3))]);
        assert!((&a - &a).is_zero());
        assert_eq!((&a - &a).low_exp(), 0);
    }

    #[test]
    fn eval_with_negative_exponent() {
        let a = L::from_terms([(1, c(1)), (-1, c(1))]);
        assert_eq!(a.eval(&c(2)), Some(BigRational::new(5.into(), 2.into())));
        assert_eq!(a.eval(&c(0)), None);
    }
}
