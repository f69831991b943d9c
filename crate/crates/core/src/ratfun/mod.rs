//! Exact univariate rational functions.
//!
//! The coefficient rings of stringy invariants are localizations of `Z[λ]`
//! and their fractional extensions `Z[λ^(1/r)]`. We work in one ground
//! variable `q` with `λ = q^s`, where `s` is the *grounding scale* carried by
//! every value. Rescaling (`q -> q^k`) moves a value to a finer scale so that
//! results computed in different scales can be compared.

mod format;
mod laurent;
mod poly;

use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

pub use laurent::LaurentPoly;
pub use poly::Polynomial;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Canonical quotient `num / den` of a Laurent polynomial by a polynomial.
///
/// Canonical form: `den` is monic with nonzero constant term (all powers of
/// `q` live in `num`), `gcd(num, den) = 1`, and zero is `0 / 1`. Two values
/// with the same scale are equal as functions iff they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<T> {
    num: LaurentPoly<T>,
    den: Polynomial<T>,
    scale: u64,
}

impl<T: Scalar> RationalFunction<T> {
    pub fn new(num: LaurentPoly<T>, den: LaurentPoly<T>, scale: u64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert!(scale >= 1, "grounding scale must be positive");
        let (dshift, dbody) = den.as_parts();
        let num = num.mul_monomial(-dshift);
        Ok(Self::reduce(num, dbody.clone(), scale))
    }

    fn reduce(num: LaurentPoly<T>, den: Polynomial<T>, scale: u64) -> Self {
        if num.is_zero() {
            return Self::zero(scale);
        }
        let (shift, body) = num.as_parts();
        let g = body.gcd(&den);
        let (body, den) = if g.degree().unwrap_or(0) > 0 {
            (body.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        } else {
            (body.clone(), den)
        };
        let lead = den.leading().unwrap().clone();
        let (body, den) = if lead.is_one() {
            (body, den)
        } else {
            let inv = T::one() / &lead;
            (body.scale(&inv), den.scale(&inv))
        };
        RationalFunction {
            num: LaurentPoly::new(shift, body),
            den,
            scale,
        }
    }

    pub fn zero(scale: u64) -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: Polynomial::one(),
            scale,
        }
    }

    pub fn one(scale: u64) -> Self {
        Self::constant(T::one(), scale)
    }

    pub fn constant(c: T, scale: u64) -> Self {
        Self::from_laurent(LaurentPoly::constant(c), scale)
    }

    pub fn monomial(c: T, exp: i64, scale: u64) -> Self {
        Self::from_laurent(LaurentPoly::monomial(c, exp), scale)
    }

    pub fn from_laurent(num: LaurentPoly<T>, scale: u64) -> Self {
        RationalFunction {
            num,
            den: Polynomial::one(),
            scale,
        }
    }

    pub fn from_poly(p: Polynomial<T>, scale: u64) -> Self {
        Self::from_laurent(LaurentPoly::from_poly(p), scale)
    }

    pub fn numerator(&self) -> &LaurentPoly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<T> {
        &self.den
    }

    /// `s` with `λ = q^s`.
    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    fn check_scale(&self, other: &Self) -> Result<()> {
        if self.scale == other.scale {
            Ok(())
        } else {
            Err(Error::ScaleMismatch(self.scale, other.scale))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_scale(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return Ok(Self::reduce(&self.num + &other.num, self.den.clone(), self.scale));
        }
        let g = self.den.gcd(&other.den);
        let a_cof = self.den.div_exact(&g).unwrap();
        let b_cof = other.den.div_exact(&g).unwrap();
        let num = &(&self.num * &LaurentPoly::from_poly(b_cof.clone()))
            + &(&other.num * &LaurentPoly::from_poly(a_cof));
        Ok(Self::reduce(num, &self.den * &b_cof, self.scale))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_scale(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.scale));
        }
        // cross-cancel first so the products stay small
        let (sa, a) = self.num.as_parts();
        let (sb, b) = other.num.as_parts();
        let g1 = a.gcd(&other.den);
        let g2 = b.gcd(&self.den);
        let a = a.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let b = b.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = LaurentPoly::new(sa + sb, &a * &b);
        let den = &d1 * &d2;
        let lead = den.leading().unwrap().clone();
        let inv = T::one() / &lead;
        Ok(RationalFunction {
            num: num.scale(&inv),
            den: den.scale(&inv),
            scale: self.scale,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (s, body) = self.num.as_parts();
        let num = LaurentPoly::new(-s, self.den.clone());
        Self::new(num, LaurentPoly::from_poly(body.clone()), self.scale)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_scale(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.scale);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The factor `(λ - 1) / (λ^(a+1) - 1)` with `λ = q^s`.
    ///
    /// Requires `a > -1`, `a ∈ (1/r)Z`, `r | s`; then `s(a+1)` is a positive
    /// integer.
    pub fn stringy_factor(a: &T, r: u64, s: u64) -> Result<Self> {
        if *a <= -T::one() {
            return Err(Error::NotLogTerminal(a.to_string()));
        }
        if r == 0 || s % r != 0 {
            return Err(Error::ScaleMismatch(s, r));
        }
        let ra = a.clone() * &T::from_i64(r as i64);
        if !ra.is_integer_value() {
            return Err(Error::ScaleMismatch(s, r));
        }
        let e = (a.clone() + &T::one()) * &T::from_i64(s as i64);
        if !e.is_integer_value() {
            return Err(Error::ScaleMismatch(s, r));
        }
        let e: usize = e
            .numer_big()
            .try_into()
            .map_err(|_| Error::ScaleMismatch(s, r))?;
        Self::new(
            LaurentPoly::from_poly(Polynomial::x_pow_minus_one(s as usize)),
            LaurentPoly::from_poly(Polynomial::x_pow_minus_one(e)),
            s,
        )
    }

    /// Exact value of `lim_{q -> 1}`.
    pub fn limit_at_one(&self) -> Result<T> {
        limit_at_one_of(self.num.body(), &self.den)
    }

    /// `deg(den) - deg(num)`: the largest `m` with `self ∈ F^m`.
    pub fn order_at_infinity(&self) -> Result<i64> {
        let top = self.num.top_exp().ok_or(Error::ZeroInput)?;
        Ok(self.den.degree().unwrap() as i64 - top)
    }

    /// Membership in the filtration step `F^m` (zero lies in every step).
    pub fn in_filtration(&self, m: i64) -> bool {
        self.order_at_infinity().map_or(true, |o| o >= m)
    }

    /// Substitute `q -> q^k`; the grounding scale is multiplied by `k`.
    pub fn reground(&self, k: u64) -> Self {
        assert!(k >= 1, "reground factor must be positive");
        RationalFunction {
            num: self.num.compose_power(k),
            den: self.den.compose_power(k as usize),
            scale: self.scale * k,
        }
    }

    /// Bring two values to the common scale `lcm(s1, s2)`.
    pub fn align(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.scale.lcm(&b.scale);
        (a.reground(l / a.scale), b.reground(l / b.scale))
    }

    pub fn eval_at(&self, x: &T) -> Result<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint(x.to_string()));
        }
        let n = self
            .num
            .eval(x)
            .ok_or_else(|| Error::PoleAtPoint(x.to_string()))?;
        Ok(n / &d)
    }

    /// Integer coefficients in numerator (the denominator is monic).
    pub fn has_integer_coefficients(&self) -> bool {
        self.num.terms().all(|(_, c)| c.is_integer_value())
            && self.den.coeffs().iter().all(|c| c.is_integer_value())
    }
}

/// Limit at `q = 1` of `num / den`, cancelling factors of `(q - 1)` first.
pub fn limit_at_one_of<T: Scalar>(num: &Polynomial<T>, den: &Polynomial<T>) -> Result<T> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok(T::zero());
    }
    let (mut n, mut d) = (num.clone(), den.clone());
    loop {
        let (nq, nr) = n.div_x_minus_one();
        let (dq, dr) = d.div_x_minus_one();
        match (nr.is_zero(), dr.is_zero()) {
            (_, false) => return Ok(nr / &dr),
            (true, true) => {
                n = nq;
                d = dq;
            }
            (false, true) => return Err(Error::PoleAtOne),
        }
    }
}

impl<T: Scalar> Neg for &RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
            scale: self.scale,
        }
    }
}

impl<T: Scalar> Neg for RationalFunction<T> {
    type Output = RationalFunction<T>;

    fn neg(self) -> RationalFunction<T> {
        -&self
    }
}

// Operator forms panic on mismatched scales; use the `checked_*` methods when
// the scales are not known to agree.
macro_rules! ratfun_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<T: Scalar> $tr for &RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: Self) -> RationalFunction<T> {
                self.$checked(rhs).expect("rational functions with different scales")
            }
        }
        impl<T: Scalar> $tr for RationalFunction<T> {
            type Output = RationalFunction<T>;
            fn $m(self, rhs: Self) -> RationalFunction<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
ratfun_op!(Add, add, checked_add);
ratfun_op!(Sub, sub, checked_sub);
ratfun_op!(Mul, mul, checked_mul);
