//! E-polynomials and two-variable stringy E-functions.
//!
//! A stringy E-function lives in `Z[u, v]` localized at polynomials in the
//! fractional power `z = (uv)^(1/r)`. Every monomial `u^p v^q` is written as
//! `u^(p-q) z^(r q)` (or `v^(q-p) z^(r p)`), so an element is a finite sum of
//! `u^d R_d(z)` for `d >= 0` and `v^(-d) R_d(z)` for `d < 0`, with `R_d` a
//! rational function in `z`. This normal form is unique because all
//! denominators involve only `uv`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{Integer, Laurent, RatFun, Rational};

/// E-polynomial `Σ e_{p,q} u^p v^q` with the sign `(-1)^(p+q)` already
/// folded into the coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HodgePoly {
    entries: BTreeMap<(u32, u32), Integer>,
}

impl HodgePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Integer::one())
    }

    pub fn constant(c: Integer) -> Self {
        Self::from_entries([(0, 0, c)])
    }

    pub fn from_entries<I: IntoIterator<Item = (u32, u32, Integer)>>(entries: I) -> Self {
        let mut h = Self::zero();
        for (p, q, c) in entries {
            h.add_term(p, q, c);
        }
        h
    }

    /// Polynomial in the product `uv` given by its coefficients, lowest first.
    pub fn from_uv_coeffs(coeffs: &[Integer]) -> Self {
        Self::from_entries(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as u32, i as u32, c.clone())),
        )
    }

    /// E-polynomial of an `n`-dimensional algebraic torus, `(uv - 1)^n`.
    pub fn torus(n: u32) -> Self {
        let mut out = Self::one();
        let factor = Self::from_uv_coeffs(&[-Integer::one(), Integer::one()]);
        for _ in 0..n {
            out = &out * &factor;
        }
        out
    }

    fn add_term(&mut self, p: u32, q: u32, c: Integer) {
        if c.is_zero() {
            return;
        }
        let e = self.entries.entry((p, q)).or_insert_with(Integer::zero);
        *e += c;
        if e.is_zero() {
            self.entries.remove(&(p, q));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, u32, &Integer)> {
        self.entries.iter().map(|(&(p, q), c)| (p, q, c))
    }

    pub fn coeff(&self, p: u32, q: u32) -> Integer {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Value at `u = v = 1`.
    pub fn euler(&self) -> Integer {
        self.entries.values().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries
            .iter()
            .all(|(&(p, q), c)| self.entries.get(&(q, p)) == Some(c))
    }

    /// Substitution `u = v = t`, as a polynomial in `t`.
    pub fn betti(&self) -> Laurent {
        Laurent::from_terms(
            self.entries
                .iter()
                .map(|(&(p, q), c)| ((p + q) as i64, Rational::from_integer(c.clone()))),
        )
    }

    pub fn scale(&self, c: &Integer) -> Self {
        Self::from_entries(self.entries().map(|(p, q, x)| (p, q, x * c)))
    }
}

impl std::ops::Add for &HodgePoly {
    type Output = HodgePoly;

    fn add(self, rhs: &HodgePoly) -> HodgePoly {
        let mut out = self.clone();
        for (p, q, c) in rhs.entries() {
            out.add_term(p, q, c.clone());
        }
        out
    }
}

impl std::ops::Sub for &HodgePoly {
    type Output = HodgePoly;

    fn sub(self, rhs: &HodgePoly) -> HodgePoly {
        let mut out = self.clone();
        for (p, q, c) in rhs.entries() {
            out.add_term(p, q, -c.clone());
        }
        out
    }
}

impl std::ops::Mul for &HodgePoly {
    type Output = HodgePoly;

    fn mul(self, rhs: &HodgePoly) -> HodgePoly {
        let mut out = HodgePoly::zero();
        for (p1, q1, a) in self.entries() {
            for (p2, q2, b) in rhs.entries() {
                out.add_term(p1 + p2, q1 + q2, a * b);
            }
        }
        out
    }
}

impl fmt::Display for HodgePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&(p, q), c)) in self.entries.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let mono = match (p, q) {
                (0, 0) => String::new(),
                _ => {
                    let part = |v: &str, e: u32| match e {
                        0 => String::new(),
                        1 => v.to_string(),
                        _ => format!("{v}^{e}"),
                    };
                    format!("{}{}", part("u", p), part("v", q))
                }
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// JSON shape: a list of `[p, q, coefficient]`.
impl Serialize for HodgePoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(u32, u32, i64)> = self
            .entries()
            .map(|(p, q, c)| (p, q, i64::try_from(c).expect("coefficient exceeds i64")))
            .collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HodgePoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples: Vec<(u32, u32, i64)> = Vec::deserialize(d)?;
        Ok(HodgePoly::from_entries(
            triples.into_iter().map(|(p, q, c)| (p, q, Integer::from(c))),
        ))
    }
}

/// Specializations of a stringy E-function.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `u = v = t`; a rational function in `q = t^(1/r)`.
    BettiTop,
    /// Same as [`Self::BettiTop`] for strata whose algebraic and topological
    /// Betti polynomials agree (torus orbits, homogeneous spaces).
    BettiAlgPassthrough,
    /// `lim_{u,v -> 1}`.
    Euler,
    /// Terms with `p + q` even.
    Even,
    /// Terms with `p = q`.
    Diagonal,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Specialized {
    Function(RatFun),
    Stringy(StringyFunction),
    Number(Rational),
}

/// Stringy E-function in canonical form `Σ_d u^d R_d(z)`, see the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StringyFunction {
    index: u64,
    terms: BTreeMap<i64, RatFun>,
}

impl StringyFunction {
    pub fn zero(index: u64) -> Self {
        assert!(index >= 1);
        StringyFunction {
            index,
            terms: BTreeMap::new(),
        }
    }

    /// Map `u^p v^q` to imbalance `p - q` with `z`-exponent `r min(p, q)`.
    pub fn embed(h: &HodgePoly, index: u64) -> Self {
        let mut out = Self::zero(index);
        for (p, q, c) in h.entries() {
            let d = p as i64 - q as i64;
            let k = index as i64 * p.min(q) as i64;
            out.add_term(d, &RatFun::monomial(Rational::from_integer(c.clone()), k, index));
        }
        out
    }

    fn add_term(&mut self, d: i64, f: &RatFun) {
        if f.is_zero() {
            return;
        }
        let sum = match self.terms.get(&d) {
            Some(g) => g + f,
            None => f.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&d);
        } else {
            self.terms.insert(d, sum);
        }
    }

    /// `r`, with `z^r = uv`.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFun)> {
        self.terms.iter().map(|(&d, f)| (d, f))
    }

    pub fn term(&self, d: i64) -> Option<&RatFun> {
        self.terms.get(&d)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.index != other.index {
            return Err(Error::ScaleMismatch(self.index, other.index));
        }
        let mut out = self.clone();
        for (d, f) in other.terms() {
            out.add_term(d, f);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale_by(&RatFun::constant(-Rational::one(), other.index)))
    }

    /// Multiply every term by a function of `z` alone (scale `r`).
    pub fn scale_by(&self, f: &RatFun) -> Self {
        assert_eq!(f.scale(), self.index, "factor must be expressed in z");
        let mut out = Self::zero(self.index);
        for (d, g) in self.terms() {
            out.add_term(d, &(g * f));
        }
        out
    }

    /// `u = v = t`, returned in `q = t^(1/r)` (grounding scale `2r`).
    pub fn betti_top(&self) -> RatFun {
        let r = self.index as i64;
        let mut acc = RatFun::zero(2 * self.index);
        for (d, f) in self.terms() {
            let shifted = &f.reground(2) * &RatFun::monomial(Rational::one(), r * d.abs(), 2 * self.index);
            acc = &acc + &shifted;
        }
        acc
    }

    /// `lim_{u,v -> 1}`: the sum of the limits of all `R_d` at `z = 1`.
    pub fn euler(&self) -> Result<Rational> {
        self.terms()
            .try_fold(Rational::zero(), |acc, (_, f)| Ok(acc + f.limit_at_one()?))
    }

    fn filter(&self, keep: impl Fn(i64) -> bool) -> Self {
        StringyFunction {
            index: self.index,
            terms: self
                .terms
                .iter()
                .filter(|(&d, _)| keep(d))
                .map(|(&d, f)| (d, f.clone()))
                .collect(),
        }
    }

    /// `(E(u,v) + E(-u,-v)) / 2`; `p + q` and `p - q` have the same parity.
    pub fn even_part(&self) -> Self {
        self.filter(|d| d % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|d| d % 2 != 0)
    }

    pub fn diagonal_part(&self) -> Self {
        self.filter(|d| d == 0)
    }

    pub fn is_hodge_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(d, f)| self.terms.get(&-d) == Some(f))
    }

    pub fn specialize(&self, mode: Specialization) -> Result<Specialized> {
        Ok(match mode {
            Specialization::BettiTop | Specialization::BettiAlgPassthrough => {
                Specialized::Function(self.betti_top())
            }
            Specialization::Euler => Specialized::Number(self.euler()?),
            Specialization::Even => Specialized::Stringy(self.even_part()),
            Specialization::Diagonal => Specialized::Stringy(self.diagonal_part()),
        })
    }

    /// `[d, R_d rendered in z]` pairs.
    pub fn render_terms(&self) -> Vec<(i64, String)> {
        self.terms().map(|(d, f)| (d, f.render("z"))).collect()
    }
}

impl fmt::Display for StringyFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, g)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mono = match d {
                0 => String::new(),
                1 => "u*".into(),
                -1 => "v*".into(),
                d if d > 0 => format!("u^{d}*"),
                d => format!("v^{}*", -d),
            };
            write!(f, "{mono}[{}]", g.render("z"))?;
        }
        write!(f, " (z^{} = uv)", self.index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(triples: &[(u32, u32, i64)]) -> HodgePoly {
        HodgePoly::from_entries(triples.iter().map(|&(p, q, c)| (p, q, Integer::from(c))))
    }

    fn int(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn torus_polynomials() {
        assert_eq!(HodgePoly::torus(0), HodgePoly::one());
        assert_eq!(HodgePoly::torus(1), h(&[(1, 1, 1), (0, 0, -1)]));
        assert_eq!(
            HodgePoly::torus(3),
            h(&[(3, 3, 1), (2, 2, -3), (1, 1, 3), (0, 0, -1)])
        );
    }

    #[test]
    fn embed_examples() {
        let f = StringyFunction::embed(&HodgePoly::torus(1), 2);
        assert_eq!(f.terms().count(), 1);
        assert_eq!(f.term(0).unwrap(), &RatFun::parse("z^2 - 1", 2).unwrap());

        let g = StringyFunction::embed(&h(&[(2, 1, 1)]), 1);
        assert_eq!(g.term(1).unwrap(), &RatFun::parse("z", 1).unwrap());

        let k = StringyFunction::embed(&h(&[(2, 2, 1)]), 3);
        assert_eq!(k.term(0).unwrap(), &RatFun::parse("z^6", 3).unwrap());
    }

    #[test]
    fn specialize_examples() {
        let torus = StringyFunction::embed(&HodgePoly::torus(1), 1);
        assert_eq!(torus.euler().unwrap(), int(0));

        let p2 = StringyFunction::embed(&h(&[(2, 2, 1), (1, 1, 1), (0, 0, 1)]), 1);
        assert_eq!(p2.betti_top(), RatFun::parse("q^4 + q^2 + 1", 2).unwrap());

        let u = StringyFunction::embed(&h(&[(1, 0, 1)]), 1);
        assert!(u.even_part().is_zero());
        assert_eq!(u.odd_part(), u);
    }

    #[test]
    fn betti_of_off_diagonal_terms() {
        // u + v + uv at r = 2: t + t + t^2 = 2 q^2 + q^4
        let f = StringyFunction::embed(&h(&[(1, 0, 1), (0, 1, 1), (1, 1, 1)]), 2);
        assert_eq!(f.betti_top(), RatFun::parse("q^4 + 2*q^2", 4).unwrap());
        assert!(f.is_hodge_symmetric());
        assert!(!StringyFunction::embed(&h(&[(1, 0, 1)]), 1).is_hodge_symmetric());
    }

    #[test]
    fn hodge_json_shape() {
        let e = h(&[(1, 1, 1), (0, 0, -1)]);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, "[[0,0,-1],[1,1,1]]");
        let back: HodgePoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert_eq!(e.to_string(), "uv - 1");
    }
}
