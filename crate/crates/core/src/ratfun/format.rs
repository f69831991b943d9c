//! Text form: `(q^6 - 1)/(q^4 - 1)`, exponents descending.

use std::fmt;
use std::str::FromStr;

use super::{LaurentPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub(crate) fn write_terms<'a, T: Scalar, I>(f: &mut impl fmt::Write, terms: I, var: &str) -> fmt::Result
where
    I: DoubleEndedIterator<Item = (i64, &'a T)>,
{
    let mut first = true;
    for (e, c) in terms.rev() {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let a = c.abs();
        if e == 0 {
            write!(f, "{a}")?;
            continue;
        }
        if !a.is_one() {
            write!(f, "{a}*")?;
        }
        if e == 1 {
            f.write_str(var)?;
        } else {
            write!(f, "{var}^{e}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl<T: Scalar> LaurentPoly<T> {
    pub fn render(&self, var: &str) -> String {
        let mut s = String::new();
        write_terms(&mut s, self.terms(), var).unwrap();
        s
    }
}

impl<T: Scalar> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl<T: Scalar> RationalFunction<T> {
    pub fn render(&self, var: &str) -> String {
        let num = self.num.render(var);
        if self.den.is_one() {
            return num;
        }
        let den = LaurentPoly::from_poly(self.den.clone()).render(var);
        format!("({num})/({den})")
    }
}

impl<T: Scalar> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl<T: Scalar + FromStr> RationalFunction<T> {
    /// Parse the text form at the given grounding scale. Any single-letter
    /// variable name is accepted. Input need not be reduced.
    pub fn parse(s: &str, scale: u64) -> Result<Self> {
        let mut p = Parser::new(s);
        let out = p.ratfun(scale)?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(out)
    }
}

impl<T: Scalar + FromStr> FromStr for RationalFunction<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, 1)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Option<u8>,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
            var: None,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ratfun<T: Scalar + FromStr>(&mut self, scale: u64) -> Result<RationalFunction<T>> {
        let num = self.group()?;
        let den = if self.eat(b'/') {
            self.group()?
        } else {
            LaurentPoly::one()
        };
        RationalFunction::new(num, den, scale)
    }

    fn group<T: Scalar + FromStr>(&mut self) -> Result<LaurentPoly<T>> {
        if self.eat(b'(') {
            let p = self.sum()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(p)
        } else {
            self.sum()
        }
    }

    fn sum<T: Scalar + FromStr>(&mut self) -> Result<LaurentPoly<T>> {
        let mut terms = Vec::new();
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let (e, c) = self.term::<T>()?;
            terms.push((e, if neg { -c } else { c }));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(LaurentPoly::from_terms(terms))
    }

    fn term<T: Scalar + FromStr>(&mut self) -> Result<(i64, T)> {
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => Some(self.number::<T>()?),
            _ => None,
        };
        if coeff.is_some() {
            self.eat(b'*');
        }
        let exp = match self.peek() {
            Some(b) if b.is_ascii_alphabetic() => {
                match self.var {
                    None => self.var = Some(b),
                    Some(v) if v != b => return Err(self.err("mixed variable names")),
                    _ => {}
                }
                self.pos += 1;
                if self.eat(b'^') {
                    self.integer()?
                } else {
                    1
                }
            }
            _ if coeff.is_some() => 0,
            _ => return Err(self.err("expected a term")),
        };
        Ok((exp, coeff.unwrap_or_else(T::one)))
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn number<T: Scalar + FromStr>(&mut self) -> Result<T> {
        self.skip_ws();
        let start = self.pos;
        self.digits();
        // a '/' directly followed by a digit belongs to the coefficient
        if self.src.get(self.pos) == Some(&b'/')
            && self.src.get(self.pos + 1).is_some_and(|b| b.is_ascii_digit())
        {
            self.pos += 1;
            self.digits();
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<T>().map_err(|_| self.err("bad coefficient"))
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        self.skip_ws();
        let d = self.digits();
        let v: i64 = d.parse().map_err(|_| self.err("bad exponent"))?;
        Ok(if neg { -v } else { v })
    }
}
