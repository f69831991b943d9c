//! Stringy invariants assembled from abstract resolution data.
//!
//! A [`ResolutionDatum`] records a log-desingularization only through what
//! the stringy formulas consume: the discrepancy of each divisor and the
//! E-polynomial of every nonempty closed stratum `D_J`. Open strata
//! `D_J° = D_J \ ∪_{i∉J} D_i` are always derived by Möbius inversion.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::invariants::{HodgePoly, StringyFunction};
use crate::{Laurent, RatFun, Rational};

/// Sorted set of divisor indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    pub fn new(mut items: Vec<usize>) -> Self {
        items.sort_unstable();
        items.dedup();
        Subset(items)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn with(&self, i: usize) -> Subset {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&i) {
            v.insert(pos, i);
        }
        Subset(v)
    }

    pub fn without(&self, i: usize) -> Subset {
        Subset(self.0.iter().copied().filter(|&j| j != i).collect())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub name: String,
    /// Discrepancy `a_i`; for a boundary component this is minus its
    /// multiplicity in the boundary divisor.
    pub discrepancy: Rational,
    pub boundary: bool,
}

impl Divisor {
    pub fn new(name: impl Into<String>, discrepancy: Rational) -> Self {
        Divisor {
            name: name.into(),
            discrepancy,
            boundary: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionDatum {
    index: u64,
    divisors: Vec<Divisor>,
    strata: BTreeMap<Subset, HodgePoly>,
    b_alg: Option<BTreeMap<Subset, Laurent>>,
    empty: Vec<Subset>,
    orbit_nonnegative: bool,
}

impl ResolutionDatum {
    /// Validates the datum. `strata` holds `E(D_J)` for the nonempty closed
    /// strata (the empty set standing for `Y`); `empty` lists subsets with
    /// `D_J = ∅`, supersets being implied.
    pub fn new(
        index: u64,
        divisors: Vec<Divisor>,
        strata: Vec<(Subset, HodgePoly)>,
        empty: Vec<Subset>,
        orbit_nonnegative: bool,
    ) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidDatum("index r must be positive".into()));
        }
        let r = Rational::from_integer(index.into());
        for (i, d) in divisors.iter().enumerate() {
            if !(d.discrepancy.clone() * &r).is_integer() {
                return Err(Error::InvalidDatum(format!(
                    "discrepancy {} of {} is not in (1/{index})Z",
                    d.discrepancy, d.name
                )));
            }
            if divisors[..i].iter().any(|o| o.name == d.name) {
                return Err(Error::InvalidDatum(format!("duplicate divisor {}", d.name)));
            }
        }
        let k = divisors.len();
        let covered = |j: &Subset| empty.iter().any(|e| e.is_subset_of(j));
        for e in &empty {
            if e.is_empty() {
                return Err(Error::InvalidDatum("Y itself declared empty".into()));
            }
        }
        let mut map = BTreeMap::new();
        for (j, e) in strata {
            if j.indices().iter().any(|&i| i >= k) {
                return Err(Error::InvalidDatum(format!("stratum {j} names an unknown divisor")));
            }
            if covered(&j) {
                if !e.is_zero() {
                    return Err(Error::InconsistentStrata(format!(
                        "stratum {j} is declared empty but has E = {e}"
                    )));
                }
                continue;
            }
            if map.insert(j.clone(), e).is_some() {
                return Err(Error::InvalidDatum(format!("stratum {j} given twice")));
            }
        }
        if !map.contains_key(&Subset::empty()) {
            return Err(Error::MissingStratum("{} (the resolution Y)".into()));
        }
        // every nonempty set is reached from ∅ by adding one index at a time
        for j in map.keys() {
            for i in (0..k).filter(|&i| !j.contains(i)) {
                let up = j.with(i);
                if !map.contains_key(&up) && !covered(&up) {
                    return Err(Error::MissingStratum(format!(
                        "{up} is neither given nor declared empty"
                    )));
                }
            }
        }
        Ok(ResolutionDatum {
            index,
            divisors,
            strata: map,
            b_alg: None,
            empty,
            orbit_nonnegative,
        })
    }

    /// Attach algebraic Betti polynomials `B_alg(D_J; t)` for every nonempty
    /// stratum.
    pub fn with_b_alg(mut self, b_alg: BTreeMap<Subset, Laurent>) -> Result<Self> {
        for j in self.strata.keys() {
            if !b_alg.contains_key(j) {
                return Err(Error::MissingStratum(format!("B_alg for {j}")));
            }
        }
        self.b_alg = Some(
            b_alg
                .into_iter()
                .filter(|(j, _)| self.strata.contains_key(j))
                .collect(),
        );
        Ok(self)
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    pub fn discrepancies(&self) -> Vec<Rational> {
        self.divisors.iter().map(|d| d.discrepancy.clone()).collect()
    }

    pub fn closed_strata(&self) -> &BTreeMap<Subset, HodgePoly> {
        &self.strata
    }

    pub fn b_alg(&self) -> Option<&BTreeMap<Subset, Laurent>> {
        self.b_alg.as_ref()
    }

    pub fn empty_flags(&self) -> &[Subset] {
        &self.empty
    }

    pub fn orbit_nonnegative(&self) -> bool {
        self.orbit_nonnegative
    }

    pub fn divisor_index(&self, name: &str) -> Option<usize> {
        self.divisors.iter().position(|d| d.name == name)
    }

    /// Same strata with a different discrepancy vector.
    pub fn with_discrepancies(&self, a: &[Rational]) -> Result<Self> {
        if a.len() != self.divisors.len() {
            return Err(Error::InvalidDatum(format!(
                "expected {} discrepancies, got {}",
                self.divisors.len(),
                a.len()
            )));
        }
        let mut out = self.clone();
        for (d, x) in out.divisors.iter_mut().zip(a) {
            d.discrepancy = x.clone();
        }
        Ok(out)
    }

    pub fn check_log_terminal(&self) -> Result<()> {
        check_log_terminal(&self.discrepancies())
    }

    /// `D_J° = D_J` iff no nonempty stratum strictly contains `J`.
    pub fn is_closed_open(&self, j: &Subset) -> bool {
        (0..self.divisors.len())
            .filter(|&i| !j.contains(i))
            .all(|i| !self.strata.contains_key(&j.with(i)))
    }

    /// `E(D_J°) = Σ_{J ⊆ J'} (-1)^{|J'| - |J|} E(D_J')`.
    pub fn open_strata(&self) -> BTreeMap<Subset, HodgePoly> {
        mobius_open(&self.strata, |a, b| a + b, |a, b| a - b)
    }

    /// Both displayed forms of the stringy E-function, open-stratum first.
    pub fn stringy_function_forms(&self) -> Result<(StringyFunction, StringyFunction)> {
        self.check_log_terminal()?;
        let r = self.index;
        let factors: Vec<RatFun> = self
            .divisors
            .iter()
            .map(|d| RatFun::stringy_factor(&d.discrepancy, r, r))
            .collect::<Result<_>>()?;
        let shifted: Vec<RatFun> = factors.iter().map(|f| f - &RatFun::one(r)).collect();
        let open_products = subset_products(self.strata.keys(), &factors, r);
        let closed_products = subset_products(self.strata.keys(), &shifted, r);

        let mut open_form = StringyFunction::zero(r);
        for (j, e) in self.open_strata() {
            let term = StringyFunction::embed(&e, r).scale_by(&open_products[&j]);
            open_form = open_form.checked_add(&term)?;
        }
        let mut closed_form = StringyFunction::zero(r);
        for (j, e) in &self.strata {
            let term = StringyFunction::embed(e, r).scale_by(&closed_products[j]);
            closed_form = closed_form.checked_add(&term)?;
        }
        Ok((open_form, closed_form))
    }

    /// Stringy E-function; the two assemblies are computed and compared.
    pub fn stringy_function(&self) -> Result<StringyFunction> {
        let (open_form, closed_form) = self.stringy_function_forms()?;
        if open_form != closed_form {
            return Err(Error::FormMismatch);
        }
        Ok(open_form)
    }

    /// Algebraic stringy Betti function in `q = t^(1/r)`. Without explicit
    /// `B_alg` tables the strata are taken to satisfy `B_alg = B_top` and the
    /// topological function is returned; the flag reports which case applied.
    pub fn stringy_betti_alg(&self) -> Result<(RatFun, bool)> {
        let Some(b_alg) = &self.b_alg else {
            return Ok((self.stringy_function()?.betti_top(), true));
        };
        self.check_log_terminal()?;
        let r = self.index;
        let s = 2 * r;
        let shifted: Vec<RatFun> = self
            .divisors
            .iter()
            .map(|d| Ok(&RatFun::stringy_factor(&d.discrepancy, r, s)? - &RatFun::one(s)))
            .collect::<Result<_>>()?;
        let products = subset_products(b_alg.keys(), &shifted, s);
        let mut acc = RatFun::zero(s);
        for (j, b) in b_alg {
            // B is a polynomial in t = q^r
            let bq = RatFun::from_laurent(b.compose_power(r), s);
            acc = &acc + &(&bq * &products[j]);
        }
        Ok((acc, false))
    }

    /// Stringy Euler number from the finite open-stratum sum
    /// `Σ_J e(D_J°) Π_{j∈J} 1/(a_j + 1)`, checked against the closed form
    /// `Σ_J e(D_J) Π_{j∈J} (-a_j/(a_j + 1))`.
    pub fn stringy_euler(&self) -> Result<Rational> {
        let (open_sum, closed_sum) = self.stringy_euler_forms()?;
        if open_sum != closed_sum {
            return Err(Error::FormMismatch);
        }
        Ok(open_sum)
    }

    pub fn stringy_euler_forms(&self) -> Result<(Rational, Rational)> {
        let a = self.discrepancies();
        let open_sum = self.euler_with(&a)?;
        let mut closed_sum = Rational::zero();
        for (j, e) in &self.strata {
            let mut term = Rational::from_integer(e.euler());
            for &i in j.indices() {
                let ai = &a[i];
                term = term * (-ai.clone() / (ai + Rational::one()));
            }
            closed_sum += term;
        }
        Ok((open_sum, closed_sum))
    }

    /// Open-stratum Euler sum for an arbitrary discrepancy vector on the same
    /// strata.
    pub fn euler_with(&self, a: &[Rational]) -> Result<Rational> {
        check_log_terminal(a)?;
        let opens = self.open_euler();
        Ok(opens.iter().fold(Rational::zero(), |acc, (j, e)| {
            let mut term = Rational::from_integer(e.clone());
            for &i in j.indices() {
                term = term / (a[i].clone() + Rational::one());
            }
            acc + term
        }))
    }

    /// Euler numbers `e(D_J°)`.
    pub fn open_euler(&self) -> BTreeMap<Subset, crate::Integer> {
        let closed: BTreeMap<Subset, crate::Integer> =
            self.strata.iter().map(|(j, e)| (j.clone(), e.euler())).collect();
        mobius_open(&closed, |a, b| a + b, |a, b| a - b)
    }

    /// Positivity of the stringy Euler number, and the stronger bound
    /// `e >= dim + 1`.
    pub fn check_positivity(&self, dim: u32) -> Result<PositivityReport> {
        let value = self.stringy_euler()?;
        let opens = self.open_euler();
        let witness = opens
            .iter()
            .find(|(j, e)| e.is_positive() && self.is_closed_open(j))
            .map(|(j, _)| j.clone());
        Ok(PositivityReport {
            positive: value.is_positive(),
            meets_strong_bound: value >= Rational::from_integer((dim + 1).into()),
            dim,
            value,
            strict_witness: witness,
        })
    }

    /// Compare `e^str` for discrepancies `a` against `a_plus` on the same
    /// strata, with `a <= a_plus` componentwise and strict somewhere.
    pub fn compare_monotone(&self, a: &[Rational], a_plus: &[Rational]) -> Result<MonotoneVerdict> {
        let k = self.divisors.len();
        if a.len() != k || a_plus.len() != k {
            return Err(Error::InvalidDatum(format!("discrepancy vectors must have length {k}")));
        }
        let opens = self.open_euler();
        if self.orbit_nonnegative {
            if let Some((j, e)) = opens.iter().find(|(_, e)| e.is_negative()) {
                return Err(Error::HypothesisViolated(format!(
                    "e(D_{j}°) = {e} < 0 although strata are unions of finitely many orbits"
                )));
            }
        }
        let left = self.euler_with(a)?;
        let right = self.euler_with(a_plus)?;
        let mut verdict = MonotoneVerdict {
            holds: false,
            left: left.clone(),
            right: right.clone(),
            strict_index: None,
            certificate: None,
            diagnostic: None,
        };
        if let Some(i) = (0..k).find(|&i| a[i] > a_plus[i]) {
            verdict.diagnostic = Some(format!("a_{i} = {} exceeds {}", a[i], a_plus[i]));
            return Ok(verdict);
        }
        let strict: Vec<usize> = (0..k).filter(|&i| a[i] < a_plus[i]).collect();
        if strict.is_empty() {
            verdict.diagnostic = Some("no index with a_j < a+_j".into());
            return Ok(verdict);
        }
        if !self.orbit_nonnegative {
            verdict.diagnostic = Some("open strata are not asserted to be finite orbit unions".into());
            return Ok(verdict);
        }
        let hits = |j: &Subset| strict.iter().any(|&i| j.contains(i));
        let cert = opens
            .iter()
            .find(|(j, e)| e.is_positive() && hits(j) && self.is_closed_open(j))
            .or_else(|| opens.iter().find(|(j, e)| e.is_positive() && hits(j)));
        match cert {
            Some((j, _)) => {
                verdict.strict_index = strict.iter().copied().find(|&i| j.contains(i));
                verdict.certificate = Some(j.clone());
                if left <= right {
                    return Err(Error::Assertion(format!(
                        "certificate {j} found but {left} <= {right}"
                    )));
                }
                verdict.holds = true;
            }
            None => {
                verdict.diagnostic =
                    Some("no stratum with positive Euler number meets a strict index".into());
            }
        }
        Ok(verdict)
    }
}

/// Resolution datum of a pair `(X, Δ)`: boundary components carry
/// discrepancy `-mult_Δ(D_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDatum {
    datum: ResolutionDatum,
}

impl PairDatum {
    /// Marks the named divisors as boundary components with the given
    /// multiplicities. Kawamata log-terminality needs every multiplicity
    /// below 1.
    pub fn new(mut datum: ResolutionDatum, boundary: &[(&str, Rational)]) -> Result<Self> {
        for (name, mult) in boundary {
            let i = datum
                .divisor_index(name)
                .ok_or_else(|| Error::InvalidDatum(format!("unknown boundary divisor {name}")))?;
            let d = &mut datum.divisors[i];
            d.discrepancy = -mult.clone();
            d.boundary = true;
        }
        let datum = ResolutionDatum::new(
            datum.index,
            datum.divisors,
            datum.strata.into_iter().collect(),
            datum.empty,
            datum.orbit_nonnegative,
        )?;
        let pair = PairDatum { datum };
        pair.check_klt()?;
        Ok(pair)
    }

    pub fn from_datum(datum: ResolutionDatum) -> Result<Self> {
        let pair = PairDatum { datum };
        pair.check_klt()?;
        Ok(pair)
    }

    pub fn check_klt(&self) -> Result<()> {
        self.datum.check_log_terminal()
    }

    pub fn datum(&self) -> &ResolutionDatum {
        &self.datum
    }

    pub fn stringy_euler(&self) -> Result<Rational> {
        self.datum.stringy_euler()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositivityReport {
    pub value: Rational,
    pub positive: bool,
    pub meets_strong_bound: bool,
    pub dim: u32,
    /// A stratum with `D_J° = D_J` and positive Euler number, when one exists.
    pub strict_witness: Option<Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneVerdict {
    pub holds: bool,
    pub left: Rational,
    pub right: Rational,
    pub strict_index: Option<usize>,
    /// Stratum `J` containing a strict index with `e(D_J°) > 0`.
    pub certificate: Option<Subset>,
    pub diagnostic: Option<String>,
}

pub fn check_log_terminal(a: &[Rational]) -> Result<()> {
    match a.iter().find(|x| **x <= -Rational::one()) {
        Some(x) => Err(Error::NotLogTerminal(x.to_string())),
        None => Ok(()),
    }
}

/// Möbius inversion over supersets within a downward-closed family.
fn mobius_open<V: Clone>(
    closed: &BTreeMap<Subset, V>,
    add: impl Fn(&V, &V) -> V,
    sub: impl Fn(&V, &V) -> V,
) -> BTreeMap<Subset, V> {
    // Process by decreasing size: open(J) = closed(J) - Σ_{J ⊊ J'} open(J').
    let mut keys: Vec<&Subset> = closed.keys().collect();
    keys.sort_by_key(|j| std::cmp::Reverse(j.len()));
    let mut open: BTreeMap<Subset, V> = BTreeMap::new();
    for j in keys {
        let mut acc: Option<V> = None;
        for (jj, v) in &open {
            if jj.len() > j.len() && j.is_subset_of(jj) {
                acc = Some(match acc {
                    None => v.clone(),
                    Some(a) => add(&a, v),
                });
            }
        }
        let val = match acc {
            None => closed[j].clone(),
            Some(a) => sub(&closed[j], &a),
        };
        open.insert(j.clone(), val);
    }
    open
}

/// `Π_{j∈J} f_j` for each listed `J`, reusing the product for `J` minus its
/// largest element.
fn subset_products<'a>(
    keys: impl Iterator<Item = &'a Subset>,
    factors: &[RatFun],
    scale: u64,
) -> BTreeMap<Subset, RatFun> {
    let mut out: BTreeMap<Subset, RatFun> = BTreeMap::new();
    for j in keys {
        let value = match j.indices().last() {
            None => RatFun::one(scale),
            Some(&m) => {
                let rest = j.without(m);
                let base = match out.get(&rest) {
                    Some(b) => b.clone(),
                    None => rest
                        .indices()
                        .iter()
                        .fold(RatFun::one(scale), |acc, &i| &acc * &factors[i]),
                };
                &base * &factors[m]
            }
        };
        out.insert(j.clone(), value);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Integer;

    fn uv(coeffs: &[i64]) -> HodgePoly {
        HodgePoly::from_uv_coeffs(&coeffs.iter().map(|&c| Integer::from(c)).collect::<Vec<_>>())
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn s(v: &[usize]) -> Subset {
        Subset::new(v.to_vec())
    }

    fn p1_with_point(a: Rational, r: u64) -> ResolutionDatum {
        ResolutionDatum::new(
            r,
            vec![Divisor::new("p", a)],
            vec![(s(&[]), uv(&[1, 1])), (s(&[0]), uv(&[1]))],
            vec![],
            true,
        )
        .unwrap()
    }

    #[test]
    fn open_strata_examples() {
        let d = ResolutionDatum::new(1, vec![], vec![(s(&[]), uv(&[1, 1]))], vec![], true).unwrap();
        assert_eq!(d.open_strata()[&s(&[])], uv(&[1, 1]));

        let d = p1_with_point(rat(0, 1), 1);
        let o = d.open_strata();
        assert_eq!(o[&s(&[])], uv(&[0, 1]));
        assert_eq!(o[&s(&[0])], uv(&[1]));

        // P1 x P1 with one fibre of each ruling
        let d = ResolutionDatum::new(
            1,
            vec![Divisor::new("D1", rat(0, 1)), Divisor::new("D2", rat(0, 1))],
            vec![
                (s(&[]), uv(&[1, 2, 1])),
                (s(&[0]), uv(&[1, 1])),
                (s(&[1]), uv(&[1, 1])),
                (s(&[0, 1]), uv(&[1])),
            ],
            vec![],
            true,
        )
        .unwrap();
        let o = d.open_strata();
        assert_eq!(o[&s(&[0, 1])], uv(&[1]));
        assert_eq!(o[&s(&[0])], uv(&[0, 1]));
        assert_eq!(o[&s(&[1])], uv(&[0, 1]));
        assert_eq!(o[&s(&[])], uv(&[0, 0, 1]));
    }

    #[test]
    fn validation_errors() {
        let missing = ResolutionDatum::new(
            1,
            vec![Divisor::new("D", rat(0, 1))],
            vec![(s(&[]), uv(&[1]))],
            vec![],
            true,
        );
        assert!(matches!(missing, Err(Error::MissingStratum(_))));

        let inconsistent = ResolutionDatum::new(
            1,
            vec![Divisor::new("D", rat(0, 1))],
            vec![(s(&[]), uv(&[1])), (s(&[0]), uv(&[1]))],
            vec![s(&[0])],
            true,
        );
        assert!(matches!(inconsistent, Err(Error::InconsistentStrata(_))));

        let bad_index = ResolutionDatum::new(
            2,
            vec![Divisor::new("D", rat(1, 3))],
            vec![(s(&[]), uv(&[1])), (s(&[0]), uv(&[1]))],
            vec![],
            true,
        );
        assert!(matches!(bad_index, Err(Error::InvalidDatum(_))));
    }

    #[test]
    fn no_divisors_gives_embedding() {
        let e = uv(&[1, 1, 1]);
        let d = ResolutionDatum::new(1, vec![], vec![(s(&[]), e.clone())], vec![], true).unwrap();
        assert_eq!(d.stringy_function().unwrap(), StringyFunction::embed(&e, 1));
        assert_eq!(d.stringy_euler().unwrap(), rat(3, 1));
    }

    #[test]
    fn zero_discrepancies_are_transparent() {
        let d = p1_with_point(rat(0, 1), 1);
        assert_eq!(
            d.stringy_function().unwrap(),
            StringyFunction::embed(&uv(&[1, 1]), 1)
        );
    }

    #[test]
    fn kawamata_pair_euler() {
        let d = p1_with_point(rat(0, 1), 2);
        let pair = PairDatum::new(d.clone(), &[("p", rat(1, 2))]).unwrap();
        assert_eq!(pair.stringy_euler().unwrap(), rat(3, 1));
        assert!(matches!(
            PairDatum::new(d, &[("p", rat(1, 1))]),
            Err(Error::NotLogTerminal(_))
        ));
    }

    #[test]
    fn positivity_near_the_klt_boundary() {
        let d = p1_with_point(rat(-9, 10), 10);
        let rep = d.check_positivity(1).unwrap();
        assert_eq!(rep.value, rat(11, 1));
        assert!(rep.positive && rep.meets_strong_bound);
        assert_eq!(rep.strict_witness, Some(s(&[0])));
    }

    #[test]
    fn monotone_toy_example() {
        // e(Y \ D) = 3, e(D) = 2
        let d = ResolutionDatum::new(
            1,
            vec![Divisor::new("D", rat(0, 1))],
            vec![(s(&[]), uv(&[5])), (s(&[0]), uv(&[2]))],
            vec![],
            true,
        )
        .unwrap();
        let v = d.compare_monotone(&[rat(0, 1)], &[rat(1, 1)]).unwrap();
        assert!(v.holds);
        assert_eq!((v.left, v.right), (rat(5, 1), rat(4, 1)));
        assert_eq!(v.certificate, Some(s(&[0])));

        let same = d.compare_monotone(&[rat(0, 1)], &[rat(0, 1)]).unwrap();
        assert!(!same.holds);
        assert_eq!(same.left, same.right);
    }

    #[test]
    fn negative_open_stratum_violates_orbit_hypothesis() {
        let d = ResolutionDatum::new(
            1,
            vec![Divisor::new("D", rat(0, 1))],
            vec![(s(&[]), uv(&[1])), (s(&[0]), uv(&[2]))],
            vec![],
            true,
        )
        .unwrap();
        assert!(matches!(
            d.compare_monotone(&[rat(0, 1)], &[rat(1, 1)]),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn b_alg_tables_are_used_when_present() {
        let d = p1_with_point(rat(0, 1), 1);
        let (f, passthrough) = d.stringy_betti_alg().unwrap();
        assert!(passthrough);
        assert_eq!(f, RatFun::parse("q^2 + 1", 2).unwrap());

        let mut tables = BTreeMap::new();
        tables.insert(s(&[]), Laurent::from_terms([(0, rat(1, 1)), (2, rat(1, 1))]));
        tables.insert(s(&[0]), Laurent::one());
        let (g, passthrough) = d.with_b_alg(tables).unwrap().stringy_betti_alg().unwrap();
        assert!(!passthrough);
        assert_eq!(g, f);
    }
}
