use num_integer::Integer as _;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg;
use crate::Rational;

use super::lattice::to_rational;
use super::Fan;

/// The piecewise linear function κ: one linear form `m_σ` per maximal cone
/// with `<m_σ, v> = 1` on the cone's rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Kappa {
    forms: Vec<Vec<Rational>>,
    index: u64,
}

impl Kappa {
    pub fn of(fan: &Fan) -> Result<Self> {
        let mut forms = Vec::with_capacity(fan.cones().len());
        let mut l = crate::Integer::one();
        for (c, cone) in fan.cones().iter().enumerate() {
            let rows: Vec<Vec<Rational>> = cone.iter().map(|&i| to_rational(fan.ray(i))).collect();
            let ones = vec![Rational::one(); rows.len()];
            let m = linalg::solve(&rows, &ones).ok_or_else(|| {
                Error::NotQGorenstein(format!("rays of cone {:?} are not on a hyperplane", fan.cones()[c]))
            })?;
            for x in &m {
                l = l.lcm(x.denom());
            }
            forms.push(m);
        }
        let index = l
            .to_u64()
            .ok_or_else(|| Error::NotQGorenstein("index overflows u64".into()))?;
        Ok(Kappa { forms, index })
    }

    pub fn form(&self, cone: usize) -> &[Rational] {
        &self.forms[cone]
    }

    pub fn forms(&self) -> &[Vec<Rational>] {
        &self.forms
    }

    /// The Gorenstein index `r`.
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn eval_in(&self, cone: usize, v: &[i64]) -> Rational {
        linalg::dot(&self.forms[cone], &to_rational(v))
    }

    pub fn eval(&self, fan: &Fan, v: &[i64]) -> Result<Rational> {
        let c = fan
            .locate(v)
            .ok_or_else(|| Error::OutsideSupport(format!("{v:?}")))?;
        Ok(self.eval_in(c, v))
    }
}

/// `κ(v) - 1`.
pub fn discrepancy_of(fan: &Fan, kappa: &Kappa, v: &[i64]) -> Result<Rational> {
    Ok(kappa.eval(fan, v)? - Rational::one())
}
