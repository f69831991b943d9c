use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::invariants::{HodgePoly, StringyFunction};
use crate::linalg;
use crate::stringy::{Divisor, ResolutionDatum, Subset};
use crate::{Integer, Laurent, Rational};
use num_integer::binomial;

use super::lattice::{self, to_rational};
use super::{box_points, triangulate, Fan, Kappa};

/// Tie-breaking rule of the resolution loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// First non-unimodular cone, box point of least κ, ties lexicographic.
    FirstMinimal,
    /// Last non-unimodular cone, box point of largest κ, ties reversed.
    LastMaximal,
}

/// A smooth refinement of a fan. Rays `0..original_rays` are those of the
/// input; later rays are exceptional.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub fan: Fan,
    pub original_rays: usize,
    /// κ of the input fan at every ray, when the input is Q-Gorenstein.
    pub kappa_values: Option<Vec<Rational>>,
    pub index: Option<u64>,
}

impl Resolution {
    pub fn exceptional(&self) -> Vec<usize> {
        (self.original_rays..self.fan.rays().len()).collect()
    }

    /// `κ(v) - 1` for ray `i`.
    pub fn discrepancy(&self, i: usize) -> Result<Rational> {
        let k = self
            .kappa_values
            .as_ref()
            .ok_or_else(|| Error::NotQGorenstein("discrepancies need κ".into()))?;
        Ok(k[i].clone() - Rational::one())
    }

    /// Stellar subdivision at the primitive vector `w`, which must lie in the
    /// support. κ at `w` is read off linearly from a containing cone.
    pub fn subdivide(&self, w: &[i64]) -> Result<Resolution> {
        let (fan, lambdas) = stellar_subdivide(&self.fan, w)?;
        let kappa_values = self.kappa_values.as_ref().map(|k| {
            let (cone, lam) = &lambdas[0];
            let mut k = k.clone();
            let val = self.fan.cones()[*cone]
                .iter()
                .zip(lam)
                .fold(Rational::zero(), |a, (&i, l)| a + l * &k[i]);
            k.push(val);
            k
        });
        Ok(Resolution {
            fan,
            original_rays: self.original_rays,
            kappa_values,
            index: self.index,
        })
    }

    /// Datum with the exceptional rays as divisors.
    pub fn datum(&self) -> Result<ResolutionDatum> {
        self.datum_with(&self.exceptional())
    }

    /// Datum with the given rays as divisors. Non-exceptional rays carry
    /// discrepancy 0.
    pub fn datum_with(&self, divisors: &[usize]) -> Result<ResolutionDatum> {
        let index = self
            .index
            .ok_or_else(|| Error::NotQGorenstein("discrepancies need κ".into()))?;
        let a = divisors
            .iter()
            .map(|&i| self.discrepancy(i))
            .collect::<Result<Vec<_>>>()?;
        toric_strata_datum(&self.fan, divisors, &a, index)
    }

    pub fn stringy_function(&self) -> Result<StringyFunction> {
        self.datum()?.stringy_function()
    }
}

/// Resolve by repeated stellar subdivision at box points.
pub fn resolve(fan: &Fan, strategy: Strategy) -> Result<Resolution> {
    let kappa = Kappa::of(fan).ok();
    let tri = triangulate(fan)?;
    let kappa_values = kappa.as_ref().map(|k| {
        fan.rays()
            .iter()
            .map(|v| k.eval(fan, v).expect("ray lies in the fan"))
            .collect::<Vec<_>>()
    });
    let mut res = Resolution {
        fan: tri.fan,
        original_rays: fan.rays().len(),
        kappa_values,
        index: kappa.as_ref().map(Kappa::index),
    };
    loop {
        let singular: Vec<usize> = (0..res.fan.cones().len())
            .filter(|&c| res.fan.multiplicity(c) != Some(1))
            .collect();
        let cone = match strategy {
            Strategy::FirstMinimal => singular.first(),
            Strategy::LastMaximal => singular.last(),
        };
        let Some(&cone) = cone else {
            break;
        };
        let rays = res.fan.cone_rays(cone);
        let weights: Vec<Rational> = res.fan.cones()[cone]
            .iter()
            .map(|&i| match &res.kappa_values {
                Some(k) => k[i].clone(),
                None => Rational::one(),
            })
            .collect();
        let mut cands: Vec<(Rational, Vec<i64>)> = box_points(&rays)
            .into_iter()
            .filter(|b| b.point.iter().any(|&x| x != 0))
            .map(|b| {
                let level = b.lambda.iter().zip(&weights).fold(Rational::zero(), |a, (l, w)| a + l * w);
                (level, b.point)
            })
            .collect();
        cands.sort();
        let (_, b) = match strategy {
            Strategy::FirstMinimal => cands.first(),
            Strategy::LastMaximal => cands.last(),
        }
        .expect("a singular cone has a nonzero box point");
        res = res.subdivide(&lattice::primitive(b))?;
    }
    if let Some(k) = &res.kappa_values {
        for i in res.original_rays..k.len() {
            if k[i] <= Rational::zero() {
                return Err(Error::Assertion(format!(
                    "exceptional ray {:?} has discrepancy {} <= -1",
                    res.fan.ray(i),
                    &k[i] - Rational::one()
                )));
            }
        }
    }
    Ok(res)
}

/// Stringy functions of one fan from three resolutions: both tie-breaking
/// orders, and the first one blown up once more at the sum of the rays of
/// its first cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceCheck {
    pub first: StringyFunction,
    pub last: StringyFunction,
    pub extra: StringyFunction,
    /// The two tie-breaking orders gave different fans.
    pub fans_differ: bool,
    pub identical: bool,
}

pub fn independence_check(fan: &Fan) -> Result<IndependenceCheck> {
    let a = resolve(fan, Strategy::FirstMinimal)?;
    let b = resolve(fan, Strategy::LastMaximal)?;
    let c = &a.fan.cones()[0];
    let w: Vec<i64> = (0..fan.dim())
        .map(|j| c.iter().map(|&i| a.fan.ray(i)[j]).sum())
        .collect();
    let extra = a.subdivide(&w)?;
    let (first, last, extra_f) = (a.stringy_function()?, b.stringy_function()?, extra.stringy_function()?);
    Ok(IndependenceCheck {
        identical: first == last && first == extra_f,
        fans_differ: a.fan != b.fan,
        first,
        last,
        extra: extra_f,
    })
}

/// Star subdivision of a simplicial fan at primitive `w`: each cone
/// containing `w` is replaced by the cones obtained by swapping `w` for a
/// ray with positive coefficient. Returns the new fan and, for every cone of
/// the old fan containing `w`, its index and the coefficients of `w`.
pub fn stellar_subdivide(fan: &Fan, w: &[i64]) -> Result<(Fan, Vec<(usize, Vec<Rational>)>)> {
    if !fan.is_simplicial() {
        return Err(Error::NotSimplicial("stellar subdivision needs a simplicial fan".into()));
    }
    if !lattice::is_primitive(w) || fan.ray_index(w).is_some() {
        return Err(Error::InvalidDatum(format!("{w:?} is not a new primitive vector")));
    }
    let new = fan.rays().len();
    let mut cones = Vec::new();
    let mut hits = Vec::new();
    for (c, cone) in fan.cones().iter().enumerate() {
        let cols: Vec<Vec<Rational>> = (0..fan.dim())
            .map(|j| cone.iter().map(|&i| Rational::from_integer(fan.ray(i)[j].into())).collect())
            .collect();
        let lam = linalg::solve(&cols, &to_rational(w)).expect("simplicial cone spans");
        if lam.iter().any(|l| l.is_negative()) {
            cones.push(cone.clone());
            continue;
        }
        for (pos, l) in lam.iter().enumerate() {
            if l.is_positive() {
                let mut s = cone.clone();
                s[pos] = new;
                cones.push(s);
            }
        }
        hits.push((c, lam));
    }
    if hits.is_empty() {
        return Err(Error::OutsideSupport(format!("{w:?}")));
    }
    let mut rays = fan.rays().to_vec();
    rays.push(w.to_vec());
    Ok((Fan::new(fan.dim(), rays, cones)?, hits))
}

/// Strata of the smooth toric variety of `fan` with boundary divisors
/// `divisors` (ray indices): `E(O_τ) = (uv - 1)^(d - dim τ)` summed over
/// orbit closures.
pub fn toric_strata_datum(
    fan: &Fan,
    divisors: &[usize],
    discrepancies: &[Rational],
    index: u64,
) -> Result<ResolutionDatum> {
    if !fan.is_smooth() {
        return Err(Error::NotSimplicial("strata need a smooth fan".into()));
    }
    let d = fan.dim() as u32;
    let faces: BTreeSet<Vec<usize>> = fan.faces().into_iter().collect();
    let pos: BTreeMap<usize, usize> = divisors.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut closed: BTreeMap<Subset, HodgePoly> = BTreeMap::new();
    for face in &faces {
        if face.iter().all(|i| pos.contains_key(i)) {
            let j = Subset::new(face.iter().map(|i| pos[i]).collect());
            let e = faces
                .iter()
                .filter(|t| face.iter().all(|i| t.contains(i)))
                .fold(HodgePoly::zero(), |acc, t| &acc + &HodgePoly::torus(d - t.len() as u32));
            closed.insert(j, e);
        }
    }
    // minimal subsets of the divisors that are not faces
    let mut empty = BTreeSet::new();
    for j in closed.keys() {
        for k in 0..divisors.len() {
            if j.contains(k) {
                continue;
            }
            let up = j.with(k);
            if closed.contains_key(&up) {
                continue;
            }
            if up.indices().iter().all(|&i| closed.contains_key(&up.without(i))) {
                empty.insert(up);
            }
        }
    }
    let divs = divisors
        .iter()
        .zip(discrepancies)
        .map(|(&i, a)| Divisor::new(format!("D{i}"), a.clone()))
        .collect();
    // algebraic Betti polynomials of the same orbit closures: (t^2 - 1)^k
    // for each torus orbit of dimension k
    let torus_b = |k: usize| {
        Laurent::from_terms((0..=k).map(|j| {
            let c = binomial(Integer::from(k), Integer::from(j));
            let c = if (k - j) % 2 == 1 { -c } else { c };
            (2 * j as i64, Rational::from_integer(c))
        }))
    };
    let b_alg: BTreeMap<Subset, Laurent> = closed
        .keys()
        .map(|j| {
            let face: Vec<usize> = j.indices().iter().map(|&k| divisors[k]).collect();
            let b = faces
                .iter()
                .filter(|t| face.iter().all(|i| t.contains(i)))
                .fold(Laurent::zero(), |acc, t| &acc + &torus_b(fan.dim() - t.len()));
            (j.clone(), b)
        })
        .collect();
    ResolutionDatum::new(index, divs, closed.into_iter().collect(), empty.into_iter().collect(), true)?
        .with_b_alg(b_alg)
}
