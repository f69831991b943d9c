use std::collections::{BTreeMap, BTreeSet};

use num_integer::binomial;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::{Integer, Laurent, RatFun, Rational};

use super::lattice::{self, to_rational};
use super::{box_points, triangulate, Fan, Kappa, Triangulation};

/// Triangulate and check that κ of the triangulation agrees with κ of the
/// original fan (it must: no rays are added and κ is linear on each
/// original cone).
fn checked_triangulation(fan: &Fan, kappa: &Kappa) -> Result<Triangulation> {
    let tri = triangulate(fan)?;
    let tk = Kappa::of(&tri.fan)?;
    for (c, cone) in tri.fan.cones().iter().enumerate() {
        let bary: Vec<i64> = (0..fan.dim())
            .map(|j| cone.iter().map(|&i| fan.ray(i)[j]).sum())
            .collect();
        let v = to_rational(&bary);
        if linalg::dot(tk.form(c), &v) != linalg::dot(kappa.form(tri.parent[c]), &v) {
            return Err(Error::Assertion(format!("κ changed on triangulated cone {cone:?}")));
        }
    }
    Ok(tri)
}

/// Stringy Betti function `(t^2 - 1)^d Σ_{n ∈ |Σ| ∩ N} t^(-2κ(n))`, in
/// `q = t^(1/r)` (grounding scale `2r`).
///
/// Each point lies in the relative interior of exactly one cone `τ` of a
/// triangulation, as `b + Σ m_i v_i` with `b` a box point of `τ`, `m_i >= 0`
/// and `m_i >= 1` where `λ_i(b) = 0`. With `x = t^-2` the sum over `τ°` is
/// `x^κ(b) x^z / (1 - x)^dim τ`, so every term of the total is the Laurent
/// polynomial `x^(κ(b) + z - d) (1 - x)^(d - dim τ)`.
pub fn stringy_betti_lattice_sum(fan: &Fan) -> Result<RatFun> {
    let kappa = Kappa::of(fan)?;
    let r = kappa.index() as i64;
    let tri = checked_triangulation(fan, &kappa)?;
    let d = fan.dim();
    let mut coeffs: BTreeMap<i64, Integer> = BTreeMap::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cone in tri.fan.cones() {
        let rays: Vec<Vec<i64>> = cone.iter().map(|&i| fan.ray(i).to_vec()).collect();
        let boxes = box_points(&rays);
        for mask in 0u32..(1 << d) {
            let face: Vec<usize> = (0..d).filter(|k| mask >> k & 1 == 1).collect();
            let key: Vec<usize> = face.iter().map(|&k| cone[k]).collect();
            if !seen.insert(key) {
                continue;
            }
            for b in &boxes {
                let supp = b.support();
                if !supp.iter().all(|k| face.contains(k)) {
                    continue;
                }
                let z = (face.len() - supp.len()) as i64;
                // exponent of x, times r
                let e = b.level() * Rational::from_integer((r).into()) + Rational::from_integer(((z - d as i64) * r).into());
                debug_assert!(e.is_integer());
                let e = i64::try_from(e.to_integer()).expect("exponent fits");
                let m = d - face.len();
                for j in 0..=m {
                    let c = binomial(Integer::from(m), Integer::from(j));
                    let c = if j % 2 == 1 { -c } else { c };
                    // x^(e/r + j) = q^(-2(e + j r))
                    let qexp = -2 * (e + j as i64 * r);
                    *coeffs.entry(qexp).or_insert_with(Integer::zero) += c;
                }
            }
        }
    }
    let poly = Laurent::from_terms(coeffs.into_iter().map(|(e, c)| (e, Rational::from_integer(c))));
    if fan.is_complete() {
        if let Some((e, c)) = poly.terms().find(|(_, c)| c.is_negative()) {
            return Err(Error::Assertion(format!("coefficient {c} of q^{e} is negative")));
        }
    }
    Ok(RatFun::from_laurent(poly, 2 * r as u64))
}

/// Normalized volume of `{x ∈ |Σ| : κ(x) <= 1}`: the sum of `|det|` over the
/// cones of a triangulation.
pub fn shed_volume(fan: &Fan) -> Result<Rational> {
    let kappa = Kappa::of(fan)?;
    let tri = checked_triangulation(fan, &kappa)?;
    let total: i128 = tri
        .fan
        .cones()
        .iter()
        .map(|c| {
            let rows: Vec<Vec<i64>> = c.iter().map(|&i| fan.ray(i).to_vec()).collect();
            lattice::det(&rows).abs()
        })
        .sum();
    Ok(Rational::from_integer(total.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::corpus;
    use crate::toric::{resolve, Strategy};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn projective_plane_polynomial() {
        // t = q, r = 1
        let b = stringy_betti_lattice_sum(&corpus::p2()).unwrap();
        assert_eq!(b, RatFun::parse("q^4 + q^2 + 1", 2).unwrap());
    }

    #[test]
    fn weighted_plane_112_polynomial() {
        let b = stringy_betti_lattice_sum(&corpus::p112()).unwrap();
        assert_eq!(b, RatFun::parse("q^4 + 2*q^2 + 1", 2).unwrap());
    }

    #[test]
    fn weighted_plane_113_limit() {
        let b = stringy_betti_lattice_sum(&corpus::p113()).unwrap();
        assert_eq!(b.scale(), 6);
        assert_eq!(b.limit_at_one().unwrap(), q(5));
    }

    #[test]
    fn shed_volumes() {
        assert_eq!(shed_volume(&corpus::p2()).unwrap(), q(3));
        assert_eq!(shed_volume(&corpus::p112()).unwrap(), q(4));
        assert_eq!(shed_volume(&corpus::p113()).unwrap(), q(5));
        assert_eq!(shed_volume(&corpus::p123()).unwrap(), q(6));
        assert_eq!(shed_volume(&corpus::flip_a()).unwrap(), q(3));
        assert_eq!(shed_volume(&corpus::flip_b()).unwrap(), q(2));
    }

    #[test]
    fn lattice_sum_matches_resolution_on_corpus() {
        for (name, f) in corpus::all() {
            let lattice = stringy_betti_lattice_sum(&f).unwrap();
            let res = resolve(&f, Strategy::FirstMinimal).unwrap();
            assert_eq!(res.stringy_function().unwrap().betti_top(), lattice, "{name}");
        }
    }
}
