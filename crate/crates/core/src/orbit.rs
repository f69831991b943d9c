//! Euler numbers of homogeneous spaces and of strata made of finitely many
//! orbits.
//!
//! A group enters only through the rank and Weyl group order of its
//! reductive part; for a non-connected isotropy group these describe the
//! reductive part of its identity component.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::HodgePoly;
use crate::stringy::{Divisor, ResolutionDatum, Subset};
use crate::{Integer, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDesc {
    pub name: String,
    #[serde(rename = "rank")]
    pub reductive_rank: u32,
    pub weyl_order: u64,
}

impl GroupDesc {
    pub fn new(name: impl Into<String>, reductive_rank: u32, weyl_order: u64) -> Self {
        GroupDesc {
            name: name.into(),
            reductive_rank,
            weyl_order,
        }
    }

    pub fn torus(rank: u32) -> Self {
        GroupDesc::new(format!("T{rank}"), rank, 1)
    }

    fn validate(&self) -> Result<()> {
        if self.weyl_order == 0 {
            return Err(Error::Catalog(format!("{}: Weyl order must be positive", self.name)));
        }
        Ok(())
    }
}

/// The homogeneous space `G/H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDesc {
    pub ambient: GroupDesc,
    pub isotropy: GroupDesc,
    /// `H` is parabolic, so `G/H` is projective.
    pub projective: bool,
}

impl OrbitDesc {
    pub fn new(ambient: GroupDesc, isotropy: GroupDesc, projective: bool) -> Self {
        OrbitDesc {
            ambient,
            isotropy,
            projective,
        }
    }
}

/// `e(G/H) = 0` if `rank G > rank H`, else `|W_G| / |W_H|`.
pub fn euler_homogeneous(o: &OrbitDesc) -> Result<Rational> {
    let (g, h) = (&o.ambient, &o.isotropy);
    g.validate()?;
    h.validate()?;
    if h.reductive_rank > g.reductive_rank {
        return Err(Error::Catalog(format!(
            "{}/{}: isotropy rank exceeds ambient rank",
            g.name, h.name
        )));
    }
    if g.reductive_rank > h.reductive_rank {
        if o.projective {
            return Err(Error::Catalog(format!(
                "{}/{}: marked projective but ranks differ",
                g.name, h.name
            )));
        }
        return Ok(Rational::zero());
    }
    if g.weyl_order % h.weyl_order != 0 {
        return Err(Error::Catalog(format!(
            "{}/{}: |W_H| = {} does not divide |W_G| = {}",
            g.name, h.name, h.weyl_order, g.weyl_order
        )));
    }
    Ok(Rational::from_integer(Integer::from(g.weyl_order / h.weyl_order)))
}

/// Euler number of a finite union of orbits.
pub fn stratum_euler(orbits: &[OrbitDesc]) -> Result<Rational> {
    let mut total = Rational::zero();
    let mut projective = false;
    for o in orbits {
        total += euler_homogeneous(o)?;
        projective |= o.projective;
    }
    if total.is_negative() || (projective && !total.is_positive()) {
        return Err(Error::Assertion(format!("stratum Euler number {total} has the wrong sign")));
    }
    Ok(total)
}

/// Assemble a datum whose open strata `D_J°` are the given orbit unions.
/// Strata carry their Euler number only, as a constant E-polynomial.
pub fn build_datum_from_orbits(
    index: u64,
    divisors: Vec<Divisor>,
    assignment: &BTreeMap<Subset, Vec<OrbitDesc>>,
    empty: Vec<Subset>,
) -> Result<ResolutionDatum> {
    let open: BTreeMap<&Subset, Rational> = assignment
        .iter()
        .map(|(j, orbits)| Ok((j, stratum_euler(orbits)?)))
        .collect::<Result<_>>()?;
    let mut strata = Vec::new();
    for j in open.keys() {
        let closed = open
            .iter()
            .filter(|(jj, _)| j.is_subset_of(jj))
            .fold(Rational::zero(), |acc, (_, e)| acc + e);
        debug_assert!(closed.is_integer());
        strata.push(((*j).clone(), HodgePoly::constant(closed.to_integer())));
    }
    ResolutionDatum::new(index, divisors, strata, empty, true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRef {
    #[serde(rename = "G")]
    pub ambient: String,
    #[serde(rename = "H")]
    pub isotropy: String,
    #[serde(default)]
    pub projective: bool,
}

/// Named groups plus a list of orbit types referring to them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub groups: Vec<GroupDesc>,
    #[serde(default)]
    pub orbits: Vec<OrbitRef>,
}

impl Catalog {
    /// Tori, `SL_n` for small `n`, a few other simple groups and the usual
    /// isotropy subgroups.
    pub fn builtin() -> Self {
        let g = |n: &str, r, w| GroupDesc::new(n, r, w);
        let groups = vec![
            g("trivial", 0, 1),
            g("U", 0, 1),
            g("T1", 1, 1),
            g("T2", 2, 1),
            g("T3", 3, 1),
            g("SL2", 1, 2),
            g("SL3", 2, 6),
            g("SL4", 3, 24),
            g("SO3", 1, 2),
            g("Sp4", 2, 8),
            g("G2", 2, 12),
            g("B_SL2", 1, 1),
            g("B_SL3", 2, 1),
            g("P_SL3", 2, 2),
            g("B_SL4", 3, 1),
            g("B_Sp4", 2, 1),
            g("B_G2", 2, 1),
        ];
        let o = |a: &str, b: &str, p| OrbitRef {
            ambient: a.into(),
            isotropy: b.into(),
            projective: p,
        };
        let orbits = vec![
            o("SL2", "B_SL2", true),
            o("SL2", "T1", false),
            o("SL2", "U", false),
            o("SL3", "B_SL3", true),
            o("SL3", "P_SL3", true),
            o("SL3", "T2", false),
            o("SL4", "B_SL4", true),
            o("Sp4", "B_Sp4", true),
            o("G2", "B_G2", true),
            o("T2", "T2", false),
            o("T2", "T1", false),
        ];
        Catalog { groups, orbits }
    }

    pub fn group(&self, name: &str) -> Result<&GroupDesc> {
        self.groups
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::Catalog(format!("unknown group {name}")))
    }

    pub fn resolve(&self, r: &OrbitRef) -> Result<OrbitDesc> {
        Ok(OrbitDesc::new(
            self.group(&r.ambient)?.clone(),
            self.group(&r.isotropy)?.clone(),
            r.projective,
        ))
    }

    /// Euler number of every listed orbit type, checking integrality and the
    /// divisibility of Weyl orders for equal-rank pairs.
    pub fn evaluate(&self) -> Result<Vec<(OrbitRef, Rational)>> {
        for g in &self.groups {
            g.validate()?;
        }
        self.orbits
            .iter()
            .map(|r| {
                let e = euler_homogeneous(&self.resolve(r)?)?;
                if !e.is_integer() {
                    return Err(Error::Catalog(format!("{}/{}: non-integral Euler number", r.ambient, r.isotropy)));
                }
                Ok((r.clone(), e))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn orbit(cat: &Catalog, g: &str, h: &str, p: bool) -> OrbitDesc {
        cat.resolve(&OrbitRef {
            ambient: g.into(),
            isotropy: h.into(),
            projective: p,
        })
        .unwrap()
    }

    #[test]
    fn homogeneous_examples() {
        let cat = Catalog::builtin();
        assert_eq!(euler_homogeneous(&orbit(&cat, "SL2", "T1", false)).unwrap(), q(2));
        assert_eq!(euler_homogeneous(&orbit(&cat, "SL3", "B_SL3", true)).unwrap(), q(6));
        let drop = OrbitDesc::new(GroupDesc::new("G", 2, 6), GroupDesc::new("H", 1, 2), false);
        assert_eq!(euler_homogeneous(&drop).unwrap(), q(0));
    }

    #[test]
    fn stratum_sums() {
        let cat = Catalog::builtin();
        assert_eq!(stratum_euler(&[]).unwrap(), q(0));
        let mixed = [orbit(&cat, "SL2", "U", false), orbit(&cat, "SL2", "B_SL2", true)];
        assert_eq!(stratum_euler(&mixed).unwrap(), q(2));
        let tori = vec![orbit(&cat, "T2", "T2", false); 3];
        assert_eq!(stratum_euler(&tori).unwrap(), q(3));
    }

    #[test]
    fn catalog_is_consistent() {
        let values = Catalog::builtin().evaluate().unwrap();
        assert!(values.iter().all(|(_, e)| !e.is_negative() && e.is_integer()));
        let bad = Catalog {
            groups: vec![GroupDesc::new("A", 1, 2), GroupDesc::new("B", 1, 3)],
            orbits: vec![OrbitRef {
                ambient: "A".into(),
                isotropy: "B".into(),
                projective: false,
            }],
        };
        assert!(matches!(bad.evaluate(), Err(Error::Catalog(_))));
    }

    #[test]
    fn datum_from_orbits() {
        let cat = Catalog::builtin();
        let mut assign = BTreeMap::new();
        assign.insert(Subset::empty(), vec![orbit(&cat, "SL2", "U", false)]);
        assign.insert(Subset::new(vec![0]), vec![orbit(&cat, "SL2", "B_SL2", true)]);
        let d = build_datum_from_orbits(1, vec![Divisor::new("D", q(0))], &assign, vec![]).unwrap();
        assert!(d.orbit_nonnegative());
        let v = d.compare_monotone(&[q(0)], &[q(1)]).unwrap();
        assert!(v.holds);
        assert_eq!(v.certificate, Some(Subset::new(vec![0])));

        assign.remove(&Subset::new(vec![0]));
        let missing = build_datum_from_orbits(1, vec![Divisor::new("D", q(0))], &assign, vec![]);
        assert!(matches!(missing, Err(Error::MissingStratum(_))));
    }

    #[test]
    fn rank_dropping_orbits_leave_no_certificate() {
        let cat = Catalog::builtin();
        let mut assign = BTreeMap::new();
        assign.insert(Subset::empty(), vec![orbit(&cat, "SL2", "U", false)]);
        assign.insert(Subset::new(vec![0]), vec![orbit(&cat, "SL2", "U", false)]);
        let d = build_datum_from_orbits(1, vec![Divisor::new("D", q(0))], &assign, vec![]).unwrap();
        assert_eq!(d.stringy_euler().unwrap(), q(0));
        let v = d.compare_monotone(&[q(0)], &[q(1)]).unwrap();
        assert!(!v.holds && v.diagnostic.is_some());
        assert!(!d.check_positivity(1).unwrap().positive);
    }
}
