use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::lattice;

/// A facet of a maximal cone: inward primitive normal and the rays on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub rays: Vec<usize>,
}

/// A validated fan of full-dimensional pointed cones in `Z^d`.
///
/// Cones are stored as sorted ray-index lists, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    facets: Vec<Vec<Facet>>,
    complete: bool,
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Facets of the cone spanned by `gens` (full rank in `Z^dim`), as inward
/// normals with the local indices of the generators on each facet.
pub(crate) fn cone_facets(gens: &[&[i64]], dim: usize) -> Vec<(Vec<i64>, Vec<usize>)> {
    let mut out: Vec<(Vec<i64>, Vec<usize>)> = Vec::new();
    for sub in combinations(gens.len(), dim - 1) {
        let rows: Vec<Vec<i64>> = sub.iter().map(|&i| gens[i].to_vec()).collect();
        let ker = lattice::integer_kernel(&rows, dim);
        if ker.len() != 1 {
            continue;
        }
        let n = lattice::primitive(&ker[0]);
        let vals: Vec<i128> = gens.iter().map(|g| lattice::dot(&n, g)).collect();
        let normal = if vals.iter().all(|&x| x >= 0) {
            n
        } else if vals.iter().all(|&x| x <= 0) {
            n.iter().map(|x| -x).collect()
        } else {
            continue;
        };
        let on: Vec<usize> = (0..gens.len()).filter(|&i| vals[i] == 0).collect();
        if !out.iter().any(|(_, r)| *r == on) {
            out.push((normal, on));
        }
    }
    out
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::NotAFan("dimension must be positive".into()));
        }
        for (i, v) in rays.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::NotAFan(format!("ray {i} has {} coordinates", v.len())));
            }
            if !lattice::is_primitive(v) {
                return Err(Error::NotAFan(format!("ray {i} = {v:?} is not primitive")));
            }
            if rays[..i].contains(v) {
                return Err(Error::NotAFan(format!("ray {i} = {v:?} is repeated")));
            }
        }
        let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(cones.len());
        for c in cones {
            let mut c = c;
            c.sort_unstable();
            let before = c.len();
            c.dedup();
            if c.len() != before || c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::NotAFan(format!("cone {c:?} has bad ray indices")));
            }
            sorted.push(c);
        }
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::NotAFan("a cone is listed twice".into()));
        }
        let mut facets = Vec::with_capacity(sorted.len());
        for c in &sorted {
            facets.push(Self::validate_cone(&rays, c, dim)?);
        }
        let mut fan = Fan {
            dim,
            rays,
            cones: sorted,
            facets,
            complete: false,
        };
        for a in 0..fan.cones.len() {
            for b in a + 1..fan.cones.len() {
                fan.check_pair(a, b)?;
            }
        }
        let counts = fan.facet_cones();
        if let Some((f, _)) = counts.iter().find(|(_, cs)| cs.len() > 2) {
            return Err(Error::NotAFan(format!("facet {f:?} lies in more than two cones")));
        }
        fan.complete = !fan.cones.is_empty() && counts.values().all(|cs| cs.len() == 2);
        Ok(fan)
    }

    fn validate_cone(rays: &[Vec<i64>], c: &[usize], dim: usize) -> Result<Vec<Facet>> {
        let gens: Vec<&[i64]> = c.iter().map(|&i| rays[i].as_slice()).collect();
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
        if c.len() < dim || !lattice::integer_kernel(&rows, dim).is_empty() {
            return Err(Error::NotAFan(format!("cone {c:?} is not full-dimensional")));
        }
        let local = cone_facets(&gens, dim);
        let normals: Vec<Vec<i64>> = local.iter().map(|(n, _)| n.clone()).collect();
        if normals.is_empty() || !lattice::integer_kernel(&normals, dim).is_empty() {
            return Err(Error::NotAFan(format!("cone {c:?} is not pointed")));
        }
        for (k, &ray) in c.iter().enumerate() {
            let on: Vec<Vec<i64>> = local
                .iter()
                .filter(|(_, r)| r.contains(&k))
                .map(|(n, _)| n.clone())
                .collect();
            if lattice::integer_kernel(&on, dim).len() != 1 {
                return Err(Error::NotAFan(format!(
                    "ray {ray} is not an extreme ray of cone {c:?}"
                )));
            }
        }
        Ok(local
            .into_iter()
            .map(|(normal, on)| Facet {
                normal,
                rays: on.into_iter().map(|k| c[k]).collect(),
            })
            .collect())
    }

    /// Rays of cone `c` lying on every facet that contains all of `s`.
    fn face_closure(&self, c: usize, s: &[usize]) -> Vec<usize> {
        let containing: Vec<&Facet> = self.facets[c]
            .iter()
            .filter(|f| s.iter().all(|i| f.rays.contains(i)))
            .collect();
        self.cones[c]
            .iter()
            .copied()
            .filter(|i| containing.iter().all(|f| f.rays.contains(i)))
            .collect()
    }

    fn on_face(&self, c: usize, s: &[usize], w: &[i64]) -> bool {
        self.facets[c]
            .iter()
            .filter(|f| s.iter().all(|i| f.rays.contains(i)))
            .all(|f| lattice::dot(&f.normal, w) == 0)
    }

    /// `σ_a ∩ σ_b` must be the cone over the shared rays, a face of both.
    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        let shared: Vec<usize> = self.cones[a]
            .iter()
            .copied()
            .filter(|i| self.cones[b].contains(i))
            .collect();
        let bad = |why: &str| {
            Err(Error::NotAFan(format!(
                "cones {:?} and {:?} {why}",
                self.cones[a], self.cones[b]
            )))
        };
        if self.face_closure(a, &shared) != shared || self.face_closure(b, &shared) != shared {
            return bad("share rays that do not span a common face");
        }
        let ineqs: Vec<&Vec<i64>> = self.facets[a]
            .iter()
            .chain(&self.facets[b])
            .map(|f| &f.normal)
            .collect();
        for sub in combinations(ineqs.len(), self.dim - 1) {
            let rows: Vec<Vec<i64>> = sub.iter().map(|&i| ineqs[i].clone()).collect();
            let ker = lattice::integer_kernel(&rows, self.dim);
            if ker.len() != 1 {
                continue;
            }
            for w in [ker[0].clone(), ker[0].iter().map(|x| -x).collect()] {
                if ineqs.iter().all(|h| lattice::dot(h, &w) >= 0) && !self.on_face(a, &shared, &w) {
                    return bad("overlap beyond a common face");
                }
            }
        }
        Ok(())
    }

    /// Every facet (as a sorted ray set) with the cones containing it.
    pub fn facet_cones(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut map: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (c, fs) in self.facets.iter().enumerate() {
            for f in fs {
                map.entry(f.rays.clone()).or_default().push(c);
            }
        }
        map
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &[i64] {
        &self.rays[i]
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn facets(&self, cone: usize) -> &[Facet] {
        &self.facets[cone]
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.len() == self.dim)
    }

    pub fn cone_rays(&self, cone: usize) -> Vec<Vec<i64>> {
        self.cones[cone].iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// `|det|` of a simplicial cone.
    pub fn multiplicity(&self, cone: usize) -> Option<u64> {
        if self.cones[cone].len() != self.dim {
            return None;
        }
        Some(lattice::det(&self.cone_rays(cone)).unsigned_abs() as u64)
    }

    pub fn is_smooth(&self) -> bool {
        (0..self.cones.len()).all(|c| self.multiplicity(c) == Some(1))
    }

    pub fn cone_contains(&self, cone: usize, v: &[i64]) -> bool {
        self.facets[cone].iter().all(|f| lattice::dot(&f.normal, v) >= 0)
    }

    /// First maximal cone containing `v`.
    pub fn locate(&self, v: &[i64]) -> Option<usize> {
        (0..self.cones.len()).find(|&c| self.cone_contains(c, v))
    }

    pub fn ray_index(&self, v: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r == v)
    }

    /// All faces of the maximal cones, the empty face included, each once.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut seen = std::collections::BTreeSet::new();
        for c in 0..self.cones.len() {
            for face in self.faces_of(c) {
                seen.insert(face);
            }
        }
        seen.into_iter().collect()
    }

    /// Faces of a maximal cone as ray subsets. For a simplicial cone these are
    /// all subsets; otherwise they are found from facet intersections.
    pub fn faces_of(&self, cone: usize) -> Vec<Vec<usize>> {
        let c = &self.cones[cone];
        let mut out = std::collections::BTreeSet::new();
        if c.len() == self.dim {
            for mask in 0u32..(1 << c.len()) {
                out.insert((0..c.len()).filter(|k| mask >> k & 1 == 1).map(|k| c[k]).collect::<Vec<_>>());
            }
        } else {
            out.insert(c.clone());
            let mut frontier = vec![c.clone()];
            while let Some(face) = frontier.pop() {
                for f in &self.facets[cone] {
                    let sub: Vec<usize> = face.iter().copied().filter(|i| f.rays.contains(i)).collect();
                    let closed = self.face_closure(cone, &sub);
                    if closed.len() < face.len() && out.insert(closed.clone()) {
                        frontier.push(closed);
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fan in Z^{} with rays", self.dim)?;
        for r in &self.rays {
            write!(f, " {r:?}")?;
        }
        write!(f, "; cones")?;
        for c in &self.cones {
            write!(f, " {c:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan(dim: usize, rays: &[&[i64]], cones: &[&[usize]]) -> Result<Fan> {
        Fan::new(
            dim,
            rays.iter().map(|r| r.to_vec()).collect(),
            cones.iter().map(|c| c.to_vec()).collect(),
        )
    }

    #[test]
    fn projective_plane_is_complete() {
        let f = fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert!(f.is_complete() && f.is_smooth());
        assert_eq!(f.faces().len(), 7);
    }

    #[test]
    fn weighted_plane_is_valid() {
        let f = fan(2, &[&[1, 0], &[0, 1], &[-1, -2]], &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert!(f.is_complete());
        // cones sorted: [0,1], [0,2], [1,2]
        let m: Vec<_> = (0..3).map(|c| f.multiplicity(c).unwrap()).collect();
        assert_eq!(m, vec![1, 2, 1]);
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        let e = fan(2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 2]], &[&[0, 3], &[1, 2]]);
        assert!(matches!(e, Err(Error::NotAFan(_))));
        // shared ray but crossing interiors
        let e = fan(2, &[&[1, 0], &[0, 1], &[1, 1]], &[&[0, 1], &[0, 2]]);
        assert!(matches!(e, Err(Error::NotAFan(_))));
    }

    #[test]
    fn bad_rays_are_rejected() {
        assert!(fan(2, &[&[2, 0], &[0, 1]], &[&[0, 1]]).is_err());
        assert!(fan(2, &[&[1, 0], &[1, 0]], &[&[0, 1]]).is_err());
        // not pointed
        assert!(fan(2, &[&[1, 0], &[-1, 0], &[0, 1]], &[&[0, 1, 2]]).is_err());
        // not full-dimensional
        assert!(fan(3, &[&[1, 0, 0], &[0, 1, 0]], &[&[0, 1]]).is_err());
        // non-extreme listed ray
        assert!(fan(2, &[&[1, 0], &[1, 1], &[0, 1]], &[&[0, 1, 2]]).is_err());
    }

    #[test]
    fn cone_over_square_has_four_facets() {
        let f = fan(3, &[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]], &[&[0, 1, 2, 3]]).unwrap();
        assert_eq!(f.facets(0).len(), 4);
        assert!(!f.is_complete() && !f.is_simplicial());
        assert_eq!(f.faces().len(), 10);
    }

    #[test]
    fn three_dimensional_flip_sides() {
        let rays: &[&[i64]] = &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 2, -1]];
        assert!(fan(3, rays, &[&[0, 2, 3], &[1, 2, 3]]).is_ok());
        assert!(fan(3, rays, &[&[0, 1, 2], &[0, 1, 3]]).is_ok());
        // both triangulations together overlap
        assert!(fan(3, rays, &[&[0, 2, 3], &[0, 1, 2]]).is_err());
    }
}
