use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::linalg;
use crate::Rational;

use super::lattice::to_rational;
use super::{combinations, Fan};

/// A simplicial refinement without new rays; `parent[i]` is the original
/// maximal cone containing the `i`-th new cone.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub fan: Fan,
    pub parent: Vec<usize>,
}

/// Pulling triangulation: each non-simplicial cone is coned from its
/// lowest-index ray over the triangulated facets not containing it. Adjacent
/// cones induce the same triangulation on shared faces because the pulling
/// order is global.
pub fn triangulate(fan: &Fan) -> Result<Triangulation> {
    if fan.is_simplicial() {
        return Ok(Triangulation {
            fan: fan.clone(),
            parent: (0..fan.cones().len()).collect(),
        });
    }
    let mut pieces: Vec<(Vec<usize>, usize)> = Vec::new();
    for (c, cone) in fan.cones().iter().enumerate() {
        let coords: Vec<Vec<Rational>> = cone.iter().map(|&i| to_rational(fan.ray(i))).collect();
        pieces.extend(pull(cone, &coords).into_iter().map(|s| (s, c)));
    }
    // same order as Fan::new uses
    pieces.sort();
    let (cones, parent): (Vec<_>, Vec<_>) = pieces.into_iter().unzip();
    let new = Fan::new(fan.dim(), fan.rays().to_vec(), cones)?;
    Ok(Triangulation { fan: new, parent })
}

/// Pulling triangulation of the full-dimensional cone whose extreme rays are
/// `gens`, as lists of positions in `gens`.
pub(crate) fn triangulate_cone(gens: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let idx: Vec<usize> = (0..gens.len()).collect();
    let coords: Vec<Vec<Rational>> = gens.iter().map(|g| to_rational(g)).collect();
    pull(&idx, &coords)
}

/// Triangulate the cone on `idx` whose generators have full-rank coordinates
/// `coords`; `idx` is sorted, so position 0 is the lowest ray.
fn pull(idx: &[usize], coords: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let k = coords[0].len();
    if idx.len() == k {
        return vec![idx.to_vec()];
    }
    let mut out = Vec::new();
    for facet in rational_facets(coords) {
        if facet.contains(&0) {
            continue;
        }
        let sub_idx: Vec<usize> = facet.iter().map(|&i| idx[i]).collect();
        let sub_coords = span_coordinates(&facet.iter().map(|&i| coords[i].clone()).collect::<Vec<_>>());
        for mut s in pull(&sub_idx, &sub_coords) {
            s.push(idx[0]);
            s.sort_unstable();
            out.push(s);
        }
    }
    out
}

/// Facets (as local index sets) of the full-dimensional cone on `coords`.
fn rational_facets(coords: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let k = coords[0].len();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for sub in combinations(coords.len(), k - 1) {
        let rows: Vec<Vec<Rational>> = sub.iter().map(|&i| coords[i].clone()).collect();
        let ns = linalg::nullspace(&rows, k);
        if ns.len() != 1 {
            continue;
        }
        let vals: Vec<Rational> = coords.iter().map(|c| linalg::dot(&ns[0], c)).collect();
        if vals.iter().any(|v| v.is_positive()) && vals.iter().any(|v| v.is_negative()) {
            continue;
        }
        let on: Vec<usize> = (0..coords.len()).filter(|&i| vals[i].is_zero()).collect();
        if !out.contains(&on) {
            out.push(on);
        }
    }
    out
}

/// Coordinates of `vecs` with respect to a basis of their span chosen among
/// them.
fn span_coordinates(vecs: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for v in vecs {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if linalg::rank(&trial) == trial.len() {
            basis = trial;
        }
    }
    let n = vecs[0].len();
    // columns are basis vectors
    let m: Vec<Vec<Rational>> = (0..n).map(|j| basis.iter().map(|b| b[j].clone()).collect()).collect();
    vecs.iter()
        .map(|v| linalg::solve(&m, v).expect("vector lies in the span"))
        .collect()
}
