//! Torus-equivariant birational moves between fans: wall curves, the sign of
//! `-K` on them, classification of a pair of fans as a Mori move, shed
//! inclusion and the monotonicity of the stringy Euler number.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::stringy::MonotoneVerdict;
use crate::toric::lattice::{self, clear_denominators};
use crate::toric::{
    combinations, resolve, shed_volume, stringy_betti_lattice_sum, toric_strata_datum, triangulate_cone,
    Fan, Kappa, Strategy,
};
use crate::{linalg, Rational};

/// Facet `τ` shared by the maximal cones `⟨τ, v⟩` and `⟨τ, v'⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub facet: Vec<usize>,
    pub cones: (usize, usize),
    pub v: usize,
    pub v_prime: usize,
}

/// `α v + α' v' + Σ c_ρ v_ρ = 0`, primitive with `α > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallRelation {
    pub alpha: i64,
    pub alpha_prime: i64,
    /// Coefficients on the rays of the facet, in facet order.
    pub coeffs: Vec<i64>,
}

impl WallRelation {
    pub fn sum(&self) -> i64 {
        self.alpha + self.alpha_prime + self.coeffs.iter().sum::<i64>()
    }
}

/// Interior walls of a simplicial fan, ordered by facet.
pub fn walls_of(fan: &Fan) -> Result<Vec<Wall>> {
    if !fan.is_simplicial() {
        return Err(Error::NotSimplicial("walls need simplicial cones".into()));
    }
    Ok(shared_facets(fan))
}

fn shared_facets(fan: &Fan) -> Vec<Wall> {
    fan.facet_cones()
        .into_iter()
        .filter(|(_, cs)| cs.len() == 2)
        .map(|(facet, cs)| {
            let other = |c: usize| {
                fan.cones()[c]
                    .iter()
                    .copied()
                    .find(|i| !facet.contains(i))
                    .expect("facet is proper")
            };
            Wall {
                v: other(cs[0]),
                v_prime: other(cs[1]),
                cones: (cs[0], cs[1]),
                facet,
            }
        })
        .collect()
}

pub fn wall_relation(fan: &Fan, wall: &Wall) -> Result<WallRelation> {
    let mut vecs = vec![fan.ray(wall.v), fan.ray(wall.v_prime)];
    vecs.extend(wall.facet.iter().map(|&i| fan.ray(i)));
    // columns are the vectors
    let rows: Vec<Vec<Rational>> = (0..fan.dim())
        .map(|j| vecs.iter().map(|v| Rational::from_integer(v[j].into())).collect())
        .collect();
    let ns = linalg::nullspace(&rows, vecs.len());
    if ns.len() != 1 {
        return Err(Error::NotSimplicial(format!("cones at wall {:?} are not simplicial", wall.facet)));
    }
    let mut rel = clear_denominators(&ns[0]);
    if rel[0] < 0 {
        rel.iter_mut().for_each(|x| *x = -*x);
    }
    if rel[0] <= 0 || rel[1] <= 0 {
        return Err(Error::Assertion(format!("degenerate wall relation {rel:?}")));
    }
    Ok(WallRelation {
        alpha: rel[0],
        alpha_prime: rel[1],
        coeffs: rel[2..].to_vec(),
    })
}

/// Sign of `(-K) · C` for the wall curve, from the wall relation and from
/// `1 - κ_σ(v')`; the two must agree.
pub fn k_degree_sign(fan: &Fan, kappa: &Kappa, wall: &Wall) -> Result<i8> {
    let rel = wall_relation(fan, wall)?;
    let from_relation = rel.sum().signum() as i8;
    let k = kappa.eval_in(wall.cones.0, fan.ray(wall.v_prime));
    let diff = Rational::one() - k;
    let from_kappa = if diff.is_positive() {
        1
    } else if diff.is_negative() {
        -1
    } else {
        0
    };
    if from_relation != from_kappa {
        return Err(Error::Assertion(format!(
            "wall {:?}: relation sign {from_relation} but κ sign {from_kappa}",
            wall.facet
        )));
    }
    Ok(from_relation)
}

/// Walls on which `K` is negative, i.e. `(-K) · C > 0`.
pub fn negative_walls(fan: &Fan) -> Result<Vec<Wall>> {
    let kappa = Kappa::of(fan)?;
    let mut out = Vec::new();
    for w in walls_of(fan)? {
        if k_degree_sign(fan, &kappa, &w)? > 0 {
            out.push(w);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MoveKind {
    DivisorialContraction,
    Flip,
    Flop,
    CrepantModification,
    Unrecognized,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Src,
    Dst,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallSign {
    pub side: Side,
    /// Rays of the wall, as vectors.
    pub wall: Vec<Vec<i64>>,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveClassification {
    pub kind: MoveKind,
    pub removed_rays: Vec<Vec<i64>>,
    /// Signs on the walls that disappear (source) and appear (target).
    pub wall_signs: Vec<WallSign>,
    /// Relation among all rays supporting the changed walls, for small moves.
    pub circuit: Option<BTreeMap<String, i64>>,
    pub k_equivalent: bool,
    pub diagnostic: Option<String>,
}

fn facet_vectors(fan: &Fan, facet: &[usize]) -> BTreeSet<Vec<i64>> {
    facet.iter().map(|&i| fan.ray(i).to_vec()).collect()
}

fn wall_sets(fan: &Fan) -> BTreeMap<BTreeSet<Vec<i64>>, Wall> {
    shared_facets(fan)
        .into_iter()
        .map(|w| (facet_vectors(fan, &w.facet), w))
        .collect()
}

/// Relation of a wall spread over named rays, normalized to be primitive
/// with positive first nonzero entry.
fn global_relation(fan: &Fan, w: &Wall, rel: &WallRelation) -> BTreeMap<String, i64> {
    let mut out = BTreeMap::new();
    out.insert(format!("{:?}", fan.ray(w.v)), rel.alpha);
    out.insert(format!("{:?}", fan.ray(w.v_prime)), rel.alpha_prime);
    for (&i, &c) in w.facet.iter().zip(&rel.coeffs) {
        if c != 0 {
            out.insert(format!("{:?}", fan.ray(i)), c);
        }
    }
    out
}

fn signed_walls(fan: &Fan, walls: &[&Wall], side: Side) -> Result<Vec<(WallSign, BTreeMap<String, i64>)>> {
    let kappa = Kappa::of(fan)?;
    walls
        .iter()
        .map(|w| {
            let rel = wall_relation(fan, w)?;
            let sign = k_degree_sign(fan, &kappa, w)?;
            let ws = WallSign {
                side,
                wall: w.facet.iter().map(|&i| fan.ray(i).to_vec()).collect(),
                sign,
            };
            Ok((ws, global_relation(fan, w, &rel)))
        })
        .collect()
}

fn same_direction(a: &BTreeMap<String, i64>, b: &BTreeMap<String, i64>) -> bool {
    let norm = |m: &BTreeMap<String, i64>| {
        let g = m.values().fold(0i64, |g, x| g.gcd(x));
        let first = m.values().next().copied().unwrap_or(1).signum();
        m.iter().map(|(k, v)| (k.clone(), v / g * first)).collect::<BTreeMap<_, _>>()
    };
    norm(a) == norm(b)
}

/// Identify `src ⇢ dst` as an elementary Mori move.
pub fn classify_modification(src: &Fan, dst: &Fan) -> Result<MoveClassification> {
    check_same_support(src, dst)?;
    let src_rays: BTreeSet<Vec<i64>> = src.rays().iter().cloned().collect();
    let dst_rays: BTreeSet<Vec<i64>> = dst.rays().iter().cloned().collect();
    let mut out = MoveClassification {
        kind: MoveKind::Unrecognized,
        removed_rays: src_rays.difference(&dst_rays).cloned().collect(),
        wall_signs: Vec::new(),
        circuit: None,
        k_equivalent: false,
        diagnostic: None,
    };
    if !dst_rays.is_subset(&src_rays) {
        out.diagnostic = Some("the target has rays the source lacks".into());
        return Ok(out);
    }
    if !src.is_simplicial() {
        out.diagnostic = Some("source fan is not simplicial".into());
        return Ok(out);
    }
    let src_walls = wall_sets(src);
    let dst_walls = wall_sets(dst);
    let removed: Vec<&Wall> = src_walls
        .iter()
        .filter(|(k, _)| !dst_walls.contains_key(*k))
        .map(|(_, w)| w)
        .collect();
    let added: Vec<&Wall> = dst_walls
        .iter()
        .filter(|(k, _)| !src_walls.contains_key(*k))
        .map(|(_, w)| w)
        .collect();
    let removed_signed = signed_walls(src, &removed, Side::Src)?;
    out.wall_signs = removed_signed.iter().map(|(s, _)| s.clone()).collect();

    if out.removed_rays.len() == 1 {
        let rho = &out.removed_rays[0];
        let incident = removed
            .iter()
            .all(|w| w.facet.iter().any(|&i| src.ray(i) == rho.as_slice()));
        if !removed.is_empty() && incident && out.wall_signs.iter().all(|s| s.sign == 1) {
            out.kind = MoveKind::DivisorialContraction;
            return Ok(out);
        }
    }
    if !out.removed_rays.is_empty() {
        let kappa = Kappa::of(dst)?;
        let crepant = out
            .removed_rays
            .iter()
            .map(|v| kappa.eval(dst, v))
            .collect::<Result<Vec<_>>>()?
            .iter()
            .all(|k| k.is_one());
        if crepant {
            out.kind = MoveKind::CrepantModification;
            out.k_equivalent = true;
        } else {
            out.diagnostic = Some("removed rays are neither a single K-negative divisor nor crepant".into());
        }
        return Ok(out);
    }
    if removed.is_empty() && added.is_empty() {
        out.diagnostic = Some("fans have the same walls".into());
        return Ok(out);
    }
    if !dst.is_simplicial() {
        out.diagnostic = Some("target fan is not simplicial".into());
        return Ok(out);
    }
    let added_signed = signed_walls(dst, &added, Side::Dst)?;
    out.wall_signs.extend(added_signed.iter().map(|(s, _)| s.clone()));
    let relations: Vec<&BTreeMap<String, i64>> =
        removed_signed.iter().chain(&added_signed).map(|(_, r)| r).collect();
    if relations.is_empty() || !relations.iter().all(|r| same_direction(r, relations[0])) {
        out.diagnostic = Some("changed walls do not share one circuit".into());
        return Ok(out);
    }
    out.circuit = Some(relations[0].clone());
    let src_signs: Vec<i8> = removed_signed.iter().map(|(s, _)| s.sign).collect();
    let dst_signs: Vec<i8> = added_signed.iter().map(|(s, _)| s.sign).collect();
    if src_signs.is_empty() || dst_signs.is_empty() {
        out.diagnostic = Some("a side has no changed walls".into());
    } else if src_signs.iter().all(|&s| s == 1) && dst_signs.iter().all(|&s| s == -1) {
        out.kind = MoveKind::Flip;
    } else if src_signs.iter().chain(&dst_signs).all(|&s| s == 0) {
        out.kind = MoveKind::Flop;
        out.k_equivalent = true;
    } else {
        out.diagnostic = Some(format!("wall signs {src_signs:?} -> {dst_signs:?}"));
    }
    Ok(out)
}

/// Primitive extreme rays of `σ_a ∩ σ_b` for maximal cones of two fans in
/// the same lattice.
fn intersection_rays(a: &Fan, ca: usize, b: &Fan, cb: usize) -> Vec<Vec<i64>> {
    let ineqs: Vec<&Vec<i64>> = a.facets(ca)
        .iter()
        .chain(b.facets(cb))
        .map(|f| &f.normal)
        .collect();
    let d = a.dim();
    let mut out = BTreeSet::new();
    for sub in combinations(ineqs.len(), d - 1) {
        let rows: Vec<Vec<i64>> = sub.iter().map(|&i| ineqs[i].clone()).collect();
        let ker = lattice::integer_kernel(&rows, d);
        if ker.len() != 1 {
            continue;
        }
        let w = lattice::primitive(&ker[0]);
        for w in [w.clone(), w.iter().map(|x| -x).collect()] {
            if ineqs.iter().all(|h| lattice::dot(h, &w) >= 0) {
                out.insert(w);
            }
        }
    }
    out.into_iter().collect()
}

/// Full-dimensional cells `σ ∩ σ'`, as (source cone, target cone, rays).
fn refinement_cells(src: &Fan, dst: &Fan) -> Vec<(usize, usize, Vec<Vec<i64>>)> {
    let mut cells = Vec::new();
    for ca in 0..src.cones().len() {
        for cb in 0..dst.cones().len() {
            let rays = intersection_rays(src, ca, dst, cb);
            if rays.len() >= src.dim() && lattice::integer_kernel(&rays, src.dim()).is_empty() {
                cells.push((ca, cb, rays));
            }
        }
    }
    cells
}

/// `d!` times the volume of `C ∩ {h <= 1}` for the full cone `C` on `gens`.
fn truncated_volume(gens: &[Vec<i64>], h: &[i64]) -> Rational {
    triangulate_cone(gens)
        .iter()
        .map(|s| {
            let rows: Vec<Vec<i64>> = s.iter().map(|&i| gens[i].clone()).collect();
            let det = Rational::from_integer(lattice::det(&rows).abs().into());
            let denom = s
                .iter()
                .fold(Rational::one(), |acc, &i| acc * Rational::from_integer(lattice::dot(h, &gens[i]).into()));
            det / denom
        })
        .fold(Rational::zero(), |a, b| a + b)
}

/// Every cone of `a` is covered by the cells it forms with `b`, measured by
/// a truncated volume.
fn covered_by(a: &Fan, b: &Fan) -> bool {
    for ca in 0..a.cones().len() {
        let h: Vec<i64> = (0..a.dim())
            .map(|j| a.facets(ca).iter().map(|f| f.normal[j]).sum())
            .collect();
        let whole = truncated_volume(&a.cone_rays(ca), &h);
        let mut parts = Rational::zero();
        for cb in 0..b.cones().len() {
            let rays = intersection_rays(a, ca, b, cb);
            if rays.len() >= a.dim() && lattice::integer_kernel(&rays, a.dim()).is_empty() {
                parts += truncated_volume(&rays, &h);
            }
        }
        if parts != whole {
            return false;
        }
    }
    true
}

pub fn check_same_support(src: &Fan, dst: &Fan) -> Result<()> {
    if src.dim() != dst.dim() {
        return Err(Error::SupportMismatch("dimensions differ".into()));
    }
    let same = if src.is_complete() || dst.is_complete() {
        src.is_complete() && dst.is_complete()
    } else {
        covered_by(src, dst) && covered_by(dst, src)
    };
    if same {
        Ok(())
    } else {
        Err(Error::SupportMismatch("cones are not mutually covered".into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShedComparison {
    /// `shed(dst) ⊊ shed(src)`.
    Strict,
    Equal,
    /// `shed(src) ⊊ shed(dst)`.
    Reverse,
    Incomparable,
}

/// Compare the sheds `{κ <= 1}` cell by cell on the common refinement.
pub fn shed_inclusion(src: &Fan, dst: &Fan) -> Result<ShedComparison> {
    check_same_support(src, dst)?;
    let ks = Kappa::of(src)?;
    let kd = Kappa::of(dst)?;
    let (mut more, mut less) = (false, false);
    for (ca, cb, rays) in refinement_cells(src, dst) {
        for w in &rays {
            let a = ks.eval_in(ca, w);
            let b = kd.eval_in(cb, w);
            more |= b > a;
            less |= b < a;
        }
    }
    Ok(match (more, less) {
        (false, false) => ShedComparison::Equal,
        (true, false) => ShedComparison::Strict,
        (false, true) => ShedComparison::Reverse,
        (true, true) => ShedComparison::Incomparable,
    })
}

/// The fan of cells `σ ∩ σ'`.
pub fn common_refinement(src: &Fan, dst: &Fan) -> Result<Fan> {
    check_same_support(src, dst)?;
    let cells = refinement_cells(src, dst);
    let mut rays: Vec<Vec<i64>> = Vec::new();
    let mut cones = Vec::new();
    for (_, _, cell) in &cells {
        let mut cone = Vec::new();
        for w in cell {
            let i = match rays.iter().position(|r| r == w) {
                Some(i) => i,
                None => {
                    rays.push(w.clone());
                    rays.len() - 1
                }
            };
            cone.push(i);
        }
        cones.push(cone);
    }
    Fan::new(src.dim(), rays, cones)
}

/// Stringy Euler number three ways; they must agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerTriple {
    pub resolution: String,
    pub lattice_sum: String,
    pub shed: String,
}

/// Stringy Euler number from the resolution datum (both stratum sums), the
/// limit of the lattice sum at `q = 1`, and the shed volume; they must agree.
/// Works with numbers only, so the cost does not grow with the index.
pub fn euler_three_ways(fan: &Fan) -> Result<Rational> {
    let e_res = resolve(fan, Strategy::FirstMinimal)?.datum()?.stringy_euler()?;
    let e_lat = stringy_betti_lattice_sum(fan)?.limit_at_one()?;
    let e_shed = shed_volume(fan)?;
    if e_res != e_lat || e_res != e_shed {
        return Err(Error::Assertion(format!(
            "Euler numbers disagree: resolution {e_res}, lattice sum {e_lat}, shed {e_shed}"
        )));
    }
    Ok(e_res)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveVerdict {
    pub classification: MoveClassification,
    pub e_src: Rational,
    pub e_dst: Rational,
    pub shed: ShedComparison,
    /// Discrepancy comparison on a common resolution (contractions and flips).
    pub monotone: Option<MonotoneVerdict>,
    /// Strict decrease for contractions and flips, equal stringy functions
    /// for K-equivalent moves.
    pub holds: bool,
    pub note: String,
}

/// Stringy Euler numbers across a move, with the discrepancy comparison on a
/// common resolution.
pub fn monotonicity_verdict(src: &Fan, dst: &Fan) -> Result<MoveVerdict> {
    let class = classify_modification(src, dst)?;
    let e_src = euler_three_ways(src)?;
    let e_dst = euler_three_ways(dst)?;
    let shed = shed_inclusion(src, dst)?;
    match class.kind {
        MoveKind::DivisorialContraction | MoveKind::Flip => {}
        MoveKind::Flop | MoveKind::CrepantModification => {
            let f_src = resolve(src, Strategy::FirstMinimal)?.stringy_function()?;
            let f_dst = resolve(dst, Strategy::FirstMinimal)?.stringy_function()?;
            let holds = f_src == f_dst;
            return Ok(MoveVerdict {
                classification: class,
                e_src,
                e_dst,
                shed,
                monotone: None,
                holds,
                note: if holds {
                    "not applicable: K-equivalent, equal stringy functions expected and observed".into()
                } else {
                    "K-equivalent fans with different stringy functions".into()
                },
            });
        }
        MoveKind::Unrecognized => {
            return Err(Error::NotAMoriMove(
                class.diagnostic.unwrap_or_else(|| "unrecognized".into()),
            ))
        }
    }
    let monotone = common_resolution_comparison(src, dst)?;
    if monotone.left != e_src || monotone.right != e_dst {
        return Err(Error::Assertion(format!(
            "common resolution gives {} and {}, expected {e_src} and {e_dst}",
            monotone.left, monotone.right
        )));
    }
    let holds = e_src > e_dst && monotone.holds;
    let note = if holds {
        format!("{e_src} > {e_dst}")
    } else {
        format!("no strict decrease: {e_src} vs {e_dst}")
    };
    Ok(MoveVerdict {
        classification: class,
        e_src,
        e_dst,
        shed,
        monotone: Some(monotone),
        holds,
        note,
    })
}

/// On a smooth fan refining both sides, compare discrepancies of every ray
/// with respect to `src` and to `dst`.
pub fn common_resolution_comparison(src: &Fan, dst: &Fan) -> Result<MonotoneVerdict> {
    let refinement = common_refinement(src, dst)?;
    let y = resolve(&refinement, Strategy::FirstMinimal)?.fan;
    let ks = Kappa::of(src)?;
    let kd = Kappa::of(dst)?;
    let r = ks.index().lcm(&kd.index());
    let all: Vec<usize> = (0..y.rays().len()).collect();
    let disc = |fan: &Fan, k: &Kappa| -> Result<Vec<Rational>> {
        y.rays()
            .iter()
            .map(|v| Ok(k.eval(fan, v)? - Rational::one()))
            .collect()
    };
    let a = disc(src, &ks)?;
    let a_plus = disc(dst, &kd)?;
    let datum = toric_strata_datum(&y, &all, &a, r)?;
    datum.compare_monotone(&a, &a_plus)
}
