//! Seeded and exhaustive searches over complete 2D fans, random K-negative
//! contractions, and random abstract resolution data.

use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mori::{euler_three_ways, monotonicity_verdict, MoveKind, ShedComparison};
use crate::stringy::{Divisor, Subset};
use crate::toric::{lattice, resolve, Fan, Strategy};
use crate::{HodgePoly, Integer, Rational, ResolutionDatum};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn half(v: &[i64; 2]) -> u8 {
    if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
        0
    } else {
        1
    }
}

fn det2(a: &[i64; 2], b: &[i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Primitive vectors of `[-n, n]^2`, counterclockwise from `(1, 0)`.
pub fn primitive_box(n: i64) -> Vec<[i64; 2]> {
    let mut out: Vec<[i64; 2]> = (-n..=n)
        .flat_map(|x| (-n..=n).map(move |y| [x, y]))
        .filter(|v| lattice::is_primitive(v))
        .collect();
    out.sort_by(|a, b| half(a).cmp(&half(b)).then_with(|| 0.cmp(&det2(a, b))));
    out
}

/// The complete fan on rays listed counterclockwise, or `None` if some
/// consecutive pair is not a strictly convex cone.
pub fn cyclic_fan(rays: &[[i64; 2]]) -> Option<Fan> {
    let k = rays.len();
    if k < 3 || (0..k).any(|i| det2(&rays[i], &rays[(i + 1) % k]) <= 0) {
        return None;
    }
    let cones = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
    Fan::new(2, rays.iter().map(|r| r.to_vec()).collect(), cones).ok()
}

/// A complete fan on between 3 and `max_rays` rays drawn from `[-n, n]^2`.
pub fn random_complete_fan(rng: &mut impl Rng, n: i64, max_rays: usize) -> Fan {
    let pool = primitive_box(n);
    loop {
        let k = rng.gen_range(3..=max_rays.min(pool.len()));
        let mut idx = sample(rng, pool.len(), k).into_vec();
        idx.sort_unstable();
        let rays: Vec<[i64; 2]> = idx.iter().map(|&i| pool[i]).collect();
        if let Some(f) = cyclic_fan(&rays) {
            return f;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub ray_bound: i64,
    pub primitive_rays: usize,
    pub fans: u64,
    pub smooth_fans: u64,
    pub min_euler: i64,
    pub max_euler: i64,
    /// `e <= 0`.
    pub positivity_violations: u64,
    /// `e < d + 1 = 3`.
    pub strong_violations: u64,
    /// `e` below the number of maximal cones.
    pub cone_count_violations: u64,
    /// Fans with `e < 3`, ray lists, at most 100.
    pub counterexamples: Vec<Vec<[i64; 2]>>,
    /// Fans re-run through resolution, lattice sum and shed.
    pub pipeline_checked: usize,
    /// Count and extremes recomputed by dynamic programming agree.
    pub dp_agrees: bool,
}

struct Walk<'a> {
    v: &'a [[i64; 2]],
    det: Vec<Vec<i64>>,
    first: usize,
    chain: Vec<usize>,
    stats: ExhaustiveReport,
    leaves: u64,
    sample_every: u64,
    samples: Vec<(Vec<[i64; 2]>, i64)>,
}

impl Walk<'_> {
    fn go(&mut self, cur: usize, shed: i64, smooth: bool) {
        let m = self.v.len();
        let close = self.det[cur][self.first];
        if close > 0 && self.chain.len() >= 3 {
            self.leaf(shed + close, smooth && close == 1);
        }
        for j in cur + 1..m {
            let d = self.det[cur][j];
            if d > 0 {
                self.chain.push(j);
                self.go(j, shed + d, smooth && d == 1);
                self.chain.pop();
            }
        }
    }

    fn leaf(&mut self, e: i64, smooth: bool) {
        let s = &mut self.stats;
        s.fans += 1;
        s.smooth_fans += u64::from(smooth);
        s.min_euler = s.min_euler.min(e);
        s.max_euler = s.max_euler.max(e);
        let cones = self.chain.len() as i64;
        if e <= 0 {
            s.positivity_violations += 1;
        }
        if e < 3 {
            s.strong_violations += 1;
            if s.counterexamples.len() < 100 {
                s.counterexamples.push(self.chain.iter().map(|&i| self.v[i]).collect());
            }
        }
        if e < cones {
            s.cone_count_violations += 1;
        }
        if self.leaves % self.sample_every == 0 {
            self.samples.push((self.chain.iter().map(|&i| self.v[i]).collect(), e));
        }
        self.leaves += 1;
    }
}

fn merge(into: &mut ExhaustiveReport, part: ExhaustiveReport) {
    into.fans += part.fans;
    into.smooth_fans += part.smooth_fans;
    into.min_euler = into.min_euler.min(part.min_euler);
    into.max_euler = into.max_euler.max(part.max_euler);
    into.positivity_violations += part.positivity_violations;
    into.strong_violations += part.strong_violations;
    into.cone_count_violations += part.cone_count_violations;
    for c in part.counterexamples {
        if into.counterexamples.len() < 100 {
            into.counterexamples.push(c);
        }
    }
}

/// Every complete fan with rays in `[-n, n]^2`. For a simplicial 2D fan
/// the stringy Euler number is the shed volume, the sum of `det` over
/// consecutive rays, so each fan costs one addition per cone. Every
/// `sample_every`-th fan of each branch is also pushed through the full
/// pipeline.
pub fn exhaustive_2d(n: i64, sample_every: u64) -> Result<ExhaustiveReport> {
    let v = primitive_box(n);
    let m = v.len();
    let det: Vec<Vec<i64>> = v.iter().map(|a| v.iter().map(|b| det2(a, b)).collect()).collect();
    // branches: (first, second)
    let tasks: Vec<(usize, usize)> = (0..m)
        .flat_map(|f| (f + 1..m).map(move |s| (f, s)))
        .filter(|&(f, s)| det[f][s] > 0)
        .collect();
    let empty = ExhaustiveReport {
        min_euler: i64::MAX,
        max_euler: i64::MIN,
        ..Default::default()
    };
    let results: Mutex<Vec<Option<(ExhaustiveReport, Vec<(Vec<[i64; 2]>, i64)>)>>> =
        Mutex::new(vec![None; tasks.len()]);
    let next = AtomicUsize::new(0);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, AtomicOrdering::Relaxed);
                if t >= tasks.len() {
                    break;
                }
                let (f, s) = tasks[t];
                let mut w = Walk {
                    v: &v,
                    det: det.clone(),
                    first: f,
                    chain: vec![f, s],
                    stats: empty.clone(),
                    leaves: 0,
                    sample_every: sample_every.max(1),
                    samples: Vec::new(),
                };
                w.go(s, det[f][s], det[f][s] == 1);
                results.lock().unwrap()[t] = Some((w.stats, w.samples));
            });
        }
    });
    let mut report = ExhaustiveReport {
        ray_bound: n,
        primitive_rays: m,
        ..empty
    };
    let mut samples = Vec::new();
    for r in results.into_inner().unwrap() {
        let (stats, s) = r.expect("every branch ran");
        merge(&mut report, stats);
        samples.extend(s);
    }
    for (rays, e) in &samples {
        let fan = cyclic_fan(rays).ok_or_else(|| Error::Assertion(format!("scan produced a non-fan {rays:?}")))?;
        let e_full = euler_three_ways(&fan)?;
        if e_full != Rational::from_integer((*e).into()) {
            return Err(Error::Assertion(format!("fan {rays:?}: scan has {e}, pipeline {e_full}")));
        }
    }
    report.pipeline_checked = samples.len();
    let (count, lo, hi) = dp_2d(&det);
    report.dp_agrees = count == u128::from(report.fans) && lo == report.min_euler && hi == report.max_euler;
    Ok(report)
}

/// Fan count and extreme shed volumes by dynamic programming over the
/// angular order, independent of the enumeration.
fn dp_2d(det: &[Vec<i64>]) -> (u128, i64, i64) {
    let m = det.len();
    let (mut count, mut lo, mut hi) = (0u128, i64::MAX, i64::MIN);
    for f in 0..m {
        // by chain length 1 and >= 2 (a closed fan needs 3 rays)
        let mut ways = vec![[0u128; 2]; m];
        let mut best = vec![[(i64::MAX, i64::MIN); 2]; m];
        for j in f + 1..m {
            if det[f][j] > 0 {
                ways[j][0] = 1;
                best[j][0] = (det[f][j], det[f][j]);
            }
            for i in f + 1..j {
                if det[i][j] <= 0 {
                    continue;
                }
                for k in 0..2 {
                    if ways[i][k] == 0 {
                        continue;
                    }
                    ways[j][1] += ways[i][k];
                    let (a, b) = best[i][k];
                    let e = &mut best[j][1];
                    e.0 = e.0.min(a + det[i][j]);
                    e.1 = e.1.max(b + det[i][j]);
                }
            }
            if det[j][f] > 0 && ways[j][1] > 0 {
                count += ways[j][1];
                lo = lo.min(best[j][1].0 + det[j][f]);
                hi = hi.max(best[j][1].1 + det[j][f]);
            }
        }
    }
    (count, lo, hi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionCase {
    pub case: usize,
    pub src_rays: Vec<Vec<i64>>,
    pub removed: Vec<i64>,
    pub e_src: String,
    pub e_dst: String,
    pub holds: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractionReport {
    pub seed: u64,
    pub ray_bound: i64,
    pub cases: Vec<ContractionCase>,
    /// Random fans with no contractible ray, skipped.
    pub resampled: usize,
    pub violations: usize,
}

/// Removing ray `i` from a complete 2D fan, if its neighbours still span a
/// strictly convex cone.
pub fn remove_ray_2d(fan: &Fan, i: usize) -> Option<Fan> {
    let nb: Vec<usize> = fan
        .cones()
        .iter()
        .filter(|c| c.contains(&i))
        .map(|c| if c[0] == i { c[1] } else { c[0] })
        .collect();
    if nb.len() != 2 {
        return None;
    }
    let (u, w) = (fan.ray(nb[0]), fan.ray(nb[1]));
    if u[0] * w[1] - u[1] * w[0] == 0 {
        return None;
    }
    let keep: Vec<usize> = (0..fan.rays().len()).filter(|&k| k != i).collect();
    let at = |k: usize| keep.iter().position(|&x| x == k).unwrap();
    let mut cones: Vec<Vec<usize>> = fan
        .cones()
        .iter()
        .filter(|c| !c.contains(&i))
        .map(|c| c.iter().map(|&k| at(k)).collect())
        .collect();
    cones.push(vec![at(nb[0]), at(nb[1])]);
    let rays = keep.iter().map(|&k| fan.ray(k).to_vec()).collect();
    Fan::new(2, rays, cones).ok().filter(|f| f.is_complete())
}

/// Rays whose removal is a K-negative divisorial contraction.
pub fn contractible_rays_2d(fan: &Fan) -> Result<Vec<usize>> {
    let walls = crate::mori::negative_walls(fan)?;
    Ok(walls
        .iter()
        .filter(|w| w.facet.len() == 1)
        .map(|w| w.facet[0])
        .filter(|&i| remove_ray_2d(fan, i).is_some())
        .collect())
}

/// Random smooth complete fans (a resolution of a random fan, sometimes
/// blown up once more) with one contractible ray removed; every case must
/// classify as a divisorial contraction with strict shed inclusion and a
/// strict drop of the stringy Euler number equal to the drop of shed volume.
pub fn contraction_scan(seed: u64, cases: usize, ray_bound: i64) -> Result<ContractionReport> {
    let mut rng = rng(seed);
    let mut report = ContractionReport {
        seed,
        ray_bound,
        cases: Vec::new(),
        resampled: 0,
        violations: 0,
    };
    while report.cases.len() < cases {
        let base = random_complete_fan(&mut rng, ray_bound, 8);
        let mut y = resolve(&base, Strategy::FirstMinimal)?.fan;
        if rng.gen_bool(0.5) {
            let c = &y.cones()[rng.gen_range(0..y.cones().len())];
            let w: Vec<i64> = (0..2).map(|j| y.ray(c[0])[j] + y.ray(c[1])[j]).collect();
            y = crate::toric::stellar_subdivide(&y, &w)?.0;
        }
        let cand = contractible_rays_2d(&y)?;
        if cand.is_empty() {
            report.resampled += 1;
            continue;
        }
        let i = cand[rng.gen_range(0..cand.len())];
        let x = remove_ray_2d(&y, i).expect("checked");
        let v = monotonicity_verdict(&y, &x)?;
        let drop_ok = &v.e_src - &v.e_dst
            == crate::toric::shed_volume(&y)? - crate::toric::shed_volume(&x)?;
        let holds = v.holds
            && v.classification.kind == MoveKind::DivisorialContraction
            && v.shed == ShedComparison::Strict
            && drop_ok;
        report.violations += usize::from(!holds);
        report.cases.push(ContractionCase {
            case: report.cases.len(),
            src_rays: y.rays().to_vec(),
            removed: y.ray(i).to_vec(),
            e_src: v.e_src.to_string(),
            e_dst: v.e_dst.to_string(),
            holds,
            note: v.note,
        });
    }
    Ok(report)
}

/// A random abstract datum: up to four divisors, random Hodge polynomials,
/// a few forced-empty intersections.
pub fn random_datum(rng: &mut impl Rng) -> ResolutionDatum {
    let k = rng.gen_range(1..=4usize);
    let r = rng.gen_range(1..=3u64);
    let divisors: Vec<Divisor> = (0..k)
        .map(|i| {
            let p = rng.gen_range(-(r as i64) + 1..=2 * r as i64);
            Divisor::new(format!("E{i}"), Rational::new(p.into(), (r as i64).into()))
        })
        .collect();
    let mut empty: Vec<Subset> = Vec::new();
    if k >= 2 {
        for _ in 0..rng.gen_range(0..=2) {
            let size = rng.gen_range(2..=k);
            let e = Subset::new(sample(rng, k, size).into_vec());
            if !empty.iter().any(|x| x.is_subset_of(&e) || e.is_subset_of(x)) {
                empty.push(e);
            }
        }
    }
    let mut strata = Vec::new();
    for mask in 0u32..(1 << k) {
        let j = Subset::new((0..k).filter(|i| mask >> i & 1 == 1).collect());
        if empty.iter().any(|e| e.is_subset_of(&j)) {
            continue;
        }
        let dim = 3 - j.len().min(3) as u32;
        let entries: Vec<(u32, u32, Integer)> = (0..=dim)
            .flat_map(|p| (0..=dim).map(move |q| (p, q)))
            .map(|(p, q)| (p, q, Integer::from(rng.gen_range(-2i64..=3))))
            .collect();
        let mut e = HodgePoly::from_entries(entries);
        if j.is_empty() && e.is_zero() {
            e = HodgePoly::one();
        }
        strata.push((j, e));
    }
    // zero strata are dropped by validation, so mark them empty as well
    let empty_extra: Vec<Subset> = strata
        .iter()
        .filter(|(j, e)| !j.is_empty() && e.is_zero())
        .map(|(j, _)| j.clone())
        .collect();
    let strata: Vec<(Subset, HodgePoly)> = strata.into_iter().filter(|(j, e)| j.is_empty() || !e.is_zero()).collect();
    let mut all_empty = empty;
    for e in empty_extra {
        if !all_empty.iter().any(|x| x.is_subset_of(&e)) {
            all_empty.push(e);
        }
    }
    let strata: Vec<(Subset, HodgePoly)> = strata
        .into_iter()
        .filter(|(j, _)| !all_empty.iter().any(|e| e.is_subset_of(j)))
        .collect();
    ResolutionDatum::new(r, divisors, strata, all_empty, false).expect("random datum is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_order() {
        let b = primitive_box(1);
        assert_eq!(b.len(), 8);
        assert_eq!(b[0], [1, 0]);
        assert_eq!(b[2], [0, 1]);
        assert_eq!(b[7], [1, -1]);
        assert_eq!(primitive_box(3).len(), 32);
    }

    #[test]
    fn unit_box_scan() {
        let r = exhaustive_2d(1, 1).unwrap();
        assert!(r.dp_agrees);
        assert_eq!(r.min_euler, 3);
        assert_eq!(r.strong_violations, 0);
        assert_eq!(r.cone_count_violations, 0);
        // (1,1), (-1,1), (0,-1) is complete and singular
        assert!(r.smooth_fans < r.fans);
        assert_eq!(r.pipeline_checked as u64, r.fans);
    }

    #[test]
    fn dp_matches_walk_at_two() {
        let r = exhaustive_2d(2, 1 << 12).unwrap();
        assert!(r.dp_agrees);
        assert_eq!(r.min_euler, 3);
    }

    #[test]
    fn random_fans_are_complete_and_seeded() {
        let a: Vec<Fan> = (0..5).scan(rng(7), |g, _| Some(random_complete_fan(g, 4, 8))).collect();
        let b: Vec<Fan> = (0..5).scan(rng(7), |g, _| Some(random_complete_fan(g, 4, 8))).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(Fan::is_complete));
    }

    #[test]
    fn small_contraction_scan() {
        let r = contraction_scan(1, 5, 4).unwrap();
        assert_eq!(r.cases.len(), 5);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn random_data_two_forms() {
        let mut g = rng(3);
        for _ in 0..20 {
            let d = random_datum(&mut g);
            let (open, closed) = d.stringy_function_forms().unwrap();
            assert_eq!(open, closed);
        }
    }
}
