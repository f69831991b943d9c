use num_traits::{Signed, Zero};

use crate::linalg;
use crate::{Integer, Rational};

use super::lattice;

/// A lattice point `Σ λ_i v_i` with `0 <= λ_i < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxPoint {
    pub point: Vec<i64>,
    pub lambda: Vec<Rational>,
}

impl BoxPoint {
    /// `Σ λ_i`: the value of κ when κ is 1 on the cone's rays.
    pub fn level(&self) -> Rational {
        self.lambda.iter().fold(Rational::zero(), |a, x| a + x)
    }

    /// Positions with `λ_i > 0`.
    pub fn support(&self) -> Vec<usize> {
        (0..self.lambda.len()).filter(|&i| self.lambda[i].is_positive()).collect()
    }
}

/// Box points of the simplicial cone on the linearly independent `rays`,
/// relative to the saturated lattice in their span, sorted by coordinates.
/// There are `[N ∩ span : Z·rays]` of them, `|det|` for a full cone.
pub fn box_points(rays: &[Vec<i64>]) -> Vec<BoxPoint> {
    let d = rays[0].len();
    let k = rays.len();
    if k == d {
        return full_box(rays);
    }
    // express the rays in a basis w of N ∩ span(rays)
    let w = lattice::saturation(rays, d);
    let cols: Vec<Vec<Rational>> = (0..d)
        .map(|j| w.iter().map(|b| Rational::from_integer(b[j].into())).collect())
        .collect();
    let local: Vec<Vec<i64>> = rays
        .iter()
        .map(|v| {
            linalg::solve(&cols, &lattice::to_rational(v))
                .expect("ray lies in its span")
                .iter()
                .map(|x| i64::try_from(x.to_integer()).unwrap())
                .collect()
        })
        .collect();
    let mut out: Vec<BoxPoint> = full_box(&local)
        .into_iter()
        .map(|b| BoxPoint {
            point: (0..d)
                .map(|j| b.point.iter().zip(&w).map(|(c, wi)| c * wi[j]).sum())
                .collect(),
            lambda: b.lambda,
        })
        .collect();
    out.sort_by(|a, b| a.point.cmp(&b.point));
    out
}

fn full_box(rays: &[Vec<i64>]) -> Vec<BoxPoint> {
    let d = rays.len();
    let h = lattice::hermite(rays);
    let bounds: Vec<i128> = (0..d).map(|i| h[i][i]).collect();
    // c = Σ λ_i v_i  <=>  V^T λ = c
    let vt: Vec<Vec<Rational>> = (0..d)
        .map(|j| rays.iter().map(|v| Rational::from_integer(v[j].into())).collect())
        .collect();
    let mut out = Vec::new();
    let mut c = vec![0i128; d];
    loop {
        let target: Vec<Rational> = c.iter().map(|&x| Rational::from_integer(Integer::from(x))).collect();
        let lam = linalg::solve(&vt, &target).expect("rays are independent");
        let lambda: Vec<Rational> = lam.iter().map(|x| x - x.floor()).collect();
        let point: Vec<i64> = (0..d)
            .map(|j| {
                let s = lambda
                    .iter()
                    .zip(rays)
                    .fold(Rational::zero(), |a, (l, v)| a + l * Rational::from_integer(v[j].into()));
                debug_assert!(s.is_integer());
                i64::try_from(s.to_integer()).unwrap()
            })
            .collect();
        out.push(BoxPoint { point, lambda });
        // odometer over 0 <= c_i < h_ii
        let mut i = 0;
        loop {
            if i == d {
                out.sort_by(|a, b| a.point.cmp(&b.point));
                return out;
            }
            c[i] += 1;
            if c[i] < bounds[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn unimodular_cone() {
        let b = box_points(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].point, vec![0, 0]);
    }

    #[test]
    fn multiplicity_two() {
        let b = box_points(&[vec![1, 0], vec![1, 2]]);
        assert_eq!(b.len(), 2);
        assert_eq!(b[1].point, vec![1, 1]);
        assert_eq!(b[1].lambda, vec![q(1, 2), q(1, 2)]);
    }

    #[test]
    fn multiplicity_three() {
        let b = box_points(&[vec![1, 0], vec![-1, -3]]);
        assert_eq!(b.len(), 3);
        assert!(b.iter().any(|p| p.point == vec![0, -1] && p.level() == q(2, 3)));
    }

    #[test]
    fn lower_dimensional_cone_uses_saturated_lattice() {
        // 2x2 minors (1, 1, -2) are coprime
        let b = box_points(&[vec![1, 1, 1], vec![2, 0, 1]]);
        assert_eq!(b.len(), 1);
        // minors (0, 0, 2)
        let b = box_points(&[vec![1, 0, 0], vec![1, 2, 0]]);
        assert_eq!(b.len(), 2);
        assert_eq!(b[1].point, vec![1, 1, 0]);
    }

    #[test]
    fn counts_match_determinants() {
        for rays in [
            vec![vec![1, 0, 0], vec![0, 0, 1], vec![1, 2, -1]],
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
            vec![vec![3, 1], vec![-2, 5]],
        ] {
            let det = lattice::det(&rays).unsigned_abs() as usize;
            let b = box_points(&rays);
            assert_eq!(b.len(), det);
            assert!(b.iter().all(|p| p.lambda.iter().all(|l| !l.is_negative() && *l < q(1, 1))));
        }
    }
}
