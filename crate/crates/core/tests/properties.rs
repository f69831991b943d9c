use num_traits::{One, Zero};
use proptest::prelude::*;

use stringy::invariants::HodgePoly;
use stringy::mori::{self, euler_three_ways, k_degree_sign, walls_of};
use stringy::orbit::{stratum_euler, Catalog};
use stringy::ratfun::{LaurentPoly, Polynomial};
use stringy::scan::{self, random_complete_fan, random_datum};
use stringy::stringy::{Divisor, Subset};
use stringy::toric::{independence_check, resolve, Kappa, Strategy as Tie};
use stringy::{Integer, RatFun, Rational, ResolutionDatum};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn ratfun() -> impl Strategy<Value = RatFun> {
    (
        prop::collection::vec(-4i64..=4, 1..5),
        -3i64..=3,
        prop::collection::vec(-3i64..=3, 1..4),
    )
        .prop_filter_map("zero denominator", |(n, shift, d)| {
            let den = Polynomial::new(d.iter().map(|&c| q(c, 1)).collect());
            if den.is_zero() {
                return None;
            }
            let num = LaurentPoly::new(shift, Polynomial::new(n.iter().map(|&c| q(c, 1)).collect()));
            RatFun::new(num, LaurentPoly::from_poly(den), 1).ok()
        })
}

fn hodge() -> impl Strategy<Value = HodgePoly> {
    prop::collection::vec((0u32..3, 0u32..3, -3i64..=3), 0..6)
        .prop_map(|v| HodgePoly::from_entries(v.into_iter().map(|(p, q, c)| (p, q, Integer::from(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(a in ratfun(), b in ratfun(), c in ratfun()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RatFun::one(1));
        }
    }

    #[test]
    fn canonical_form_agrees_with_evaluation(a in ratfun(), b in ratfun(), xs in prop::collection::vec((-9i64..=9, 1i64..=5), 20)) {
        let sum = &a + &b;
        let prod = &a * &b;
        for (n, d) in xs {
            let x = q(n, d);
            if let (Ok(fa), Ok(fb)) = (a.eval_at(&x), b.eval_at(&x)) {
                prop_assert_eq!(sum.eval_at(&x).unwrap(), &fa + &fb);
                prop_assert_eq!(prod.eval_at(&x).unwrap(), &fa * &fb);
            }
        }
    }

    #[test]
    fn stringy_factor_limits(r in 1u64..6, p in -5i64..12, s in 1u64..4) {
        prop_assume!(p > -(r as i64));
        let a = q(p, r as i64);
        let f = RatFun::stringy_factor(&a, r, r * s).unwrap();
        prop_assert_eq!(f.limit_at_one().unwrap(), Rational::one() / (a + Rational::one()));
        prop_assert_eq!(RatFun::stringy_factor(&Rational::zero(), r, r * s).unwrap(), RatFun::one(r * s));
    }

    #[test]
    fn order_at_infinity_is_additive(a in ratfun(), b in ratfun(), k in 1u64..4) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!(
            (&a * &b).order_at_infinity().unwrap(),
            a.order_at_infinity().unwrap() + b.order_at_infinity().unwrap()
        );
        prop_assert_eq!((&a + &b).reground(k), &a.reground(k) + &b.reground(k));
        prop_assert_eq!((&a * &b).reground(k), &a.reground(k) * &b.reground(k));
    }

    #[test]
    fn embedding_specializes(h in hodge(), r in 1u64..4) {
        let f = stringy::StringyFunction::embed(&h, r);
        let direct = RatFun::from_laurent(h.betti().compose_power(r), 2 * r);
        prop_assert_eq!(f.betti_top(), direct);
        prop_assert_eq!(f.euler().unwrap(), Rational::from_integer(h.euler()));
        prop_assert_eq!(f.even_part().checked_add(&f.odd_part()).unwrap(), f);
    }

    #[test]
    fn two_forms_and_euler_consistency(seed in any::<u64>()) {
        let d = random_datum(&mut scan::rng(seed));
        let (open, closed) = d.stringy_function_forms().unwrap();
        prop_assert_eq!(&open, &closed);
        prop_assert_eq!(open.euler().unwrap(), d.stringy_euler().unwrap());
    }

    #[test]
    fn single_divisor_monotone(ey in hodge(), ed in 1i64..5, r in 1u64..4, p1 in -3i64..10, p2 in -3i64..10) {
        prop_assume!(p1 < p2 && p1 > -(r as i64));
        let y = if ey.is_zero() { HodgePoly::one() } else { ey };
        let d = ResolutionDatum::new(
            r,
            vec![Divisor::new("D", q(p1, r as i64))],
            vec![(Subset::empty(), y), (Subset::new(vec![0]), HodgePoly::constant(ed.into()))],
            vec![],
            false,
        ).unwrap();
        let e1 = d.euler_with(&[q(p1, r as i64)]).unwrap();
        let e2 = d.euler_with(&[q(p2, r as i64)]).unwrap();
        prop_assert!(e1 > e2);
    }

    #[test]
    fn klt_boundary_blow_up(ey in hodge(), n in 2i64..50) {
        let y = if ey.is_zero() { HodgePoly::one() } else { ey };
        let d = ResolutionDatum::new(
            1,
            vec![Divisor::new("D", Rational::zero())],
            vec![(Subset::empty(), y.clone()), (Subset::new(vec![0]), HodgePoly::one())],
            vec![],
            false,
        ).unwrap();
        // e = e(Y) - 1 + 1/(a + 1), unbounded as a -> -1
        let near = d.euler_with(&[q(1 - n, n)]).unwrap();
        let nearer = d.euler_with(&[q(1 - 10 * n, 10 * n)]).unwrap();
        prop_assert_eq!(&near, &(Rational::from_integer(y.euler()) - Rational::one() + q(n, 1)));
        prop_assert!(nearer > near);
    }

    #[test]
    fn orbit_sums_are_additive(picks in prop::collection::vec(0usize..11, 0..6), split in 0usize..6) {
        let cat = Catalog::builtin();
        let orbits: Vec<_> = picks.iter().map(|&i| cat.resolve(&cat.orbits[i]).unwrap()).collect();
        let k = split.min(orbits.len());
        let whole = stratum_euler(&orbits).unwrap();
        prop_assert!(whole >= Rational::zero());
        prop_assert!(whole.is_integer());
        prop_assert_eq!(whole, stratum_euler(&orbits[..k]).unwrap() + stratum_euler(&orbits[k..]).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_fans_three_ways_and_log_terminal(seed in any::<u64>()) {
        let f = random_complete_fan(&mut scan::rng(seed), 4, 8);
        let e = euler_three_ways(&f).unwrap();
        prop_assert!(e >= q(3, 1));
        let res = resolve(&f, Tie::LastMaximal).unwrap();
        for i in res.exceptional() {
            prop_assert!(res.discrepancy(i).unwrap() > q(-1, 1));
        }
    }

    #[test]
    fn small_fans_resolve_independently(seed in any::<u64>()) {
        let f = random_complete_fan(&mut scan::rng(seed), 2, 6);
        let c = independence_check(&f).unwrap();
        prop_assert!(c.identical);
        // adding the original rays with discrepancy 0 changes nothing
        let res = resolve(&f, Tie::FirstMinimal).unwrap();
        let all: Vec<usize> = (0..res.fan.rays().len()).collect();
        prop_assert_eq!(
            res.datum_with(&all).unwrap().stringy_function().unwrap(),
            res.stringy_function().unwrap()
        );
    }

    #[test]
    fn wall_criteria_agree(seed in any::<u64>()) {
        let f = random_complete_fan(&mut scan::rng(seed), 4, 8);
        let k = Kappa::of(&f).unwrap();
        for w in walls_of(&f).unwrap() {
            prop_assert!(k_degree_sign(&f, &k, &w).is_ok());
        }
    }

    #[test]
    fn reid_consistency(seed in any::<u64>()) {
        let r = scan::contraction_scan(seed, 1, 3).unwrap();
        prop_assert_eq!(r.violations, 0);
        let f = random_complete_fan(&mut scan::rng(seed), 3, 7);
        for i in scan::contractible_rays_2d(&f).unwrap() {
            let g = scan::remove_ray_2d(&f, i).unwrap();
            let c = mori::classify_modification(&f, &g).unwrap();
            prop_assert_eq!(c.kind, mori::MoveKind::DivisorialContraction);
            prop_assert_eq!(mori::shed_inclusion(&f, &g).unwrap(), mori::ShedComparison::Strict);
        }
    }
}
