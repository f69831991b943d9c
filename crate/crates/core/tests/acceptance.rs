//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are printed by a plain `cargo test`.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use serde_json::Value;

use stringy::io::{self, Input};
use stringy::mori::{self, euler_three_ways, k_degree_sign, walls_of, MoveKind};
use stringy::orbit::{euler_homogeneous, Catalog, GroupDesc, OrbitDesc};
use stringy::scan;
use stringy::toric::{corpus, independence_check, resolve, stringy_betti_lattice_sum, Fan, Kappa, Strategy};
use stringy::{Error, RatFun, Rational};

type Outcome = Result<String, String>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    std::fs::read_to_string(p).expect("fixture exists")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    format!("{}: {e}", e.kind())
}

/// `Σ |det|` over consecutive rays of a complete 2D fan, computed directly.
fn det_sum_2d(f: &Fan) -> Rational {
    q(f.cones()
        .iter()
        .map(|c| {
            let (a, b) = (f.ray(c[0]), f.ray(c[1]));
            (a[0] * b[1] - a[1] * b[0]).abs()
        })
        .sum())
}

fn criterion_1() -> Outcome {
    let named = [
        ("p2", corpus::p2(), Some(3)),
        ("p112", corpus::p112(), Some(4)),
        ("p113", corpus::p113(), Some(5)),
        ("p123", corpus::p123(), None),
        ("square_cone", corpus::square_cone(), None),
    ];
    for (name, f, expected) in &named {
        let e = euler_three_ways(f).map_err(err)?;
        if let Some(x) = expected {
            check(e == q(*x), || format!("{name}: {e} != {x}"))?;
        }
        if f.dim() == 2 {
            check(e == det_sum_2d(f), || format!("{name}: determinant sum differs"))?;
        }
    }
    let mut g = scan::rng(20240601);
    for i in 0..50 {
        let f = scan::random_complete_fan(&mut g, 4, 8);
        let e = euler_three_ways(&f).map_err(err)?;
        check(e == det_sum_2d(&f), || format!("random fan {i}: {e} vs determinant sum"))?;
    }
    Ok("5 named fans and 50 random fans (seed 20240601), resolution = lattice sum = shed".into())
}

fn criterion_2() -> Outcome {
    let expected: Value = serde_json::from_str(&fixture("expected.json")).unwrap();
    for (name, f) in [("p2", corpus::p2()), ("p112", corpus::p112())] {
        let want = RatFun::parse(expected["betti_top"][name].as_str().unwrap(), 2).map_err(err)?;
        let lattice = stringy_betti_lattice_sum(&f).map_err(err)?;
        let res = resolve(&f, Strategy::FirstMinimal)
            .and_then(|r| r.stringy_function())
            .map_err(err)?
            .betti_top();
        check(lattice == want, || format!("{name}: lattice sum gives {lattice}"))?;
        check(res == want, || format!("{name}: resolution gives {res}"))?;
    }
    Ok("P2: t^4 + t^2 + 1, P(1,1,2): t^4 + 2t^2 + 1".into())
}

fn criterion_3() -> Outcome {
    let mut differ = 0;
    let all = corpus::all();
    for (name, f) in &all {
        let c = independence_check(f).map_err(err)?;
        check(c.identical, || format!("{name}: resolutions disagree"))?;
        differ += usize::from(c.fans_differ);
    }
    check(differ > 0, || "tie-breaking never changed the resolution".into())?;
    Ok(format!(
        "{} corpus fans, 3 resolutions each; tie-breaks gave different fans for {differ}",
        all.len()
    ))
}

fn criterion_4() -> Outcome {
    let mut data = Vec::new();
    for (_, f) in corpus::all() {
        let r = resolve(&f, Strategy::FirstMinimal).map_err(err)?;
        data.push(r.datum().map_err(err)?);
        let all: Vec<usize> = (0..r.fan.rays().len()).collect();
        data.push(r.datum_with(&all).map_err(err)?);
    }
    let Input::Datum(pair) = io::parse_input(&fixture("pair.json")).map_err(err)? else {
        return Err("pair fixture is not a datum".into());
    };
    data.push(pair);
    let corpus_count = data.len();
    let mut g = scan::rng(4);
    data.extend((0..100).map(|_| scan::random_datum(&mut g)));
    for (i, d) in data.iter().enumerate() {
        let (open, closed) = d.stringy_function_forms().map_err(err)?;
        check(open == closed, || format!("datum {i}: forms differ"))?;
        let (eo, ec) = d.stringy_euler_forms().map_err(err)?;
        check(eo == ec, || format!("datum {i}: Euler forms differ"))?;
    }
    Ok(format!("{corpus_count} corpus data and 100 random data (seed 4)"))
}

fn criterion_5() -> Outcome {
    let v = mori::monotonicity_verdict(&corpus::blp2(), &corpus::p2()).map_err(err)?;
    check(v.classification.kind == MoveKind::DivisorialContraction, || "blow-down not classified".into())?;
    check(v.holds && v.e_src == q(4) && v.e_dst == q(3), || format!("blow-down: {} -> {}", v.e_src, v.e_dst))?;
    let v = mori::monotonicity_verdict(&corpus::flip_a(), &corpus::flip_b()).map_err(err)?;
    check(v.classification.kind == MoveKind::Flip, || "flip not classified".into())?;
    check(v.holds && v.e_src == q(3) && v.e_dst == q(2), || format!("flip: {} -> {}", v.e_src, v.e_dst))?;
    let v = mori::monotonicity_verdict(&corpus::flop_a(), &corpus::flop_b()).map_err(err)?;
    check(v.classification.kind == MoveKind::Flop && v.holds, || "flop functions differ".into())?;
    let fa = resolve(&corpus::flop_a(), Strategy::FirstMinimal).and_then(|r| r.stringy_function());
    let fb = resolve(&corpus::flop_b(), Strategy::FirstMinimal).and_then(|r| r.stringy_function());
    check(fa.map_err(err)? == fb.map_err(err)?, || "flop functions differ".into())?;
    let r = scan::contraction_scan(5, 100, 4).map_err(err)?;
    check(r.violations == 0 && r.cases.len() == 100, || format!("{} violations", r.violations))?;
    Ok("4 > 3, 3 > 2, flop equal; 100 random contractions (seed 5) all decrease".into())
}

fn criterion_6() -> Outcome {
    let mut fans: Vec<(String, Fan)> = Vec::new();
    for (name, f) in corpus::all() {
        let r = resolve(&f, Strategy::FirstMinimal).map_err(err)?;
        fans.push((format!("{name} resolved"), r.fan));
        if f.is_simplicial() {
            fans.push((name.to_string(), f));
        }
    }
    let mut walls = 0;
    for (name, f) in &fans {
        let k = Kappa::of(f).map_err(err)?;
        for w in walls_of(f).map_err(err)? {
            k_degree_sign(f, &k, &w).map_err(|e| format!("{name}: {}", err(e)))?;
            walls += 1;
        }
    }
    Ok(format!("{walls} walls on {} fans, zero violations", fans.len()))
}

fn criterion_7() -> Outcome {
    let cat = Catalog::builtin();
    let e = |g: &str, h: &str, p| {
        euler_homogeneous(&OrbitDesc::new(cat.group(g).unwrap().clone(), cat.group(h).unwrap().clone(), p))
    };
    check(e("SL2", "T1", false).map_err(err)? == q(2), || "SL2/T".into())?;
    check(e("SL2", "U", false).map_err(err)? == q(0), || "SL2/U".into())?;
    check(e("SL3", "B_SL3", true).map_err(err)? == q(6), || "SL3/B".into())?;
    let values = cat.evaluate().map_err(err)?;
    check(values.iter().all(|(_, v)| v.is_integer() && *v >= q(0)), || "non-integral catalog value".into())?;
    let bad = OrbitDesc::new(GroupDesc::new("G", 2, 6), GroupDesc::new("H", 2, 4), false);
    check(matches!(euler_homogeneous(&bad), Err(Error::Catalog(_))), || "4 does not divide 6 but was accepted".into())?;
    Ok(format!("SL2/T = 2, SL2/U = 0, SL3/B = 6; {} catalog entries integral", values.len()))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let r = scan::exhaustive_2d(3, 1 << 26).map_err(err)?;
    let took = t.elapsed();
    check(r.dp_agrees, || "enumeration and dynamic programming disagree".into())?;
    check(
        r.positivity_violations == 0 && r.strong_violations == 0,
        || format!("{} violations", r.strong_violations),
    )?;
    check(r.min_euler == 3, || format!("minimum {}", r.min_euler))?;
    check(took < Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!(
        "{} fans in [-3,3]^2, min e = {}, zero violations, {} checked through the full pipeline, {:.1}s",
        r.fans,
        r.min_euler,
        r.pipeline_checked,
        took.as_secs_f64()
    ))
}

fn criterion_9() -> Outcome {
    let Input::Datum(pair) = io::parse_input(&fixture("pair.json")).map_err(err)? else {
        return Err("pair fixture is not a datum".into());
    };
    let e = pair.stringy_euler().map_err(err)?;
    check(e == q(3), || format!("e = {e}"))?;
    for mult in ["1", "3/2"] {
        let text = fixture("pair.json").replace("1/2", mult);
        check(
            matches!(io::parse_input(&text), Err(Error::NotLogTerminal(_))),
            || format!("multiplicity {mult} accepted"),
        )?;
    }
    Ok("e(P1, 1/2 pt) = 3; multiplicities 1 and 3/2 rejected".into())
}

fn criterion_10() -> Outcome {
    let all = corpus::all();
    for (name, f) in &all {
        let d = resolve(f, Strategy::FirstMinimal)
            .and_then(|r| r.datum())
            .map_err(err)?;
        let (alg, passthrough) = d.stringy_betti_alg().map_err(err)?;
        check(!passthrough, || format!("{name}: no algebraic tables"))?;
        let top = d.stringy_function().map_err(err)?.betti_top();
        check(alg.render("q") == top.render("q"), || format!("{name}: {alg} vs {top}"))?;
    }
    Ok(format!("{} corpus fans, identical renderings", all.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("three-way Euler agreement", criterion_1),
        ("toric formula fidelity", criterion_2),
        ("resolution independence", criterion_3),
        ("two-form identity", criterion_4),
        ("Mori monotonicity", criterion_5),
        ("wall-criterion equivalence", criterion_6),
        ("orbit calculus", criterion_7),
        ("positivity scan", criterion_8),
        ("Kawamata pair", criterion_9),
        ("B_alg = B_top on the toric corpus", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
