use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stringy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("json output"))
}

#[test]
fn plane_euler_three_ways() {
    let o = run(&["stringy", &fixture("p2.json"), "--invariant", "euler"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "euler (resolution): 3\neuler (lattice sum): 3\neuler (shed): 3\n"
    );
}

#[test]
fn weighted_plane_betti_top() {
    let (code, v) = json(&["stringy", &fixture("p113.json"), "--invariant", "betti-top"]);
    assert_eq!(code, 0);
    assert_eq!(v["note"], "q = t^(1/3)");
    assert_eq!(v["euler"], "5");
    assert_eq!(v["euler_three_ways"]["shed"], "5");
}

#[test]
fn pair_and_klt_rejection() {
    let (code, v) = json(&["stringy", &fixture("pair.json"), "--invariant", "euler"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "3");
    let o = run(&["stringy", &fixture("pair_not_klt.json")]);
    assert_eq!(o.status.code(), Some(1));
    let err: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(err["error"], "NotLogTerminal");
}

#[test]
fn independence() {
    let o = run(&["verify-independence", &fixture("p112.json")]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("independence: pass"));
}

#[test]
fn moves() {
    let (code, v) = json(&["classify-move", &fixture("blp2.json"), &fixture("p2.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["kind"], "DivisorialContraction");
    assert_eq!(v["e_str"]["src"], "4");
    assert_eq!(v["e_str"]["dst"], "3");
    assert_eq!(v["shed"]["src_vol"], "4");
    assert_eq!(v["holds"], true);

    let (_, v) = json(&["classify-move", &fixture("flip_a.json"), &fixture("flip_b.json")]);
    assert_eq!(v["kind"], "Flip");
    assert_eq!((v["e_str"]["src"].as_str(), v["e_str"]["dst"].as_str()), (Some("3"), Some("2")));

    let (_, v) = json(&["classify-move", &fixture("flop_a.json"), &fixture("flop_b.json")]);
    assert_eq!(v["kind"], "Flop");
    assert_eq!(v["e_str"]["src"], v["e_str"]["dst"]);

    let o = run(&["classify-move", &fixture("flip_b.json"), &fixture("flip_a.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("NotAMoriMove"));

    let o = run(&["classify-move", &fixture("p2.json"), &fixture("flip_a.json")]);
    assert!(stdout(&o).contains("SupportMismatch"));
}

#[test]
fn betti_alg_matches_betti_top() {
    for f in ["p2.json", "p112.json", "p113.json", "p123.json", "blp2.json", "square_cone.json", "flip_a.json"] {
        let (_, top) = json(&["stringy", &fixture(f), "--invariant", "betti-top"]);
        let (_, alg) = json(&["stringy", &fixture(f), "--invariant", "betti-alg"]);
        assert_eq!(top["value"], alg["value"], "{f}");
        assert!(alg.get("note").map_or(true, |n| !n.as_str().unwrap().contains("assumed")));
    }
}

#[test]
fn schema_detection() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("both.json");
    std::fs::write(&p, r#"{"dim": 1, "rays": [[1]], "max_cones": [[0]], "divisors": []}"#).unwrap();
    let o = run(&["stringy", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("ambiguous"));
    let o = run(&["shed", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn csv_rows() {
    let o = run(&["shed", &fixture("p123.json"), "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("input,invariant,value,witness"));
    assert!(lines.next().unwrap().ends_with(",shed volume,6,"));
}

#[test]
fn scans_are_deterministic() {
    let args = ["scan", "--kind", "random", "--cases", "5", "--seed", "11", "--ray-bound", "4", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    assert_eq!(v["violations"], 0);

    let (code, v) = json(&["scan", "--kind", "contraction", "--cases", "5", "--seed", "2", "--ray-bound", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["violations"], 0);

    let (code, v) = json(&["scan", "--ray-bound", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["report"]["min_euler"], 3);
    let o = run(&["scan", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn orbit_catalogs() {
    let (code, v) = json(&["orbit-euler"]);
    assert_eq!(code, 0);
    let sl2t = v["orbits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|o| o["G"] == "SL2" && o["H"] == "T1")
        .unwrap();
    assert_eq!(sl2t["euler"], "2");
    let (_, v) = json(&["orbit-euler", &fixture("catalog.json")]);
    assert_eq!(v["orbits"][2]["euler"], "6");
}

#[test]
fn resolve_reports_discrepancies() {
    let (code, v) = json(&["resolve", &fixture("p113.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["added"][0]["ray"], serde_json::json!([0, -1]));
    assert_eq!(v["added"][0]["discrepancy"], "-1/3");
}
