use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use stringy::io::{self, FanJson, Input};
use stringy::mori::{self, ShedComparison};
use stringy::orbit::Catalog;
use stringy::scan;
use stringy::toric::{self, Resolution, Strategy};
use stringy::{Error, Fan, RatFun, Rational, ResolutionDatum, StringyFunction};

#[derive(Parser)]
#[command(name = "stringy", version, about = "Exact stringy invariants of toric and abstract resolution data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    BettiTop,
    BettiAlg,
    EFunction,
    EEven,
    EPq,
    Euler,
}

impl Invariant {
    fn name(self) -> &'static str {
        match self {
            Invariant::BettiTop => "betti-top",
            Invariant::BettiAlg => "betti-alg",
            Invariant::EFunction => "e-function",
            Invariant::EEven => "e-even",
            Invariant::EPq => "e-pq",
            Invariant::Euler => "euler",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    /// Every complete fan with rays in the box.
    Exhaustive,
    /// Seeded random complete fans, full pipeline on each.
    Random,
    /// Seeded random K-negative ray removals.
    Contraction,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TieBreak {
    First,
    Last,
}

#[derive(Subcommand)]
enum Command {
    /// Stringy invariant of a fan or resolution datum (JSON, detected by keys).
    Stringy {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Invariant::Euler)]
        invariant: Invariant,
    },
    /// Toric resolution of a fan with the discrepancies of the added rays.
    Resolve {
        fan: PathBuf,
        #[arg(long, value_enum, default_value_t = TieBreak::First)]
        tie_break: TieBreak,
    },
    /// Normalized volume of the shed.
    Shed { fan: PathBuf },
    /// Resolve a fan in different ways and compare stringy functions.
    VerifyIndependence { fan: PathBuf },
    /// Classify src ⇢ dst and compare stringy Euler numbers.
    ClassifyMove { src: PathBuf, dst: PathBuf },
    /// Positivity and monotonicity scans over 2D fans.
    Scan {
        #[arg(long, value_enum, default_value_t = ScanKind::Exhaustive)]
        kind: ScanKind,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        ray_bound: i64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Euler numbers of the orbit types of a catalog (built-in if omitted).
    OrbitEuler { catalog: Option<PathBuf> },
}

/// One line of a report: (input, invariant, value, witness).
type Row = [String; 4];

struct Report {
    json: Value,
    rows: Vec<Row>,
    /// A scan or verdict found a conjecture violation.
    violation: bool,
}

enum Failure {
    Input(Error),
    Assertion(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_assertion() {
            Failure::Assertion(e)
        } else {
            Failure::Input(e)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(Error::Parse(format!("{}: {e}", path.display()))))
}

fn read_fan(path: &Path) -> Result<Fan, Failure> {
    Ok(io::parse_fan(&read(path)?)?)
}

fn row(input: &Path, invariant: &str, value: impl ToString, witness: impl ToString) -> Row {
    [
        input.display().to_string(),
        invariant.to_string(),
        value.to_string(),
        witness.to_string(),
    ]
}

fn stringy_function_json(f: &StringyFunction) -> Value {
    json!(f.render_terms())
}

fn betti_note(f: &RatFun) -> String {
    let r = f.scale() / 2;
    if r == 1 {
        "q = t".into()
    } else {
        format!("q = t^(1/{r})")
    }
}

/// Invariant of a datum, as (value, json value, witness).
fn datum_invariant(d: &ResolutionDatum, inv: Invariant) -> Result<(String, Value, String), Error> {
    if inv == Invariant::Euler {
        let e = d.stringy_euler()?;
        return Ok((e.to_string(), json!(e.to_string()), String::new()));
    }
    let f = d.stringy_function()?;
    Ok(match inv {
        Invariant::BettiTop => {
            let b = f.betti_top();
            let s = b.render("q");
            (s.clone(), json!(s), betti_note(&b))
        }
        Invariant::BettiAlg => {
            let (b, passthrough) = d.stringy_betti_alg()?;
            let s = b.render("q");
            let note = if passthrough {
                format!("{}; no B_alg tables, B_alg = B_top assumed", betti_note(&b))
            } else {
                betti_note(&b)
            };
            (s.clone(), json!(s), note)
        }
        Invariant::EFunction => (f.to_string(), stringy_function_json(&f), String::new()),
        Invariant::EEven => {
            let g = f.even_part();
            (g.to_string(), stringy_function_json(&g), String::new())
        }
        Invariant::EPq => {
            let g = f.diagonal_part();
            (g.to_string(), stringy_function_json(&g), String::new())
        }
        Invariant::Euler => unreachable!("handled above"),
    })
}

fn run_stringy(path: &Path, inv: Invariant) -> Result<Report, Failure> {
    let (datum, fan) = match io::parse_input(&read(path)?)? {
        Input::Fan(f) => (toric::resolve(&f, Strategy::FirstMinimal)?.datum()?, Some(f)),
        Input::Datum(d) => (d, None),
    };
    let (value, value_json, witness) = datum_invariant(&datum, inv)?;
    let e = datum.stringy_euler()?;
    let mut rows = vec![row(path, inv.name(), &value, &witness)];
    let mut out = json!({
        "input": path.display().to_string(),
        "kind": if fan.is_some() { "fan" } else { "datum" },
        "invariant": inv.name(),
        "r": datum.index(),
        "value": value_json,
        "euler": e.to_string(),
    });
    if !witness.is_empty() {
        out["note"] = json!(witness);
    }
    if let Some(f) = fan {
        let e_res = mori::euler_three_ways(&f)?;
        let lattice = toric::stringy_betti_lattice_sum(&f)?.limit_at_one()?;
        let shed = toric::shed_volume(&f)?;
        out["euler_three_ways"] = json!({
            "resolution": e_res.to_string(),
            "lattice_sum": lattice.to_string(),
            "shed": shed.to_string(),
        });
        if inv == Invariant::Euler {
            rows.clear();
        }
        rows.push(row(path, "euler (resolution)", &e_res, ""));
        rows.push(row(path, "euler (lattice sum)", &lattice, ""));
        rows.push(row(path, "euler (shed)", &shed, ""));
    } else if inv != Invariant::Euler {
        rows.push(row(path, "euler", &e, ""));
    }
    Ok(Report {
        json: out,
        rows,
        violation: false,
    })
}

fn run_resolve(path: &Path, tie: TieBreak) -> Result<Report, Failure> {
    let fan = read_fan(path)?;
    let strategy = match tie {
        TieBreak::First => Strategy::FirstMinimal,
        TieBreak::Last => Strategy::LastMaximal,
    };
    let res: Resolution = toric::resolve(&fan, strategy)?;
    let mut added = Vec::new();
    let mut rows = Vec::new();
    for i in res.exceptional() {
        let a = res.discrepancy(i)?;
        added.push(json!({"ray": res.fan.ray(i), "discrepancy": a.to_string()}));
        rows.push(row(path, "discrepancy", &a, format!("{:?}", res.fan.ray(i))));
    }
    rows.push(row(path, "smooth fan", &res.fan, ""));
    Ok(Report {
        json: json!({
            "input": path.display().to_string(),
            "fan": FanJson::from_fan(&res.fan),
            "added": added,
        }),
        rows,
        violation: false,
    })
}

fn run_shed(path: &Path) -> Result<Report, Failure> {
    let fan = read_fan(path)?;
    let v = toric::shed_volume(&fan)?;
    Ok(Report {
        json: json!({"input": path.display().to_string(), "shed_volume": v.to_string()}),
        rows: vec![row(path, "shed volume", &v, "")],
        violation: false,
    })
}

fn run_verify(path: &Path) -> Result<Report, Failure> {
    let fan = read_fan(path)?;
    let c = toric::independence_check(&fan)?;
    if !c.identical {
        return Err(Failure::Assertion(Error::Assertion(format!(
            "resolutions disagree: {} / {} / {}",
            c.first, c.last, c.extra
        ))));
    }
    Ok(Report {
        json: json!({
            "input": path.display().to_string(),
            "identical": true,
            "tie_breaks_differ": c.fans_differ,
            "stringy_function": stringy_function_json(&c.first),
        }),
        rows: vec![row(path, "independence", "pass", &c.first)],
        violation: false,
    })
}

fn shed_name(s: ShedComparison) -> &'static str {
    match s {
        ShedComparison::Strict => "strict",
        ShedComparison::Equal => "equal",
        ShedComparison::Reverse => "reverse",
        ShedComparison::Incomparable => "incomparable",
    }
}

fn run_classify(src: &Path, dst: &Path) -> Result<Report, Failure> {
    let (a, b) = (read_fan(src)?, read_fan(dst)?);
    let v = mori::monotonicity_verdict(&a, &b)?;
    let c = &v.classification;
    let mut out = json!({
        "kind": c.kind,
        "removed_rays": c.removed_rays,
        "wall_signs": c.wall_signs,
        "k_equivalent": c.k_equivalent,
        "shed": {
            "src_vol": toric::shed_volume(&a)?.to_string(),
            "dst_vol": toric::shed_volume(&b)?.to_string(),
            "inclusion": shed_name(v.shed),
        },
        "e_str": {"src": v.e_src.to_string(), "dst": v.e_dst.to_string()},
        "holds": v.holds,
        "note": v.note,
    });
    if let Some(circuit) = &c.circuit {
        out["circuit"] = json!(circuit);
    }
    if let Some(m) = &v.monotone {
        out["discrepancies"] = json!({
            "holds": m.holds,
            "strict_index": m.strict_index,
            "certificate": m.certificate.as_ref().map(|j| j.to_string()),
        });
    }
    let input = PathBuf::from(format!("{} -> {}", src.display(), dst.display()));
    Ok(Report {
        json: out,
        rows: vec![
            row(&input, "kind", c.kind, ""),
            row(&input, "e_str", format!("{} -> {}", v.e_src, v.e_dst), &v.note),
            row(&input, "shed", shed_name(v.shed), ""),
            row(&input, "holds", v.holds, ""),
        ],
        violation: !v.holds,
    })
}

fn run_scan(kind: ScanKind, dim: usize, n: i64, cases: usize, seed: u64) -> Result<Report, Failure> {
    if dim != 2 {
        return Err(Failure::Input(Error::Parse(format!("scans are implemented for dim 2, not {dim}"))));
    }
    if n < 1 || cases == 0 {
        return Err(Failure::Input(Error::Parse("--ray-bound and --cases must be positive".into())));
    }
    let input = PathBuf::from(format!("scan[{n}]"));
    match kind {
        ScanKind::Exhaustive => {
            let r = scan::exhaustive_2d(n, 1 << 26)?;
            if !r.dp_agrees {
                return Err(Failure::Assertion(Error::Assertion("enumeration and count disagree".into())));
            }
            let violation = r.positivity_violations + r.strong_violations > 0;
            Ok(Report {
                rows: vec![
                    row(&input, "fans", r.fans, format!("{} primitive rays", r.primitive_rays)),
                    row(&input, "smooth fans", r.smooth_fans, ""),
                    row(&input, "min euler", r.min_euler, ""),
                    row(&input, "max euler", r.max_euler, ""),
                    row(&input, "violations (e > 0)", r.positivity_violations, ""),
                    row(&input, "violations (e >= 3)", r.strong_violations, ""),
                    row(&input, "pipeline checked", r.pipeline_checked, ""),
                ],
                json: json!({"kind": "exhaustive", "dim": dim, "report": r}),
                violation,
            })
        }
        ScanKind::Random => {
            let mut g = scan::rng(seed);
            let mut rows = Vec::new();
            let mut list = Vec::new();
            let mut bad = 0;
            for i in 0..cases {
                let f = scan::random_complete_fan(&mut g, n, 8);
                let e = mori::euler_three_ways(&f)?;
                let ok = e >= Rational::from_integer(3.into());
                bad += usize::from(!ok);
                rows.push(row(&PathBuf::from(format!("case {i}")), "euler", &e, format!("{:?}", f.rays())));
                list.push(json!({"case": i, "rays": f.rays(), "euler": e.to_string(), "ok": ok}));
            }
            Ok(Report {
                json: json!({"kind": "random", "seed": seed, "ray_bound": n, "cases": list, "violations": bad}),
                rows,
                violation: bad > 0,
            })
        }
        ScanKind::Contraction => {
            let r = scan::contraction_scan(seed, cases, n)?;
            let rows = r
                .cases
                .iter()
                .map(|c| {
                    row(
                        &PathBuf::from(format!("case {}", c.case)),
                        "e_str",
                        format!("{} -> {}", c.e_src, c.e_dst),
                        format!("remove {:?}", c.removed),
                    )
                })
                .collect();
            Ok(Report {
                violation: r.violations > 0,
                json: json!({"kind": "contraction", "report": r}),
                rows,
            })
        }
    }
}

fn run_orbits(path: Option<&Path>) -> Result<Report, Failure> {
    let cat = match path {
        Some(p) => io::parse_catalog(&read(p)?)?,
        None => Catalog::builtin(),
    };
    let values = cat.evaluate()?;
    let input = path.map_or_else(|| PathBuf::from("builtin"), Path::to_path_buf);
    let rows = values
        .iter()
        .map(|(o, e)| row(&input, &format!("{}/{}", o.ambient, o.isotropy), e, if o.projective { "projective" } else { "" }))
        .collect();
    let list: Vec<Value> = values
        .iter()
        .map(|(o, e)| json!({"G": o.ambient, "H": o.isotropy, "projective": o.projective, "euler": e.to_string()}))
        .collect();
    Ok(Report {
        json: json!({"catalog": input.display().to_string(), "orbits": list}),
        rows,
        violation: false,
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn print(report: &Report, format: Format, seed: Option<u64>) {
    let mut out = String::new();
    match format {
        Format::Json => {
            let mut j = report.json.clone();
            if let (Some(s), Some(obj)) = (seed, j.as_object_mut()) {
                obj.insert("seed".into(), json!(s));
            }
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&j).expect("serializable"));
        }
        Format::Csv => {
            let _ = writeln!(out, "input,invariant,value,witness");
            for r in &report.rows {
                let fields: Vec<String> = r.iter().map(|f| csv_field(f)).collect();
                let _ = writeln!(out, "{}", fields.join(","));
            }
        }
        Format::Text => {
            if let Some(s) = seed {
                let _ = writeln!(out, "seed: {s}");
            }
            for [_, inv, value, witness] in &report.rows {
                if witness.is_empty() {
                    let _ = writeln!(out, "{inv}: {value}");
                } else {
                    let _ = writeln!(out, "{inv}: {value}  [{witness}]");
                }
            }
        }
    }
    // a closed pipe (e.g. `| head`) is not an error
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut seed = None;
    let result = match &cli.command {
        Command::Stringy { input, invariant } => run_stringy(input, *invariant),
        Command::Resolve { fan, tie_break } => run_resolve(fan, *tie_break),
        Command::Shed { fan } => run_shed(fan),
        Command::VerifyIndependence { fan } => run_verify(fan),
        Command::ClassifyMove { src, dst } => run_classify(src, dst),
        Command::Scan {
            kind,
            dim,
            ray_bound,
            cases,
            seed: s,
        } => {
            if *kind != ScanKind::Exhaustive {
                seed = Some(*s);
            }
            run_scan(*kind, *dim, *ray_bound, *cases, *s)
        }
        Command::OrbitEuler { catalog } => run_orbits(catalog.as_deref()),
    };
    match result {
        Ok(report) => {
            print(&report, cli.format, seed);
            if report.violation {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            let (code, e) = match f {
                Failure::Input(e) => (1, e),
                Failure::Assertion(e) => (2, e),
            };
            let body = json!({"error": e.kind(), "message": e.to_string()});
            println!("{}", serde_json::to_string(&body).expect("serializable"));
            ExitCode::from(code)
        }
    }
}
