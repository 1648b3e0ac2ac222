//! `pershom`: Betti numbers, resolutions, interleavings and distance brackets
//! from JSON inputs.
//!
//! Exit status is 0 whenever a computation finishes, including "none",
//! "infeasible" and "budget-exhausted" outcomes; 1 on domain errors, with a
//! JSON report on stderr; 2 on usage errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pershom::complexes::is_nullhomotopic;
use pershom::exact::{format_rational, is_negative, parse_rational, Field, Rational};
use pershom::ingest::{homology_presentation, perturb};
use pershom::interleave::{
    candidate_epsilons, derived_interleaving, estimate_complex_distance, estimate_distance,
    isometry_check, search_homotopy_interleaving, search_module_interleaving, DerivedMode,
    DistanceBracket, Evidence, InterleavingCertificate, Level,
};
use pershom::io::{
    component_rows, read_bifiltration, read_certificate, read_complex, read_presentation,
    write_bifiltration, write_certificate, write_complex, write_presentation, CertificateFile,
};
use pershom::presentation::{betti, minimal_free_resolution, minimize};
use pershom::{ChainMap, Error, FreeChainComplex, Grade, Presentation};

#[derive(Parser)]
#[command(name = "pershom", version, about = "Exact multi-parameter persistence computations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Coefficient field, "rational" or "gf:p". Searches default to gf:2,
    /// everything else to rational.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    output: Format,
    /// Largest number of candidates one search may try.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Module,
    Homotopy,
    Derived,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Module => Level::Module,
            LevelArg::Homotopy => Level::Homotopy,
            LevelArg::Derived => Level::Derived,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Graded Betti numbers of a presented module.
    Betti {
        input: PathBuf,
        /// Homological degree; all degrees when omitted.
        #[arg(short = 'i', long = "degree")]
        degree: Option<usize>,
    },
    /// Minimal free resolution of a presented module.
    Resolve { input: PathBuf },
    /// Re-verifies a certificate file.
    Verify { input: PathBuf },
    /// Searches for a module ε-interleaving.
    Interleave {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = nonnegative)]
        epsilon: Rational,
        /// Also write a found certificate to this file.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Searches for a homotopy ε-interleaving of complexes, or of the
    /// minimal resolutions of modules.
    HomotopyInterleave {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = nonnegative)]
        epsilon: Rational,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Decides a derived ε-interleaving on projective replacements.
    DerivedInterleave {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_parser = nonnegative)]
        epsilon: Rational,
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Lift the maps of this module certificate instead of searching.
        #[arg(long)]
        lift: Option<PathBuf>,
    },
    /// Whether the smoothing s_{2η} of a complex is nullhomotopic.
    Nullhomotopy {
        input: PathBuf,
        /// The value η; the map tested is s_{2η}.
        #[arg(long, value_parser = nonnegative)]
        epsilon: Rational,
    },
    /// Brackets the interleaving distance.
    Distance {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, value_enum, default_value_t = LevelArg::Module)]
        level: LevelArg,
    },
    /// Compares interleaving existence at the three levels.
    IsometryCheck {
        first: PathBuf,
        second: PathBuf,
        /// Comma-separated values; all candidate values when omitted.
        #[arg(long, value_parser = nonnegative, value_delimiter = ',')]
        epsilon: Vec<Rational>,
    },
    /// Homology module of a bifiltered simplicial complex.
    Ingest {
        input: PathBuf,
        #[arg(short = 'i', long = "degree", default_value_t = 0)]
        degree: usize,
    },
    /// Seeded perturbation of a bifiltration by at most δ.
    Perturb {
        input: PathBuf,
        #[arg(long, alias = "delta", value_parser = nonnegative)]
        epsilon: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn nonnegative(text: &str) -> Result<Rational, String> {
    let value = parse_rational(text).map_err(|e| e.to_string())?;
    if is_negative(&value) {
        return Err("must be nonnegative".into());
    }
    Ok(value)
}

enum Failure {
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

impl Failure {
    fn report(&self) -> Value {
        match self {
            Failure::Domain(e) => json!({ "error": e.kind(), "message": e.to_string() }),
            Failure::Io(path, e) => json!({
                "error": "io",
                "message": format!("{}: {e}", path.display()),
            }),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, contents: &str) -> Outcome<()> {
    fs::write(path, contents).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

enum Input {
    Module(Presentation),
    Complex(FreeChainComplex),
}

/// Complex files carry a "terms" key, presentation files "generators".
fn load(path: &Path, field: Field) -> Outcome<Input> {
    let text = read(path)?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if value.get("terms").is_some() {
        Ok(Input::Complex(read_complex(&text, field)?))
    } else {
        Ok(Input::Module(read_presentation(&text, field)?))
    }
}

fn load_module(path: &Path, field: Field) -> Outcome<Presentation> {
    match load(path, field)? {
        Input::Module(p) => Ok(p),
        Input::Complex(_) => Err(Error::InvalidArgument(format!(
            "{} holds a complex, expected a presentation",
            path.display()
        ))
        .into()),
    }
}

fn load_complex(path: &Path, field: Field) -> Outcome<FreeChainComplex> {
    match load(path, field)? {
        Input::Complex(x) => Ok(x),
        Input::Module(p) => Ok(minimal_free_resolution(&p)?),
    }
}

fn json_text(value: &Value) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("json values serialize");
    out.push('\n');
    out
}

fn grade_json(g: &Grade) -> Value {
    Value::from(g.coords().iter().map(format_rational).collect::<Vec<_>>())
}

fn certificate_json(c: Option<&InterleavingCertificate>) -> Value {
    c.map_or(Value::Null, |c| {
        serde_json::to_value(CertificateFile::from_certificate(c)).expect("certificates serialize")
    })
}

fn run(cli: Cli) -> Outcome<String> {
    let Common { field, output, budget } = cli.common;
    let field_or = |default: Field| -> Outcome<Field> {
        Ok(match &field {
            Some(text) => text.parse()?,
            None => default,
        })
    };
    let exact = || field_or(Field::Rational);
    let search = || field_or(Field::Prime(2));

    match cli.command {
        Command::Betti { input, degree } => {
            let p = load_module(&input, exact()?)?;
            let degrees: Vec<usize> = match degree {
                Some(i) => vec![i],
                None => (0..=p.n() + 1).collect(),
            };
            let mut rows = Vec::new();
            for i in degrees {
                for (g, count) in betti(&p, i)? {
                    rows.push((i, g, count));
                }
            }
            Ok(betti_report(&rows, degree.is_some(), output))
        }
        Command::Resolve { input } => {
            let p = load_module(&input, exact()?)?;
            let res = minimal_free_resolution(&p)?;
            Ok(match output {
                Format::Json => format!("{}\n", write_complex(&res)),
                Format::Csv | Format::Text => {
                    let mut rows = Vec::new();
                    for j in res.degrees().into_iter().rev() {
                        for (g, count) in res.term(j).xi() {
                            rows.push(((-j) as usize, g, count));
                        }
                    }
                    betti_report(&rows, false, output)
                }
            })
        }
        Command::Verify { input } => {
            let text = read(&input)?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let cert = match value.get("certificate") {
                Some(Value::Null) => {
                    return Err(Error::Parse("the report holds no certificate".into()).into())
                }
                Some(inner) => read_certificate(&inner.to_string())?,
                None => read_certificate(&text)?,
            };
            let status = if cert.verify() { "verified" } else { "rejected" };
            let eps = format_rational(&cert.epsilon);
            Ok(match output {
                Format::Json => json_text(&json!({
                    "status": status,
                    "level": cert.level.name(),
                    "epsilon": eps,
                    "field": cert.field().to_string(),
                })),
                Format::Csv => format!("status,level,epsilon\n{status},{},{eps}\n", cert.level),
                Format::Text => format!("{status}\n"),
            })
        }
        Command::Interleave { first, second, epsilon, certificate } => {
            let f = search()?;
            let (m, n) = (load_module(&first, f)?, load_module(&second, f)?);
            let found = search_module_interleaving(&m, &n, &epsilon, f, budget);
            search_report(found, Level::Module, &epsilon, f, certificate.as_deref(), output)
        }
        Command::HomotopyInterleave { first, second, epsilon, certificate } => {
            let f = search()?;
            let (x, y) = (load_complex(&first, f)?, load_complex(&second, f)?);
            let found = search_homotopy_interleaving(&x, &y, &epsilon, f, budget);
            search_report(found, Level::Homotopy, &epsilon, f, certificate.as_deref(), output)
        }
        Command::DerivedInterleave { first, second, epsilon, certificate, lift } => {
            let (found, f) = match lift {
                Some(path) => {
                    let given = read_certificate(&read(&path)?)?;
                    let (forward, backward) = given.module_maps().ok_or_else(|| {
                        Error::InvalidArgument("--lift needs a module-level certificate".into())
                    })?;
                    let f = given.field();
                    let (m, n) = (load_module(&first, f)?, load_module(&second, f)?);
                    let mode = DerivedMode::Lift {
                        forward: forward.clone(),
                        backward: backward.clone(),
                    };
                    (derived_interleaving(&m, &n, &epsilon, mode), f)
                }
                None => {
                    let f = search()?;
                    let (m, n) = (load_module(&first, f)?, load_module(&second, f)?);
                    let mode = DerivedMode::Search { field: f, budget };
                    (derived_interleaving(&m, &n, &epsilon, mode), f)
                }
            };
            search_report(found, Level::Derived, &epsilon, f, certificate.as_deref(), output)
        }
        Command::Nullhomotopy { input, epsilon } => {
            let x = load_complex(&input, exact()?)?;
            let s = ChainMap::smoothing(&x, &(&epsilon + &epsilon))?;
            let witness = is_nullhomotopic(&s);
            let status = if witness.is_some() { "feasible" } else { "infeasible" };
            let eps = format_rational(&epsilon);
            Ok(match output {
                Format::Json => json_text(&json!({
                    "status": status,
                    "eta": eps,
                    "homotopy": witness
                        .map(|h| serde_json::to_value(component_rows(h.components())).expect("rows serialize"))
                        .unwrap_or(Value::Null),
                })),
                Format::Csv => format!("status,eta\n{status},{eps}\n"),
                Format::Text => format!("{status}\n"),
            })
        }
        Command::Distance { first, second, level } => {
            let f = search()?;
            let bracket = match (load(&first, f)?, load(&second, f)?) {
                (Input::Module(m), Input::Module(n)) => {
                    estimate_distance(&m, &n, level.into(), f, budget)?
                }
                (a, b) => {
                    let resolve = |i: Input| -> Outcome<FreeChainComplex> {
                        match i {
                            Input::Complex(x) => Ok(x),
                            Input::Module(p) => Ok(minimal_free_resolution(&p)?),
                        }
                    };
                    estimate_complex_distance(&resolve(a)?, &resolve(b)?, f, budget)?
                }
            };
            Ok(distance_report(&bracket, output))
        }
        Command::IsometryCheck { first, second, epsilon } => {
            let f = search()?;
            let (m, n) = (load_module(&first, f)?, load_module(&second, f)?);
            let epsilons = if epsilon.is_empty() {
                candidate_epsilons(m.grades().chain(n.grades()))
            } else {
                epsilon
            };
            let report = isometry_check(&m, &n, &epsilons, f, budget)?;
            let rows: Vec<[String; 5]> = report
                .rows
                .iter()
                .map(|r| {
                    [
                        format_rational(&r.epsilon),
                        r.module.name().to_string(),
                        r.homotopy.name().to_string(),
                        r.derived.name().to_string(),
                        r.agrees().to_string(),
                    ]
                })
                .collect();
            Ok(match output {
                Format::Json => json_text(&json!({
                    "field": f.to_string(),
                    "rows": rows.iter().map(|r| json!({
                        "epsilon": r[0], "module": r[1], "homotopy": r[2],
                        "derived": r[3], "agrees": r[4] == "true",
                    })).collect::<Vec<_>>(),
                    "violations": report.violations().into_iter().map(format_rational).collect::<Vec<_>>(),
                })),
                Format::Csv | Format::Text => {
                    let mut out = String::from("epsilon,module,homotopy,derived,agrees\n");
                    for r in &rows {
                        out.push_str(&r.join(","));
                        out.push('\n');
                    }
                    if output == Format::Text {
                        let v = report.violations();
                        if v.is_empty() {
                            out.push_str("violations: none\n");
                        } else {
                            let list: Vec<String> = v.into_iter().map(format_rational).collect();
                            let _ = writeln!(out, "violations: {}", list.join(" "));
                        }
                    }
                    out
                }
            })
        }
        Command::Ingest { input, degree } => {
            let k = read_bifiltration(&read(&input)?)?;
            let h = minimize(&homology_presentation(&k, degree, exact()?)?);
            Ok(match output {
                Format::Json | Format::Text => format!("{}\n", write_presentation(&h)),
                Format::Csv => {
                    let mut out = String::from("kind,grade\n");
                    for g in h.generators().grades() {
                        let _ = writeln!(out, "generator,{g}");
                    }
                    for g in h.relation_module().grades() {
                        let _ = writeln!(out, "relation,{g}");
                    }
                    out
                }
            })
        }
        Command::Perturb { input, epsilon, seed } => {
            let k = read_bifiltration(&read(&input)?)?;
            let moved = perturb(&k, &epsilon, seed)?;
            Ok(match output {
                Format::Json | Format::Text => format!("{}\n", write_bifiltration(&moved)),
                Format::Csv => {
                    let mut out = String::from("vertices,grade\n");
                    for s in moved.simplices() {
                        let v: Vec<String> = s.vertices.iter().map(|v| v.to_string()).collect();
                        let _ = writeln!(out, "{},{}", v.join(" "), s.grade);
                    }
                    out
                }
            })
        }
    }
}

/// Rows sorted by degree, then lexicographically by grade.
fn betti_report(rows: &[(usize, Grade, usize)], single: bool, output: Format) -> String {
    match output {
        Format::Json => json_text(&Value::from(
            rows.iter()
                .map(|(i, g, c)| json!({ "degree": i, "grade": grade_json(g), "count": c }))
                .collect::<Vec<_>>(),
        )),
        Format::Csv | Format::Text => {
            let mut out = String::new();
            if output == Format::Csv {
                out.push_str(if single { "grade,count\n" } else { "degree,grade,count\n" });
            }
            for (i, g, c) in rows {
                if single {
                    let _ = writeln!(out, "{g},{c}");
                } else {
                    let _ = writeln!(out, "{i},{g},{c}");
                }
            }
            out
        }
    }
}

fn search_report(
    found: pershom::Result<Option<InterleavingCertificate>>,
    level: Level,
    epsilon: &Rational,
    field: Field,
    save: Option<&Path>,
    output: Format,
) -> Outcome<String> {
    let (status, cert) = match found {
        Ok(Some(c)) => ("found", Some(c)),
        Ok(None) => ("none", None),
        Err(Error::BudgetExhausted { .. }) => ("budget-exhausted", None),
        Err(e) => return Err(e.into()),
    };
    if let (Some(path), Some(c)) = (save, &cert) {
        write(path, &format!("{}\n", write_certificate(c)))?;
    }
    let eps = format_rational(epsilon);
    Ok(match output {
        Format::Json => json_text(&json!({
            "status": status,
            "level": level.name(),
            "epsilon": eps,
            "field": field.to_string(),
            "certificate": certificate_json(cert.as_ref()),
        })),
        Format::Csv => format!("status,level,epsilon\n{status},{level},{eps}\n"),
        Format::Text => format!("{status}\n"),
    })
}

fn evidence_json(e: &Evidence) -> Value {
    let mut v = json!({ "kind": e.kind(), "epsilon": format_rational(e.epsilon()) });
    if let Evidence::BudgetExhausted { budget, .. } = e {
        v["budget"] = json!(budget);
    }
    v
}

fn distance_report(b: &DistanceBracket, output: Format) -> String {
    let upper = b.upper.as_ref().map_or_else(|| "inf".to_string(), format_rational);
    let lower = format_rational(&b.lower);
    match output {
        Format::Json => json_text(&json!({
            "bracket": b.to_string(),
            "level": b.level.name(),
            "field": b.field.to_string(),
            "lower": lower,
            "lower_excluded": b.lower_excluded,
            "upper": b.upper.as_ref().map(format_rational),
            "upper_attained": b.upper_attained,
            "evidence": b.evidence.iter().map(evidence_json).collect::<Vec<_>>(),
            "certificate": certificate_json(b.certificate.as_ref()),
        })),
        Format::Csv => {
            let mut out = String::from("level,field,lower,upper,evidence,epsilon\n");
            for e in &b.evidence {
                let _ = writeln!(
                    out,
                    "{},{},{lower},{upper},{},{}",
                    b.level,
                    b.field,
                    e.kind(),
                    format_rational(e.epsilon())
                );
            }
            out
        }
        Format::Text => {
            let mut out = format!("{b}\n");
            let _ = writeln!(out, "level {}", b.level);
            let _ = writeln!(out, "field {}", b.field);
            let _ = writeln!(out, "lower-excluded {}", b.lower_excluded);
            let _ = writeln!(out, "upper-attained {}", b.upper_attained);
            for e in &b.evidence {
                let _ = writeln!(out, "{} {}", e.kind(), format_rational(e.epsilon()));
            }
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{}", failure.report());
            ExitCode::from(1)
        }
    }
}
