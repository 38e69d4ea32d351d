use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use relcirc::analysis::{
    check_independent_measurement, check_port_invariants, check_superposition, measure, thevenin,
    AnalysisError, CheckReport, Classification, TheveninForm,
};
use relcirc::axioms::axioms_suite;
use relcirc::diagram::{parse_checked, DiagramError};
use relcirc::{
    denote, netlist_to_term, parse_netlist, pretty_print, sort_check, AffineRelation, Term,
};

/// Exact relational analysis of linear circuits.
#[derive(Parser)]
#[command(name = "relcirc", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the affine relation a circuit denotes.
    Denote { file: PathBuf },
    /// Decide whether two circuits denote the same relation.
    Eq { first: PathBuf, second: PathBuf },
    /// Decide whether the first circuit's relation is contained in the second's.
    Leq { first: PathBuf, second: PathBuf },
    /// Classify a resistor/source one-port.
    Thevenin { file: PathBuf },
    /// Solve a closed circuit for its meter readings.
    Measure { file: PathBuf },
    /// Run one of the structural checks.
    Check {
        file: PathBuf,
        #[command(flatten)]
        mode: CheckMode,
    },
    /// Compile a netlist.
    Netlist {
        file: PathBuf,
        #[command(flatten)]
        output: NetlistOutput,
    },
    /// Check the built-in axiom instances.
    Axioms,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct CheckMode {
    #[arg(long)]
    invariants: bool,
    #[arg(long)]
    independent_measurement: bool,
    #[arg(long)]
    superposition: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NetlistOutput {
    #[arg(long)]
    to_term: bool,
    #[arg(long)]
    denote: bool,
}

enum Failure {
    /// Unreadable input, parse or sort error.
    Input(String),
    /// The input is fine but the command does not apply to it.
    Precondition(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Precondition(_) => 3,
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Sort(_) => Failure::Input(e.to_string()),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

/// Output text plus whether the verdict was positive.
struct Report {
    text: String,
    verdict: bool,
}

fn ok(text: String) -> Report {
    Report {
        text,
        verdict: true,
    }
}

fn load(path: &Path) -> Result<Term, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let shown = path.display();
    match path.extension().and_then(|e| e.to_str()) {
        Some("net") => {
            let nl = parse_netlist(&text).map_err(|e| Failure::Input(format!("{shown}: {e}")))?;
            Ok(netlist_to_term(&nl))
        }
        Some("ckt") => match parse_checked(&text) {
            Ok((t, _)) => Ok(t),
            Err(e @ (DiagramError::Syntax { .. } | DiagramError::Sort { .. })) => {
                Err(Failure::Input(format!("{shown}: {e}")))
            }
        },
        _ => Err(Failure::Input(format!(
            "{shown}: unknown file type (expected .ckt or .net)"
        ))),
    }
}

fn relation_of(path: &Path) -> Result<(Term, AffineRelation), Failure> {
    let t = load(path)?;
    let r = denote(&t).map_err(|e| Failure::Input(e.to_string()))?;
    Ok((t, r))
}

fn to_json(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn describe_relation(t: &Term, r: &AffineRelation) -> String {
    let s = sort_check(t).expect("checked on load");
    format!("sorting: {} -> {}\nrelation: {r}", s.dom, s.cod)
}

fn compare(json: bool, first: &Path, second: &Path, order: bool) -> Result<Report, Failure> {
    let (t1, r1) = relation_of(first)?;
    let (t2, r2) = relation_of(second)?;
    let (s1, s2) = (
        sort_check(&t1).expect("checked"),
        sort_check(&t2).expect("checked"),
    );
    if s1 != s2 {
        return Err(Failure::Precondition(format!(
            "sortings differ: {} -> {} versus {} -> {}",
            s1.dom, s1.cod, s2.dom, s2.cod
        )));
    }
    let holds = if order {
        r2.contains(&r1).expect("same widths")
    } else {
        r1 == r2
    };
    let (key, yes, no) = if order {
        ("included", "included", "not included")
    } else {
        ("equal", "equal", "not equal")
    };
    let text = if json {
        to_json(&json!({ key: holds }))
    } else {
        (if holds { yes } else { no }).to_string()
    };
    Ok(Report {
        text,
        verdict: holds,
    })
}

fn thevenin_text(f: &TheveninForm) -> String {
    match f {
        TheveninForm::SeriesVR { v0, r } => format!("series_vr: V0 = {v0}, R = {r}"),
        TheveninForm::CurrentSrc { i0 } => format!("current_src: I0 = {i0}"),
        TheveninForm::EmptyCircuit => "empty_circuit".into(),
        TheveninForm::NonCanonical { z } => format!("non_canonical: Z = {z}"),
    }
}

fn check_text(r: &CheckReport) -> String {
    let witness: Vec<String> = r
        .functional_witness
        .iter()
        .map(|f| format!("total={} single_valued={}", f.total, f.single_valued))
        .collect();
    format!(
        "inclusion_holds: {}\nequality_holds: {}\nstrict: {}\nlhs: {}\nrhs: {}\nwitness: [{}]",
        r.inclusion_holds,
        r.equality_holds,
        r.strict(),
        r.lhs,
        r.rhs,
        witness.join("; ")
    )
}

fn check_json(r: &CheckReport) -> String {
    let mut v = serde_json::to_value(r).expect("serializable");
    v["strict"] = json!(r.strict());
    to_json(&v)
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Denote { file } => {
            let (t, r) = relation_of(file)?;
            Ok(ok(if json {
                to_json(&r)
            } else {
                describe_relation(&t, &r)
            }))
        }
        Command::Eq { first, second } => compare(json, first, second, false),
        Command::Leq { first, second } => compare(json, first, second, true),
        Command::Thevenin { file } => {
            let form = thevenin(&load(file)?)?;
            Ok(ok(if json {
                to_json(&form)
            } else {
                thevenin_text(&form)
            }))
        }
        Command::Measure { file } => {
            let m = measure(&load(file)?)?;
            let text = if json {
                to_json(&m)
            } else {
                match &m.classification {
                    Classification::Empty => "empty".to_string(),
                    Classification::UniquePoint(vs) => {
                        let vs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                        format!("unique_point: {}", vs.join(", "))
                    }
                    Classification::Underdetermined(dim) => format!("underdetermined: dim {dim}"),
                }
            };
            Ok(ok(text))
        }
        Command::Check { file, mode } => {
            let t = load(file)?;
            if mode.invariants {
                let inv = check_port_invariants(&t)?;
                let text = if json {
                    to_json(&inv)
                } else {
                    format!(
                        "relativity: {}\nconservation: {}",
                        inv.relativity, inv.conservation
                    )
                };
                return Ok(Report {
                    text,
                    verdict: inv.relativity && inv.conservation,
                });
            }
            let report = if mode.independent_measurement {
                check_independent_measurement(&t)?
            } else {
                check_superposition(&t)?
            };
            let text = if json {
                check_json(&report)
            } else {
                check_text(&report)
            };
            Ok(Report {
                text,
                verdict: report.inclusion_holds,
            })
        }
        Command::Netlist { file, output } => {
            if file.extension().and_then(|e| e.to_str()) != Some("net") {
                return Err(Failure::Input(format!(
                    "{}: expected a .net file",
                    file.display()
                )));
            }
            let t = load(file)?;
            if output.to_term {
                let printed = pretty_print(&t);
                Ok(ok(if json {
                    to_json(&json!({ "term": printed }))
                } else {
                    printed
                }))
            } else {
                let r = denote(&t).map_err(|e| Failure::Input(e.to_string()))?;
                Ok(ok(if json {
                    to_json(&r)
                } else {
                    describe_relation(&t, &r)
                }))
            }
        }
        Command::Axioms => {
            let report = axioms_suite(cli.seed);
            let text = if json {
                to_json(&report)
            } else {
                let mut lines: Vec<String> = report
                    .results
                    .iter()
                    .map(|r| format!("{} {}", if r.holds { "PASS" } else { "FAIL" }, r.name))
                    .collect();
                lines.push(format!(
                    "{}/{} axiom instances hold (seed {})",
                    report.passed(),
                    report.results.len(),
                    report.seed
                ));
                lines.join("\n")
            };
            Ok(Report {
                text,
                verdict: report.all_hold(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            println!("{}", report.text);
            ExitCode::from(if report.verdict { 0 } else { 1 })
        }
        Err(f) => {
            let (Failure::Input(msg) | Failure::Precondition(msg)) = &f;
            eprintln!("error: {msg}");
            ExitCode::from(f.code())
        }
    }
}
