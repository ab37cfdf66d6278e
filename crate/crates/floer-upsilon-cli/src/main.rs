//! Command line surface: ingest complexes by catalog name or JSON file,
//! compute invariants, emit JSON/CSV/SVG and run the verification suite.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};

use floer_upsilon::bordered::{builtin_type_a, builtin_type_d, box_tensor, knot_from_pairing};
use floer_upsilon::cfk::{builtin, CfkComplex};
use floer_upsilon::exact::{rat, Rational};
use floer_upsilon::links::{link_calibrate, upsilon_set};
use floer_upsilon::suite::run_all;
use floer_upsilon::upsilon::{
    independence_certificate, nu_minus, phi, tau, upsilon, UpsilonResult,
};
use floer_upsilon_cli::{
    csv_table, parse_rational, show_rational, svg_plot, ComplexDoc, LinkDoc,
    RationalDoc, UpsilonDoc,
};

#[derive(Parser)]
#[command(name = "floer-upsilon", version, about = "Exact upsilon invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

/// Shared input selector: a catalog name or a JSON file.
#[derive(clap::Args)]
struct Source {
    /// Catalog name ("trefoil", "torus:3,4", "cable_trefoil:2", ...).
    #[arg(long)]
    knot: Option<String>,
    /// JSON complex file; a "components" field selects the link schema.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Upsilon of a knot, or the upsilon set of a link at one parameter.
    Upsilon {
        #[command(flatten)]
        source: Source,
        /// Evaluate at one rational parameter instead of the whole graph.
        #[arg(long)]
        at: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Extra evenly spaced CSV sample points.
        #[arg(long)]
        samples: Option<u32>,
    },
    /// tau of a knot complex.
    Tau {
        #[command(flatten)]
        source: Source,
    },
    /// nu-minus of a knot complex.
    Nu {
        #[command(flatten)]
        source: Source,
    },
    /// Hat homology table by bigrading.
    Hfk {
        #[command(flatten)]
        source: Source,
    },
    /// Tensor product of two complexes, emitted as JSON.
    Tensor {
        /// Catalog names (repeatable).
        #[arg(long)]
        knot: Vec<String>,
        /// JSON files (repeatable).
        #[arg(long = "in", value_name = "FILE")]
        input: Vec<PathBuf>,
    },
    /// Mirror (dual) of a complex, emitted as JSON.
    Mirror {
        #[command(flatten)]
        source: Source,
    },
    /// Normalized slope jumps: one parameter with --at, else all jumps.
    Phi {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        at: Option<String>,
    },
    /// Jump matrix and unitriangularity certificate for a family.
    Independence {
        /// Family name; "Tnn1" is the torus knots T(n, n+1).
        #[arg(long)]
        family: String,
        /// Inclusive range of family indices, e.g. "2..5".
        #[arg(long)]
        n: String,
    },
    /// Box tensor product of a type A module and a type D structure.
    Pair {
        #[arg(long = "typeA")]
        type_a: String,
        #[arg(long = "typeD")]
        type_d: String,
    },
    /// Run the verification suite and print a pass/fail table.
    Verify,
    /// List the built-in catalog names.
    Catalog,
}

/// Errors that are the caller's fault exit with the usage code.
struct UsageError(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => match e.downcast::<UsageError>() {
            Ok(UsageError(msg)) => {
                eprintln!("usage error: {msg}");
                ExitCode::from(2)
            }
            Err(e) => {
                eprintln!("{}", serde_json::json!({ "error": format!("{e:#}") }));
                ExitCode::from(1)
            }
        },
    }
}

impl std::fmt::Debug for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

/// Either schema a JSON input file can hold.
enum Loaded {
    Knot(CfkComplex),
    Link(floer_upsilon::links::LinkComplex),
}

fn load_source(source: &Source) -> Result<Loaded> {
    match (&source.knot, &source.input) {
        (Some(name), None) => Ok(Loaded::Knot(catalog_knot(name)?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| anyhow!("reading {}: {e}", path.display()))?;
            let value: serde_json::Value = serde_json::from_str(&text)?;
            if value.get("components").is_some() {
                let doc: LinkDoc = serde_json::from_value(value)?;
                Ok(Loaded::Link(doc.to_link()?))
            } else {
                let doc: ComplexDoc = serde_json::from_value(value)?;
                Ok(Loaded::Knot(doc.to_complex()?))
            }
        }
        _ => Err(usage("exactly one of --knot or --in is required")),
    }
}

fn load_knot(source: &Source) -> Result<CfkComplex> {
    match load_source(source)? {
        Loaded::Knot(c) => Ok(c),
        Loaded::Link(_) => Err(usage("this command needs a knot complex, got a link")),
    }
}

/// Resolves a catalog name, trying the plain complexes first and then
/// the bordered pairings.
fn catalog_knot(name: &str) -> Result<CfkComplex> {
    match builtin(name) {
        Ok(c) => Ok(c),
        Err(first) => knot_from_pairing(name)
            .map_err(|_| anyhow!("unknown catalog name {name:?} ({first})")),
    }
}

fn parse_at(at: &str) -> Result<Rational> {
    parse_rational(at).map_err(|e| usage(format!("bad --at value {at:?}: {e}")))
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Upsilon { source, at, format, samples } => {
            match load_source(&source)? {
                Loaded::Knot(c) => {
                    let r = upsilon(&c).map_err(|e| anyhow!("{e}"))?;
                    emit_upsilon(&r, at.as_deref(), format, samples)?;
                }
                Loaded::Link(l) => {
                    let Some(at) = at.as_deref() else {
                        return Err(usage("links need --at: upsilon is a finite set per parameter"));
                    };
                    let t = parse_at(at)?;
                    let c = link_calibrate(&l).map_err(|e| anyhow!("{e}"))?;
                    let set = upsilon_set(&c, t).map_err(|e| anyhow!("{e}"))?;
                    let doc: Vec<RationalDoc> =
                        set.into_iter().map(RationalDoc::from_rational).collect();
                    println!("{}", serde_json::to_string(&doc)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { source } => {
            let c = load_knot(&source)?;
            println!("{}", tau(&c).map_err(|e| anyhow!("{e}"))?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Nu { source } => {
            let c = load_knot(&source)?;
            println!("{}", nu_minus(&c).map_err(|e| anyhow!("{e}"))?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Hfk { source } => {
            let c = load_knot(&source)?;
            let table = c.hfk_hat();
            let rows: Vec<serde_json::Value> = table
                .dims()
                .iter()
                .map(|(&(m, a), &dim)| serde_json::json!({ "m": m, "a": a, "dim": dim }))
                .collect();
            println!(
                "{}",
                serde_json::json!({ "dims": rows, "total": table.total_dim() })
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Tensor { knot, input } => {
            let mut complexes: Vec<CfkComplex> = Vec::new();
            for name in &knot {
                complexes.push(catalog_knot(name)?);
            }
            for path in &input {
                let source = Source { knot: None, input: Some(path.clone()) };
                complexes.push(load_knot(&source)?);
            }
            let [a, b] = complexes.as_slice() else {
                return Err(usage("tensor needs exactly two inputs (--knot/--in)"));
            };
            let product = a.tensor(b).map_err(|e| anyhow!("{e}"))?;
            println!("{}", serde_json::to_string_pretty(&ComplexDoc::from_complex(&product))?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Mirror { source } => {
            let c = load_knot(&source)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&ComplexDoc::from_complex(&c.dual()))?
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi { source, at } => {
            let c = load_knot(&source)?;
            let r = upsilon(&c).map_err(|e| anyhow!("{e}"))?;
            match at {
                Some(at) => {
                    let t = parse_at(&at)?;
                    let value = phi(&r, t).map_err(|e| anyhow!("{e}"))?;
                    println!("{}", show_rational(value));
                }
                None => {
                    let rows: Vec<serde_json::Value> = r
                        .jumps
                        .iter()
                        .map(|&(t, _)| {
                            let value = phi(&r, t).map_err(|e| anyhow!("{e}"))?;
                            Ok(serde_json::json!({
                                "t": RationalDoc::from_rational(t),
                                "phi": RationalDoc::from_rational(value),
                            }))
                        })
                        .collect::<Result<_>>()?;
                    println!("{}", serde_json::Value::Array(rows));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Independence { family, n } => {
            if family != "Tnn1" {
                return Err(usage(format!("unknown family {family:?}; try Tnn1")));
            }
            let (lo, hi) = n
                .split_once("..")
                .and_then(|(a, b)| Some((a.parse::<i64>().ok()?, b.parse::<i64>().ok()?)))
                .ok_or_else(|| usage(format!("bad --n range {n:?}; expected like 2..5")))?;
            if lo < 2 || hi < lo {
                return Err(usage("range must satisfy 2 <= lo <= hi"));
            }
            let knots: Vec<CfkComplex> = (lo..=hi)
                .map(|k| catalog_knot(&format!("torus:{},{}", k, k + 1)))
                .collect::<Result<_>>()?;
            let params: Vec<Rational> = (lo..=hi).map(|k| rat(2, k)).collect();
            let report =
                independence_certificate(&knots, &params).map_err(|e| anyhow!("{e}"))?;
            let matrix: Vec<Vec<RationalDoc>> = report
                .matrix
                .iter()
                .map(|row| row.iter().map(|&v| RationalDoc::from_rational(v)).collect())
                .collect();
            let params: Vec<RationalDoc> =
                params.into_iter().map(RationalDoc::from_rational).collect();
            println!(
                "{}",
                serde_json::json!({
                    "params": params,
                    "matrix": matrix,
                    "certified": report.certified,
                })
            );
            if report.certified {
                Ok(ExitCode::SUCCESS)
            } else {
                bail!("independence certificate failed");
            }
        }
        Command::Pair { type_a, type_d } => {
            let a = builtin_type_a(&type_a).map_err(|e| anyhow!("{e}"))?;
            let d = builtin_type_d(&type_d).map_err(|e| anyhow!("{e}"))?;
            let c = box_tensor(&a, &d).map_err(|e| anyhow!("{e}"))?;
            println!("{}", serde_json::to_string_pretty(&ComplexDoc::from_complex(&c))?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify => {
            let outcomes = run_all();
            let mut ok = true;
            for o in &outcomes {
                match &o.result {
                    Ok(()) => println!("PASS  {}", o.label),
                    Err(msg) => {
                        ok = false;
                        println!("FAIL  {} :: {msg}", o.label);
                    }
                }
            }
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                bail!("verification suite failed");
            }
        }
        Command::Catalog => {
            println!("knots:");
            for name in ["unknot", "trefoil", "figure8", "torus:p,q", "wd_trefoil", "hom_counterexample"] {
                println!("  {name}");
            }
            println!("pairings (n >= 2):");
            for name in ["cable_trefoil:n", "torus_n_2n1:n", "cable_wd_trefoil:n", "k_n:n"] {
                println!("  {name}");
            }
            println!("type A modules:");
            println!("  cabling:n");
            println!("type D structures:");
            for name in ["trefoil_framed2", "unknot_framed2", "wd_trefoil_framed2", "square"] {
                println!("  {name}");
            }
            println!("links:");
            println!("  unlink:l");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn emit_upsilon(
    r: &UpsilonResult,
    at: Option<&str>,
    format: Format,
    samples: Option<u32>,
) -> Result<()> {
    if let Some(at) = at {
        let t = parse_at(at)?;
        let v = r.upsilon.eval(t).map_err(|e| anyhow!("{e}"))?;
        println!("{}", show_rational(v));
        return Ok(());
    }
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&UpsilonDoc::from_result(r))?)
        }
        Format::Csv => print!("{}", csv_table(&r.upsilon, samples)),
        Format::Svg => print!("{}", svg_plot(&r.upsilon)),
    }
    Ok(())
}
