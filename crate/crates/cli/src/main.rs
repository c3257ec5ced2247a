//! Command-line front end: parses set documents and auxiliary files,
//! runs the requested engine, and prints one JSON ResultRecord line
//! per invocation on standard output.
//!
//! Exit codes: 0 on success, 1 for unreadable or malformed input and
//! usage errors, 2 for domain errors (a pole, a divergent
//! regularization, disagreeing engines).

mod files;
mod parse;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use polychi_core::combinat::{
    chi_zero_subsets_coefficients, chi_zero_subsets_regularized, choose_set, coloring_set,
    fabulous_chi, polyhedral_subsets_series, pairs_of_subsets_series,
};
use polychi_core::euler::cells::dimension;
use polychi_core::euler::{
    arrangement_decompose, euler_integral, euler_measure_cells, euler_measure_fiber,
    ConstructibleFunction, FPolynomial,
};
use polychi_core::polyset::{canonicalize_line, CanonicalLine, PolyhedralSet};
use polychi_core::rat::format_rat;
use polychi_core::series::{choose2_transform, mapspace_series, regularized_value, RationalFunction};
use polychi_core::symmetry::{character_multiplicities, trace};
use polychi_core::{rat_int, Int, Rat};
use serde::Serialize;

use parse::SetDocument;

#[derive(Parser)]
#[command(name = "polychi", version, about = "Exact Euler measures of semilinear sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Euler measure of a named set.
    Chi {
        file: PathBuf,
        name: String,
        /// Engine to use; by default both run and must agree.
        #[arg(long)]
        method: Option<Method>,
    },
    /// Face-count polynomial of a named set's induced cell decomposition.
    Fpoly { file: PathBuf, name: String },
    /// Dimension of a named set (-1 for the empty set).
    Dim { file: PathBuf, name: String },
    /// Euler integral of the piecewise function declared in a file.
    Integrate { file: PathBuf },
    /// Euler measure of the set of k-element subsets of a named set.
    Choose { file: PathBuf, name: String, k: usize },
    /// Euler measure of the set of proper colorings of a graph by a named set.
    Color { graph: PathBuf, file: PathBuf, name: String },
    /// Fabulous-subset count of a named one-dimensional set.
    Fabulous { file: PathBuf, name: String },
    /// Stratified series and their regularized values.
    Series {
        #[command(subcommand)]
        series: SeriesCommand,
    },
    /// Trace of an affine symmetry: the Euler measure of its fixed set.
    Trace { file: PathBuf, name: String, map: PathBuf },
    /// Multiplicities of a class function against a character table.
    Character { values: PathBuf, table: PathBuf },
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// Series of polyhedral subsets of a named one-dimensional set.
    Subsets {
        file: PathBuf,
        name: String,
        #[command(flatten)]
        output: SeriesOutput,
    },
    /// Series of unordered pairs of subsets of an interval.
    Pairs {
        #[command(flatten)]
        output: SeriesOutput,
    },
    /// Counts of measure-zero subsets of a half-open interval.
    Chizero {
        /// Print the first N stratum counts instead of regularizing.
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Series of maps between finite cell complexes.
    Mapspace {
        /// Number of points in the target.
        #[arg(long)]
        m: i64,
        /// Cells of even dimension in the source.
        #[arg(long)]
        f0: usize,
        /// Cells of odd dimension in the source.
        #[arg(long)]
        f1: usize,
        #[command(flatten)]
        output: SeriesOutput,
    },
    /// Series of unordered pairs of maps, via the choose-2 transform.
    Choose2 {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        f0: usize,
        #[arg(long)]
        f1: usize,
        #[command(flatten)]
        output: SeriesOutput,
    },
}

#[derive(clap::Args)]
struct SeriesOutput {
    /// Print the first N coefficients instead of the regularized value.
    #[arg(long, conflicts_with = "closed_form")]
    prefix: Option<usize>,
    /// Print the rational function itself as a coefficient pair.
    #[arg(long)]
    closed_form: bool,
}

#[derive(ValueEnum, Clone, Copy)]
enum Method {
    Fiber,
    Cells,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ResultValue {
    Integer(i64),
    Rational(String),
    Integers(Vec<i64>),
    Rationals(Vec<String>),
    Function { numerator: Vec<String>, denominator: Vec<String> },
}

#[derive(Serialize)]
struct ResultRecord {
    command: String,
    result: ResultValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    convention: Option<&'static str>,
}

enum CommandError {
    /// Unreadable or malformed input; exit code 1.
    Input(String),
    /// A mathematically honest failure; exit code 2.
    Domain(String),
}

type Outcome = Result<(ResultValue, Option<&'static str>, Option<&'static str>), CommandError>;

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            };
        }
    };
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match dispatch(cli.command) {
        Ok((result, method, convention)) => {
            let record = ResultRecord { command, result, method, convention };
            println!("{}", serde_json::to_string(&record).expect("records serialize"));
            0
        }
        Err(CommandError::Input(message)) => {
            eprintln!("error: {message}");
            1
        }
        Err(CommandError::Domain(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn read_file(path: &Path) -> Result<String, CommandError> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandError::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<SetDocument, CommandError> {
    parse::parse_document(&read_file(path)?)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

fn named_set<'d>(
    doc: &'d SetDocument,
    path: &Path,
    name: &str,
) -> Result<&'d PolyhedralSet, CommandError> {
    doc.get(name).ok_or_else(|| {
        let known: Vec<&str> = doc.names().collect();
        CommandError::Input(format!(
            "no set named '{name}' in {} (defined: {})",
            path.display(),
            if known.is_empty() { "none".to_string() } else { known.join(", ") }
        ))
    })
}

fn named_line(doc: &SetDocument, path: &Path, name: &str) -> Result<CanonicalLine, CommandError> {
    let set = named_set(doc, path, name)?;
    if set.dim != 1 {
        return Err(CommandError::Input(format!(
            "the set '{name}' lives in dimension {}, but this command needs dimension 1",
            set.dim
        )));
    }
    canonicalize_line(set).map_err(|e| CommandError::Domain(e.to_string()))
}

fn int_value(n: &Int) -> ResultValue {
    match i64::try_from(n) {
        Ok(v) => ResultValue::Integer(v),
        Err(_) => ResultValue::Rational(n.to_string()),
    }
}

fn int_list(ns: &[Int]) -> ResultValue {
    let small: Result<Vec<i64>, _> = ns.iter().map(i64::try_from).collect();
    match small {
        Ok(v) => ResultValue::Integers(v),
        Err(_) => ResultValue::Rationals(ns.iter().map(Int::to_string).collect()),
    }
}

fn gcd(a: Int, b: Int) -> Int {
    let (mut a, mut b) = (abs(a), abs(b));
    while b != Int::from(0) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn abs(n: Int) -> Int {
    if n < Int::from(0) {
        -n
    } else {
        n
    }
}

// Rescales numerator and denominator by a common rational factor so
// both have integer coefficients with no common content and the
// denominator's leading coefficient is positive. Display only; the
// function itself is unchanged.
fn function_pair(f: &RationalFunction) -> ResultValue {
    let scale_to_ints = |coeffs: &[Rat], scale: &Int| -> Vec<Int> {
        coeffs.iter().map(|c| (c * Rat::from(scale.clone())).to_integer()).collect()
    };
    let mut scale = Int::from(1);
    for c in f.numerator().coefficients().iter().chain(f.denominator().coefficients()) {
        let d = c.denom();
        scale = &scale / &gcd(scale.clone(), d.clone()) * d;
    }
    let mut num = scale_to_ints(f.numerator().coefficients(), &scale);
    let mut den = scale_to_ints(f.denominator().coefficients(), &scale);
    let mut content = Int::from(0);
    for c in num.iter().chain(&den) {
        content = gcd(content, c.clone());
    }
    if content > Int::from(1) {
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c = &*c / &content;
        }
    }
    if den.last().map_or(false, |l| l < &Int::from(0)) {
        for c in num.iter_mut().chain(den.iter_mut()) {
            *c = -c.clone();
        }
    }
    ResultValue::Function {
        numerator: num.iter().map(Int::to_string).collect(),
        denominator: den.iter().map(Int::to_string).collect(),
    }
}

// Formats a series query result: the closed form, a coefficient
// prefix, or the regularized value at the module's evaluation point.
fn series_value(
    series: &RationalFunction,
    output: &SeriesOutput,
    at: i64,
) -> Result<ResultValue, CommandError> {
    if output.closed_form {
        return Ok(function_pair(series));
    }
    if let Some(n) = output.prefix {
        let coeffs = series
            .prefix_coefficients(n)
            .map_err(|e| CommandError::Domain(e.to_string()))?;
        return Ok(ResultValue::Rationals(coeffs.iter().map(format_rat).collect()));
    }
    let value = regularized_value(series, &rat_int(at))
        .map_err(|e| CommandError::Domain(e.to_string()))?;
    Ok(ResultValue::Rational(format_rat(&value)))
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Chi { file, name, method } => {
            let doc = load_document(&file)?;
            let set = named_set(&doc, &file, &name)?;
            match method {
                Some(Method::Fiber) => Ok((int_value(&euler_measure_fiber(set)), Some("fiber"), None)),
                Some(Method::Cells) => Ok((int_value(&euler_measure_cells(set)), Some("cells"), None)),
                None => {
                    let fiber = euler_measure_fiber(set);
                    let cells = euler_measure_cells(set);
                    if fiber != cells {
                        return Err(CommandError::Domain(format!(
                            "engine disagreement on '{name}': fiber {fiber}, cells {cells}"
                        )));
                    }
                    Ok((int_value(&fiber), Some("fiber+cells"), None))
                }
            }
        }
        Command::Fpoly { file, name } => {
            let doc = load_document(&file)?;
            let set = named_set(&doc, &file, &name)?;
            let fpoly = FPolynomial::of(&arrangement_decompose(set));
            Ok((int_list(fpoly.coefficients()), Some("cells"), None))
        }
        Command::Dim { file, name } => {
            let doc = load_document(&file)?;
            let set = named_set(&doc, &file, &name)?;
            Ok((ResultValue::Integer(dimension(set)), Some("cells"), None))
        }
        Command::Integrate { file } => {
            let doc = load_document(&file)?;
            if doc.pieces().is_empty() {
                return Err(CommandError::Input(format!(
                    "{} declares no pieces to integrate",
                    file.display()
                )));
            }
            let mut pieces = doc.pieces().to_vec();
            let rest = pieces
                .iter()
                .try_fold(PolyhedralSet::whole_space(doc.dim), |acc, (_, region)| {
                    acc.difference(region)
                })
                .map_err(|e| CommandError::Domain(e.to_string()))?;
            pieces.push((Int::from(0), rest));
            let f = ConstructibleFunction::new(doc.dim, pieces)
                .map_err(|e| CommandError::Domain(e.to_string()))?;
            Ok((int_value(&euler_integral(&f)), Some("fiber"), None))
        }
        Command::Choose { file, name, k } => {
            let doc = load_document(&file)?;
            let set = named_set(&doc, &file, &name)?;
            Ok((int_value(&euler_measure_fiber(&choose_set(set, k))), Some("fiber"), None))
        }
        Command::Color { graph, file, name } => {
            let g = files::parse_graph(&read_file(&graph)?).map_err(CommandError::Input)?;
            let doc = load_document(&file)?;
            let set = named_set(&doc, &file, &name)?;
            Ok((int_value(&euler_measure_fiber(&coloring_set(&g, set))), Some("fiber"), None))
        }
        Command::Fabulous { file, name } => {
            let doc = load_document(&file)?;
            let line = named_line(&doc, &file, &name)?;
            Ok((int_value(&fabulous_chi(&line)), None, None))
        }
        Command::Series { series } => dispatch_series(series),
        Command::Trace { file, name, map } => {
            let doc = load_document(&file)?;
            let set = named_set(&doc, &file, &name)?;
            let g = files::parse_affine_map(&read_file(&map)?).map_err(CommandError::Input)?;
            if g.dim() != set.dim {
                return Err(CommandError::Input(format!(
                    "the map acts on dimension {}, the set lives in dimension {}",
                    g.dim(),
                    set.dim
                )));
            }
            let t = trace(set, &g).map_err(|e| CommandError::Domain(e.to_string()))?;
            Ok((int_value(&t), Some("fiber"), None))
        }
        Command::Character { values, table } => {
            let vals = files::parse_values(&read_file(&values)?).map_err(CommandError::Input)?;
            let tab = files::parse_table(&read_file(&table)?).map_err(CommandError::Input)?;
            let m = character_multiplicities(&vals, &tab)
                .map_err(|e| CommandError::Input(e.to_string()))?;
            Ok((ResultValue::Rationals(m.iter().map(format_rat).collect()), None, None))
        }
    }
}

fn dispatch_series(series: SeriesCommand) -> Outcome {
    match series {
        SeriesCommand::Subsets { file, name, output } => {
            let doc = load_document(&file)?;
            let line = named_line(&doc, &file, &name)?;
            let s = polyhedral_subsets_series(&line);
            Ok((series_value(&s, &output, 1)?, None, Some("at_plus_1")))
        }
        SeriesCommand::Pairs { output } => {
            let s = pairs_of_subsets_series();
            Ok((series_value(&s, &output, 1)?, None, Some("at_plus_1")))
        }
        SeriesCommand::Chizero { prefix } => match prefix {
            Some(n) => Ok((int_list(&chi_zero_subsets_coefficients(n)), None, Some("at_plus_1"))),
            None => {
                let e = chi_zero_subsets_regularized().expect_err("the series diverges");
                Err(CommandError::Domain(e.to_string()))
            }
        },
        SeriesCommand::Mapspace { m, f0, f1, output } => {
            if m < 1 {
                return Err(CommandError::Input("the target must have at least one point".into()));
            }
            let s = mapspace_series(m, f0, f1);
            Ok((series_value(&s, &output, -1)?, None, Some("at_minus_1")))
        }
        SeriesCommand::Choose2 { m, f0, f1, output } => {
            if m < 1 {
                return Err(CommandError::Input("the target must have at least one point".into()));
            }
            let s = choose2_transform(&mapspace_series(m, f0, f1))
                .map_err(|e| CommandError::Domain(e.to_string()))?;
            Ok((series_value(&s, &output, -1)?, None, Some("at_minus_1")))
        }
    }
}
