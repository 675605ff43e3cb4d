//! Command-line surface: argument parsing, input loading and reports.

pub mod commands;
pub mod documents;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::complexes::{cochain_algebra, OrderedSimplicialComplex};
use crate::dg_algebra::{basepoint_functional, reduced_subalgebra, DgAlgebra};
use crate::error::{Error, Result};
use crate::transfer::DEFAULT_ARITY_CAP;
use documents::{algebra_from_document, complex_from_document, parse_document, Document};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    Theorem1,
    Transfer,
}

#[derive(Debug, Parser)]
#[command(name = "ainf", version, about = "Exact A∞ transfer, Massey products and formality certificates")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    pub format: Format,
    /// Basepoint for reduction: a vertex name, a degree 0 basis name, or an index.
    #[arg(long, global = true)]
    pub basepoint: Option<String>,
    /// Work with the reduced algebra (augmentation ideal at the basepoint).
    #[arg(long, global = true)]
    pub reduced: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a document.
    Validate { input: PathBuf },
    /// Cohomology dimensions, representatives, product table and cup length.
    Cohomology { input: PathBuf },
    /// Transferred A∞-structure on cohomology.
    Transfer {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ARITY_CAP as u64, value_parser = clap::value_parser!(u64).range(2..))]
        cap: u64,
    },
    /// Massey product of cohomology classes, e.g. `--class '[x]' --class '2*[y]+[z]'`.
    Massey {
        input: PathBuf,
        #[arg(long = "class", required = true)]
        classes: Vec<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Node budget for the search used when n ≥ 4 and no uniqueness holds.
        #[arg(long, default_value_t = crate::massey::DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Formality certificate.
    Formality {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ARITY_CAP as u64, value_parser = clap::value_parser!(u64).range(2..))]
        cap: u64,
        #[arg(long, value_enum, default_value_t = Pipeline::Transfer)]
        pipeline: Pipeline,
    },
    /// List or check the shipped examples.
    Corpus {
        #[arg(long)]
        run_all: bool,
        /// Only entries whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ARITY_CAP as u64, value_parser = clap::value_parser!(u64).range(2..))]
        cap: u64,
    },
    /// Print a corpus entry as a document (with `--reduced`, its reduced algebra).
    Export {
        name: String,
        /// Export a simplicial entry as its cochain algebra.
        #[arg(long)]
        algebra: bool,
    },
}

/// Result of a command: a machine document, its human rendering, and the
/// exit status.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub machine: Value,
    pub human: String,
    pub code: i32,
}

impl Report {
    pub fn new(machine: Value, human: String, code: i32) -> Self {
        Report { machine, human, code }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human.clone(),
            Format::Machine => serde_json::to_string_pretty(&self.machine).expect("serializable report"),
        }
    }
}

/// Exit status for an error: parse and usage problems are 2, everything
/// else is a negative verdict.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Malformed(_) | Error::MalformedComplex(_) => EXIT_USAGE,
        _ => EXIT_NEGATIVE,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Malformed(_) => "malformed",
        Error::Inhomogeneous(_) => "inhomogeneous",
        Error::InvalidComplex { .. } => "invalid-complex",
        Error::InvalidAlgebra(_) => "invalid-algebra",
        Error::IncompleteStructure(_) => "incomplete-structure",
        Error::NotAMorphism => "not-a-morphism",
        Error::SignConventionFault(_) => "sign-convention-fault",
        Error::NotApplicable(_) => "not-applicable",
        Error::DefiningSystemViolation { .. } => "defining-system-violation",
        Error::UndefinedProduct(_) => "undefined-product",
        Error::Disconnected { .. } => "disconnected",
        Error::InvalidSpan(_) => "invalid-span",
        Error::MalformedComplex(_) => "malformed-complex",
        Error::Parse { .. } => "parse",
    }
}

pub fn error_report(e: &Error) -> Report {
    let mut machine = json!({ "error": error_kind(e), "message": e.to_string() });
    if let Error::Parse { line, column, .. } = e {
        machine["line"] = json!(line);
        machine["column"] = json!(column);
    }
    Report::new(machine, format!("error: {e}"), exit_code(e))
}

/// A loaded input: the algebra to work with and, for complexes, the complex.
pub struct Input {
    pub algebra: DgAlgebra,
    pub complex: Option<OrderedSimplicialComplex>,
    pub reduced: bool,
}

pub fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Malformed(format!("cannot read standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn resolve_basepoint(a: &DgAlgebra, x: Option<&OrderedSimplicialComplex>, spec: Option<&str>) -> Result<usize> {
    let Some(spec) = spec else {
        return Ok(x.map_or(0, |x| x.basepoint()));
    };
    if let Some(x) = x {
        if let Some(i) = x.vertices().iter().position(|v| v == spec) {
            return Ok(i);
        }
    }
    let s = a.space();
    if let Some(i) = s.basis_names(0).iter().position(|n| n == spec) {
        return Ok(i);
    }
    spec.parse::<usize>()
        .map_err(|_| Error::Malformed(format!("unknown basepoint {spec:?}")))
}

/// Parses a document from its text and applies `--reduced`/`--basepoint`.
pub fn load_text(text: &str, reduced: bool, basepoint: Option<&str>) -> Result<Input> {
    let (algebra, complex, already_reduced) = match parse_document(text)? {
        Document::Algebra(doc) => (algebra_from_document(&doc, text)?, None, doc.reduced),
        Document::Complex(doc) => {
            let x = complex_from_document(&doc, text)?;
            (cochain_algebra(&x)?, Some(x), false)
        }
    };
    if !reduced || already_reduced {
        return Ok(Input {
            algebra,
            complex,
            reduced: already_reduced,
        });
    }
    let bp = resolve_basepoint(&algebra, complex.as_ref(), basepoint)?;
    let algebra = reduced_subalgebra(&algebra, &basepoint_functional(&algebra, bp)?)?;
    Ok(Input {
        algebra,
        complex,
        reduced: true,
    })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Report {
    let load = |path: &PathBuf| -> Result<Input> {
        let text = read_input(path)?;
        load_text(&text, cli.reduced, cli.basepoint.as_deref())
    };
    let result = match &cli.command {
        Command::Validate { input } => load(input).map(|i| commands::validate(&i)),
        Command::Cohomology { input } => load(input).and_then(|i| commands::cohomology(&i)),
        Command::Transfer { input, cap } => load(input).and_then(|i| commands::transfer(&i, *cap as usize)),
        Command::Massey {
            input,
            classes,
            n,
            budget,
        } => load(input).and_then(|i| commands::massey(&i, classes, *n, *budget)),
        Command::Formality { input, cap, pipeline } => {
            load(input).and_then(|i| commands::formality(&i, *cap as usize, *pipeline))
        }
        Command::Corpus { run_all, filter, cap } => commands::corpus(*run_all, filter.as_deref(), *cap as usize),
        Command::Export { name, algebra } => commands::export(name, *algebra, cli.reduced),
    };
    result.unwrap_or_else(|e| error_report(&e))
}

/// Parses arguments and runs; usage errors become exit status 2.
pub fn run_from<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let report = run(&cli);
            (report.render(cli.format), report.code)
        }
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            (e.to_string(), code)
        }
    }
}
