//! Command-line front end. `run` does all the work and returns the exit
//! status with the text for stdout and stderr, so it can be tested in-process.
//!
//! Exit status: 0 success (a gap is a result, not an error), 2 malformed
//! input, 3 semantic error, 4 property-suite failure.

use std::fmt::Write as _;
use std::fs;

use clap::{Args, Parser, Subcommand};

use crate::ast::parse_formula;
use crate::classical::{eval_classical, Environment};
use crate::error::Error;
use crate::harness::{self, fixtures, CensusOptions, Property, Semantics};
use crate::model::{parse_model, Interpretation, Signature};
use crate::poly::{self, RelevanceMode, Sentence};
use crate::prop_relevance::{parse_stuck, PropAnalysis, StuckMap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_PROPERTY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "truthrel", version, about = "Three-valued truth for prenex sentences over finite models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print TRUE, FALSE or GAP for a sentence in a model.
    Eval(EvalArgs),
    /// Minimal truth-determining sets of a propositional formula.
    Tdsets(TdsetsArgs),
    /// Whether a sentence is t-relevant in a model, and why.
    Relevant(RelevantArgs),
    /// Classical two-valued evaluation.
    Classical(ClassicalArgs),
    /// Exhaustive census over all small models of a signature.
    Census(CensusArgs),
    /// Run the built-in fixture corpus.
    Fixtures(FixturesArgs),
}

#[derive(Debug, Args)]
pub struct ModelArg {
    /// Model file, or `fixture:NAME` for a built-in model.
    #[arg(long)]
    pub model: String,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub model: ModelArg,
    #[arg(long)]
    pub formula: String,
    /// interp or any
    #[arg(long, default_value = "interp")]
    pub mode: String,
    /// s3 (recursive rules) or s2 (single-variable rule)
    #[arg(long, default_value = "s3")]
    pub semantics: String,
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct TdsetsArgs {
    #[arg(long)]
    pub formula: String,
    /// Stuck values, e.g. `P=0,Q=1`.
    #[arg(long, default_value = "")]
    pub stuck: String,
}

#[derive(Debug, Args)]
pub struct RelevantArgs {
    #[command(flatten)]
    pub model: ModelArg,
    #[arg(long)]
    pub formula: String,
    #[arg(long, default_value = "interp")]
    pub mode: String,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    #[command(flatten)]
    pub model: ModelArg,
    #[arg(long)]
    pub formula: String,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    #[arg(long, default_value = "F/2,G/2")]
    pub signature: String,
    #[arg(long, default_value_t = 2)]
    pub max_universe: usize,
    /// `builtin` or a file with one sentence per line.
    #[arg(long, default_value = "builtin")]
    pub catalog: String,
    /// Comma-separated property names, or `all`.
    #[arg(long)]
    pub check_properties: Option<String>,
    #[arg(long, default_value_t = harness::census::DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct FixturesArgs {
    /// Print the built-in models instead of running the corpus.
    #[arg(long)]
    pub models: bool,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(i32, String), Failure>;

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_SYNTAX,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Tdsets(a) => cmd_tdsets(a),
        Command::Relevant(a) => cmd_relevant(a),
        Command::Classical(a) => cmd_classical(a),
        Command::Census(a) => cmd_census(a),
        Command::Fixtures(a) => cmd_fixtures(a),
    };
    match result {
        Ok((code, stdout)) => Output {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Output {
            code: EXIT_SYNTAX,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Lib(e)) => Output {
            code: if e.is_syntactic() { EXIT_SYNTAX } else { EXIT_SEMANTIC },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn usage<T>(r: crate::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(e.to_string()))
}

fn load_model(arg: &ModelArg) -> Result<Interpretation, Failure> {
    if let Some(name) = arg.model.strip_prefix("fixture:") {
        return fixtures::fixture_model(name).ok_or_else(|| {
            let names: Vec<&str> = fixtures::MODELS.iter().map(|m| m.name).collect();
            Failure::Usage(format!(
                "no built-in model `{name}`; available: {}",
                names.join(" ")
            ))
        });
    }
    let text = fs::read_to_string(&arg.model)
        .map_err(|e| Failure::Usage(format!("cannot read `{}`: {e}", arg.model)))?;
    Ok(parse_model(&text)?)
}

fn cmd_eval(a: &EvalArgs) -> CmdResult {
    let mode: RelevanceMode = usage(a.mode.parse())?;
    let semantics: Semantics = usage(a.semantics.parse())?;
    let m = load_model(&a.model)?;
    Sentence::parse(&a.formula)?;
    let (verdict, trace) = fixtures::evaluate_with(semantics, &a.formula, &m, mode)?;
    let mut out = format!("{verdict}\n");
    if a.trace {
        match trace {
            Some(t) => out.push_str(&t),
            None => out.push_str("(no rule tree for the single-variable rule)\n"),
        }
    }
    Ok((EXIT_OK, out))
}

fn braces(atoms: &[crate::ast::Atom]) -> String {
    let names: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    format!("{{{}}}", names.join(","))
}

fn cmd_tdsets(a: &TdsetsArgs) -> CmdResult {
    let stuck: StuckMap = usage(parse_stuck(&a.stuck))?;
    let f = parse_formula(&a.formula)?;
    let analysis = PropAnalysis::new(&f, &stuck)?;
    let mut out = String::new();
    for set in analysis.minimal_sets()? {
        out.push_str(&braces(&set));
        out.push('\n');
    }
    let redundant: Vec<String> = analysis.redundant().iter().map(|a| a.to_string()).collect();
    if redundant.is_empty() {
        out.push_str("redundant:\n");
    } else {
        let _ = writeln!(out, "redundant: {}", redundant.join(" "));
    }
    let _ = writeln!(out, "t-relevant: {}", if analysis.is_relevant() { "yes" } else { "no" });
    Ok((EXIT_OK, out))
}

fn cmd_relevant(a: &RelevantArgs) -> CmdResult {
    let mode: RelevanceMode = usage(a.mode.parse())?;
    let m = load_model(&a.model)?;
    let s = Sentence::parse(&a.formula)?;
    let mut out = String::new();
    if s.prenex.prefix().is_empty() {
        return Err(Failure::Lib(Error::Invalid(
            "relevance needs at least one quantifier".into(),
        )));
    }
    let (relevant, node) = poly::relevance_report(&s.prenex, &m, mode)?;
    out.push_str(if relevant { "RELEVANT\n" } else { "IRRELEVANT\n" });
    if s.negated {
        out.push_str("(relevance of the negated sentence, which is the same)\n");
    }
    out.push_str(&node.render());
    Ok((EXIT_OK, out))
}

fn cmd_classical(a: &ClassicalArgs) -> CmdResult {
    let m = load_model(&a.model)?;
    let f = parse_formula(&a.formula)?;
    m.check_formula(&f)?;
    let v = eval_classical(&f, &m, &Environment::new())?;
    Ok((EXIT_OK, if v { "TRUE\n" } else { "FALSE\n" }.to_string()))
}

fn cmd_census(a: &CensusArgs) -> CmdResult {
    if a.max_universe > a.cap {
        return Err(Failure::Lib(Error::CapExceeded {
            requested: a.max_universe,
            cap: a.cap,
        }));
    }
    let sig = usage(Signature::parse(&a.signature))?;
    let catalog = if a.catalog == "builtin" {
        harness::builtin_catalog(&sig)
    } else {
        let text = fs::read_to_string(&a.catalog)
            .map_err(|e| Failure::Usage(format!("cannot read `{}`: {e}", a.catalog)))?;
        harness::parse_catalog(&text)?
    };
    if catalog.is_empty() {
        return Err(Failure::Lib(Error::Invalid(format!(
            "no catalog sentence fits the signature {sig}"
        ))));
    }
    let properties = match &a.check_properties {
        Some(list) => usage(Property::parse_list(list))?,
        None => Vec::new(),
    };
    let opts = CensusOptions {
        max_size: a.max_universe,
        cap: a.cap,
        properties,
    };
    let report = harness::census_with(&catalog, &sig, &opts)?;
    let code = if report.violations().is_empty() { EXIT_OK } else { EXIT_PROPERTY };
    Ok((code, report.render()))
}

fn cmd_fixtures(a: &FixturesArgs) -> CmdResult {
    let mut out = String::new();
    if a.models {
        for m in fixtures::MODELS {
            let _ = writeln!(out, "# {}: {}", m.name, m.description);
            out.push_str(m.text);
            out.push('\n');
        }
        return Ok((EXIT_OK, out));
    }
    out.push_str("id\tmodel\tsemantics\tsentence\texpected\tgot\tresult\n");
    let mut failed = 0;
    for f in fixtures::fixtures() {
        let run = f.run()?;
        let ok = run.failed_conditions.is_empty() && run.verdict == f.expected;
        if !ok {
            failed += 1;
        }
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            f.id,
            f.model,
            f.semantics,
            f.sentence,
            f.expected,
            run.verdict,
            if ok { "PASS" } else { "FAIL" }
        );
        for c in run.failed_conditions {
            let _ = writeln!(out, "  condition fails: {c}");
        }
    }
    Ok((if failed == 0 { EXIT_OK } else { EXIT_PROPERTY }, out))
}
