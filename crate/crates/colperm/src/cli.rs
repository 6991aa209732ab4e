//! Command-line front end. Every subcommand is a thin wrapper over a library
//! call; no arithmetic happens here.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use colperm_core::{parse_perm, EnumerationBudget, Search};

use crate::checks::bijection_suite;
use crate::error::{CliError, ExitCode};
use crate::parallel::count_partitioned;
use crate::report::{count_report_json, csv_field, OutputFormat};
use crate::sequence::{evaluate, run_sequence, Formula, FormulaArgs};
use crate::setspec::parse_set_spec;
use crate::verify::{run_verify, GridBounds, Theorem, DEFAULT_CELL_BUDGET};

#[derive(Debug, Parser)]
#[command(name = "colperm", version, about = "Exact counting of coloured permutations avoiding coloured patterns")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the elements of S_n^(r) avoiding a pattern set.
    Count(CountArgs),
    /// List the elements of S_n^(r) avoiding a pattern set.
    List(ListArgs),
    /// Evaluate a closed form.
    Formula(FormulaCmd),
    /// Compare closed forms with exhaustive counts over a parameter grid.
    Verify(VerifyArgs),
    /// Run the exhaustive bijection checks.
    Check(CheckArgs),
    /// Print closed-form terms for a range of n.
    Sequence(SequenceArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    /// `T:k=..,r=..,m=..,I=..`, `U:k=..,r=..,a=..,b=..,I=..` or `@file.pat`.
    #[arg(long)]
    pub set: String,
    /// Count permutations avoiding the rest of the set and containing this
    /// pattern exactly once.
    #[arg(long, value_name = "PATTERN")]
    pub exactly_once: Option<String>,
    /// Split the search by first entry across threads.
    #[arg(long)]
    pub parallel: bool,
    /// Filter every element of S_n^(r) instead of pruning.
    #[arg(long, conflicts_with = "parallel")]
    pub naive: bool,
    #[arg(long, default_value_t = u64::MAX)]
    pub budget: u64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ListArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub set: String,
    #[arg(long, value_name = "PATTERN")]
    pub exactly_once: Option<String>,
    #[arg(long, default_value_t = u64::MAX)]
    pub budget: u64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,
}

#[derive(Debug, Args)]
pub struct FamilyFlags {
    #[arg(long)]
    pub k: u32,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
}

impl FamilyFlags {
    fn to_args(&self) -> FormulaArgs {
        FormulaArgs { k: self.k, r: self.r, d: self.d, m: self.m, a: self.a, b: self.b }
    }
}

#[derive(Debug, Args)]
pub struct FormulaCmd {
    #[arg(value_enum)]
    pub formula: Formula,
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub family: FamilyFlags,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[arg(value_enum)]
    pub formula: Formula,
    #[command(flatten)]
    pub family: FamilyFlags,
    #[arg(long)]
    pub from: u32,
    #[arg(long)]
    pub to: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub theorem: Theorem,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub max_n: Option<u32>,
    #[arg(long)]
    pub max_k: Option<u32>,
    #[arg(long)]
    pub max_r: Option<u32>,
    /// Per-cell cap on search states; cells over it are reported as skipped.
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,
    /// Also write the report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub suite: CheckSuite,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckSuite {
    Bijections,
}

fn build_search(
    n: u32,
    r: u32,
    set: &str,
    exactly_once: Option<&str>,
    budget: u64,
) -> Result<Search, CliError> {
    let set = parse_set_spec(set, r)?;
    let search = match exactly_once {
        Some(text) => Search::exactly_once(n, r, &set, &parse_perm(text, Some(r))?)?,
        None => Search::avoiders(n, r, &set)?,
    };
    Ok(search.with_budget(EnumerationBudget::new(budget)?))
}

fn run_count(args: &CountArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let search = build_search(args.n, args.r, &args.set, args.exactly_once.as_deref(), args.budget)?;
    let report = if args.parallel {
        count_partitioned(&search)?
    } else if args.naive {
        search.count_naive()?
    } else {
        search.count()?
    };
    match args.format {
        OutputFormat::Json => writeln!(out, "{}", count_report_json(&report))?,
        OutputFormat::Csv => {
            writeln!(out, "n,r,tag,count,states_visited")?;
            writeln!(
                out,
                "{},{},{},{},{}",
                report.n,
                report.r,
                csv_field(&report.pattern_set_tag),
                report.count,
                report.states_visited
            )?;
        }
        OutputFormat::Plain => writeln!(out, "{}", report.count)?,
    }
    Ok(ExitCode::Success)
}

fn run_list(args: &ListArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let search = build_search(args.n, args.r, &args.set, args.exactly_once.as_deref(), args.budget)?;
    let mut io_err = None;
    let mut first = true;
    if args.format == OutputFormat::Json {
        write!(out, "[")?;
    }
    if args.format == OutputFormat::Csv {
        writeln!(out, "permutation")?;
    }
    search.for_each(|p| {
        if io_err.is_some() {
            return;
        }
        let res = match args.format {
            OutputFormat::Plain => writeln!(out, "{p}"),
            OutputFormat::Csv => writeln!(out, "{}", csv_field(&p.to_string())),
            OutputFormat::Json => {
                let sep = if first { "" } else { "," };
                write!(out, "{sep}\"{p}\"")
            }
        };
        first = false;
        if let Err(e) = res {
            io_err = Some(e);
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    if args.format == OutputFormat::Json {
        writeln!(out, "]")?;
    }
    Ok(ExitCode::Success)
}

fn run_verify_cmd(args: &VerifyArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let bounds = GridBounds {
        k: args.k,
        r: args.r,
        d: args.d,
        m: args.m,
        n: args.n,
        max_n: args.max_n,
        max_k: args.max_k,
        max_r: args.max_r,
        budget: args.budget,
    };
    let report = run_verify(args.theorem, &bounds)?;
    let text = report.render(args.format);
    out.write_all(text.as_bytes())?;
    if let Some(path) = &args.out {
        fs::write(path, &text).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    }
    Ok(report.exit_code())
}

fn run_check(args: &CheckArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let CheckSuite::Bijections = args.suite;
    let results = bijection_suite()?;
    match args.format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&results).expect("serializes"))?,
        OutputFormat::Csv => {
            writeln!(out, "name,passed,detail")?;
            for c in &results {
                writeln!(out, "{},{},{}", csv_field(&c.name), c.passed, csv_field(&c.detail))?;
            }
        }
        OutputFormat::Plain => {
            for c in &results {
                writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            }
        }
    }
    Ok(if results.iter().all(|c| c.passed) { ExitCode::Success } else { ExitCode::Mismatch })
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Count(a) => run_count(a, out),
        Command::List(a) => run_list(a, out),
        Command::Formula(a) => {
            writeln!(out, "{}", evaluate(a.formula, a.n, &a.family.to_args())?)?;
            Ok(ExitCode::Success)
        }
        Command::Sequence(a) => {
            writeln!(out, "{}", run_sequence(a.formula, &a.family.to_args(), a.from, a.to)?)?;
            Ok(ExitCode::Success)
        }
        Command::Verify(a) => run_verify_cmd(a, out),
        Command::Check(a) => run_check(a, out),
    }
}

/// Parses `args` (including the program name), runs, and returns the exit
/// status. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Usage as i32 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code() as i32
        }
    }
}
