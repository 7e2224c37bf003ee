//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when any check fails, 2 on
//! usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{batch_seeds, generate, load, GenConfig, InstanceFile};
use crate::report::VerificationReport;
use crate::thom::ConnectionData;
use crate::verify::{run_batch, CheckName};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Schema version of the JSON report document.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "cone-thom",
    version,
    about = "Exact verification of mapping cone Thom forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        /// Write the instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite on an instance file or on generated instances.
    Check {
        #[arg(value_enum)]
        name: CheckArg,
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare the construction with omega = 0, phi = 0 against the
    /// classical single-form Thom form.
    ClassicalCompare {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Bianchi,
    Closed,
    Fiber,
    BerezinCommute,
    ConePairLaws,
    Transgression,
    Rho,
    All,
}

impl From<CheckArg> for CheckName {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Bianchi => CheckName::Bianchi,
            CheckArg::Closed => CheckName::Closed,
            CheckArg::Fiber => CheckName::Fiber,
            CheckArg::BerezinCommute => CheckName::BerezinCommute,
            CheckArg::ConePairLaws => CheckName::ConePairLaws,
            CheckArg::Transgression => CheckName::Transgression,
            CheckArg::Rho => CheckName::Rho,
            CheckArg::All => CheckName::All,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct GenArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    max_degree: u32,
    #[arg(long, default_value_t = 3)]
    max_terms: usize,
    #[arg(long, default_value_t = 0)]
    t_degree: u32,
}

impl GenArgs {
    fn config(&self, seed: u64) -> GenConfig {
        GenConfig {
            max_degree: self.max_degree,
            max_terms: self.max_terms,
            t_degree: self.t_degree,
            ..GenConfig::new(self.m, self.n, seed)
        }
    }
}

#[derive(Args, Debug, Clone)]
struct SourceArgs {
    /// Instance file; mutually exclusive with the generation flags.
    #[arg(long, conflicts_with_all = ["seed", "m", "n", "count", "max_degree", "max_terms", "t_degree"])]
    instance: Option<PathBuf>,
    /// Number of generated instances, seeded from `--seed` by splitmix64.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[command(flatten)]
    gen: GenArgs,
}

impl SourceArgs {
    fn instances(&self) -> Result<Vec<ConnectionData>> {
        if let Some(path) = &self.instance {
            return Ok(vec![load(path)?]);
        }
        if self.count == 0 {
            return Err(Error::InvalidConfig("--count must be >= 1".into()));
        }
        batch_seeds(self.gen.seed, self.count)
            .into_iter()
            .map(|s| generate(&self.gen.config(s)))
            .collect()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct ReportDocument<'a> {
    schema_version: u32,
    check: &'a str,
    reports: &'a [VerificationReport],
    summary: Summary,
}

fn summarize(reports: &[VerificationReport]) -> Summary {
    let passed = reports.iter().filter(|r| r.passed()).count();
    Summary {
        total: reports.len(),
        passed,
        failed: reports.len() - passed,
    }
}

/// Renders reports in the requested format.
pub fn render(check: &str, reports: &[VerificationReport], json: bool) -> Result<String> {
    let summary = summarize(reports);
    if json {
        let doc = ReportDocument {
            schema_version: REPORT_SCHEMA_VERSION,
            check,
            reports,
            summary,
        };
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        return Ok(s);
    }
    let mut s = String::new();
    for r in reports {
        s.push_str(&r.text_line());
        s.push('\n');
    }
    s.push_str(&format!(
        "SUMMARY {} checks, {} passed, {} failed\n",
        summary.total, summary.passed, summary.failed
    ));
    Ok(s)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_suite(name: CheckName, source: &SourceArgs, output: &OutputArgs) -> Result<i32> {
    let instances = source.instances()?;
    let reports = run_batch(name, &instances);
    let text = render(name.as_str(), &reports, output.format == Format::Json)?;
    emit(&text, output.out.as_ref())?;
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen { gen, out } => {
            let config = gen.config(gen.seed);
            let data = generate(&config)?;
            let json = InstanceFile::from_data(&data, Some(config)).to_json()?;
            emit(&format!("{json}\n"), out.as_ref())?;
            Ok(EXIT_PASS)
        }
        Command::Check {
            name,
            source,
            output,
        } => run_suite(name.into(), &source, &output),
        Command::ClassicalCompare { source, output } => {
            run_suite(CheckName::ClassicalCompare, &source, &output)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
