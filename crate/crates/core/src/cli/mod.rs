//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a sweep found a violation, 2 usage or input
//! error.

mod record;

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::fillings::{fibonacci, fillings_of, LensSpace};
use crate::rationals::{cf_eval, cf_measures, hj_expand, st_decompose, Fraction};
use crate::serial::Decimal;
use crate::theorems::{run_check, Check, ScanReport, SweepOptions};
use crate::zero_tuples::enumerate_zero_tuples;

pub use record::{Extremal, OutputRecord, CSV_HEADER, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lensfill",
    version,
    about = "Minimal symplectic fillings of lens spaces and exhaustive checks of their b2/pi1 bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Continued-fraction expansion, len/U/V and S/T word of p/q
    Cf(CfArgs),
    /// Admissible zero tuples of length k
    ZeroTuples(ZeroTuplesArgs),
    /// Minimal symplectic fillings of L(p,q)
    Fillings(FillingsArgs),
    /// Run an exhaustive sweep
    Verify(VerifyArgs),
    /// Fibonacci number F_n (F_1 = F_2 = 1)
    Fib(FibArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CfArgs {
    #[arg(required_unless_present = "eval")]
    p: Option<BigInt>,
    #[arg(required_unless_present = "eval")]
    q: Option<BigInt>,
    /// Evaluate a comma-separated tuple instead, e.g. 2,1,2
    #[arg(long, conflicts_with_all = ["p", "q"], allow_hyphen_values = true)]
    eval: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct ZeroTuplesArgs {
    k: usize,
    /// Print only the number of tuples
    #[arg(long)]
    count: bool,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct FillingsArgs {
    p: BigInt,
    q: BigInt,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    ThmDivisibility,
    ThmLength,
    CensusD2,
    CensusFib,
    Fibonacci,
    Identities,
    All,
}

impl Which {
    fn checks(self) -> Vec<Check> {
        match self {
            Which::ThmDivisibility => vec![Check::ThmDivisibility],
            Which::ThmLength => vec![Check::ThmLength],
            Which::CensusD2 => vec![Check::CensusD2],
            Which::CensusFib => vec![Check::CensusFib],
            Which::Fibonacci => vec![Check::Fibonacci],
            Which::Identities => vec![Check::Identities],
            Which::All => Check::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    which: Which,
    /// Largest p swept by the lens-space and identity checks
    #[arg(long, default_value_t = 300, value_parser = clap::value_parser!(u64).range(2..))]
    p_max: u64,
    /// Largest V examined by the Fibonacci check
    #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u64).range(1..=40))]
    l_max: u64,
    /// Worker threads; 0 uses all available cores
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// table or json (one report per line)
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Debug, Args)]
struct FibArgs {
    #[arg(value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Usage and input errors, reported with exit code 2.
#[derive(Debug)]
struct UsageError(String);

impl From<crate::Error> for UsageError {
    fn from(e: crate::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<io::Error> for UsageError {
    fn from(e: io::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<csv::Error> for UsageError {
    fn from(e: csv::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<serde_json::Error> for UsageError {
    fn from(e: serde_json::Error) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Cf(a) => cmd_cf(a, out),
        Command::ZeroTuples(a) => cmd_zero_tuples(a, out),
        Command::Fillings(a) => cmd_fillings(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Fib(a) => cmd_fib(a, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn lens_from(p: BigInt, q: BigInt) -> Result<LensSpace, UsageError> {
    Ok(LensSpace::new(p, q)?)
}

fn bracketed(xs: &[BigInt]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn wire(xs: &[BigInt]) -> Vec<Decimal> {
    xs.iter().map(Decimal::from).collect()
}

fn write_json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), UsageError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn parse_tuple(s: &str) -> Result<Vec<BigInt>, UsageError> {
    let trimmed = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    if trimmed.trim().is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| UsageError(format!("invalid tuple entry {:?}", x.trim())))
        })
        .collect()
}

fn cmd_cf(a: CfArgs, out: &mut dyn Write) -> CmdResult {
    if let Some(spec) = a.eval {
        let t = parse_tuple(&spec)?;
        let value = cf_eval(&t);
        match a.format {
            Format::Table => writeln!(out, "value: {value}")?,
            Format::Json => write_json_line(
                out,
                &json!({ "tuple": wire(&t), "value": value.to_string() }),
            )?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(["tuple", "value"])?;
                let joined: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                w.write_record([joined.join(";"), value.to_string()])?;
                w.flush()?;
            }
        }
        return Ok(EXIT_OK);
    }
    let (p, q) = (
        a.p.expect("required by clap"),
        a.q.expect("required by clap"),
    );
    let lens = lens_from(p, q)?;
    let f: Fraction = lens.fraction();
    let expansion = hj_expand(&f)?;
    let m = cf_measures(&f)?;
    let word = st_decompose(&f)?;
    match a.format {
        Format::Table => {
            writeln!(out, "fraction:  {f}")?;
            writeln!(out, "expansion: {}", bracketed(expansion.coeffs()))?;
            writeln!(out, "len:       {}", m.len)?;
            writeln!(out, "U:         {}", m.u)?;
            writeln!(out, "V:         {}", m.v)?;
            writeln!(out, "word:      {word}")?;
        }
        Format::Json => write_json_line(
            out,
            &json!({
                "p": Decimal::from(f.num()),
                "q": Decimal::from(f.den()),
                "expansion": wire(expansion.coeffs()),
                "len": m.len,
                "U": Decimal::from(&m.u),
                "V": Decimal::from(&m.v),
                "word": word.to_string(),
            }),
        )?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["p", "q", "expansion", "len", "U", "V", "word"])?;
            let joined: Vec<String> = expansion.coeffs().iter().map(|x| x.to_string()).collect();
            w.write_record([
                f.num().to_string(),
                f.den().to_string(),
                joined.join(";"),
                m.len.to_string(),
                m.u.to_string(),
                m.v.to_string(),
                word.to_string(),
            ])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_zero_tuples(a: ZeroTuplesArgs, out: &mut dyn Write) -> CmdResult {
    let tuples = enumerate_zero_tuples(a.k)?;
    if a.count {
        match a.format {
            Format::Json => write_json_line(out, &json!({ "k": a.k, "count": tuples.len() }))?,
            _ => writeln!(out, "{}", tuples.len())?,
        }
        return Ok(EXIT_OK);
    }
    match a.format {
        Format::Table => {
            for t in &tuples {
                writeln!(out, "{t}")?;
            }
        }
        Format::Json => {
            for t in &tuples {
                write_json_line(out, &t.entries())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record((1..=a.k).map(|i| format!("n{i}")))?;
            for t in &tuples {
                w.write_record(t.entries().iter().map(|n| n.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_fillings(a: FillingsArgs, out: &mut dyn Write) -> CmdResult {
    let lens = lens_from(a.p, a.q)?;
    let records = fillings_of(&lens)
        .iter()
        .map(OutputRecord::from_filling)
        .collect::<crate::Result<Vec<_>>>()?;
    match a.format {
        Format::Table => {
            let m = cf_measures(&lens.fraction())?;
            writeln!(
                out,
                "{lens}  canonical {}  cap {}  len {}  U {}  V {}",
                lens.canonical(),
                lens.cap(),
                m.len,
                m.u,
                m.v
            )?;
            writeln!(out, "{:<24} {:>6} {:>6}  extremal", "tuple", "b2", "pi1")?;
            for r in &records {
                let ext = r
                    .extremal
                    .as_ref()
                    .map(|e| format!("n={} d={} c={}", e.n, e.d, e.c))
                    .unwrap_or_else(|| "-".to_string());
                let tuple: Vec<String> = r.tuple.iter().map(|x| x.to_string()).collect();
                writeln!(
                    out,
                    "{:<24} {:>6} {:>6}  {ext}",
                    format!("({})", tuple.join(",")),
                    r.b2,
                    r.pi1
                )?;
            }
        }
        Format::Json => {
            for r in &records {
                write_json_line(out, r)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(CSV_HEADER)?;
            for r in &records {
                w.write_record(r.csv_row())?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn write_report_table(out: &mut dyn Write, r: &ScanReport) -> io::Result<()> {
    let bound_name = if r.check == Check::Fibonacci {
        "l_max"
    } else {
        "p_max"
    };
    writeln!(
        out,
        "{}  {bound_name}={}  checked={}  violations={}  equality_cases={}  {}",
        r.check,
        r.bound,
        r.checked,
        r.violations.len(),
        r.equality_cases.len(),
        if r.is_success() { "PASS" } else { "FAIL" }
    )?;
    for v in &r.violations {
        writeln!(out, "  violation [{}]: {}", v.rule, v.witness)?;
    }
    for w in &r.equality_cases {
        writeln!(out, "  equality: {w}")?;
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if a.format == Format::Csv {
        return Err(UsageError("verify supports --format table or json".into()));
    }
    let opts = SweepOptions::with_jobs(a.jobs);
    let mut code = EXIT_OK;
    for check in a.which.checks() {
        let bound = if check == Check::Fibonacci {
            a.l_max
        } else {
            a.p_max
        };
        let report = run_check(check, bound, opts);
        if !report.is_success() {
            code = EXIT_VIOLATION;
        }
        match a.format {
            Format::Json => write_json_line(out, &report)?,
            _ => write_report_table(out, &report)?,
        }
    }
    Ok(code)
}

fn cmd_fib(a: FibArgs, out: &mut dyn Write) -> CmdResult {
    let value = fibonacci(a.n)?;
    match a.format {
        Format::Table => writeln!(out, "{value}")?,
        Format::Json => write_json_line(out, &json!({ "n": a.n, "value": Decimal(value) }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "value"])?;
            w.write_record([a.n.to_string(), value.to_string()])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}
