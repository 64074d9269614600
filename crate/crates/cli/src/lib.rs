//! Command-line front end for `exunits-core`.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error,
//! 3 resource limit, 70 internal error.

use std::io::{self, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use exunits_core::arith::{factorize, BigCount, Factorization};
use exunits_core::oracle::{count_by_enumeration, sumset_table};
use exunits_core::repcount::{phi_k_with_sign, CountQuery, SignPlacement};
use exunits_core::residues::{enumerate_exceptional_units, enumerate_units};
use exunits_core::{Error, Limits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 70;

const PARALLEL_CHUNK: u64 = 4096;

#[derive(Debug, Parser)]
#[command(
    name = "exunits",
    version,
    about = "Count representations of residues mod n as sums of k exceptional units"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Oracle budget: maximum number of (k-1)-tuples visited by enumeration.
    #[arg(long, global = true, env = "EXUNITS_BUDGET")]
    budget: Option<u64>,

    /// Compute table rows and verify sweeps on all cores. Output order is unchanged.
    #[arg(long, global = true)]
    parallel: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count k-tuples of exceptional units summing to c mod n.
    Count(CountArgs),
    /// Counts for every residue c = 0..n-1.
    Table(TableArgs),
    /// List the units or exceptional units mod n.
    Units(UnitsArgs),
    /// Compare the closed form against the convolution oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(2..))]
    k: u32,
    /// Target residue; any integer, reduced mod n.
    #[arg(short = 'c', allow_negative_numbers = true, value_parser = parse_bigint)]
    c: BigInt,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Sign::PerPrime, hide = true)]
    sign_placement: Sign,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    #[arg(short = 'k', value_parser = clap::value_parser!(u32).range(2..))]
    k: u32,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct UnitsArgs {
    #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// List exceptional units instead of all units.
    #[arg(long)]
    exceptional: bool,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n_max: u64,
    /// Comma-separated list of k values.
    #[arg(
        long = "k",
        short = 'k',
        value_delimiter = ',',
        default_value = "2,3,4",
        value_parser = clap::value_parser!(u32).range(2..)
    )]
    ks: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Sign::PerPrime, hide = true)]
    sign_placement: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Enumerate,
    Convolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Sign {
    PerPrime,
    Global,
}

impl From<Sign> for SignPlacement {
    fn from(s: Sign) -> Self {
        match s {
            Sign::PerPrime => SignPlacement::PerPrime,
            Sign::Global => SignPlacement::Global,
        }
    }
}

fn parse_bigint(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not an integer"))
}

/// How a count was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodTag {
    Formula,
    Enumeration,
    Convolution,
}

impl MethodTag {
    fn as_str(self) -> &'static str {
        match self {
            MethodTag::Formula => "formula",
            MethodTag::Enumeration => "enumeration",
            MethodTag::Convolution => "convolution",
        }
    }
}

impl From<Method> for MethodTag {
    fn from(m: Method) -> Self {
        match m {
            Method::Formula => MethodTag::Formula,
            Method::Enumerate => MethodTag::Enumeration,
            Method::Convolution => MethodTag::Convolution,
        }
    }
}

/// One emitted count. Big integers are decimal strings so JSON consumers
/// never round them through a float.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: String,
    pub k: u32,
    pub c: String,
    pub count: String,
    pub method: MethodTag,
    pub elapsed_ms: u64,
}

impl OutputRecord {
    fn new(n: u64, k: u32, c: u64, count: &BigCount, method: MethodTag, started: Instant) -> Self {
        OutputRecord {
            n: n.to_string(),
            k,
            c: c.to_string(),
            count: count.to_string(),
            method,
            elapsed_ms: started.elapsed().as_millis() as u64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn to_plain(&self) -> String {
        format!(
            "n={} k={} c={} count={} method={} elapsed_ms={}",
            self.n,
            self.k,
            self.c,
            self.count,
            self.method.as_str(),
            self.elapsed_ms
        )
    }

    pub fn to_csv(&self) -> String {
        format!("{},{},{},{}", self.n, self.k, self.c, self.count)
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.to_plain(),
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

pub const CSV_HEADER: &str = "n,k,c,count";

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(io::Error),
    Mismatch,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<(), CliError>;

struct Context {
    limits: Limits,
    parallel: bool,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let mut limits = Limits::default();
    if let Some(budget) = cli.budget {
        limits = limits.with_budget(budget);
    }
    let ctx = Context {
        limits,
        parallel: cli.parallel,
    };
    let result = match cli.command {
        Command::Count(a) => cmd_count(&ctx, a, out),
        Command::Table(a) => cmd_table(&ctx, a, out),
        Command::Units(a) => cmd_units(&ctx, a, out),
        Command::Verify(a) => cmd_verify(&ctx, a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Mismatch) => EXIT_MISMATCH,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INTERNAL
        }
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ResourceLimit { .. } => EXIT_RESOURCE,
                Error::NotDivisible { .. } | Error::DivisionByZero => EXIT_INTERNAL,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn formula_count(
    factors: &Factorization,
    k: u32,
    c: impl Into<BigInt>,
    sign: SignPlacement,
) -> Result<BigCount, Error> {
    let q = CountQuery::new(factors.n(), k, c)?;
    phi_k_with_sign(&q, factors, sign)
}

fn cmd_count(ctx: &Context, a: CountArgs, out: &mut dyn Write) -> CliResult {
    let started = Instant::now();
    let query = CountQuery::new(a.n, a.k, a.c)?;
    let count = match a.method {
        Method::Formula => {
            let factors = factorize(a.n)?;
            phi_k_with_sign(&query, &factors, a.sign_placement.into())?
        }
        Method::Enumerate => {
            let subset = enumerate_exceptional_units(a.n, &ctx.limits)?;
            count_by_enumeration(&subset, a.k, query.c(), &ctx.limits)?
        }
        Method::Convolution => {
            let subset = enumerate_exceptional_units(a.n, &ctx.limits)?;
            let table = sumset_table(&subset, a.k, &ctx.limits)?;
            table.get(query.c()).clone()
        }
    };
    let record = OutputRecord::new(a.n, a.k, query.c(), &count, a.method.into(), started);
    if a.format == Format::Csv {
        writeln!(out, "{CSV_HEADER}")?;
    }
    writeln!(out, "{}", record.render(a.format))?;
    Ok(())
}

fn cmd_table(ctx: &Context, a: TableArgs, out: &mut dyn Write) -> CliResult {
    let (n, k) = (a.n, a.k);
    let tag = MethodTag::from(a.method);
    if a.format == Format::Csv {
        writeln!(out, "{CSV_HEADER}")?;
    }
    let emit = |record: OutputRecord, out: &mut dyn Write| -> CliResult {
        writeln!(out, "{}", record.render(a.format))?;
        Ok(())
    };
    match a.method {
        Method::Convolution => {
            let started = Instant::now();
            let subset = enumerate_exceptional_units(n, &ctx.limits)?;
            let table = sumset_table(&subset, k, &ctx.limits)?;
            // the whole table is one computation; every row reports its cost
            for (c, count) in table.counts().iter().enumerate() {
                emit(OutputRecord::new(n, k, c as u64, count, tag, started), out)?;
            }
        }
        Method::Enumerate => {
            let subset = enumerate_exceptional_units(n, &ctx.limits)?;
            let row = |c: u64| -> Result<OutputRecord, Error> {
                let started = Instant::now();
                let count = count_by_enumeration(&subset, k, c, &ctx.limits)?;
                Ok(OutputRecord::new(n, k, c, &count, tag, started))
            };
            for_each_row(ctx.parallel, n, row, |r| emit(r, out))?;
        }
        Method::Formula => {
            let factors = factorize(n)?;
            let row = |c: u64| -> Result<OutputRecord, Error> {
                let started = Instant::now();
                let count = formula_count(&factors, k, c, SignPlacement::PerPrime)?;
                Ok(OutputRecord::new(n, k, c, &count, tag, started))
            };
            for_each_row(ctx.parallel, n, row, |r| emit(r, out))?;
        }
    }
    Ok(())
}

/// Evaluates `row` for c = 0..n and hands the results to `sink` in
/// ascending order, optionally computing chunks of rows in parallel.
fn for_each_row<R, S>(parallel: bool, n: u64, row: R, mut sink: S) -> CliResult
where
    R: Fn(u64) -> Result<OutputRecord, Error> + Sync,
    S: FnMut(OutputRecord) -> CliResult,
{
    if !parallel {
        for c in 0..n {
            sink(row(c)?)?;
        }
        return Ok(());
    }
    let mut start = 0;
    while start < n {
        let end = n.min(start + PARALLEL_CHUNK);
        let chunk: Vec<_> = (start..end).into_par_iter().map(&row).collect();
        for record in chunk {
            sink(record?)?;
        }
        start = end;
    }
    Ok(())
}

fn cmd_units(ctx: &Context, a: UnitsArgs, out: &mut dyn Write) -> CliResult {
    let subset = if a.exceptional {
        enumerate_exceptional_units(a.n, &ctx.limits)?
    } else {
        enumerate_units(a.n, &ctx.limits)?
    };
    match a.format {
        Format::Json => {
            let members = subset.to_vec();
            writeln!(
                out,
                "{}",
                serde_json::to_string(&members).expect("serializes")
            )?;
        }
        Format::Plain | Format::Csv => {
            for a in subset.iter() {
                writeln!(out, "{a}")?;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Mismatch {
    n: u64,
    k: u32,
    c: u64,
    formula: BigCount,
    oracle: BigCount,
}

/// Compares every residue for one modulus; returns the number of
/// comparisons or the first disagreement.
fn verify_modulus(
    n: u64,
    ks: &[u32],
    sign: SignPlacement,
    limits: &Limits,
) -> Result<Result<u64, Mismatch>, Error> {
    let factors = factorize(n)?;
    let subset = enumerate_exceptional_units(n, limits)?;
    let mut compared = 0;
    for &k in ks {
        let table = sumset_table(&subset, k, limits)?;
        for (c, oracle) in table.counts().iter().enumerate() {
            let formula = formula_count(&factors, k, c as u64, sign)?;
            if formula != *oracle {
                return Ok(Err(Mismatch {
                    n,
                    k,
                    c: c as u64,
                    formula,
                    oracle: oracle.clone(),
                }));
            }
            compared += 1;
        }
    }
    Ok(Ok(compared))
}

fn cmd_verify(ctx: &Context, a: VerifyArgs, out: &mut dyn Write) -> CliResult {
    if a.n_max > ctx.limits.convolution_cap {
        return Err(Error::ResourceLimit {
            what: "verification sweep",
            required: a.n_max.into(),
            limit: ctx.limits.convolution_cap,
        }
        .into());
    }
    let mut ks = a.ks.clone();
    ks.sort_unstable();
    ks.dedup();
    let sign = SignPlacement::from(a.sign_placement);

    let outcomes: Vec<Result<Result<u64, Mismatch>, Error>> = if ctx.parallel {
        (1..=a.n_max)
            .into_par_iter()
            .map(|n| verify_modulus(n, &ks, sign, &ctx.limits))
            .collect()
    } else {
        let mut v = Vec::new();
        for n in 1..=a.n_max {
            let r = verify_modulus(n, &ks, sign, &ctx.limits);
            let stop = !matches!(r, Ok(Ok(_)));
            v.push(r);
            if stop {
                break;
            }
        }
        v
    };

    let mut compared = 0u64;
    for outcome in outcomes {
        match outcome? {
            Ok(count) => compared += count,
            Err(m) => {
                writeln!(
                    out,
                    "MISMATCH: n={} k={} c={} formula={} oracle={}",
                    m.n, m.k, m.c, m.formula, m.oracle
                )?;
                return Err(CliError::Mismatch);
            }
        }
    }
    let k_list: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
    writeln!(
        out,
        "OK: 0 mismatches ({compared} comparisons, n in [1, {}], k in {{{}}})",
        a.n_max,
        k_list.join(",")
    )?;
    Ok(())
}
