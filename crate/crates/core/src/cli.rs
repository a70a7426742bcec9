//! Command-line front end. Every subcommand writes records to stdout as
//! JSON lines (default) or CSV; diagnostics go to stderr.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 a numerical tolerance
//! or check was not met.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bhatt_audit::{audit_scan, TERM_CONVENTION};
use crate::counting::{count_binary_partitions_table, count_s_partitions_table, ln_count, Count};
use crate::exponentiation::{greedy_decompose, modexp_reference, modexp_spartition};
use crate::pennington::{
    theorem1_ln_ps_truncated, theorem2_ln_ph_truncated, w_oscillation, AsymptoticBreakdown,
    AsymptoticParams, Constants, DEFAULT_TOL, W_NU_MAX,
};
use crate::Error;

/// Largest `n` for which `estimate` also reports the exact `ln p_s(n)`.
pub const EXACT_ESTIMATE_LIMIT: u64 = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x5EED_2005;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "spartition", version, about = "Partitions into parts of the form 2^k - 1")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact p_s(N).
    Count {
        #[arg(long)]
        n: u64,
    },
    /// p_s(0..=N).
    Table {
        #[arg(long = "max-n")]
        max_n: u64,
    },
    /// Asymptotic estimate of ln p_s(N), term by term, with the exact value when N <= 10^6.
    Estimate {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long = "nu-max", default_value_t = W_NU_MAX)]
        nu_max: u32,
    },
    /// alpha, c, the tail integral I and H, with error bounds.
    Constants {
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// W(z) on P equally spaced points of one period [0, ln 2).
    WEval {
        #[arg(long)]
        points: u32,
        #[arg(long = "nu-max", default_value_t = W_NU_MAX)]
        nu_max: u32,
    },
    /// Compare exact counts with Bhatt's bound for n = 1..=N.
    BhattAudit {
        #[arg(long = "max-n")]
        max_n: u64,
        /// Only print the summary.
        #[arg(long)]
        summary_only: bool,
    },
    /// Greedy s-partition of N.
    Decompose {
        #[arg(long)]
        n: BigUint,
    },
    /// a^n mod m through the greedy s-partition of n.
    Modexp {
        #[arg(long)]
        a: BigUint,
        #[arg(long)]
        n: BigUint,
        #[arg(long)]
        m: BigUint,
        /// Also run plain square-and-multiply and compare.
        #[arg(long)]
        check: bool,
    },
    /// Random (a, n, m) triples with n < 2^64, checked against square-and-multiply.
    ModexpCheck {
        #[arg(long, default_value_t = 1000)]
        cases: u32,
    },
    /// General expansion with binary-partition parameters against exact ln b(N).
    BinaryCrossCheck {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

/// One output field.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x as i64)
    }
}
impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}
impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}
impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}
impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}
impl From<&Count> for Value {
    fn from(x: &Count) -> Self {
        Value::Text(x.to_str_radix(10))
    }
}
impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(x: Option<T>) -> Self {
        x.map_or(Value::Null, Into::into)
    }
}

impl Value {
    fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Int(i) => (*i).into(),
            Value::Float(f) => serde_json::Number::from_f64(*f)
                .map_or(serde_json::Value::Null, serde_json::Value::Number),
            Value::Text(s) => s.clone().into(),
            Value::Bool(b) => (*b).into(),
            Value::Null => serde_json::Value::Null,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            // Shortest round-trip form, exponent notation for tiny values.
            Value::Float(f) => format!("{f:?}"),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
        }
    }
}

/// An ordered set of named fields.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(&'static str, Value)>);

impl Record {
    fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }
}

struct Emitter<'a, W: Write> {
    format: Format,
    out: &'a mut W,
    csv_header: Option<Vec<&'static str>>,
}

impl<'a, W: Write> Emitter<'a, W> {
    fn new(format: Format, out: &'a mut W) -> Self {
        Emitter {
            format,
            out,
            csv_header: None,
        }
    }

    fn emit(&mut self, record: &Record) -> std::io::Result<()> {
        match self.format {
            Format::Json => {
                let map: serde_json::Map<String, serde_json::Value> = record
                    .0
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_json()))
                    .collect();
                writeln!(self.out, "{}", serde_json::Value::Object(map))
            }
            Format::Csv => {
                let keys: Vec<&'static str> = record.0.iter().map(|(k, _)| *k).collect();
                let mut writer = csv::WriterBuilder::new()
                    .flexible(true)
                    .from_writer(Vec::new());
                // A new header row whenever the record shape changes.
                if self.csv_header.as_ref() != Some(&keys) {
                    writer.write_record(&keys).map_err(std::io::Error::other)?;
                    self.csv_header = Some(keys);
                }
                writer
                    .write_record(record.0.iter().map(|(_, v)| v.to_csv()))
                    .map_err(std::io::Error::other)?;
                let bytes = writer.into_inner().map_err(std::io::Error::other)?;
                self.out.write_all(&bytes)
            }
        }
    }
}

enum Failure {
    Usage(String),
    Tolerance(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Accuracy { .. } => Failure::Tolerance(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn breakdown_record(b: &AsymptoticBreakdown) -> Record {
    Record::default()
        .with("u", b.u)
        .with("w_argument", b.w_argument)
        .with("quad_term", b.quad_term)
        .with("lin_term", b.lin_term)
        .with("bline_term", b.bline_term)
        .with("w_value", b.w_value)
        .with("gauss_const", b.gauss_const)
        .with("h_const", b.h_const)
        .with("total", b.total)
}

fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<(), Failure> {
    let mut emitter = Emitter::new(cli.format, out);
    match &cli.command {
        Command::Count { n } => {
            let table = count_s_partitions_table(*n)?;
            let count = table.get(*n).expect("table covers n");
            emitter.emit(&Record::default().with("n", *n).with("count", count))?;
        }
        Command::Table { max_n } => {
            let table = count_s_partitions_table(*max_n)?;
            for (n, count) in table.iter() {
                emitter.emit(&Record::default().with("n", n).with("count", count))?;
            }
        }
        Command::Estimate { n, tol, nu_max } => {
            let b = theorem1_ln_ps_truncated(*n, *tol, *nu_max)?;
            let exact = if *n <= EXACT_ESTIMATE_LIMIT {
                let table = count_s_partitions_table(*n)?;
                Some(ln_count(table.get(*n).expect("table covers n")))
            } else {
                None
            };
            let mut record = Record::default().with("n", *n);
            record.0.extend(breakdown_record(&b).0);
            let record = record
                .with("exact_ln", exact)
                .with("error", exact.map(|e| b.total - e));
            emitter.emit(&record)?;
        }
        Command::Constants { tol } => {
            let c = Constants::compute(*tol)?;
            emitter.emit(
                &Record::default()
                    .with("tol", *tol)
                    .with("alpha", c.alpha.value)
                    .with("alpha_error", c.alpha.error)
                    .with("c", c.c.value)
                    .with("c_error", c.c.error)
                    .with("tail_integral", c.tail_integral.value)
                    .with("tail_integral_error", c.tail_integral.error)
                    .with("h", c.h.value)
                    .with("h_error", c.h.error),
            )?;
        }
        Command::WEval { points, nu_max } => {
            if *points == 0 {
                return Err(Failure::Usage("--points must be >= 1".into()));
            }
            let period = std::f64::consts::LN_2;
            for i in 0..*points {
                let z = period * f64::from(i) / f64::from(*points);
                let w = w_oscillation(z, *nu_max)?;
                emitter.emit(
                    &Record::default()
                        .with("index", u64::from(i))
                        .with("z", z)
                        .with("w", w),
                )?;
            }
        }
        Command::BhattAudit {
            max_n,
            summary_only,
        } => {
            let mut io_result = Ok(());
            let summary = audit_scan(*max_n, |r| {
                if *summary_only || io_result.is_err() {
                    return;
                }
                io_result = emitter.emit(
                    &Record::default()
                        .with("kind", "record")
                        .with("n", r.n)
                        .with("exact", &r.exact)
                        .with("bound", &r.bound)
                        .with("violated", r.violated),
                );
            })?;
            io_result?;
            let samples: Vec<String> = summary
                .log_ratio_samples
                .iter()
                .map(|(n, r)| format!("{n}:{r}"))
                .collect();
            let decreases: Vec<String> =
                summary.bound_decreases.iter().map(u64::to_string).collect();
            emitter.emit(
                &Record::default()
                    .with("kind", "summary")
                    .with("n_max", summary.n_max)
                    .with("first_violation", summary.first_violation)
                    .with("violations", summary.violations)
                    .with("max_ratio", summary.max_ratio)
                    .with("max_ratio_n", summary.max_ratio_n)
                    .with("log_ratio_samples", samples.join(" "))
                    .with("log_ratio_increasing", summary.log_ratio_increasing)
                    .with("bound_decreases", decreases.join(" "))
                    .with("convention", TERM_CONVENTION),
            )?;
            if !summary.bound_decreases.is_empty() {
                eprintln!(
                    "warning: bound decreased at n = {}",
                    summary.bound_decreases[0]
                );
            }
        }
        Command::Decompose { n } => {
            let p = greedy_decompose(n);
            let join = |v: Vec<String>| v.join(" ");
            emitter.emit(
                &Record::default()
                    .with("n", n.to_str_radix(10))
                    .with("exponents", join(p.exponents.iter().map(u64::to_string).collect()))
                    .with("parts", join(p.parts().iter().map(|x| x.to_str_radix(10)).collect()))
                    .with("count", p.exponents.len() as u64),
            )?;
        }
        Command::Modexp { a, n, m, check } => {
            let result = modexp_spartition(a, n, m)?;
            let mut record = Record::default()
                .with("a", a.to_str_radix(10))
                .with("n", n.to_str_radix(10))
                .with("m", m.to_str_radix(10))
                .with("result", result.to_str_radix(10));
            let mut mismatch = false;
            if *check {
                let reference = modexp_reference(a, n, m)?;
                mismatch = reference != result;
                record = record
                    .with("reference", reference.to_str_radix(10))
                    .with("agree", !mismatch);
            }
            emitter.emit(&record)?;
            if mismatch {
                return Err(Failure::Tolerance(
                    "modexp: s-partition result differs from square-and-multiply".into(),
                ));
            }
        }
        Command::ModexpCheck { cases } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut mismatches = 0u64;
            for _ in 0..*cases {
                let a = BigUint::from(rng.gen::<u64>());
                let n = BigUint::from(rng.gen::<u64>());
                let m = BigUint::from(rng.gen_range(1..=u64::MAX));
                if modexp_spartition(&a, &n, &m)? != modexp_reference(&a, &n, &m)? {
                    mismatches += 1;
                }
            }
            emitter.emit(
                &Record::default()
                    .with("seed", cli.seed)
                    .with("cases", u64::from(*cases))
                    .with("mismatches", mismatches),
            )?;
            if mismatches > 0 {
                return Err(Failure::Tolerance(format!(
                    "modexp-check: {mismatches} mismatches"
                )));
            }
        }
        Command::BinaryCrossCheck { n, tol } => {
            if *n < 2 {
                return Err(Failure::Usage("--n must be >= 2".into()));
            }
            let table = count_binary_partitions_table(*n)?;
            let exact = ln_count(table.get(*n).expect("table covers n"));
            let b = theorem2_ln_ph_truncated(
                *n as f64 + 1.0,
                &AsymptoticParams::binary(),
                *tol,
                W_NU_MAX,
            )?;
            let mut record = Record::default().with("n", *n);
            record.0.extend(breakdown_record(&b).0);
            emitter.emit(
                &record
                    .with("exact_ln", exact)
                    .with("error", b.total - exact),
            )?;
        }
    }
    Ok(())
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    W: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Tolerance(msg)) => {
            let _ = writeln!(err, "tolerance not met: {msg}");
            2
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
