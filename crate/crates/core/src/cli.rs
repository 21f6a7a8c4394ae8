//! `lambert-parity` command line: `expand`, `verify`, `bench`.
//!
//! Exit codes: 0 on success, 1 if any identity failed (or could not be
//! checked), 2 on usage errors.

use std::io::Write;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructors::{named_series, SeriesId};
use crate::harness::{check_identity, run_suite, IdentityId, MIN_ORDER};
use crate::report::{self, BenchRow, ReportRecord, SeriesRecord};
use crate::series::{MulAlgorithm, TruncatedSeries};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_ORDER: usize = 200;

/// Seed for the pseudo-random operands of `bench --op mul`.
pub const BENCH_SEED: u64 = 0x1a3b_5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchOp {
    Mul,
    Suite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Schoolbook,
    Karatsuba,
}

impl From<Algorithm> for MulAlgorithm {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::Schoolbook => MulAlgorithm::Schoolbook,
            Algorithm::Karatsuba => MulAlgorithm::Karatsuba,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lambert-parity",
    version,
    about = "Exact q-series expansion and identity verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the coefficients of a named series.
    Expand {
        #[arg(value_parser = parse_series)]
        series: SeriesId,
        #[arg(long, default_value_t = DEFAULT_ORDER, value_parser = parse_order)]
        order: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Check one identity or all of them.
    #[command(group(ArgGroup::new("selection").required(true).args(["all", "identity"])))]
    Verify {
        #[arg(long)]
        all: bool,
        #[arg(long, value_parser = parse_identity)]
        identity: Option<IdentityId>,
        #[arg(long, default_value_t = DEFAULT_ORDER, value_parser = parse_verify_order)]
        order: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
    },
    /// Time dense multiplication or the full suite.
    Bench {
        #[arg(long, value_enum)]
        op: BenchOp,
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, value_parser = parse_verify_order)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        #[arg(long, value_enum, default_value_t = Algorithm::Schoolbook)]
        algorithm: Algorithm,
    },
}

fn parse_series(s: &str) -> Result<SeriesId, String> {
    s.parse().map_err(|e: crate::Error| {
        let known: Vec<_> = SeriesId::ALL.iter().map(|id| id.name()).collect();
        format!("{e}; expected one of {}", known.join(", "))
    })
}

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_order(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("order must be a positive integer, got {s:?}")),
    }
}

fn parse_verify_order(s: &str) -> Result<usize, String> {
    match s.trim().parse::<usize>() {
        Ok(n) if n >= MIN_ORDER => Ok(n),
        _ => Err(format!(
            "order must be an integer >= {MIN_ORDER}, got {s:?}"
        )),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{text}");
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Expand {
            series,
            order,
            format,
        } => expand(out, series, order, format),
        Command::Verify {
            all,
            identity,
            order,
            format,
        } => {
            let selection = if all { None } else { identity };
            verify(out, selection, order, format)
        }
        Command::Bench {
            op,
            sizes,
            format,
            algorithm,
        } => bench(out, op, &sizes, format, algorithm.into()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
    }
}

fn expand(
    out: &mut dyn Write,
    id: SeriesId,
    order: usize,
    format: OutputFormat,
) -> std::io::Result<i32> {
    let series = named_series(id, order);
    match format {
        OutputFormat::Csv => report::write_series_csv(out, &series)?,
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, &SeriesRecord::new(id, &series))?;
            writeln!(out)?;
        }
        OutputFormat::Table => write_series_table(out, id, &series)?,
    }
    Ok(EXIT_OK)
}

fn write_series_table(
    out: &mut dyn Write,
    id: SeriesId,
    series: &TruncatedSeries,
) -> std::io::Result<()> {
    writeln!(out, "{id} = {series}")?;
    let width = series.order().saturating_sub(1).to_string().len().max(1);
    for (n, c) in series.coeffs().iter().enumerate() {
        writeln!(out, "{n:>width$}  {c}")?;
    }
    Ok(())
}

fn verify(
    out: &mut dyn Write,
    selection: Option<IdentityId>,
    order: usize,
    format: OutputFormat,
) -> std::io::Result<i32> {
    let records: Vec<ReportRecord> = match selection {
        Some(id) => vec![match check_identity(id, order) {
            Ok(r) => ReportRecord::from_report(&r),
            Err(e) => ReportRecord::from_error(id, order, &e),
        }],
        None => {
            let suite = run_suite(order).expect("order validated by the parser");
            suite
                .entries
                .iter()
                .map(|e| ReportRecord::from_entry(e, order))
                .collect()
        }
    };
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &records)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => report::write_reports_csv(out, &records)?,
        OutputFormat::Table => write_report_table(out, &records)?,
    }
    Ok(if records.iter().any(ReportRecord::failed) {
        EXIT_FAILED
    } else {
        EXIT_OK
    })
}

fn write_report_table(out: &mut dyn Write, records: &[ReportRecord]) -> std::io::Result<()> {
    writeln!(
        out,
        "{:<22} {:<24} {:>6} {:>11}  notes",
        "identity", "status", "order", "elapsed_ms"
    )?;
    for r in records {
        let mut notes = Vec::new();
        if let (Some(sign), Some(witness)) = (r.resolved_sign, r.sign_witness) {
            notes.push(format!("sign {sign:+} (witness q^{witness})"));
        }
        if let Some(m) = &r.first_mismatch {
            notes.push(format!(
                "mismatch at q^{}: lhs {}, rhs {}",
                m.index, m.lhs, m.rhs
            ));
        }
        notes.extend(r.detail.iter().cloned());
        notes.extend(r.annotation.iter().cloned());
        notes.extend(r.error.iter().cloned());
        writeln!(
            out,
            "{:<22} {:<24} {:>6} {:>11.3}  {}",
            r.identity,
            r.status,
            r.order,
            r.elapsed_ms,
            notes.join("; ")
        )?;
    }
    let failed = records.iter().filter(|r| r.failed()).count();
    let flipped = records
        .iter()
        .filter(|r| r.status == "VERIFIED_WITH_SIGN_FLIP")
        .count();
    writeln!(
        out,
        "{} checked, {failed} failed, {flipped} verified with sign flip",
        records.len()
    )
}

/// Two series of `size` coefficients drawn uniformly from `[-9, 9]`.
pub fn bench_operands(size: usize) -> (TruncatedSeries, TruncatedSeries) {
    let mut rng = ChaCha8Rng::seed_from_u64(BENCH_SEED);
    let mut draw = || {
        let coeffs: Vec<i64> = (0..size).map(|_| rng.gen_range(-9..=9)).collect();
        TruncatedSeries::from_i64s(&coeffs).expect("size >= 8")
    };
    let f = draw();
    let g = draw();
    (f, g)
}

fn bench(
    out: &mut dyn Write,
    op: BenchOp,
    sizes: &[usize],
    format: OutputFormat,
    algorithm: MulAlgorithm,
) -> std::io::Result<i32> {
    let rows: Vec<BenchRow> = sizes
        .iter()
        .map(|&size| {
            let elapsed = match op {
                BenchOp::Mul => {
                    let (f, g) = bench_operands(size);
                    let start = Instant::now();
                    let product = f.mul_with(&g, algorithm);
                    let elapsed = start.elapsed();
                    std::hint::black_box(product);
                    elapsed
                }
                BenchOp::Suite => {
                    let start = Instant::now();
                    let suite = run_suite(size).expect("size validated by the parser");
                    std::hint::black_box(suite);
                    start.elapsed()
                }
            };
            BenchRow {
                size,
                elapsed_ms: elapsed.as_secs_f64() * 1e3,
            }
        })
        .collect();
    match format {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, &rows)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => report::write_bench_csv(out, &rows)?,
        OutputFormat::Table => {
            writeln!(out, "{:>8} {:>12}", "size", "elapsed_ms")?;
            for row in &rows {
                writeln!(out, "{:>8} {:>12.3}", row.size, row.elapsed_ms)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("lambert-parity").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn expand_csv() {
        let (code, out, _) = run_args(&["expand", "Y_DEF", "--order", "6", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n,coefficient\n0,0\n1,0\n2,0\n3,-1\n4,0\n5,-2\n");
    }

    #[test]
    fn expand_table() {
        let (code, out, _) = run_args(&["expand", "PHI", "--order", "4", "--format", "table"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PHI = 1 + 2q^2 + O(q^4)\n"), "{out}");
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&["expand", "Y_DEF", "--order", "0"]).0, 2);
        assert_eq!(run_args(&["expand", "NOPE"]).0, 2);
        assert_eq!(run_args(&["verify", "--identity", "BOGUS"]).0, 2);
        assert_eq!(run_args(&["verify", "--all", "--order", "7"]).0, 2);
        assert_eq!(run_args(&["verify"]).0, 2);
        assert_eq!(run_args(&["verify", "--all", "--identity", "I4"]).0, 2);
        assert_eq!(run_args(&["bench", "--op", "mul", "--sizes"]).0, 2);
        assert_eq!(run_args(&["bench", "--op", "mul", "--sizes", ""]).0, 2);
        assert_eq!(run_args(&["bench", "--op", "mul", "--sizes", "4"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("expand"));
    }

    #[test]
    fn verify_single_identity_json() {
        let (code, out, _) = run_args(&[
            "verify",
            "--identity",
            "I8_SUM_DIFFERENCE",
            "--order",
            "30",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let records: Vec<ReportRecord> = serde_json::from_str(&out).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].status, "VERIFIED_WITH_SIGN_FLIP");
        assert_eq!(records[0].resolved_sign, Some(-1));
        assert_eq!(records[0].sign_witness, Some(2));
    }

    #[test]
    fn bench_rows_follow_sizes() {
        let (code, out, _) = run_args(&[
            "bench", "--op", "mul", "--sizes", "16,8,32", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        let sizes: Vec<&str> = out
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap())
            .collect();
        assert_eq!(sizes, ["16", "8", "32"]);
    }

    #[test]
    fn bench_operands_are_reproducible() {
        let (f1, g1) = bench_operands(64);
        let (f2, g2) = bench_operands(64);
        assert_eq!((f1.clone(), g1), (f2, g2));
        assert!(f1.coeffs().iter().all(|c| c.magnitude() <= &9u8.into()));
    }
}
