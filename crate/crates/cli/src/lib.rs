//! The `quadval` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error, 3 domain
//! error, 4 partial batch failure.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use quadval::verify::verify;
use quadval::{
    build_tree, canonicalize_to_type_ell_1, classify, period_table, Case, QuadraticPoly, Valuation,
};
use rayon::prelude::*;
use thiserror::Error;

pub mod batch;
pub mod json;
pub mod render;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_BATCH: u8 = 4;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => EXIT_DOMAIN,
            _ => EXIT_INPUT,
        }
    }
}

impl From<quadval::Error> for CliError {
    fn from(e: quadval::Error) -> Self {
        if e.is_domain() {
            CliError::Domain(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

type CliResult = Result<u8, CliError>;

/// Decimal integer with optional sign.
pub fn parse_int(s: &str) -> Result<BigInt, String> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("invalid integer '{s}'"));
    }
    s.parse().map_err(|_| format!("invalid integer '{s}'"))
}

#[derive(Debug, Parser)]
#[command(
    name = "quadval",
    version,
    about = "2-adic valuations of integer quadratics an² + bn + c"
)]
struct Cli {
    /// Leading coefficient (nonzero).
    #[arg(short = 'a', global = true, allow_hyphen_values = true, value_parser = parse_int)]
    a: Option<BigInt>,
    /// Linear coefficient.
    #[arg(short = 'b', global = true, allow_hyphen_values = true, value_parser = parse_int)]
    b: Option<BigInt>,
    /// Constant coefficient.
    #[arg(short = 'c', global = true, allow_hyphen_values = true, value_parser = parse_int)]
    c: Option<BigInt>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Ascii,
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BatchFormat {
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the valuation sequence.
    Classify {
        #[arg(long)]
        json: bool,
    },
    /// Period table of a bounded sequence.
    Table {
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
    },
    /// Valuation tree, cut off at --depth levels.
    Tree {
        #[arg(long, default_value_t = quadval::DEFAULT_DEPTH_CAP,
              value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, value_enum, default_value_t = TreeFormat::Ascii)]
        format: TreeFormat,
    },
    /// Rows n, f(n), ν₂(f(n)).
    Seq {
        #[arg(long, default_value_t = 0)]
        start: u64,
        #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
    },
    /// Cross-check the closed form and tree against brute force.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        horizon: Option<u64>,
    },
    /// Classify every polynomial in a file, one JSON record per line.
    Batch {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = BatchFormat::Json)]
        format: BatchFormat,
    },
    /// Reduce a bounded quadratic to type (ℓ,1) with translation and S.
    Ops {
        /// Also list where each terminal node of g lands in the tree of f.
        #[arg(long)]
        show_canonical: bool,
    },
}

fn polynomial(cli: &Cli) -> Result<QuadraticPoly, CliError> {
    let get = |v: &Option<BigInt>, name: char| {
        v.clone()
            .ok_or_else(|| CliError::Input(format!("missing -{name}")))
    };
    let (a, b, c) = (get(&cli.a, 'a')?, get(&cli.b, 'b')?, get(&cli.c, 'c')?);
    Ok(QuadraticPoly::new(a, b, c)?)
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn write_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}

fn cmd_classify(f: &QuadraticPoly, as_json: bool, out: &mut dyn Write) -> CliResult {
    let cls = classify(f);
    if as_json {
        write_json(out, &json::ClassRecord::new(&cls))
    } else {
        out.write_all(render::classification_report(&cls).as_bytes())?;
        Ok(EXIT_OK)
    }
}

fn cmd_table(f: &QuadraticPoly, format: DataFormat, out: &mut dyn Write) -> CliResult {
    let cls = classify(f);
    let (ell, entries) = match cls.case {
        Case::ThreeC => {
            let table = period_table(f)?;
            (table.ell, table.entries)
        }
        Case::One | Case::Five => (0, vec![Valuation::Finite(cls.even_offset)]),
        _ => {
            return Err(CliError::Domain(
                "sequence is unbounded; no period table".to_string(),
            ))
        }
    };
    match format {
        DataFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["residue", "valuation"])
                .map_err(io::Error::from)?;
            for (r, v) in entries.iter().enumerate() {
                w.write_record([r.to_string(), v.to_string()])
                    .map_err(io::Error::from)?;
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
        DataFormat::Json => {
            let (a, b, c) = json::poly_fields(f);
            let rows = entries
                .iter()
                .enumerate()
                .map(|(r, v)| json::TableRow {
                    residue: r as u64,
                    valuation: json::JsonValuation(*v),
                })
                .collect::<Vec<_>>();
            write_json(
                out,
                &json::TableRecord {
                    a,
                    b,
                    c,
                    ell,
                    period: rows.len() as u64,
                    rows,
                },
            )
        }
    }
}

fn cmd_tree(f: &QuadraticPoly, depth: u32, format: TreeFormat, out: &mut dyn Write) -> CliResult {
    let tree = build_tree(f, depth)?;
    match format {
        TreeFormat::Ascii => out.write_all(render::ascii_tree(&tree).as_bytes())?,
        TreeFormat::Dot => out.write_all(render::dot_tree(&tree).as_bytes())?,
        TreeFormat::Json => return write_json(out, &json::TreeRecord::new(&tree)),
    }
    Ok(EXIT_OK)
}

fn cmd_seq(
    f: &QuadraticPoly,
    start: u64,
    count: u64,
    format: DataFormat,
    out: &mut dyn Write,
) -> CliResult {
    let end = start
        .checked_add(count)
        .ok_or_else(|| CliError::Input("--start + --count overflows".to_string()))?;
    let rows = (start..end).map(|n| {
        let value = f.eval(&BigInt::from(n));
        let v = quadval::nu2(&value);
        (n, value, v)
    });
    match format {
        DataFormat::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "value", "valuation"])
                .map_err(io::Error::from)?;
            for (n, value, v) in rows {
                w.write_record([n.to_string(), value.to_string(), v.to_string()])
                    .map_err(io::Error::from)?;
            }
            w.flush()?;
            Ok(EXIT_OK)
        }
        DataFormat::Json => {
            let (a, b, c) = json::poly_fields(f);
            let rows = rows
                .map(|(n, value, v)| json::SeqRow {
                    n,
                    value,
                    valuation: json::JsonValuation(v),
                })
                .collect();
            write_json(
                out,
                &json::SeqRecord {
                    a,
                    b,
                    c,
                    start,
                    rows,
                },
            )
        }
    }
}

fn cmd_verify(f: &QuadraticPoly, horizon: Option<u64>, out: &mut dyn Write) -> CliResult {
    let report = verify(f, horizon);
    writeln!(out, "polynomial: {f}")?;
    writeln!(out, "{}", render::summary(&report.classification))?;
    writeln!(out, "horizon: {}", report.horizon)?;
    for check in &report.checks {
        writeln!(out, "{check}")?;
    }
    if report.passed() {
        writeln!(out, "result: pass")?;
        return Ok(EXIT_OK);
    }
    match report.counterexample {
        Some(n) => writeln!(out, "result: FAIL, first counterexample n={n}")?,
        None => writeln!(out, "result: FAIL")?,
    }
    Ok(EXIT_VERIFY)
}

fn cmd_batch(input: &PathBuf, out: &mut dyn Write) -> CliResult {
    let text = fs::read_to_string(input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", input.display())))?;
    let entries = batch::parse(&text).map_err(CliError::Input)?;
    let lines: Vec<(bool, String)> = entries
        .par_iter()
        .map(|entry| {
            let record = match &entry.poly {
                Ok(f) => json::BatchRecord::Ok {
                    record: entry.record,
                    classification: json::ClassRecord::new(&classify(f)),
                },
                Err(e) => json::BatchRecord::Err {
                    record: entry.record,
                    input: entry.input.clone(),
                    error: e.clone(),
                },
            };
            let line = serde_json::to_string(&record).expect("records serialize");
            (entry.poly.is_ok(), line)
        })
        .collect();
    for (_, line) in &lines {
        writeln!(out, "{line}")?;
    }
    Ok(if lines.iter().all(|(ok, _)| *ok) {
        EXIT_OK
    } else {
        EXIT_BATCH
    })
}

fn cmd_ops(f: &QuadraticPoly, show_canonical: bool, out: &mut dyn Write) -> CliResult {
    let canon = canonicalize_to_type_ell_1(f)?;
    let chain: Vec<String> = canon.ops.iter().map(ToString::to_string).collect();
    let ell = canon.ell;
    writeln!(out, "f = {f}")?;
    writeln!(out, "g = {}", canon.g)?;
    writeln!(out, "chain: {}", chain.join(", "))?;
    writeln!(out, "ℓ = {ell}, a⁻¹ mod 2^{ell} = {}", canon.a_inv)?;
    writeln!(
        out,
        "residue map: r ↦ {}·(r + ({})) mod 2^i",
        canon.a_inv, canon.shift
    )?;
    if show_canonical {
        let tree = build_tree(&canon.g, ell)?;
        for i in 1..=ell {
            let mut moves: Vec<(BigUint, BigUint, u64)> = tree
                .terminating_at(i)
                .into_iter()
                .map(|(r, v)| (r.clone(), canon.map_residue(i, r), v))
                .collect();
            moves.sort();
            let parts: Vec<String> = moves
                .iter()
                .map(|(r, s, v)| format!("{r} -> {s} (ν={v})"))
                .collect();
            writeln!(out, "level {i}: {}", parts.join(", "))?;
        }
    }
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CliResult {
    match &cli.command {
        Command::Classify { json } => cmd_classify(&polynomial(cli)?, *json, out),
        Command::Table { format } => cmd_table(&polynomial(cli)?, *format, out),
        Command::Tree { depth, format } => cmd_tree(&polynomial(cli)?, *depth, *format, out),
        Command::Seq {
            start,
            count,
            format,
        } => cmd_seq(&polynomial(cli)?, *start, *count, *format, out),
        Command::Verify { horizon } => cmd_verify(&polynomial(cli)?, *horizon, out),
        Command::Batch {
            input,
            format: BatchFormat::Json,
        } => cmd_batch(input, out),
        Command::Ops { show_canonical } => cmd_ops(&polynomial(cli)?, *show_canonical, out),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.output {
        Some(path) => match fs::File::create(path) {
            Ok(file) => {
                let mut file = io::BufWriter::new(file);
                dispatch(&cli, &mut file).and_then(|code| {
                    file.flush()?;
                    Ok(code)
                })
            }
            Err(e) => Err(CliError::Input(format!(
                "cannot create {}: {e}",
                path.display()
            ))),
        },
        None => dispatch(&cli, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}
