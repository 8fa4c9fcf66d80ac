//! Command-line driver. [`run_cli`] is the whole program; the binary only
//! forwards process arguments and streams.
//!
//! Exit codes: 0 success, 1 internal, 2 parse/schema/bad argument,
//! 3 not normal, 4 insufficient truncation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::duality::PolyMatrix;
use crate::error::Error;
use crate::io::{
    duality_json, normality_json, parse_tuple, serialize_tuple, type1_json, type2_json,
};
use crate::normality::{check_general_position, random_tuple, NormalityReport};
use crate::pipeline::{run_duality, DualityRun};
use crate::poly::Polynomial;
use crate::series::Order;
use crate::tuple::SeriesTuple;
use crate::type1::{solve_type1, MultiIndexType1, Type1Solution};
use crate::type2::{solve_type2, MultiIndexType2, Type2Solution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_NORMAL: i32 = 3;
pub const EXIT_TRUNCATION: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "hpdual",
    version,
    about = "Exact Hermite-Pade polynomials at infinity and the M1*M2 = I check"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a seeded random tuple document.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        m: usize,
        /// Coefficients per series.
        #[arg(long)]
        coeffs: usize,
        #[arg(long, default_value_t = 10)]
        height: u32,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Type I polynomials at n_k (all k unless --k is given).
    Type1 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Type II polynomials at d_s (all s unless --s is given).
    Type2 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Normality verdicts for the 2(m+1) systems used at n.
    Normality {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Full pipeline: solve, assemble M1 and M2, check M1*M2 = I.
    Theorem1 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
}

/// Maps a library error to its exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. }
        | Error::Schema(_)
        | Error::LeadingZero { .. }
        | Error::InvalidArgument(_) => EXIT_INPUT,
        Error::NotNormal { .. } => EXIT_NOT_NORMAL,
        Error::InsufficientTruncation { .. } => EXIT_TRUNCATION,
        Error::DimensionMismatch { .. } | Error::MixedInputs(_) => EXIT_INTERNAL,
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

/// Runs the program on `args` (including the program name) and returns the
/// exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INPUT;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INTERNAL
        }
    }
}

fn load(path: &PathBuf) -> Result<SeriesTuple, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_tuple(&text)?)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Gen {
            seed,
            m,
            coeffs,
            height,
            out: path,
        } => {
            let f = random_tuple(*seed, *m, *coeffs, *height)?;
            let doc = serialize_tuple(&f);
            match path {
                Some(p) => std::fs::write(p, doc + "\n")?,
                None => writeln!(out, "{doc}")?,
            }
            Ok(EXIT_OK)
        }
        Command::Type1 { input, n, k } => {
            let f = load(input)?;
            let ks: Vec<usize> = match k {
                Some(k) => vec![*k],
                None => (0..=f.m()).collect(),
            };
            let sols = ks
                .iter()
                .map(|&k| solve_type1(&f, &MultiIndexType1::new(*n, k, f.m())?))
                .collect::<Result<Vec<_>, Error>>()?;
            print_type1(out, format, &sols)?;
            Ok(EXIT_OK)
        }
        Command::Type2 { input, n, s } => {
            let f = load(input)?;
            let ss: Vec<usize> = match s {
                Some(s) => vec![*s],
                None => (0..=f.m()).collect(),
            };
            let sols = ss
                .iter()
                .map(|&s| solve_type2(&f, &MultiIndexType2::new(*n, s, f.m())?))
                .collect::<Result<Vec<_>, Error>>()?;
            print_type2(out, format, &sols)?;
            Ok(EXIT_OK)
        }
        Command::Normality { input, n } => {
            let f = load(input)?;
            let report = check_general_position(&f, *n)?;
            print_normality(out, format, &report)?;
            Ok(if report.general_position_at_n() {
                EXIT_OK
            } else {
                EXIT_NOT_NORMAL
            })
        }
        Command::Theorem1 { input, n } => {
            let f = load(input)?;
            match run_duality(&f, *n) {
                Ok(run) => {
                    print_run(out, format, &f, &run)?;
                    if run.holds() {
                        Ok(EXIT_OK)
                    } else {
                        writeln!(
                            err,
                            "error: M1*M2 is not the identity at {:?}",
                            run.report.offending()
                        )?;
                        Ok(EXIT_INTERNAL)
                    }
                }
                Err(e @ Error::NotNormal { .. }) => {
                    writeln!(err, "error: {e}")?;
                    let report = check_general_position(&f, *n)?;
                    print_normality(out, format, &report)?;
                    Ok(EXIT_NOT_NORMAL)
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn write_json(out: &mut dyn Write, value: &impl Serialize) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn poly_list(ps: &[Polynomial]) -> String {
    let parts: Vec<String> = ps.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn print_matrix(out: &mut dyn Write, name: &str, m: &PolyMatrix) -> std::io::Result<()> {
    writeln!(out, "{name} =")?;
    for row in m.rows() {
        writeln!(out, "  {}", poly_list(&row))?;
    }
    Ok(())
}

fn orders_text(orders: impl Iterator<Item = (usize, Order)>) -> String {
    let parts: Vec<String> = orders.map(|(j, o)| format!("j={j}: {o}")).collect();
    parts.join(", ")
}

fn print_type1(out: &mut dyn Write, format: Format, sols: &[Type1Solution]) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(out, &sols.iter().map(type1_json).collect::<Vec<_>>()),
        Format::Text => {
            for s in sols {
                writeln!(
                    out,
                    "type I n={} k={}: Q = {}  residual order {} (required {})",
                    s.index.n,
                    s.index.k,
                    poly_list(&s.q),
                    s.residual_order,
                    s.index.order()
                )?;
            }
            Ok(())
        }
    }
}

fn print_type2(out: &mut dyn Write, format: Format, sols: &[Type2Solution]) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(out, &sols.iter().map(type2_json).collect::<Vec<_>>()),
        Format::Text => {
            for s in sols {
                writeln!(
                    out,
                    "type II n={} s={}: P = {}  residual orders {} (required {})",
                    s.index.n,
                    s.index.s,
                    poly_list(&s.p),
                    orders_text(s.residuals.iter().map(|r| (r.j, r.order))),
                    s.index.n
                )?;
            }
            Ok(())
        }
    }
}

fn print_normality(
    out: &mut dyn Write,
    format: Format,
    report: &NormalityReport,
) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(out, &normality_json(report)),
        Format::Text => {
            writeln!(out, "normality at n = {} (m = {})", report.n, report.m)?;
            for (k, v) in report.type1.iter().enumerate() {
                writeln!(out, "  type I  k={k}: {v}")?;
            }
            for (s, v) in report.type2.iter().enumerate() {
                writeln!(out, "  type II s={s}: {v}")?;
            }
            writeln!(
                out,
                "general position at n: {}",
                report.general_position_at_n()
            )
        }
    }
}

fn print_run(
    out: &mut dyn Write,
    format: Format,
    f: &SeriesTuple,
    run: &DualityRun,
) -> std::io::Result<()> {
    match format {
        Format::Json => write_json(out, &duality_json(f, run)),
        Format::Text => {
            writeln!(
                out,
                "tuple m = {}, n = {}, fingerprint {}",
                f.m(),
                run.n,
                f.fingerprint()
            )?;
            print_type1(out, format, &run.type1)?;
            print_type2(out, format, &run.type2)?;
            print_matrix(out, "M1", &run.m1)?;
            print_matrix(out, "M2", &run.m2)?;
            print_matrix(out, "M1*M2", &run.report.product)?;
            writeln!(out, "det M1 = {}", run.det_m1)?;
            writeln!(out, "det M2 = {}", run.det_m2)?;
            if run.holds() {
                writeln!(out, "M1*M2 = I: true")
            } else {
                writeln!(
                    out,
                    "M1*M2 = I: false, offending entries {:?}",
                    run.report.offending()
                )
            }
        }
    }
}
