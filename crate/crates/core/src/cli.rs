//! Command-line front end. All probabilities are printed as reduced fractions.
//!
//! Exit codes: 0 success, 1 no u-object (or a failed verification), 2 usage
//! error, 3 resource cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{bound_summary, verify_circular_lemma, verify_families};
use crate::enumerate::{exact_probability_with, probability_table, ExactResult, ScanOptions};
use crate::error::Error;
use crate::par::default_workers;
use crate::structure::{verify_ham_edge_theorem, verify_menger_theorem, TheoremReport, DEFAULT_GRID};
use crate::universal::{construct, UKind};
use crate::words::{Params, WordSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_UNIVERSAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ucycle", version, about = "Universal cycles and words for subsets of A^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact P_c or P_w by scanning every removal subset.
    Exact(ExactArgs),
    /// Exact probabilities for s = 1..=smax.
    Table(TableArgs),
    /// Closed-form bounds and exact small-s values.
    Bounds(BoundsArgs),
    /// Build a u-cycle or u-word for a word set.
    Construct(ConstructArgs),
    /// Exhaustively check a structural statement.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Cycle,
    Word,
}

impl From<KindArg> for UKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Cycle => UKind::Cycle,
            KindArg::Word => UKind::Word,
        }
    }
}

#[derive(Debug, Args)]
struct Shape {
    /// Word length.
    #[arg(long)]
    n: u32,
    /// Alphabet size.
    #[arg(long)]
    k: u32,
}

#[derive(Debug, Args)]
struct ExactArgs {
    #[command(flatten)]
    shape: Shape,
    /// Number of removed words.
    #[arg(long)]
    s: u64,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Number of rank chunks to split the scan into.
    #[arg(long)]
    chunks: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Largest s to tabulate (default k^n - 1).
    #[arg(long)]
    smax: Option<u64>,
    #[arg(long)]
    chunks: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long)]
    s: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("words").required(true).args(["keep", "remove"])))]
struct ConstructArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Words to keep: a file with one word per line, or an inline list.
    #[arg(long)]
    keep: Option<String>,
    /// Words to remove from A^n, in the same forms as --keep.
    #[arg(long)]
    remove: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    HamEdge,
    Menger,
    LemmaCircular,
    Families,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    which: Which,
    /// Word length; ham-edge and menger run on a default grid without it.
    #[arg(long, requires = "k")]
    n: Option<u32>,
    #[arg(long, requires = "n")]
    k: Option<u32>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long, default_value_t = 14)]
    kmax: u32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Exact(a) => cmd_exact(a, out),
        Command::Table(a) => cmd_table(a, out, err),
        Command::Bounds(a) => cmd_bounds(a, out),
        Command::Construct(a) => cmd_construct(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotUniversal(_) => EXIT_NOT_UNIVERSAL,
        Error::CapExceeded(_) => EXIT_CAP,
        _ => EXIT_USAGE,
    }
}

type CmdResult = Result<i32, Error>;

fn io(e: std::io::Error) -> Error {
    Error::from(e)
}

fn scan_options(chunks: Option<usize>) -> ScanOptions {
    ScanOptions {
        workers: default_workers(),
        chunks,
        ..ScanOptions::default()
    }
}

const EXACT_CSV_HEADER: &str = "n,k,s,kind,favorable,total,probability";

fn exact_csv_row(r: &ExactResult) -> String {
    format!(
        "{},{},{},{},{},{},{}",
        r.params.n(),
        r.params.k(),
        r.s,
        r.kind,
        r.favorable,
        r.total,
        r.probability
    )
}

fn cmd_exact(a: ExactArgs, out: &mut dyn Write) -> CmdResult {
    let r = exact_probability_with(a.shape.n, a.shape.k, a.s, a.kind.into(), &scan_options(a.chunks))?;
    match a.format {
        Format::Json => writeln!(out, "{}", to_json(&r)),
        Format::Csv => writeln!(out, "{EXACT_CSV_HEADER}\n{}", exact_csv_row(&r)),
    }
    .map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_table(a: TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let p = Params::new(a.shape.n, a.shape.k)?;
    let smax = a.smax.unwrap_or(p.word_count().saturating_sub(1));
    p.check_removed(smax)?;
    let cells = probability_table(p.n(), p.k(), a.kind.into(), 1..=smax, &scan_options(a.chunks));
    let mut worst = EXIT_OK;
    let mut done = Vec::new();
    for (s, cell) in cells {
        match cell {
            Ok(r) => done.push(r),
            Err(e) => {
                writeln!(err, "error: s={s}: {e}").map_err(io)?;
                worst = worst.max(exit_code(&e));
            }
        }
    }
    match a.format {
        Format::Csv => {
            writeln!(out, "s,probability").map_err(io)?;
            for r in &done {
                writeln!(out, "{},{}", r.s, r.probability).map_err(io)?;
            }
        }
        Format::Json => writeln!(out, "{}", to_json(&done)).map_err(io)?,
    }
    Ok(worst)
}

fn cmd_bounds(a: BoundsArgs, out: &mut dyn Write) -> CmdResult {
    let record = bound_summary(a.shape.n, a.shape.k, a.s)?;
    match a.format {
        Format::Json => writeln!(out, "{}", to_json(&record)).map_err(io)?,
        Format::Csv => {
            writeln!(out, "formula,applicable,value").map_err(io)?;
            for e in &record.entries {
                writeln!(out, "{},{},{}", e.formula.id(), e.applicable, e.value.as_deref().unwrap_or(""))
                    .map_err(io)?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Parses an inline word list separated by commas or spaces, or by `;` when
/// `k > 10`, since those words contain commas themselves.
pub fn parse_inline_list(p: Params, text: &str) -> Result<WordSet, Error> {
    let sep: &[char] = if p.k() > 10 { &[';'] } else { &[',', ' '] };
    WordSet::parse(p, text.split(sep).map(str::trim).filter(|t| !t.is_empty()))
}

/// Reads a word list: an existing file holds one word per line (blank lines
/// and `#` comments skipped); anything else is an inline list.
pub fn read_word_list(p: Params, source: &str) -> Result<WordSet, Error> {
    let path = Path::new(source);
    if source.is_empty() || !path.is_file() {
        return parse_inline_list(p, source);
    }
    let text = std::fs::read_to_string(path)?;
    WordSet::parse(
        p,
        text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')),
    )
}

fn cmd_construct(a: ConstructArgs, out: &mut dyn Write) -> CmdResult {
    let p = Params::new(a.shape.n, a.shape.k)?;
    let survivors = match (&a.keep, &a.remove) {
        (Some(keep), _) => read_word_list(p, keep)?,
        (None, Some(remove)) => WordSet::complement_of(p, &read_word_list(p, remove)?)?,
        (None, None) => unreachable!("clap requires --keep or --remove"),
    };
    let witness = construct(a.kind.into(), &survivors)?;
    writeln!(out, "{}", witness.text()).map_err(io)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let workers = default_workers();
    let grid: Vec<(u32, u32)> = match (a.n, a.k) {
        (Some(n), Some(k)) => vec![(n, k)],
        _ => DEFAULT_GRID.to_vec(),
    };
    let reports: Vec<TheoremReport> = match a.which {
        Which::HamEdge => grid
            .iter()
            .map(|&(n, k)| verify_ham_edge_theorem(Params::new(n, k)?, workers))
            .collect::<Result<_, _>>()?,
        Which::Menger => grid
            .iter()
            .map(|&(n, k)| verify_menger_theorem(Params::new(n, k)?, workers))
            .collect::<Result<_, _>>()?,
        Which::LemmaCircular => vec![verify_circular_lemma(a.kmax)?],
        Which::Families => {
            let (Some(n), Some(k), Some(s)) = (a.n, a.k, a.s) else {
                return Err(Error::InvalidParams("families needs --n, --k and --s".into()));
            };
            vec![verify_families(n, k, s)?]
        }
    };
    for r in &reports {
        writeln!(out, "{}", to_json(r)).map_err(io)?;
    }
    Ok(if reports.iter().all(TheoremReport::confirmed) {
        EXIT_OK
    } else {
        EXIT_NOT_UNIVERSAL
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("records serialize")
}
