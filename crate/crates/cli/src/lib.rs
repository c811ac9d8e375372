//! Command-line front end.
//!
//! ```text
//! expanding iir [--k <f> | --table]
//! expanding split --mode {sorted|sequence} --k <f> [--recursive] [--unit <f>]
//!                 [--min-segment <n>] --input <path|-> --format {plain|csv:<col>|pgm:<row>}
//!                 [--output {text|json}]
//! expanding cornsweet [--pad <n>] [--height <n>] [--emit {values|pgm}] [--binary]
//! expanding diagonal [--digits <n> | --nth <n> | --find <digits> --limit <n>] [--invert]
//! ```
//!
//! Exit status is 0 on success, 1 on a data error, and 2 on a usage error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use expanding_core::enumeration::{self, DigitSequence};
use expanding_core::pgm::PgmEncoding;
use expanding_core::report::sig15;
use expanding_core::series::{parse_series_bytes, SeriesFormat};
use expanding_core::splitter::{split, Mode, SplitConfig};
use expanding_core::weber::{self, WeberParams};
use expanding_core::{cornsweet_image, cornsweet_profile, SplitReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DATA: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// K values tabulated by `iir --table`.
pub const TABLE_KS: [f64; 5] = [0.0, 0.01, 0.05, 0.1, 1.0];

#[derive(Debug, Parser)]
#[command(
    name = "expanding",
    version,
    about = "Weber-law gap segmentation of numeric series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the IIR threshold for one K, or print the typical table.
    Iir(IirArgs),
    /// Split a series into consistent segments.
    Split(SplitArgs),
    /// Emit the Cornsweet brightness profile or image.
    Cornsweet(CornsweetArgs),
    /// Explore the enumeration of terminating decimals and its diagonal.
    Diagonal(DiagonalArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct IirArgs {
    /// Weber constant in [0, 1).
    #[arg(long, value_parser = parse_k)]
    k: Option<f64>,
    /// Print IIR for K = 0, 0.01, 0.05, 0.1, 1, rounded to two decimals.
    #[arg(long)]
    table: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Sorted,
    Sequence,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Sorted => Mode::Sorted,
            ModeArg::Sequence => Mode::Sequence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct SplitArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    /// Weber constant in [0, 1).
    #[arg(long, value_parser = parse_k)]
    k: f64,
    /// Re-split each segment with its own mean gap until nothing changes.
    #[arg(long)]
    recursive: bool,
    /// Quantize inputs to multiples of this unit first.
    #[arg(long, value_parser = parse_unit)]
    unit: Option<f64>,
    /// Merge segments shorter than this into a neighbour.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    min_segment: u64,
    /// Input file, or `-` for standard input.
    #[arg(long)]
    input: PathBuf,
    /// plain, csv:<column>, or pgm:<row> (0-based).
    #[arg(long, value_parser = parse_format)]
    format: SeriesFormat,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Values,
    Pgm,
}

#[derive(Debug, Args)]
struct CornsweetArgs {
    /// Plateau pixels added on each side of the 13-pixel profile.
    #[arg(long, default_value_t = 0)]
    pad: usize,
    /// Image rows (pgm only).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    height: u64,
    #[arg(long, value_enum, default_value_t = Emit::Values)]
    emit: Emit,
    /// Write binary P5 instead of ASCII P2.
    #[arg(long)]
    binary: bool,
}

#[derive(Debug, Args)]
#[group(skip)]
#[command(group(ArgGroup::new("query").required(true).multiple(false).args(["digits", "nth", "find"])))]
struct DiagonalArgs {
    /// Print the first N diagonal digits.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    digits: Option<u64>,
    /// Print the Nth enumerated decimal.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    nth: Option<u64>,
    /// Look a digit sequence up in the enumeration.
    #[arg(long, value_parser = parse_digits, requires = "limit")]
    find: Option<DigitSequence>,
    /// Search bound for --find.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), requires = "find")]
    limit: Option<u64>,
    /// Flip the digits (1 -> 0, others -> 1) before printing or searching.
    #[arg(long, conflicts_with = "nth")]
    invert: bool,
}

fn parse_k(s: &str) -> Result<f64, String> {
    let k: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    WeberParams::new(k)
        .map(|p| p.k())
        .map_err(|e| e.to_string())
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let unit: f64 = s.parse().map_err(|_| format!("{s:?} is not a number"))?;
    if unit.is_finite() && unit > 0.0 {
        Ok(unit)
    } else {
        Err(format!("unit must be a finite positive number, got {s}"))
    }
}

fn parse_format(s: &str) -> Result<SeriesFormat, String> {
    s.parse()
}

fn parse_digits(s: &str) -> Result<DigitSequence, String> {
    if s.is_empty() {
        return Err("digit string is empty".into());
    }
    DigitSequence::parse(s).map_err(|e| e.to_string())
}

type DataResult = Result<(), Box<dyn std::error::Error>>;

/// Runs the CLI with explicit streams and returns the exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_USAGE,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };

    let result = match cli.command {
        Command::Iir(args) => run_iir(&args, stdout),
        Command::Split(args) => run_split(&args, stdin, stdout),
        Command::Cornsweet(args) => run_cornsweet(&args, stdout),
        Command::Diagonal(args) => run_diagonal(&args, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_DATA
        }
    }
}

fn run_iir(args: &IirArgs, out: &mut dyn Write) -> DataResult {
    if args.table {
        writeln!(out, "K\tIIR")?;
        for (k, iir) in weber::iir_table(&TABLE_KS)? {
            writeln!(out, "{k}\t{iir:.2}")?;
        }
    } else if let Some(k) = args.k {
        let params = WeberParams::new(k)?;
        writeln!(out, "k\t{}", sig15(k))?;
        writeln!(out, "er\t{}", sig15(weber::er_for_triple(&params)))?;
        writeln!(out, "ihr\t{}", sig15(weber::ihr_for_triple(&params)))?;
        writeln!(out, "iir\t{}", sig15(params.iir()))?;
    }
    Ok(())
}

fn run_split(args: &SplitArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> DataResult {
    let bytes = if args.input.as_os_str() == "-" {
        let mut buf = Vec::new();
        stdin.read_to_end(&mut buf)?;
        buf
    } else {
        std::fs::read(&args.input).map_err(|e| format!("{}: {e}", args.input.display()))?
    };
    let series = parse_series_bytes(&bytes, args.format)?;

    let mut config = SplitConfig::new(args.mode.into(), args.k)?
        .recursive(args.recursive)
        .with_min_segment(args.min_segment as usize)?;
    if let Some(unit) = args.unit {
        config = config.with_unit(unit)?;
    }
    let segmentation = split(&series, &config)?;
    let report = SplitReport::new(&segmentation, &config);
    match args.output {
        OutputFormat::Text => write!(out, "{}", report.to_text())?,
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
    }
    Ok(())
}

fn run_cornsweet(args: &CornsweetArgs, out: &mut dyn Write) -> DataResult {
    match args.emit {
        Emit::Values => {
            let values: Vec<String> = cornsweet_profile(args.pad, args.pad)
                .iter()
                .map(|v| v.to_string())
                .collect();
            writeln!(out, "{}", values.join(" "))?;
        }
        Emit::Pgm => {
            let encoding = if args.binary {
                PgmEncoding::Binary
            } else {
                PgmEncoding::Ascii
            };
            out.write_all(&cornsweet_image(args.pad, args.height as usize).encode(encoding))?;
        }
    }
    Ok(())
}

fn run_diagonal(args: &DiagonalArgs, out: &mut dyn Write) -> DataResult {
    let maybe_invert = |seq: DigitSequence| {
        if args.invert {
            enumeration::invert(&seq)
        } else {
            seq
        }
    };
    if let Some(n) = args.digits {
        writeln!(out, "{}", maybe_invert(enumeration::diagonal(n as usize)))?;
    } else if let Some(n) = args.nth {
        let d = enumeration::nth_decimal(n)?;
        writeln!(out, "{d}")?;
    } else if let (Some(seq), Some(limit)) = (&args.find, args.limit) {
        match enumeration::find_in_enumeration(&maybe_invert(seq.clone()), limit) {
            Some(n) => writeln!(out, "{n}")?,
            None => writeln!(out, "absent")?,
        }
    }
    Ok(())
}
