//! Command line front end.
//!
//! Exit codes: 0 on success, 1 for usage mistakes and malformed input,
//! 2 when the request is well-formed but outside what this build can
//! compute (order out of range). Everything diagnostic (timings,
//! progress) goes to stderr; stdout carries only the results, which are
//! deterministic for a given command line.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::ops::ControlFlow;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::classify::classify;
use crate::enumerate::{
    count_classes, enumerate_classes, ClassRecord, EnumerationOptions, Progress,
};
use crate::format::{parse_matrix, render_ascii, to_pbm, to_tuple};
use crate::matrix::{BitMatrix, MAX_ORDER};
use crate::oracle::{brute_force_partition, burnside_class_count};
use crate::orbit::{canonical, orbit_summary};

/// Candidates between progress lines on big sweeps.
const PROGRESS_EVERY: u64 = 1 << 20;

#[derive(Parser)]
#[command(
    name = "interweave",
    version,
    about = "Enumerate and inspect interweaving matrices up to cyclic shifts"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count fabric classes of one order
    Count {
        /// Matrix order, 2..=64
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// List canonical class representatives of one order
    List {
        /// Matrix order, 2..=64
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Filter::All)]
        filter: Filter,
        /// Stop after this many classes
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print the canonical representative of the input matrix
    Canon {
        /// Input path, or '-' for stdin
        #[arg(default_value = "-")]
        input: String,
    },
    /// Report the class predicates of the input matrix
    Classify {
        /// Input path, or '-' for stdin
        #[arg(default_value = "-")]
        input: String,
    },
    /// Draw the input matrix
    Render {
        /// Input path, or '-' for stdin
        #[arg(default_value = "-")]
        input: String,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
        /// Two characters standing for 0 and 1 (ascii format only)
        #[arg(long, default_value = ".#")]
        glyphs: String,
    },
    /// Cross-check the enumerator against reference computations
    #[command(hide = true)]
    Oracle {
        /// Matrix order, 2..=4
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Csv,
    JsonLines,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Filter {
    All,
    Mirror,
    Rotation,
    Primary,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Ascii,
    Pbm,
}

/// Validated drawing request: target format plus the two glyphs standing
/// for 0 and 1.
struct RenderSpec {
    format: RenderFormat,
    zero: char,
    one: char,
}

enum CliError {
    /// Bad request: wrong flags, unreadable or malformed input.
    Usage(String),
    /// Well-formed request this build cannot compute.
    Capability(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Capability(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Capability(m) => m,
        }
    }
}

/// Parses `args` and runs one command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{err}");
                    0
                }
                _ => {
                    eprint!("{err}");
                    1
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Cmd::Count { n, format, threads } => cmd_count(n, format, threads),
        Cmd::List {
            n,
            filter,
            limit,
            format,
            threads,
        } => cmd_list(n, filter, limit, format, threads),
        Cmd::Canon { input } => cmd_canon(&input),
        Cmd::Classify { input } => cmd_classify(&input),
        Cmd::Render {
            input,
            format,
            glyphs,
        } => {
            let spec = render_spec(format, &glyphs)?;
            cmd_render(&input, &spec)
        }
        Cmd::Oracle { n } => cmd_oracle(n),
    }
}

fn check_order(n: usize) -> Result<(), CliError> {
    if (2..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(CliError::Capability(format!(
            "order {n} is outside the supported range 2..={MAX_ORDER}"
        )))
    }
}

fn enumeration_options(n: usize, threads: usize) -> Result<EnumerationOptions, CliError> {
    if threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    if n >= 6 {
        eprintln!("note: order {n} enumeration is exponential; running best effort");
    }
    let progress = (n >= 5).then(|| Progress {
        every: PROGRESS_EVERY,
        callback: Arc::new(|total| eprintln!("progress: {total} candidates")),
    });
    Ok(EnumerationOptions {
        threads,
        mirror: true,
        rotation: true,
        progress,
    })
}

fn cmd_count(n: usize, format: ReportFormat, threads: usize) -> Result<(), CliError> {
    check_order(n)?;
    let opts = enumeration_options(n, threads)?;
    let report = count_classes(n, &opts).map_err(|e| CliError::Capability(e.to_string()))?;
    match format {
        ReportFormat::Text => {
            println!("n={n}");
            println!(
                "q={} m={} r={}",
                report.classes, report.self_mirrored, report.rotation_stable
            );
            println!("candidates={}", report.candidates);
        }
        ReportFormat::Csv => {
            println!("n,q,m,r,candidates");
            println!(
                "{n},{},{},{},{}",
                report.classes, report.self_mirrored, report.rotation_stable, report.candidates
            );
        }
        ReportFormat::JsonLines => {
            println!(
                "{{\"n\":{n},\"q\":{},\"m\":{},\"r\":{},\"candidates\":{}}}",
                report.classes, report.self_mirrored, report.rotation_stable, report.candidates
            );
        }
    }
    eprintln!("elapsed: {:.3?}", report.elapsed);
    Ok(())
}

fn keep(filter: Filter, rec: &ClassRecord) -> bool {
    match filter {
        Filter::All => true,
        Filter::Mirror => rec.flags.self_mirrored,
        Filter::Rotation => rec.flags.rotation_stable,
        Filter::Primary => rec.flags.primary,
    }
}

/// Three fixed positions: `p`rimary, self-`m`irrored, `r`otation-stable,
/// with `-` for an unset flag.
fn flag_chars(rec: &ClassRecord) -> String {
    let mut s = String::with_capacity(3);
    s.push(if rec.flags.primary { 'p' } else { '-' });
    s.push(if rec.flags.self_mirrored { 'm' } else { '-' });
    s.push(if rec.flags.rotation_stable { 'r' } else { '-' });
    s
}

fn cmd_list(
    n: usize,
    filter: Filter,
    limit: Option<u64>,
    format: ReportFormat,
    threads: usize,
) -> Result<(), CliError> {
    check_order(n)?;
    let mut opts = enumeration_options(n, threads)?;
    // the cheap text listing only evaluates what the filter needs
    if format == ReportFormat::Text {
        opts.mirror = filter == Filter::Mirror;
        opts.rotation = filter == Filter::Rotation;
    }

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut write_failure: Option<io::Error> = None;
    let mut emitted = 0u64;

    if format == ReportFormat::Csv {
        let _ = writeln!(out, "n,rows,orbit,flags");
    }

    enumerate_classes(n, &opts, |rec| {
        if !keep(filter, &rec) {
            return ControlFlow::Continue(());
        }
        if limit.is_some_and(|l| emitted >= l) {
            return ControlFlow::Break(());
        }
        let line = match format {
            ReportFormat::Text => to_tuple(&rec.canonical),
            ReportFormat::Csv => {
                let rows: Vec<String> =
                    rec.canonical.rows().iter().map(u64::to_string).collect();
                format!("{n},{},{},{}", rows.join(" "), rec.orbit_size, flag_chars(&rec))
            }
            ReportFormat::JsonLines => format!(
                "{{\"tuple\":\"{}\",\"orbit\":{},\"primary\":{},\"self_mirrored\":{},\"rotation_stable\":{}}}",
                to_tuple(&rec.canonical),
                rec.orbit_size,
                rec.flags.primary,
                rec.flags.self_mirrored,
                rec.flags.rotation_stable
            ),
        };
        if let Err(e) = writeln!(out, "{line}") {
            write_failure = Some(e);
            return ControlFlow::Break(());
        }
        emitted += 1;
        if limit.is_some_and(|l| emitted >= l) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .map_err(|e| CliError::Capability(e.to_string()))?;

    match out.flush() {
        Ok(()) => {}
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => return Ok(()),
        Err(e) => return Err(CliError::Usage(format!("cannot write output: {e}"))),
    }
    match write_failure {
        None => Ok(()),
        Some(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        Some(e) => Err(CliError::Usage(format!("cannot write output: {e}"))),
    }
}

fn read_input(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(source)
            .map_err(|e| CliError::Usage(format!("cannot read {source}: {e}")))
    }
}

fn load_matrix(source: &str) -> Result<BitMatrix, CliError> {
    let text = read_input(source)?;
    parse_matrix(&text).map_err(|e| CliError::Usage(e.to_string()))
}

fn cmd_canon(input: &str) -> Result<(), CliError> {
    let m = load_matrix(input)?;
    println!("{}", to_tuple(&canonical(&m)));
    Ok(())
}

fn cmd_classify(input: &str) -> Result<(), CliError> {
    let m = load_matrix(input)?;
    let flags = classify(&m);
    let summary = orbit_summary(&m);
    println!(
        "in_q={} primary={} self_mirrored={} rotation_stable={} orbit={}",
        flags.fabric, flags.primary, flags.self_mirrored, flags.rotation_stable, summary.size
    );
    Ok(())
}

fn render_spec(format: RenderFormat, glyphs: &str) -> Result<RenderSpec, CliError> {
    let mut chars = glyphs.chars();
    let (zero, one) = match (chars.next(), chars.next(), chars.next()) {
        (Some(z), Some(o), None) => (z, o),
        _ => {
            return Err(CliError::Usage(
                "--glyphs needs exactly two characters".into(),
            ))
        }
    };
    if zero == one {
        return Err(CliError::Usage("--glyphs characters must differ".into()));
    }
    Ok(RenderSpec { format, zero, one })
}

fn cmd_render(input: &str, spec: &RenderSpec) -> Result<(), CliError> {
    let m = load_matrix(input)?;
    match spec.format {
        RenderFormat::Ascii => print!("{}", render_ascii(&m, spec.zero, spec.one)),
        RenderFormat::Pbm => print!("{}", to_pbm(&m)),
    }
    Ok(())
}

fn cmd_oracle(n: usize) -> Result<(), CliError> {
    if !(2..=4).contains(&n) {
        return Err(CliError::Capability(format!(
            "the exhaustive cross-check is limited to orders 2..=4, got {n}"
        )));
    }
    let partition = brute_force_partition(n).map_err(|e| CliError::Capability(e.to_string()))?;
    let by_formula = burnside_class_count(n);
    let report = count_classes(n, &EnumerationOptions::default())
        .map_err(|e| CliError::Capability(e.to_string()))?;
    println!("n={n}");
    println!("classes_by_formula={by_formula}");
    println!("classes_by_sweep={}", partition.classes.len());
    println!("fabric_classes_by_sweep={}", partition.fabric_classes);
    println!("fabric_classes_by_enumeration={}", report.classes);
    let agree = partition.classes.len() as u128 == by_formula
        && partition.fabric_classes == report.classes;
    println!("agree={agree}");
    Ok(())
}
