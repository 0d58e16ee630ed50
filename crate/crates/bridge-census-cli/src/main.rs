//! Command-line front end for the 2-bridge knot census.
//!
//! Exit codes are a stable contract: 0 on success, 1 when a verification
//! suite or conjecture scan reports failures, 2 on usage or validation
//! errors.

use std::process::ExitCode;

use bridge_census::cf::parse_cf;
use bridge_census::enumerate::{self, census, enumerate_tuples, EnumFilter};
use bridge_census::verify::{
    run_oracle_suite, run_theorem_suite, scan_median_conjecture_with_progress,
};
use bridge_census_cli::output::{render_stats, render_table, Format, Quantity};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bridge-census",
    version,
    about = "Exact counts, statistics and verification for 2-bridge knots by crossing number"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, symmetry orbit and Schubert fraction of one tuple
    Invariants {
        /// Comma-separated nonzero even integers, e.g. "2,-4,2,2"
        tuple: String,
    },
    /// Triangular count table (rows c, columns b)
    Table {
        /// Which count: k (knots), e (tuples), ep (palindromic tuples)
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        /// Smallest crossing number (at least 3)
        #[arg(long)]
        min: i64,
        /// Largest crossing number
        #[arg(long)]
        max: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Distribution statistics (mean, variance, mode, median) per c
    Stats {
        #[arg(long)]
        min: i64,
        #[arg(long)]
        max: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Stream every tuple with the given crossing number, one per line
    Enumerate {
        /// Crossing number (at least 3, within the enumeration cap)
        #[arg(long)]
        c: u32,
        /// Keep only tuples with this braid index
        #[arg(long)]
        b: Option<u32>,
        /// Keep only palindromes and anti-palindromes
        #[arg(long)]
        palindromic: bool,
        /// Keep only the canonical member of each orbit
        #[arg(long)]
        dedupe: bool,
        /// Abort (exit 2) if more than this many tuples would be emitted
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Exhaustive per-braid-index counts for one crossing number, as JSON
    Census {
        #[arg(long)]
        c: u32,
    },
    /// Cross-check enumeration against the formulas and run the theorem
    /// checks; exit 1 on any failed check
    Verify {
        /// Enumerate exhaustively up to this crossing number
        #[arg(long = "enum-max", default_value_t = 18)]
        enum_max: i64,
        /// Run closed-form theorem checks up to this crossing number
        #[arg(long = "theorem-max", default_value_t = 500)]
        theorem_max: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
    /// Scan the median = mode conjecture; exit 1 on any violation
    Conjecture {
        /// Largest crossing number to check (at least 3)
        #[arg(long)]
        max: i64,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum QuantityArg {
    K,
    E,
    Ep,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::K => Quantity::K,
            QuantityArg::E => Quantity::E,
            QuantityArg::Ep => Quantity::Ep,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

const USAGE_ERROR: u8 = 2;
const CHECK_FAILED: u8 = 1;

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(USAGE_ERROR)
}

/// Die quietly when a downstream pipe closes (`enumerate --c 20 | head`).
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    match Cli::parse().command {
        Command::Invariants { tuple } => cmd_invariants(&tuple),
        Command::Table {
            quantity,
            min,
            max,
            format,
        } => cmd_table(quantity.into(), min, max, format.into()),
        Command::Stats { min, max, format } => cmd_stats(min, max, format.into()),
        Command::Enumerate {
            c,
            b,
            palindromic,
            dedupe,
            cap,
        } => cmd_enumerate(c, b, palindromic, dedupe, cap),
        Command::Census { c } => cmd_census(c),
        Command::Verify {
            enum_max,
            theorem_max,
            format,
        } => cmd_verify(enum_max, theorem_max, format.into()),
        Command::Conjecture { max, format } => cmd_conjecture(max, format.into()),
    }
}

fn cmd_invariants(tuple_text: &str) -> ExitCode {
    let tuple = match parse_cf(tuple_text) {
        Ok(t) => t,
        Err(e) => return usage_error(e),
    };
    let inv = tuple.invariants();
    let orbit = tuple.orbit();
    let fraction = tuple.to_fraction().expect("valid tuples never degenerate");
    println!("tuple:            {tuple}");
    println!("sign changes:     {}", inv.sign_changes);
    println!("half sum:         {}", inv.half_sum);
    println!("crossing number:  {}", inv.crossing_number);
    println!("braid index:      {}", inv.braid_index);
    println!("symmetry:         {}", orbit.symmetry_kind);
    println!("orbit size:       {}", orbit.members.len());
    for member in &orbit.members {
        println!("orbit member:     {member}");
    }
    println!("canonical:        {}", orbit.canonical);
    println!("schubert:         {} (|p| = {})", fraction, fraction.p_abs());
    ExitCode::SUCCESS
}

fn check_range(min: i64, max: i64) -> Result<(), String> {
    if min < 3 {
        return Err(format!("--min must be at least 3 (got {min})"));
    }
    if max < min {
        return Err(format!("--max must be at least --min (got {min}..{max})"));
    }
    Ok(())
}

fn cmd_table(quantity: Quantity, min: i64, max: i64, format: Format) -> ExitCode {
    if let Err(e) = check_range(min, max) {
        return usage_error(e);
    }
    match render_table(quantity, min, max, format) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_stats(min: i64, max: i64, format: Format) -> ExitCode {
    if let Err(e) = check_range(min, max) {
        return usage_error(e);
    }
    match render_stats(min, max, format) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_enumerate(
    c: u32,
    b: Option<u32>,
    palindromic: bool,
    dedupe: bool,
    cap: Option<u64>,
) -> ExitCode {
    let enum_cap = enumerate::enum_cap();
    if c > enum_cap {
        return usage_error(format!(
            "crossing number {c} exceeds the enumeration cap {enum_cap} \
             (set {} to raise it)",
            enumerate::ENUM_CAP_ENV
        ));
    }
    let filter = EnumFilter {
        crossing: c,
        braid: b,
        palindromic_only: palindromic,
        dedupe,
        cap,
    };
    let stream = match enumerate_tuples(&filter) {
        Ok(s) => s,
        Err(e) => return usage_error(e),
    };
    for tuple in stream {
        match tuple {
            Ok(t) => println!("{t}"),
            Err(e) => return usage_error(e),
        }
    }
    ExitCode::SUCCESS
}

fn cmd_census(c: u32) -> ExitCode {
    match census(c) {
        Ok(counts) => {
            println!("{}", counts.to_json());
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn cmd_verify(enum_max: i64, theorem_max: i64, format: Format) -> ExitCode {
    if enum_max < 3 {
        return usage_error(format!("--enum-max must be at least 3 (got {enum_max})"));
    }
    let cap = enumerate::enum_cap() as i64;
    if enum_max > cap {
        return usage_error(format!(
            "--enum-max {enum_max} exceeds the enumeration cap {cap} \
             (set {} to raise it)",
            enumerate::ENUM_CAP_ENV
        ));
    }
    if theorem_max < 8 {
        return usage_error(format!(
            "--theorem-max must be at least 8 so the log-concavity and \
             difference checks have a nontrivial window (got {theorem_max})"
        ));
    }
    let oracle = match run_oracle_suite(enum_max) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let theorems = match run_theorem_suite(theorem_max) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    match format {
        Format::Json => println!(
            "{{\"oracle\":{},\"theorems\":{}}}",
            oracle.to_json(),
            theorems.to_json()
        ),
        Format::Csv => {
            println!("suite,checks,failures,elapsed_ms");
            for r in [&oracle, &theorems] {
                println!("{},{},{},{}", r.suite_name, r.checks_run, r.failures.len(), r.elapsed_ms);
            }
        }
        Format::Table => {
            print!("{oracle}");
            print!("{theorems}");
        }
    }
    if oracle.passed() && theorems.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(CHECK_FAILED)
    }
}

fn cmd_conjecture(max: i64, format: Format) -> ExitCode {
    if max < 3 {
        return usage_error(format!("--max must be at least 3 (got {max})"));
    }
    let result = scan_median_conjecture_with_progress(max, |done| {
        eprintln!("checked {done} crossing numbers...");
    });
    match format {
        Format::Json => println!("{}", result.to_json()),
        Format::Csv => {
            println!("max_c_checked,violations,elapsed_ms");
            println!("{},{},{}", result.max_c_checked, result.violations.len(), result.elapsed_ms);
        }
        Format::Table => print!("{result}"),
    }
    if result.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(CHECK_FAILED)
    }
}
