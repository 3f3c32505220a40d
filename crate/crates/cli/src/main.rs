//! `chainisom`: enumerate, count and verify partial isometries of a chain.
//!
//! Exit codes: 0 on success, 1 when a verification finds a violation,
//! 2 on usage errors and exceeded caps.

mod commands;
mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use chainisom::families::DEFAULT_ENUMERATION_CAP;
use chainisom::Point;
use clap::{Parser, Subcommand, ValueEnum};

/// Default ceiling on `n` for commands that build a full multiplication table.
pub const DEFAULT_TABLE_CAP: Point = 10;

#[derive(Parser, Debug)]
#[command(name = "chainisom", version, about = "Partial isometries of a finite chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Dp,
    Odp,
}

impl From<FamilyArg> for chainisom::Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Dp => chainisom::Family::Dp,
            FamilyArg::Odp => chainisom::Family::Odp,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StatArg {
    Height,
    Fix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ElementFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RelationArg {
    R,
    L,
    H,
    D,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stream the elements of DP_n or ODP_n in canonical order.
    Enumerate {
        #[arg(long)]
        n: Point,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Only elements of this height.
        #[arg(long)]
        height: Option<Point>,
        #[arg(long, value_enum, default_value = "json")]
        format: ElementFormat,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: Point,
    },
    /// Print the triangle F(n;k) with row sums.
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        by: StatArg,
        #[arg(long)]
        max_n: Point,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
        /// Count by enumeration instead of closed forms.
        #[arg(long)]
        empirical: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: Point,
    },
    /// Run a verification check over a range of n (inclusive, `a..b`).
    Verify {
        #[arg(long)]
        check: String,
        #[arg(long)]
        n_range: String,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Report wall time on standard error.
        #[arg(long)]
        timing: bool,
    },
    /// List Green's classes.
    Greens {
        #[arg(long)]
        n: Point,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum)]
        classes: RelationArg,
        /// Compute classes from principal ideals of the table instead of
        /// the domain/image criteria.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
        cap: Point,
    },
    /// Summarize inverse, 0-E-unitary and categorical properties.
    Structure {
        #[arg(long)]
        n: Point,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Also report on the Rees quotient Q(n,p) of ODP_n.
        #[arg(long)]
        rees_p: Option<Point>,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
        cap: Point,
    },
    /// Print the multiplication table of DP_n or ODP_n.
    Mult {
        #[arg(long)]
        n: Point,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// `csv` prints the product table; `json` prints the element manifest.
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
        #[arg(long, default_value_t = DEFAULT_TABLE_CAP)]
        cap: Point,
    },
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Ok,
    Violation,
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome, commands::CliError> {
    match cli.command {
        Command::Enumerate { n, family, height, format, cap } => {
            commands::enumerate(out, n, family.into(), height, format, cap)
        }
        Command::Table { family, by, max_n, format, empirical, cap } => {
            commands::table(out, family.into(), by, max_n, format, empirical, cap)
        }
        Command::Verify { check, n_range, format, timing } => {
            commands::verify(out, &check, &n_range, format, timing)
        }
        Command::Greens { n, family, classes, oracle, format, cap } => {
            commands::greens(out, n, family.into(), classes, oracle, format, cap)
        }
        Command::Structure { n, family, rees_p, format, cap } => {
            commands::structure(out, n, family.into(), rees_p, format, cap)
        }
        Command::Mult { n, family, format, cap } => commands::mult(out, n, family.into(), format, cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(Outcome::Ok) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(Outcome::Ok) => ExitCode::from(2),
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
