use std::fmt;
use std::io::{self, Write};

use chainisom::closed_forms::{formula_table, FORMULA_CAP};
use chainisom::families::{enumerate_fast_with_cap, CountTable};
use chainisom::greens::{
    build_rees_quotient, build_table, greens_classes_criterion, greens_classes_oracle,
    is_categorical, is_zero_e_unitary, Relation, SemigroupTable,
};
use chainisom::verify::{parse_n_range, run_check, Check};
use chainisom::{Error, Family, PartialInjection, Point, Statistic};
use serde_json::json;

use crate::render;
use crate::{ElementFormat, Outcome, RelationArg, ReportFormat, StatArg, TableFormat};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(e) => write!(f, "write failed: {e}"),
        }
    }
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

type CmdResult = Result<Outcome, CliError>;

fn check_cap(n: Point, cap: Point, what: &'static str) -> Result<(), Error> {
    if n > cap {
        return Err(Error::LimitExceeded { what, n, cap });
    }
    Ok(())
}

pub fn enumerate(
    out: &mut dyn Write,
    n: Point,
    fam: Family,
    height: Option<Point>,
    format: ElementFormat,
    cap: Point,
) -> CmdResult {
    for a in enumerate_fast_with_cap(n, fam, height, cap)? {
        match format {
            ElementFormat::Json => {
                serde_json::to_writer(&mut *out, &a).map_err(io::Error::from)?;
                writeln!(out)?;
            }
            ElementFormat::Text => writeln!(out, "{a}")?,
        }
    }
    Ok(Outcome::Ok)
}

pub fn table(
    out: &mut dyn Write,
    fam: Family,
    by: StatArg,
    max_n: Point,
    format: TableFormat,
    empirical: bool,
    cap: Point,
) -> CmdResult {
    let stat = match by {
        StatArg::Height => Statistic::Height,
        StatArg::Fix => Statistic::Fix,
    };
    let t = if empirical {
        CountTable::empirical(fam, stat, max_n, cap)?
    } else {
        check_cap(max_n, FORMULA_CAP, "closed-form")?;
        formula_table(fam, stat, max_n)?
    };
    let text = match format {
        TableFormat::Text => render::table_text(&t),
        TableFormat::Csv => render::table_csv(&t),
        TableFormat::Json => render::table_json(&t),
    };
    out.write_all(text.as_bytes())?;
    Ok(Outcome::Ok)
}

pub fn verify(
    out: &mut dyn Write,
    check: &str,
    n_range: &str,
    format: ReportFormat,
    timing: bool,
) -> CmdResult {
    let check: Check = check.parse()?;
    let range = parse_n_range(n_range)?;
    let report = run_check(check, range)?;
    match format {
        ReportFormat::Json => {
            serde_json::to_writer(&mut *out, &report).map_err(io::Error::from)?;
            writeln!(out)?;
        }
        ReportFormat::Text => {
            writeln!(out, "check {} over n = {}..={}", report.check, report.n_range[0], report.n_range[1])?;
            for inst in &report.instances {
                let status = if inst.pass { "pass" } else { "FAIL" };
                match &inst.note {
                    Some(note) => writeln!(out, "  {status} {}  witness: {note}", inst.params_text())?,
                    None => writeln!(out, "  {status} {}", inst.params_text())?,
                }
            }
            let verdict = if report.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} ({} instances)", report.instances.len())?;
            if let Some(first) = report.first_failure() {
                writeln!(
                    out,
                    "first failure: {} {}",
                    first.params_text(),
                    first.note.as_deref().unwrap_or("")
                )?;
            }
        }
    }
    if timing {
        eprintln!("{}: {:.3} s", report.check, report.wall_time.as_secs_f64());
    }
    Ok(if report.pass { Outcome::Ok } else { Outcome::Violation })
}

fn family_table(n: Point, fam: Family, cap: Point) -> Result<(Vec<PartialInjection>, SemigroupTable), Error> {
    check_cap(n, cap, "table")?;
    let els: Vec<PartialInjection> = enumerate_fast_with_cap(n, fam, None, cap)?.collect();
    let table = build_table(&els, false)?;
    Ok((els, table))
}

pub fn greens(
    out: &mut dyn Write,
    n: Point,
    fam: Family,
    rel: RelationArg,
    oracle: bool,
    format: ReportFormat,
    cap: Point,
) -> CmdResult {
    let relation = match rel {
        RelationArg::R => Relation::R,
        RelationArg::L => Relation::L,
        RelationArg::H => Relation::H,
        RelationArg::D => Relation::D,
    };
    let (els, table) = family_table(n, fam, cap)?;
    let classes = if oracle {
        greens_classes_oracle(&table, relation)?
    } else {
        greens_classes_criterion(&els, fam, relation)
    };
    match format {
        ReportFormat::Text => {
            let title = format!("{relation}-classes of {fam}_{n}");
            out.write_all(render::classes_text(&classes, &table, &title).as_bytes())?;
        }
        ReportFormat::Json => {
            let blocks: Vec<Vec<&PartialInjection>> =
                classes.partition.iter().map(|b| b.iter().map(|&i| &els[i]).collect()).collect();
            let v = json!({ "n": n, "family": fam, "relation": relation, "classes": blocks });
            writeln!(out, "{v}")?;
        }
    }
    Ok(Outcome::Ok)
}

struct Summary {
    name: String,
    order: usize,
    idempotents: usize,
    inverse: bool,
    zero_e_unitary: (bool, Option<String>, Option<serde_json::Value>),
    categorical: (bool, Option<String>, Option<serde_json::Value>),
}

fn summarize(name: String, table: &SemigroupTable) -> Result<Summary, Error> {
    let (eu, w1) = is_zero_e_unitary(table)?;
    let (cat, w2) = is_categorical(table)?;
    Ok(Summary {
        name,
        order: table.len(),
        idempotents: table.idempotents().len(),
        inverse: table.is_inverse(),
        zero_e_unitary: (eu, w1.as_ref().map(|w| w.describe(table)), w1.map(|w| w.to_json(table))),
        categorical: (cat, w2.as_ref().map(|w| w.describe(table)), w2.map(|w| w.to_json(table))),
    })
}

fn write_summary(out: &mut dyn Write, s: &Summary, format: ReportFormat) -> io::Result<()> {
    match format {
        ReportFormat::Text => {
            writeln!(out, "{}: order {}, idempotents {}, inverse: {}", s.name, s.order, s.idempotents, s.inverse)?;
            let line = |label: &str, (holds, w, _): &(bool, Option<String>, _)| match w {
                Some(w) => format!("{}: {label}: {holds}, witness {w}", s.name),
                None => format!("{}: {label}: {holds}", s.name),
            };
            if s.zero_e_unitary.1.is_none() && s.categorical.1.is_none() {
                writeln!(out, "{}: 0-E-unitary: {}, categorical: {}", s.name, s.zero_e_unitary.0, s.categorical.0)?;
            } else {
                writeln!(out, "{}", line("0-E-unitary", &s.zero_e_unitary))?;
                writeln!(out, "{}", line("categorical", &s.categorical))?;
            }
        }
        ReportFormat::Json => {
            let v = json!({
                "semigroup": s.name,
                "order": s.order,
                "idempotents": s.idempotents,
                "inverse": s.inverse,
                "zero_e_unitary": { "holds": s.zero_e_unitary.0, "witness": s.zero_e_unitary.2 },
                "categorical": { "holds": s.categorical.0, "witness": s.categorical.2 },
            });
            writeln!(out, "{v}")?;
        }
    }
    Ok(())
}

pub fn structure(
    out: &mut dyn Write,
    n: Point,
    fam: Family,
    rees_p: Option<Point>,
    format: ReportFormat,
    cap: Point,
) -> CmdResult {
    let (_, table) = family_table(n, fam, cap)?;
    write_summary(out, &summarize(format!("{fam}_{n}"), &table)?, format)?;
    if let Some(p) = rees_p {
        let q = build_rees_quotient(n, p)?;
        write_summary(out, &summarize(format!("Q({n},{p})"), &q.table)?, format)?;
    }
    Ok(Outcome::Ok)
}

pub fn mult(out: &mut dyn Write, n: Point, fam: Family, format: TableFormat, cap: Point) -> CmdResult {
    let (_, table) = family_table(n, fam, cap)?;
    match format {
        TableFormat::Json => writeln!(out, "{}", table.manifest_json())?,
        _ => out.write_all(table.to_csv().as_bytes())?,
    }
    Ok(Outcome::Ok)
}
