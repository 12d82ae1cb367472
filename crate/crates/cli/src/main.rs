//! Command-line surface: expansion, counting, solving, verification and
//! table auditing, with human-readable and machine-readable output.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 verification failure,
//! 3 internal inconsistency (rank deficiency / residual failure).

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use octonary_core::bases::SpaceId;
use octonary_core::engine::Engine;
use octonary_core::generators::{self, EtaQuotientSpec};
use octonary_core::rational::format_q;
use octonary_core::repcount::QuadraticForm;
use octonary_core::series::QSeries;
use octonary_core::{Error, DEFAULT_PREC};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Human-readable, aligned output.
    Table,
    /// Line-delimited `kind key=value ...` records.
    Records,
}

#[derive(Parser)]
#[command(
    name = "octonary",
    version,
    about = "Exact representation-number formulas for octonary quadratic forms of level 24"
)]
struct Cli {
    /// Working precision: number of q-expansion coefficients.
    #[arg(long, global = true, default_value_t = DEFAULT_PREC)]
    prec: usize,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the q-expansion of a named series or an inline eta quotient.
    ///
    /// Names: theta, F, E4, or any catalog entry (f4_6 ... f4_24_chi24_10);
    /// anything containing `^` parses as an inline spec like "1^2 2^2 3^2 6^2".
    Expand {
        #[arg(long)]
        series: String,
    },
    /// Count the representations of n by a form (brute-force enumeration).
    Count {
        /// Form label: A:a1,a2,a3,a4,b1,b2 or B:c1,c2,c3 (B:1,c1,c2,c3 also accepted).
        #[arg(long)]
        form: String,
        #[arg(long)]
        n: u64,
    },
    /// Express a form's theta product exactly in its space's basis.
    Solve {
        #[arg(long)]
        form: String,
    },
    /// Check formula values against brute-force counts.
    Verify {
        #[arg(long, conflicts_with = "all")]
        form: Option<String>,
        /// Verify every catalog form (90 family A + 19 family B).
        #[arg(long)]
        all: bool,
        /// Largest n checked.
        #[arg(long, default_value_t = 40)]
        nmax: u64,
    },
    /// Diff solved coordinates against an embedded reference table (3-7).
    Tables {
        #[arg(long)]
        table: u8,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Parse(_) | Error::ConstraintViolation { .. } | Error::UnknownSeries(_) => 1,
                Error::InconsistentSystem { .. }
                | Error::RankDeficient { .. }
                | Error::RemediationFailed(_) => 3,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

/// Parse a form label; `B:1,c1,c2,c3` (the table-row shape) is accepted as
/// an alias for `B:c1,c2,c3`.
fn parse_form(label: &str) -> Result<QuadraticForm, Error> {
    if let Some(rest) = label
        .strip_prefix("B:")
        .or_else(|| label.strip_prefix("b:"))
    {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() == 4 && parts[0].trim() == "1" {
            return QuadraticForm::parse(&format!("B:{}", parts[1..].join(",")));
        }
    }
    QuadraticForm::parse(label)
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Expand { series } => {
            if cli.prec < 1 {
                return Err(Error::Parse("--prec must be positive".into()));
            }
            cmd_expand(series, cli.prec, cli.format)
        }
        Command::Count { form, n } => cmd_count(form, *n, cli.format),
        Command::Solve { form } => {
            check_solve_prec(cli.prec)?;
            cmd_solve(form, cli.prec, cli.format)
        }
        Command::Verify { form, all, nmax } => {
            check_solve_prec(cli.prec)?;
            cmd_verify(form.as_deref(), *all, *nmax, cli)
        }
        Command::Tables { table } => {
            check_solve_prec(cli.prec)?;
            cmd_tables(*table, cli.prec, cli.format)
        }
    }
}

/// Solving needs at least 2*dim + 8 rows.
fn check_solve_prec(prec: usize) -> Result<(), Error> {
    if prec < 40 {
        return Err(Error::Parse(format!(
            "--prec must be at least 40 (2*dim + 8), got {prec}"
        )));
    }
    Ok(())
}

fn resolve_series(name: &str, prec: usize) -> Result<QSeries, Error> {
    match name {
        "theta" | "Theta" => Ok(generators::theta_series(prec)),
        "F" | "borwein" => Ok(generators::borwein_f(prec)),
        "E4" => Ok(generators::eisenstein_ek(4, prec)),
        other => {
            if let Some(combo) = octonary_core::bases::eta_catalog().get(other) {
                return combo.expand(prec);
            }
            if other.contains('^') {
                let spec = EtaQuotientSpec::parse(other)?;
                return generators::eta_quotient(&spec, prec);
            }
            Err(Error::UnknownSeries(other.to_string()))
        }
    }
}

fn cmd_expand(name: &str, prec: usize, format: Format) -> Result<ExitCode, Error> {
    let series = resolve_series(name, prec)?;
    match format {
        Format::Table => {
            println!("n\tcoefficient");
            for n in 0..prec {
                println!("{n}\t{}", format_q(series.coeff(n)));
            }
        }
        Format::Records => {
            for n in 0..prec {
                println!(
                    "expand series={name} n={n} value={}",
                    format_q(series.coeff(n))
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(form: &str, n: u64, format: Format) -> Result<ExitCode, Error> {
    let form = parse_form(form)?;
    let count = form.count_representations(n);
    match format {
        Format::Table => println!("{form} at n = {n}: {count} representations"),
        Format::Records => println!("count form={form} n={n} value={count}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_remediation(space: SpaceId, engine: &Engine, format: Format) {
    if let Some(report) = engine.remediation(space) {
        match format {
            Format::Table => println!("note: {report}"),
            Format::Records => {
                for r in &report.replaced {
                    println!(
                        "remediation space={space} column={} printed=\"{}\" substitute=\"{}\"",
                        r.index, r.printed, r.substitute
                    );
                }
            }
        }
    }
}

fn cmd_solve(form: &str, prec: usize, format: Format) -> Result<ExitCode, Error> {
    let form = parse_form(form)?;
    let engine = Engine::new(prec)?;
    let space = form.space();
    let solved = engine.solve(&form)?;
    let basis = engine.basis(space);
    print_remediation(space, &engine, format);
    match format {
        Format::Table => {
            println!(
                "{form} in M4(Gamma0(24), {space}): dimension {} (precision {prec})",
                basis.dimension()
            );
            for (coeff, elem) in solved.entries.iter().zip(&basis.elements) {
                println!(
                    "{:>3}  {:<24} {}",
                    elem.index,
                    elem.descriptor.to_string(),
                    format_q(coeff)
                );
            }
        }
        Format::Records => {
            for (coeff, elem) in solved.entries.iter().zip(&basis.elements) {
                println!(
                    "solve form={form} space={space} i={} element={} value={}",
                    elem.index,
                    elem.descriptor,
                    format_q(coeff)
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(form: Option<&str>, all: bool, nmax: u64, cli: &Cli) -> Result<ExitCode, Error> {
    if (nmax as usize) >= cli.prec {
        return Err(Error::Parse(format!(
            "--nmax {} needs --prec of at least {}",
            nmax,
            nmax + 1
        )));
    }
    let engine = Engine::new(cli.prec)?;
    let reports = if all {
        engine.verify_all(nmax)?
    } else {
        let label = form.ok_or_else(|| Error::Parse("verify needs --form or --all".into()))?;
        vec![engine.verify(&parse_form(label)?, nmax)?]
    };
    let mut failed = 0usize;
    for report in &reports {
        match cli.format {
            Format::Table => {
                if report.ok() {
                    println!("ok   {} (n <= {})", report.form, report.n_max);
                } else {
                    println!(
                        "FAIL {} ({} violations)",
                        report.form,
                        report.violations.len()
                    );
                    for v in &report.violations {
                        println!(
                            "     n={} formula={} count={}",
                            v.n,
                            format_q(&v.formula),
                            v.count
                        );
                    }
                }
            }
            Format::Records => {
                println!(
                    "verify form={} nmax={} status={} violations={}",
                    report.form,
                    report.n_max,
                    if report.ok() { "ok" } else { "fail" },
                    report.violations.len()
                );
                for v in &report.violations {
                    println!(
                        "violation form={} n={} formula={} count={}",
                        report.form,
                        v.n,
                        format_q(&v.formula),
                        v.count
                    );
                }
            }
        }
        if !report.ok() {
            failed += 1;
        }
    }
    if cli.format == Format::Table {
        println!(
            "{} of {} forms verified",
            reports.len() - failed,
            reports.len()
        );
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_tables(table: u8, prec: usize, format: Format) -> Result<ExitCode, Error> {
    let engine = Engine::new(prec)?;
    let audit = engine.diff_table(table)?;
    let space = octonary_core::tables::space_for_table(table)?;
    print_remediation(space, &engine, format);
    match format {
        Format::Table => {
            println!(
                "table {table}: {} entries compared, {} mismatches",
                audit.diffs.len(),
                audit.mismatch_count()
            );
            for d in audit.diffs.iter().filter(|d| !d.matches()) {
                println!(
                    "  row {} col {}: reference={} computed={}",
                    d.row_label,
                    d.column,
                    format_q(&d.reference),
                    format_q(&d.computed)
                );
            }
            for e in &audit.errata {
                println!(
                    "  erratum row {} cols {:?}: reference row matches counts: {}; solved row matches counts: {}",
                    e.row_label, e.columns, e.reference_row_matches_counts, e.solved_row_matches_counts
                );
            }
        }
        Format::Records => {
            for d in &audit.diffs {
                println!(
                    "diff table={} row={} col={} reference={} computed={} verdict={}",
                    d.table,
                    d.row_label,
                    d.column,
                    format_q(&d.reference),
                    format_q(&d.computed),
                    if d.matches() { "match" } else { "mismatch" }
                );
            }
            for e in &audit.errata {
                println!(
                    "erratum table={} row={} cols={:?} reference_matches_counts={} solved_matches_counts={}",
                    e.table, e.row_label, e.columns, e.reference_row_matches_counts, e.solved_row_matches_counts
                );
            }
        }
    }
    // A mismatch whose solved value fails the brute-force counts is an
    // internal inconsistency; plain mismatches are reported data.
    if audit.errata.iter().any(|e| !e.solved_row_matches_counts) {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}
