//! Command-line front end: expand product expressions, extract arithmetic
//! progressions of coefficients, diff two expansions, and run the named
//! verification suites.
//!
//! Exit codes: 0 on success (for `verify`, every case passed), 1 when a
//! verification case failed or was vacuous, 2 on usage or parse errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qseries::dsl::{self, ParseError};
use qseries::products::{expand, ProductExpr};
use qseries::report::{self, CheckStatus};
use qseries::series::Series;
use qseries::{verify, Error};
use serde_json::json;

#[derive(Parser)]
#[command(name = "qs", version, about = "Exact q-series expansion and verification")]
struct Cli {
    /// Truncation order N; coefficients are exact for exponents below N.
    #[arg(long, global = true, default_value_t = 500, env = "QS_ORDER")]
    order: i64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a product expression and print its coefficients.
    Expand {
        /// Product expression, e.g. "(q,q^4;q^5)^-1".
        expr: String,
    },
    /// Print the coefficients at exponents modulus*n + residue.
    Dissect {
        expr: String,
        modulus: i64,
        residue: i64,
    },
    /// Expand two expressions and print their difference.
    Diff {
        left: String,
        right: String,
    },
    /// Run a named verification suite and report every case.
    Verify {
        /// Suite name; an unrecognized name lists the valid choices.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Check the suite's cases on all available cores.
        #[arg(long)]
        parallel: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.order < 2 {
        eprintln!("error: --order must be at least 2, got {}", cli.order);
        return ExitCode::from(2);
    }
    let result = match &cli.command {
        Command::Expand { expr } => cmd_expand(expr, &cli),
        Command::Dissect { expr, modulus, residue } => cmd_dissect(expr, *modulus, *residue, &cli),
        Command::Diff { left, right } => cmd_diff(left, right, &cli),
        Command::Verify { suite, parallel } => return cmd_verify(suite, *parallel, &cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}

/// Parses a command-line expression, rendering a caret under the offending
/// byte on failure.
fn parse_expr(src: &str) -> Result<ProductExpr, u8> {
    dsl::parse(src).map_err(|err| {
        report_parse_error(src, &err);
        2
    })
}

fn report_parse_error(src: &str, err: &ParseError) {
    eprintln!("error: {err}");
    eprintln!("  {src}");
    eprintln!("  {}^", " ".repeat(err.position));
}

fn engine_error(err: Error) -> u8 {
    eprintln!("error: {err}");
    2
}

fn cmd_expand(src: &str, cli: &Cli) -> Result<(), u8> {
    let expr = parse_expr(src)?;
    let series = expand(&expr, cli.order).map_err(engine_error)?;
    emit_series(&series, cli.format);
    Ok(())
}

fn cmd_dissect(src: &str, modulus: i64, residue: i64, cli: &Cli) -> Result<(), u8> {
    if modulus < 1 || residue < 0 || residue >= modulus {
        eprintln!("error: residue must satisfy 0 <= residue < modulus, got {residue} mod {modulus}");
        return Err(2);
    }
    let expr = parse_expr(src)?;
    let series = expand(&expr, cli.order).map_err(engine_error)?;
    let part = series.dissect(modulus, residue).map_err(engine_error)?;
    emit_series(&part, cli.format);
    Ok(())
}

fn cmd_diff(left: &str, right: &str, cli: &Cli) -> Result<(), u8> {
    let l = expand(&parse_expr(left)?, cli.order).map_err(engine_error)?;
    let r = expand(&parse_expr(right)?, cli.order).map_err(engine_error)?;
    let difference = &l - &r;
    let summary = match difference.first_nonzero() {
        Some((index, value)) => format!("first nonzero at index {index}: {value}"),
        None => format!("difference is zero through order {}", difference.order()),
    };
    match cli.format {
        Format::Text => {
            emit_series(&difference, Format::Text);
            println!("{summary}");
        }
        Format::Json => {
            let (start, coeffs) = series_window(&difference);
            let first = difference
                .first_nonzero()
                .map(|(index, value)| json!({ "index": index, "value": value.to_string() }));
            let object = json!({
                "start": start,
                "order": difference.order(),
                "coeffs": coeffs,
                "first_nonzero": first,
            });
            println!("{object}");
        }
        Format::Csv => {
            emit_series(&difference, Format::Csv);
            println!("# {summary}");
        }
    }
    Ok(())
}

fn cmd_verify(suite: &str, parallel: bool, cli: &Cli) -> ExitCode {
    let reports = match verify::run_suite(suite, cli.order, parallel) {
        Ok(reports) => reports,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Text => {
            print!("{}", report::render_table(&reports));
            let passed = reports.iter().filter(|r| r.status == CheckStatus::Pass).count();
            let failed = reports.iter().filter(|r| r.status == CheckStatus::Fail).count();
            let vacuous = reports.len() - passed - failed;
            println!("{} cases: {passed} pass, {failed} fail, {vacuous} vacuous", reports.len());
        }
        Format::Json => {
            for r in &reports {
                println!("{}", r.to_json());
            }
        }
        Format::Csv => {
            println!("{}", report::csv_header());
            for r in &reports {
                println!("{}", report::to_csv_row(r));
            }
        }
    }
    let all_pass = reports.iter().all(|r| r.status == CheckStatus::Pass);
    ExitCode::from(if all_pass { 0 } else { 1 })
}

/// The printable window: starts at 0 (padding known zeros) unless the series
/// genuinely extends below q^0, and always runs up to the truncation order.
fn series_window(s: &Series) -> (i64, Vec<String>) {
    let start = s.base().min(0);
    let coeffs = (start..s.order())
        .map(|e| s.coeff(e).expect("exponent below order").to_string())
        .collect();
    (start, coeffs)
}

fn emit_series(s: &Series, format: Format) {
    let (start, coeffs) = series_window(s);
    match format {
        Format::Text => {
            if start >= 0 {
                println!("{}", coeffs.join(" "));
            } else {
                // Laurent window: prefix every line with its exponent.
                for (i, value) in coeffs.iter().enumerate() {
                    println!("{}: {value}", start + i as i64);
                }
            }
        }
        Format::Json => {
            let object = json!({ "start": start, "order": s.order(), "coeffs": coeffs });
            println!("{object}");
        }
        Format::Csv => {
            println!("exponent,coefficient");
            for (i, value) in coeffs.iter().enumerate() {
                println!("{},{value}", start + i as i64);
            }
        }
    }
}
