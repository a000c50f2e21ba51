//! `klr`: normal forms and verification suites from the command line.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! usage, configuration or parse errors.

mod parse;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use klr_core::klr::{KlrContext, DEFAULT_HEIGHT_BOUND};
use klr_core::qring::DegreeWindow;
use klr_core::rootdata::{CartanDatum, RootVector};
use serde_json::json;

use suites::{run_suite, RunConfig, SUITES};

#[derive(Parser, Debug)]
#[command(name = "klr", version, about = "Exact computations in quiver Hecke algebras")]
struct Cli {
    /// Cartan datum: a JSON file, or one of a2, b2, b2-long, g2.
    #[arg(long, global = true, default_value = "a2")]
    cartan: String,

    /// Degree window `lo:hi`.
    #[arg(long, global = true, default_value = "0:12", allow_hyphen_values = true)]
    window: String,

    /// Largest total height of any computation.
    #[arg(long, global = true, default_value_t = 4)]
    height_bound: usize,

    /// Seed for the randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Print JSON (the default).
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,

    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    table: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// PBW normal form of an expression such as `t1 x1 1[i,i]`.
    Nf {
        expr: String,
        /// Weight as comma-separated labels, needed when no idempotent fixes it.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Run a verification suite.
    Suite {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        name: String,
    },
}

fn load_datum(spec: &str) -> Result<CartanDatum, String> {
    match spec {
        "a2" | "A2" => Ok(CartanDatum::a2()),
        "b2" | "B2" => Ok(CartanDatum::b2_short_i()),
        "b2-long" | "B2-long" => Ok(CartanDatum::b2_long_i()),
        "g2" | "G2" => Ok(CartanDatum::g2_short_i()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            CartanDatum::from_json_str(&text).map_err(|e| e.to_string())
        }
    }
}

fn parse_window(s: &str) -> Result<DegreeWindow, String> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| format!("window {s:?} is not lo:hi"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window start {lo:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window end {hi:?}"))?;
    DegreeWindow::new(lo, hi).map_err(|e| e.to_string())
}

fn config(cli: &Cli) -> Result<RunConfig, String> {
    if cli.height_bound == 0 || cli.height_bound > DEFAULT_HEIGHT_BOUND {
        return Err(format!("height bound must be in 1..={DEFAULT_HEIGHT_BOUND}"));
    }
    Ok(RunConfig { datum: load_datum(&cli.cartan)?, window: parse_window(&cli.window)?, height_bound: cli.height_bound, seed: cli.seed })
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("klr: {msg}");
    ExitCode::from(2)
}

fn weight_from_labels(datum: &CartanDatum, s: &str) -> Result<RootVector, String> {
    let labels: Vec<&str> = s.split(',').map(str::trim).collect();
    let nu = datum.parse_sequence(&labels).map_err(|e| e.to_string())?;
    Ok(datum.weight_of(&nu))
}

fn normal_form(cli: &Cli, cfg: &RunConfig, expr: &str, weight: Option<&str>) -> ExitCode {
    let ctx = KlrContext::with_height_bound(cfg.datum.clone(), cfg.height_bound);
    let fallback = match weight.map(|w| weight_from_labels(ctx.datum(), w)).transpose() {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let result = parse::parse(expr)
        .map_err(parse::EvalError::Parse)
        .and_then(|e| parse::weight_of(&ctx, &e, fallback).map(|b| (e, b)))
        .and_then(|(e, b)| parse::evaluate(&ctx, &e, &b));
    match result {
        Ok(u) => {
            if cli.table {
                println!("{}", ctx.show_grouped(&u));
            } else {
                let out = json!({
                    "input": expr,
                    "beta": ctx.datum().show_root(u.beta()),
                    "normal_form": ctx.show_grouped(&u),
                    "terms": ctx.to_json(&u),
                });
                println!("{}", serde_json::to_string_pretty(&out).expect("serialisable"));
            }
            ExitCode::SUCCESS
        }
        Err(e) => usage_error(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => return usage_error(e),
    };
    match &cli.command {
        Command::Nf { expr, weight } => normal_form(&cli, &cfg, expr, weight.as_deref()),
        Command::Suite { name } => match run_suite(name, &cfg) {
            Ok(report) => {
                if cli.table {
                    print!("{}", report.to_table());
                } else {
                    println!("{}", serde_json::to_string_pretty(&report.to_json(&cfg)).expect("serialisable"));
                }
                if report.pass() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => usage_error(e),
        },
    }
}
