use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use mindenom::checks::{run_suite, Budgets, Suite};
use mindenom::{SumReport, Variant};
use mindenom_cli::{render_report, render_s_only, sweep, write_csv, Grid};

const EXIT_FAILED: u8 = 1;
const EXIT_BUDGET: u8 = 3;
const EXIT_OUTPUT: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "mindenom", version, about = "Minimal denominators and the sum S(N)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact report for one N.
    Compute {
        #[arg(long = "n", value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value = "half-open-right", value_parser = parse_variant)]
        variant: Variant,
        /// Only compute S for the chosen variant.
        #[arg(long)]
        s_only: bool,
        /// Largest N for the exact R/T fields.
        #[arg(long, default_value_t = 2000)]
        max_exact: u64,
    },
    /// CSV of S(N)/N^{3/2} and the integral over a grid of N.
    #[command(group(ArgGroup::new("grid").required(true).args(["step", "factor"])))]
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        step: Option<u64>,
        #[arg(long)]
        factor: Option<f64>,
        #[arg(long, default_value = "half-open-right", value_parser = parse_variant)]
        variant: Variant,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: SuiteArg,
        /// Size cap for the selected suites.
        #[arg(long)]
        max_n: Option<u64>,
    },
}

#[derive(Debug, Clone)]
enum SuiteArg {
    All,
    One(Suite),
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: mindenom::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<SuiteArg, String> {
    if s == "all" {
        Ok(SuiteArg::All)
    } else {
        s.parse().map(SuiteArg::One).map_err(|e: mindenom::Error| e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute { n, variant, s_only, max_exact } => {
            if s_only {
                return match render_s_only(n, variant) {
                    Ok(text) => {
                        print!("{text}");
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(e),
                };
            }
            if n > max_exact {
                eprintln!("N = {n} exceeds the exact budget {max_exact}; use --s-only or raise --max-exact");
                return ExitCode::from(EXIT_BUDGET);
            }
            match SumReport::compute(n) {
                Ok(report) => {
                    print!("{}", render_report(&report, variant));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Sweep { from, to, step, factor, variant, out } => {
            if from > to {
                eprintln!("--from must not exceed --to");
                return ExitCode::from(2);
            }
            let grid = match (step, factor) {
                (Some(step), _) => Grid::Linear(step),
                (None, Some(f)) if f > 1.0 => Grid::Geometric(f),
                _ => {
                    eprintln!("--factor must be greater than 1");
                    return ExitCode::from(2);
                }
            };
            let rows = match sweep(&grid.points(from, to), variant) {
                Ok(rows) => rows,
                Err(e) => return fail(e),
            };
            let written = match &out {
                Some(path) => File::create(path).and_then(|f| write_csv(&rows, BufWriter::new(f))),
                None => write_csv(&rows, io::stdout().lock()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("cannot write output: {e}");
                    ExitCode::from(EXIT_OUTPUT)
                }
            }
        }
        Command::Verify { suite, max_n } => {
            let suites = match suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                SuiteArg::One(s) => vec![s],
            };
            let mut all_passed = true;
            for suite in suites {
                let budgets = match max_n {
                    Some(m) => Budgets::default().with_max_n(suite, m),
                    None => Budgets::default(),
                };
                let report = run_suite(suite, &budgets);
                let status = if report.passed() { "PASS" } else { "FAIL" };
                println!(
                    "suite {suite}: {status} ({} checks, {} instances, {} failed)",
                    report.checks.len(),
                    report.checked(),
                    report.failed()
                );
                for check in &report.checks {
                    println!("  {check}");
                }
                all_passed &= report.passed();
            }
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
    }
}

fn fail(e: mindenom::Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_FAILED)
}
