//! `verify <suite>`: runs a verification suite and prints its reports.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 usage error,
//! 3 parameter error.

use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use kahler_contact::report::{emit, OutputFormat};
use kahler_contact::suites::{all_pass, run_suite, SuiteParams};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "verify", about = "Run a named verification suite and emit check reports")]
struct Cli {
    /// curvature-selftest, einstein, theorem1, theorem2, singular-sweep,
    /// jacobi-oracle, sphere, c2-tube, focal or all
    suite: String,
    /// Complex dimension
    #[arg(long)]
    n: Option<usize>,
    /// Tube or sphere radius
    #[arg(long)]
    r: Option<f64>,
    /// Case of the noncompact classification (1, 2 or 3)
    #[arg(long = "case")]
    case: Option<u8>,
    /// Finite-difference step
    #[arg(long)]
    h: Option<f64>,
    /// Grid resolution (meaning depends on the suite)
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Override every report's tolerance
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let params = SuiteParams {
        n: cli.n,
        r: cli.r,
        case: cli.case,
        h: cli.h,
        grid: cli.grid,
        seed: cli.seed,
        tol: cli.tol,
    };
    let format = match cli.format {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    };
    match run_suite(&cli.suite, &params) {
        Ok(reports) => {
            print!("{}", emit(&reports, format));
            if all_pass(&reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("verify: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
