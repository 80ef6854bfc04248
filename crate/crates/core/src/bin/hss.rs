use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hss::cli::{render, run_source, Command, Format, Options, RunError};
use hss::hochschild::DEFAULT_BUDGET;

/// Hochschild cohomology, Ext and the coefficient-filtration spectral
/// sequence of a finite DGA.
#[derive(Parser)]
#[command(name = "hss", version)]
struct Args {
    command: Command,
    /// Input file in the `.dga` format.
    file: PathBuf,
    /// Total degrees |n| ≤ N.
    #[arg(long, default_value_t = 8)]
    window: i64,
    /// Pages shown by `ss`.
    #[arg(long)]
    pages: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of bar words.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match execute(&args) {
        Ok(passed) => ExitCode::from(if passed { 0 } else { 1 }),
        Err(e) => {
            eprintln!("hss: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: &Args) -> Result<bool, RunError> {
    let source = std::fs::read_to_string(&args.file).map_err(|e| RunError::Usage(format!("{}: {e}", args.file.display())))?;
    let opts = Options { window: args.window, pages: args.pages, budget: args.budget };
    let report = run_source(args.command, &source, &opts).map_err(|e| match e {
        RunError::Parse(p) => RunError::Usage(format!("{}:{}", args.file.display(), p)),
        other => other,
    })?;
    let out = render(&report, args.format)?;
    match &args.out {
        Some(path) => std::fs::write(path, out).map_err(|e| RunError::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{out}"),
    }
    for c in report.failures() {
        eprintln!("hss: check failed: {}: {}", c.name, c.detail);
    }
    Ok(report.passed)
}
