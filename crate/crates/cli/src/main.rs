mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use commands::Failure;

const THREADS_VAR: &str = "ANGULATOR_THREADS";

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads = value
        .trim()
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("{THREADS_VAR} must be a positive integer, got `{value}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn emit(text: &str) {
    let mut stdout = std::io::stdout().lock();
    // A closed pipe is not worth a diagnostic.
    let _ = stdout
        .write_all(text.as_bytes())
        .and_then(|()| stdout.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("angulator: {}", first.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    if let Err(message) = configure_threads() {
        eprintln!("angulator: {message}");
        return ExitCode::from(1);
    }
    match commands::run(cli.command) {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::CheckFailed(report) => emit(report),
                Failure::Error(e) => eprintln!("angulator: {e}"),
                Failure::Usage(message) => eprintln!("angulator: {message}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
