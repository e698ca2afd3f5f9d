mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::{Failure, Outcome, PolyRequest};

const SIEVE_ENV: &str = "BELLKIT_SIEVE_BOUND";

fn configure_sieve() -> Result<(), Failure> {
    let Ok(text) = std::env::var(SIEVE_ENV) else {
        return Ok(());
    };
    let bound: u64 = text
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{SIEVE_ENV}={text:?} is not a non-negative integer")))?;
    bellkit::arithfn::configure_sieve(bound);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    configure_sieve()?;
    match cli.command {
        Command::Exponents { driver, limit, output } => {
            commands::exponents(&driver, limit, output.format)
        }
        Command::Coeffs {
            driver,
            limit,
            path,
            check_all_paths,
            output,
        } => commands::coeffs(&driver, limit, &path, check_all_paths, output.format),
        Command::Verify {
            kind,
            preset,
            driver,
            p,
            limit,
            output,
        } => commands::verify(kind, preset, &driver, p, limit, output.format),
        Command::Poly {
            family,
            n,
            alpha,
            a,
            table: _,
            upto,
            output,
        } => commands::poly(
            &PolyRequest {
                family: &family,
                n,
                alpha: alpha.as_deref(),
                a: a.as_deref(),
                upto,
            },
            output.format,
        ),
        Command::Recover { input, output } => commands::recover(&input, output.format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            ExitCode::from(code)
        }
        Err(failure) => {
            eprintln!("bellkit: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
