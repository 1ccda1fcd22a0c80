//! `mqlandau`: spectra of a neutral particle with a magnetic quadrupole
//! moment in a uniform effective magnetic field, under hard-wall,
//! Coulomb-type, linear, and mixed confinement — plus a brute-force
//! finite-difference verifier for every analytic number it prints.
//!
//! Exit codes: 0 success, 1 validation failure, 2 numerical
//! non-convergence.

mod checks;
mod commands;
mod config;
mod report;

use clap::Parser;

use config::{Cli, CliError, Command, VerifyArgs};
use report::{emit, to_json, ConfigEcho, Report};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not failures.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Spectrum(args) => commands::cmd_spectrum(args),
        Command::Frequency(args) => commands::cmd_frequency(args),
        Command::Wavefunction(args) => commands::cmd_wavefunction(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let checks = checks::run_all()?;
    let failed = checks.iter().filter(|c| !c.pass).count();

    if args.json {
        let mut config = ConfigEcho::new("verify");
        config.format = "json".to_string();
        let report = Report {
            config,
            results: Vec::new(),
            checks,
        };
        emit(args.output.as_deref(), &to_json(&report))?;
    } else {
        let mut out = String::new();
        for check in &checks {
            out.push_str(&format!(
                "{} {} (measured {:e}, tolerance {:e})\n",
                if check.pass { "PASS" } else { "FAIL" },
                check.name,
                check.measured,
                check.tolerance
            ));
        }
        out.push_str(&format!(
            "{} checks, {} failed\n",
            checks.len(),
            failed
        ));
        emit(args.output.as_deref(), &out)?;
    }

    if failed > 0 {
        Err(CliError::Validation(format!(
            "{failed} verification checks failed"
        )))
    } else {
        Ok(())
    }
}
