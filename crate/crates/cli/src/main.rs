use std::process::ExitCode;

use clap::Parser;
use spectra_lab::args::Cli;

fn main() -> ExitCode {
    match spectra_lab::execute(Cli::parse()) {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(advice) = e.advice() {
                eprintln!("hint: {advice}");
            }
            ExitCode::FAILURE
        }
    }
}
