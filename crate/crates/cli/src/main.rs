use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use vertexlab_cli::args::Cli;
use vertexlab_cli::run::{run, RunError};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help and version exit 0, real parse errors exit 2
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if cli.common.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.common.jobs).build_global() {
            eprintln!("cannot set up {} worker threads: {e}", cli.common.jobs);
            return ExitCode::from(2);
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(match e {
                RunError::Usage(_) => 2,
                RunError::Compute(_) => 1,
            });
        }
    };
    let written = match &cli.common.out {
        Some(p) => std::fs::write(p, &outcome.text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(outcome.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("cannot write output: {e}");
        return ExitCode::from(1);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        if cli.common.out.is_some() {
            eprint!("{}", outcome.text);
        }
        ExitCode::from(1)
    }
}
