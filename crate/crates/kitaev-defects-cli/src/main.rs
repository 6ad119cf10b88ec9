use std::io::{ErrorKind, Write};
use std::process::ExitCode;

use clap::Parser;

use kitaev_defects_cli::{is_input_error, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(if is_input_error(&e) { 2 } else { 1 });
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &output.text),
        None => std::io::stdout().write_all(output.text.as_bytes()),
    };
    if let Err(e) = written.or_else(|e| {
        if e.kind() == ErrorKind::BrokenPipe {
            Ok(())
        } else {
            Err(e)
        }
    }) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(output.status)
}
