use std::io;
use std::process::ExitCode;

use clap::Parser;
use qhecke_cli::app::{run, Cli, EXIT_FAIL, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(&cli, &mut io::stdout().lock(), &mut io::stderr().lock()) {
        Ok(code) => code,
        // reader went away, e.g. piped into `head`
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    };
    ExitCode::from(code as u8)
}
