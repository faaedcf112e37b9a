use std::process::ExitCode;

use clap::Parser;
use knotmf::cli::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let o = run(&cli);
    print!("{}", o.stdout);
    if !o.stderr.is_empty() {
        eprintln!("{}", o.stderr);
    }
    ExitCode::from(o.code as u8)
}
