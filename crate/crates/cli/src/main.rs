use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lenkrull::{main_with, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let bound = std::env::var("LENKRULL_FACTOR_BOUND").ok();
    let (out, err, code) = main_with(cli, bound.as_deref());
    print!("{out}");
    eprint!("{err}");
    std::io::stdout().flush().ok();
    ExitCode::from(code as u8)
}
