//! Command-line front end for `lenkrull-core`: text grammars for rings and modules, JSON and
//! text reports, and a batch runner.

pub mod error;
pub mod parse;
pub mod report;
pub mod request;
pub mod run;

use std::path::PathBuf;

use clap::Parser;

pub use error::{CliError, ErrorCode, Field, Span};
pub use request::{Command, Output, Request, Suite};
pub use run::{render, run, run_batch, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};

#[derive(Debug, Parser)]
#[command(
    name = "lenkrull",
    version,
    about = "Ordinal length and Cantor-Bendixson rank of modules",
    args_conflicts_with_subcommands = true
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    /// Run one request per line of FILE; `#` starts a comment line.
    #[arg(long, value_name = "FILE")]
    pub batch: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// Runs a full invocation and returns what to print on stdout and stderr, and the exit code.
pub fn main_with(cli: Cli, factor_bound: Option<&str>) -> (String, String, i32) {
    let bound = match run::factor_bound_from_env(factor_bound) {
        Ok(b) => b,
        Err(e) => {
            return (
                String::new(),
                run::render_error(&e, None, cli.output),
                EXIT_INPUT,
            )
        }
    };
    if let Some(path) = &cli.batch {
        return match std::fs::read_to_string(path) {
            Ok(contents) => {
                let (lines, code) = run_batch(&contents, cli.output, bound);
                (lines.concat(), String::new(), code)
            }
            Err(e) => {
                let e = CliError::new(ErrorCode::Io, format!("{}: {e}", path.display()));
                (
                    String::new(),
                    run::render_error(&e, None, cli.output),
                    EXIT_INPUT,
                )
            }
        };
    }
    let Some(command) = cli.command else {
        let e = CliError::new(ErrorCode::Syntax, "expected a subcommand or --batch FILE");
        return (
            String::new(),
            run::render_error(&e, None, cli.output),
            EXIT_INPUT,
        );
    };
    let req = Request {
        output: cli.output,
        command,
    };
    let (text, code) = render(&req, bound);
    if code == EXIT_INPUT {
        (String::new(), text, code)
    } else {
        (text, String::new(), code)
    }
}
