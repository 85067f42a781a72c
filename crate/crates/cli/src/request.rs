use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{CliError, ErrorCode, Field};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Output {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Caractl,
    Additivity,
    Sigmaprime,
    OracleEquivalence,
    MonomialAdditivity,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// The quotient ring A/I as a module over A.
    Ring {
        ring: String,
        /// Generators of I, e.g. "x^2, x*y".
        #[arg(long)]
        ideal: Option<String>,
    },
    /// A direct sum of cyclic modules, e.g. "(x^2) (+) (6, y)".
    Module { ring: String, module: String },
    /// A finitely generated abelian group.
    Zmodule {
        /// Rows of the relation matrix; each column is one relation.
        #[arg(
            long,
            conflicts_with = "presentation",
            required_unless_present = "presentation"
        )]
        matrix: Option<String>,
        /// {"generators": k, "relations": [[..], ..]}
        #[arg(long)]
        presentation: Option<String>,
    },
    /// A^r ⊕ T over a local principal ideal domain with infinite residue field.
    Localpid {
        #[arg(long, default_value_t = 0)]
        free: u64,
        /// Multiplicities of A/I^i as "i:n_i, ..".
        #[arg(long, default_value = "")]
        torsion: String,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// One line of work: a subcommand and its output format.
#[derive(Clone, Debug, PartialEq, Eq, Parser)]
#[command(
    name = "lenkrull",
    no_binary_name = true,
    disable_help_subcommand = true
)]
pub struct Request {
    #[arg(long, value_enum, default_value_t = Output::Text, global = true)]
    pub output: Output,
    #[command(subcommand)]
    pub command: Command,
}

impl Request {
    /// Parses one batch line such as `ring "Z[x]" --ideal "x^2"`.
    pub fn from_line(line: &str) -> Result<Request, CliError> {
        let words = shlex::split(line)
            .ok_or_else(|| CliError::syntax(Field::Request, 0, line.len(), "unbalanced quotes"))?;
        Request::from_words(&words)
    }

    pub fn from_words<S: AsRef<str>>(words: &[S]) -> Result<Request, CliError> {
        Request::try_parse_from(words.iter().map(AsRef::as_ref)).map_err(|e| {
            let text = e.to_string();
            let first = text
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ");
            CliError::new(ErrorCode::Syntax, first)
        })
    }

    pub fn to_words(&self) -> Vec<String> {
        let mut w: Vec<String> = Vec::new();
        let mut push = |s: &str| w.push(s.to_string());
        match &self.command {
            Command::Ring { ring, ideal } => {
                push("ring");
                push(ring);
                if let Some(i) = ideal {
                    push("--ideal");
                    push(i);
                }
            }
            Command::Module { ring, module } => {
                push("module");
                push(ring);
                push(module);
            }
            Command::Zmodule {
                matrix,
                presentation,
            } => {
                push("zmodule");
                if let Some(m) = matrix {
                    push("--matrix");
                    push(m);
                }
                if let Some(p) = presentation {
                    push("--presentation");
                    push(p);
                }
            }
            Command::Localpid { free, torsion } => {
                push("localpid");
                push("--free");
                push(&free.to_string());
                push("--torsion");
                push(torsion);
            }
            Command::Verify {
                suite,
                trials,
                seed,
            } => {
                push("verify");
                push("--suite");
                push(
                    suite
                        .to_possible_value()
                        .expect("no skipped variants")
                        .get_name(),
                );
                push("--trials");
                push(&trials.to_string());
                push("--seed");
                push(&seed.to_string());
            }
        }
        push("--output");
        push(match self.output {
            Output::Text => "text",
            Output::Json => "json",
        });
        w
    }

    pub fn to_line(&self) -> String {
        shlex::try_join(self.to_words().iter().map(String::as_str))
            .expect("arguments contain no NUL")
    }

    /// Raw text of the argument an error span points into.
    pub fn field_text(&self, field: Field) -> Option<&str> {
        match (&self.command, field) {
            (Command::Ring { ring, .. } | Command::Module { ring, .. }, Field::Ring) => Some(ring),
            (Command::Ring { ideal, .. }, Field::Ideal) => ideal.as_deref(),
            (Command::Module { module, .. }, Field::Module) => Some(module),
            (Command::Zmodule { matrix, .. }, Field::Matrix) => matrix.as_deref(),
            (Command::Zmodule { presentation, .. }, Field::Presentation) => presentation.as_deref(),
            (Command::Localpid { torsion, .. }, Field::Torsion) => Some(torsion),
            _ => None,
        }
    }
}
