use std::fmt;

use lenkrull_core::length::LengthError;
use lenkrull_core::oracles::OracleError;
use lenkrull_core::zmodule::ZModuleError;
use serde::Serialize;

/// Which argument an error points into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Ring,
    Ideal,
    Module,
    Matrix,
    Presentation,
    Torsion,
    Request,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Field::Ring => "ring",
            Field::Ideal => "ideal",
            Field::Module => "module",
            Field::Matrix => "matrix",
            Field::Presentation => "presentation",
            Field::Torsion => "torsion",
            Field::Request => "request",
        };
        f.write_str(name)
    }
}

/// Byte range `[start, end)` inside one argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Span {
    pub field: Field,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    Syntax,
    NotPrime,
    DuplicateVariable,
    UnknownVariable,
    NotSquarefree,
    IntegerOverField,
    Unsupported,
    FactorBound,
    TooLarge,
    Io,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{code:?} error{}: {message}", span.map(|s| format!(" in {} at {}..{}", s.field, s.start, s.end)).unwrap_or_default())]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
    pub span: Option<Span>,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
            span: None,
        }
    }

    pub fn at(mut self, field: Field, start: usize, end: usize) -> Self {
        self.span = Some(Span { field, start, end });
        self
    }

    pub fn syntax(field: Field, start: usize, end: usize, message: impl Into<String>) -> Self {
        Self::new(ErrorCode::Syntax, message).at(field, start, end)
    }
}

impl From<LengthError> for CliError {
    fn from(e: LengthError) -> Self {
        let code = match &e {
            LengthError::NotPrime(_) => ErrorCode::NotPrime,
            LengthError::DuplicateVariable(_) => ErrorCode::DuplicateVariable,
            LengthError::NotSquarefree { .. } => ErrorCode::NotSquarefree,
            LengthError::IntegerOverField { .. } => ErrorCode::IntegerOverField,
            LengthError::Integer(ZModuleError::FactorBoundExceeded { .. }) => {
                ErrorCode::FactorBound
            }
            _ => ErrorCode::Unsupported,
        };
        CliError::new(code, e.to_string())
    }
}

impl From<ZModuleError> for CliError {
    fn from(e: ZModuleError) -> Self {
        LengthError::from(e).into()
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::new(ErrorCode::TooLarge, e.to_string())
    }
}
