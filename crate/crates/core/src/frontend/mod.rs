//! Problem input (TPTP CNF subset and a line-based native format),
//! printers, and the proof and model file formats.

mod io;
mod lexer;
mod parse;
mod problem;
mod setup;

use std::fmt;

use thiserror::Error;

pub use io::{parse_clause, parse_literal, parse_model, parse_proof, parse_subst, render_model};
pub use problem::{
    parse_native, parse_problem, parse_tptp, print_native, print_tptp, Format, InputClause, ProblemFile,
};
pub use setup::{build_bound, default_beta_weight, parse_precedence, BetaSpec, SetupError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Feature {
    Equality,
    Fof,
    Include,
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Feature::Equality => "equality",
            Feature::Fof => "fof",
            Feature::Include => "include",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unsupported feature: {feature}")]
    Unsupported {
        line: usize,
        column: usize,
        feature: Feature,
    },
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Unsupported { line, .. } => *line,
        }
    }
}
