//! Text formats: a line-oriented DSL, a JSON mirror and Graphviz DOT export.
//!
//! The DSL has one `name = expr` line per automaton, with `!` binding
//! tighter than `&`, which binds tighter than `|`:
//!
//! ```text
//! # Example network
//! a = !b | c
//! b = a
//! c = !b
//! ```
//!
//! Schedules are whitespace-separated blocks such as `{b,c} {a} {a,b}`.

mod dot;
mod dsl;
mod json;

use std::fmt;

use thiserror::Error;

pub use dot::{emit_dot, emit_dynamics_dot, emit_update_dot};
pub use dsl::{
    emit_expression, emit_network, emit_schedule, emit_transient, parse_expression, parse_network,
    parse_schedule,
};
pub use json::{emit_json, parse_json, NetworkDocument};

/// Parses a network file, either DSL or JSON (recognized by a leading `{`).
pub fn parse_document(text: &str) -> crate::Result<NetworkDocument> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        Ok(NetworkDocument {
            network: parse_network(text)?,
            schedule: None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    Expected {
        expected: &'static str,
        found: String,
    },
    UndeclaredVariable(String),
    DuplicateAutomaton(String),
    UnknownAutomaton(String),
    EmptyBlock,
    EmptySchedule,
    Json(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::Expected { expected, found } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UndeclaredVariable(v) => write!(f, "undeclared variable `{v}`"),
            ParseErrorKind::DuplicateAutomaton(v) => write!(f, "duplicate automaton `{v}`"),
            ParseErrorKind::UnknownAutomaton(v) => write!(f, "unknown automaton `{v}`"),
            ParseErrorKind::EmptyBlock => f.write_str("empty block"),
            ParseErrorKind::EmptySchedule => f.write_str("empty schedule"),
            ParseErrorKind::Json(msg) => write!(f, "invalid JSON document: {msg}"),
        }
    }
}

fn quote_dot(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}
