//! Lexing shared by the Turtle and query parsers.

mod lexer;

use std::fmt;

use thiserror::Error;

pub(crate) use lexer::{tokenize, Tok, Token};

/// A parse failure located at the first offending character (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseDiagnostic {
    pub fn new(line: usize, column: usize, message: impl fmt::Display) -> Self {
        ParseDiagnostic {
            line,
            column,
            message: message.to_string(),
        }
    }

    pub(crate) fn at(token: &Token, message: impl fmt::Display) -> Self {
        Self::new(token.line, token.column, message)
    }
}

/// Resolves `iri` against `base` when it has no scheme.
pub(crate) fn resolve_iri(iri: &str, base: Option<&str>) -> Result<String, String> {
    if has_scheme(iri) {
        return Ok(iri.to_string());
    }
    let Some(base) = base else {
        return Err(format!("relative IRI <{iri}> without a base"));
    };
    if iri.is_empty() {
        return Ok(base.to_string());
    }
    if iri.starts_with('#') {
        let stem = base.split('#').next().unwrap_or(base);
        return Ok(format!("{stem}{iri}"));
    }
    match base.rfind('/') {
        Some(i) if !iri.starts_with('/') => Ok(format!("{}{}", &base[..=i], iri)),
        _ => Ok(format!("{base}{iri}")),
    }
}

fn has_scheme(iri: &str) -> bool {
    let Some(colon) = iri.find(':') else {
        return false;
    };
    let scheme = &iri[..colon];
    let mut chars = scheme.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}
