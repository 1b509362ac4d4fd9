//! A SPARQL subset: `PREFIX`, `SELECT [DISTINCT]`, triple patterns, `iri+`
//! paths, `FILTER` equality/disjunction, `FILTER NOT EXISTS`, `OPTIONAL`
//! and `BIND`.

mod ast;
mod eval;
mod parser;
mod results;

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::rdf::Graph;
use crate::syntax::ParseDiagnostic;

pub use ast::{Element, Expr, GroupPattern, PathPattern, QueryAst};
pub use eval::{evaluate, EvalError};
pub use parser::parse_query;
pub use results::{render_term, BindingTable};

#[derive(Debug, Error)]
pub enum QueryError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {diagnostic}", path.display())]
    Parse {
        path: PathBuf,
        diagnostic: ParseDiagnostic,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Reads, parses and evaluates a query file.
pub fn evaluate_file(graph: &Graph, path: impl AsRef<Path>) -> Result<BindingTable, QueryError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| QueryError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let query = parse_query(&text).map_err(|diagnostic| QueryError::Parse {
        path: path.to_path_buf(),
        diagnostic,
    })?;
    Ok(evaluate(graph, &query)?)
}
