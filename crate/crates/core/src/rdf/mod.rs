//! Terms, triples and the indexed in-memory graph store.

mod graph;
mod pattern;
mod term;

pub use graph::{merge, FrozenGraph, Graph};
pub use pattern::{Bindings, PatternTerm, TriplePattern, Variable};
pub use term::{
    validate_iri, Datatype, Literal, Term, TermError, TermKind, Triple, XSD_BOOLEAN, XSD_INTEGER,
    XSD_STRING,
};
