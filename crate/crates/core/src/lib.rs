//! An explanation engine for food-recommendation knowledge graphs.
//!
//! Data flows through four stages: Turtle documents are parsed into a
//! [`rdf::Graph`], saturated under [`inference::feo_ruleset`], queried with
//! a SPARQL subset, and packaged into contextual, contrastive or
//! counterfactual [`explain::Explanation`]s.

pub mod cli;
pub mod explain;
pub mod inference;
pub mod kb;
pub mod query;
pub mod rdf;
pub mod syntax;
pub mod turtle;

pub use kb::vocab;
