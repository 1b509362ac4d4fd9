//! Built-in vocabulary, schema ontology, demo knowledge base and the three
//! canonical explanation queries.

pub mod vocab;

use crate::rdf::{merge, FrozenGraph, Graph};
use crate::turtle::parse_turtle;

pub const SCHEMA_TTL: &str = include_str!("../../assets/schema.ttl");
pub const DEMO_TTL: &str = include_str!("../../assets/demo.ttl");

pub const CONTEXTUAL_RQ: &str = include_str!("../../assets/contextual.rq");
pub const CONTRASTIVE_RQ: &str = include_str!("../../assets/contrastive.rq");
pub const COUNTERFACTUAL_RQ: &str = include_str!("../../assets/counterfactual.rq");

pub const EXPECTED_CONTEXTUAL_TSV: &str = include_str!("../../assets/expected/contextual.tsv");
pub const EXPECTED_CONTRASTIVE_TSV: &str = include_str!("../../assets/expected/contrastive.tsv");
pub const EXPECTED_COUNTERFACTUAL_TSV: &str =
    include_str!("../../assets/expected/counterfactual.tsv");

/// A canonical query with its expected result table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalQuery {
    pub name: &'static str,
    pub text: &'static str,
    pub expected_tsv: &'static str,
}

pub const CANONICAL_QUERIES: [CanonicalQuery; 3] = [
    CanonicalQuery {
        name: "contextual",
        text: CONTEXTUAL_RQ,
        expected_tsv: EXPECTED_CONTEXTUAL_TSV,
    },
    CanonicalQuery {
        name: "contrastive",
        text: CONTRASTIVE_RQ,
        expected_tsv: EXPECTED_CONTRASTIVE_TSV,
    },
    CanonicalQuery {
        name: "counterfactual",
        text: COUNTERFACTUAL_RQ,
        expected_tsv: EXPECTED_COUNTERFACTUAL_TSV,
    },
];

pub fn schema_graph() -> FrozenGraph {
    parse_turtle(SCHEMA_TTL, None)
        .expect("bundled schema.ttl parses")
        .freeze()
}

pub fn demo_graph() -> FrozenGraph {
    parse_turtle(DEMO_TTL, None)
        .expect("bundled demo.ttl parses")
        .freeze()
}

/// Schema and demo data merged, not yet saturated.
pub fn demo_kb() -> Graph {
    merge(&schema_graph(), &demo_graph())
}
