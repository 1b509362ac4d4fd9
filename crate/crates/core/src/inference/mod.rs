//! Forward-chaining saturation under the food-explanation rule set.

mod feo_rules;
mod rules;
mod saturate;

use thiserror::Error;

use crate::kb::vocab::{feo, rdf};
use crate::rdf::{Graph, Term};

pub use feo_rules::feo_ruleset;
pub use rules::{Guard, Rule, RuleError, RuleSet};
pub use saturate::{
    saturate, saturate_with, Derivation, Saturation, SaturationOptions, Trace, DEFAULT_TRIPLE_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InferenceError {
    #[error("derived-triple cap of {cap} exceeded")]
    TripleCapExceeded { cap: usize },
}

/// Whether `instance` belongs to the food/health domain.
///
/// Flags come from the instance's own `feo:isInternal` values and those of
/// its classes. Any `true` wins; otherwise any `false` makes it external;
/// with no flag at all it counts as internal.
pub fn is_internal(graph: &Graph, instance: &Term) -> bool {
    let flag = Term::iri(feo::IS_INTERNAL);
    let mut holders = vec![instance.clone()];
    holders.extend(graph.objects(instance, &Term::iri(rdf::TYPE)));
    let flags: Vec<bool> = holders
        .iter()
        .flat_map(|h| graph.objects(h, &flag))
        .filter_map(|t| t.as_literal().and_then(|l| l.as_bool()))
        .collect();
    flags.contains(&true) || !flags.contains(&false)
}
