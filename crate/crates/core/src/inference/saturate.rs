use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::rdf::{Bindings, FrozenGraph, Graph, Triple};

use super::rules::{Rule, RuleSet};
use super::InferenceError;

pub const DEFAULT_TRIPLE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaturationOptions {
    /// Maximum number of derived triples before saturation gives up.
    pub triple_cap: usize,
}

impl Default for SaturationOptions {
    fn default() -> Self {
        SaturationOptions {
            triple_cap: DEFAULT_TRIPLE_CAP,
        }
    }
}

/// The first derivation of an inferred triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: String,
    pub triple: Triple,
    /// Matched positive-body triples, in body order.
    pub premises: Vec<Triple>,
}

/// Derivations in the order they were made.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    steps: Vec<Derivation>,
    by_triple: HashMap<Triple, usize>,
}

impl Trace {
    pub fn steps(&self) -> &[Derivation] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn derivation_of(&self, triple: &Triple) -> Option<&Derivation> {
        self.by_triple.get(triple).map(|&i| &self.steps[i])
    }

    /// `triple` plus every triple its derivation tree rests on, in canonical
    /// order. Asserted triples are leaves.
    pub fn support(&self, triple: &Triple) -> BTreeSet<Triple> {
        let mut out = BTreeSet::new();
        let mut stack = vec![triple.clone()];
        while let Some(t) = stack.pop() {
            if !out.insert(t.clone()) {
                continue;
            }
            if let Some(d) = self.derivation_of(&t) {
                stack.extend(d.premises.iter().cloned());
            }
        }
        out
    }

    /// `<rule-id> TAB <n-triples line>` per derived triple.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&step.rule);
            out.push('\t');
            out.push_str(&step.triple.to_string());
            out.push('\n');
        }
        out
    }

    fn record(&mut self, derivation: Derivation) {
        self.by_triple
            .insert(derivation.triple.clone(), self.steps.len());
        self.steps.push(derivation);
    }
}

/// A saturated graph together with the derivations that produced it.
#[derive(Debug, Clone)]
pub struct Saturation {
    pub graph: FrozenGraph,
    pub trace: Trace,
}

impl Saturation {
    pub fn is_asserted(&self, triple: &Triple) -> bool {
        self.graph.contains(triple) && self.trace.derivation_of(triple).is_none()
    }
}

pub fn saturate(graph: &Graph, rules: &RuleSet) -> Result<FrozenGraph, InferenceError> {
    saturate_with(graph, rules, SaturationOptions::default()).map(|s| s.graph)
}

/// Least fixpoint, stratum by stratum, with semi-naive rounds inside each
/// stratum. Rules fire in declaration order and their new heads are inserted
/// in canonical order, so derivation traces are reproducible.
pub fn saturate_with(
    graph: &Graph,
    rules: &RuleSet,
    options: SaturationOptions,
) -> Result<Saturation, InferenceError> {
    let mut current = graph.clone();
    let mut trace = Trace::default();
    for stratum in 0..rules.strata_count() {
        let stratum_rules: Vec<&Rule> = rules.stratum(stratum).collect();
        let mut delta: Option<Graph> = None;
        loop {
            let mut round: Vec<Derivation> = Vec::new();
            for rule in &stratum_rules {
                let found = fire(rule, &current, delta.as_ref());
                round.extend(found.into_iter().map(|(triple, premises)| Derivation {
                    rule: rule.id().to_string(),
                    triple,
                    premises,
                }));
            }
            let mut next_delta = Graph::new();
            for derivation in round {
                if current.insert(derivation.triple.clone()) {
                    if trace.len() >= options.triple_cap {
                        return Err(InferenceError::TripleCapExceeded {
                            cap: options.triple_cap,
                        });
                    }
                    next_delta.insert(derivation.triple.clone());
                    trace.record(derivation);
                }
            }
            if next_delta.is_empty() {
                break;
            }
            delta = Some(next_delta);
        }
    }
    Ok(Saturation {
        graph: current.freeze(),
        trace,
    })
}

/// New head triples of `rule` with the premises of their first match.
/// With a delta, only matches using at least one delta triple are produced.
fn fire(rule: &Rule, graph: &Graph, delta: Option<&Graph>) -> BTreeMap<Triple, Vec<Triple>> {
    let mut out = BTreeMap::new();
    let body = rule.positive();
    let seeds: Vec<Option<usize>> = match delta {
        None => vec![None],
        Some(_) => (0..body.len()).map(Some).collect(),
    };
    for seed in seeds {
        for (bindings, premises) in join(rule, graph, delta, seed) {
            if !rule.admits(&bindings) {
                continue;
            }
            let blocked = rule
                .negative()
                .iter()
                .any(|n| !n.solutions(graph, &bindings).is_empty());
            if blocked {
                continue;
            }
            let Some(head) = rule.head().instantiate(&bindings) else {
                continue;
            };
            if !graph.contains(&head) {
                out.entry(head).or_insert(premises);
            }
        }
    }
    out
}

fn join(
    rule: &Rule,
    graph: &Graph,
    delta: Option<&Graph>,
    seed: Option<usize>,
) -> Vec<(Bindings, Vec<Triple>)> {
    let body = rule.positive();
    let order: Vec<usize> = match seed {
        Some(i) => std::iter::once(i)
            .chain((0..body.len()).filter(|&j| j != i))
            .collect(),
        None => (0..body.len()).collect(),
    };
    let mut partial: Vec<(Bindings, Vec<Option<Triple>>)> =
        vec![(Bindings::new(), vec![None; body.len()])];
    for idx in order {
        let source = match (seed, delta) {
            (Some(i), Some(d)) if i == idx => d,
            _ => graph,
        };
        let mut next = Vec::new();
        for (bindings, premises) in &partial {
            for (extended, triple) in body[idx].solutions(source, bindings) {
                if !rule.admits(&extended) {
                    continue;
                }
                let mut p = premises.clone();
                p[idx] = Some(triple);
                next.push((extended, p));
            }
        }
        partial = next;
        if partial.is_empty() {
            break;
        }
    }
    partial
        .into_iter()
        .map(|(b, p)| {
            (
                b,
                p.into_iter()
                    .map(|t| t.expect("every body pattern matched"))
                    .collect(),
            )
        })
        .collect()
}
