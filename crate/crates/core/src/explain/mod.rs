//! Contextual, contrastive and counterfactual explanations built from
//! queries over a saturated graph.

mod json;
mod render;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::inference::{is_internal, Saturation};
use crate::kb::vocab::{eo, feo, food, rdf, rdfs};
use crate::query::{evaluate, parse_query, BindingTable, EvalError};
use crate::rdf::{Graph, Term, Triple, Variable};

pub use json::{from_json, to_json};
pub use render::{display_name, render};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExplanationType {
    Contextual,
    Contrastive,
    Counterfactual,
}

impl ExplanationType {
    pub fn as_str(self) -> &'static str {
        match self {
            ExplanationType::Contextual => "contextual",
            ExplanationType::Contrastive => "contrastive",
            ExplanationType::Counterfactual => "counterfactual",
        }
    }
}

impl fmt::Display for ExplanationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExplanationType {
    type Err = ExplainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "contextual" => Ok(ExplanationType::Contextual),
            "contrastive" => Ok(ExplanationType::Contrastive),
            "counterfactual" => Ok(ExplanationType::Counterfactual),
            _ => Err(ExplainError::InvalidQuestion(format!(
                "unknown explanation type '{s}' (expected contextual, contrastive or counterfactual)"
            ))),
        }
    }
}

/// A structured explanation request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Question {
    id: Term,
    kind: ExplanationType,
    primary: Option<Term>,
    secondary: Option<Term>,
    hypothetical: Option<Term>,
}

impl Question {
    /// Checks the parameter combination for `kind`: contextual takes a
    /// primary parameter only, contrastive a primary and a secondary, and
    /// counterfactual a hypothetical with an optional primary.
    pub fn new(
        id: Term,
        kind: ExplanationType,
        primary: Option<Term>,
        secondary: Option<Term>,
        hypothetical: Option<Term>,
    ) -> Result<Self, ExplainError> {
        let invalid = |msg: &str| {
            Err(ExplainError::InvalidQuestion(format!(
                "{kind} question {msg}"
            )))
        };
        match kind {
            ExplanationType::Contextual => {
                if primary.is_none() {
                    return invalid("requires a primary parameter");
                }
                if secondary.is_some() || hypothetical.is_some() {
                    return invalid("takes neither a secondary parameter nor a hypothetical");
                }
            }
            ExplanationType::Contrastive => {
                if primary.is_none() || secondary.is_none() {
                    return invalid("requires a primary and a secondary parameter");
                }
                if hypothetical.is_some() {
                    return invalid("takes no hypothetical");
                }
            }
            ExplanationType::Counterfactual => {
                if hypothetical.is_none() {
                    return invalid("requires a hypothetical");
                }
                if secondary.is_some() {
                    return invalid("takes no secondary parameter");
                }
            }
        }
        for t in [
            Some(&id),
            primary.as_ref(),
            secondary.as_ref(),
            hypothetical.as_ref(),
        ]
        .into_iter()
        .flatten()
        {
            if !t.is_iri() {
                return Err(ExplainError::InvalidQuestion(format!("{t} is not an IRI")));
            }
        }
        Ok(Question {
            id,
            kind,
            primary,
            secondary,
            hypothetical,
        })
    }

    pub fn contextual(id: Term, primary: Term) -> Result<Self, ExplainError> {
        Self::new(id, ExplanationType::Contextual, Some(primary), None, None)
    }

    pub fn contrastive(id: Term, primary: Term, secondary: Term) -> Result<Self, ExplainError> {
        Self::new(
            id,
            ExplanationType::Contrastive,
            Some(primary),
            Some(secondary),
            None,
        )
    }

    pub fn counterfactual(id: Term, hypothetical: Term) -> Result<Self, ExplainError> {
        Self::new(
            id,
            ExplanationType::Counterfactual,
            None,
            None,
            Some(hypothetical),
        )
    }

    pub fn id(&self) -> &Term {
        &self.id
    }

    pub fn kind(&self) -> ExplanationType {
        self.kind
    }

    pub fn primary(&self) -> Option<&Term> {
        self.primary.as_ref()
    }

    pub fn secondary(&self) -> Option<&Term> {
        self.secondary.as_ref()
    }

    pub fn hypothetical(&self) -> Option<&Term> {
        self.hypothetical.as_ref()
    }
}

/// Declared in the order items are sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Context,
    Fact,
    Foil,
    Recommendation,
    Prohibition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplanationItem {
    pub characteristic: Term,
    /// The characteristic's class; for counterfactual items, the property
    /// linking the hypothetical to the food.
    pub class: Term,
    pub polarity: Polarity,
    /// Dishes the characteristic is an ingredient of (counterfactual only).
    pub derived_foods: Vec<Term>,
    /// Triples of the saturated graph justifying the item, in canonical order.
    pub provenance: Vec<Triple>,
}

impl ExplanationItem {
    fn sort_key(&self) -> (Polarity, &Term, &Term) {
        (self.polarity, &self.characteristic, &self.class)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Explanation {
    pub question: Question,
    pub items: Vec<ExplanationItem>,
    pub text: String,
}

impl Explanation {
    /// Sorts the items and fills in the rendered text.
    pub fn new(question: Question, mut items: Vec<ExplanationItem>, graph: &Graph) -> Self {
        items.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let mut e = Explanation {
            question,
            items,
            text: String::new(),
        };
        e.text = render(&e, graph);
        e
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("invalid question: {0}")]
    InvalidQuestion(String),
    #[error("unknown individual {0}")]
    UnknownIndividual(Term),
    #[error("query evaluation failed: {0}")]
    Query(#[from] EvalError),
    #[error("invalid explanation JSON: {0}")]
    Json(String),
}

/// Dispatches on the question type.
pub fn explain(sat: &Saturation, q: &Question) -> Result<Explanation, ExplainError> {
    match q.kind {
        ExplanationType::Contextual => explain_contextual(sat, q),
        ExplanationType::Contrastive => explain_contrastive(sat, q),
        ExplanationType::Counterfactual => explain_counterfactual(sat, q),
    }
}

fn require(
    sat: &Saturation,
    term: Option<&Term>,
    kind: ExplanationType,
) -> Result<Term, ExplainError> {
    let term = term.ok_or_else(|| {
        ExplainError::InvalidQuestion(format!(
            "{kind} explainer called with an incomplete question"
        ))
    })?;
    if !sat.graph.mentions(term) {
        return Err(ExplainError::UnknownIndividual(term.clone()));
    }
    Ok(term.clone())
}

fn expect_kind(q: &Question, kind: ExplanationType) -> Result<(), ExplainError> {
    if q.kind == kind {
        Ok(())
    } else {
        Err(ExplainError::InvalidQuestion(format!(
            "{} question passed to the {kind} explainer",
            q.kind
        )))
    }
}

fn run(sat: &Saturation, text: &str) -> Result<BindingTable, ExplainError> {
    let ast = parse_query(text).expect("explainer queries are well-formed");
    Ok(evaluate(&sat.graph, &ast)?)
}

fn cell(table: &BindingTable, row: usize, var: &str) -> Term {
    table
        .get(row, &Variable::new(var))
        .cloned()
        .expect("projected variable bound by a required pattern")
}

fn triple(s: &Term, p: &str, o: &Term) -> Triple {
    Triple::new(s.clone(), Term::iri(p), o.clone()).expect("explainer triples are well-formed")
}

/// Witness triples plus everything they were derived from.
fn provenance(sat: &Saturation, witnesses: impl IntoIterator<Item = Triple>) -> Vec<Triple> {
    let mut out = BTreeSet::new();
    for w in witnesses {
        debug_assert!(sat.graph.contains(&w), "witness {w} not in graph");
        out.extend(sat.trace.support(&w));
    }
    out.into_iter().collect()
}

/// Edges of a shortest `predicate` path (one or more steps) from `from` to `to`.
pub(crate) fn path_edges(
    graph: &Graph,
    from: &Term,
    predicate: &str,
    to: &Term,
) -> Option<Vec<Triple>> {
    let p = Term::iri(predicate);
    let mut parent: BTreeMap<Term, Term> = BTreeMap::new();
    let mut visited = BTreeSet::from([from.clone()]);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(node) = queue.pop_front() {
        for next in graph.objects(&node, &p) {
            if &next == to {
                let mut edges = vec![triple(&node, predicate, to)];
                let mut cur = node;
                while &cur != from {
                    let prev = parent[&cur].clone();
                    edges.push(triple(&prev, predicate, &cur));
                    cur = prev;
                }
                edges.reverse();
                return Some(edges);
            }
            if visited.insert(next.clone()) {
                parent.insert(next.clone(), node.clone());
                queue.push_back(next);
            }
        }
    }
    None
}

/// External ecosystem characteristics reachable from the primary parameter,
/// with their most specific characteristic classes.
pub fn explain_contextual(sat: &Saturation, q: &Question) -> Result<Explanation, ExplainError> {
    expect_kind(q, ExplanationType::Contextual)?;
    let parameter = require(sat, q.primary(), q.kind)?;
    let text = format!(
        "SELECT DISTINCT ?characteristic ?classes ?eco WHERE {{
           BIND({parameter} AS ?parameter)
           ?parameter feo:hasCharacteristic ?characteristic .
           ?characteristic feo:isInternal false .
           FILTER NOT EXISTS {{ ?characteristic feo:isInternal true }}
           ?characteristic a ?eco .
           FILTER (?eco = feo:SystemCharacteristic || ?eco = feo:UserCharacteristic)
           ?characteristic a ?classes .
           ?classes rdfs:subClassOf feo:Characteristic .
           FILTER NOT EXISTS {{ ?classes rdfs:subClassOf eo:knowledge }}
           FILTER NOT EXISTS {{ ?s rdfs:subClassOf ?classes }}
         }}"
    );
    let table = run(sat, &text)?;
    let mut items: BTreeMap<(Term, Term), BTreeSet<Triple>> = BTreeMap::new();
    for row in 0..table.len() {
        let c = cell(&table, row, "characteristic");
        let class = cell(&table, row, "classes");
        let eco = cell(&table, row, "eco");
        debug_assert!(!is_internal(&sat.graph, &c));
        let witnesses = [
            triple(&parameter, feo::HAS_CHARACTERISTIC, &c),
            Triple::new(c.clone(), Term::iri(feo::IS_INTERNAL), Term::boolean(false))
                .expect("valid"),
            triple(&c, rdf::TYPE, &eco),
            triple(&c, rdf::TYPE, &class),
            triple(&class, rdfs::SUB_CLASS_OF, &Term::iri(feo::CHARACTERISTIC)),
        ];
        items
            .entry((c, class))
            .or_default()
            .extend(provenance(sat, witnesses));
    }
    let items = items
        .into_iter()
        .map(|((characteristic, class), prov)| ExplanationItem {
            characteristic,
            class,
            polarity: Polarity::Context,
            derived_foods: Vec::new(),
            provenance: prov.into_iter().collect(),
        })
        .collect();
    Ok(Explanation::new(q.clone(), items, &sat.graph))
}

fn verdict_items(
    sat: &Saturation,
    parameter: &Term,
    verdict: &str,
    polarity: Polarity,
) -> Result<Vec<ExplanationItem>, ExplainError> {
    let text = format!(
        "SELECT DISTINCT ?type ?c WHERE {{
           BIND({parameter} AS ?parameter)
           ?parameter feo:hasCharacteristic ?c .
           ?c a <{verdict}> .
           ?c a ?type .
           ?type (rdfs:subClassOf+) feo:Characteristic .
           FILTER NOT EXISTS {{ ?type rdfs:subClassOf eo:knowledge }}
           FILTER NOT EXISTS {{ ?s rdfs:subClassOf ?type }}
         }}"
    );
    let table = run(sat, &text)?;
    let characteristic_class = Term::iri(feo::CHARACTERISTIC);
    let mut items = Vec::new();
    for row in 0..table.len() {
        let c = cell(&table, row, "c");
        let class = cell(&table, row, "type");
        let mut witnesses = vec![
            triple(parameter, feo::HAS_CHARACTERISTIC, &c),
            triple(&c, rdf::TYPE, &Term::iri(verdict)),
            triple(&c, rdf::TYPE, &class),
        ];
        witnesses.extend(
            path_edges(
                &sat.graph,
                &class,
                rdfs::SUB_CLASS_OF,
                &characteristic_class,
            )
            .expect("query matched a subClassOf path"),
        );
        items.push(ExplanationItem {
            characteristic: c,
            class,
            polarity,
            derived_foods: Vec::new(),
            provenance: provenance(sat, witnesses),
        });
    }
    Ok(items)
}

/// Facts supporting the primary parameter and foils opposing the secondary.
pub fn explain_contrastive(sat: &Saturation, q: &Question) -> Result<Explanation, ExplainError> {
    expect_kind(q, ExplanationType::Contrastive)?;
    let primary = require(sat, q.primary(), q.kind)?;
    let secondary = require(sat, q.secondary(), q.kind)?;
    let mut items = verdict_items(sat, &primary, eo::FACT, Polarity::Fact)?;
    items.extend(verdict_items(sat, &secondary, eo::FOIL, Polarity::Foil)?);
    Ok(Explanation::new(q.clone(), items, &sat.graph))
}

/// Foods the hypothetical recommends or forbids, each with the dishes it is
/// an ingredient of.
pub fn explain_counterfactual(sat: &Saturation, q: &Question) -> Result<Explanation, ExplainError> {
    expect_kind(q, ExplanationType::Counterfactual)?;
    let hypothetical = require(sat, q.hypothetical(), q.kind)?;
    let text = format!(
        "SELECT DISTINCT ?property ?baseFood ?inheritedFood WHERE {{
           BIND({hypothetical} AS ?parameter)
           ?parameter ?property ?baseFood .
           ?property rdfs:subPropertyOf feo:isCharacteristicOf .
           ?baseFood a food:Food .
           OPTIONAL {{ ?baseFood feo:isIngredientOf ?inheritedFood . }}
         }}"
    );
    let table = run(sat, &text)?;
    let opposed = Term::iri(feo::IS_OPPOSED_BY);
    let mut grouped: BTreeMap<(Term, Term), (BTreeSet<Term>, BTreeSet<Triple>)> = BTreeMap::new();
    for row in 0..table.len() {
        let property = cell(&table, row, "property");
        let food_term = cell(&table, row, "baseFood");
        let derived = table.get(row, &Variable::new("inheritedFood")).cloned();
        let mut witnesses = vec![
            Triple::new(hypothetical.clone(), property.clone(), food_term.clone()).expect("valid"),
            triple(
                &property,
                rdfs::SUB_PROPERTY_OF,
                &Term::iri(feo::IS_CHARACTERISTIC_OF),
            ),
            triple(&food_term, rdf::TYPE, &Term::iri(food::FOOD)),
        ];
        if let Some(d) = &derived {
            witnesses.push(triple(&food_term, feo::IS_INGREDIENT_OF, d));
        }
        let prohibition = triple(&property, rdfs::SUB_PROPERTY_OF, &opposed);
        if sat.graph.contains(&prohibition) {
            witnesses.push(prohibition);
        }
        let entry = grouped.entry((food_term, property)).or_default();
        entry.0.extend(derived);
        entry.1.extend(provenance(sat, witnesses));
    }
    let items = grouped
        .into_iter()
        .map(|((characteristic, class), (derived, prov))| {
            let polarity = if sat
                .graph
                .contains(&triple(&class, rdfs::SUB_PROPERTY_OF, &opposed))
            {
                Polarity::Prohibition
            } else {
                Polarity::Recommendation
            };
            ExplanationItem {
                characteristic,
                class,
                polarity,
                derived_foods: derived.into_iter().collect(),
                provenance: prov.into_iter().collect(),
            }
        })
        .collect();
    Ok(Explanation::new(q.clone(), items, &sat.graph))
}
