use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::kb::vocab::{feo, rdfs};
use crate::rdf::{Graph, Term};

use super::{Explanation, ExplanationItem, ExplanationType, Polarity};

/// Human-readable name: the first `rdfs:label`, else the local name split
/// on camel case ("SpinachFrittata" becomes "Spinach Frittata").
pub fn display_name(graph: &Graph, term: &Term) -> String {
    let label = graph
        .objects(term, &Term::iri(rdfs::LABEL))
        .into_iter()
        .find_map(|t| t.as_literal().map(|l| l.lexical().to_string()));
    if let Some(label) = label {
        return label;
    }
    match term.local_name() {
        Some(local) if !local.is_empty() => split_camel(local),
        _ => term.to_string(),
    }
}

fn split_camel(name: &str) -> String {
    let chars: Vec<char> = name.chars().collect();
    let mut out = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c == '_' || c == '-' {
            out.push(' ');
            continue;
        }
        if i > 0 && c.is_uppercase() {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            if prev.is_lowercase() || prev.is_ascii_digit() || (prev.is_uppercase() && next_lower) {
                out.push(' ');
            }
        }
        out.push(c);
    }
    out
}

fn join_list(parts: &[String]) -> String {
    match parts {
        [] => String::new(),
        [one] => one.clone(),
        [init @ .., last] => format!("{} and {last}", init.join(", ")),
    }
}

/// Fills the per-type answer template. Names are resolved against `graph`;
/// an explanation without items renders as the empty string.
pub fn render(e: &Explanation, graph: &Graph) -> String {
    if e.items.is_empty() {
        return String::new();
    }
    let name = |t: &Term| display_name(graph, t);
    match e.question.kind() {
        ExplanationType::Contextual => {
            let parameter = e.question.primary().map(name).unwrap_or_default();
            let sentences: Vec<String> = e
                .items
                .iter()
                .map(|item| contextual_sentence(graph, e.question.primary(), &parameter, item))
                .collect();
            sentences.join(" ")
        }
        ExplanationType::Contrastive => {
            let a = e.question.primary().map(name).unwrap_or_default();
            let b = e.question.secondary().map(name).unwrap_or_default();
            let facts: Vec<String> = e
                .items
                .iter()
                .filter(|i| i.polarity == Polarity::Fact)
                .map(|i| fact_phrase(&a, &name(&i.characteristic), &i.class, &name(&i.class)))
                .collect();
            let foils: Vec<String> = e
                .items
                .iter()
                .filter(|i| i.polarity == Polarity::Foil)
                .map(|i| foil_phrase(&b, &name(&i.characteristic), &i.class, &name(&i.class)))
                .collect();
            let reasons = match (facts.is_empty(), foils.is_empty()) {
                (false, false) => format!("{}, and {}", join_list(&facts), join_list(&foils)),
                (false, true) => join_list(&facts),
                _ => join_list(&foils),
            };
            format!("{a} is better than {b} because {reasons}.")
        }
        ExplanationType::Counterfactual => {
            let condition = e.question.hypothetical().map(name).unwrap_or_default();
            let prohibited: Vec<String> = unique(
                e.items
                    .iter()
                    .filter(|i| i.polarity == Polarity::Prohibition)
                    .map(|i| name(&i.characteristic)),
            );
            let suggested: Vec<String> = unique(
                e.items
                    .iter()
                    .filter(|i| i.polarity == Polarity::Recommendation)
                    .flat_map(|i| {
                        if i.derived_foods.is_empty() {
                            vec![name(&i.characteristic)]
                        } else {
                            i.derived_foods.iter().map(name).collect()
                        }
                    }),
            );
            let mut text = format!("If you were {condition}, you would be ");
            if !prohibited.is_empty() {
                text.push_str(&format!(
                    "forbidden from eating {}.",
                    join_list(&prohibited)
                ));
                if !suggested.is_empty() {
                    text.push_str(&format!(
                        " You would be suggested to eat {}.",
                        join_list(&suggested)
                    ));
                }
            } else {
                text.push_str(&format!("suggested to eat {}.", join_list(&suggested)));
            }
            text
        }
    }
}

fn unique(names: impl Iterator<Item = String>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    names.filter(|n| seen.insert(n.clone())).collect()
}

fn contextual_sentence(
    graph: &Graph,
    parameter: Option<&Term>,
    parameter_name: &str,
    item: &ExplanationItem,
) -> String {
    let in_season = item.class.as_iri() == Some(feo::SEASON_CHARACTERISTIC);
    let chain = parameter
        .filter(|_| in_season)
        .and_then(|p| ingredient_chain(graph, p, &item.characteristic));
    match chain {
        Some(chain) => {
            let names: Vec<String> = chain.iter().map(|t| display_name(graph, t)).collect();
            format!(
                "{parameter_name} uses the ingredient {}, which is available in the current season.",
                names.join(", which contains ")
            )
        }
        None => format!(
            "{parameter_name} is supported by {} {}.",
            display_name(graph, &item.class),
            display_name(graph, &item.characteristic)
        ),
    }
}

/// Ingredients leading from `dish` (via `hasIngredient`) to one that is
/// `availableIn` the given season, outermost first.
fn ingredient_chain(graph: &Graph, dish: &Term, season: &Term) -> Option<Vec<Term>> {
    let has_ingredient = Term::iri(feo::HAS_INGREDIENT);
    let available_in = Term::iri(feo::AVAILABLE_IN);
    let mut parent: BTreeMap<Term, Term> = BTreeMap::new();
    let mut queue = VecDeque::from([dish.clone()]);
    while let Some(node) = queue.pop_front() {
        for ingredient in graph.objects(&node, &has_ingredient) {
            if &ingredient == dish || parent.contains_key(&ingredient) {
                continue;
            }
            parent.insert(ingredient.clone(), node.clone());
            if graph.objects(&ingredient, &available_in).contains(season) {
                let mut chain = vec![ingredient.clone()];
                let mut cur = ingredient;
                while let Some(prev) = parent.get(&cur) {
                    if prev == dish {
                        break;
                    }
                    chain.push(prev.clone());
                    cur = prev.clone();
                }
                chain.reverse();
                return Some(chain);
            }
            queue.push_back(ingredient);
        }
    }
    None
}

fn fact_phrase(parameter: &str, value: &str, class: &Term, class_name: &str) -> String {
    if class.as_iri() == Some(feo::SEASON_CHARACTERISTIC) {
        format!("{parameter} is currently in season ({value})")
    } else {
        format!(
            "{parameter} matches your {} {value}",
            class_name.to_lowercase()
        )
    }
}

fn foil_phrase(parameter: &str, value: &str, class: &Term, class_name: &str) -> String {
    match class.as_iri() {
        Some(feo::ALLERGIC_FOOD_CHARACTERISTIC) => {
            format!("you are allergic to {value} in {parameter}")
        }
        Some(feo::DISLIKED_FOOD_CHARACTERISTIC) => format!("you dislike {value} in {parameter}"),
        _ => format!("{parameter} has {} {value}", class_name.to_lowercase()),
    }
}
