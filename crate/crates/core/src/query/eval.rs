use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::rdf::{Bindings, Graph, PatternTerm, Term, Variable};

use super::ast::{Element, Expr, GroupPattern, PathPattern, QueryAst};
use super::parser::unbindable_filter_variables;
use super::results::BindingTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("FILTER compares {0}, which no pattern in scope can bind")]
    UnboundFilterVariable(Variable),
}

/// Evaluates `query` against `graph`.
///
/// Elements of a group are applied left to right, except that FILTER and
/// FILTER NOT EXISTS constrain the whole group and run after everything
/// else in it. Output rows are sorted; DISTINCT removes duplicates.
pub fn evaluate(graph: &Graph, query: &QueryAst) -> Result<BindingTable, EvalError> {
    if let Some(v) = unbindable_filter_variables(&query.where_clause)
        .into_iter()
        .next()
    {
        return Err(EvalError::UnboundFilterVariable(v));
    }
    let solutions = eval_group(graph, &query.where_clause, vec![Bindings::new()]);
    let rows = solutions
        .into_iter()
        .map(|b| query.projection.iter().map(|v| b.get(v).cloned()).collect())
        .collect();
    Ok(BindingTable::new(
        query.projection.clone(),
        rows,
        query.distinct,
    ))
}

fn eval_group(graph: &Graph, group: &GroupPattern, input: Vec<Bindings>) -> Vec<Bindings> {
    let mut rows = input;
    for element in &group.elements {
        if rows.is_empty() {
            break;
        }
        rows = match element {
            Element::Triple(pattern) => rows
                .iter()
                .flat_map(|b| pattern.solutions(graph, b).into_iter().map(|(b, _)| b))
                .collect(),
            Element::Path(path) => rows
                .iter()
                .flat_map(|b| path_solutions(graph, path, b))
                .collect(),
            Element::Bind { value, target } => rows
                .into_iter()
                .map(|mut b| {
                    if let Some(v) = value.resolve(&b).cloned() {
                        b.insert(target.clone(), v);
                    }
                    b
                })
                .collect(),
            Element::Optional(inner) => rows
                .into_iter()
                .flat_map(|b| {
                    let extended = eval_group(graph, inner, vec![b.clone()]);
                    if extended.is_empty() {
                        vec![b]
                    } else {
                        extended
                    }
                })
                .collect(),
            Element::Filter(_) | Element::NotExists(_) => rows,
        };
    }
    for element in &group.elements {
        match element {
            Element::Filter(expr) => rows.retain(|b| holds(expr, b)),
            Element::NotExists(inner) => {
                rows.retain(|b| eval_group(graph, inner, vec![b.clone()]).is_empty())
            }
            _ => {}
        }
    }
    rows
}

/// Equality over bound terms; a comparison with an unbound side is false.
fn holds(expr: &Expr, bindings: &Bindings) -> bool {
    match expr {
        Expr::Eq(a, b) => match (a.resolve(bindings), b.resolve(bindings)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        },
        Expr::Or(a, b) => holds(a, bindings) || holds(b, bindings),
    }
}

fn path_solutions(graph: &Graph, path: &PathPattern, bindings: &Bindings) -> Vec<Bindings> {
    let predicate = &path.predicate;
    let subject = path.subject.resolve(bindings).cloned();
    let object = path.object.resolve(bindings).cloned();
    let mut pairs: Vec<(Term, Term)> = Vec::new();
    match (subject, object) {
        (Some(s), Some(o)) => {
            if reachable(graph, predicate, &s, Direction::Forward).contains(&o) {
                pairs.push((s, o));
            }
        }
        (Some(s), None) => {
            for o in reachable(graph, predicate, &s, Direction::Forward) {
                pairs.push((s.clone(), o));
            }
        }
        (None, Some(o)) => {
            for s in reachable(graph, predicate, &o, Direction::Backward) {
                pairs.push((s, o.clone()));
            }
        }
        (None, None) => {
            let starts: BTreeSet<Term> = graph
                .match_pattern(None, Some(predicate), None)
                .into_iter()
                .map(|t| t.subject().clone())
                .collect();
            for s in starts {
                for o in reachable(graph, predicate, &s, Direction::Forward) {
                    pairs.push((s.clone(), o));
                }
            }
        }
    }
    pairs
        .into_iter()
        .filter_map(|(s, o)| {
            let mut b = bindings.clone();
            bind(&mut b, &path.subject, s)?;
            bind(&mut b, &path.object, o)?;
            Some(b)
        })
        .collect()
}

fn bind(bindings: &mut Bindings, position: &PatternTerm, value: Term) -> Option<()> {
    match position {
        PatternTerm::Const(c) => (c == &value).then_some(()),
        PatternTerm::Var(v) => match bindings.get(v) {
            Some(existing) => (existing == &value).then_some(()),
            None => {
                bindings.insert(v.clone(), value);
                Some(())
            }
        },
    }
}

#[derive(Clone, Copy)]
enum Direction {
    Forward,
    Backward,
}

/// Nodes reachable from `start` in one or more `predicate` steps.
fn reachable(graph: &Graph, predicate: &Term, start: &Term, dir: Direction) -> BTreeSet<Term> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(node) = queue.pop_front() {
        let next = match dir {
            Direction::Forward => graph.objects(&node, predicate),
            Direction::Backward => graph.subjects(predicate, &node),
        };
        for n in next {
            if seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    seen
}
