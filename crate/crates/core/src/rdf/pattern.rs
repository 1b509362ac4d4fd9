use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::graph::Graph;
use super::term::{Term, Triple};

/// A named placeholder. The name excludes the leading `?`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable(Arc<str>);

impl Variable {
    pub fn new(name: &str) -> Self {
        Variable(name.trim_start_matches(['?', '$']).into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "?{}", self.0)
    }
}

impl fmt::Debug for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PatternTerm {
    Var(Variable),
    Const(Term),
}

impl PatternTerm {
    pub fn var(name: &str) -> Self {
        PatternTerm::Var(Variable::new(name))
    }

    pub fn as_var(&self) -> Option<&Variable> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Const(_) => None,
        }
    }

    /// The concrete term, either constant or looked up in `bindings`.
    pub fn resolve<'a>(&'a self, bindings: &'a Bindings) -> Option<&'a Term> {
        match self {
            PatternTerm::Const(t) => Some(t),
            PatternTerm::Var(v) => bindings.get(v),
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Const(t)
    }
}

impl From<Variable> for PatternTerm {
    fn from(v: Variable) -> Self {
        PatternTerm::Var(v)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => v.fmt(f),
            PatternTerm::Const(t) => t.fmt(f),
        }
    }
}

pub type Bindings = BTreeMap<Variable, Term>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        TriplePattern {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn variables(&self) -> impl Iterator<Item = &Variable> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }

    /// Extends `bindings` so that the pattern equals `triple`, or returns
    /// `None` on a conflict.
    pub fn unify(&self, triple: &Triple, bindings: &Bindings) -> Option<Bindings> {
        let mut out = bindings.clone();
        let values = [triple.subject(), triple.predicate(), triple.object()];
        for (pos, value) in self.positions().into_iter().zip(values) {
            match pos {
                PatternTerm::Const(c) => {
                    if c != value {
                        return None;
                    }
                }
                PatternTerm::Var(v) => match out.get(v) {
                    Some(bound) if bound != value => return None,
                    Some(_) => {}
                    None => {
                        out.insert(v.clone(), value.clone());
                    }
                },
            }
        }
        Some(out)
    }

    /// All extensions of `bindings` matching a triple of `graph`, paired with
    /// the matched triple, in canonical triple order.
    pub fn solutions(&self, graph: &Graph, bindings: &Bindings) -> Vec<(Bindings, Triple)> {
        let s = self.subject.resolve(bindings);
        let p = self.predicate.resolve(bindings);
        let o = self.object.resolve(bindings);
        if p.is_some_and(|p| !p.is_iri()) || s.is_some_and(Term::is_literal) {
            return Vec::new();
        }
        graph
            .match_pattern(s, p, o)
            .into_iter()
            .filter_map(|t| self.unify(&t, bindings).map(|b| (b, t)))
            .collect()
    }

    /// Instantiates the pattern; `None` if a variable is unbound or the
    /// result is not a well-formed triple.
    pub fn instantiate(&self, bindings: &Bindings) -> Option<Triple> {
        let s = self.subject.resolve(bindings)?.clone();
        let p = self.predicate.resolve(bindings)?.clone();
        let o = self.object.resolve(bindings)?.clone();
        Triple::new(s, p, o).ok()
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {})", self.subject, self.predicate, self.object)
    }
}
