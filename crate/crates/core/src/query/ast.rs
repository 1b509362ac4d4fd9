use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::rdf::{PatternTerm, Term, TriplePattern, Variable};

/// A parsed `SELECT` query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryAst {
    /// Every prefix in scope, including the predeclared ones.
    pub prefixes: BTreeMap<String, String>,
    pub distinct: bool,
    pub projection: Vec<Variable>,
    pub where_clause: GroupPattern,
}

impl QueryAst {
    /// Every IRI constant in the query body, sorted.
    pub fn iris(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.where_clause.collect_iris(&mut out);
        out
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupPattern {
    pub elements: Vec<Element>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Element {
    Triple(TriplePattern),
    /// `subject predicate+ object`.
    Path(PathPattern),
    Filter(Expr),
    NotExists(GroupPattern),
    Optional(GroupPattern),
    Bind {
        value: PatternTerm,
        target: Variable,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPattern {
    pub subject: PatternTerm,
    pub predicate: Term,
    pub object: PatternTerm,
}

/// Filter expressions: equality, disjunction and grouping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Eq(PatternTerm, PatternTerm),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn variables(&self) -> Vec<&Variable> {
        match self {
            Expr::Eq(a, b) => [a, b].into_iter().filter_map(PatternTerm::as_var).collect(),
            Expr::Or(a, b) => {
                let mut v = a.variables();
                v.extend(b.variables());
                v
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Eq(a, b) => write!(f, "{a} = {b}"),
            Expr::Or(a, b) => write!(f, "({a} || {b})"),
        }
    }
}

impl GroupPattern {
    /// Variables this group can bind for its own rows: triple and path
    /// positions, BIND targets and OPTIONAL sub-groups.
    pub fn bindable_variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        for e in &self.elements {
            match e {
                Element::Triple(t) => out.extend(t.variables().cloned()),
                Element::Path(p) => out.extend(
                    [&p.subject, &p.object]
                        .into_iter()
                        .filter_map(|t| t.as_var())
                        .cloned(),
                ),
                Element::Bind { target, .. } => {
                    out.insert(target.clone());
                }
                Element::Optional(g) => out.extend(g.bindable_variables()),
                Element::Filter(_) | Element::NotExists(_) => {}
            }
        }
        out
    }

    /// Every variable mentioned anywhere in the group, nested groups included.
    pub fn all_variables(&self) -> BTreeSet<Variable> {
        let mut out = BTreeSet::new();
        for e in &self.elements {
            match e {
                Element::Triple(t) => out.extend(t.variables().cloned()),
                Element::Path(p) => out.extend(
                    [&p.subject, &p.object]
                        .into_iter()
                        .filter_map(|t| t.as_var())
                        .cloned(),
                ),
                Element::Filter(x) => out.extend(x.variables().into_iter().cloned()),
                Element::NotExists(g) | Element::Optional(g) => out.extend(g.all_variables()),
                Element::Bind { value, target } => {
                    out.extend(value.as_var().cloned());
                    out.insert(target.clone());
                }
            }
        }
        out
    }

    fn collect_iris(&self, out: &mut BTreeSet<String>) {
        let mut add = |t: &PatternTerm| {
            if let PatternTerm::Const(Term::Iri(i)) = t {
                out.insert(i.to_string());
            }
        };
        let mut nested = Vec::new();
        for e in &self.elements {
            match e {
                Element::Triple(t) => t.positions().into_iter().for_each(&mut add),
                Element::Path(p) => {
                    add(&p.subject);
                    add(&PatternTerm::Const(p.predicate.clone()));
                    add(&p.object);
                }
                Element::Filter(x) => collect_expr(x, &mut add),
                Element::Bind { value, .. } => add(value),
                Element::NotExists(g) | Element::Optional(g) => nested.push(g),
            }
        }
        for g in nested {
            g.collect_iris(out);
        }
    }
}

fn collect_expr(e: &Expr, add: &mut impl FnMut(&PatternTerm)) {
    match e {
        Expr::Eq(a, b) => {
            add(a);
            add(b);
        }
        Expr::Or(a, b) => {
            collect_expr(a, add);
            collect_expr(b, add);
        }
    }
}
