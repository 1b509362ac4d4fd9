use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rdf::{Bindings, PatternTerm, Term, TriplePattern, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule {rule}: positive body is empty")]
    EmptyBody { rule: String },
    #[error("rule {rule}: head variable {var} does not occur in the positive body")]
    UnsafeHead { rule: String, var: Variable },
    #[error("rule {rule}: negated variable {var} does not occur in the positive body")]
    UnsafeNegation { rule: String, var: Variable },
    #[error("rule {rule}: guarded variable {var} does not occur in the positive body")]
    UnsafeGuard { rule: String, var: Variable },
    #[error("rule {rule}: negation requires stratum >= 1")]
    NegationInBaseStratum { rule: String },
    #[error("duplicate rule id {0}")]
    DuplicateId(String),
    #[error("rule {rule} (stratum {stratum}) {kind} depends on rule {producer} (stratum {producer_stratum})")]
    NotStratified {
        rule: String,
        stratum: usize,
        producer: String,
        producer_stratum: usize,
        kind: &'static str,
    },
}

/// Restricts a body variable to values outside `excluded`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guard {
    pub variable: Variable,
    pub excluded: Vec<Term>,
}

/// `positive ∧ ¬negative ⇒ head`, evaluated in `stratum`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    id: String,
    positive: Vec<TriplePattern>,
    negative: Vec<TriplePattern>,
    guards: Vec<Guard>,
    head: TriplePattern,
    stratum: usize,
}

impl Rule {
    pub fn new(
        id: impl Into<String>,
        positive: Vec<TriplePattern>,
        negative: Vec<TriplePattern>,
        head: TriplePattern,
        stratum: usize,
    ) -> Result<Self, RuleError> {
        let rule = Rule {
            id: id.into(),
            positive,
            negative,
            guards: Vec::new(),
            head,
            stratum,
        };
        rule.check_safety()?;
        Ok(rule)
    }

    /// Adds a guard forbidding `variable` from taking any of `excluded`.
    pub fn with_guard(mut self, variable: &str, excluded: &[Term]) -> Result<Self, RuleError> {
        self.guards.push(Guard {
            variable: Variable::new(variable),
            excluded: excluded.to_vec(),
        });
        self.check_safety()?;
        Ok(self)
    }

    fn check_safety(&self) -> Result<(), RuleError> {
        if self.positive.is_empty() {
            return Err(RuleError::EmptyBody {
                rule: self.id.clone(),
            });
        }
        let bound: BTreeSet<&Variable> = self.positive.iter().flat_map(|p| p.variables()).collect();
        if let Some(var) = self.head.variables().find(|v| !bound.contains(v)) {
            return Err(RuleError::UnsafeHead {
                rule: self.id.clone(),
                var: var.clone(),
            });
        }
        if let Some(var) = self
            .negative
            .iter()
            .flat_map(|p| p.variables())
            .find(|v| !bound.contains(v))
        {
            return Err(RuleError::UnsafeNegation {
                rule: self.id.clone(),
                var: var.clone(),
            });
        }
        if let Some(g) = self.guards.iter().find(|g| !bound.contains(&g.variable)) {
            return Err(RuleError::UnsafeGuard {
                rule: self.id.clone(),
                var: g.variable.clone(),
            });
        }
        if !self.negative.is_empty() && self.stratum == 0 {
            return Err(RuleError::NegationInBaseStratum {
                rule: self.id.clone(),
            });
        }
        Ok(())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn positive(&self) -> &[TriplePattern] {
        &self.positive
    }

    pub fn negative(&self) -> &[TriplePattern] {
        &self.negative
    }

    pub fn guards(&self) -> &[Guard] {
        &self.guards
    }

    pub fn head(&self) -> &TriplePattern {
        &self.head
    }

    pub fn stratum(&self) -> usize {
        self.stratum
    }

    /// Whether every guard holds under `bindings`.
    pub fn admits(&self, bindings: &Bindings) -> bool {
        self.guards.iter().all(|g| match bindings.get(&g.variable) {
            Some(value) => !g.excluded.contains(value),
            None => true,
        })
    }

    fn excludes(&self, var: &Variable, value: &Term) -> bool {
        self.guards
            .iter()
            .any(|g| &g.variable == var && g.excluded.contains(value))
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.id)?;
        for p in &self.positive {
            write!(f, "{p}")?;
        }
        for n in &self.negative {
            write!(f, " NOT{n}")?;
        }
        write!(f, " -> {}", self.head)
    }
}

/// Whether some instance of `head` (from `producer`) could match `body`
/// (in `consumer`). Guards on either side can rule a constant out.
fn may_unify(producer: &Rule, head: &TriplePattern, consumer: &Rule, body: &TriplePattern) -> bool {
    head.positions()
        .into_iter()
        .zip(body.positions())
        .all(|(h, b)| match (h, b) {
            (PatternTerm::Const(x), PatternTerm::Const(y)) => x == y,
            (PatternTerm::Var(v), PatternTerm::Const(c)) => !producer.excludes(v, c),
            (PatternTerm::Const(c), PatternTerm::Var(v)) => !consumer.excludes(v, c),
            (PatternTerm::Var(_), PatternTerm::Var(_)) => true,
        })
}

/// An immutable, stratification-checked collection of rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    rules: Vec<Rule>,
    strata_count: usize,
}

impl RuleSet {
    /// Rejects rule sets where a positive dependency points to a higher
    /// stratum or a negative dependency to the same or a higher one.
    pub fn new(rules: Vec<Rule>) -> Result<Self, RuleError> {
        let mut ids = BTreeSet::new();
        for r in &rules {
            if !ids.insert(r.id.as_str()) {
                return Err(RuleError::DuplicateId(r.id.clone()));
            }
        }
        for consumer in &rules {
            for producer in &rules {
                for body in &consumer.positive {
                    if producer.stratum > consumer.stratum
                        && may_unify(producer, &producer.head, consumer, body)
                    {
                        return Err(not_stratified(consumer, producer, "positively"));
                    }
                }
                for body in &consumer.negative {
                    if producer.stratum >= consumer.stratum
                        && may_unify(producer, &producer.head, consumer, body)
                    {
                        return Err(not_stratified(consumer, producer, "negatively"));
                    }
                }
            }
        }
        let strata_count = rules.iter().map(|r| r.stratum + 1).max().unwrap_or(0);
        Ok(RuleSet {
            rules,
            strata_count,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn strata_count(&self) -> usize {
        self.strata_count
    }

    /// Rules of one stratum in declaration order.
    pub fn stratum(&self, stratum: usize) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(move |r| r.stratum == stratum)
    }

    pub fn get(&self, id: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }
}

fn not_stratified(consumer: &Rule, producer: &Rule, kind: &'static str) -> RuleError {
    RuleError::NotStratified {
        rule: consumer.id.clone(),
        stratum: consumer.stratum,
        producer: producer.id.clone(),
        producer_stratum: producer.stratum,
        kind,
    }
}
