use crate::kb::vocab::{eo, feo, owl, rdf, rdfs};
use crate::rdf::{PatternTerm, Term, TriplePattern};

use super::rules::{Rule, RuleSet};

fn v(name: &str) -> PatternTerm {
    PatternTerm::var(name)
}

fn c(iri: &'static str) -> PatternTerm {
    PatternTerm::Const(Term::iri(iri))
}

fn tp(s: PatternTerm, p: PatternTerm, o: PatternTerm) -> TriplePattern {
    TriplePattern::new(s, p, o)
}

/// The fixed food-explanation rule set.
///
/// Stratum 0 closes the class and property hierarchies, inverses,
/// transitive properties, domain/range typing, opposition edges and the
/// `isInternal` flag. Stratum 1 classifies characteristics of question
/// parameters as `eo:Fact` or `eo:Foil`.
///
/// Verdict classes never feed stratum 0: every stratum-0 body position that
/// could see an `eo:Fact`/`eo:Foil` typing is guarded against them.
pub fn feo_ruleset() -> RuleSet {
    let verdicts = [Term::iri(eo::FACT), Term::iri(eo::FOIL)];
    let any = |s, p, o| tp(v(s), v(p), v(o));
    let build = || -> Result<Vec<Rule>, super::RuleError> {
        Ok(vec![
            Rule::new(
                "r1",
                vec![
                    tp(v("a"), c(rdfs::SUB_CLASS_OF), v("b")),
                    tp(v("b"), c(rdfs::SUB_CLASS_OF), v("c")),
                ],
                vec![],
                tp(v("a"), c(rdfs::SUB_CLASS_OF), v("c")),
                0,
            )?,
            Rule::new(
                "r2",
                vec![
                    tp(v("x"), c(rdf::TYPE), v("a")),
                    tp(v("a"), c(rdfs::SUB_CLASS_OF), v("b")),
                ],
                vec![],
                tp(v("x"), c(rdf::TYPE), v("b")),
                0,
            )?
            .with_guard("a", &verdicts)?
            .with_guard("b", &verdicts)?,
            Rule::new(
                "r3",
                vec![
                    tp(v("p"), c(rdfs::SUB_PROPERTY_OF), v("q")),
                    tp(v("q"), c(rdfs::SUB_PROPERTY_OF), v("r")),
                ],
                vec![],
                tp(v("p"), c(rdfs::SUB_PROPERTY_OF), v("r")),
                0,
            )?,
            Rule::new(
                "r4",
                vec![
                    any("x", "p", "y"),
                    tp(v("p"), c(rdfs::SUB_PROPERTY_OF), v("q")),
                ],
                vec![],
                any("x", "q", "y"),
                0,
            )?
            .with_guard("y", &verdicts)?,
            Rule::new(
                "r5",
                vec![any("x", "p", "y"), tp(v("p"), c(owl::INVERSE_OF), v("q"))],
                vec![],
                any("y", "q", "x"),
                0,
            )?
            .with_guard("y", &verdicts)?,
            Rule::new(
                "r5s",
                vec![tp(v("p"), c(owl::INVERSE_OF), v("q"))],
                vec![],
                tp(v("q"), c(owl::INVERSE_OF), v("p")),
                0,
            )?,
            Rule::new(
                "r6",
                vec![
                    any("x", "p", "y"),
                    any("y", "p", "z"),
                    tp(v("p"), c(rdf::TYPE), c(owl::TRANSITIVE_PROPERTY)),
                ],
                vec![],
                any("x", "p", "z"),
                0,
            )?
            .with_guard("y", &verdicts)?
            .with_guard("z", &verdicts)?,
            Rule::new(
                "r7",
                vec![any("x", "p", "y"), tp(v("p"), c(rdfs::DOMAIN), v("c"))],
                vec![],
                tp(v("x"), c(rdf::TYPE), v("c")),
                0,
            )?
            .with_guard("y", &verdicts)?
            .with_guard("c", &verdicts)?,
            Rule::new(
                "r8",
                vec![any("x", "p", "y"), tp(v("p"), c(rdfs::RANGE), v("c"))],
                vec![],
                tp(v("y"), c(rdf::TYPE), v("c")),
                0,
            )?
            .with_guard("y", &verdicts)?
            .with_guard("c", &verdicts)?,
            Rule::new(
                "r9",
                vec![
                    tp(v("param"), c(feo::HAS_CHARACTERISTIC), v("c")),
                    tp(v("c"), c(rdf::TYPE), c(feo::OPPOSING_CHARACTERISTIC)),
                ],
                vec![],
                tp(v("param"), c(feo::IS_OPPOSED_BY), v("c")),
                0,
            )?,
            Rule::new(
                "r13",
                vec![
                    tp(v("x"), c(rdf::TYPE), v("c")),
                    tp(v("c"), c(feo::IS_INTERNAL), v("flag")),
                ],
                vec![],
                tp(v("x"), c(feo::IS_INTERNAL), v("flag")),
                0,
            )?
            .with_guard("c", &verdicts)?,
            Rule::new(
                "r10",
                vec![
                    tp(v("q"), c(feo::HAS_PARAMETER), v("p")),
                    tp(v("p"), c(feo::HAS_CHARACTERISTIC), v("c")),
                    tp(v("c"), c(rdf::TYPE), c(feo::ECOSYSTEM_CHARACTERISTIC)),
                ],
                vec![],
                tp(v("c"), c(rdf::TYPE), c(eo::FACT)),
                1,
            )?,
            Rule::new(
                "r11",
                vec![
                    tp(v("q"), c(feo::HAS_PARAMETER), v("p")),
                    tp(v("p"), c(feo::HAS_CHARACTERISTIC), v("c")),
                ],
                vec![tp(v("c"), c(rdf::TYPE), c(feo::ECOSYSTEM_CHARACTERISTIC))],
                tp(v("c"), c(rdf::TYPE), c(eo::FOIL)),
                1,
            )?,
            Rule::new(
                "r12",
                vec![
                    tp(v("q"), c(feo::HAS_PARAMETER), v("p")),
                    tp(v("p"), c(feo::IS_OPPOSED_BY), v("c")),
                    tp(v("c"), c(rdf::TYPE), c(feo::ECOSYSTEM_CHARACTERISTIC)),
                ],
                vec![],
                tp(v("c"), c(rdf::TYPE), c(eo::FOIL)),
                1,
            )?,
        ])
    };
    let rules = build().expect("built-in rules are safe");
    RuleSet::new(rules).expect("built-in rules are stratified")
}
