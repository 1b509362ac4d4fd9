use std::collections::{BTreeMap, BTreeSet};

use crate::kb::vocab::PREFIXES;
use crate::rdf::{Datatype, PatternTerm, Term, TriplePattern, Variable};
use crate::syntax::{tokenize, ParseDiagnostic, Tok, Token};
use crate::turtle::RDF_TYPE;

use super::ast::{Element, Expr, GroupPattern, PathPattern, QueryAst};

/// Parses a query in the supported SPARQL subset.
///
/// The standard prefixes (`rdf`, `rdfs`, `owl`, `xsd`) and the vocabulary
/// prefixes (`feo`, `eo`, `food`) are predeclared; `PREFIX` declarations
/// add to or override them.
pub fn parse_query(text: &str) -> Result<QueryAst, ParseDiagnostic> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        prefixes: PREFIXES
            .iter()
            .map(|(p, ns)| (p.to_string(), ns.to_string()))
            .collect(),
    };
    p.query()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: BTreeMap<String, String>,
}

type PResult<T> = Result<T, ParseDiagnostic>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, expected: &str) -> ParseDiagnostic {
        let t = self.peek();
        ParseDiagnostic::at(t, format!("expected {expected}, found {}", t.describe()))
    }

    fn expect_punct(&mut self, p: &str) -> PResult<Token> {
        if self.peek().is_punct(p) {
            Ok(self.next())
        } else {
            Err(self.error_here(&format!("'{p}'")))
        }
    }

    fn expect_word(&mut self, w: &str) -> PResult<Token> {
        if self.peek().is_word(w) {
            Ok(self.next())
        } else {
            Err(self.error_here(w))
        }
    }

    fn query(&mut self) -> PResult<QueryAst> {
        while self.peek().is_word("PREFIX") {
            self.next();
            self.prefix_decl()?;
        }
        if !self.peek().is_word("SELECT") {
            return Err(self.error_here("SELECT"));
        }
        self.next();
        let distinct = if self.peek().is_word("DISTINCT") {
            self.next();
            true
        } else {
            false
        };
        let mut projection: Vec<(Variable, Token)> = Vec::new();
        while let Tok::Var(name) = &self.peek().tok {
            let v = Variable::new(name);
            let t = self.next();
            if projection.iter().any(|(p, _)| p == &v) {
                return Err(ParseDiagnostic::at(&t, format!("{v} is projected twice")));
            }
            projection.push((v, t));
        }
        if projection.is_empty() {
            return Err(self.error_here("a projected variable"));
        }
        if self.peek().is_word("WHERE") {
            self.next();
        }
        let where_clause = self.group()?;
        if self.peek().tok != Tok::Eof {
            let t = self.peek();
            return Err(ParseDiagnostic::at(
                t,
                format!("unsupported {} after the query body", t.describe()),
            ));
        }
        let mentioned = where_clause.all_variables();
        for (v, t) in &projection {
            if !mentioned.contains(v) {
                return Err(ParseDiagnostic::at(
                    t,
                    format!("{v} does not occur in WHERE"),
                ));
            }
        }
        Ok(QueryAst {
            prefixes: self.prefixes.clone(),
            distinct,
            projection: projection.into_iter().map(|(v, _)| v).collect(),
            where_clause,
        })
    }

    fn prefix_decl(&mut self) -> PResult<()> {
        let t = self.next();
        let Tok::PName { prefix, local } = &t.tok else {
            return Err(ParseDiagnostic::at(
                &t,
                "expected a prefix name like 'feo:'",
            ));
        };
        if !local.is_empty() {
            return Err(ParseDiagnostic::at(&t, "prefix name must end with ':'"));
        }
        let iri_tok = self.next();
        let Tok::IriRef(iri) = &iri_tok.tok else {
            return Err(ParseDiagnostic::at(
                &iri_tok,
                "expected an IRI in angle brackets",
            ));
        };
        Term::try_iri(iri).map_err(|e| ParseDiagnostic::at(&iri_tok, e))?;
        self.prefixes.insert(prefix.clone(), iri.clone());
        Ok(())
    }

    fn group(&mut self) -> PResult<GroupPattern> {
        self.expect_punct("{")?;
        let mut group = GroupPattern::default();
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Punct("}") => {
                    self.next();
                    return Ok(group);
                }
                Tok::Punct(".") => {
                    self.next();
                }
                Tok::Word(w) if w.eq_ignore_ascii_case("FILTER") => {
                    self.next();
                    if self.peek().is_word("NOT") {
                        self.next();
                        self.expect_word("EXISTS")?;
                        let inner = self.group()?;
                        group.elements.push(Element::NotExists(inner));
                    } else {
                        self.expect_punct("(")?;
                        let e = self.expr()?;
                        self.expect_punct(")")?;
                        group.elements.push(Element::Filter(e));
                    }
                }
                Tok::Word(w) if w.eq_ignore_ascii_case("OPTIONAL") => {
                    self.next();
                    let inner = self.group()?;
                    group.elements.push(Element::Optional(inner));
                }
                Tok::Word(w) if w.eq_ignore_ascii_case("BIND") => {
                    self.next();
                    self.expect_punct("(")?;
                    let value = self.operand()?;
                    self.expect_word("AS")?;
                    let target_tok = self.next();
                    let Tok::Var(name) = &target_tok.tok else {
                        return Err(ParseDiagnostic::at(
                            &target_tok,
                            format!("expected a variable, found {}", target_tok.describe()),
                        ));
                    };
                    let target = Variable::new(name);
                    if group.bindable_variables().contains(&target) {
                        return Err(ParseDiagnostic::at(
                            &target_tok,
                            format!("BIND target {target} is already bound in this group"),
                        ));
                    }
                    self.expect_punct(")")?;
                    group.elements.push(Element::Bind { value, target });
                }
                Tok::Word(w)
                    if !w.eq_ignore_ascii_case("true") && !w.eq_ignore_ascii_case("false") =>
                {
                    return Err(ParseDiagnostic::at(
                        &t,
                        format!("unsupported construct {w}"),
                    ));
                }
                Tok::Eof => return Err(self.error_here("'}'")),
                _ => self.triples_block(&mut group)?,
            }
        }
    }

    fn triples_block(&mut self, group: &mut GroupPattern) -> PResult<()> {
        let subject = self.node("subject")?;
        loop {
            let verb = self.verb()?;
            loop {
                let object = self.node("object")?;
                group.elements.push(match &verb {
                    Verb::Plain(p) => {
                        Element::Triple(TriplePattern::new(subject.clone(), p.clone(), object))
                    }
                    Verb::Path(p) => Element::Path(PathPattern {
                        subject: subject.clone(),
                        predicate: p.clone(),
                        object,
                    }),
                });
                if self.peek().is_punct(",") {
                    self.next();
                } else {
                    break;
                }
            }
            if !self.peek().is_punct(";") {
                return Ok(());
            }
            while self.peek().is_punct(";") {
                self.next();
            }
            if self.peek().is_punct(".") || self.peek().is_punct("}") {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> PResult<Verb> {
        if self.peek().is_punct("(") {
            self.next();
            let iri = self.path_iri()?;
            self.expect_punct("+")?;
            self.expect_punct(")")?;
            return Ok(Verb::Path(iri));
        }
        if let Tok::Var(name) = &self.peek().tok {
            let v = PatternTerm::var(name);
            self.next();
            return Ok(Verb::Plain(v));
        }
        let iri = self.path_iri()?;
        if self.peek().is_punct("+") {
            self.next();
            return Ok(Verb::Path(iri));
        }
        Ok(Verb::Plain(PatternTerm::Const(iri)))
    }

    fn path_iri(&mut self) -> PResult<Term> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Word(w) if w == "a" => {
                self.next();
                Ok(Term::iri(RDF_TYPE))
            }
            Tok::IriRef(_) | Tok::PName { .. } => {
                self.next();
                self.iri(&t)
            }
            _ => Err(self.error_here("a predicate")),
        }
    }

    fn node(&mut self, role: &str) -> PResult<PatternTerm> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Var(_) | Tok::IriRef(_) | Tok::PName { .. } | Tok::Str(_) | Tok::Integer(_) => {
                self.operand()
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("true") || w.eq_ignore_ascii_case("false") => {
                self.operand()
            }
            Tok::Blank(_) | Tok::Punct("[") => Err(ParseDiagnostic::at(
                &t,
                "blank nodes are not supported in queries",
            )),
            _ => Err(self.error_here(role)),
        }
    }

    /// A variable, IRI or literal.
    fn operand(&mut self) -> PResult<PatternTerm> {
        let t = self.next();
        let term = match &t.tok {
            Tok::Var(name) => return Ok(PatternTerm::var(name)),
            Tok::IriRef(_) | Tok::PName { .. } => self.iri(&t)?,
            Tok::Integer(lex) => {
                Term::literal(lex, Datatype::Integer).map_err(|e| ParseDiagnostic::at(&t, e))?
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("true") || w.eq_ignore_ascii_case("false") => {
                Term::literal(w, Datatype::Boolean).map_err(|e| ParseDiagnostic::at(&t, e))?
            }
            Tok::Str(value) => {
                let value = value.clone();
                match &self.peek().tok {
                    Tok::AtWord(tag) => {
                        return Err(ParseDiagnostic::at(
                            self.peek(),
                            format!("language tag @{tag} is not supported"),
                        ))
                    }
                    Tok::Punct("^^") => {
                        self.next();
                        let dt_tok = self.next();
                        let dt = self.iri(&dt_tok)?;
                        let datatype = Datatype::from_iri(dt.as_iri().unwrap_or_default())
                            .map_err(|e| ParseDiagnostic::at(&dt_tok, e))?;
                        Term::literal(&value, datatype).map_err(|e| ParseDiagnostic::at(&t, e))?
                    }
                    _ => Term::string(&value),
                }
            }
            _ => {
                return Err(ParseDiagnostic::at(
                    &t,
                    format!("expected a term, found {}", t.describe()),
                ))
            }
        };
        Ok(PatternTerm::Const(term))
    }

    fn iri(&self, t: &Token) -> PResult<Term> {
        let iri = match &t.tok {
            Tok::IriRef(iri) => iri.clone(),
            Tok::PName { prefix, local } => {
                let ns = self.prefixes.get(prefix).ok_or_else(|| {
                    ParseDiagnostic::at(t, format!("undeclared prefix '{prefix}:'"))
                })?;
                format!("{ns}{local}")
            }
            _ => {
                return Err(ParseDiagnostic::at(
                    t,
                    format!("expected an IRI, found {}", t.describe()),
                ))
            }
        };
        Term::try_iri(&iri).map_err(|e| ParseDiagnostic::at(t, e))
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut left = self.primary_expr()?;
        while self.peek().is_punct("||") {
            self.next();
            let right = self.primary_expr()?;
            left = Expr::Or(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn primary_expr(&mut self) -> PResult<Expr> {
        if self.peek().is_punct("(") {
            self.next();
            let e = self.expr()?;
            self.expect_punct(")")?;
            return Ok(e);
        }
        let start = self.peek().clone();
        let left = self.operand()?;
        if !self.peek().is_punct("=") {
            return Err(self.error_here("'='"));
        }
        self.next();
        let right = self.operand()?;
        if left.as_var().is_none() && right.as_var().is_none() {
            return Err(ParseDiagnostic::at(
                &start,
                "a comparison needs at least one variable",
            ));
        }
        Ok(Expr::Eq(left, right))
    }
}

enum Verb {
    Plain(PatternTerm),
    Path(Term),
}

/// Variables of `group` that no pattern in scope could ever bind.
pub(crate) fn unbindable_filter_variables(group: &GroupPattern) -> BTreeSet<Variable> {
    fn walk(group: &GroupPattern, outer: &BTreeSet<Variable>, out: &mut BTreeSet<Variable>) {
        let mut scope = outer.clone();
        scope.extend(group.bindable_variables());
        for e in &group.elements {
            match e {
                Element::Filter(x) => out.extend(
                    x.variables()
                        .into_iter()
                        .filter(|v| !scope.contains(*v))
                        .cloned(),
                ),
                Element::NotExists(g) | Element::Optional(g) => walk(g, &scope, out),
                _ => {}
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(group, &BTreeSet::new(), &mut out);
    out
}
