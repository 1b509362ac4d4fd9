//! Turtle-subset parsing and canonical N-Triples serialization.
//!
//! Supported: `@prefix`, absolute (or base-relative) IRIs, prefixed names,
//! the keyword `a`, `;` and `,` abbreviations, string/boolean/integer
//! literals and `#` comments. Collections, blank-node property lists,
//! multiline strings and language tags are rejected.

use std::collections::HashMap;

use crate::rdf::{Datatype, Graph, Term, Triple};
use crate::syntax::{resolve_iri, tokenize, ParseDiagnostic, Tok, Token};

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const OWL_IMPORTS: &str = "http://www.w3.org/2002/07/owl#imports";

/// A parsed document and any non-fatal warnings.
#[derive(Debug, Clone, Default)]
pub struct TurtleDocument {
    pub graph: Graph,
    pub warnings: Vec<ParseDiagnostic>,
}

pub fn parse_turtle(text: &str, base: Option<&str>) -> Result<Graph, ParseDiagnostic> {
    parse_turtle_document(text, base).map(|doc| doc.graph)
}

pub fn parse_turtle_document(
    text: &str,
    base: Option<&str>,
) -> Result<TurtleDocument, ParseDiagnostic> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        prefixes: HashMap::new(),
        base: base.map(str::to_string),
        doc: TurtleDocument::default(),
    };
    parser.document()?;
    Ok(parser.doc)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: HashMap<String, String>,
    base: Option<String>,
    doc: TurtleDocument,
}

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

    fn expect_punct(&mut self, p: &str) -> Result<(), ParseDiagnostic> {
        if self.peek().is_punct(p) {
            self.next();
            Ok(())
        } else {
            let t = self.peek();
            Err(ParseDiagnostic::at(
                t,
                format!("expected '{p}', found {}", t.describe()),
            ))
        }
    }

    fn document(&mut self) -> Result<(), ParseDiagnostic> {
        loop {
            let t = self.peek().clone();
            match &t.tok {
                Tok::Eof => return Ok(()),
                Tok::AtWord(w) if w == "prefix" => {
                    self.next();
                    self.prefix_directive()?;
                }
                Tok::AtWord(w) => {
                    return Err(ParseDiagnostic::at(
                        &t,
                        format!("unsupported directive @{w}"),
                    ));
                }
                _ => {
                    self.triples()?;
                    self.expect_punct(".")?;
                }
            }
        }
    }

    fn prefix_directive(&mut self) -> Result<(), ParseDiagnostic> {
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
        let iri =
            resolve_iri(iri, self.base.as_deref()).map_err(|m| ParseDiagnostic::at(&iri_tok, m))?;
        self.prefixes.insert(prefix.clone(), iri);
        self.expect_punct(".")
    }

    fn triples(&mut self) -> Result<(), ParseDiagnostic> {
        let subject = self.subject()?;
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                self.emit(&subject, &predicate, object)?;
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
            // A trailing ';' before the terminator is allowed.
            if self.peek().is_punct(".") {
                return Ok(());
            }
        }
    }

    fn emit(
        &mut self,
        subject: &(Term, Token),
        predicate: &Term,
        object: Term,
    ) -> Result<(), ParseDiagnostic> {
        if predicate.as_iri() == Some(OWL_IMPORTS) {
            self.doc.warnings.push(ParseDiagnostic::at(
                &subject.1,
                format!("owl:imports {object} is not resolved"),
            ));
        }
        let triple = Triple::new(subject.0.clone(), predicate.clone(), object)
            .map_err(|e| ParseDiagnostic::at(&subject.1, e))?;
        self.doc.graph.insert(triple);
        Ok(())
    }

    fn subject(&mut self) -> Result<(Term, Token), ParseDiagnostic> {
        let t = self.next();
        let term = match &t.tok {
            Tok::IriRef(_) | Tok::PName { .. } => self.iri_term(&t)?,
            Tok::Blank(label) => Term::blank(label).map_err(|e| ParseDiagnostic::at(&t, e))?,
            _ => return Err(self.unsupported(&t, "subject")),
        };
        Ok((term, t))
    }

    fn verb(&mut self) -> Result<Term, ParseDiagnostic> {
        let t = self.next();
        match &t.tok {
            Tok::Word(w) if w == "a" => Ok(Term::iri(RDF_TYPE)),
            Tok::IriRef(_) | Tok::PName { .. } => self.iri_term(&t),
            _ => Err(self.unsupported(&t, "predicate")),
        }
    }

    fn object(&mut self) -> Result<Term, ParseDiagnostic> {
        let t = self.next();
        match &t.tok {
            Tok::IriRef(_) | Tok::PName { .. } => self.iri_term(&t),
            Tok::Blank(label) => Term::blank(label).map_err(|e| ParseDiagnostic::at(&t, e)),
            Tok::Integer(lex) => {
                Term::literal(lex, Datatype::Integer).map_err(|e| ParseDiagnostic::at(&t, e))
            }
            Tok::Word(w) if w.eq_ignore_ascii_case("true") || w.eq_ignore_ascii_case("false") => {
                Term::literal(w, Datatype::Boolean).map_err(|e| ParseDiagnostic::at(&t, e))
            }
            Tok::Str(value) => {
                let value = value.clone();
                match &self.peek().tok {
                    Tok::AtWord(tag) => Err(ParseDiagnostic::at(
                        self.peek(),
                        format!("language tag @{tag} is not supported"),
                    )),
                    Tok::Punct("^^") => {
                        self.next();
                        let dt_tok = self.next();
                        let dt = self.iri_term(&dt_tok)?;
                        let datatype = Datatype::from_iri(dt.as_iri().unwrap_or_default())
                            .map_err(|e| ParseDiagnostic::at(&dt_tok, e))?;
                        Term::literal(&value, datatype).map_err(|e| ParseDiagnostic::at(&t, e))
                    }
                    _ => Ok(Term::string(&value)),
                }
            }
            _ => Err(self.unsupported(&t, "object")),
        }
    }

    fn unsupported(&self, t: &Token, role: &str) -> ParseDiagnostic {
        let message = match &t.tok {
            Tok::Punct("[") => "blank node property lists are not supported".to_string(),
            Tok::Punct("(") => "collections are not supported".to_string(),
            _ => format!("expected {role}, found {}", t.describe()),
        };
        ParseDiagnostic::at(t, message)
    }

    fn iri_term(&self, t: &Token) -> Result<Term, ParseDiagnostic> {
        let iri = match &t.tok {
            Tok::IriRef(iri) => {
                resolve_iri(iri, self.base.as_deref()).map_err(|m| ParseDiagnostic::at(t, m))?
            }
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
}

/// One triple per line in canonical order, each line terminated by `\n`.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut out = String::new();
    for t in graph.iter() {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}
