use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("IRI must not be empty")]
    EmptyIri,
    #[error("IRI contains forbidden character {1:?}: {0}")]
    InvalidIri(String, char),
    #[error("blank node label {0:?} is not valid")]
    InvalidBlank(String),
    #[error("unsupported datatype <{0}>")]
    UnsupportedDatatype(String),
    #[error("{lexical:?} is not a valid {datatype} literal")]
    InvalidLexical {
        lexical: String,
        datatype: &'static str,
    },
    #[error("{0} cannot be used in predicate position")]
    InvalidPredicate(String),
    #[error("literal {0} cannot be used in subject position")]
    LiteralSubject(String),
}

/// Literal datatypes understood by the store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Datatype {
    String,
    Boolean,
    Integer,
}

impl Datatype {
    pub fn iri(self) -> &'static str {
        match self {
            Datatype::String => XSD_STRING,
            Datatype::Boolean => XSD_BOOLEAN,
            Datatype::Integer => XSD_INTEGER,
        }
    }

    pub fn from_iri(iri: &str) -> Result<Self, TermError> {
        match iri {
            XSD_STRING => Ok(Datatype::String),
            XSD_BOOLEAN => Ok(Datatype::Boolean),
            XSD_INTEGER => Ok(Datatype::Integer),
            other => Err(TermError::UnsupportedDatatype(other.to_string())),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Datatype::String => "xsd:string",
            Datatype::Boolean => "xsd:boolean",
            Datatype::Integer => "xsd:integer",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Datatype,
}

impl Literal {
    /// Validates `lexical` against `datatype`. Boolean forms are matched
    /// case-insensitively and normalized to lowercase.
    pub fn new(lexical: &str, datatype: Datatype) -> Result<Self, TermError> {
        let lexical: Arc<str> = match datatype {
            Datatype::String => lexical.into(),
            Datatype::Boolean => {
                if lexical.eq_ignore_ascii_case("true") {
                    "true".into()
                } else if lexical.eq_ignore_ascii_case("false") {
                    "false".into()
                } else {
                    return Err(TermError::InvalidLexical {
                        lexical: lexical.to_string(),
                        datatype: datatype.name(),
                    });
                }
            }
            Datatype::Integer => {
                let digits = lexical.strip_prefix(['+', '-']).unwrap_or(lexical);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(TermError::InvalidLexical {
                        lexical: lexical.to_string(),
                        datatype: datatype.name(),
                    });
                }
                lexical.into()
            }
        };
        Ok(Literal { lexical, datatype })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> Datatype {
        self.datatype
    }

    pub fn as_bool(&self) -> Option<bool> {
        match (self.datatype, &*self.lexical) {
            (Datatype::Boolean, "true") => Some(true),
            (Datatype::Boolean, "false") => Some(false),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TermKind {
    Iri,
    Blank,
    Literal,
}

/// An RDF term. Ordering is canonical: IRIs, then blank nodes, then
/// literals, each compared byte-wise on their N-Triples serialization.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Iri(Arc<str>),
    Blank(Arc<str>),
    Literal(Literal),
}

fn iri_forbidden(c: char) -> bool {
    c.is_whitespace() || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}

impl Term {
    /// Builds an IRI term from trusted text such as vocabulary constants.
    pub fn iri(iri: impl Into<Arc<str>>) -> Self {
        let iri = iri.into();
        debug_assert!(validate_iri(&iri).is_ok(), "invalid IRI {iri:?}");
        Term::Iri(iri)
    }

    pub fn try_iri(iri: &str) -> Result<Self, TermError> {
        validate_iri(iri)?;
        Ok(Term::Iri(iri.into()))
    }

    pub fn blank(label: &str) -> Result<Self, TermError> {
        let valid = !label.is_empty()
            && label
                .chars()
                .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
            && !label.ends_with('.');
        if valid {
            Ok(Term::Blank(label.into()))
        } else {
            Err(TermError::InvalidBlank(label.to_string()))
        }
    }

    pub fn literal(lexical: &str, datatype: Datatype) -> Result<Self, TermError> {
        Literal::new(lexical, datatype).map(Term::Literal)
    }

    pub fn string(value: &str) -> Self {
        Term::Literal(Literal {
            lexical: value.into(),
            datatype: Datatype::String,
        })
    }

    pub fn boolean(value: bool) -> Self {
        Term::Literal(Literal {
            lexical: if value { "true" } else { "false" }.into(),
            datatype: Datatype::Boolean,
        })
    }

    pub fn integer(value: i64) -> Self {
        Term::Literal(Literal {
            lexical: value.to_string().into(),
            datatype: Datatype::Integer,
        })
    }

    pub fn kind(&self) -> TermKind {
        match self {
            Term::Iri(_) => TermKind::Iri,
            Term::Blank(_) => TermKind::Blank,
            Term::Literal(_) => TermKind::Literal,
        }
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    /// Text after the last `#`, `/` or `:` of an IRI, or the blank label.
    pub fn local_name(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => {
                let cut = iri.rfind(['#', '/', ':']).map_or(0, |i| i + 1);
                Some(&iri[cut..])
            }
            Term::Blank(label) => Some(label),
            Term::Literal(_) => None,
        }
    }
}

pub fn validate_iri(iri: &str) -> Result<(), TermError> {
    if iri.is_empty() {
        return Err(TermError::EmptyIri);
    }
    match iri.chars().find(|&c| iri_forbidden(c)) {
        Some(c) => Err(TermError::InvalidIri(iri.to_string(), c)),
        None => Ok(()),
    }
}

pub(crate) fn escape_string(value: &str, out: &mut String) {
    for c in value.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::with_capacity(self.lexical.len() + 2);
        out.push('"');
        escape_string(&self.lexical, &mut out);
        out.push('"');
        f.write_str(&out)?;
        match self.datatype {
            Datatype::String => Ok(()),
            dt => write!(f, "^^<{}>", dt.iri()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => lit.fmt(f),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            // "<a>" vs "<b>": the shared leading '<' never decides, the closing '>' can.
            (Term::Iri(a), Term::Iri(b)) => a
                .bytes()
                .chain(std::iter::once(b'>'))
                .cmp(b.bytes().chain(std::iter::once(b'>'))),
            (Term::Blank(a), Term::Blank(b)) => a.cmp(b),
            (Term::Literal(a), Term::Literal(b)) => {
                if a == b {
                    Ordering::Equal
                } else {
                    a.to_string().cmp(&b.to_string())
                }
            }
            _ => self.kind().cmp(&other.kind()),
        }
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A subject-predicate-object statement. Fields are private so that every
/// triple has an IRI predicate and a non-literal subject.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    subject: Term,
    predicate: Term,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, TermError> {
        if subject.is_literal() {
            return Err(TermError::LiteralSubject(subject.to_string()));
        }
        if !predicate.is_iri() {
            return Err(TermError::InvalidPredicate(predicate.to_string()));
        }
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Term {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn into_parts(self) -> (Term, Term, Term) {
        (self.subject, self.predicate, self.object)
    }
}

impl fmt::Display for Triple {
    /// N-Triples line without the trailing newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
