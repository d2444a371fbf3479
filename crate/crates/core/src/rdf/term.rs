use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::vocab::{rdf, xsd};

/// Errors raised when constructing terms or triples that break the RDF data model.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TermError {
    #[error("IRI is not absolute (no scheme): {0:?}")]
    RelativeIri(String),
    #[error("IRI contains a forbidden character: {0:?}")]
    InvalidIriChar(String),
    #[error("blank node label must not be empty")]
    EmptyBlankLabel,
    #[error("language tag is malformed: {0:?}")]
    InvalidLanguageTag(String),
    #[error("a {0} cannot be used as a triple subject")]
    BadSubject(&'static str),
    #[error("a {0} cannot be used as a triple predicate")]
    BadPredicate(&'static str),
}

/// An absolute IRI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Iri(String);

impl Iri {
    pub fn new(value: impl Into<String>) -> Result<Self, TermError> {
        let value = value.into();
        if !has_scheme(&value) {
            return Err(TermError::RelativeIri(value));
        }
        if value
            .chars()
            .any(|c| matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') || c <= ' ')
        {
            return Err(TermError::InvalidIriChar(value));
        }
        Ok(Iri(value))
    }

    /// Builds an IRI from a constant known to be absolute.
    pub(crate) fn from_static(value: &str) -> Self {
        debug_assert!(has_scheme(value), "{value}");
        Iri(value.to_owned())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The part after the last `#` or `/`.
    pub fn local_name(&self) -> &str {
        let cut = self.0.rfind(['#', '/']).map_or(0, |i| i + 1);
        &self.0[cut..]
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

pub(crate) fn has_scheme(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

/// A literal: lexical form, datatype, and a language tag for `rdf:langString` only.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Literal {
    lexical: String,
    datatype: Iri,
    language: Option<String>,
}

impl Literal {
    pub fn string(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: xsd::string(),
            language: None,
        }
    }

    /// A typed literal. Passing `rdf:langString` here is allowed only through
    /// [`Literal::lang`]; it is rewritten to `xsd:string` otherwise.
    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        let datatype = if datatype == rdf::lang_string() {
            xsd::string()
        } else {
            datatype
        };
        Literal {
            lexical: lexical.into(),
            datatype,
            language: None,
        }
    }

    pub fn lang(lexical: impl Into<String>, tag: &str) -> Result<Self, TermError> {
        if !valid_language_tag(tag) {
            return Err(TermError::InvalidLanguageTag(tag.to_owned()));
        }
        Ok(Literal {
            lexical: lexical.into(),
            datatype: rdf::lang_string(),
            language: Some(tag.to_ascii_lowercase()),
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

pub(crate) fn valid_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let Some(first) = parts.next() else {
        return false;
    };
    (1..=8).contains(&first.len())
        && first.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| (1..=8).contains(&p.len()) && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

/// An RDF term. Variant order gives the canonical kind order: IRIs, then
/// blank nodes, then literals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(Iri),
    BlankNode(String),
    Literal(Literal),
}

/// Terms serialize as their N-Triples form.
impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Result<Self, TermError> {
        Iri::new(value).map(Term::from)
    }

    pub fn blank(label: impl Into<String>) -> Result<Self, TermError> {
        let label = label.into();
        if label.is_empty() {
            return Err(TermError::EmptyBlankLabel);
        }
        Ok(Term::BlankNode(label))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Term::Iri(_) => "IRI",
            Term::BlankNode(_) => "blank node",
            Term::Literal(_) => "literal",
        }
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

/// N-Triples style rendering, used in diagnostics and line-oriented reports.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "{iri}"),
            Term::BlankNode(label) => write!(f, "_:{label}"),
            Term::Literal(l) => {
                f.write_str("\"")?;
                f.write_str(&escape_string(&l.lexical))?;
                f.write_str("\"")?;
                match &l.language {
                    Some(tag) => write!(f, "@{tag}"),
                    None if l.datatype == xsd::string() => Ok(()),
                    None => write!(f, "^^{}", l.datatype),
                }
            }
        }
    }
}

pub(crate) fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// One RDF statement. Subjects are IRIs or blank nodes, predicates are IRIs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, TermError> {
        if subject.is_literal() {
            return Err(TermError::BadSubject(subject.kind_name()));
        }
        let predicate = match predicate {
            Term::Iri(iri) => iri,
            other => return Err(TermError::BadPredicate(other.kind_name())),
        };
        Ok(Triple {
            subject,
            predicate,
            object,
        })
    }

    /// Infallible constructor for a subject already known to be a non-literal.
    pub fn with_iri_predicate(subject: Term, predicate: Iri, object: Term) -> Result<Self, TermError> {
        Triple::new(subject, predicate.into(), object)
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn into_parts(self) -> (Term, Iri, Term) {
        (self.subject, self.predicate, self.object)
    }
}

/// Canonical order: subject, then predicate with `rdf:type` first, then object.
impl Ord for Triple {
    fn cmp(&self, other: &Self) -> Ordering {
        self.subject
            .cmp(&other.subject)
            .then_with(|| predicate_key(&self.predicate).cmp(&predicate_key(&other.predicate)))
            .then_with(|| self.object.cmp(&other.object))
    }
}

impl PartialOrd for Triple {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn predicate_key(p: &Iri) -> (bool, &str) {
    (p.as_str() != rdf::TYPE, p.as_str())
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
