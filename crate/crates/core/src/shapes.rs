//! A compact shape language and a validator for it.
//!
//! ```text
//! prefix dingo: <https://w3id.org/dingo#>
//! prefix foaf: <http://xmlns.com/foaf/0.1/>
//!
//! # comment
//! shape Grant target dingo:Grant {
//!     dingo:has_beneficiary class foaf:Agent + ;
//!     dingo:funds @Project * ;
//!     dingo:award_date datatype xsd:date | xsd:gYear ?
//! }
//! ```
//!
//! A shape block is `shape NAME [target CLASS (, CLASS)*] [closed] { constraints }`.
//! Each constraint is `PREDICATE CHECK [CARD]`, separated by `;`. Checks are
//! `any`, `iri`, `datatype DT (| DT)*`, `class CLASS` and `@NAME`. Cardinalities
//! are `?`, `*`, `+`, `{m}`, `{m,n}` and `{m,*}`; the default is `{1}`. `a`
//! abbreviates `rdf:type`, and `rdf:`, `rdfs:`, `xsd:`, `owl:` are predeclared.
//!
//! Shape references are shallow: a value satisfies `@S` when it is typed
//! (with subsumption) by one of the classes `S` targets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::rdf::vocab::{owl, rdf, rdfs, xsd};
use crate::rdf::{Graph, Iri, Term};
use crate::vocab::{Dingo, OntologySchema, FOAF_AGENT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct ShapeError {
    pub line: usize,
    pub column: usize,
    pub kind: ShapeErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeErrorKind {
    #[error("expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("undefined prefix '{0}'")]
    UndefinedPrefix(String),
    #[error("invalid IRI <{0}>")]
    InvalidIri(String),
    #[error("reference to undefined shape @{0}")]
    UnresolvedShapeRef(String),
    #[error("shape {0} is defined twice")]
    DuplicateShape(String),
    #[error("predicate {0} is constrained twice in one shape")]
    DuplicatePredicate(String),
    #[error("cardinality minimum {min} exceeds maximum {max}")]
    BadCardinality { min: u32, max: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "arg", rename_all = "kebab-case")]
pub enum ValueCheck {
    Any,
    IriKind,
    /// A literal whose datatype is one of the set.
    LiteralOfDatatype(BTreeSet<Iri>),
    NodeOfClass(Iri),
    ShapeRef(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleConstraint {
    pub predicate: Iri,
    pub min: u32,
    /// `None` is unbounded.
    pub max: Option<u32>,
    pub check: ValueCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Shape {
    pub name: String,
    pub constraints: Vec<TripleConstraint>,
    pub closed: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ShapeSchema {
    pub shapes: BTreeMap<String, Shape>,
    /// Sorted by class, then shape name.
    pub target_map: Vec<(Iri, String)>,
    /// Prefixes used when writing the schema back out.
    #[serde(skip)]
    pub prefixes: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationCode {
    MissingRequired,
    CardinalityExceeded,
    WrongValueKind,
    WrongDatatype,
    WrongClass,
    ClosedShapeExtraPredicate,
    DanglingShapeRef,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::MissingRequired => "missing-required",
            ViolationCode::CardinalityExceeded => "cardinality-exceeded",
            ViolationCode::WrongValueKind => "wrong-value-kind",
            ViolationCode::WrongDatatype => "wrong-datatype",
            ViolationCode::WrongClass => "wrong-class",
            ViolationCode::ClosedShapeExtraPredicate => "closed-shape-extra-predicate",
            ViolationCode::DanglingShapeRef => "dangling-shape-ref",
        }
    }
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Field order is the report order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub focus: Term,
    pub predicate: Iri,
    pub code: ViolationCode,
    pub shape: String,
    pub value: Option<Term>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub conformant: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    /// One tab-separated line per violation: focus, shape, predicate, code,
    /// offending value (`-` when the violation concerns a count) and message.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in &self.violations {
            let value = v.value.as_ref().map_or_else(|| "-".to_owned(), ToString::to_string);
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                v.focus, v.shape, v.predicate, v.code, value, v.message
            ));
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Iri(String),
    Punct(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::Iri(i) => write!(f, "<{i}>"),
            Tok::Punct(c) => write!(f, "'{c}'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '.')
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, line: usize, column: usize, kind: ShapeErrorKind) -> ShapeError {
        ShapeError { line, column, kind }
    }

    fn next(&mut self) -> Result<(Tok, usize, usize), ShapeError> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => {
                    while self.chars.peek().is_some_and(|&c| c != '\n') {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let Some(&c) = self.chars.peek() else {
            return Ok((Tok::Eof, line, column));
        };
        if c == '<' {
            self.bump();
            let mut s = String::new();
            loop {
                match self.bump() {
                    Some('>') => break,
                    Some(c) if c.is_whitespace() || c == '<' => {
                        return Err(self.err(line, column, ShapeErrorKind::InvalidIri(s)));
                    }
                    Some(c) => s.push(c),
                    None => {
                        return Err(self.err(
                            line,
                            column,
                            ShapeErrorKind::Syntax {
                                expected: "'>'".into(),
                                found: "end of input".into(),
                            },
                        ))
                    }
                }
            }
            return Ok((Tok::Iri(s), line, column));
        }
        if is_word_char(c) {
            let mut s = String::new();
            while let Some(&c) = self.chars.peek() {
                if !is_word_char(c) {
                    break;
                }
                s.push(c);
                self.bump();
            }
            return Ok((Tok::Word(s), line, column));
        }
        self.bump();
        if matches!(c, '{' | '}' | ';' | ',' | '|' | '@' | '?' | '*' | '+') {
            Ok((Tok::Punct(c), line, column))
        } else {
            Err(self.err(
                line,
                column,
                ShapeErrorKind::Syntax {
                    expected: "a token".into(),
                    found: format!("'{c}'"),
                },
            ))
        }
    }
}

/// A shape reference with the line and column it appeared at.
type ShapeRefAt = (String, usize, usize);

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    line: usize,
    column: usize,
    prefixes: BTreeMap<String, String>,
    declared: BTreeMap<String, String>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, ShapeError> {
        let mut lexer = Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        };
        let (tok, line, column) = lexer.next()?;
        let prefixes = [("rdf", rdf::NS), ("rdfs", rdfs::NS), ("xsd", xsd::NS), ("owl", owl::NS)]
            .into_iter()
            .map(|(p, n)| (p.to_owned(), n.to_owned()))
            .collect();
        Ok(Parser {
            lexer,
            tok,
            line,
            column,
            prefixes,
            declared: BTreeMap::new(),
        })
    }

    fn advance(&mut self) -> Result<Tok, ShapeError> {
        let (tok, line, column) = self.lexer.next()?;
        self.line = line;
        self.column = column;
        Ok(std::mem::replace(&mut self.tok, tok))
    }

    fn err(&self, kind: ShapeErrorKind) -> ShapeError {
        ShapeError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &str) -> ShapeError {
        self.err(ShapeErrorKind::Syntax {
            expected: expected.into(),
            found: self.tok.to_string(),
        })
    }

    fn eat_punct(&mut self, c: char) -> Result<bool, ShapeError> {
        if self.tok == Tok::Punct(c) {
            self.advance()?;
            Ok(true)
        } else {
            Ok(false)
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ShapeError> {
        if !self.eat_punct(c)? {
            return Err(self.unexpected(&format!("'{c}'")));
        }
        Ok(())
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(&self.tok, Tok::Word(x) if x == w)
    }

    fn name(&mut self) -> Result<String, ShapeError> {
        match &self.tok {
            Tok::Word(w) if is_name(w) => {
                let w = w.clone();
                self.advance()?;
                Ok(w)
            }
            _ => Err(self.unexpected("a shape name")),
        }
    }

    fn iri(&mut self) -> Result<Iri, ShapeError> {
        let iri = match &self.tok {
            Tok::Iri(s) => Iri::new(s.clone()).map_err(|_| self.err(ShapeErrorKind::InvalidIri(s.clone())))?,
            Tok::Word(w) if w == "a" => rdf::type_(),
            Tok::Word(w) if w.contains(':') => {
                let (p, local) = w.split_once(':').expect("contains ':'");
                let ns = self
                    .prefixes
                    .get(p)
                    .ok_or_else(|| self.err(ShapeErrorKind::UndefinedPrefix(p.to_owned())))?;
                let full = format!("{ns}{local}");
                Iri::new(full.clone()).map_err(|_| self.err(ShapeErrorKind::InvalidIri(full)))?
            }
            _ => return Err(self.unexpected("an IRI")),
        };
        self.advance()?;
        Ok(iri)
    }

    fn number(&mut self) -> Result<u32, ShapeError> {
        match &self.tok {
            Tok::Word(w) if !w.is_empty() && w.bytes().all(|b| b.is_ascii_digit()) => {
                let n = w.parse().map_err(|_| self.unexpected("a number"))?;
                self.advance()?;
                Ok(n)
            }
            _ => Err(self.unexpected("a number")),
        }
    }

    fn document(mut self) -> Result<(ShapeSchema, Vec<ShapeRefAt>), ShapeError> {
        let mut schema = ShapeSchema::default();
        let mut refs = Vec::new();
        loop {
            if self.tok == Tok::Eof {
                break;
            } else if self.is_word("prefix") {
                self.advance()?;
                let p = match &self.tok {
                    Tok::Word(w) if w.ends_with(':') && w.matches(':').count() == 1 => w.trim_end_matches(':').to_owned(),
                    _ => return Err(self.unexpected("a prefix name ending in ':'")),
                };
                self.advance()?;
                let ns = match &self.tok {
                    Tok::Iri(s) => s.clone(),
                    _ => return Err(self.unexpected("a namespace IRI")),
                };
                self.advance()?;
                self.prefixes.insert(p.clone(), ns.clone());
                self.declared.insert(p, ns);
            } else if self.is_word("shape") {
                let (line, column) = (self.line, self.column);
                self.advance()?;
                let name = self.name()?;
                if schema.shapes.contains_key(&name) {
                    return Err(ShapeError {
                        line,
                        column,
                        kind: ShapeErrorKind::DuplicateShape(name),
                    });
                }
                if self.is_word("target") {
                    self.advance()?;
                    loop {
                        let class = self.iri()?;
                        schema.target_map.push((class, name.clone()));
                        if !self.eat_punct(',')? {
                            break;
                        }
                    }
                }
                let closed = self.is_word("closed");
                if closed {
                    self.advance()?;
                }
                self.expect_punct('{')?;
                let mut constraints: Vec<TripleConstraint> = Vec::new();
                while self.tok != Tok::Punct('}') {
                    let (pl, pc) = (self.line, self.column);
                    let c = self.constraint(&mut refs)?;
                    if constraints.iter().any(|x| x.predicate == c.predicate) {
                        return Err(ShapeError {
                            line: pl,
                            column: pc,
                            kind: ShapeErrorKind::DuplicatePredicate(c.predicate.to_string()),
                        });
                    }
                    constraints.push(c);
                    if !self.eat_punct(';')? {
                        break;
                    }
                }
                self.expect_punct('}')?;
                schema.shapes.insert(name.clone(), Shape { name, constraints, closed });
            } else {
                return Err(self.unexpected("'prefix' or 'shape'"));
            }
        }
        schema.prefixes = self.declared;
        schema.target_map.sort();
        schema.target_map.dedup();
        Ok((schema, refs))
    }

    fn constraint(&mut self, refs: &mut Vec<(String, usize, usize)>) -> Result<TripleConstraint, ShapeError> {
        let predicate = self.iri()?;
        let check = if self.is_word("any") {
            self.advance()?;
            ValueCheck::Any
        } else if self.is_word("iri") {
            self.advance()?;
            ValueCheck::IriKind
        } else if self.is_word("datatype") {
            self.advance()?;
            let mut set = BTreeSet::from([self.iri()?]);
            while self.eat_punct('|')? {
                set.insert(self.iri()?);
            }
            ValueCheck::LiteralOfDatatype(set)
        } else if self.is_word("class") {
            self.advance()?;
            ValueCheck::NodeOfClass(self.iri()?)
        } else if self.tok == Tok::Punct('@') {
            self.advance()?;
            let (line, column) = (self.line, self.column);
            let name = self.name()?;
            refs.push((name.clone(), line, column));
            ValueCheck::ShapeRef(name)
        } else {
            return Err(self.unexpected("a value check (any, iri, datatype, class or @shape)"));
        };
        let (line, column) = (self.line, self.column);
        let (min, max) = match &self.tok {
            Tok::Punct('?') => (0, Some(1)),
            Tok::Punct('*') => (0, None),
            Tok::Punct('+') => (1, None),
            Tok::Punct('{') => {
                self.advance()?;
                let min = self.number()?;
                let max = if !self.eat_punct(',')? {
                    Some(min)
                } else if self.eat_punct('*')? {
                    None
                } else {
                    let n = self.number()?;
                    if n < min {
                        return Err(ShapeError {
                            line,
                            column,
                            kind: ShapeErrorKind::BadCardinality { min, max: n },
                        });
                    }
                    Some(n)
                };
                if self.tok != Tok::Punct('}') {
                    return Err(self.unexpected("'}'"));
                }
                (min, max)
            }
            _ => {
                return Ok(TripleConstraint {
                    predicate,
                    min: 1,
                    max: Some(1),
                    check,
                })
            }
        };
        self.advance()?;
        Ok(TripleConstraint { predicate, min, max, check })
    }
}

fn is_name(w: &str) -> bool {
    let mut chars = w.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '-')
}

pub fn parse_shapes(text: &str) -> Result<ShapeSchema, ShapeError> {
    let (schema, refs) = Parser::new(text)?.document()?;
    for (name, line, column) in refs {
        if !schema.shapes.contains_key(&name) {
            return Err(ShapeError {
                line,
                column,
                kind: ShapeErrorKind::UnresolvedShapeRef(name),
            });
        }
    }
    Ok(schema)
}

// ---------------------------------------------------------------------------
// Writing

fn write_iri(iri: &Iri, prefixes: &BTreeMap<String, String>) -> String {
    if iri.as_str() == rdf::TYPE {
        return "a".into();
    }
    let best = prefixes
        .iter()
        .filter(|(_, ns)| iri.as_str().starts_with(ns.as_str()))
        .max_by_key(|(_, ns)| ns.len());
    if let Some((p, ns)) = best {
        let local = &iri.as_str()[ns.len()..];
        if !local.is_empty() && local.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '-') {
            return format!("{p}:{local}");
        }
    }
    iri.to_string()
}

impl fmt::Display for ShapeSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut prefixes: BTreeMap<String, String> =
            [("rdf", rdf::NS), ("rdfs", rdfs::NS), ("xsd", xsd::NS), ("owl", owl::NS)]
                .into_iter()
                .map(|(p, n)| (p.to_owned(), n.to_owned()))
                .collect();
        prefixes.extend(self.prefixes.clone());
        for (p, ns) in &self.prefixes {
            writeln!(f, "prefix {p}: <{ns}>")?;
        }
        for shape in self.shapes.values() {
            writeln!(f)?;
            write!(f, "shape {}", shape.name)?;
            let targets: Vec<String> = self
                .target_map
                .iter()
                .filter(|(_, n)| *n == shape.name)
                .map(|(c, _)| write_iri(c, &prefixes))
                .collect();
            if !targets.is_empty() {
                write!(f, " target {}", targets.join(", "))?;
            }
            if shape.closed {
                write!(f, " closed")?;
            }
            writeln!(f, " {{")?;
            for (i, c) in shape.constraints.iter().enumerate() {
                let check = match &c.check {
                    ValueCheck::Any => "any".to_owned(),
                    ValueCheck::IriKind => "iri".to_owned(),
                    ValueCheck::LiteralOfDatatype(set) => format!(
                        "datatype {}",
                        set.iter().map(|d| write_iri(d, &prefixes)).collect::<Vec<_>>().join(" | ")
                    ),
                    ValueCheck::NodeOfClass(cl) => format!("class {}", write_iri(cl, &prefixes)),
                    ValueCheck::ShapeRef(n) => format!("@{n}"),
                };
                let card = match (c.min, c.max) {
                    (1, Some(1)) => String::new(),
                    (0, Some(1)) => " ?".into(),
                    (0, None) => " *".into(),
                    (1, None) => " +".into(),
                    (m, None) => format!(" {{{m},*}}"),
                    (m, Some(n)) if m == n => format!(" {{{m}}}"),
                    (m, Some(n)) => format!(" {{{m},{n}}}"),
                };
                let sep = if i + 1 < shape.constraints.len() { " ;" } else { "" };
                writeln!(f, "    {} {check}{card}{sep}", write_iri(&c.predicate, &prefixes))?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Validation

struct Checker<'a> {
    data: &'a Graph,
    schema: &'a OntologySchema,
    shapes: &'a ShapeSchema,
}

impl Checker<'_> {
    fn targets_of(&self, shape: &str) -> Vec<&Iri> {
        self.shapes
            .target_map
            .iter()
            .filter(|(_, n)| n == shape)
            .map(|(c, _)| c)
            .collect()
    }

    fn check_value(&self, value: &Term, check: &ValueCheck) -> Option<(ViolationCode, String)> {
        match check {
            ValueCheck::Any => None,
            ValueCheck::IriKind => (!value.is_iri()).then(|| (ViolationCode::WrongValueKind, "expected an IRI".to_owned())),
            ValueCheck::LiteralOfDatatype(set) => match value.as_literal() {
                None => Some((ViolationCode::WrongValueKind, "expected a literal".to_owned())),
                Some(l) if !set.contains(l.datatype()) => Some((
                    ViolationCode::WrongDatatype,
                    format!(
                        "datatype {} is not one of {}",
                        l.datatype(),
                        set.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
                    ),
                )),
                Some(_) => None,
            },
            ValueCheck::NodeOfClass(class) => {
                if value.is_literal() {
                    Some((ViolationCode::WrongValueKind, "expected a node, found a literal".to_owned()))
                } else if !self.schema.has_type(self.data, value, class) {
                    Some((ViolationCode::WrongClass, format!("value is not an instance of {class}")))
                } else {
                    None
                }
            }
            ValueCheck::ShapeRef(name) => {
                let targets = self.targets_of(name);
                if !self.shapes.shapes.contains_key(name) || targets.is_empty() {
                    Some((ViolationCode::DanglingShapeRef, format!("shape @{name} is undefined or has no target")))
                } else if value.is_literal() {
                    Some((ViolationCode::WrongValueKind, "expected a node, found a literal".to_owned()))
                } else if !targets.iter().any(|c| self.schema.has_type(self.data, value, c)) {
                    Some((ViolationCode::WrongClass, format!("value is not typed for shape @{name}")))
                } else {
                    None
                }
            }
        }
    }

    fn check_node(&self, node: &Term, shape: &Shape, out: &mut Vec<Violation>) {
        let violation = |predicate: &Iri, code, value: Option<&Term>, message: String| Violation {
            focus: node.clone(),
            predicate: predicate.clone(),
            code,
            shape: shape.name.clone(),
            value: value.cloned(),
            message,
        };
        for c in &shape.constraints {
            let values: Vec<&Term> = self.data.objects(node, &c.predicate).collect();
            let n = values.len() as u32;
            if n < c.min {
                out.push(violation(
                    &c.predicate,
                    ViolationCode::MissingRequired,
                    None,
                    format!("found {n} value(s), at least {} required", c.min),
                ));
            }
            if let Some(max) = c.max.filter(|&m| n > m) {
                out.push(violation(
                    &c.predicate,
                    ViolationCode::CardinalityExceeded,
                    None,
                    format!("found {n} value(s), at most {max} allowed"),
                ));
            }
            for v in values {
                if let Some((code, msg)) = self.check_value(v, &c.check) {
                    out.push(violation(&c.predicate, code, Some(v), msg));
                }
            }
        }
        if shape.closed {
            let allowed: BTreeSet<&Iri> = shape.constraints.iter().map(|c| &c.predicate).collect();
            let rdf_type = rdf::type_();
            let extra: BTreeSet<&Iri> = self
                .data
                .about(node)
                .map(|t| t.predicate())
                .filter(|p| **p != rdf_type && !allowed.contains(p))
                .collect();
            for p in extra {
                out.push(violation(
                    p,
                    ViolationCode::ClosedShapeExtraPredicate,
                    None,
                    "predicate not allowed by closed shape".to_owned(),
                ));
            }
        }
    }
}

/// Checks every instance of every targeted class against its shape.
pub fn validate(data: &Graph, s: &OntologySchema, shapes: &ShapeSchema) -> ValidationReport {
    let checker = Checker { data, schema: s, shapes };
    let mut out = Vec::new();
    for (class, name) in &shapes.target_map {
        let Some(shape) = shapes.shapes.get(name) else {
            continue;
        };
        for node in s.instances_of_lenient(data, class) {
            checker.check_node(&node, shape, &mut out);
        }
    }
    out.sort();
    out.dedup();
    ValidationReport {
        conformant: out.is_empty(),
        violations: out,
    }
}

// ---------------------------------------------------------------------------
// Built-in DINGO shapes

/// Shapes for the principal DINGO classes, minted against the schema's own namespace.
pub fn default_dingo_shapes(s: &OntologySchema) -> ShapeSchema {
    let d = s
        .own_namespace()
        .and_then(|ns| Dingo::new(ns).ok())
        .unwrap_or_default();
    let dates: BTreeSet<Iri> = [xsd::date(), xsd::g_year_month(), xsd::g_year(), xsd::date_time()].into();
    let strings: BTreeSet<Iri> = [xsd::string(), rdf::lang_string()].into();
    let plain: BTreeSet<Iri> = [xsd::string()].into();
    let agent = Iri::new(FOAF_AGENT).expect("valid");

    let c = |predicate: Iri, check: ValueCheck, min: u32, max: Option<u32>| TripleConstraint { predicate, min, max, check };
    let many = |p: Iri, check: ValueCheck| c(p, check, 0, None);
    let opt = |p: Iri, check: ValueCheck| c(p, check, 0, Some(1));
    let date = |p: Iri| opt(p, ValueCheck::LiteralOfDatatype(dates.clone()));
    let text = |p: Iri| many(p, ValueCheck::LiteralOfDatatype(strings.clone()));
    let id = |p: Iri| opt(p, ValueCheck::LiteralOfDatatype(plain.clone()));
    let r = |n: &str| ValueCheck::ShapeRef(n.to_owned());

    let shapes = vec![
        (
            "Project",
            d.project(),
            vec![
                text(d.title()),
                id(d.term("project_acronym")),
                date(d.start_time()),
                date(d.end_time()),
                date(d.inception()),
                many(d.is_funded_by(), r("Grant")),
                many(d.has_participant(), ValueCheck::NodeOfClass(agent.clone())),
                many(d.has_participation(), ValueCheck::Any),
                many(d.term("has_subproject"), r("Project")),
                many(d.product_or_material_produced(), ValueCheck::Any),
            ],
        ),
        (
            "Grant",
            d.grant(),
            vec![
                c(d.has_beneficiary(), ValueCheck::NodeOfClass(agent.clone()), 1, None),
                many(d.funds(), r("Project")),
                text(d.title()),
                id(d.term("grant_identifier")),
                date(d.start_time()),
                date(d.end_time()),
                date(d.award_date()),
                many(d.has_funding_scheme(), r("FundingScheme")),
                many(d.has_funding_agency(), r("FundingAgency")),
            ],
        ),
        (
            "FundingAgency",
            d.funding_agency(),
            vec![text(d.title()), many(d.term("administers"), r("Grant")), many(d.term("disburses"), ValueCheck::Any)],
        ),
        (
            "FundingScheme",
            d.funding_scheme(),
            vec![
                text(d.title()),
                many(d.is_subscheme_of(), r("FundingScheme")),
                many(d.has_subscheme(), r("FundingScheme")),
                many(d.has_criterion(), r("Criterion")),
                many(d.has_funding_agency(), r("FundingAgency")),
            ],
        ),
        ("Role", d.role(), vec![text(rdfs::label())]),
        (
            "Person",
            d.person(),
            vec![
                opt(d.term("given_name"), ValueCheck::LiteralOfDatatype(strings.clone())),
                opt(d.term("family_name"), ValueCheck::LiteralOfDatatype(strings.clone())),
                id(d.term("orcid")),
                many(d.term("affiliated_with"), ValueCheck::NodeOfClass(d.organisation())),
            ],
        ),
        (
            "Organisation",
            d.organisation(),
            vec![
                text(rdfs::label()),
                id(d.term("ror_id")),
                many(d.term("has_country"), ValueCheck::IriKind),
                many(d.term("has_parent_organisation"), r("Organisation")),
            ],
        ),
        (
            "Criterion",
            d.criterion(),
            vec![
                opt(d.term("eligibility_description"), ValueCheck::LiteralOfDatatype(strings.clone())),
                many(d.is_criterion_of(), r("FundingScheme")),
            ],
        ),
    ];

    let mut schema = ShapeSchema::default();
    schema.prefixes.insert("dingo".into(), d.base().to_owned());
    schema.prefixes.insert("foaf".into(), "http://xmlns.com/foaf/0.1/".into());
    for (name, target, constraints) in shapes {
        schema.target_map.push((target, name.to_owned()));
        schema.shapes.insert(
            name.to_owned(),
            Shape {
                name: name.to_owned(),
                constraints,
                closed: false,
            },
        );
    }
    schema.target_map.sort();
    schema
}
