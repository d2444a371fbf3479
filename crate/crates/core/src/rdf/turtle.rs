//! Turtle reader.
//!
//! Supported: `@prefix`/`@base` and SPARQL-style `PREFIX`/`BASE`, the `a`
//! keyword, predicate lists (`;`), object lists (`,`), anonymous blank nodes,
//! blank node property lists, collections, numeric and boolean shorthands,
//! short and long (triple-quoted) strings, language tags and datatyped
//! literals. IRIs are passed through without Unicode normalization.
//!
//! Blank node labels are not preserved: every blank node is renamed to
//! `b0`, `b1`, ... in order of first appearance.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::graph::Graph;
use super::term::{valid_language_tag, Iri, Literal, Term, Triple};
use super::vocab::{rdf, xsd};

/// Nesting limit for blank node property lists and collections.
pub const MAX_NESTING: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct TurtleError {
    /// 1-based line.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    pub kind: TurtleErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TurtleErrorKind {
    #[error("syntax error: expected {expected}, found {found}")]
    Syntax { expected: String, found: String },
    #[error("invalid token: {0}")]
    Lexical(String),
    #[error("undefined prefix {0:?}")]
    UndefinedPrefix(String),
    #[error("relative IRI <{0}> with no base IRI in scope")]
    RelativeIriWithoutBase(String),
    #[error("invalid IRI <{iri}>: {reason}")]
    InvalidIri { iri: String, reason: String },
    #[error("invalid language tag @{0}")]
    InvalidLanguageTag(String),
    #[error("nesting deeper than {MAX_NESTING} levels")]
    TooDeep,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    IriRef(String),
    PName { prefix: String, local: String },
    Blank(String),
    At(String),
    Str(String),
    Integer(String),
    Decimal(String),
    Double(String),
    Bool(bool),
    A,
    SparqlPrefix,
    SparqlBase,
    Dot,
    Semi,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Carets,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::IriRef(i) => write!(f, "<{i}>"),
            Tok::PName { prefix, local } => write!(f, "'{prefix}:{local}'"),
            Tok::Blank(l) => write!(f, "'_:{l}'"),
            Tok::At(w) => write!(f, "'@{w}'"),
            Tok::Str(s) => {
                let short: String = s.chars().take(20).collect();
                write!(f, "string \"{short}\"")
            }
            Tok::Integer(n) | Tok::Decimal(n) | Tok::Double(n) => write!(f, "number '{n}'"),
            Tok::Bool(b) => write!(f, "'{b}'"),
            Tok::A => f.write_str("'a'"),
            Tok::SparqlPrefix => f.write_str("'PREFIX'"),
            Tok::SparqlBase => f.write_str("'BASE'"),
            Tok::Dot => f.write_str("'.'"),
            Tok::Semi => f.write_str("';'"),
            Tok::Comma => f.write_str("','"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Carets => f.write_str("'^^'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    lookahead: Vec<char>,
    line: usize,
    column: usize,
}

fn is_pn_chars_base(c: char) -> bool {
    matches!(c,
        'A'..='Z' | 'a'..='z'
        | '\u{C0}'..='\u{D6}' | '\u{D8}'..='\u{F6}' | '\u{F8}'..='\u{2FF}'
        | '\u{370}'..='\u{37D}' | '\u{37F}'..='\u{1FFF}' | '\u{200C}'..='\u{200D}'
        | '\u{2070}'..='\u{218F}' | '\u{2C00}'..='\u{2FEF}' | '\u{3001}'..='\u{D7FF}'
        | '\u{F900}'..='\u{FDCF}' | '\u{FDF0}'..='\u{FFFD}' | '\u{10000}'..='\u{EFFFF}')
}

fn is_pn_chars_u(c: char) -> bool {
    is_pn_chars_base(c) || c == '_'
}

fn is_pn_chars(c: char) -> bool {
    is_pn_chars_u(c)
        || c == '-'
        || c.is_ascii_digit()
        || c == '\u{B7}'
        || ('\u{300}'..='\u{36F}').contains(&c)
        || ('\u{203F}'..='\u{2040}').contains(&c)
}

const LOCAL_ESCAPABLE: &str = "_~.-!$&'()*+,;=/?#@%";

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer {
            chars: input.chars().peekable(),
            lookahead: Vec::new(),
            line: 1,
            column: 1,
        }
    }

    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.peek_nth(0)
    }

    fn peek_nth(&mut self, n: usize) -> Option<char> {
        while self.lookahead.len() <= n {
            let c = self.chars.next()?;
            self.lookahead.push(c);
        }
        Some(self.lookahead[n])
    }

    fn bump(&mut self) -> Option<char> {
        let c = if self.lookahead.is_empty() {
            self.chars.next()?
        } else {
            self.lookahead.remove(0)
        };
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn err(&self, pos: Pos, kind: TurtleErrorKind) -> TurtleError {
        TurtleError {
            line: pos.line,
            column: pos.column,
            kind,
        }
    }

    fn lexical(&self, pos: Pos, msg: impl Into<String>) -> TurtleError {
        self.err(pos, TurtleErrorKind::Lexical(msg.into()))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn next_token(&mut self) -> Result<(Tok, Pos), TurtleError> {
        self.skip_ws();
        let pos = self.pos();
        let Some(c) = self.peek() else {
            return Ok((Tok::Eof, pos));
        };
        let tok = match c {
            '<' => {
                self.bump();
                Tok::IriRef(self.iri_body(pos)?)
            }
            '"' | '\'' => Tok::Str(self.string(pos)?),
            '@' => {
                self.bump();
                let mut word = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || (c == '-' && !word.is_empty()) {
                        word.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if word.is_empty() {
                    return Err(self.lexical(pos, "'@' must be followed by a keyword or language tag"));
                }
                Tok::At(word)
            }
            '_' if self.peek_nth(1) == Some(':') => {
                self.bump();
                self.bump();
                Tok::Blank(self.blank_label(pos)?)
            }
            '.' => {
                if self.peek_nth(1).is_some_and(|c| c.is_ascii_digit()) {
                    self.number(pos)?
                } else {
                    self.bump();
                    Tok::Dot
                }
            }
            '+' | '-' | '0'..='9' => self.number(pos)?,
            ';' => {
                self.bump();
                Tok::Semi
            }
            ',' => {
                self.bump();
                Tok::Comma
            }
            '[' => {
                self.bump();
                Tok::LBracket
            }
            ']' => {
                self.bump();
                Tok::RBracket
            }
            '(' => {
                self.bump();
                Tok::LParen
            }
            ')' => {
                self.bump();
                Tok::RParen
            }
            '^' => {
                self.bump();
                if self.bump() != Some('^') {
                    return Err(self.lexical(pos, "expected '^^'"));
                }
                Tok::Carets
            }
            c if c == ':' || is_pn_chars_base(c) => self.name(pos)?,
            other => return Err(self.lexical(pos, format!("unexpected character {other:?}"))),
        };
        Ok((tok, pos))
    }

    fn uchar(&mut self, pos: Pos, len: usize) -> Result<char, TurtleError> {
        let mut code = 0u32;
        for _ in 0..len {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.lexical(pos, "malformed \\u escape"))?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.lexical(pos, format!("escape U+{code:X} is not a character")))
    }

    fn iri_body(&mut self, pos: Pos) -> Result<String, TurtleError> {
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.lexical(pos, "unterminated IRI")),
                Some('>') => return Ok(out),
                Some('\\') => {
                    let c = match self.bump() {
                        Some('u') => self.uchar(pos, 4)?,
                        Some('U') => self.uchar(pos, 8)?,
                        _ => return Err(self.lexical(pos, "only \\u and \\U escapes are allowed in IRIs")),
                    };
                    if c <= ' ' || "<>\"{}|^`\\".contains(c) {
                        return Err(self.lexical(pos, format!("escaped character {c:?} is not allowed in IRIs")));
                    }
                    out.push(c);
                }
                Some(c) if c <= ' ' || "<\"{}|^`".contains(c) => {
                    return Err(self.lexical(pos, format!("character {c:?} is not allowed in IRIs")))
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn string(&mut self, pos: Pos) -> Result<String, TurtleError> {
        let quote = self.bump().expect("caller peeked a quote");
        let long = self.peek() == Some(quote) && self.peek_nth(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let mut out = String::new();
        loop {
            let Some(c) = self.bump() else {
                return Err(self.lexical(pos, "unterminated string"));
            };
            match c {
                '\\' => {
                    let e = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.uchar(pos, 4)?,
                        Some('U') => self.uchar(pos, 8)?,
                        other => return Err(self.lexical(pos, format!("unknown string escape {other:?}"))),
                    };
                    out.push(e);
                }
                c if c == quote => {
                    if !long {
                        return Ok(out);
                    }
                    if self.peek() == Some(quote) && self.peek_nth(1) == Some(quote) {
                        // A run of more than three quotes closes on the last three.
                        if self.peek_nth(2) == Some(quote) {
                            out.push(c);
                            continue;
                        }
                        self.bump();
                        self.bump();
                        return Ok(out);
                    }
                    out.push(c);
                }
                '\n' | '\r' if !long => return Err(self.lexical(pos, "line break in short string")),
                c => out.push(c),
            }
        }
    }

    fn blank_label(&mut self, pos: Pos) -> Result<String, TurtleError> {
        let mut label = String::new();
        match self.peek() {
            Some(c) if is_pn_chars_u(c) || c.is_ascii_digit() => {
                label.push(c);
                self.bump();
            }
            _ => return Err(self.lexical(pos, "empty blank node label")),
        }
        while let Some(c) = self.peek() {
            if is_pn_chars(c)
                || (c == '.' && self.peek_nth(1).is_some_and(|n| is_pn_chars(n) || n == '.') && self.dot_run_continues())
            {
                label.push(c);
                self.bump();
            } else {
                break;
            }
        }
        Ok(label)
    }

    /// With a `.` at the cursor, whether the run of dots is followed by a name character.
    fn dot_run_continues(&mut self) -> bool {
        let mut n = 0;
        while self.peek_nth(n) == Some('.') {
            n += 1;
        }
        self.peek_nth(n).is_some_and(|c| is_pn_chars(c) || c == ':' || c == '%' || c == '\\')
    }

    fn number(&mut self, pos: Pos) -> Result<Tok, TurtleError> {
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        let mut int_digits = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
            int_digits += 1;
        }
        let mut frac_digits = 0;
        let mut has_dot = false;
        if self.peek() == Some('.') {
            let next = self.peek_nth(1);
            let exp_follows = matches!(next, Some('e' | 'E')) && int_digits > 0;
            if next.is_some_and(|c| c.is_ascii_digit()) || exp_follows {
                has_dot = true;
                text.push('.');
                self.bump();
                while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                    text.push(c);
                    self.bump();
                    frac_digits += 1;
                }
            }
        }
        if int_digits == 0 && frac_digits == 0 {
            return Err(self.lexical(pos, "malformed number"));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            text.push(e);
            self.bump();
            if let Some(s @ ('+' | '-')) = self.peek() {
                text.push(s);
                self.bump();
            }
            let mut exp_digits = 0;
            while let Some(c) = self.peek().filter(char::is_ascii_digit) {
                text.push(c);
                self.bump();
                exp_digits += 1;
            }
            if exp_digits == 0 {
                return Err(self.lexical(pos, "malformed exponent"));
            }
            return Ok(Tok::Double(text));
        }
        Ok(if has_dot { Tok::Decimal(text) } else { Tok::Integer(text) })
    }

    fn name(&mut self, pos: Pos) -> Result<Tok, TurtleError> {
        let mut prefix = String::new();
        if self.peek() != Some(':') {
            while let Some(c) = self.peek() {
                if is_pn_chars(c) || (c == '.' && self.dot_run_continues()) {
                    prefix.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
        }
        if self.peek() != Some(':') {
            return match prefix.as_str() {
                "a" => Ok(Tok::A),
                "true" => Ok(Tok::Bool(true)),
                "false" => Ok(Tok::Bool(false)),
                w if w.eq_ignore_ascii_case("prefix") => Ok(Tok::SparqlPrefix),
                w if w.eq_ignore_ascii_case("base") => Ok(Tok::SparqlBase),
                w => Err(self.lexical(pos, format!("unexpected bare word {w:?}"))),
            };
        }
        self.bump();
        let mut local = String::new();
        let mut first = true;
        while let Some(c) = self.peek() {
            let ok_plain = if first {
                is_pn_chars_u(c) || c == ':' || c.is_ascii_digit()
            } else {
                is_pn_chars(c) || c == ':'
            };
            if ok_plain {
                local.push(c);
                self.bump();
            } else if c == '%' {
                self.bump();
                local.push('%');
                for _ in 0..2 {
                    match self.bump() {
                        Some(h) if h.is_ascii_hexdigit() => local.push(h),
                        _ => return Err(self.lexical(pos, "malformed percent escape in local name")),
                    }
                }
            } else if c == '\\' {
                self.bump();
                match self.bump() {
                    Some(e) if LOCAL_ESCAPABLE.contains(e) => local.push(e),
                    _ => return Err(self.lexical(pos, "malformed escape in local name")),
                }
            } else if c == '.' && !first && self.dot_run_continues() {
                local.push(c);
                self.bump();
            } else {
                break;
            }
            first = false;
        }
        Ok(Tok::PName { prefix, local })
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: Pos,
    base: Option<oxiri::Iri<String>>,
    prefixes: BTreeMap<String, String>,
    blanks: HashMap<String, Term>,
    next_blank: usize,
    triples: Vec<Triple>,
    depth: usize,
}

type PResult<T> = Result<T, TurtleError>;

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> PResult<Self> {
        let mut lexer = Lexer::new(input);
        let (tok, pos) = lexer.next_token()?;
        Ok(Parser {
            lexer,
            tok,
            pos,
            base: None,
            prefixes: BTreeMap::new(),
            blanks: HashMap::new(),
            next_blank: 0,
            triples: Vec::new(),
            depth: 0,
        })
    }

    fn advance(&mut self) -> PResult<Tok> {
        let (tok, pos) = self.lexer.next_token()?;
        self.pos = pos;
        Ok(std::mem::replace(&mut self.tok, tok))
    }

    fn err(&self, kind: TurtleErrorKind) -> TurtleError {
        TurtleError {
            line: self.pos.line,
            column: self.pos.column,
            kind,
        }
    }

    fn unexpected(&self, expected: &str) -> TurtleError {
        self.err(TurtleErrorKind::Syntax {
            expected: expected.to_owned(),
            found: self.tok.to_string(),
        })
    }

    fn expect(&mut self, want: Tok, expected: &str) -> PResult<()> {
        if self.tok == want {
            self.advance()?;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn fresh_blank(&mut self) -> Term {
        let t = Term::BlankNode(format!("b{}", self.next_blank));
        self.next_blank += 1;
        t
    }

    fn labelled_blank(&mut self, label: String) -> Term {
        if let Some(t) = self.blanks.get(&label) {
            return t.clone();
        }
        let t = self.fresh_blank();
        self.blanks.insert(label, t.clone());
        t
    }

    fn resolve(&self, raw: String) -> PResult<Iri> {
        let resolved = if super::term::has_scheme(&raw) {
            raw
        } else {
            let Some(base) = &self.base else {
                return Err(self.err(TurtleErrorKind::RelativeIriWithoutBase(raw)));
            };
            let reference = oxiri::IriRef::parse(raw.as_str()).map_err(|e| {
                self.err(TurtleErrorKind::InvalidIri {
                    iri: raw.clone(),
                    reason: e.to_string(),
                })
            })?;
            base.resolve(&reference)
                .map_err(|e| {
                    self.err(TurtleErrorKind::InvalidIri {
                        iri: raw.clone(),
                        reason: e.to_string(),
                    })
                })?
                .into_inner()
        };
        Iri::new(resolved.clone()).map_err(|e| {
            self.err(TurtleErrorKind::InvalidIri {
                iri: resolved,
                reason: e.to_string(),
            })
        })
    }

    fn expand(&self, prefix: &str, local: &str) -> PResult<Iri> {
        let ns = self
            .prefixes
            .get(prefix)
            .ok_or_else(|| self.err(TurtleErrorKind::UndefinedPrefix(prefix.to_owned())))?;
        let full = format!("{ns}{local}");
        Iri::new(full.clone()).map_err(|e| {
            self.err(TurtleErrorKind::InvalidIri {
                iri: full,
                reason: e.to_string(),
            })
        })
    }

    fn emit(&mut self, s: Term, p: Iri, o: Term) {
        // Subjects produced by the grammar are never literals.
        if let Ok(t) = Triple::with_iri_predicate(s, p, o) {
            self.triples.push(t);
        }
    }

    fn document(&mut self) -> PResult<()> {
        while self.tok != Tok::Eof {
            self.statement()?;
        }
        Ok(())
    }

    fn statement(&mut self) -> PResult<()> {
        match self.tok.clone() {
            Tok::At(word) if word == "prefix" => {
                self.advance()?;
                self.prefix_decl()?;
                self.expect(Tok::Dot, "'.' after @prefix")
            }
            Tok::At(word) if word == "base" => {
                self.advance()?;
                self.base_decl()?;
                self.expect(Tok::Dot, "'.' after @base")
            }
            Tok::SparqlPrefix => {
                self.advance()?;
                self.prefix_decl()
            }
            Tok::SparqlBase => {
                self.advance()?;
                self.base_decl()
            }
            _ => {
                self.triples_stmt()?;
                self.expect(Tok::Dot, "'.' at end of statement")
            }
        }
    }

    fn prefix_decl(&mut self) -> PResult<()> {
        let Tok::PName { prefix, local } = self.tok.clone() else {
            return Err(self.unexpected("prefix name"));
        };
        if !local.is_empty() {
            return Err(self.unexpected("prefix name ending in ':'"));
        }
        self.advance()?;
        let Tok::IriRef(raw) = self.tok.clone() else {
            return Err(self.unexpected("namespace IRI"));
        };
        let iri = self.resolve(raw)?;
        self.advance()?;
        self.prefixes.insert(prefix, iri.as_str().to_owned());
        Ok(())
    }

    fn base_decl(&mut self) -> PResult<()> {
        let Tok::IriRef(raw) = self.tok.clone() else {
            return Err(self.unexpected("base IRI"));
        };
        let iri = self.resolve(raw)?;
        let parsed = oxiri::Iri::parse(iri.as_str().to_owned()).map_err(|e| {
            self.err(TurtleErrorKind::InvalidIri {
                iri: iri.as_str().to_owned(),
                reason: e.to_string(),
            })
        })?;
        self.advance()?;
        self.base = Some(parsed);
        Ok(())
    }

    fn triples_stmt(&mut self) -> PResult<()> {
        if self.tok == Tok::LBracket {
            let subject = self.blank_property_list()?;
            if self.tok != Tok::Dot {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> PResult<Term> {
        match self.tok.clone() {
            Tok::IriRef(raw) => {
                let iri = self.resolve(raw)?;
                self.advance()?;
                Ok(iri.into())
            }
            Tok::PName { prefix, local } => {
                let iri = self.expand(&prefix, &local)?;
                self.advance()?;
                Ok(iri.into())
            }
            Tok::Blank(label) => {
                self.advance()?;
                Ok(self.labelled_blank(label))
            }
            Tok::LParen => self.collection(),
            _ => Err(self.unexpected("subject")),
        }
    }

    fn verb(&mut self) -> PResult<Iri> {
        match self.tok.clone() {
            Tok::A => {
                self.advance()?;
                Ok(rdf::type_())
            }
            Tok::IriRef(raw) => {
                let iri = self.resolve(raw)?;
                self.advance()?;
                Ok(iri)
            }
            Tok::PName { prefix, local } => {
                let iri = self.expand(&prefix, &local)?;
                self.advance()?;
                Ok(iri)
            }
            _ => Err(self.unexpected("predicate")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> PResult<()> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate)?;
            if self.tok != Tok::Semi {
                return Ok(());
            }
            while self.tok == Tok::Semi {
                self.advance()?;
            }
            if matches!(self.tok, Tok::Dot | Tok::RBracket | Tok::Eof) {
                return Ok(());
            }
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Iri) -> PResult<()> {
        loop {
            let object = self.object()?;
            self.emit(subject.clone(), predicate.clone(), object);
            if self.tok != Tok::Comma {
                return Ok(());
            }
            self.advance()?;
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.err(TurtleErrorKind::TooDeep));
        }
        Ok(())
    }

    fn blank_property_list(&mut self) -> PResult<Term> {
        self.enter()?;
        self.expect(Tok::LBracket, "'['")?;
        let node = self.fresh_blank();
        if self.tok != Tok::RBracket {
            self.predicate_object_list(&node)?;
        }
        self.expect(Tok::RBracket, "']'")?;
        self.depth -= 1;
        Ok(node)
    }

    fn collection(&mut self) -> PResult<Term> {
        self.enter()?;
        self.expect(Tok::LParen, "'('")?;
        let mut head: Option<Term> = None;
        let mut last: Option<Term> = None;
        while self.tok != Tok::RParen {
            if self.tok == Tok::Eof {
                return Err(self.unexpected("')'"));
            }
            let cell = self.fresh_blank();
            let item = self.object()?;
            self.emit(cell.clone(), rdf::first(), item);
            match &last {
                Some(prev) => self.emit(prev.clone(), rdf::rest(), cell.clone()),
                None => head = Some(cell.clone()),
            }
            last = Some(cell);
        }
        self.advance()?;
        self.depth -= 1;
        match (head, last) {
            (Some(head), Some(last)) => {
                self.emit(last, rdf::rest(), rdf::nil().into());
                Ok(head)
            }
            _ => Ok(rdf::nil().into()),
        }
    }

    fn object(&mut self) -> PResult<Term> {
        match self.tok.clone() {
            Tok::IriRef(_) | Tok::PName { .. } | Tok::Blank(_) => self.subject(),
            Tok::LParen => self.collection(),
            Tok::LBracket => self.blank_property_list(),
            Tok::Str(value) => {
                self.advance()?;
                self.literal_tail(value)
            }
            Tok::Integer(n) => {
                self.advance()?;
                Ok(Literal::typed(n, xsd::integer()).into())
            }
            Tok::Decimal(n) => {
                self.advance()?;
                Ok(Literal::typed(n, xsd::decimal()).into())
            }
            Tok::Double(n) => {
                self.advance()?;
                Ok(Literal::typed(n, xsd::double()).into())
            }
            Tok::Bool(b) => {
                self.advance()?;
                Ok(Literal::typed(b.to_string(), xsd::boolean()).into())
            }
            _ => Err(self.unexpected("object")),
        }
    }

    fn literal_tail(&mut self, value: String) -> PResult<Term> {
        match self.tok.clone() {
            Tok::At(tag) => {
                if !valid_language_tag(&tag) {
                    return Err(self.err(TurtleErrorKind::InvalidLanguageTag(tag)));
                }
                self.advance()?;
                let lit = Literal::lang(value, &tag).map_err(|_| self.err(TurtleErrorKind::InvalidLanguageTag(tag)))?;
                Ok(lit.into())
            }
            Tok::Carets => {
                self.advance()?;
                let dt = match self.tok.clone() {
                    Tok::IriRef(raw) => self.resolve(raw)?,
                    Tok::PName { prefix, local } => self.expand(&prefix, &local)?,
                    _ => return Err(self.unexpected("datatype IRI")),
                };
                self.advance()?;
                Ok(Literal::typed(value, dt).into())
            }
            _ => Ok(Literal::string(value).into()),
        }
    }
}

/// Parses a Turtle document into a graph.
pub fn parse_turtle(document: &str) -> Result<Graph, TurtleError> {
    let mut parser = Parser::new(document)?;
    parser.document()?;
    Ok(Graph::new(parser.triples, parser.prefixes))
}

/// Like [`parse_turtle`], with a base IRI in scope before the first directive.
pub fn parse_turtle_with_base(document: &str, base: &str) -> Result<Graph, TurtleError> {
    let mut parser = Parser::new(document)?;
    parser.base = Some(oxiri::Iri::parse(base.to_owned()).map_err(|e| TurtleError {
        line: 1,
        column: 1,
        kind: TurtleErrorKind::InvalidIri {
            iri: base.to_owned(),
            reason: e.to_string(),
        },
    })?);
    parser.document()?;
    Ok(Graph::new(parser.triples, parser.prefixes))
}
