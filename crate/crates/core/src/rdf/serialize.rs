//! Canonical Turtle writer.
//!
//! Output layout is fixed: prefix lines sorted by prefix, a blank line, then
//! one block per subject in canonical term order. Predicates are grouped per
//! subject (`rdf:type` first, written as `a`), objects sorted. Identical
//! graphs always give identical bytes.

use std::fmt::Write as _;

use super::graph::Graph;
use super::term::{escape_string, Iri, Literal, Term};
use super::vocab::{rdf, xsd};

pub fn serialize_turtle(g: &Graph) -> String {
    let mut out = String::new();
    for (prefix, ns) in g.prefixes() {
        let _ = writeln!(out, "@prefix {prefix}: <{}> .", escape_iri(ns));
    }
    let triples = g.triples();
    if triples.is_empty() {
        return out;
    }
    if !out.is_empty() {
        out.push('\n');
    }
    let w = Writer { prefixes: g };
    let mut i = 0;
    while i < triples.len() {
        let subject = triples[i].subject();
        out.push_str(&w.term(subject));
        let mut first_pred = true;
        while i < triples.len() && triples[i].subject() == subject {
            let predicate = triples[i].predicate();
            if !first_pred {
                out.push_str(" ;\n   ");
            }
            first_pred = false;
            out.push(' ');
            if predicate.as_str() == rdf::TYPE {
                out.push('a');
            } else {
                out.push_str(&w.iri(predicate));
            }
            let mut first_obj = true;
            while i < triples.len() && triples[i].subject() == subject && triples[i].predicate() == predicate {
                out.push_str(if first_obj { " " } else { ", " });
                first_obj = false;
                out.push_str(&w.term(triples[i].object()));
                i += 1;
            }
        }
        out.push_str(" .\n");
    }
    out
}

/// One term in Turtle syntax, compacted with the graph's prefixes.
pub(crate) fn term_to_turtle(g: &Graph, t: &Term) -> String {
    Writer { prefixes: g }.term(t)
}

struct Writer<'a> {
    prefixes: &'a Graph,
}

impl Writer<'_> {
    fn term(&self, t: &Term) -> String {
        match t {
            Term::Iri(i) => self.iri(i),
            Term::BlankNode(l) => format!("_:{l}"),
            Term::Literal(l) => self.literal(l),
        }
    }

    /// Prefixed name when a namespace matches and the remainder is a safe
    /// local name; longest namespace wins, ties broken by prefix.
    fn iri(&self, iri: &Iri) -> String {
        let s = iri.as_str();
        let best = self
            .prefixes
            .prefixes()
            .iter()
            .filter(|(_, ns)| s.starts_with(ns.as_str()) && is_safe_local(&s[ns.len()..]))
            .max_by(|a, b| a.1.len().cmp(&b.1.len()).then_with(|| b.0.cmp(a.0)));
        match best {
            Some((prefix, ns)) => format!("{prefix}:{}", &s[ns.len()..]),
            None => format!("<{}>", escape_iri(s)),
        }
    }

    fn literal(&self, l: &Literal) -> String {
        let lex = l.lexical();
        let dt = l.datatype().as_str();
        if let Some(tag) = l.language() {
            return format!("\"{}\"@{tag}", escape_string(lex));
        }
        let bare = match dt {
            xsd::STRING => return format!("\"{}\"", escape_string(lex)),
            xsd::INTEGER => is_integer(lex),
            xsd::DECIMAL => is_decimal(lex),
            xsd::DOUBLE => is_double(lex),
            xsd::BOOLEAN => lex == "true" || lex == "false",
            _ => false,
        };
        if bare {
            lex.to_owned()
        } else {
            format!("\"{}\"^^{}", escape_string(lex), self.iri(l.datatype()))
        }
    }
}

fn escape_iri(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        if c <= ' ' || "<>\"{}|^`\\".contains(c) {
            let _ = write!(out, "\\u{:04X}", c as u32);
        } else {
            out.push(c);
        }
    }
    out
}

/// Conservative subset of PN_LOCAL that never needs escaping.
fn is_safe_local(local: &str) -> bool {
    if local.is_empty() {
        return true;
    }
    let mut chars = local.chars();
    let first = chars.next().unwrap_or('-');
    (first.is_ascii_alphanumeric() || first == '_')
        && local.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !local.ends_with('.')
}

fn digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

fn strip_sign(s: &str) -> &str {
    s.strip_prefix(['+', '-']).unwrap_or(s)
}

pub(crate) fn is_integer(s: &str) -> bool {
    digits(strip_sign(s))
}

pub(crate) fn is_decimal(s: &str) -> bool {
    match strip_sign(s).split_once('.') {
        Some((int, frac)) => (int.is_empty() || digits(int)) && digits(frac),
        None => false,
    }
}

fn is_double(s: &str) -> bool {
    let body = strip_sign(s);
    let Some(e) = body.find(['e', 'E']) else {
        return false;
    };
    let (mantissa, exp) = (&body[..e], &body[e + 1..]);
    let mantissa_ok = match mantissa.split_once('.') {
        Some((int, frac)) => (digits(int) && (frac.is_empty() || digits(frac))) || (int.is_empty() && digits(frac)),
        None => digits(mantissa),
    };
    mantissa_ok && digits(strip_sign(exp))
}
