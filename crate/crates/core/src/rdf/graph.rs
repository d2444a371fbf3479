use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::term::{Iri, Term, Triple};
use super::vocab::rdf;

/// An immutable set of triples with a prefix map and per-position indexes.
///
/// Triples are stored once, sorted in canonical order, so every lookup
/// returns results in the order the serializer writes them.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    triples: Vec<Triple>,
    prefixes: BTreeMap<String, String>,
    by_subject: HashMap<Term, Vec<u32>>,
    by_predicate: HashMap<Iri, Vec<u32>>,
    by_object: HashMap<Term, Vec<u32>>,
}

/// A triple pattern. `None` positions are wildcards.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Pattern {
    pub subject: Option<Term>,
    pub predicate: Option<Term>,
    pub object: Option<Term>,
}

impl Pattern {
    pub fn new(subject: Option<Term>, predicate: Option<Term>, object: Option<Term>) -> Self {
        Pattern {
            subject,
            predicate,
            object,
        }
    }

    pub fn matches(&self, t: &Triple) -> bool {
        self.subject.as_ref().is_none_or(|s| s == t.subject())
            && self
                .predicate
                .as_ref()
                .is_none_or(|p| p.as_iri() == Some(t.predicate()))
            && self.object.as_ref().is_none_or(|o| o == t.object())
    }
}

impl Graph {
    pub fn new(triples: impl IntoIterator<Item = Triple>, prefixes: BTreeMap<String, String>) -> Self {
        let set: BTreeSet<Triple> = triples.into_iter().collect();
        let triples: Vec<Triple> = set.into_iter().collect();
        let mut by_subject: HashMap<Term, Vec<u32>> = HashMap::new();
        let mut by_predicate: HashMap<Iri, Vec<u32>> = HashMap::new();
        let mut by_object: HashMap<Term, Vec<u32>> = HashMap::new();
        for (i, t) in triples.iter().enumerate() {
            let i = i as u32;
            by_subject.entry(t.subject().clone()).or_default().push(i);
            by_predicate.entry(t.predicate().clone()).or_default().push(i);
            by_object.entry(t.object().clone()).or_default().push(i);
        }
        Graph {
            triples,
            prefixes,
            by_subject,
            by_predicate,
            by_object,
        }
    }

    pub fn from_triples(triples: impl IntoIterator<Item = Triple>) -> Self {
        Graph::new(triples, BTreeMap::new())
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// All triples in canonical order.
    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn prefixes(&self) -> &BTreeMap<String, String> {
        &self.prefixes
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }

    /// Every triple matching the pattern, in canonical order.
    pub fn triples_matching(&self, pattern: &Pattern) -> Vec<&Triple> {
        let mut lists: Vec<Option<&Vec<u32>>> = Vec::with_capacity(3);
        if let Some(s) = &pattern.subject {
            lists.push(self.by_subject.get(s));
        }
        if let Some(p) = &pattern.predicate {
            lists.push(p.as_iri().and_then(|p| self.by_predicate.get(p)));
        }
        if let Some(o) = &pattern.object {
            lists.push(self.by_object.get(o));
        }
        let mut candidates: Option<&[u32]> = None;
        for list in lists {
            let Some(list) = list else {
                return Vec::new();
            };
            if candidates.is_none_or(|c| list.len() < c.len()) {
                candidates = Some(list);
            }
        }
        match candidates {
            None => self.triples.iter().collect(),
            Some(idx) => idx
                .iter()
                .map(|&i| &self.triples[i as usize])
                .filter(|t| pattern.matches(t))
                .collect(),
        }
    }

    /// Triples with the given subject and predicate.
    pub fn objects<'a>(&'a self, subject: &Term, predicate: &Iri) -> impl Iterator<Item = &'a Term> + 'a {
        let list = self.by_subject.get(subject).map(Vec::as_slice).unwrap_or(&[]);
        let predicate = predicate.clone();
        list.iter()
            .map(|&i| &self.triples[i as usize])
            .filter(move |t| *t.predicate() == predicate)
            .map(Triple::object)
    }

    pub fn subjects<'a>(&'a self, predicate: &Iri, object: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        let list = self.by_object.get(object).map(Vec::as_slice).unwrap_or(&[]);
        let predicate = predicate.clone();
        list.iter()
            .map(|&i| &self.triples[i as usize])
            .filter(move |t| *t.predicate() == predicate)
            .map(Triple::subject)
    }

    pub fn with_predicate<'a>(&'a self, predicate: &Iri) -> impl Iterator<Item = &'a Triple> + 'a {
        let list = self.by_predicate.get(predicate).map(Vec::as_slice).unwrap_or(&[]);
        list.iter().map(|&i| &self.triples[i as usize])
    }

    pub fn about<'a>(&'a self, subject: &Term) -> impl Iterator<Item = &'a Triple> + 'a {
        let list = self.by_subject.get(subject).map(Vec::as_slice).unwrap_or(&[]);
        list.iter().map(|&i| &self.triples[i as usize])
    }

    /// `rdf:type` objects of a node.
    pub fn types_of<'a>(&'a self, node: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.objects(node, &rdf::type_())
    }

    /// Whether the term occurs anywhere in the graph.
    pub fn mentions(&self, term: &Term) -> bool {
        self.by_subject.contains_key(term)
            || self.by_object.contains_key(term)
            || term.as_iri().is_some_and(|i| self.by_predicate.contains_key(i))
    }

    /// Distinct blank node labels, sorted.
    pub fn blank_nodes(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        for t in &self.triples {
            for term in [t.subject(), t.object()] {
                if let Term::BlankNode(l) = term {
                    out.insert(l.as_str());
                }
            }
        }
        out
    }

    /// Set union of two graphs. Prefixes of `self` win on conflict.
    pub fn union(&self, other: &Graph) -> Graph {
        let mut prefixes = other.prefixes.clone();
        prefixes.extend(self.prefixes.clone());
        Graph::new(self.triples.iter().chain(other.triples.iter()).cloned(), prefixes)
    }

    pub fn with_prefixes(self, prefixes: BTreeMap<String, String>) -> Graph {
        Graph { prefixes, ..self }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples && self.prefixes == other.prefixes
    }
}

impl Eq for Graph {}
