#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use proptest::prelude::*;

use dingo::rdf::{Graph, Term};

pub const NS: &str = "http://example.org/onto#";
pub const OTHER: &str = "http://other.example/vocab#";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const SUBCLASS: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";

/// A randomly shaped ontology, kept as plain data so tests can compute
/// expectations without going through the loader.
#[derive(Debug, Clone)]
pub struct Onto {
    pub classes: usize,
    /// `(sub, super)` with `sub > super`, so the hierarchy is acyclic.
    pub edges: BTreeSet<(usize, usize)>,
    pub properties: Vec<&'static str>,
    pub external_classes: usize,
    /// `(class index, skos predicate local name, target)`.
    pub mappings: Vec<(usize, &'static str, usize)>,
    pub labelled: BTreeSet<usize>,
}

pub fn onto() -> impl Strategy<Value = Onto> {
    (1usize..10, 0usize..4).prop_flat_map(|(classes, external)| {
        let edges = prop::collection::btree_set((0..classes, 0..classes), 0..classes * 2)
            .prop_map(|s| s.into_iter().filter(|(a, b)| a > b).collect::<BTreeSet<_>>());
        let props = prop::collection::vec(
            prop::sample::select(vec!["ObjectProperty", "DatatypeProperty", "AnnotationProperty"]),
            0..8,
        );
        let maps = prop::collection::vec(
            (0..classes, prop::sample::select(vec!["exactMatch", "closeMatch", "broadMatch", "relatedMatch"]), 0..5usize),
            0..4,
        );
        let labelled = prop::collection::btree_set(0..classes, 0..classes);
        (Just(classes), edges, props, Just(external), maps, labelled).prop_map(
            |(classes, edges, properties, external_classes, mappings, labelled)| Onto {
                classes,
                edges,
                properties,
                external_classes,
                mappings,
                labelled,
            },
        )
    })
}

impl Onto {
    pub fn class(&self, i: usize) -> String {
        format!("{NS}C{i}")
    }

    pub fn turtle(&self) -> String {
        let mut t = String::from(
            "@prefix owl: <http://www.w3.org/2002/07/owl#> .\n\
             @prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .\n\
             @prefix skos: <http://www.w3.org/2004/02/skos/core#> .\n\
             @prefix o: <http://example.org/onto#> .\n\
             @prefix x: <http://other.example/vocab#> .\n\
             <http://example.org/onto> a owl:Ontology .\n",
        );
        for i in 0..self.classes {
            let _ = writeln!(t, "o:C{i} a owl:Class .");
            if self.labelled.contains(&i) {
                let _ = writeln!(t, "o:C{i} rdfs:label \"Class {i}\"@en ; rdfs:comment \"About {i}.\" .");
            }
        }
        for (a, b) in &self.edges {
            let _ = writeln!(t, "o:C{a} rdfs:subClassOf o:C{b} .");
        }
        for (i, kind) in self.properties.iter().enumerate() {
            let _ = writeln!(t, "o:p{i} a owl:{kind} .");
            if *kind == "ObjectProperty" && self.classes > 0 {
                let _ = writeln!(t, "o:p{i} rdfs:domain o:C0 ; rdfs:range o:C{} .", self.classes - 1);
            }
        }
        for i in 0..self.external_classes {
            let _ = writeln!(t, "x:E{i} a owl:Class .");
        }
        for (c, p, target) in &self.mappings {
            let _ = writeln!(t, "o:C{c} skos:{p} x:E{target} .");
        }
        t
    }
}

/// Transitive superclasses from `rdfs:subClassOf` triples, by naive fixed point.
pub fn superclasses(g: &Graph) -> BTreeMap<String, BTreeSet<String>> {
    let mut sup: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for t in g.triples() {
        if t.predicate().as_str() == SUBCLASS {
            if let (Some(a), Some(b)) = (t.subject().as_iri(), t.object().as_iri()) {
                sup.entry(a.as_str().to_owned()).or_default().insert(b.as_str().to_owned());
            }
        }
    }
    loop {
        let before: usize = sup.values().map(BTreeSet::len).sum();
        let snapshot = sup.clone();
        for ups in sup.values_mut() {
            for u in ups.clone() {
                if let Some(more) = snapshot.get(&u) {
                    ups.extend(more.iter().cloned());
                }
            }
        }
        if sup.values().map(BTreeSet::len).sum::<usize>() == before {
            return sup;
        }
    }
}

/// Objects of `(s, p, ?)` by linear scan.
pub fn scan_objects(g: &Graph, s: &Term, p: &str) -> BTreeSet<Term> {
    g.triples()
        .iter()
        .filter(|t| t.subject() == s && t.predicate().as_str() == p)
        .map(|t| t.object().clone())
        .collect()
}

/// Subjects of `(?, p, o)` by linear scan.
pub fn scan_subjects(g: &Graph, p: &str, o: &Term) -> BTreeSet<Term> {
    g.triples()
        .iter()
        .filter(|t| t.object() == o && t.predicate().as_str() == p)
        .map(|t| t.subject().clone())
        .collect()
}
