//! Ontology schema registry.
//!
//! [`load_ontology`] reads OWL/RDFS declarations from a graph into an
//! [`OntologySchema`]: classes with their direct superclasses, properties
//! with kind, domains, ranges and superproperties, labels and comments, and
//! SKOS / OWL equivalence mappings to other vocabularies.
//!
//! Superclasses given as anonymous class expressions (restrictions) are kept
//! as opaque blank nodes and never traversed. Equivalence does not merge
//! registry entries; it is only reported through [`OntologySchema::mappings_of`].

mod dingo;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::rdf::vocab::{owl, rdf, rdfs, skos};
use crate::rdf::{Graph, Iri, Term};

pub use dingo::{Dingo, DINGO_NS, FOAF_AGENT};

/// How [`OntologySchema::stats`] counts terms.
pub const COUNTING_RULE: &str = "classes = named IRIs declared owl:Class in the ontology namespace; \
properties = named IRIs declared owl:ObjectProperty, owl:DatatypeProperty or owl:AnnotationProperty \
in the ontology namespace; imported external terms are not counted";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VocabError {
    #[error("strict subclass cycle: {}", join(.0))]
    SubclassCycle(Vec<Iri>),
    #[error("property {iri} is declared with conflicting kinds: {}", .kinds.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(", "))]
    ConflictingPropertyKind { iri: Iri, kinds: Vec<PropertyKind> },
    #[error("unknown class {0}")]
    UnknownClass(Iri),
    #[error("unknown term {0}")]
    UnknownTerm(Iri),
}

fn join(iris: &[Iri]) -> String {
    iris.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyKind {
    ObjectProperty,
    DatatypeProperty,
    AnnotationProperty,
}

impl PropertyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PropertyKind::ObjectProperty => "object-property",
            PropertyKind::DatatypeProperty => "datatype-property",
            PropertyKind::AnnotationProperty => "annotation-property",
        }
    }

    fn from_type(iri: &str) -> Option<Self> {
        match iri {
            owl::OBJECT_PROPERTY => Some(PropertyKind::ObjectProperty),
            owl::DATATYPE_PROPERTY => Some(PropertyKind::DatatypeProperty),
            owl::ANNOTATION_PROPERTY => Some(PropertyKind::AnnotationProperty),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MappingKind {
    SkosExact,
    SkosClose,
    SkosBroad,
    SkosNarrow,
    SkosRelated,
    OwlEquivalentClass,
    OwlEquivalentProperty,
}

impl MappingKind {
    pub fn from_predicate(iri: &str) -> Option<Self> {
        Some(match iri {
            skos::EXACT_MATCH => MappingKind::SkosExact,
            skos::CLOSE_MATCH => MappingKind::SkosClose,
            skos::BROAD_MATCH => MappingKind::SkosBroad,
            skos::NARROW_MATCH => MappingKind::SkosNarrow,
            skos::RELATED_MATCH => MappingKind::SkosRelated,
            owl::EQUIVALENT_CLASS => MappingKind::OwlEquivalentClass,
            owl::EQUIVALENT_PROPERTY => MappingKind::OwlEquivalentProperty,
            _ => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MappingKind::SkosExact => "skos-exact",
            MappingKind::SkosClose => "skos-close",
            MappingKind::SkosBroad => "skos-broad",
            MappingKind::SkosNarrow => "skos-narrow",
            MappingKind::SkosRelated => "skos-related",
            MappingKind::OwlEquivalentClass => "owl-equivalent-class",
            MappingKind::OwlEquivalentProperty => "owl-equivalent-property",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mapping {
    pub kind: MappingKind,
    pub target: Iri,
}

/// Text with an optional language tag.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LangText {
    pub text: String,
    pub lang: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    pub iri: Iri,
    /// Declared `owl:Class` (as opposed to only mentioned in a subclass edge).
    pub declared: bool,
    pub labels: Vec<LangText>,
    pub comments: Vec<LangText>,
    pub direct_superclasses: BTreeSet<Iri>,
    /// Anonymous superclass expressions, recorded but not interpreted.
    pub opaque_superclasses: Vec<Term>,
    pub mappings: Vec<Mapping>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyInfo {
    pub iri: Iri,
    pub kind: PropertyKind,
    pub declared: bool,
    pub labels: Vec<LangText>,
    pub comments: Vec<LangText>,
    /// Multiple domains are read conjunctively; they are documented, not enforced.
    pub domains: BTreeSet<Iri>,
    pub ranges: BTreeSet<Iri>,
    pub direct_superproperties: BTreeSet<Iri>,
    pub mappings: Vec<Mapping>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OntologyStats {
    pub classes: usize,
    pub properties: usize,
    pub namespaces: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LoadOptions {
    /// The ontology's own namespace; derived from the `owl:Ontology` IRI when unset.
    pub namespace: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct OntologySchema {
    classes: BTreeMap<Iri, ClassInfo>,
    properties: BTreeMap<Iri, PropertyInfo>,
    namespaces: BTreeMap<String, String>,
    ontology_iri: Option<Iri>,
    own_namespace: Option<String>,
    subclasses: HashMap<Iri, BTreeSet<Iri>>,
}

pub fn load_ontology(g: &Graph) -> Result<OntologySchema, VocabError> {
    load_ontology_with(g, &LoadOptions::default())
}

pub fn load_ontology_with(g: &Graph, options: &LoadOptions) -> Result<OntologySchema, VocabError> {
    let rdf_type = rdf::type_();
    let ontology_iri = g
        .subjects(&rdf_type, &owl::ontology().into())
        .filter_map(Term::as_iri)
        .next()
        .cloned();
    let own_namespace = options.namespace.clone().or_else(|| {
        ontology_iri.as_ref().map(|o| {
            let s = o.as_str();
            if s.ends_with('#') || s.ends_with('/') {
                s.to_owned()
            } else {
                format!("{s}#")
            }
        })
    });

    let mut classes: BTreeMap<Iri, ClassInfo> = BTreeMap::new();
    for s in g.subjects(&rdf_type, &owl::class().into()) {
        if let Some(iri) = s.as_iri() {
            classes.insert(iri.clone(), new_class(iri.clone(), true));
        }
    }

    let mut kinds: BTreeMap<Iri, BTreeSet<PropertyKind>> = BTreeMap::new();
    for t in g.with_predicate(&rdf_type) {
        let (Some(s), Some(kind)) = (t.subject().as_iri(), t.object().as_iri().and_then(|o| PropertyKind::from_type(o.as_str())))
        else {
            continue;
        };
        kinds.entry(s.clone()).or_default().insert(kind);
    }
    let mut properties: BTreeMap<Iri, PropertyInfo> = BTreeMap::new();
    for (iri, ks) in kinds {
        if ks.len() > 1 {
            return Err(VocabError::ConflictingPropertyKind {
                iri,
                kinds: ks.into_iter().collect(),
            });
        }
        let kind = *ks.first().expect("non-empty");
        properties.insert(iri.clone(), new_property(iri, kind, true));
    }

    // Subclass edges. Both endpoints get registered.
    for t in g.with_predicate(&rdfs::sub_class_of()) {
        let Some(sub) = t.subject().as_iri() else { continue };
        classes.entry(sub.clone()).or_insert_with(|| new_class(sub.clone(), false));
        match t.object() {
            Term::Iri(sup) => {
                classes.entry(sup.clone()).or_insert_with(|| new_class(sup.clone(), false));
                if sup != sub {
                    classes.get_mut(sub).expect("inserted").direct_superclasses.insert(sup.clone());
                }
            }
            anon @ Term::BlankNode(_) => classes.get_mut(sub).expect("inserted").opaque_superclasses.push(anon.clone()),
            Term::Literal(_) => {}
        }
    }

    for t in g.with_predicate(&rdfs::sub_property_of()) {
        let (Some(sub), Some(sup)) = (t.subject().as_iri(), t.object().as_iri()) else {
            continue;
        };
        let kind = properties
            .get(sub)
            .or_else(|| properties.get(sup))
            .map_or(PropertyKind::ObjectProperty, |p| p.kind);
        properties.entry(sub.clone()).or_insert_with(|| new_property(sub.clone(), kind, false));
        properties.entry(sup.clone()).or_insert_with(|| new_property(sup.clone(), kind, false));
        if sub != sup {
            properties.get_mut(sub).expect("inserted").direct_superproperties.insert(sup.clone());
        }
    }

    for (pred, is_domain) in [(rdfs::domain(), true), (rdfs::range(), false)] {
        for t in g.with_predicate(&pred) {
            let (Some(p), Some(target)) = (t.subject().as_iri(), t.object().as_iri()) else {
                continue;
            };
            if let Some(info) = properties.get_mut(p) {
                if is_domain {
                    info.domains.insert(target.clone());
                } else {
                    info.ranges.insert(target.clone());
                }
            }
        }
    }

    let label = rdfs::label();
    let comment = rdfs::comment();
    for t in g.triples() {
        let Some(s) = t.subject().as_iri() else { continue };
        let p = t.predicate();
        if *p == label || *p == comment {
            let Some(lit) = t.object().as_literal() else { continue };
            let text = LangText {
                text: lit.lexical().to_owned(),
                lang: lit.language().map(str::to_owned),
            };
            let is_label = *p == label;
            if let Some(c) = classes.get_mut(s) {
                if is_label { c.labels.push(text.clone()) } else { c.comments.push(text.clone()) }
            }
            if let Some(pi) = properties.get_mut(s) {
                if is_label { pi.labels.push(text) } else { pi.comments.push(text) }
            }
            continue;
        }
        let (Some(kind), Some(target)) = (MappingKind::from_predicate(p.as_str()), t.object().as_iri()) else {
            continue;
        };
        let mapping = Mapping {
            kind,
            target: target.clone(),
        };
        match kind {
            MappingKind::OwlEquivalentClass => {
                if let Some(c) = classes.get_mut(s) {
                    c.mappings.push(mapping);
                }
            }
            MappingKind::OwlEquivalentProperty => {
                if let Some(pi) = properties.get_mut(s) {
                    pi.mappings.push(mapping);
                }
            }
            _ => {
                if let Some(c) = classes.get_mut(s) {
                    c.mappings.push(mapping.clone());
                }
                if let Some(pi) = properties.get_mut(s) {
                    pi.mappings.push(mapping);
                }
            }
        }
    }

    check_subclass_cycles(g, &classes)?;

    let mut subclasses: HashMap<Iri, BTreeSet<Iri>> = HashMap::new();
    for c in classes.values() {
        for sup in &c.direct_superclasses {
            subclasses.entry(sup.clone()).or_default().insert(c.iri.clone());
        }
    }

    Ok(OntologySchema {
        classes,
        properties,
        namespaces: g.prefixes().clone(),
        ontology_iri,
        own_namespace,
        subclasses,
    })
}

fn new_class(iri: Iri, declared: bool) -> ClassInfo {
    ClassInfo {
        iri,
        declared,
        labels: Vec::new(),
        comments: Vec::new(),
        direct_superclasses: BTreeSet::new(),
        opaque_superclasses: Vec::new(),
        mappings: Vec::new(),
    }
}

fn new_property(iri: Iri, kind: PropertyKind, declared: bool) -> PropertyInfo {
    PropertyInfo {
        iri,
        kind,
        declared,
        labels: Vec::new(),
        comments: Vec::new(),
        domains: BTreeSet::new(),
        ranges: BTreeSet::new(),
        direct_superproperties: BTreeSet::new(),
        mappings: Vec::new(),
    }
}

/// Rejects subclass cycles unless every class on the cycle is declared
/// equivalent (directly or transitively) to the others.
fn check_subclass_cycles(g: &Graph, classes: &BTreeMap<Iri, ClassInfo>) -> Result<(), VocabError> {
    let index: BTreeMap<&Iri, usize> = classes.keys().enumerate().map(|(i, k)| (k, i)).collect();
    let keys: Vec<&Iri> = classes.keys().collect();
    let edges: Vec<Vec<usize>> = classes
        .values()
        .map(|c| c.direct_superclasses.iter().map(|s| index[s]).collect())
        .collect();

    let mut uf: Vec<usize> = (0..keys.len()).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for t in g.with_predicate(&owl::equivalent_class()) {
        let (Some(a), Some(b)) = (t.subject().as_iri(), t.object().as_iri()) else {
            continue;
        };
        if let (Some(&a), Some(&b)) = (index.get(a), index.get(b)) {
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            uf[ra] = rb;
        }
    }

    for component in strongly_connected(&edges) {
        if component.len() < 2 {
            continue;
        }
        let root = find(&mut uf, component[0]);
        if component.iter().any(|&c| find(&mut uf, c) != root) {
            let mut names: Vec<Iri> = component.iter().map(|&i| keys[i].clone()).collect();
            names.sort();
            return Err(VocabError::SubclassCycle(names));
        }
    }
    Ok(())
}

/// Tarjan's algorithm, iterative. Components come out in reverse topological order.
pub(crate) fn strongly_connected(edges: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = edges.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        let mut work: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut next)) = work.last_mut() {
            if *next < edges[v].len() {
                let w = edges[v][*next];
                *next += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    while let Some(w) = stack.pop() {
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    out.push(comp);
                }
            }
        }
    }
    out
}

impl OntologySchema {
    pub fn classes(&self) -> &BTreeMap<Iri, ClassInfo> {
        &self.classes
    }

    pub fn properties(&self) -> &BTreeMap<Iri, PropertyInfo> {
        &self.properties
    }

    pub fn namespaces(&self) -> &BTreeMap<String, String> {
        &self.namespaces
    }

    pub fn ontology_iri(&self) -> Option<&Iri> {
        self.ontology_iri.as_ref()
    }

    /// The namespace terms must live in to be counted and documented.
    /// `None` means every named term counts.
    pub fn own_namespace(&self) -> Option<&str> {
        self.own_namespace.as_deref()
    }

    pub fn class(&self, iri: &Iri) -> Option<&ClassInfo> {
        self.classes.get(iri)
    }

    pub fn property(&self, iri: &Iri) -> Option<&PropertyInfo> {
        self.properties.get(iri)
    }

    pub fn is_own_term(&self, iri: &Iri) -> bool {
        self.own_namespace.as_deref().is_none_or(|ns| {
            iri.as_str()
                .strip_prefix(ns)
                .is_some_and(|local| !local.is_empty() && !local.contains(['#', '/']))
        })
    }

    /// Declared classes in the own namespace, in IRI order.
    pub fn own_classes(&self) -> impl Iterator<Item = &ClassInfo> {
        self.classes.values().filter(|c| c.declared && self.is_own_term(&c.iri))
    }

    /// Declared properties in the own namespace, in IRI order.
    pub fn own_properties(&self) -> impl Iterator<Item = &PropertyInfo> {
        self.properties.values().filter(|p| p.declared && self.is_own_term(&p.iri))
    }

    /// All classes reachable through direct superclass edges, excluding `class` itself.
    pub fn superclass_closure(&self, class: &Iri) -> Result<BTreeSet<Iri>, VocabError> {
        let info = self.classes.get(class).ok_or_else(|| VocabError::UnknownClass(class.clone()))?;
        let mut seen = BTreeSet::new();
        let mut queue: VecDeque<&Iri> = info.direct_superclasses.iter().collect();
        while let Some(c) = queue.pop_front() {
            if c == class || !seen.insert(c.clone()) {
                continue;
            }
            if let Some(ci) = self.classes.get(c) {
                queue.extend(ci.direct_superclasses.iter());
            }
        }
        Ok(seen)
    }

    /// `class` together with every class that has it in its superclass closure.
    pub fn subclass_closure(&self, class: &Iri) -> Result<BTreeSet<Iri>, VocabError> {
        if !self.classes.contains_key(class) {
            return Err(VocabError::UnknownClass(class.clone()));
        }
        let mut seen = BTreeSet::from([class.clone()]);
        let mut queue = VecDeque::from([class]);
        while let Some(c) = queue.pop_front() {
            for sub in self.subclasses.get(c).into_iter().flatten() {
                if seen.insert(sub.clone()) {
                    queue.push_back(sub);
                }
            }
        }
        Ok(seen)
    }

    /// Subjects in `data` typed with `class` or any of its subclasses.
    pub fn instances_of(&self, data: &Graph, class: &Iri) -> Result<BTreeSet<Term>, VocabError> {
        let mut out = BTreeSet::new();
        let rdf_type = rdf::type_();
        for c in self.subclass_closure(class)? {
            out.extend(data.subjects(&rdf_type, &c.into()).cloned());
        }
        Ok(out)
    }

    /// Like [`instances_of`](Self::instances_of), but an unregistered class
    /// only matches nodes typed with it directly.
    pub fn instances_of_lenient(&self, data: &Graph, class: &Iri) -> BTreeSet<Term> {
        self.instances_of(data, class)
            .unwrap_or_else(|_| data.subjects(&rdf::type_(), &class.clone().into()).cloned().collect())
    }

    /// Whether `node` is typed in `data` with `class` or a subclass of it.
    pub fn has_type(&self, data: &Graph, node: &Term, class: &Iri) -> bool {
        data.types_of(node).filter_map(Term::as_iri).any(|t| {
            t == class
                || self
                    .superclass_closure(t)
                    .is_ok_and(|sup| sup.contains(class))
        })
    }

    pub fn mappings_of(&self, iri: &Iri) -> Result<&[Mapping], VocabError> {
        if let Some(c) = self.classes.get(iri) {
            return Ok(&c.mappings);
        }
        if let Some(p) = self.properties.get(iri) {
            return Ok(&p.mappings);
        }
        Err(VocabError::UnknownTerm(iri.clone()))
    }

    /// Term counts under [`COUNTING_RULE`].
    pub fn stats(&self) -> OntologyStats {
        OntologyStats {
            classes: self.own_classes().count(),
            properties: self.own_properties().count(),
            namespaces: self.namespaces.len(),
        }
    }
}

pub fn superclass_closure(s: &OntologySchema, class: &Iri) -> Result<BTreeSet<Iri>, VocabError> {
    s.superclass_closure(class)
}

pub fn instances_of(s: &OntologySchema, data: &Graph, class: &Iri) -> Result<BTreeSet<Term>, VocabError> {
    s.instances_of(data, class)
}

pub fn mappings_of<'s>(s: &'s OntologySchema, iri: &Iri) -> Result<&'s [Mapping], VocabError> {
    s.mappings_of(iri)
}

pub fn ontology_stats(s: &OntologySchema) -> OntologyStats {
    s.stats()
}

/// Loads the bundled DINGO snapshot.
pub fn dingo_schema() -> (Graph, OntologySchema) {
    let g = crate::rdf::parse_turtle(crate::DINGO_TTL).expect("bundled ontology parses");
    let s = load_ontology(&g).expect("bundled ontology loads");
    (g, s)
}
