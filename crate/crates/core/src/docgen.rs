//! Documentation extraction and single-file HTML rendering.
//!
//! [`extract_doc_model`] covers the classes and properties the ontology
//! defines in its own namespace (the same terms [`OntologySchema::stats`]
//! counts), plus named individuals, axioms and the namespace table.
//! [`render_html`] turns the model into one self-contained HTML5 page.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::rdf::vocab::{dcterms, owl, rdf, rdfs};
use crate::rdf::{term_to_turtle, Graph, Iri, Term};
use crate::vocab::{LangText, MappingKind, OntologySchema, PropertyKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Class,
    ObjectProperty,
    DatatypeProperty,
    AnnotationProperty,
    Individual,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Class => "class",
            EntryKind::ObjectProperty => "object-property",
            EntryKind::DatatypeProperty => "datatype-property",
            EntryKind::AnnotationProperty => "annotation-property",
            EntryKind::Individual => "individual",
        }
    }

    fn anchor_prefix(self) -> &'static str {
        match self {
            EntryKind::Class => "class",
            EntryKind::Individual => "ind",
            _ => "prop",
        }
    }
}

impl From<PropertyKind> for EntryKind {
    fn from(k: PropertyKind) -> Self {
        match k {
            PropertyKind::ObjectProperty => EntryKind::ObjectProperty,
            PropertyKind::DatatypeProperty => EntryKind::DatatypeProperty,
            PropertyKind::AnnotationProperty => EntryKind::AnnotationProperty,
        }
    }
}

/// The object side of a relation, annotation or axiom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum DocRef {
    Named(Iri),
    /// An anonymous class expression or other blank-node structure, pretty-printed.
    Anonymous(String),
    /// A literal in Turtle syntax.
    Value(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Relation {
    pub name: String,
    pub target: DocRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Annotation {
    pub predicate: Iri,
    pub value: DocRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DocEntry {
    pub iri: Iri,
    pub anchor: String,
    pub kind: EntryKind,
    /// In language preference order.
    pub labels: Vec<LangText>,
    pub comments: Vec<LangText>,
    pub relations: Vec<Relation>,
    pub annotations: Vec<Annotation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Axiom {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: DocRef,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct OntologyHeader {
    pub iri: Option<Iri>,
    pub title: Option<String>,
    pub version: Option<String>,
    pub description: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DocModel {
    pub header: OntologyHeader,
    pub classes: Vec<DocEntry>,
    pub properties: Vec<DocEntry>,
    pub individuals: Vec<DocEntry>,
    pub axioms: Vec<Axiom>,
    pub namespaces: Vec<(String, String)>,
}

impl DocModel {
    pub fn entries(&self) -> impl Iterator<Item = &DocEntry> {
        self.classes.iter().chain(&self.properties).chain(&self.individuals)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocOptions {
    /// Label languages in preference order; untagged and other languages follow.
    pub languages: Vec<String>,
}

impl Default for DocOptions {
    fn default() -> Self {
        DocOptions {
            languages: vec!["en".into()],
        }
    }
}

fn sort_texts(mut texts: Vec<LangText>, opts: &DocOptions) -> Vec<LangText> {
    let rank = |t: &LangText| match &t.lang {
        Some(l) => opts.languages.iter().position(|p| p == l).unwrap_or(opts.languages.len() + 1),
        None => opts.languages.len(),
    };
    texts.sort_by(|a, b| rank(a).cmp(&rank(b)).then_with(|| a.cmp(b)));
    texts
}

/// Predicates shown as structured relations rather than free annotations.
fn is_structural(p: &Iri) -> bool {
    matches!(
        p.as_str(),
        rdf::TYPE
            | rdfs::LABEL
            | rdfs::COMMENT
            | rdfs::SUB_CLASS_OF
            | rdfs::SUB_PROPERTY_OF
            | rdfs::DOMAIN
            | rdfs::RANGE
            | owl::INVERSE_OF
    ) || MappingKind::from_predicate(p.as_str()).is_some()
}

/// Blank-node structure as nested `[ p o ; ... ]`, with shared or cyclic nodes cut off.
fn pretty_blank(g: &Graph, node: &Term, seen: &mut BTreeSet<Term>) -> String {
    if !seen.insert(node.clone()) {
        return "[ ... ]".into();
    }
    let parts: Vec<String> = g
        .about(node)
        .map(|t| {
            let p = if t.predicate().as_str() == rdf::TYPE {
                "a".to_owned()
            } else {
                term_to_turtle(g, &Term::Iri(t.predicate().clone()))
            };
            let o = match t.object() {
                b @ Term::BlankNode(_) => pretty_blank(g, b, seen),
                other => term_to_turtle(g, other),
            };
            format!("{p} {o}")
        })
        .collect();
    seen.remove(node);
    if parts.is_empty() {
        "[]".into()
    } else {
        format!("[ {} ]", parts.join(" ; "))
    }
}

fn doc_ref(g: &Graph, t: &Term) -> DocRef {
    match t {
        Term::Iri(i) => DocRef::Named(i.clone()),
        Term::BlankNode(_) => DocRef::Anonymous(pretty_blank(g, t, &mut BTreeSet::new())),
        Term::Literal(_) => DocRef::Value(term_to_turtle(g, t)),
    }
}

fn lang_texts(g: &Graph, s: &Term, p: &Iri) -> Vec<LangText> {
    g.objects(s, p)
        .filter_map(Term::as_literal)
        .map(|l| LangText {
            text: l.lexical().to_owned(),
            lang: l.language().map(str::to_owned),
        })
        .collect()
}

struct Anchors(BTreeSet<String>);

impl Anchors {
    fn mint(&mut self, kind: EntryKind, iri: &Iri) -> String {
        let local = iri.local_name();
        let local = if local.is_empty() { iri.as_str() } else { local };
        let clean: String = local
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '-' })
            .collect();
        let stem = format!("{}-{clean}", kind.anchor_prefix());
        let mut anchor = stem.clone();
        let mut n = 2;
        while !self.0.insert(anchor.clone()) {
            anchor = format!("{stem}-{n}");
            n += 1;
        }
        anchor
    }
}

pub fn extract_doc_model(g: &Graph, s: &OntologySchema) -> DocModel {
    extract_doc_model_with(g, s, &DocOptions::default())
}

pub fn extract_doc_model_with(g: &Graph, s: &OntologySchema, opts: &DocOptions) -> DocModel {
    let mut anchors = Anchors(BTreeSet::new());
    let annotations = |subject: &Term| -> Vec<Annotation> {
        g.about(subject)
            .filter(|t| !is_structural(t.predicate()))
            .map(|t| Annotation {
                predicate: t.predicate().clone(),
                value: doc_ref(g, t.object()),
            })
            .collect()
    };

    let mut classes = Vec::new();
    for c in s.own_classes() {
        let node = Term::Iri(c.iri.clone());
        let mut relations: Vec<Relation> = c
            .direct_superclasses
            .iter()
            .map(|sup| Relation {
                name: "subclass of".into(),
                target: DocRef::Named(sup.clone()),
            })
            .collect();
        for anon in &c.opaque_superclasses {
            relations.push(Relation {
                name: "subclass of".into(),
                target: doc_ref(g, anon),
            });
        }
        for sub in s.classes().values().filter(|x| x.direct_superclasses.contains(&c.iri)) {
            relations.push(Relation {
                name: "superclass of".into(),
                target: DocRef::Named(sub.iri.clone()),
            });
        }
        for m in &c.mappings {
            relations.push(Relation {
                name: m.kind.as_str().into(),
                target: DocRef::Named(m.target.clone()),
            });
        }
        classes.push(DocEntry {
            anchor: anchors.mint(EntryKind::Class, &c.iri),
            iri: c.iri.clone(),
            kind: EntryKind::Class,
            labels: sort_texts(c.labels.clone(), opts),
            comments: sort_texts(c.comments.clone(), opts),
            relations,
            annotations: annotations(&node),
        });
    }

    let inverse = owl::inverse_of();
    let mut properties = Vec::new();
    for p in s.own_properties() {
        let node = Term::Iri(p.iri.clone());
        let mut relations = Vec::new();
        let mut push = |name: &str, targets: &mut dyn Iterator<Item = &Iri>| {
            for t in targets {
                relations.push(Relation {
                    name: name.into(),
                    target: DocRef::Named(t.clone()),
                });
            }
        };
        push("domain", &mut p.domains.iter());
        push("range", &mut p.ranges.iter());
        push("subproperty of", &mut p.direct_superproperties.iter());
        let inverses: BTreeSet<&Iri> = g
            .objects(&node, &inverse)
            .chain(g.subjects(&inverse, &node))
            .filter_map(Term::as_iri)
            .collect();
        push("inverse of", &mut inverses.into_iter());
        for m in &p.mappings {
            relations.push(Relation {
                name: m.kind.as_str().into(),
                target: DocRef::Named(m.target.clone()),
            });
        }
        properties.push(DocEntry {
            anchor: anchors.mint(p.kind.into(), &p.iri),
            iri: p.iri.clone(),
            kind: p.kind.into(),
            labels: sort_texts(p.labels.clone(), opts),
            comments: sort_texts(p.comments.clone(), opts),
            relations,
            annotations: annotations(&node),
        });
    }

    let rdf_type = rdf::type_();
    let named_individual = owl::named_individual();
    let mut individual_iris: BTreeSet<&Iri> = BTreeSet::new();
    for t in g.with_predicate(&rdf_type) {
        let (Some(subj), Some(class)) = (t.subject().as_iri(), t.object().as_iri()) else {
            continue;
        };
        let is_term = s.class(subj).is_some() || s.property(subj).is_some() || Some(subj) == s.ontology_iri();
        if !is_term && (*class == named_individual || s.class(class).is_some()) {
            individual_iris.insert(subj);
        }
    }
    let mut individuals = Vec::new();
    for iri in individual_iris {
        let node = Term::Iri(iri.clone());
        let relations = g
            .types_of(&node)
            .filter_map(Term::as_iri)
            .filter(|c| **c != named_individual)
            .map(|c| Relation {
                name: "instance of".into(),
                target: DocRef::Named(c.clone()),
            })
            .collect();
        individuals.push(DocEntry {
            anchor: anchors.mint(EntryKind::Individual, iri),
            iri: iri.clone(),
            kind: EntryKind::Individual,
            labels: sort_texts(lang_texts(g, &node, &rdfs::label()), opts),
            comments: sort_texts(lang_texts(g, &node, &rdfs::comment()), opts),
            relations,
            annotations: annotations(&node),
        });
    }

    let axiom_predicates: BTreeSet<Iri> = [
        rdfs::sub_class_of(),
        rdfs::sub_property_of(),
        owl::equivalent_class(),
        owl::equivalent_property(),
        rdfs::domain(),
        rdfs::range(),
        owl::inverse_of(),
    ]
    .into();
    let documented: BTreeSet<&Iri> = classes.iter().chain(&properties).map(|e| &e.iri).collect();
    let axioms = g
        .triples()
        .iter()
        .filter(|t| axiom_predicates.contains(t.predicate()))
        .filter_map(|t| {
            let subj = t.subject().as_iri()?;
            documented.contains(subj).then(|| Axiom {
                subject: subj.clone(),
                predicate: t.predicate().clone(),
                object: doc_ref(g, t.object()),
            })
        })
        .collect();

    DocModel {
        header: header(g, s, opts),
        classes,
        properties,
        individuals,
        axioms,
        namespaces: g.prefixes().iter().map(|(p, n)| (p.clone(), n.clone())).collect(),
    }
}

fn header(g: &Graph, s: &OntologySchema, opts: &DocOptions) -> OntologyHeader {
    let Some(iri) = s.ontology_iri() else {
        return OntologyHeader::default();
    };
    let node = Term::Iri(iri.clone());
    let first = |preds: &[Iri]| {
        preds
            .iter()
            .map(|p| sort_texts(lang_texts(g, &node, p), opts))
            .find(|v| !v.is_empty())
            .map(|v| v[0].text.clone())
    };
    OntologyHeader {
        iri: Some(iri.clone()),
        title: first(&[dcterms::title(), rdfs::label()]),
        version: first(&[owl::version_info()]),
        description: first(&[dcterms::description(), rdfs::comment()]),
    }
}

// ---------------------------------------------------------------------------
// HTML

const STYLE: &str = "body{font-family:system-ui,sans-serif;max-width:60rem;margin:2rem auto;padding:0 1rem;line-height:1.45}\
code{font-size:.9em}.entry{border-top:1px solid #ccc;padding:.5rem 0}.kind{color:#666;font-size:.8em;font-weight:normal}\
.lang{color:#888;font-size:.8em}dt{font-weight:bold}nav ul ul{columns:3;font-size:.9em}table{border-collapse:collapse}\
td,th{border:1px solid #ddd;padding:.2rem .5rem;text-align:left}";

pub fn escape_html(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}

struct Renderer<'m> {
    model: &'m DocModel,
    anchors: HashMap<&'m Iri, &'m str>,
    prefixes: Graph,
}

impl<'m> Renderer<'m> {
    fn new(model: &'m DocModel) -> Self {
        let prefixes = Graph::new(Vec::new(), model.namespaces.iter().cloned().collect::<BTreeMap<_, _>>());
        Renderer {
            model,
            anchors: model.entries().map(|e| (&e.iri, e.anchor.as_str())).collect(),
            prefixes,
        }
    }

    fn short(&self, iri: &Iri) -> String {
        term_to_turtle(&self.prefixes, &Term::Iri(iri.clone()))
    }

    fn link(&self, iri: &Iri) -> String {
        let text = escape_html(&self.short(iri));
        match self.anchors.get(iri) {
            Some(a) => format!("<a href=\"#{}\">{text}</a>", escape_html(a)),
            None => format!("<a class=\"external\" href=\"{}\">{text}</a>", escape_html(iri.as_str())),
        }
    }

    fn doc_ref(&self, r: &DocRef) -> String {
        match r {
            DocRef::Named(i) => self.link(i),
            DocRef::Anonymous(s) => format!("<code class=\"anonymous\">{}</code>", escape_html(s)),
            DocRef::Value(s) => format!("<code>{}</code>", escape_html(s)),
        }
    }

    fn text(t: &LangText) -> String {
        match &t.lang {
            Some(l) => format!("{} <span class=\"lang\">@{}</span>", escape_html(&t.text), escape_html(l)),
            None => escape_html(&t.text),
        }
    }

    fn title(e: &DocEntry) -> &str {
        e.labels.first().map_or_else(|| e.iri.local_name(), |l| l.text.as_str())
    }

    fn entry(&self, out: &mut String, e: &DocEntry) {
        let _ = writeln!(
            out,
            "<section class=\"entry\" data-kind=\"{}\" id=\"{}\">",
            e.kind.as_str(),
            escape_html(&e.anchor)
        );
        let _ = writeln!(
            out,
            "<h3>{} <span class=\"kind\">{}</span></h3>",
            escape_html(Self::title(e)),
            e.kind.as_str()
        );
        let _ = writeln!(out, "<p><code>{}</code></p>", escape_html(e.iri.as_str()));
        for c in &e.comments {
            let _ = writeln!(out, "<p>{}</p>", Self::text(c));
        }
        out.push_str("<dl>\n");
        if !e.labels.is_empty() {
            out.push_str("<dt>labels</dt>\n");
            for l in &e.labels {
                let _ = writeln!(out, "<dd>{}</dd>", Self::text(l));
            }
        }
        let mut last: Option<&str> = None;
        for r in &e.relations {
            if last != Some(r.name.as_str()) {
                let _ = writeln!(out, "<dt>{}</dt>", escape_html(&r.name));
                last = Some(&r.name);
            }
            let _ = writeln!(out, "<dd>{}</dd>", self.doc_ref(&r.target));
        }
        let mut last: Option<&Iri> = None;
        for a in &e.annotations {
            if last != Some(&a.predicate) {
                let _ = writeln!(out, "<dt>{}</dt>", self.link(&a.predicate));
                last = Some(&a.predicate);
            }
            let _ = writeln!(out, "<dd>{}</dd>", self.doc_ref(&a.value));
        }
        out.push_str("</dl>\n</section>\n");
    }

    fn render(&self) -> String {
        let m = self.model;
        let h = &m.header;
        let title = h.title.clone().unwrap_or_else(|| "Ontology documentation".into());
        let mut out = String::new();
        out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
        let _ = writeln!(out, "<title>{}</title>", escape_html(&title));
        let _ = writeln!(out, "<style>{STYLE}</style>");
        out.push_str("</head>\n<body>\n<header>\n");
        let _ = writeln!(out, "<h1>{}</h1>", escape_html(&title));
        out.push_str("<dl>\n");
        if let Some(iri) = &h.iri {
            let _ = writeln!(out, "<dt>IRI</dt>\n<dd><a class=\"external\" href=\"{0}\">{0}</a></dd>", escape_html(iri.as_str()));
        }
        if let Some(v) = &h.version {
            let _ = writeln!(out, "<dt>version</dt>\n<dd>{}</dd>", escape_html(v));
        }
        out.push_str("</dl>\n");
        if let Some(d) = &h.description {
            let _ = writeln!(out, "<p>{}</p>", escape_html(d));
        }
        out.push_str("</header>\n");

        let groups: [(&str, &str, &[DocEntry]); 3] = [
            ("classes", "Classes", &m.classes),
            ("properties", "Properties", &m.properties),
            ("individuals", "Individuals", &m.individuals),
        ];
        out.push_str("<nav id=\"toc\">\n<h2>Contents</h2>\n<ul>\n");
        for (id, name, entries) in groups {
            let _ = writeln!(out, "<li><a href=\"#{id}\">{name}</a> ({})", entries.len());
            if !entries.is_empty() {
                out.push_str("<ul>\n");
                for e in entries {
                    let _ = writeln!(
                        out,
                        "<li><a href=\"#{}\">{}</a></li>",
                        escape_html(&e.anchor),
                        escape_html(&self.short(&e.iri))
                    );
                }
                out.push_str("</ul>\n");
            }
            out.push_str("</li>\n");
        }
        out.push_str("<li><a href=\"#axioms\">Axioms</a></li>\n<li><a href=\"#namespaces\">Namespaces</a></li>\n</ul>\n</nav>\n<main>\n");

        for (id, name, entries) in groups {
            let _ = writeln!(out, "<section id=\"{id}\">\n<h2>{name}</h2>");
            for e in entries {
                self.entry(&mut out, e);
            }
            out.push_str("</section>\n");
        }

        out.push_str("<section id=\"axioms\">\n<h2>Axioms</h2>\n");
        if !m.axioms.is_empty() {
            out.push_str("<table>\n<tr><th>subject</th><th>predicate</th><th>object</th></tr>\n");
            for a in &m.axioms {
                let _ = writeln!(
                    out,
                    "<tr><td>{}</td><td>{}</td><td>{}</td></tr>",
                    self.link(&a.subject),
                    escape_html(&self.short(&a.predicate)),
                    self.doc_ref(&a.object)
                );
            }
            out.push_str("</table>\n");
        }
        out.push_str("</section>\n<section id=\"namespaces\">\n<h2>Namespaces</h2>\n");
        if !m.namespaces.is_empty() {
            out.push_str("<table>\n<tr><th>prefix</th><th>namespace</th></tr>\n");
            for (p, ns) in &m.namespaces {
                let _ = writeln!(out, "<tr><td>{}</td><td><code>{}</code></td></tr>", escape_html(p), escape_html(ns));
            }
            out.push_str("</table>\n");
        }
        out.push_str("</section>\n</main>\n</body>\n</html>\n");
        out
    }
}

pub fn render_html(m: &DocModel) -> String {
    Renderer::new(m).render()
}

/// Fragment links (`href="#x"`) with no matching `id="x"` in the document.
pub fn dangling_fragment_links(html: &str) -> Vec<String> {
    let scan = |marker: &str| -> Vec<String> {
        html.match_indices(marker)
            .filter_map(|(i, _)| {
                let rest = &html[i + marker.len()..];
                rest.find('"').map(|end| rest[..end].to_owned())
            })
            .collect()
    };
    let ids: BTreeSet<String> = scan(" id=\"").into_iter().collect();
    let mut dangling: Vec<String> = scan("href=\"#").into_iter().filter(|h| !ids.contains(h)).collect();
    dangling.sort();
    dangling.dedup();
    dangling
}
