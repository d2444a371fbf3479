//! Brute-force reference implementations. Everything here works from a flat
//! scan of `Graph::triples()` and never calls the library's query code.

use std::collections::{BTreeMap, BTreeSet};

use dingo::rdf::{Graph, Term, Triple};

pub const DINGO: &str = "https://w3id.org/dingo#";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const SUBCLASS: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";

fn d(local: &str) -> String {
    format!("{DINGO}{local}")
}

pub fn is(t: &Term, iri: &str) -> bool {
    t.as_iri().is_some_and(|i| i.as_str() == iri)
}

/// Every `(s, o)` with `s <p> o`.
pub fn pairs(g: &Graph, p: &str) -> Vec<(Term, Term)> {
    g.triples()
        .iter()
        .filter(|t| t.predicate().as_str() == p)
        .map(|t| (t.subject().clone(), t.object().clone()))
        .collect()
}

/// Nodes related to `node` by `forward` (node as subject) or `backward` (node as object).
fn both_ways(g: &Graph, node: &Term, forward: &str, backward: &str) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for (s, o) in pairs(g, forward) {
        if &s == node {
            out.insert(o);
        }
    }
    for (s, o) in pairs(g, backward) {
        if &o == node {
            out.insert(s);
        }
    }
    out
}

pub fn grants_of(g: &Graph, project: &Term) -> BTreeSet<Term> {
    both_ways(g, project, &d("is_funded_by"), &d("funds"))
}

pub fn projects_of(g: &Graph, grant: &Term) -> BTreeSet<Term> {
    both_ways(g, grant, &d("funds"), &d("is_funded_by"))
}

pub fn beneficiaries(g: &Graph, grant: &Term) -> BTreeSet<Term> {
    both_ways(g, grant, &d("has_beneficiary"), &d("is_beneficiary_of"))
}

/// `(agent, role)` pairs; a role-less pair survives only when the agent has no role at all.
pub fn participants(g: &Graph, project: &Term) -> BTreeSet<(Term, Option<Term>)> {
    let mut raw: BTreeSet<(Term, Option<Term>)> = both_ways(g, project, &d("has_participant"), &d("is_participant_in"))
        .into_iter()
        .map(|a| (a, None))
        .collect();
    for (p, node) in pairs(g, &d("has_participation")) {
        if &p != project {
            continue;
        }
        let roles: Vec<Term> = pairs(g, &d("has_role"))
            .into_iter()
            .filter(|(n, _)| *n == node)
            .map(|(_, r)| r)
            .collect();
        for (n, agent) in pairs(g, &d("has_agent")) {
            if n != node {
                continue;
            }
            if roles.is_empty() {
                raw.insert((agent.clone(), None));
            }
            for r in &roles {
                raw.insert((agent.clone(), Some(r.clone())));
            }
        }
    }
    let with_role: BTreeSet<Term> = raw.iter().filter(|(_, r)| r.is_some()).map(|(a, _)| a.clone()).collect();
    raw.into_iter()
        .filter(|(a, r)| r.is_some() || !with_role.contains(a))
        .collect()
}

pub fn non_beneficiaries(g: &Graph, project: &Term) -> BTreeSet<Term> {
    let agents: BTreeSet<Term> = participants(g, project).into_iter().map(|(a, _)| a).collect();
    let mut funded = BTreeSet::new();
    for grant in grants_of(g, project) {
        funded.extend(beneficiaries(g, &grant));
    }
    agents.into_iter().filter(|a| !funded.contains(a)).collect()
}

pub fn criteria(g: &Graph, scheme: &Term) -> BTreeSet<Term> {
    both_ways(g, scheme, &d("has_criterion"), &d("is_criterion_of"))
}

fn parent_edges(g: &Graph) -> BTreeSet<(Term, Term)> {
    let mut out: BTreeSet<(Term, Term)> = pairs(g, &d("is_subscheme_of")).into_iter().collect();
    out.extend(pairs(g, &d("has_subscheme")).into_iter().map(|(p, c)| (c, p)));
    out
}

#[derive(Debug, PartialEq, Eq)]
pub enum Ancestry {
    Chain(Vec<Term>),
    /// Every node that lies on a cycle and is reachable from the query scheme.
    Cycle(BTreeSet<Term>),
}

/// Distances by repeated relaxation, cycles by self-reachability.
pub fn ancestry(g: &Graph, scheme: &Term) -> Ancestry {
    let edges = parent_edges(g);
    let mut nodes: BTreeSet<Term> = edges.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    nodes.insert(scheme.clone());

    let mut reach: BTreeSet<(Term, Term)> = edges.clone();
    loop {
        let mut grown = reach.clone();
        for (a, b) in &reach {
            for (c, e) in &reach {
                if b == c {
                    grown.insert((a.clone(), e.clone()));
                }
            }
        }
        if grown.len() == reach.len() {
            break;
        }
        reach = grown;
    }
    let from_scheme: BTreeSet<Term> = nodes
        .iter()
        .filter(|n| *n == scheme || reach.contains(&(scheme.clone(), (*n).clone())))
        .cloned()
        .collect();
    let cyclic: BTreeSet<Term> = from_scheme
        .iter()
        .filter(|n| reach.contains(&((*n).clone(), (*n).clone())))
        .cloned()
        .collect();
    if !cyclic.is_empty() {
        return Ancestry::Cycle(cyclic);
    }

    let mut dist: BTreeMap<Term, usize> = BTreeMap::from([(scheme.clone(), 0)]);
    for _ in 0..nodes.len() {
        for (c, p) in &edges {
            if let Some(&dc) = dist.get(c) {
                let e = dist.entry(p.clone()).or_insert(usize::MAX);
                *e = (*e).min(dc + 1);
            }
        }
    }
    let mut out: Vec<(usize, Term)> = dist.into_iter().filter(|(_, k)| *k > 0).map(|(t, k)| (k, t)).collect();
    out.sort();
    Ancestry::Chain(out.into_iter().map(|(_, t)| t).collect())
}

/// Year, month and day fields actually present in a lexical date.
pub fn date_fields(lexical: &str) -> Option<Vec<u32>> {
    let date = lexical.split('T').next()?;
    let date = date.strip_suffix('Z').unwrap_or(date);
    let date = match date.find('+') {
        Some(i) => &date[..i],
        None => date,
    };
    let parts: Vec<&str> = date.split('-').collect();
    // A trailing `-hh:mm` offset shows up as an extra field containing ':'.
    let parts: Vec<&str> = parts.into_iter().take_while(|p| !p.contains(':')).collect();
    if parts.is_empty() || parts.len() > 3 {
        return None;
    }
    let widths = [4, 2, 2];
    let mut out = Vec::new();
    for (p, w) in parts.iter().zip(widths) {
        if p.len() != w || !p.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        out.push(p.parse().ok()?);
    }
    if out.len() > 1 && !(1..=12).contains(&out[1]) {
        return None;
    }
    if out.len() > 2 {
        let leap = out[0] % 4 == 0 && (out[0] % 100 != 0 || out[0] % 400 == 0);
        let days = [31, if leap { 29 } else { 28 }, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
        if !(1..=days[out[1] as usize - 1]).contains(&out[2]) {
            return None;
        }
    }
    Some(out)
}

/// `(node, code, start property)` for every start/end pair on every node.
pub fn temporal(g: &Graph) -> BTreeSet<(Term, &'static str, String)> {
    let mut out = BTreeSet::new();
    for (sp, ep) in [(d("start_time"), d("end_time")), (d("inception"), d("end_time"))] {
        for (node, start) in pairs(g, &sp) {
            for (n2, end) in pairs(g, &ep) {
                if n2 != node {
                    continue;
                }
                let parse = |t: &Term| t.as_literal().and_then(|l| date_fields(l.lexical()));
                match (parse(&start), parse(&end)) {
                    (Some(a), Some(b)) => {
                        let k = a.len().min(b.len());
                        if a[..k] > b[..k] {
                            out.insert((node.clone(), "start-after-end", sp.clone()));
                        }
                    }
                    _ => {
                        out.insert((node.clone(), "unparseable-date", sp.clone()));
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Typing and validation

/// Named superclasses (reflexive, transitive) from `rdfs:subClassOf` triples, by fixed point.
pub fn superclasses(ontology: &Graph) -> BTreeMap<String, BTreeSet<String>> {
    let edges: Vec<(String, String)> = ontology
        .triples()
        .iter()
        .filter(|t| t.predicate().as_str() == SUBCLASS)
        .filter_map(|t| Some((t.subject().as_iri()?.as_str().to_owned(), t.object().as_iri()?.as_str().to_owned())))
        .collect();
    let mut sup: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (a, b) in &edges {
        sup.entry(a.clone()).or_default().insert(b.clone());
    }
    loop {
        let mut changed = false;
        let snapshot = sup.clone();
        for (c, ups) in sup.iter_mut() {
            for u in snapshot.get(c).into_iter().flatten() {
                for uu in snapshot.get(u).into_iter().flatten() {
                    changed |= ups.insert(uu.clone());
                }
            }
        }
        if !changed {
            break;
        }
    }
    for (c, ups) in sup.iter_mut() {
        ups.insert(c.clone());
    }
    sup
}

pub fn has_type(data: &Graph, sup: &BTreeMap<String, BTreeSet<String>>, node: &Term, class: &str) -> bool {
    data.triples().iter().any(|t| {
        t.subject() == node
            && t.predicate().as_str() == RDF_TYPE
            && t.object().as_iri().is_some_and(|c| {
                c.as_str() == class || sup.get(c.as_str()).is_some_and(|s| s.contains(class))
            })
    })
}

/// A validation finding reduced to what both routes must agree on.
pub type Finding = (Term, String, String, &'static str, Option<Term>);

/// Enumerates every (node, targeted shape, constraint) combination.
pub fn validate(data: &Graph, ontology: &Graph, shapes: &dingo::shapes::ShapeSchema) -> BTreeSet<Finding> {
    use dingo::shapes::ValueCheck;
    let sup = superclasses(ontology);
    let nodes: BTreeSet<Term> = data.triples().iter().map(|t| t.subject().clone()).collect();
    let mut out = BTreeSet::new();
    for node in &nodes {
        for (class, name) in &shapes.target_map {
            if !has_type(data, &sup, node, class.as_str()) {
                continue;
            }
            let Some(shape) = shapes.shapes.get(name) else { continue };
            let mut push = |p: &str, code, v: Option<&Term>| {
                out.insert((node.clone(), name.clone(), p.to_owned(), code, v.cloned()));
            };
            for c in &shape.constraints {
                let p = c.predicate.as_str();
                let values: Vec<&Term> = data
                    .triples()
                    .iter()
                    .filter(|t| t.subject() == node && t.predicate().as_str() == p)
                    .map(Triple::object)
                    .collect();
                let n = values.len() as u32;
                if n < c.min {
                    push(p, "missing-required", None);
                }
                if c.max.is_some_and(|m| n > m) {
                    push(p, "cardinality-exceeded", None);
                }
                for v in values {
                    let code = match &c.check {
                        ValueCheck::Any => None,
                        ValueCheck::IriKind => (!matches!(v, Term::Iri(_))).then_some("wrong-value-kind"),
                        ValueCheck::LiteralOfDatatype(dts) => match v {
                            Term::Literal(l) if dts.iter().any(|d| d == l.datatype()) => None,
                            Term::Literal(_) => Some("wrong-datatype"),
                            _ => Some("wrong-value-kind"),
                        },
                        ValueCheck::NodeOfClass(cl) => match v {
                            Term::Literal(_) => Some("wrong-value-kind"),
                            _ if has_type(data, &sup, v, cl.as_str()) => None,
                            _ => Some("wrong-class"),
                        },
                        ValueCheck::ShapeRef(r) => {
                            let targets: Vec<&str> = shapes
                                .target_map
                                .iter()
                                .filter(|(_, n)| n == r)
                                .map(|(c, _)| c.as_str())
                                .collect();
                            if !shapes.shapes.contains_key(r) || targets.is_empty() {
                                Some("dangling-shape-ref")
                            } else if let Term::Literal(_) = v {
                                Some("wrong-value-kind")
                            } else if targets.iter().any(|c| has_type(data, &sup, v, c)) {
                                None
                            } else {
                                Some("wrong-class")
                            }
                        }
                    };
                    if let Some(code) = code {
                        push(p, code, Some(v));
                    }
                }
            }
            if shape.closed {
                for t in data.triples() {
                    let p = t.predicate().as_str();
                    if t.subject() == node
                        && p != RDF_TYPE
                        && !shape.constraints.iter().any(|c| c.predicate.as_str() == p)
                    {
                        push(p, "closed-shape-extra-predicate", None);
                    }
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Isomorphism

fn blanks(g: &Graph) -> Vec<String> {
    let mut out = BTreeSet::new();
    for t in g.triples() {
        for term in [t.subject(), t.object()] {
            if let Term::BlankNode(b) = term {
                out.insert(b.clone());
            }
        }
    }
    out.into_iter().collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Tries every bijection between the two graphs' blank nodes.
pub fn isomorphic_by_permutation(a: &Graph, b: &Graph) -> bool {
    let (ba, bb) = (blanks(a), blanks(b));
    if a.len() != b.len() || ba.len() != bb.len() {
        return false;
    }
    let target: BTreeSet<String> = b.triples().iter().map(line).collect();
    permutations(ba.len()).into_iter().any(|perm| {
        let map: BTreeMap<&str, &str> = ba.iter().map(String::as_str).zip(perm.iter().map(|&i| bb[i].as_str())).collect();
        let rename = |t: &Term| match t {
            Term::BlankNode(x) => format!("_:{}", map[x.as_str()]),
            other => other.to_string(),
        };
        a.triples()
            .iter()
            .all(|t| target.contains(&format!("{} {} {}", rename(t.subject()), t.predicate(), rename(t.object()))))
    })
}

fn line(t: &Triple) -> String {
    format!("{} {} {}", t.subject(), t.predicate(), t.object())
}

pub fn blank_count(g: &Graph) -> usize {
    blanks(g).len()
}

// ---------------------------------------------------------------------------
// HTML

/// Values of `attr="..."` attributes, found by a plain byte walk.
pub fn attribute_values(html: &str, attr: &str) -> Vec<String> {
    let needle = format!("{attr}=\"");
    let bytes = html.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i + needle.len() <= bytes.len() {
        let preceded_ok = i == 0 || bytes[i - 1].is_ascii_whitespace();
        if preceded_ok && html[i..].starts_with(&needle) {
            let start = i + needle.len();
            let end = start + html[start..].find('"').unwrap_or(0);
            out.push(html[start..end].to_owned());
            i = end;
        } else {
            i += 1;
        }
    }
    out
}
