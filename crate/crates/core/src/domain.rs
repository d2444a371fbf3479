//! DINGO-aware queries over data graphs.
//!
//! Funding, beneficiary and participation relations are read in both
//! directions (`funds` / `is_funded_by` and so on) and unioned. Nodes in a
//! typed position that lack the expected type still show up in results, but
//! raise a [`Warning`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::rdf::{Graph, Iri, Term};
use crate::vocab::{strongly_connected, Dingo, OntologySchema};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("funding scheme hierarchy contains a cycle: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))]
    SchemeCycle(Vec<Term>),
}

/// A non-fatal problem noticed while answering a query.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Warning {
    pub node: Term,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.node, self.message)
    }
}

/// A query result plus the warnings raised while computing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WithWarnings<T> {
    pub value: T,
    pub warnings: Vec<Warning>,
}

/// The predicates and classes the queries read. Defaults to the DINGO terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainVocab {
    pub grant: Iri,
    pub project: Iri,
    pub person: Iri,
    pub organisation: Iri,
    pub funding_scheme: Iri,
    pub funds: Iri,
    pub is_funded_by: Iri,
    pub has_beneficiary: Iri,
    pub is_beneficiary_of: Iri,
    pub has_participant: Iri,
    pub is_participant_in: Iri,
    pub has_participation: Iri,
    pub has_agent: Iri,
    pub has_role: Iri,
    pub is_subscheme_of: Iri,
    pub has_subscheme: Iri,
    pub has_criterion: Iri,
    pub is_criterion_of: Iri,
    /// (start, end) property pairs checked by [`check_temporal`].
    pub temporal_pairs: Vec<(Iri, Iri)>,
}

impl Default for DomainVocab {
    fn default() -> Self {
        DomainVocab::from_dingo(&Dingo::default())
    }
}

impl DomainVocab {
    pub fn from_dingo(d: &Dingo) -> Self {
        DomainVocab {
            grant: d.grant(),
            project: d.project(),
            person: d.person(),
            organisation: d.organisation(),
            funding_scheme: d.funding_scheme(),
            funds: d.funds(),
            is_funded_by: d.is_funded_by(),
            has_beneficiary: d.has_beneficiary(),
            is_beneficiary_of: d.is_beneficiary_of(),
            has_participant: d.has_participant(),
            is_participant_in: d.is_participant_in(),
            has_participation: d.has_participation(),
            has_agent: d.has_agent(),
            has_role: d.has_role(),
            is_subscheme_of: d.is_subscheme_of(),
            has_subscheme: d.has_subscheme(),
            has_criterion: d.has_criterion(),
            is_criterion_of: d.is_criterion_of(),
            temporal_pairs: vec![(d.start_time(), d.end_time()), (d.inception(), d.end_time())],
        }
    }
}

/// A participating agent of a project and, when stated, its role.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Participation {
    pub project: Term,
    pub agent: Term,
    pub role: Option<Term>,
}

/// Query entry point binding a data graph, a schema and a vocabulary.
#[derive(Debug, Clone, Copy)]
pub struct Domain<'a> {
    pub data: &'a Graph,
    pub schema: &'a OntologySchema,
    pub vocab: &'a DomainVocab,
}

/// Nodes reachable from `node` by `forward` plus nodes pointing at it by `backward`.
fn linked(data: &Graph, node: &Term, forward: &Iri, backward: &Iri) -> BTreeSet<Term> {
    data.objects(node, forward)
        .chain(data.subjects(backward, node))
        .cloned()
        .collect()
}

impl<'a> Domain<'a> {
    pub fn new(data: &'a Graph, schema: &'a OntologySchema, vocab: &'a DomainVocab) -> Self {
        Domain { data, schema, vocab }
    }

    fn expect_type(&self, node: &Term, classes: &[&Iri], what: &str, warnings: &mut Vec<Warning>) {
        if !self.data.mentions(node) {
            warnings.push(Warning {
                node: node.clone(),
                message: "node does not occur in the data graph".into(),
            });
        } else if !classes.iter().any(|c| self.schema.has_type(self.data, node, c)) {
            warnings.push(Warning {
                node: node.clone(),
                message: format!("node is not typed as {what}"),
            });
        }
    }

    fn finish<T>(value: T, mut warnings: Vec<Warning>) -> WithWarnings<T> {
        warnings.sort();
        warnings.dedup();
        WithWarnings { value, warnings }
    }

    pub fn grants_funding_project(&self, project: &Term) -> WithWarnings<BTreeSet<Term>> {
        let v = self.vocab;
        let mut warnings = Vec::new();
        self.expect_type(project, &[&v.project], "Project", &mut warnings);
        let grants = linked(self.data, project, &v.is_funded_by, &v.funds);
        for g in &grants {
            self.expect_type(g, &[&v.grant], "Grant", &mut warnings);
        }
        Self::finish(grants, warnings)
    }

    pub fn projects_funded_by(&self, grant: &Term) -> WithWarnings<BTreeSet<Term>> {
        let v = self.vocab;
        let mut warnings = Vec::new();
        self.expect_type(grant, &[&v.grant], "Grant", &mut warnings);
        let projects = linked(self.data, grant, &v.funds, &v.is_funded_by);
        for p in &projects {
            self.expect_type(p, &[&v.project], "Project", &mut warnings);
        }
        Self::finish(projects, warnings)
    }

    pub fn beneficiaries_of(&self, grant: &Term) -> BTreeSet<Term> {
        linked(self.data, grant, &self.vocab.has_beneficiary, &self.vocab.is_beneficiary_of)
    }

    /// Participations stated directly (`has_participant` / `is_participant_in`)
    /// or through a participation node (`has_participation` → `has_agent`, `has_role`).
    /// A role-less entry is dropped when the same agent also has a role.
    pub fn participants_with_roles(&self, project: &Term) -> WithWarnings<Vec<Participation>> {
        let v = self.vocab;
        let mut roles: BTreeMap<Term, BTreeSet<Option<Term>>> = BTreeMap::new();
        for agent in linked(self.data, project, &v.has_participant, &v.is_participant_in) {
            roles.entry(agent).or_default().insert(None);
        }
        for node in self.data.objects(project, &v.has_participation) {
            let node_roles: Vec<Option<Term>> = {
                let r: Vec<Option<Term>> = self.data.objects(node, &v.has_role).cloned().map(Some).collect();
                if r.is_empty() { vec![None] } else { r }
            };
            for agent in self.data.objects(node, &v.has_agent) {
                roles.entry(agent.clone()).or_default().extend(node_roles.iter().cloned());
            }
        }
        let mut warnings = Vec::new();
        let mut out = Vec::new();
        for (agent, mut rs) in roles {
            self.expect_type(&agent, &[&v.person, &v.organisation], "Person or Organisation", &mut warnings);
            if rs.len() > 1 {
                rs.remove(&None);
            }
            for role in rs {
                out.push(Participation {
                    project: project.clone(),
                    agent: agent.clone(),
                    role,
                });
            }
        }
        Self::finish(out, warnings)
    }

    /// Participating agents that are not beneficiaries of any grant funding the project.
    pub fn non_beneficiary_participants(&self, project: &Term) -> BTreeSet<Term> {
        let agents: BTreeSet<Term> = self
            .participants_with_roles(project)
            .value
            .into_iter()
            .map(|p| p.agent)
            .collect();
        let beneficiaries: BTreeSet<Term> = self
            .grants_funding_project(project)
            .value
            .iter()
            .flat_map(|g| self.beneficiaries_of(g))
            .collect();
        agents.difference(&beneficiaries).cloned().collect()
    }

    fn parent_schemes(&self, scheme: &Term) -> BTreeSet<Term> {
        linked(self.data, scheme, &self.vocab.is_subscheme_of, &self.vocab.has_subscheme)
    }

    /// Ancestor schemes in breadth-first layers, nearest first, each layer in term order.
    pub fn scheme_ancestry(&self, scheme: &Term) -> Result<Vec<Term>, DomainError> {
        // Collect the reachable part of the hierarchy first so cycles anywhere
        // above the scheme are caught, not only those passing through it.
        let mut nodes: Vec<Term> = vec![scheme.clone()];
        let mut index: BTreeMap<Term, usize> = BTreeMap::from([(scheme.clone(), 0)]);
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < nodes.len() {
            let parents = self.parent_schemes(&nodes[i]);
            let mut out = Vec::with_capacity(parents.len());
            for p in parents {
                let j = *index.entry(p.clone()).or_insert_with(|| {
                    nodes.push(p);
                    nodes.len() - 1
                });
                out.push(j);
            }
            edges.push(out);
            i += 1;
        }
        for comp in strongly_connected(&edges) {
            let self_loop = comp.len() == 1 && edges[comp[0]].contains(&comp[0]);
            if comp.len() > 1 || self_loop {
                let mut members: Vec<Term> = comp.into_iter().map(|k| nodes[k].clone()).collect();
                members.sort();
                return Err(DomainError::SchemeCycle(members));
            }
        }

        let mut seen = BTreeSet::from([0usize]);
        let mut out = Vec::new();
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut next: BTreeSet<&Term> = BTreeSet::new();
            for &n in &layer {
                for &p in &edges[n] {
                    if !seen.contains(&p) {
                        next.insert(&nodes[p]);
                    }
                }
            }
            layer = next.into_iter().map(|t| index[t]).collect();
            for &n in &layer {
                seen.insert(n);
                out.push(nodes[n].clone());
            }
        }
        Ok(out)
    }

    pub fn criteria_for_scheme(&self, scheme: &Term, inherited: bool) -> Result<BTreeSet<Term>, DomainError> {
        let direct = |s: &Term| linked(self.data, s, &self.vocab.has_criterion, &self.vocab.is_criterion_of);
        let mut out = direct(scheme);
        if inherited {
            for ancestor in self.scheme_ancestry(scheme)? {
                out.extend(direct(&ancestor));
            }
        }
        Ok(out)
    }

    /// Start/end ordering violations and unparseable temporal values.
    pub fn check_temporal(&self) -> Vec<TemporalViolation> {
        let mut out = BTreeSet::new();
        for (start_p, end_p) in &self.vocab.temporal_pairs {
            for t in self.data.with_predicate(start_p) {
                let node = t.subject();
                for end in self.data.objects(node, end_p) {
                    let start = t.object();
                    let violation = |issue| TemporalViolation {
                        node: node.clone(),
                        start_property: start_p.clone(),
                        end_property: end_p.clone(),
                        issue,
                    };
                    match (PartialDate::from_term(start), PartialDate::from_term(end)) {
                        (Some(s), Some(e)) => {
                            if s.compare_at_shared_precision(&e) == Ordering::Greater {
                                out.insert(violation(TemporalIssue::StartAfterEnd { start: s, end: e }));
                            }
                        }
                        (s, e) => {
                            for (value, parsed, prop) in [(start, s, start_p), (end, e, end_p)] {
                                if parsed.is_none() {
                                    out.insert(violation(TemporalIssue::Unparseable {
                                        property: prop.clone(),
                                        value: value.clone(),
                                    }));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TemporalViolation {
    pub node: Term,
    pub start_property: Iri,
    pub end_property: Iri,
    pub issue: TemporalIssue,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TemporalIssue {
    StartAfterEnd { start: PartialDate, end: PartialDate },
    Unparseable { property: Iri, value: Term },
}

impl TemporalIssue {
    pub fn code(&self) -> &'static str {
        match self {
            TemporalIssue::StartAfterEnd { .. } => "start-after-end",
            TemporalIssue::Unparseable { .. } => "unparseable-date",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precision {
    Year,
    Month,
    Day,
}

/// A calendar date known to year, month or day precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialDate {
    pub year: i32,
    pub month: Option<u32>,
    pub day: Option<u32>,
}

impl Serialize for PartialDate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for PartialDate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.year)?;
        if let Some(m) = self.month {
            write!(f, "-{m:02}")?;
        }
        if let Some(d) = self.day {
            write!(f, "-{d:02}")?;
        }
        Ok(())
    }
}

impl PartialDate {
    pub fn precision(&self) -> Precision {
        match (self.month, self.day) {
            (Some(_), Some(_)) => Precision::Day,
            (Some(_), None) => Precision::Month,
            _ => Precision::Year,
        }
    }

    /// Parses `YYYY`, `YYYY-MM`, `YYYY-MM-DD`, optionally followed by a
    /// timezone or (for full dates) a `T` time part, which is dropped.
    pub fn parse(s: &str) -> Option<PartialDate> {
        let s = s.trim();
        let date = match s.find('T') {
            Some(i) => {
                let time = &s[i + 1..];
                chrono::NaiveTime::parse_from_str(strip_zone(time), "%H:%M:%S%.f").ok()?;
                let d = &s[..i];
                if d.len() != 10 {
                    return None;
                }
                d
            }
            None => strip_zone(s),
        };
        let parts: Vec<&str> = date.split('-').collect();
        let num = |p: &str, len: usize| -> Option<u32> {
            (p.len() == len && p.bytes().all(|b| b.is_ascii_digit())).then(|| p.parse().ok())?
        };
        let year = num(parts.first()?, 4)? as i32;
        let out = match parts.len() {
            1 => PartialDate { year, month: None, day: None },
            2 => {
                let month = num(parts[1], 2).filter(|m| (1..=12).contains(m))?;
                PartialDate { year, month: Some(month), day: None }
            }
            3 => {
                let month = num(parts[1], 2)?;
                let day = num(parts[2], 2)?;
                chrono::NaiveDate::from_ymd_opt(year, month, day)?;
                PartialDate { year, month: Some(month), day: Some(day) }
            }
            _ => return None,
        };
        Some(out)
    }

    pub fn from_term(t: &Term) -> Option<PartialDate> {
        PartialDate::parse(t.as_literal()?.lexical())
    }

    pub fn truncate(&self, p: Precision) -> PartialDate {
        match p {
            Precision::Year => PartialDate { year: self.year, month: None, day: None },
            Precision::Month => PartialDate { day: None, ..*self },
            Precision::Day => *self,
        }
    }

    /// Compares after truncating both dates to the coarser of their precisions.
    pub fn compare_at_shared_precision(&self, other: &PartialDate) -> Ordering {
        let p = self.precision().min(other.precision());
        self.truncate(p).cmp(&other.truncate(p))
    }
}

/// Drops a trailing `Z` or `±hh:mm` zone designator.
fn strip_zone(s: &str) -> &str {
    if let Some(rest) = s.strip_suffix('Z') {
        return rest;
    }
    let b = s.as_bytes();
    if b.len() > 6 && matches!(b[b.len() - 6], b'+' | b'-') && b[b.len() - 3] == b':' {
        let zone = &s[s.len() - 5..];
        if chrono::NaiveTime::parse_from_str(&format!("{zone}:00"), "%H:%M:%S").is_ok() {
            return &s[..s.len() - 6];
        }
    }
    s
}

pub fn grants_funding_project(data: &Graph, s: &OntologySchema, project: &Term) -> WithWarnings<BTreeSet<Term>> {
    Domain::new(data, s, &DomainVocab::default()).grants_funding_project(project)
}

pub fn projects_funded_by(data: &Graph, s: &OntologySchema, grant: &Term) -> WithWarnings<BTreeSet<Term>> {
    Domain::new(data, s, &DomainVocab::default()).projects_funded_by(grant)
}

pub fn scheme_ancestry(data: &Graph, scheme: &Term) -> Result<Vec<Term>, DomainError> {
    let s = OntologySchema::default();
    Domain::new(data, &s, &DomainVocab::default()).scheme_ancestry(scheme)
}

pub fn criteria_for_scheme(data: &Graph, scheme: &Term, inherited: bool) -> Result<BTreeSet<Term>, DomainError> {
    let s = OntologySchema::default();
    Domain::new(data, &s, &DomainVocab::default()).criteria_for_scheme(scheme, inherited)
}

pub fn participants_with_roles(data: &Graph, s: &OntologySchema, project: &Term) -> WithWarnings<Vec<Participation>> {
    Domain::new(data, s, &DomainVocab::default()).participants_with_roles(project)
}

pub fn beneficiaries_of(data: &Graph, grant: &Term) -> BTreeSet<Term> {
    let s = OntologySchema::default();
    Domain::new(data, &s, &DomainVocab::default()).beneficiaries_of(grant)
}

pub fn non_beneficiary_participants(data: &Graph, s: &OntologySchema, project: &Term) -> BTreeSet<Term> {
    Domain::new(data, s, &DomainVocab::default()).non_beneficiary_participants(project)
}

pub fn check_temporal(data: &Graph) -> Vec<TemporalViolation> {
    let s = OntologySchema::default();
    Domain::new(data, &s, &DomainVocab::default()).check_temporal()
}
