//! Tabular exports to triples through a declarative mapping.
//!
//! ```text
//! base <http://data.example.org/>
//! prefix dingo: <https://w3id.org/dingo#>
//! columns grant_id, title, awarded, org
//! delimiter ;
//!
//! entity dingo:Grant
//!     key grant_id
//!     map title -> dingo:title : lang-string(en)
//!     map awarded -> dingo:award_date : date format %d/%m/%Y
//!     map org -> dingo:has_beneficiary : iri-ref(dingo:Organisation)
//!
//! entity dingo:Organisation
//!     key org
//! ```
//!
//! Value kinds are `string`, `decimal`, `date`, `lang-string(TAG)` and
//! `iri-ref(KIND)`, where KIND is another entity of the same mapping. An
//! `iri-ref` cell is used as that entity's key. Without a `format`, dates
//! must be ISO-8601 (`YYYY`, `YYYY-MM`, `YYYY-MM-DD` or a full date-time);
//! with one, the cell is read by the given chrono pattern and written as
//! `xsd:date`. Empty cells produce no triple.

use std::collections::{BTreeMap, BTreeSet};

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use serde::Serialize;

use crate::rdf::vocab::{rdf, rdfs, xsd};
use crate::rdf::{is_decimal, Graph, Iri, Literal, Term, Triple};

/// Everything except RFC 3986 unreserved characters.
const KEY_ENCODE: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'.').remove(b'_').remove(b'~');

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IngestError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: column '{column}' is not declared")]
    UndeclaredColumn { line: usize, column: String },
    #[error("line {line}: iri-ref target {kind} is not a declared entity")]
    DanglingRef { line: usize, kind: Iri },
    #[error("line {line}: entity {kind} is declared twice")]
    DuplicateEntity { line: usize, kind: Iri },
    #[error("key must not be empty")]
    EmptyKey,
    #[error("CSV input: {0}")]
    Csv(String),
    #[error("JSON input: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "arg", rename_all = "kebab-case")]
pub enum ValueKind {
    IriRef(Iri),
    String,
    Date,
    Decimal,
    LangString(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyRule {
    pub column: String,
    pub predicate: Iri,
    pub kind: ValueKind,
    /// chrono pattern for `date` cells.
    pub format: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntityRule {
    pub entity_kind: Iri,
    pub key_columns: Vec<String>,
    pub property_rules: Vec<PropertyRule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingSpec {
    pub base_iri: Iri,
    pub columns: Vec<String>,
    pub delimiter: u8,
    pub prefixes: BTreeMap<String, String>,
    pub entity_rules: Vec<EntityRule>,
}

impl MappingSpec {
    pub fn rule_count(&self) -> usize {
        self.entity_rules.iter().map(|e| e.property_rules.len()).sum()
    }
}

fn syntax(line: usize, message: impl Into<String>) -> IngestError {
    IngestError::Syntax {
        line,
        message: message.into(),
    }
}

struct MappingParser {
    prefixes: BTreeMap<String, String>,
}

impl MappingParser {
    fn iri(&self, line: usize, s: &str) -> Result<Iri, IngestError> {
        let s = s.trim();
        let full = if let Some(inner) = s.strip_prefix('<').and_then(|r| r.strip_suffix('>')) {
            inner.to_owned()
        } else if let Some((p, local)) = s.split_once(':') {
            let ns = self
                .prefixes
                .get(p)
                .ok_or_else(|| syntax(line, format!("undefined prefix '{p}'")))?;
            format!("{ns}{local}")
        } else {
            return Err(syntax(line, format!("expected an IRI, found '{s}'")));
        };
        Iri::new(full.clone()).map_err(|e| syntax(line, format!("invalid IRI <{full}>: {e}")))
    }

    fn value_kind(&self, line: usize, s: &str) -> Result<ValueKind, IngestError> {
        let s = s.trim();
        let arg = |name: &str| {
            s.strip_prefix(name)
                .and_then(|r| r.trim_start().strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
        };
        Ok(match s {
            "string" => ValueKind::String,
            "date" => ValueKind::Date,
            "decimal" => ValueKind::Decimal,
            _ => {
                if let Some(tag) = arg("lang-string") {
                    let tag = tag.trim();
                    Literal::lang("", tag).map_err(|_| syntax(line, format!("invalid language tag '{tag}'")))?;
                    ValueKind::LangString(tag.to_ascii_lowercase())
                } else if let Some(kind) = arg("iri-ref") {
                    ValueKind::IriRef(self.iri(line, kind)?)
                } else {
                    return Err(syntax(line, format!("unknown value kind '{s}'")));
                }
            }
        })
    }
}

fn check_format(line: usize, fmt: &str) -> Result<(), IngestError> {
    use chrono::format::{Item, StrftimeItems};
    if StrftimeItems::new(fmt).any(|i| matches!(i, Item::Error)) {
        return Err(syntax(line, format!("invalid date format '{fmt}'")));
    }
    Ok(())
}

pub fn parse_mapping(text: &str) -> Result<MappingSpec, IngestError> {
    let mut p = MappingParser { prefixes: BTreeMap::new() };
    let mut base: Option<Iri> = None;
    let mut columns: Option<Vec<String>> = None;
    let mut delimiter = b',';
    let mut entities: Vec<(usize, EntityRule)> = Vec::new();
    let mut refs: Vec<(usize, Iri)> = Vec::new();
    let mut used: Vec<(usize, String)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split_once(" #").map_or(raw, |(c, _)| c).trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (word, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match word {
            "base" => base = Some(p.iri(line, rest)?),
            "prefix" => {
                let (name, ns) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(line, "expected 'prefix NAME: <IRI>'"))?;
                let name = name
                    .strip_suffix(':')
                    .ok_or_else(|| syntax(line, "prefix name must end in ':'"))?;
                let ns = ns
                    .trim()
                    .strip_prefix('<')
                    .and_then(|r| r.strip_suffix('>'))
                    .ok_or_else(|| syntax(line, "expected a namespace IRI in <>"))?;
                p.prefixes.insert(name.to_owned(), ns.to_owned());
            }
            "columns" => {
                let cols: Vec<String> = rest.split(',').map(|c| c.trim().to_owned()).collect();
                if cols.iter().any(String::is_empty) {
                    return Err(syntax(line, "empty column name"));
                }
                columns = Some(cols);
            }
            "delimiter" => {
                delimiter = match rest {
                    "tab" => b'\t',
                    r if r.len() == 1 && r.is_ascii() => r.as_bytes()[0],
                    _ => return Err(syntax(line, "delimiter must be one ASCII character or 'tab'")),
                }
            }
            "entity" => {
                let kind = p.iri(line, rest)?;
                if let Some((_, _)) = entities.iter().find(|(_, e)| e.entity_kind == kind) {
                    return Err(IngestError::DuplicateEntity { line, kind });
                }
                entities.push((
                    line,
                    EntityRule {
                        entity_kind: kind,
                        key_columns: Vec::new(),
                        property_rules: Vec::new(),
                    },
                ));
            }
            "key" => {
                let (_, e) = entities.last_mut().ok_or_else(|| syntax(line, "'key' outside an entity block"))?;
                if !e.key_columns.is_empty() {
                    return Err(syntax(line, "entity has more than one 'key' line"));
                }
                for c in rest.split(',') {
                    let c = c.trim();
                    if c.is_empty() {
                        return Err(syntax(line, "empty key column"));
                    }
                    used.push((line, c.to_owned()));
                    e.key_columns.push(c.to_owned());
                }
            }
            "map" => {
                let (column, rest) = rest
                    .split_once("->")
                    .ok_or_else(|| syntax(line, "expected 'map COLUMN -> PREDICATE : KIND'"))?;
                let (pred, rest) = rest
                    .trim()
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| syntax(line, "expected ': KIND' after the predicate"))?;
                let rest = rest
                    .trim()
                    .strip_prefix(':')
                    .ok_or_else(|| syntax(line, "expected ': KIND' after the predicate"))?;
                let (kind, format) = match rest.split_once(" format ") {
                    Some((k, f)) => (k, Some(f.trim().to_owned())),
                    None => (rest, None),
                };
                let kind = p.value_kind(line, kind)?;
                if let Some(f) = &format {
                    if kind != ValueKind::Date {
                        return Err(syntax(line, "'format' applies only to date values"));
                    }
                    check_format(line, f)?;
                }
                if let ValueKind::IriRef(target) = &kind {
                    refs.push((line, target.clone()));
                }
                let predicate = p.iri(line, pred)?;
                let column = column.trim().to_owned();
                used.push((line, column.clone()));
                let (_, e) = entities.last_mut().ok_or_else(|| syntax(line, "'map' outside an entity block"))?;
                e.property_rules.push(PropertyRule {
                    column,
                    predicate,
                    kind,
                    format,
                });
            }
            other => return Err(syntax(line, format!("unknown directive '{other}'"))),
        }
    }

    let base_iri = base.ok_or_else(|| syntax(1, "missing 'base' line"))?;
    let columns = columns.unwrap_or_default();
    for (line, c) in used {
        if !columns.contains(&c) {
            return Err(IngestError::UndeclaredColumn { line, column: c });
        }
    }
    for (line, e) in &entities {
        if e.key_columns.is_empty() {
            return Err(syntax(*line, format!("entity {} has no key", e.entity_kind)));
        }
    }
    for (line, kind) in refs {
        match entities.iter().find(|(_, e)| e.entity_kind == kind) {
            None => return Err(IngestError::DanglingRef { line, kind }),
            Some((_, e)) if e.key_columns.len() != 1 => {
                return Err(syntax(line, format!("iri-ref target {kind} must have a single key column")))
            }
            Some(_) => {}
        }
    }
    Ok(MappingSpec {
        base_iri,
        columns,
        delimiter,
        prefixes: p.prefixes,
        entity_rules: entities.into_iter().map(|(_, e)| e).collect(),
    })
}

/// `base` + lowercase local name of `kind` + `/` + percent-encoded key.
pub fn mint_iri(base: &Iri, kind: &Iri, key: &str) -> Result<Iri, IngestError> {
    mint_iri_parts(base, kind, &[key])
}

/// Like [`mint_iri`] for composite keys: parts are encoded separately and joined by `/`.
pub fn mint_iri_parts(base: &Iri, kind: &Iri, parts: &[&str]) -> Result<Iri, IngestError> {
    if parts.is_empty() || parts.iter().any(|p| p.is_empty()) {
        return Err(IngestError::EmptyKey);
    }
    let encoded: Vec<String> = parts.iter().map(|p| utf8_percent_encode(p, KEY_ENCODE).to_string()).collect();
    let iri = format!("{}{}/{}", base.as_str(), kind.local_name().to_lowercase(), encoded.join("/"));
    Ok(Iri::new(iri).expect("base is absolute and the key is fully encoded"))
}

/// One input row: column name to cell text.
pub type Record = BTreeMap<String, String>;

pub fn read_csv(text: &str, delimiter: u8) -> Result<Vec<Record>, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| IngestError::Csv(e.to_string()))?.clone();
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| IngestError::Csv(e.to_string()))?;
        out.push(headers.iter().zip(row.iter()).map(|(h, v)| (h.to_owned(), v.to_owned())).collect());
    }
    Ok(out)
}

/// A JSON array of flat objects. Strings, numbers and booleans are taken as
/// text; `null` is an empty cell.
pub fn read_json(text: &str) -> Result<Vec<Record>, IngestError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| IngestError::Json(e.to_string()))?;
    let serde_json::Value::Array(items) = value else {
        return Err(IngestError::Json("expected an array of records".into()));
    };
    let mut out = Vec::with_capacity(items.len());
    for (i, item) in items.into_iter().enumerate() {
        let serde_json::Value::Object(fields) = item else {
            return Err(IngestError::Json(format!("record {i} is not an object")));
        };
        let mut rec = Record::new();
        for (k, v) in fields {
            let text = match v {
                serde_json::Value::String(s) => s,
                serde_json::Value::Null => String::new(),
                serde_json::Value::Bool(b) => b.to_string(),
                serde_json::Value::Number(n) => n.to_string(),
                _ => return Err(IngestError::Json(format!("record {i}, field '{k}' is not a scalar"))),
            };
            rec.insert(k, text);
        }
        out.push(rec);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConversionFailure {
    /// Zero-based row index.
    pub row: usize,
    pub column: String,
    pub value: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub rows: usize,
    pub triples: usize,
    /// Empty mapped cells.
    pub skipped_cells: usize,
    /// Entity instances not emitted because a key cell was empty.
    pub skipped_entities: usize,
    pub failures: Vec<ConversionFailure>,
}

/// Normalizes an ISO-8601 date cell, returning lexical form and datatype.
fn iso_date(cell: &str) -> Option<(String, Iri)> {
    if cell.contains('T') {
        chrono::NaiveDateTime::parse_from_str(cell, "%Y-%m-%dT%H:%M:%S%.f").ok()?;
        return Some((cell.to_owned(), xsd::date_time()));
    }
    let parts: Vec<&str> = cell.split('-').collect();
    let digits = |s: &str, n: usize| s.len() == n && s.bytes().all(|b| b.is_ascii_digit());
    match parts.as_slice() {
        [y] if digits(y, 4) => Some((cell.to_owned(), xsd::g_year())),
        [y, m] if digits(y, 4) && digits(m, 2) && (1..=12).contains(&m.parse::<u32>().ok()?) => {
            Some((cell.to_owned(), xsd::g_year_month()))
        }
        [y, m, d] if digits(y, 4) && digits(m, 2) && digits(d, 2) => {
            let date = chrono::NaiveDate::parse_from_str(cell, "%Y-%m-%d").ok()?;
            Some((date.format("%Y-%m-%d").to_string(), xsd::date()))
        }
        _ => None,
    }
}

fn convert(spec: &MappingSpec, rule: &PropertyRule, cell: &str) -> Result<Term, String> {
    Ok(match &rule.kind {
        ValueKind::String => Term::Literal(Literal::string(cell)),
        ValueKind::LangString(tag) => Term::Literal(Literal::lang(cell, tag).map_err(|e| e.to_string())?),
        ValueKind::Decimal => {
            if !is_decimal(cell) && !crate::rdf::is_integer(cell) {
                return Err("not a decimal number".into());
            }
            Term::Literal(Literal::typed(cell, xsd::decimal()))
        }
        ValueKind::Date => match &rule.format {
            Some(fmt) => {
                let d = chrono::NaiveDate::parse_from_str(cell, fmt)
                    .map_err(|e| format!("does not match date format '{fmt}': {e}"))?;
                Term::Literal(Literal::typed(d.format("%Y-%m-%d").to_string(), xsd::date()))
            }
            None => {
                let (lex, dt) = iso_date(cell).ok_or("not an ISO-8601 date; declare a format for other layouts")?;
                Term::Literal(Literal::typed(lex, dt))
            }
        },
        ValueKind::IriRef(kind) => Term::Iri(mint_iri(&spec.base_iri, kind, cell).map_err(|e| e.to_string())?),
    })
}

/// Converts rows to a graph. Bad cells are reported and skipped; nothing is fatal.
pub fn ingest_table(rows: &[Record], spec: &MappingSpec) -> (Graph, IngestReport) {
    let mut report = IngestReport {
        rows: rows.len(),
        ..IngestReport::default()
    };
    let mut triples: BTreeSet<Triple> = BTreeSet::new();
    let rdf_type = rdf::type_();
    let empty = String::new();
    for (i, row) in rows.iter().enumerate() {
        let cell = |c: &str| row.get(c).unwrap_or(&empty).trim();
        for entity in &spec.entity_rules {
            let key: Vec<&str> = entity.key_columns.iter().map(|c| cell(c)).collect();
            let Ok(subject) = mint_iri_parts(&spec.base_iri, &entity.entity_kind, &key) else {
                report.skipped_entities += 1;
                continue;
            };
            let subject = Term::Iri(subject);
            triples.insert(
                Triple::with_iri_predicate(subject.clone(), rdf_type.clone(), Term::Iri(entity.entity_kind.clone()))
                    .expect("IRI subject"),
            );
            for rule in &entity.property_rules {
                let value = cell(&rule.column);
                if value.is_empty() {
                    report.skipped_cells += 1;
                    continue;
                }
                match convert(spec, rule, value) {
                    Ok(object) => {
                        triples.insert(
                            Triple::with_iri_predicate(subject.clone(), rule.predicate.clone(), object).expect("IRI subject"),
                        );
                    }
                    Err(reason) => report.failures.push(ConversionFailure {
                        row: i,
                        column: rule.column.clone(),
                        value: value.to_owned(),
                        reason,
                    }),
                }
            }
        }
    }
    let mut prefixes = spec.prefixes.clone();
    prefixes.entry("xsd".into()).or_insert_with(|| xsd::NS.to_owned());
    if triples.iter().any(|t| t.predicate().as_str().starts_with(rdfs::NS)) {
        prefixes.entry("rdfs".into()).or_insert_with(|| rdfs::NS.to_owned());
    }
    let graph = Graph::new(triples, prefixes);
    report.triples = graph.len();
    (graph, report)
}
