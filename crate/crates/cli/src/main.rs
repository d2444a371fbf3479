use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use dingo::domain::{Domain, DomainError, DomainVocab};
use dingo::rdf::{parse_turtle, parse_turtle_with_base, serialize_turtle, Graph, Iri, Term};
use dingo::shapes::{default_dingo_shapes, parse_shapes, validate};
use dingo::vocab::{load_ontology, OntologySchema, COUNTING_RULE};
use dingo::{docgen, ingest};

/// Linked-data toolkit for the DINGO research-funding ontology.
#[derive(Debug, Parser)]
#[command(name = "dingo", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse Turtle and write it back in canonical form.
    Convert {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Base IRI for resolving relative IRIs.
        #[arg(long)]
        base: Option<String>,
    },
    /// Count the classes and properties an ontology defines.
    Stats {
        /// Ontology file; the bundled DINGO snapshot when omitted.
        ontology: Option<PathBuf>,
    },
    /// Validate a data graph against shapes. Exits 1 when nonconformant.
    Validate {
        data: PathBuf,
        /// Shape file; the built-in DINGO shapes when omitted.
        #[arg(long)]
        shapes: Option<PathBuf>,
        #[arg(long)]
        ontology: Option<PathBuf>,
        #[arg(long)]
        base: Option<String>,
    },
    /// Convert a CSV or JSON table to Turtle through a mapping.
    Ingest {
        /// Input table; `.json` files are read as JSON arrays, anything else as CSV.
        table: PathBuf,
        #[arg(long)]
        mapping: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a domain query over a data graph.
    Query {
        #[arg(value_enum)]
        kind: QueryKind,
        data: PathBuf,
        /// Focus node: `<iri>`, an absolute IRI, a prefixed name or `_:label`.
        node: Option<String>,
        /// Include criteria inherited from parent schemes.
        #[arg(long)]
        inherited: bool,
        #[arg(long)]
        ontology: Option<PathBuf>,
        #[arg(long)]
        base: Option<String>,
    },
    /// Render HTML documentation for an ontology.
    Docgen {
        ontology: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QueryKind {
    GrantsOf,
    ProjectsOf,
    Ancestry,
    Criteria,
    Participants,
    Beneficiaries,
    NonBeneficiaryParticipants,
    TemporalCheck,
}

enum Failure {
    /// Unreadable or malformed input.
    Input(anyhow::Error),
    /// Data that is well formed but invalid (for example a scheme cycle).
    Data(anyhow::Error),
    Usage(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<ExitCode, Failure>;

const OK: u8 = 0;
const NONCONFORMANT: u8 = 1;
const INPUT_ERROR: u8 = 2;
const USAGE_ERROR: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(NONCONFORMANT)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).context("cannot write to standard output")
        }
    }
}

fn check_base(base: Option<&str>) -> Result<Option<&str>, Failure> {
    if let Some(b) = base {
        Iri::new(b).map_err(|e| Failure::Usage(format!("--base: {e}")))?;
    }
    Ok(base)
}

fn load_graph(path: &Path, base: Option<&str>) -> Result<Graph, Failure> {
    let text = read(path)?;
    let g = match base {
        Some(b) => parse_turtle_with_base(&text, b),
        None => parse_turtle(&text),
    };
    Ok(g.with_context(|| format!("{}", path.display()))?)
}

fn load_schema(path: Option<&Path>) -> Result<(Graph, OntologySchema), Failure> {
    let (text, name) = match path {
        Some(p) => (read(p)?, p.display().to_string()),
        None => (dingo::DINGO_TTL.to_owned(), "bundled ontology".to_owned()),
    };
    let g = parse_turtle(&text).with_context(|| name.clone())?;
    let s = load_ontology(&g).with_context(|| name)?;
    Ok((g, s))
}

fn parse_node(text: &str, g: &Graph) -> Result<Term, Failure> {
    let bad = |e: &dyn std::fmt::Display| Failure::Usage(format!("node '{text}': {e}"));
    if let Some(label) = text.strip_prefix("_:") {
        return Term::blank(label).map_err(|e| bad(&e));
    }
    if let Some(inner) = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        return Term::iri(inner).map_err(|e| bad(&e));
    }
    if let Some((p, local)) = text.split_once(':') {
        if let Some(ns) = g.prefixes().get(p) {
            return Term::iri(format!("{ns}{local}")).map_err(|e| bad(&e));
        }
    }
    Term::iri(text).map_err(|e| bad(&e))
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Convert { input, out, base } => {
            let base = check_base(base.as_deref())?;
            let g = load_graph(&input, base)?;
            write_output(out.as_deref(), &serialize_turtle(&g))?;
            Ok(ExitCode::from(OK))
        }
        Command::Stats { ontology } => {
            let (_, s) = load_schema(ontology.as_deref())?;
            let st = s.stats();
            let text = match format {
                Format::Text => format!(
                    "classes: {}, properties: {}\nnamespaces: {}\ncounting rule: {COUNTING_RULE}\n",
                    st.classes, st.properties, st.namespaces
                ),
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "classes": st.classes,
                        "properties": st.properties,
                        "namespaces": st.namespaces,
                        "namespace": s.own_namespace(),
                        "counting_rule": COUNTING_RULE,
                    })
                ),
            };
            write_output(None, &text)?;
            Ok(ExitCode::from(OK))
        }
        Command::Validate { data, shapes, ontology, base } => {
            let base = check_base(base.as_deref())?;
            let (_, s) = load_schema(ontology.as_deref())?;
            let shapes = match &shapes {
                Some(p) => parse_shapes(&read(p)?).with_context(|| p.display().to_string())?,
                None => default_dingo_shapes(&s),
            };
            let g = load_graph(&data, base)?;
            let report = validate(&g, &s, &shapes);
            let text = match format {
                Format::Text => report.to_text(),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).context("serializing report")?),
            };
            write_output(None, &text)?;
            if report.conformant {
                eprintln!("conformant");
                Ok(ExitCode::from(OK))
            } else {
                eprintln!("nonconformant: {} violation(s)", report.violations.len());
                Ok(ExitCode::from(NONCONFORMANT))
            }
        }
        Command::Ingest { table, mapping, out } => {
            let spec = ingest::parse_mapping(&read(&mapping)?).with_context(|| mapping.display().to_string())?;
            let text = read(&table)?;
            let is_json = table.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
            let rows = if is_json {
                ingest::read_json(&text)
            } else {
                ingest::read_csv(&text, spec.delimiter)
            }
            .with_context(|| table.display().to_string())?;
            let (g, report) = ingest::ingest_table(&rows, &spec);
            write_output(out.as_deref(), &serialize_turtle(&g))?;
            match format {
                Format::Text => {
                    eprintln!(
                        "rows: {}, triples: {}, skipped cells: {}, skipped entities: {}, failures: {}",
                        report.rows,
                        report.triples,
                        report.skipped_cells,
                        report.skipped_entities,
                        report.failures.len()
                    );
                    for f in &report.failures {
                        eprintln!("row {} column {}: '{}': {}", f.row + 1, f.column, f.value, f.reason);
                    }
                }
                Format::Json => eprintln!("{}", serde_json::to_string(&report).context("serializing report")?),
            }
            Ok(ExitCode::from(OK))
        }
        Command::Query { kind, data, node, inherited, ontology, base } => {
            let base = check_base(base.as_deref())?;
            let (_, s) = load_schema(ontology.as_deref())?;
            let g = load_graph(&data, base)?;
            let node = match (kind, node) {
                (QueryKind::TemporalCheck, _) => None,
                (_, Some(n)) => Some(parse_node(&n, &g)?),
                (_, None) => return Err(Failure::Usage(format!(
                    "query {} needs a focus node",
                    kind.to_possible_value().map(|v| v.get_name().to_owned()).unwrap_or_default()
                ))),
            };
            let vocab = DomainVocab::default();
            let text = query(&Domain::new(&g, &s, &vocab), kind, node.as_ref(), inherited, format)?;
            write_output(None, &text)?;
            Ok(ExitCode::from(OK))
        }
        Command::Docgen { ontology, out } => {
            let (g, s) = load_schema(ontology.as_deref())?;
            let model = docgen::extract_doc_model(&g, &s);
            let text = match format {
                Format::Text => docgen::render_html(&model),
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&model).context("serializing model")?),
            };
            write_output(out.as_deref(), &text)?;
            Ok(ExitCode::from(OK))
        }
    }
}

fn cycle(e: DomainError) -> Failure {
    Failure::Data(anyhow!(e))
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string() + "\n").collect()
}

fn query(d: &Domain, kind: QueryKind, node: Option<&Term>, inherited: bool, format: Format) -> Result<String, Failure> {
    let node = || node.expect("checked by caller");
    let (text, value, warnings) = match kind {
        QueryKind::GrantsOf | QueryKind::ProjectsOf => {
            let r = if kind == QueryKind::GrantsOf {
                d.grants_funding_project(node())
            } else {
                d.projects_funded_by(node())
            };
            (lines(&r.value), json!(r.value), r.warnings)
        }
        QueryKind::Ancestry => {
            let r = d.scheme_ancestry(node()).map_err(cycle)?;
            (lines(&r), json!(r), Vec::new())
        }
        QueryKind::Criteria => {
            let r = d.criteria_for_scheme(node(), inherited).map_err(cycle)?;
            (lines(&r), json!(r), Vec::new())
        }
        QueryKind::Participants => {
            let r = d.participants_with_roles(node());
            let text = lines(r.value.iter().map(|p| match &p.role {
                Some(role) => format!("{}\t{role}", p.agent),
                None => format!("{}\t-", p.agent),
            }));
            (text, json!(r.value), r.warnings)
        }
        QueryKind::Beneficiaries => {
            let r = d.beneficiaries_of(node());
            (lines(&r), json!(r), Vec::new())
        }
        QueryKind::NonBeneficiaryParticipants => {
            let r = d.non_beneficiary_participants(node());
            (lines(&r), json!(r), Vec::new())
        }
        QueryKind::TemporalCheck => {
            let r = d.check_temporal();
            let text = lines(r.iter().map(|v| {
                let detail = match &v.issue {
                    dingo::domain::TemporalIssue::StartAfterEnd { start, end } => format!("{start} > {end}"),
                    dingo::domain::TemporalIssue::Unparseable { property, value } => format!("{property} {value}"),
                };
                format!("{}\t{}\t{}\t{}\t{detail}", v.node, v.issue.code(), v.start_property, v.end_property)
            }));
            (text, json!(r), Vec::new())
        }
    };
    match format {
        Format::Text => {
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            Ok(text)
        }
        Format::Json => Ok(format!("{}\n", json!({ "results": value, "warnings": warnings }))),
    }
}
