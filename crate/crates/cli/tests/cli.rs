use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dingo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dingo")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(rel: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(rel).display().to_string()
}

fn examples(dir: &Path) -> PathBuf {
    let p = dir.join("examples.ttl");
    fs::write(&p, dingo::DINGO_EXAMPLES_TTL).unwrap();
    p
}

#[test]
fn stats_reports_snapshot_counts() {
    let o = dingo(&["stats"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("classes: 40, properties: 68\n"));

    let o = dingo(&["stats", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"], 40);
    assert_eq!(v["properties"], 68);
    assert_eq!(v["namespace"], "https://w3id.org/dingo#");
}

#[test]
fn convert_is_canonical_and_resolves_base() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.ttl");
    fs::write(&input, "<b> <p> \"x\" .\n<a> <p> <c> .\n").unwrap();
    let out = dir.path().join("out.ttl");
    let o = dingo(&["convert", input.to_str().unwrap(), "--base", "http://example.org/", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(
        text,
        "<http://example.org/a> <http://example.org/p> <http://example.org/c> .\n<http://example.org/b> <http://example.org/p> \"x\" .\n"
    );

    let again = dingo(&["convert", out.to_str().unwrap()]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn convert_without_base_rejects_relative_iris() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.ttl");
    fs::write(&input, "<b> <p> <c> .\n").unwrap();
    let o = dingo(&["convert", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:"), "{}", stderr(&o));
}

#[test]
fn syntax_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ttl");
    fs::write(&bad, "@prefix ex: <http://example.org/> .\nex:a ex:b .\n").unwrap();
    let o = dingo(&["convert", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2:"), "{}", stderr(&o));

    let o = dingo(&["convert", "/definitely/missing.ttl"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(dingo(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(dingo(&["stats", "--format", "yaml"]).status.code(), Some(3));
    assert_eq!(dingo(&["convert", "x.ttl", "--base", "not an iri"]).status.code(), Some(3));
    assert_eq!(dingo(&["--help"]).status.code(), Some(0));
    assert_eq!(dingo(&["--version"]).status.code(), Some(0));
}

#[test]
fn validate_exit_codes_follow_conformance() {
    let ok = dingo(&["validate", &fixture("validation/conformant/multi-grant-project.ttl")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).is_empty());

    let bad = dingo(&["validate", &fixture("validation/nonconformant/grant-without-beneficiary.ttl")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("missing-required"));

    let json = dingo(&["validate", "--format", "json", &fixture("validation/nonconformant/grant-without-beneficiary.ttl")]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["conformant"], false);
    assert_eq!(v["violations"][0]["code"], "missing-required");
}

#[test]
fn validate_with_custom_shapes() {
    let o = dingo(&[
        "validate",
        &fixture("validation/nonconformant/closed-shape-extra.ttl"),
        "--shapes",
        &fixture("validation/nonconformant/closed-shape-extra.shapes"),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).matches("closed-shape-extra-predicate").count(), 2);

    let dir = tempfile::tempdir().unwrap();
    let shapes = dir.path().join("bad.shapes");
    fs::write(&shapes, "shape A { rdfs:label @Missing }\n").unwrap();
    let o = dingo(&["validate", &fixture("validation/conformant/empty.ttl"), "--shapes", shapes.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn queries_over_worked_examples() {
    let dir = tempfile::tempdir().unwrap();
    let data = examples(dir.path());
    let data = data.to_str().unwrap();

    let o = dingo(&["query", "grants-of", data, "ex:project_atlas"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "<http://example.org/grant_snsf_2>\n<http://example.org/grant_stg_1>\n");

    let o = dingo(&["query", "ancestry", data, "<http://example.org/erc_stg>"]);
    assert_eq!(stdout(&o), "<http://example.org/erc>\n<http://example.org/h2020>\n");

    let o = dingo(&["query", "criteria", data, "http://example.org/erc_stg"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = dingo(&["query", "criteria", "--inherited", data, "ex:erc_stg"]);
    assert_eq!(stdout(&o).lines().count(), 3);

    let o = dingo(&["query", "non-beneficiary-participants", data, "ex:project_atlas"]);
    assert_eq!(stdout(&o), "<http://example.org/marko>\n");

    let o = dingo(&["query", "participants", "--format", "json", data, "ex:project_atlas"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
    assert!(v["warnings"].as_array().unwrap().is_empty());

    let o = dingo(&["query", "temporal-check", data]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn query_warnings_and_errors() {
    let o = dingo(&["query", "grants-of", &fixture("semantic/14-untyped-positions.ttl"), "ex:p1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("warning: <http://example.org/thing>: node is not typed as Grant"));

    let o = dingo(&["query", "ancestry", &fixture("semantic/13-scheme-cycle.ttl"), "ex:s3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cycle"));

    let o = dingo(&["query", "grants-of", &fixture("semantic/13-scheme-cycle.ttl")]);
    assert_eq!(o.status.code(), Some(3));
    let o = dingo(&["query", "grants-of", &fixture("semantic/13-scheme-cycle.ttl"), "no scheme here"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn temporal_check_lists_violations() {
    let o = dingo(&["query", "temporal-check", &fixture("semantic/12-temporal.ttl")]);
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4, "{out}");
    assert!(out.contains("<http://example.org/g1>\tstart-after-end"));
    assert!(out.contains("<http://example.org/p2>\tunparseable-date"));
}

#[test]
fn ingest_writes_turtle_and_reports_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("g.csv");
    let mapping = dir.path().join("g.mapping");
    let out = dir.path().join("g.ttl");
    fs::write(&csv, dingo::EXAMPLE_GRANTS_CSV).unwrap();
    fs::write(&mapping, dingo::EXAMPLE_MAPPING).unwrap();
    let o = dingo(&["ingest", csv.to_str().unwrap(), "--mapping", mapping.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).starts_with("rows: 61,"), "{}", stderr(&o));
    assert!(stderr(&o).contains("TBD"));

    let v = dingo(&["validate", out.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0));
}

#[test]
fn ingest_reads_json_tables() {
    let dir = tempfile::tempdir().unwrap();
    let mapping = dir.path().join("m.mapping");
    fs::write(
        &mapping,
        "base <http://example.org/>\nprefix dingo: <https://w3id.org/dingo#>\ncolumns id, title\nentity dingo:Project\nkey id\nmap title -> dingo:title : string\n",
    )
    .unwrap();
    let table = dir.path().join("t.json");
    fs::write(&table, r#"[{"id": "P1", "title": "Alpha"}, {"id": 2, "title": null}]"#).unwrap();
    let o = dingo(&["ingest", table.to_str().unwrap(), "--mapping", mapping.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("dingo:title \"Alpha\""), "{text}");
    assert!(text.contains("project/2"), "{text}");
}

#[test]
fn docgen_writes_html() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dingo.html");
    let o = dingo(&["docgen", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let html = fs::read_to_string(&out).unwrap();
    assert_eq!(html.matches("data-kind=\"class\"").count(), 40);
    assert!(dingo::docgen::dangling_fragment_links(&html).is_empty());
}
