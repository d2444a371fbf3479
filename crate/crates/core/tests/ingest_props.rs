use std::collections::BTreeSet;

use proptest::prelude::*;

use dingo::ingest::{ingest_table, mint_iri, mint_iri_parts, parse_mapping, read_csv, read_json, IngestError, Record};
use dingo::rdf::Iri;
use dingo::shapes::{default_dingo_shapes, validate};
use dingo::vocab::dingo_schema;

const MAPPING: &str = "base <http://data.example.org/>\n\
prefix d: <https://w3id.org/dingo#>\n\
columns id, title, when, amount, org\n\
entity d:Grant\n\
    key id\n\
    map title -> d:title : string\n\
    map when -> d:start_time : date\n\
    map amount -> d:amount_value : decimal\n\
    map org -> d:has_beneficiary : iri-ref(d:Organisation)\n\
entity d:Organisation\n\
    key org\n";

const COLUMNS: [&str; 5] = ["id", "title", "when", "amount", "org"];

fn cell() -> impl Strategy<Value = String> {
    prop_oneof![
        Just(String::new()),
        "[a-z]{1,4}",
        prop::sample::select(vec!["2019", "2019-03", "2019-13", "2019-02-30", "2020-02-29", "1.5", "-3", "x y", " pad "])
            .prop_map(str::to_owned),
        any::<String>(),
    ]
}

fn table() -> impl Strategy<Value = Vec<Record>> {
    prop::collection::vec(prop::collection::vec(cell(), COLUMNS.len()), 0..12)
        .prop_map(|rows| rows.into_iter().map(|r| COLUMNS.iter().map(|c| c.to_string()).zip(r).collect()).collect())
}

fn to_csv(rows: &[Record]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS).unwrap();
    for r in rows {
        w.write_record(COLUMNS.iter().map(|c| r[*c].as_str())).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn to_json(rows: &[Record]) -> String {
    serde_json::to_string(rows).unwrap()
}

fn base() -> Iri {
    Iri::new("http://data.example.org/").unwrap()
}

fn kind() -> Iri {
    Iri::new("https://w3id.org/dingo#Grant").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shuffling_rows_keeps_the_graph(rows in table(), seed in any::<u64>()) {
        let spec = parse_mapping(MAPPING).unwrap();
        let (g, r) = ingest_table(&rows, &spec);
        let mut shuffled = rows.clone();
        let n = shuffled.len();
        for i in 0..n {
            shuffled.swap(i, (seed as usize).wrapping_mul(i + 3) % n);
        }
        let (g2, r2) = ingest_table(&shuffled, &spec);
        prop_assert_eq!(g.triples(), g2.triples());
        prop_assert_eq!((r.triples, r.skipped_cells, r.skipped_entities, r.failures.len()),
                        (r2.triples, r2.skipped_cells, r2.skipped_entities, r2.failures.len()));
    }

    #[test]
    fn duplicating_rows_is_idempotent(rows in table()) {
        let spec = parse_mapping(MAPPING).unwrap();
        let (g, r) = ingest_table(&rows, &spec);
        let twice: Vec<Record> = rows.iter().chain(&rows).cloned().collect();
        let (g2, r2) = ingest_table(&twice, &spec);
        prop_assert_eq!(g.triples(), g2.triples());
        prop_assert_eq!(r.triples, r2.triples);
        prop_assert_eq!(r.failures.len() * 2, r2.failures.len());
    }

    #[test]
    fn csv_and_json_readers_agree(rows in table()) {
        let from_csv = read_csv(&to_csv(&rows), b',').unwrap();
        let from_json = read_json(&to_json(&rows)).unwrap();
        prop_assert_eq!(&from_csv, &rows);
        prop_assert_eq!(&from_json, &rows);
    }

    #[test]
    fn every_failure_points_at_a_real_cell(rows in table()) {
        let spec = parse_mapping(MAPPING).unwrap();
        let (g, r) = ingest_table(&rows, &spec);
        prop_assert_eq!(r.triples, g.len());
        for f in &r.failures {
            prop_assert_eq!(rows[f.row][&f.column].trim(), f.value.as_str());
        }
    }

    #[test]
    fn minting_is_injective_on_part_lists(a in prop::collection::vec("[a-z/ %]{1,3}", 1..4),
                                          b in prop::collection::vec("[a-z/ %]{1,3}", 1..4)) {
        let ra: Vec<&str> = a.iter().map(String::as_str).collect();
        let rb: Vec<&str> = b.iter().map(String::as_str).collect();
        let ia = mint_iri_parts(&base(), &kind(), &ra).unwrap();
        let ib = mint_iri_parts(&base(), &kind(), &rb).unwrap();
        prop_assert_eq!(a == b, ia == ib, "{} {}", ia, ib);
    }

    #[test]
    fn mapping_parser_never_panics(text in "[a-z:<>()/ ,\\->\n#]{0,120}") {
        let _ = parse_mapping(&text);
    }
}

#[test]
fn minting_is_injective_over_many_keys() {
    let mut keys: BTreeSet<String> = BTreeSet::new();
    for i in 0..10_000u32 {
        let k = match i % 5 {
            0 => format!("{i}"),
            1 => format!("k/{i}"),
            2 => format!("k {i}"),
            3 => format!("ключ{i}"),
            _ => format!("{i}%2F"),
        };
        keys.insert(k);
    }
    keys.insert("a/b".into());
    keys.insert("a%2Fb".into());
    assert_eq!(keys.len(), 10_002);
    let minted: BTreeSet<Iri> = keys.iter().map(|k| mint_iri(&base(), &kind(), k).unwrap()).collect();
    assert_eq!(minted.len(), keys.len());
    assert_ne!(
        mint_iri_parts(&base(), &kind(), &["a/b"]).unwrap(),
        mint_iri_parts(&base(), &kind(), &["a", "b"]).unwrap()
    );
    assert_eq!(mint_iri(&base(), &kind(), "a b").unwrap().as_str(), "http://data.example.org/grant/a%20b");
    assert_eq!(mint_iri(&base(), &kind(), ""), Err(IngestError::EmptyKey));
}

#[test]
fn mapping_errors() {
    let e = parse_mapping("prefix d: <https://w3id.org/dingo#>\ncolumns a\nentity d:X\n  key a\n").unwrap_err();
    assert!(matches!(e, IngestError::Syntax { line: 1, .. }), "{e:?}");
    let e = parse_mapping("base <http://x.example/>\nprefix d: <http://d.example/>\ncolumns a\nentity d:X\n  key b\n").unwrap_err();
    assert_eq!(e, IngestError::UndeclaredColumn { line: 5, column: "b".into() });
    let e = parse_mapping(
        "base <http://x.example/>\nprefix d: <http://d.example/>\ncolumns a\nentity d:X\n  key a\n  map a -> d:p : iri-ref(d:Y)\n",
    )
    .unwrap_err();
    assert!(matches!(e, IngestError::DanglingRef { line: 6, .. }), "{e:?}");
    let e = parse_mapping("base <http://x.example/>\nprefix d: <http://d.example/>\ncolumns a\nentity d:X\n  key a\nentity d:X\n  key a\n")
        .unwrap_err();
    assert!(matches!(e, IngestError::DuplicateEntity { line: 6, .. }), "{e:?}");
    let e = parse_mapping("base <http://x.example/>\nprefix d: <http://d.example/>\ncolumns a\nentity d:X\n  key a\n  map a -> d:p : string format %Y\n")
        .unwrap_err();
    assert!(matches!(e, IngestError::Syntax { line: 6, .. }), "{e:?}");
}

#[test]
fn bundled_example_reports_its_bad_cell_and_conforms() {
    let spec = parse_mapping(dingo::EXAMPLE_MAPPING).unwrap();
    let rows = read_csv(dingo::EXAMPLE_GRANTS_CSV, spec.delimiter).unwrap();
    let (g, r) = ingest_table(&rows, &spec);
    let bad: Vec<(&str, &str)> = r.failures.iter().map(|f| (f.column.as_str(), f.value.as_str())).collect();
    assert_eq!(bad, [("end_date", "TBD")]);
    assert_eq!(r.rows, rows.len());
    let (_, schema) = dingo_schema();
    let report = validate(&g, &schema, &default_dingo_shapes(&schema));
    assert!(report.conformant, "{}", report.to_text());
}
