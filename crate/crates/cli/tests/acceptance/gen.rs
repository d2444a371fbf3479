//! Seeded random graphs and shape schemas.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use dingo::rdf::{Graph, Iri, Literal, Term, Triple};
use dingo::shapes::{Shape, ShapeSchema, TripleConstraint, ValueCheck};

const EX: &str = "http://example.org/";
const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
const DINGO: &str = "https://w3id.org/dingo#";

fn iri(s: &str) -> Iri {
    Iri::new(s).expect("generator IRIs are valid")
}

fn xsd(local: &str) -> Iri {
    iri(&format!("{XSD}{local}"))
}

pub fn prefixes() -> BTreeMap<String, String> {
    BTreeMap::from([
        ("ex".to_owned(), EX.to_owned()),
        ("dingo".to_owned(), DINGO.to_owned()),
        ("xsd".to_owned(), XSD.to_owned()),
    ])
}

const SUBJECT_IRIS: &[&str] = &[
    "http://example.org/a",
    "http://example.org/b",
    "http://example.org/path/c",
    "http://example.org/d#frag",
    "http://example.org/trailing.",
    "http://example.org/with%20escape",
    "http://example.org/ünïcode",
    "urn:isbn:0451450523",
    "https://w3id.org/dingo#Grant",
    "http://other.example/x-y_z",
];

const PREDICATES: &[&str] = &[
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type",
    "http://example.org/p",
    "http://example.org/q",
    "https://w3id.org/dingo#funds",
    "http://other.example/p-1",
];

const STRINGS: &[&str] = &[
    "",
    "plain",
    "with \"quotes\"",
    "back\\slash",
    "line\nbreak",
    "tab\tand\rreturn",
    "ünïcödé 🦘",
    "'''triple'''",
    "ends with quote\"",
    "#not a comment",
];

fn literal(rng: &mut impl Rng) -> Literal {
    match rng.gen_range(0..6) {
        0 | 1 => Literal::string(*STRINGS.choose(rng).unwrap()),
        2 => {
            let (text, tag) = *[("hello", "en"), ("Grüezi", "de-CH"), ("bok", "hr"), ("", "en")].choose(rng).unwrap();
            Literal::lang(text, tag).expect("valid tag")
        }
        3 => {
            let (lex, dt) = *[
                ("42", "integer"),
                ("-7", "integer"),
                ("007", "integer"),
                ("3.14", "decimal"),
                ("-0.5", "decimal"),
                ("1.0e10", "double"),
                ("true", "boolean"),
                ("not a number", "integer"),
            ]
            .choose(rng)
            .unwrap();
            Literal::typed(lex, xsd(dt))
        }
        4 => {
            let (lex, dt) = *[("2019-01-01", "date"), ("2019", "gYear"), ("2019-03", "gYearMonth")].choose(rng).unwrap();
            Literal::typed(lex, xsd(dt))
        }
        _ => Literal::typed("x y", iri("http://example.org/datatype")),
    }
}

/// A graph of at most `max_triples` triples over at most `max_blanks` blank nodes.
pub fn random_graph(rng: &mut impl Rng, max_triples: usize, max_blanks: usize) -> Graph {
    let blanks = rng.gen_range(0..=max_blanks);
    let n = rng.gen_range(1..=max_triples);
    let blank = |rng: &mut _| Term::blank(format!("n{}", Rng::gen_range(rng, 0..blanks))).unwrap();
    let mut triples = Vec::with_capacity(n);
    for _ in 0..n {
        let s = if blanks > 0 && rng.gen_bool(0.5) {
            blank(rng)
        } else {
            Term::iri(*SUBJECT_IRIS.choose(rng).unwrap()).unwrap()
        };
        let p = Term::iri(*PREDICATES.choose(rng).unwrap()).unwrap();
        let o = match rng.gen_range(0..3) {
            0 if blanks > 0 => blank(rng),
            0 | 1 => Term::iri(*SUBJECT_IRIS.choose(rng).unwrap()).unwrap(),
            _ => literal(rng).into(),
        };
        triples.push(Triple::new(s, p, o).expect("predicate is an IRI"));
    }
    Graph::new(triples, prefixes())
}

/// The same graph with blank nodes relabelled by a random bijection.
pub fn relabel(rng: &mut impl Rng, g: &Graph) -> Graph {
    let labels: BTreeSet<&str> = g.blank_nodes();
    let mut fresh: Vec<String> = (0..labels.len()).map(|i| format!("r{i}")).collect();
    fresh.shuffle(rng);
    let map: BTreeMap<&str, String> = labels.into_iter().zip(fresh).collect();
    let rename = |t: &Term| match t {
        Term::BlankNode(b) => Term::blank(map[b.as_str()].clone()).unwrap(),
        other => other.clone(),
    };
    let mut triples: Vec<Triple> = g
        .triples()
        .iter()
        .map(|t| Triple::with_iri_predicate(rename(t.subject()), t.predicate().clone(), rename(t.object())).unwrap())
        .collect();
    triples.shuffle(rng);
    Graph::new(triples, g.prefixes().clone())
}

/// A small edit that usually, but not always, breaks isomorphism.
pub fn mutate(rng: &mut impl Rng, g: &Graph) -> Graph {
    let mut triples: Vec<Triple> = g.triples().to_vec();
    let blanks: Vec<String> = g.blank_nodes().into_iter().map(str::to_owned).collect();
    let i = rng.gen_range(0..triples.len());
    let (s, p, o) = triples[i].clone().into_parts();
    let swap = |t: &Term, rng: &mut _| match t {
        Term::BlankNode(_) if !blanks.is_empty() => Term::blank(blanks.choose(rng).unwrap().clone()).unwrap(),
        other => other.clone(),
    };
    triples[i] = match rng.gen_range(0..3) {
        0 => Triple::with_iri_predicate(swap(&s, rng), p, o).unwrap(),
        1 => Triple::with_iri_predicate(s, p, swap(&o, rng)).unwrap(),
        _ => Triple::with_iri_predicate(s, iri("http://example.org/mutated"), o).unwrap(),
    };
    Graph::new(triples, g.prefixes().clone())
}

// ---------------------------------------------------------------------------
// Validation inputs

const CLASSES: &[&str] = &[
    "Grant",
    "ResearchGrant",
    "Project",
    "ResearchProject",
    "Person",
    "Organisation",
    "UniversityOrganisation",
    "FundingScheme",
    "Country",
];

const VALUE_PREDICATES: &[&str] = &[
    "has_beneficiary",
    "funds",
    "title",
    "grant_identifier",
    "start_time",
    "affiliated_with",
    "has_country",
    "is_subscheme_of",
];

fn dingo(local: &str) -> Iri {
    iri(&format!("{DINGO}{local}"))
}

/// A data graph of typed nodes, drawn so that most constraints are hit both ways.
pub fn random_data(rng: &mut impl Rng) -> Graph {
    let nodes: Vec<Term> = (0..6)
        .map(|i| Term::iri(format!("{EX}n{i}")).unwrap())
        .chain((0..2).map(|i| Term::blank(format!("b{i}")).unwrap()))
        .collect();
    let rdf_type = iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    let mut triples = Vec::new();
    for n in &nodes {
        for _ in 0..rng.gen_range(0..=2) {
            let class = if rng.gen_bool(0.1) { iri("http://example.org/Unknown") } else { dingo(CLASSES.choose(rng).unwrap()) };
            triples.push(Triple::with_iri_predicate(n.clone(), rdf_type.clone(), class.into()).unwrap());
        }
    }
    for _ in 0..rng.gen_range(0..=20) {
        let s = nodes.choose(rng).unwrap().clone();
        let p = if rng.gen_bool(0.1) { iri("http://example.org/extra") } else { dingo(VALUE_PREDICATES.choose(rng).unwrap()) };
        let o: Term = match rng.gen_range(0..4) {
            0 | 1 => nodes.choose(rng).unwrap().clone(),
            _ => literal(rng).into(),
        };
        triples.push(Triple::with_iri_predicate(s, p, o).unwrap());
    }
    Graph::new(triples, prefixes())
}

fn random_check(rng: &mut impl Rng, names: &[String]) -> ValueCheck {
    match rng.gen_range(0..5) {
        0 => ValueCheck::Any,
        1 => ValueCheck::IriKind,
        2 => {
            let all = [xsd("string"), xsd("date"), xsd("gYear"), iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#langString")];
            let k = rng.gen_range(1..=all.len());
            ValueCheck::LiteralOfDatatype(all.choose_multiple(rng, k).cloned().collect())
        }
        3 => ValueCheck::NodeOfClass(dingo(CLASSES.choose(rng).unwrap())),
        _ => ValueCheck::ShapeRef(names.choose(rng).unwrap().clone()),
    }
}

/// Up to four shapes; some target nothing, so references to them dangle.
pub fn random_shapes(rng: &mut impl Rng) -> ShapeSchema {
    let count = rng.gen_range(1..=4);
    let names: Vec<String> = (0..count).map(|i| format!("S{i}")).collect();
    let mut shapes = BTreeMap::new();
    let mut target_map = Vec::new();
    for name in &names {
        let mut preds: Vec<&str> = VALUE_PREDICATES.to_vec();
        preds.shuffle(rng);
        let constraints = preds[..rng.gen_range(0..=4)]
            .iter()
            .map(|p| {
                let min = rng.gen_range(0..=2);
                let max = if rng.gen_bool(0.3) { None } else { Some(min + rng.gen_range(0..=2)) };
                TripleConstraint {
                    predicate: dingo(p),
                    min,
                    max,
                    check: random_check(rng, &names),
                }
            })
            .collect();
        shapes.insert(
            name.clone(),
            Shape {
                name: name.clone(),
                constraints,
                closed: rng.gen_bool(0.25),
            },
        );
        for _ in 0..rng.gen_range(0..=2) {
            target_map.push((dingo(CLASSES.choose(rng).unwrap()), name.clone()));
        }
    }
    target_map.sort();
    target_map.dedup();
    ShapeSchema {
        shapes,
        target_map,
        prefixes: BTreeMap::from([("dingo".to_owned(), DINGO.to_owned())]),
    }
}
