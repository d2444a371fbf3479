//! Linked-data toolkit for the DINGO research-funding ontology.
//!
//! * [`rdf`]: terms, graphs, Turtle parsing and canonical serialization,
//!   pattern matching and blank-node-aware isomorphism.
//! * [`vocab`]: loads an OWL ontology graph into a queryable schema registry.
//! * [`domain`]: funding, scheme, participation and temporal queries over data graphs.
//! * [`shapes`]: a compact shape language and validator, with built-in DINGO shapes.
//! * [`ingest`]: declarative tabular-to-graph mapping for funding-agency exports.
//! * [`docgen`]: documentation model extraction and single-file HTML rendering.

pub mod docgen;
pub mod domain;
pub mod ingest;
pub mod rdf;
pub mod shapes;
pub mod vocab;

/// The bundled DINGO ontology snapshot (Turtle).
pub const DINGO_TTL: &str = include_str!("../data/dingo.ttl");

/// Shapes for the principal DINGO classes, in the shape language.
pub const DINGO_SHAPES: &str = include_str!("../data/dingo.shapes");

/// Worked example instances conforming to the DINGO shapes.
pub const DINGO_EXAMPLES_TTL: &str = include_str!("../data/dingo-examples.ttl");

/// Example mapping for a flat grants export.
pub const EXAMPLE_MAPPING: &str = include_str!("../data/grants.mapping");

/// Example grants export matching [`EXAMPLE_MAPPING`].
pub const EXAMPLE_GRANTS_CSV: &str = include_str!("../data/grants-example.csv");
