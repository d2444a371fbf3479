//! RDF data model, Turtle reading and writing, pattern matching and
//! isomorphism.

mod graph;
mod iso;
mod serialize;
mod term;
mod turtle;
pub mod vocab;

pub use graph::{Graph, Pattern};
pub use iso::{graph_isomorphic, IsomorphismLimitError, MAX_BLANK_NODES};
pub use serialize::serialize_turtle;
pub(crate) use serialize::{is_decimal, is_integer, term_to_turtle};
pub use term::{Iri, Literal, Term, TermError, Triple};
pub use turtle::{parse_turtle, parse_turtle_with_base, TurtleError, TurtleErrorKind, MAX_NESTING};

/// Every triple of `g` matching the pattern, in canonical order.
pub fn triples_matching<'g>(g: &'g Graph, pattern: &Pattern) -> Vec<&'g Triple> {
    g.triples_matching(pattern)
}
