#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(g) = dingo::rdf::parse_turtle(text) {
        let again = dingo::rdf::parse_turtle(&dingo::rdf::serialize_turtle(&g)).expect("serializer output parses");
        assert_eq!(g.len(), again.len());
    }
});
