#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(rows) = dingo::ingest::read_json(text) {
        let spec = dingo::ingest::parse_mapping(dingo::EXAMPLE_MAPPING).unwrap();
        let _ = dingo::ingest::ingest_table(&rows, &spec);
    }
});
