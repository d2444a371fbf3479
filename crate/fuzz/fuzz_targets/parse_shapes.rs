#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(s) = dingo::shapes::parse_shapes(text) {
        let back = dingo::shapes::parse_shapes(&s.to_string()).expect("printed schema parses");
        assert_eq!(back.shapes, s.shapes);
    }
});
