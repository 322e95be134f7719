#![no_main]

use canform::io::{parse_polytope, polytope_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(parsed) = parse_polytope(text) else { return };
    // the vertex list written back must describe the same polytope
    let again = parse_polytope(&polytope_to_json(&parsed.polytope).to_string()).expect("own output parses");
    assert_eq!(again.polytope.vertices(), parsed.polytope.vertices());
    assert!(again.dropped.is_empty());
});
