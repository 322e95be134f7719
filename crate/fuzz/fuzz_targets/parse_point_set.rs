#![no_main]

use canform::io::parse_point_set;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_point_set(text);
    }
});
