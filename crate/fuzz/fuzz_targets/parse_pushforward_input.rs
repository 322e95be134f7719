#![no_main]

use canform::io::parse_pushforward_input;
use canform::pushforward::build_map;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(input) = parse_pushforward_input(text) {
        // map assembly must reject bad configurations with an error, not a panic
        let _ = build_map(&input.w, &input.v);
    }
});
