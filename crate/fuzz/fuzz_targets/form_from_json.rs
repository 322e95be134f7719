#![no_main]

use canform::io::{form_from_json, form_to_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(form) = form_from_json(text) else { return };
    let out = form_to_json(&form).to_string();
    let back = form_from_json(&out).expect("own output parses");
    assert_eq!(back, form);
    assert_eq!(form_to_json(&back).to_string(), out);
});
