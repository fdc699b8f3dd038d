#![no_main]

use libfuzzer_sys::fuzz_target;
use spatial_milnor::ring::parse_word;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(w) = parse_word(text) else { return };
    assert_eq!(parse_word(&w.to_string()).expect("display form parses"), w);
});
