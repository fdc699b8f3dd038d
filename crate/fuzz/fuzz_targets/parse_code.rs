#![no_main]

use libfuzzer_sys::fuzz_target;
use spatial_milnor::diagram::{parse, serialize};
use spatial_milnor::presentation::PresentationBundle;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(code) = parse(text) else { return };
    let canonical = serialize(&code);
    let back = parse(&canonical).expect("canonical text parses");
    assert_eq!(back, code);
    assert_eq!(serialize(&back), canonical);
    if code.num_colors() <= 3 && code.crossings().len() <= 12 {
        let _ = PresentationBundle::resolve(&code);
    }
});
