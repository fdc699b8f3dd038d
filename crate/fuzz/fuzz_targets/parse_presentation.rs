#![no_main]

use libfuzzer_sys::fuzz_target;
use spatial_milnor::presentation::DirectPresentation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = DirectPresentation::parse(text) else { return };
    if p.colors().len() <= 4 {
        for r in p.relators(p.max_degree()) {
            assert!(r.series.constant_term() == 1.into());
        }
    }
});
