#![no_main]
use libfuzzer_sys::fuzz_target;

use mknf_core::{parse_kb, render_kb};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(kb) = parse_kb(text) else {
        return;
    };
    let printed = render_kb(&kb);
    let reparsed = parse_kb(&printed).expect("rendered KB should parse");
    assert_eq!(kb, reparsed);
});
