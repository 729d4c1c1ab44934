#![no_main]
use libfuzzer_sys::fuzz_target;

use mknf_core::parse_formula;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = parse_formula(text) {
        let printed = f.to_string();
        let reparsed = parse_formula(&printed).expect("printed formula should parse");
        assert_eq!(f, reparsed);
    }
});
