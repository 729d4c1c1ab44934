#![no_main]
use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;

use mknf_core::{parse_kb, parse_pair, parse_partition, KnowledgeBase};

fn kb() -> &'static KnowledgeBase {
    static KB: OnceLock<KnowledgeBase> = OnceLock::new();
    KB.get_or_init(|| {
        parse_kb("#ont a -> c.\na ; b :- not d.\nc :- a, not e.\nd ; e.\n").unwrap()
    })
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let kb = kb();
    let pair = parse_pair(kb, text);
    let partition = parse_partition(kb, text);
    let contained = matches!(&pair, Ok((t, p)) if t.is_subset(p));
    assert_eq!(contained, partition.is_ok());
    if let Ok(part) = partition {
        let printed = part.display(kb).to_string();
        let reparsed = parse_partition(kb, &printed).expect("printed partition should parse");
        assert_eq!(part, reparsed);
    }
});
