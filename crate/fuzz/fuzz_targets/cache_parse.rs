//! Fuzz the cache table parser: arbitrary bytes must never panic, and any
//! accepted table must round-trip bit-exactly through the canonical writer.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = liecert::cache::parse_table(text) {
        let written = liecert::cache::write_table(&table);
        let reparsed = liecert::cache::parse_table(&written).expect("writer output parses");
        assert_eq!(reparsed, table);
        assert_eq!(liecert::cache::write_table(&reparsed), written);
    }
});
