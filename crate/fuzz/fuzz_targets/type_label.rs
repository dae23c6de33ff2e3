//! Fuzz the type-rank parser: no panic on any input, accepted labels
//! round-trip through Display, and the root-system builder either builds a
//! consistent system or rejects cleanly.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(tr) = text.parse::<liecert::rootsys::TypeRank>() {
        let shown = tr.to_string();
        let back: liecert::rootsys::TypeRank = shown.parse().expect("display round-trips");
        assert_eq!(back, tr);
        // building is only attempted at ranks where it terminates quickly
        if tr.rank <= 8 {
            if let Ok(rs) = liecert::rootsys::build_root_system(tr) {
                assert_eq!(rs.num_roots() % 2, 0);
                assert!(rs.is_root(&rs.highest_root.clone()));
            }
        }
    }
});
