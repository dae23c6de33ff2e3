//! Fuzz certificate JSON deserialization: arbitrary JSON must never panic,
//! and any accepted certificate must survive a serialize/deserialize cycle.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cert) = serde_json::from_str::<liecert::certify::Certificate>(text) {
        let json = serde_json::to_string(&cert).expect("serialize");
        let back: liecert::certify::Certificate =
            serde_json::from_str(&json).expect("round-trip");
        assert_eq!(back, cert);
    }
});
