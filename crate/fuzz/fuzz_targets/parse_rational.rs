#![no_main]

use libfuzzer_sys::fuzz_target;
use moment_core::exact_algebra::canonical_string;
use moment_core::parse_rational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_rational(text) {
        let canonical = canonical_string(&q);
        assert_eq!(parse_rational(&canonical).unwrap(), q, "{text:?} -> {canonical}");
    }
});
