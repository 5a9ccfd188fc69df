#![no_main]

use libfuzzer_sys::fuzz_target;
use moment_cli::documents::MeasureDocument;
use moment_core::measure_moments;

fuzz_target!(|data: &[u8]| {
    // Root isolation cost grows with coefficient size; keep inputs small.
    if data.len() > 2048 {
        return;
    }
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = MeasureDocument::parse(text) else { return };
    let mu = doc.to_measure().unwrap();
    let canonical = MeasureDocument::from_measure(&mu);
    assert_eq!(canonical.to_measure().unwrap(), mu);
    assert_eq!(canonical.canonical().unwrap(), canonical);
    let _ = measure_moments(&mu, 4, 5);
});
