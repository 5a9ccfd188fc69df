#![no_main]

use libfuzzer_sys::fuzz_target;
use moment_core::{classify, det_sequence, extend, Classification, ExactScalar, MomentWindow};

// Each pair of bytes becomes one term `num / den` with a signed numerator
// and a denominator in 1..=8.
fn decode(data: &[u8]) -> Vec<ExactScalar> {
    data.chunks_exact(2)
        .take(13)
        .map(|c| ExactScalar::new((c[0] as i8).into(), ((c[1] % 8) as i64 + 1).into()))
        .collect()
}

fuzz_target!(|data: &[u8]| {
    let Ok(w) = MomentWindow::new(decode(data)) else { return };
    let class = classify(&w);
    assert_eq!(det_sequence(&w).len(), w.horizon() + 1);
    if let Classification::Degenerate { n0, window_consistent: true } = class {
        let tail = extend(&w, 3).expect("consistent degenerate window extends");
        let longer = w.extended(tail);
        let again = classify(&longer);
        assert_eq!(again, Classification::Degenerate { n0, window_consistent: true }, "{w:?}");
    }
});
