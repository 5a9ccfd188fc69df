#![no_main]

use libfuzzer_sys::fuzz_target;
use moment_cli::documents::SequenceDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = SequenceDocument::parse(text) else { return };
    let json = serde_json::to_string(&doc).unwrap();
    let again = SequenceDocument::parse(&json).expect("canonical document reparses");
    assert_eq!(again, doc);
    assert_eq!(SequenceDocument::from_window(&doc.to_window().unwrap()), doc);
});
