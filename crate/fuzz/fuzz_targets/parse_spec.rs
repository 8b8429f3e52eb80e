#![no_main]

use gradering::corpus::{emit_spec, parse_spec, Fixture};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_spec(text) else { return };
    let again = parse_spec(&emit_spec(&doc)).expect("emitted documents parse");
    assert_eq!(again, doc);
    if doc.basis_names.len() <= 6 {
        if let Ok(fx) = Fixture::from_document(doc) {
            let _ = fx.ring_verdict();
            let _ = fx.grading_verdict();
        }
    }
});
