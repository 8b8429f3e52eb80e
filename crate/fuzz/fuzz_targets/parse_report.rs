#![no_main]

use gradering::corpus::{emit_report, parse_report};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = parse_report(text) {
        assert_eq!(parse_report(&emit_report(&report)).expect("emitted reports parse"), report);
    }
});
