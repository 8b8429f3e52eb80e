#![no_main]

use gradering::corpus::parse_params;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(params) = parse_params(text) {
        assert_eq!(parse_params(&params.to_string()).expect("printed params parse"), params);
    }
});
