//! Fuzzes the line-oriented `key = value` configuration parser: must return
//! a map or a structured error, never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = spinsym::parse::parse_config(text);
    }
});
