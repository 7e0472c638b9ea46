//! Fuzzes the single-potential spec grammar (`family:key=value,...`): must
//! return a model or a structured error, never panic.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = spinsym::parse::parse_potential_spec(text);
    }
});
