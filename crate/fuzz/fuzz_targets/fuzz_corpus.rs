//! Fuzzes the comparison-corpus parser (`pair <lhs> :: <rhs> [:: options]`
//! lines): must return cases or a structured error, never panic, and never
//! materialize unboundedly many channels from list options.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = spinsym::parse::parse_corpus(text);
    }
});
