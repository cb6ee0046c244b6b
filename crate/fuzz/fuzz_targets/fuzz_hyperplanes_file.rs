//! Hyperplane files mix a ring header with linear forms; reject bad ones
//! without panicking.

#![no_main]

use libfuzzer_sys::fuzz_target;
use whitney_core::formats::parse_hyperplanes_file;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_hyperplanes_file(src);
});
