//! Module files declare their own ring and rank; no input may panic the parser.

#![no_main]

use libfuzzer_sys::fuzz_target;
use whitney_core::formats::parse_module_file;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_module_file(src);
});
