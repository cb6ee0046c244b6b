//! Germ files come from users; the parser must fail cleanly on any bytes.

#![no_main]

use libfuzzer_sys::fuzz_target;
use whitney_core::formats::parse_germ_file;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_germ_file(src);
});
