//! Curve files are parsed against a caller-supplied ring; exercise both the
//! line framing and the per-component series parsing.

#![no_main]

use libfuzzer_sys::fuzz_target;
use whitney_core::formats::parse_curves_file;
use whitney_core::order::MonomialOrder;
use whitney_core::ring::PolyRing;

fuzz_target!(|data: &[u8]| {
    if data.len() > 4096 {
        return;
    }
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let ring = PolyRing::new(vec!["t", "x", "y", "z"], MonomialOrder::GrevLex);
    let _ = parse_curves_file(src, &ring);
});
