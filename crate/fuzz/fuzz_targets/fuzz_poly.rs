//! Polynomial grammar must reject garbage with an error, never a panic.

#![no_main]

use libfuzzer_sys::fuzz_target;
use whitney_core::order::MonomialOrder;
use whitney_core::parse::parse_poly;
use whitney_core::ring::PolyRing;

fuzz_target!(|data: &[u8]| {
    // Size cap keeps the executions fast; the grammar has no length-dependent
    // states beyond this.
    if data.len() > 2048 {
        return;
    }
    let Ok(src) = std::str::from_utf8(data) else {
        return;
    };
    let ring = PolyRing::new(vec!["t", "x", "y", "z"], MonomialOrder::GrevLex);
    let _ = parse_poly(&ring, src);
});
