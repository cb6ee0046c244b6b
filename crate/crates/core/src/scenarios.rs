//! Bundled worked scenarios.
//!
//! The germ/curve/hyperplane files under `scenarios/` at the repository
//! root are embedded here at compile time and parsed on demand, so the
//! checked-in files are the single source of truth for both the library
//! builders and the CLI examples.

use crate::curves::CurveGerm;
use crate::formats::{
    parse_curves_file, parse_germ_file, parse_hyperplanes_file, HyperplaneFile,
};
use crate::groebner::IdealSpec;
use crate::jacobian::GermPresentation;
use crate::order::MonomialOrder;
use crate::parse::parse_poly;
use crate::poly::Poly;
use crate::ring::PolyRing;

pub const EXAMPLE_1_1_GERM: &str = include_str!("../../../scenarios/example_1_1.germ");
pub const EXAMPLE_1_1_SECTION_GERM: &str =
    include_str!("../../../scenarios/example_1_1_section.germ");
pub const A2_GERM: &str = include_str!("../../../scenarios/a2.germ");
pub const A2_PROBES: &str = include_str!("../../../scenarios/a2_probes.curves");
pub const CONE_GERM: &str = include_str!("../../../scenarios/cone.germ");
pub const CONE_FIBER_GERM: &str = include_str!("../../../scenarios/cone_fiber.germ");
pub const CONE_PROBES: &str = include_str!("../../../scenarios/cone_probes.curves");
pub const CONE_HYPERPLANES: &str =
    include_str!("../../../scenarios/cone_hyperplanes.hyperplanes");
pub const PARAM_IDEAL_MODULE: &str = include_str!("../../../scenarios/param_ideal.module");
pub const MAX_SQ_MODULE: &str = include_str!("../../../scenarios/max_sq.module");

/// Embedded scenario file contents by file name (for CLI name resolution).
pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        "example_1_1.germ" => Some(EXAMPLE_1_1_GERM),
        "example_1_1_section.germ" => Some(EXAMPLE_1_1_SECTION_GERM),
        "a2.germ" => Some(A2_GERM),
        "a2_probes.curves" => Some(A2_PROBES),
        "cone.germ" => Some(CONE_GERM),
        "cone_fiber.germ" => Some(CONE_FIBER_GERM),
        "cone_probes.curves" => Some(CONE_PROBES),
        "cone_hyperplanes.hyperplanes" => Some(CONE_HYPERPLANES),
        "param_ideal.module" => Some(PARAM_IDEAL_MODULE),
        "max_sq.module" => Some(MAX_SQ_MODULE),
        _ => None,
    }
}

/// The two-plane family in C^5: one fixed three-plane, one moving with t.
pub fn example_1_1_family() -> GermPresentation {
    parse_germ_file(EXAMPLE_1_1_GERM).expect("bundled germ parses")
}

/// Its hyperplane section x = z + w, carrying both the reduced structure
/// (f-lines) and the product structure (g-lines).
pub fn example_1_1_section() -> GermPresentation {
    parse_germ_file(EXAMPLE_1_1_SECTION_GERM).expect("bundled germ parses")
}

/// The two plane ideals of the section, and the element that separates the
/// reduced structure from the product structure.
pub fn example_1_1_section_ideals() -> (IdealSpec, IdealSpec, Poly) {
    let ring = example_1_1_section().ring;
    let p = |s: &str| parse_poly(&ring, s).expect("bundled polynomial parses");
    let i1 = IdealSpec::new(ring.clone(), vec![p("z + w"), p("y")]);
    let i2 = IdealSpec::new(ring.clone(), vec![p("w + t*y"), p("z")]);
    let h = p("z + w + t*y");
    (i1, i2, h)
}

/// The cusp-to-smooth family z1^3 + y*z1 - z2^2 with auxiliary function z2.
pub fn a2_family() -> GermPresentation {
    parse_germ_file(A2_GERM).expect("bundled germ parses")
}

/// On-variety probe curves for the a2 family; the first is the W witness.
pub fn a2_probes() -> Vec<CurveGerm> {
    parse_curves_file(A2_PROBES, &a2_family().ring).expect("bundled curves parse")
}

/// The constant family over the quadric cone z1^2 - z2^2 + z3^2.
pub fn cone_family() -> GermPresentation {
    parse_germ_file(CONE_GERM).expect("bundled germ parses")
}

/// The cone as a single fiber germ (no parameter block).
pub fn cone_fiber() -> GermPresentation {
    parse_germ_file(CONE_FIBER_GERM).expect("bundled germ parses")
}

/// Lines on the cone family, some moving in the parameter direction.
pub fn cone_probes() -> Vec<CurveGerm> {
    parse_curves_file(CONE_PROBES, &cone_family().ring).expect("bundled curves parse")
}

/// A small hyperplane sample for scans over the cone family.
pub fn cone_hyperplanes() -> HyperplaneFile {
    parse_hyperplanes_file(CONE_HYPERPLANES).expect("bundled hyperplanes parse")
}

/// The plane-curve germ x^(k+1) + y^2, whose Jacobian ideal has colength k.
pub fn milnor_fiber(k: u32) -> GermPresentation {
    let ring = PolyRing::new(vec!["x", "y"], MonomialOrder::GrevLex);
    let f = parse_poly(&ring, &format!("x^{} + y^2", k + 1)).expect("polynomial parses");
    let mut p = GermPresentation::new(format!("milnor-a{k}"), ring, 0, vec![f])
        .expect("valid germ");
    p.icis = true;
    p.equidimensional = true;
    p.dim = Some(1);
    p
}
