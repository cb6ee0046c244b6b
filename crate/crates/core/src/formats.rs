//! Versioned textual input formats.
//!
//! Four file kinds share one line-oriented surface: `#` starts a comment,
//! blank lines are skipped, and the first significant line is a versioned
//! header naming the kind. Polynomial payloads use the library's expression
//! grammar.
//!
//! - `germ v1` — germ presentations: variable blocks, components, optional
//!   second structure / auxiliary function, hyperplanes, asserted flags.
//! - `curves v1` — probe curves, one `var = <polynomial in t>` line per
//!   coordinate; every curve must pass through the origin.
//! - `module v1` — submodule specs: flat variable list, rank, generators
//!   (components separated by `|`), ambient relations.
//! - `hyperplanes v1` — hyperplane samples for scans.
//!
//! Every parser has a serializer, and parse → serialize → parse is the
//! identity on the parsed structure.

use crate::curves::CurveGerm;
use crate::groebner::{SubmoduleSpec, Vect};
use crate::jacobian::{GermError, GermPresentation, Hyperplane};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::parse::{parse_poly, ParseError};
use crate::poly::Poly;
use crate::rational::{is_zero, Q};
use crate::ring::PolyRing;
use crate::series::{PowerSeries, Prec};
use num_traits::Zero;
use std::collections::BTreeSet;
use thiserror::Error;

/// Largest `t`-degree accepted in a curve coordinate.
pub const MAX_SERIES_DEGREE: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("expected header {expected:?} on the first significant line")]
    Header { expected: &'static str },
    #[error("the file declares no {what}")]
    Missing { what: &'static str },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: {source}")]
    Syntax {
        line: usize,
        #[source]
        source: ParseError,
    },
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Line {
        line,
        message: message.into(),
    }
}

/// (1-based line number, content) with comments and blank lines removed.
fn significant_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

fn expect_header<'a, I: Iterator<Item = (usize, &'a str)>>(
    it: &mut I,
    expected: &'static str,
) -> Result<(), FormatError> {
    match it.next() {
        Some((_, line)) if line == expected => Ok(()),
        _ => Err(FormatError::Header { expected }),
    }
}

fn split_directive(line: &str) -> (&str, &str) {
    match line.split_once(char::is_whitespace) {
        Some((d, rest)) => (d, rest.trim()),
        None => (line, ""),
    }
}

fn valid_ident(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parse a `vars` payload. With `allow_blocks`, a single `|` splits the
/// parameter block from the fiber block; the returned count is the
/// parameter-block length.
fn parse_vars(rest: &str, line: usize, allow_blocks: bool) -> Result<(Vec<String>, usize), FormatError> {
    let parts: Vec<&str> = rest.split('|').collect();
    if parts.len() > 2 {
        return Err(err(line, "at most one `|` block separator is allowed"));
    }
    if parts.len() == 2 && !allow_blocks {
        return Err(err(line, "this format takes a flat variable list"));
    }
    let mut names = Vec::new();
    let mut y_len = 0;
    for (bi, block) in parts.iter().enumerate() {
        for tok in block.split_whitespace() {
            if !valid_ident(tok) {
                return Err(err(line, format!("invalid variable name {tok:?}")));
            }
            names.push(tok.to_string());
        }
        if bi == 0 && parts.len() == 2 {
            y_len = names.len();
        }
    }
    if names.is_empty() {
        return Err(err(line, "at least one variable is required"));
    }
    let mut seen = BTreeSet::new();
    for n in &names {
        if !seen.insert(n.clone()) {
            return Err(err(line, format!("duplicate variable name {n:?}")));
        }
    }
    Ok((names, y_len))
}

fn poly_at(ring: &PolyRing, src: &str, line: usize) -> Result<Poly, FormatError> {
    parse_poly(ring, src).map_err(|source| FormatError::Syntax { line, source })
}

fn render_vars(ring: &PolyRing, y_len: usize) -> String {
    let vars = ring.vars();
    if y_len == 0 {
        format!("vars {}", vars.join(" "))
    } else {
        format!(
            "vars {} | {}",
            vars[..y_len].join(" "),
            vars[y_len..].join(" ")
        )
    }
}

// ---------------------------------------------------------------------------
// germ v1
// ---------------------------------------------------------------------------

/// Parse a `germ v1` file.
///
/// Directives (order free except that `vars` must precede any polynomial):
/// `name`, `vars y.. | z..`, `f <poly>` (repeatable), `g <poly>`
/// (repeatable, second structure), `F <poly>`, `hyperplane [label :] form`,
/// `flags equidimensional|wa|icis`, `dim <n>`.
pub fn parse_germ_file(src: &str) -> Result<GermPresentation, FormatError> {
    let mut it = significant_lines(src);
    expect_header(&mut it, "germ v1")?;

    let mut name: Option<String> = None;
    let mut ring: Option<PolyRing> = None;
    let mut y_len = 0usize;
    let mut comps: Vec<(usize, Poly)> = Vec::new();
    let mut second: Vec<(usize, Poly)> = Vec::new();
    let mut aux: Option<Poly> = None;
    let mut hyperplanes: Vec<Hyperplane> = Vec::new();
    let (mut equi, mut wa, mut icis) = (false, false, false);
    let mut dim: Option<usize> = None;

    for (ln, line) in it {
        let (dir, rest) = split_directive(line);
        let need_ring = |what: &str| -> Result<&PolyRing, FormatError> {
            ring.as_ref()
                .ok_or_else(|| err(ln, format!("{what} before the vars line")))
        };
        match dir {
            "name" => {
                if name.is_some() {
                    return Err(err(ln, "duplicate name directive"));
                }
                if rest.is_empty() {
                    return Err(err(ln, "name directive needs a value"));
                }
                name = Some(rest.to_string());
            }
            "vars" => {
                if ring.is_some() {
                    return Err(err(ln, "duplicate vars directive"));
                }
                let (names, k) = parse_vars(rest, ln, true)?;
                ring = Some(PolyRing::new(names, MonomialOrder::GrevLex));
                y_len = k;
            }
            "f" => {
                let r = need_ring("component")?.clone();
                comps.push((ln, poly_at(&r, rest, ln)?));
            }
            "g" => {
                let r = need_ring("second-structure generator")?.clone();
                second.push((ln, poly_at(&r, rest, ln)?));
            }
            "F" => {
                if aux.is_some() {
                    return Err(err(ln, "duplicate F directive"));
                }
                let r = need_ring("auxiliary function")?.clone();
                aux = Some(poly_at(&r, rest, ln)?);
            }
            "hyperplane" => {
                let r = need_ring("hyperplane")?.clone();
                let (label, form_src) = match rest.split_once(':') {
                    Some((l, f)) => (Some(l.trim()), f.trim()),
                    None => (None, rest),
                };
                let form = poly_at(&r, form_src, ln)?;
                let mut h = Hyperplane::from_form(&form).map_err(|_| {
                    err(ln, "hyperplane form must be nonzero homogeneous linear")
                })?;
                if let Some(l) = label {
                    if l.is_empty() {
                        return Err(err(ln, "empty hyperplane label"));
                    }
                    h.label = l.to_string();
                }
                hyperplanes.push(h);
            }
            "flags" => {
                for tok in rest.split_whitespace() {
                    match tok {
                        "equidimensional" => equi = true,
                        "wa" => wa = true,
                        "icis" => icis = true,
                        other => {
                            return Err(err(ln, format!("unknown flag {other:?}")));
                        }
                    }
                }
            }
            "dim" => {
                if dim.is_some() {
                    return Err(err(ln, "duplicate dim directive"));
                }
                dim = Some(
                    rest.parse::<usize>()
                        .map_err(|_| err(ln, "dim needs a nonnegative integer"))?,
                );
            }
            other => return Err(err(ln, format!("unknown directive {other:?}"))),
        }
    }

    let ring = ring.ok_or(FormatError::Missing { what: "vars line" })?;
    if comps.is_empty() {
        return Err(FormatError::Missing {
            what: "components (f lines)",
        });
    }
    let mut p = GermPresentation::new(
        name.unwrap_or_else(|| "germ".to_string()),
        ring,
        y_len,
        comps.iter().map(|(_, f)| f.clone()).collect(),
    )
    .map_err(|e| match e {
        GermError::ComponentNotOnY { index } => err(
            comps[index].0,
            "component does not vanish on the parameter axis",
        ),
        other => err(comps[0].0, other.to_string()),
    })?;
    if !second.is_empty() {
        for (ln, g) in &second {
            if !p.vanishes_on_y(g) {
                return Err(err(
                    *ln,
                    "second-structure generator does not vanish on the parameter axis",
                ));
            }
        }
        p.second_structure = Some(second.into_iter().map(|(_, g)| g).collect());
    }
    p.aux_function = aux;
    p.hyperplanes = hyperplanes;
    p.equidimensional = equi;
    p.wa = wa;
    p.icis = icis;
    p.dim = dim;
    Ok(p)
}

pub fn serialize_germ(p: &GermPresentation) -> String {
    let mut out = String::from("germ v1\n");
    out.push_str(&format!("name {}\n", p.name));
    out.push_str(&render_vars(&p.ring, p.y_len));
    out.push('\n');
    for f in &p.components {
        out.push_str(&format!("f {f}\n"));
    }
    if let Some(g) = &p.second_structure {
        for gi in g {
            out.push_str(&format!("g {gi}\n"));
        }
    }
    if let Some(big_f) = &p.aux_function {
        out.push_str(&format!("F {big_f}\n"));
    }
    for h in &p.hyperplanes {
        out.push_str(&format!("hyperplane {} : {}\n", h.label, h.form(&p.ring)));
    }
    let mut flags = Vec::new();
    if p.equidimensional {
        flags.push("equidimensional");
    }
    if p.wa {
        flags.push("wa");
    }
    if p.icis {
        flags.push("icis");
    }
    if !flags.is_empty() {
        out.push_str(&format!("flags {}\n", flags.join(" ")));
    }
    if let Some(d) = p.dim {
        out.push_str(&format!("dim {d}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// curves v1
// ---------------------------------------------------------------------------

/// The ring the right-hand sides of curve files are parsed in.
pub fn curve_parameter_ring() -> PolyRing {
    PolyRing::new(vec!["t"], MonomialOrder::GrevLex)
}

fn poly_to_series(p: &Poly, line: usize) -> Result<PowerSeries, FormatError> {
    let deg = p.terms().iter().map(|(m, _)| m.0[0]).max().unwrap_or(0);
    if deg > MAX_SERIES_DEGREE {
        return Err(err(
            line,
            format!("series degree exceeds the maximum of {MAX_SERIES_DEGREE}"),
        ));
    }
    let mut coeffs = vec![Q::zero(); deg as usize + 1];
    for (m, c) in p.terms() {
        coeffs[m.0[0] as usize] = c.clone();
    }
    Ok(PowerSeries::from_coeffs(coeffs, Prec::Exact))
}

fn series_to_poly(s: &PowerSeries, t_ring: &PolyRing) -> Poly {
    assert_eq!(s.prec(), Prec::Exact, "only exact parametrizations serialize");
    Poly::from_terms(
        t_ring,
        s.known_coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !is_zero(c))
            .map(|(j, c)| (Monomial(vec![j as u32]), c.clone())),
    )
}

struct CurveBlock {
    start: usize,
    label: String,
    slots: Vec<Option<(usize, PowerSeries)>>,
}

fn flush_curve(block: CurveBlock, ring: &PolyRing) -> Result<CurveGerm, FormatError> {
    let mut images = Vec::with_capacity(ring.arity());
    for (v, slot) in block.slots.into_iter().enumerate() {
        let (ln, s) = slot.ok_or_else(|| {
            err(
                block.start,
                format!(
                    "curve {:?} does not assign variable {:?}",
                    block.label,
                    ring.var_name(v)
                ),
            )
        })?;
        if s.known_coeffs().first().is_some_and(|c| !is_zero(c)) {
            return Err(err(
                ln,
                format!(
                    "curve {:?} does not pass through the origin ({} has a constant term)",
                    block.label,
                    ring.var_name(v)
                ),
            ));
        }
        images.push(s);
    }
    Ok(CurveGerm::new(ring, block.label, images))
}

/// Parse a `curves v1` file against the germ's ambient ring. Every curve
/// must assign every variable exactly once and pass through the origin.
pub fn parse_curves_file(src: &str, ring: &PolyRing) -> Result<Vec<CurveGerm>, FormatError> {
    let mut it = significant_lines(src);
    expect_header(&mut it, "curves v1")?;
    let t_ring = curve_parameter_ring();
    let mut out = Vec::new();
    let mut open: Option<CurveBlock> = None;
    for (ln, line) in it {
        let (dir, rest) = split_directive(line);
        if dir == "curve" {
            if let Some(block) = open.take() {
                out.push(flush_curve(block, ring)?);
            }
            if rest.is_empty() {
                return Err(err(ln, "curve directive needs a label"));
            }
            open = Some(CurveBlock {
                start: ln,
                label: rest.to_string(),
                slots: vec![None; ring.arity()],
            });
            continue;
        }
        let Some((lhs, rhs)) = line.split_once('=') else {
            return Err(err(ln, "expected `curve <label>` or `<var> = <series>`"));
        };
        let Some(block) = open.as_mut() else {
            return Err(err(ln, "assignment outside a curve block"));
        };
        let var_name = lhs.trim();
        let var = ring
            .var_index(var_name)
            .ok_or_else(|| err(ln, format!("unknown variable {var_name:?}")))?;
        if block.slots[var].is_some() {
            return Err(err(ln, format!("variable {var_name:?} assigned twice")));
        }
        let p = poly_at(&t_ring, rhs.trim(), ln)?;
        block.slots[var] = Some((ln, poly_to_series(&p, ln)?));
    }
    if let Some(block) = open.take() {
        out.push(flush_curve(block, ring)?);
    }
    Ok(out)
}

/// Serialize exact curves; panics on truncated parametrizations, which
/// never come from a parsed file.
pub fn serialize_curves(curves: &[CurveGerm]) -> String {
    let t_ring = curve_parameter_ring();
    let mut out = String::from("curves v1\n");
    for c in curves {
        out.push_str(&format!("curve {}\n", c.label));
        for (v, s) in c.images().iter().enumerate() {
            out.push_str(&format!(
                "{} = {}\n",
                c.ring().var_name(v),
                series_to_poly(s, &t_ring)
            ));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// module v1
// ---------------------------------------------------------------------------

/// Parse a `module v1` file: `vars` (flat), `rank <n>` (before any
/// generator), `gen p1 | p2 | ...` with exactly `rank` components, and
/// `rel <poly>` ambient relations. A file with no `gen` lines is the zero
/// submodule.
pub fn parse_module_file(src: &str) -> Result<SubmoduleSpec, FormatError> {
    let mut it = significant_lines(src);
    expect_header(&mut it, "module v1")?;
    let mut ring: Option<PolyRing> = None;
    let mut rank: Option<usize> = None;
    let mut gens: Vec<Vect> = Vec::new();
    let mut rels: Vec<Poly> = Vec::new();
    for (ln, line) in it {
        let (dir, rest) = split_directive(line);
        match dir {
            "vars" => {
                if ring.is_some() {
                    return Err(err(ln, "duplicate vars directive"));
                }
                let (names, _) = parse_vars(rest, ln, false)?;
                ring = Some(PolyRing::new(names, MonomialOrder::GrevLex));
            }
            "rank" => {
                if rank.is_some() {
                    return Err(err(ln, "duplicate rank directive"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| err(ln, "rank needs a positive integer"))?;
                if n == 0 {
                    return Err(err(ln, "rank must be at least 1"));
                }
                rank = Some(n);
            }
            "gen" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| err(ln, "generator before the vars line"))?
                    .clone();
                let rk = rank.ok_or_else(|| err(ln, "generator before the rank line"))?;
                let comps: Vec<Poly> = rest
                    .split('|')
                    .map(|part| poly_at(&r, part.trim(), ln))
                    .collect::<Result<_, _>>()?;
                if comps.len() != rk {
                    return Err(err(
                        ln,
                        format!("generator has {} components, rank is {rk}", comps.len()),
                    ));
                }
                gens.push(Vect::new(comps));
            }
            "rel" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| err(ln, "relation before the vars line"))?
                    .clone();
                rels.push(poly_at(&r, rest, ln)?);
            }
            other => return Err(err(ln, format!("unknown directive {other:?}"))),
        }
    }
    let ring = ring.ok_or(FormatError::Missing { what: "vars line" })?;
    let rank = rank.ok_or(FormatError::Missing { what: "rank line" })?;
    Ok(SubmoduleSpec::new(ring, rank, gens, rels))
}

pub fn serialize_module(m: &SubmoduleSpec) -> String {
    let mut out = String::from("module v1\n");
    out.push_str(&render_vars(&m.ring, 0));
    out.push('\n');
    out.push_str(&format!("rank {}\n", m.rank));
    for g in &m.gens {
        let comps: Vec<String> = (0..m.rank).map(|i| g.comp(i).to_string()).collect();
        out.push_str(&format!("gen {}\n", comps.join(" | ")));
    }
    for r in &m.relations {
        out.push_str(&format!("rel {r}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// hyperplanes v1
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct HyperplaneFile {
    pub ring: PolyRing,
    pub y_len: usize,
    pub hyperplanes: Vec<Hyperplane>,
}

/// Parse a `hyperplanes v1` file: a blocked `vars` line and `H [label :]
/// form` lines. An empty sample is allowed.
pub fn parse_hyperplanes_file(src: &str) -> Result<HyperplaneFile, FormatError> {
    let mut it = significant_lines(src);
    expect_header(&mut it, "hyperplanes v1")?;
    let mut ring: Option<PolyRing> = None;
    let mut y_len = 0usize;
    let mut hyperplanes = Vec::new();
    for (ln, line) in it {
        let (dir, rest) = split_directive(line);
        match dir {
            "vars" => {
                if ring.is_some() {
                    return Err(err(ln, "duplicate vars directive"));
                }
                let (names, k) = parse_vars(rest, ln, true)?;
                ring = Some(PolyRing::new(names, MonomialOrder::GrevLex));
                y_len = k;
            }
            "H" => {
                let r = ring
                    .as_ref()
                    .ok_or_else(|| err(ln, "hyperplane before the vars line"))?
                    .clone();
                let (label, form_src) = match rest.split_once(':') {
                    Some((l, f)) => (Some(l.trim()), f.trim()),
                    None => (None, rest),
                };
                let form = poly_at(&r, form_src, ln)?;
                let mut h = Hyperplane::from_form(&form).map_err(|_| {
                    err(ln, "hyperplane form must be nonzero homogeneous linear")
                })?;
                if let Some(l) = label {
                    if l.is_empty() {
                        return Err(err(ln, "empty hyperplane label"));
                    }
                    h.label = l.to_string();
                }
                hyperplanes.push(h);
            }
            other => return Err(err(ln, format!("unknown directive {other:?}"))),
        }
    }
    let ring = ring.ok_or(FormatError::Missing { what: "vars line" })?;
    Ok(HyperplaneFile {
        ring,
        y_len,
        hyperplanes,
    })
}

pub fn serialize_hyperplanes(f: &HyperplaneFile) -> String {
    let mut out = String::from("hyperplanes v1\n");
    out.push_str(&render_vars(&f.ring, f.y_len));
    out.push('\n');
    for h in &f.hyperplanes {
        out.push_str(&format!("H {} : {}\n", h.label, h.form(&f.ring)));
    }
    out
}
