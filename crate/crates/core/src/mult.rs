//! Hilbert–Samuel and Buchsbaum–Rim multiplicities, reduction tests, and
//! multiplicity-based integral-closure certification.
//!
//! Multiplicities are computed by finite differences of exact colength
//! samples: for an ideal `I` of finite colength in a `d`-dimensional local
//! ring, `e(I)` is the stabilized `d`-th difference of `n ↦ colength(Iⁿ)`;
//! for a rank-`p` submodule the Buchsbaum–Rim multiplicity is the stabilized
//! `(d+p−1)`-th difference of the colengths of the symmetric-power images.
//! Stabilization means the final `window` differences agree; eventual
//! polynomial growth has no a-priori bound computable at this generality, so
//! the Hilbert–Samuel path additionally cross-checks against the
//! generic-reduction method (colength of `d` random combinations of the
//! generators) whenever the ambient ring is a complete intersection.
//!
//! `is_reduction` and `icl_certify` turn multiplicity equality into
//! certificates (equal finite multiplicities of `N ⊆ M` certify that `N` is
//! a reduction of `M`, hence `M` lies in the integral closure of `N`), fall
//! back to curve probes for refutation, and report everything else as
//! inconclusive.

use crate::curves::{icl_refute, CurveError, CurveGerm, ProbeOutcome, DEFAULT_PRECISION};
use crate::groebner::{SubmoduleSpec, Vect};
use crate::ideal_ops::radical_membership;
use crate::local::{local_colength, ColengthValue, TruncationOptions};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::order::MonomialOrder;
use crate::poly::Poly;
use crate::rational::{random_small_nonzero, Q};
use crate::ring::PolyRing;
use crate::verdict::{Status, Verdict, Witness};
use itertools::Itertools;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct MultOptions {
    /// Number of consecutive equal differences required for stabilization.
    pub window: usize,
    /// Extra colength samples allowed beyond the bare minimum
    /// (difference order + window) before giving up.
    pub extra_samples: usize,
    pub truncation: TruncationOptions,
    /// Seed for the generic-reduction cross-check combinations.
    pub seed: u64,
    /// Run the generic-reduction cross-check when the ambient ring is a
    /// complete intersection (relation count = arity − d).
    pub cross_check: bool,
    /// Base series precision handed to curve probes.
    pub probe_precision: u32,
}

impl Default for MultOptions {
    fn default() -> Self {
        MultOptions {
            window: 3,
            extra_samples: 5,
            truncation: TruncationOptions::default(),
            seed: 0,
            cross_check: true,
            probe_precision: DEFAULT_PRECISION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub method: String,
    pub e: u64,
    pub seed: u64,
    /// 1 on first-try agreement; 2 when a fresh draw was needed.
    pub attempts: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityResult {
    pub e: u64,
    pub method: String,
    /// Ambient local dimension (caller-supplied).
    pub dim: usize,
    /// Module rank (1 for ideals).
    pub rank: usize,
    /// (n, colength) pairs actually sampled, in order.
    pub samples: Vec<(u32, u64)>,
    pub window: usize,
    pub cross_check: Option<CrossCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MultError {
    #[error("colength is not finite: no pure power of {var} at position {position}")]
    NotFinite { position: usize, var: String },
    #[error("colength sample at power {n} undetermined within truncation cap {cap}")]
    Undetermined { n: u32, cap: u32 },
    #[error("finite differences did not stabilize after {samples} samples (window {window})")]
    NoStabilization { samples: usize, window: usize },
    #[error(
        "generic-reduction cross-check disagrees with finite differences: \
         {finite_difference} vs {generic} under seed {seed} (retried once)"
    )]
    CrossCheck {
        finite_difference: u64,
        generic: String,
        seed: u64,
    },
    #[error("generator {index} of the candidate reduction is not a member of the larger module")]
    NotContained { index: usize },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error(transparent)]
    Probe(#[from] CurveError),
}

fn colength_desc(v: &ColengthValue) -> String {
    match v {
        ColengthValue::Finite(c) => c.to_string(),
        ColengthValue::Infinite { .. } => "infinite".to_string(),
        ColengthValue::Undetermined { cap } => format!("undetermined at cap {cap}"),
    }
}

/// Last `window` entries of the `order`-th finite difference, when they all
/// agree on a non-negative value.
fn stabilized_tail(samples: &[(u32, u64)], order: usize, window: usize) -> Option<u64> {
    if samples.len() < order + window {
        return None;
    }
    let mut seq: Vec<i128> = samples.iter().map(|&(_, c)| c as i128).collect();
    for _ in 0..order {
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let tail = &seq[seq.len() - window..];
    let v = tail[0];
    if v >= 0 && tail.iter().all(|&x| x == v) {
        Some(v as u64)
    } else {
        None
    }
}

/// All n-fold products of the generators (combinations with repetition, in
/// lexicographic index order).
fn ideal_power(gens: &[Poly], n: u32) -> Vec<Poly> {
    (0..gens.len())
        .combinations_with_replacement(n as usize)
        .map(|combo| {
            let mut it = combo.into_iter();
            let first = it.next().expect("n >= 1");
            it.fold(gens[first].clone(), |acc, i| acc.mul(&gens[i]))
        })
        .collect()
}

fn sample_colength(
    ring: &PolyRing,
    gens: Vec<Vect>,
    rank: usize,
    relations: &[Poly],
    n: u32,
    opts: &MultOptions,
) -> Result<u64, MultError> {
    let spec = SubmoduleSpec::new(ring.clone(), rank, gens, relations.to_vec());
    match local_colength(&spec, &opts.truncation).value {
        ColengthValue::Finite(c) => Ok(c),
        ColengthValue::Infinite { position, var } => Err(MultError::NotFinite {
            position,
            var: ring.var_name(var).to_string(),
        }),
        ColengthValue::Undetermined { cap } => Err(MultError::Undetermined { n, cap }),
    }
}

/// Hilbert–Samuel multiplicity of the ideal generated by `gens` in the
/// local ring cut out by `relations`, of local dimension `d`.
pub fn hilbert_samuel(
    ring: &PolyRing,
    gens: &[Poly],
    relations: &[Poly],
    d: usize,
    opts: &MultOptions,
) -> Result<MultiplicityResult, MultError> {
    let max = d + opts.window + opts.extra_samples;
    let mut samples: Vec<(u32, u64)> = Vec::new();
    for n in 1..=max as u32 {
        let power = ideal_power(gens, n)
            .into_iter()
            .map(Vect::from_poly)
            .collect();
        let c = sample_colength(ring, power, 1, relations, n, opts)?;
        samples.push((n, c));
        if let Some(e) = stabilized_tail(&samples, d, opts.window) {
            let cross_check = if opts.cross_check && relations.len() + d == ring.arity() {
                Some(generic_reduction_check(ring, gens, relations, d, e, opts)?)
            } else {
                None
            };
            return Ok(MultiplicityResult {
                e,
                method: "finite-difference".to_string(),
                dim: d,
                rank: 1,
                samples,
                window: opts.window,
                cross_check,
            });
        }
    }
    Err(MultError::NoStabilization {
        samples: samples.len(),
        window: opts.window,
    })
}

/// Generic-reduction method: in a complete-intersection ambient ring, `d`
/// random rational combinations of the generators span a reduction, whose
/// colength equals the multiplicity. Disagreement after one fresh redraw is
/// an error (unlucky genericity or a bug).
fn generic_reduction_check(
    ring: &PolyRing,
    gens: &[Poly],
    relations: &[Poly],
    d: usize,
    e_fd: u64,
    opts: &MultOptions,
) -> Result<CrossCheck, MultError> {
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let mut last = String::new();
    for attempt in 1..=2u32 {
        let combos: Vec<Vect> = (0..d)
            .map(|_| {
                let mut acc = Poly::zero(ring);
                for g in gens {
                    acc = acc.add(&g.scale(&random_small_nonzero(&mut rng)));
                }
                Vect::from_poly(acc)
            })
            .collect();
        let spec = SubmoduleSpec::new(ring.clone(), 1, combos, relations.to_vec());
        let value = local_colength(&spec, &opts.truncation).value;
        if value == ColengthValue::Finite(e_fd) {
            return Ok(CrossCheck {
                method: "generic-reduction".to_string(),
                e: e_fd,
                seed: opts.seed,
                attempts: attempt,
            });
        }
        last = colength_desc(&value);
    }
    Err(MultError::CrossCheck {
        finite_difference: e_fd,
        generic: last,
        seed: opts.seed,
    })
}

/// Degree-`n` monomials in `p` fiber variables, grevlex-descending; these
/// index the positions of the symmetric power.
fn sym_positions(p: usize, n: u32) -> Vec<Monomial> {
    let vars: Vec<usize> = (0..p).collect();
    let mut positions = monomials_of_degree(p, &vars, n);
    positions.sort_by(|a, b| MonomialOrder::GrevLex.cmp(b, a));
    positions
}

/// The degree-`n` piece of the Rees construction: positions are degree-`n`
/// fiber monomials, generators are the n-fold products of the generator
/// linear forms `Σᵢ vᵢ·Tᵢ`, split back into coefficient vectors, and the
/// ambient relations act on every position.
fn sym_power_spec(module: &SubmoduleSpec, n: u32) -> SubmoduleSpec {
    let base = &module.ring;
    let base_arity = base.arity();
    let p = module.rank;

    let mut fiber_names: Vec<String> = Vec::with_capacity(p);
    for i in 0..p {
        let mut name = format!("#s{i}");
        while base.var_index(&name).is_some() || fiber_names.contains(&name) {
            name.push('_');
        }
        fiber_names.push(name);
    }
    let big = base.append_vars(fiber_names, MonomialOrder::GrevLex);
    let id_map: Vec<usize> = (0..base_arity).collect();

    let forms: Vec<Poly> = module
        .gens
        .iter()
        .map(|g| {
            let mut acc = Poly::zero(&big);
            for i in 0..p {
                let c = g.comp(i);
                if !c.is_zero() {
                    acc = acc.add(&c.embed(&big, &id_map).mul(&Poly::var(&big, base_arity + i)));
                }
            }
            acc
        })
        .collect();

    let positions = sym_positions(p, n);
    let rank_n = positions.len();
    let pos_index: BTreeMap<Vec<u32>, usize> = positions
        .iter()
        .enumerate()
        .map(|(i, m)| (m.0.clone(), i))
        .collect();

    let mut split_gens: Vec<Vect> = Vec::new();
    for combo in (0..forms.len()).combinations_with_replacement(n as usize) {
        let mut it = combo.into_iter();
        let first = it.next().expect("n >= 1");
        let prod = it.fold(forms[first].clone(), |acc, i| acc.mul(&forms[i]));
        if prod.is_zero() {
            continue;
        }
        let mut comps: Vec<BTreeMap<Monomial, Q>> = vec![BTreeMap::new(); rank_n];
        for (m, c) in prod.terms() {
            let x_part = Monomial(m.0[..base_arity].to_vec());
            let s_part = &m.0[base_arity..];
            let idx = pos_index[s_part];
            let entry = comps[idx].entry(x_part).or_insert_with(Q::zero);
            *entry += c.clone();
        }
        split_gens.push(Vect::new(
            comps
                .into_iter()
                .map(|map| Poly::from_terms(base, map))
                .collect(),
        ));
    }
    SubmoduleSpec::new(base.clone(), rank_n, split_gens, module.relations.clone())
}

/// Buchsbaum–Rim multiplicity of a finite-colength submodule of `R^p`, with
/// `d` the ambient local dimension. For `p = 1` this agrees with
/// [`hilbert_samuel`] (computed through the symmetric-power construction,
/// not by delegation, so the agreement is a genuine cross-path check).
pub fn buchsbaum_rim(
    module: &SubmoduleSpec,
    d: usize,
    opts: &MultOptions,
) -> Result<MultiplicityResult, MultError> {
    let p = module.rank;
    assert!(p >= 1, "module rank must be positive");
    let order = d + p - 1;
    let max = order + opts.window + opts.extra_samples;
    let mut samples: Vec<(u32, u64)> = Vec::new();
    for n in 1..=max as u32 {
        let sym = sym_power_spec(module, n);
        let c = sample_colength(&sym.ring, sym.gens, sym.rank, &sym.relations, n, opts)?;
        samples.push((n, c));
        if let Some(e) = stabilized_tail(&samples, order, opts.window) {
            return Ok(MultiplicityResult {
                e,
                method: "finite-difference".to_string(),
                dim: d,
                rank: p,
                samples,
                window: opts.window,
                cross_check: None,
            });
        }
    }
    Err(MultError::NoStabilization {
        samples: samples.len(),
        window: opts.window,
    })
}

fn check_same_ambient(a: &SubmoduleSpec, b: &SubmoduleSpec) -> Result<(), MultError> {
    if a.rank != b.rank {
        return Err(MultError::RankMismatch {
            left: a.rank,
            right: b.rank,
        });
    }
    if a.ring != b.ring {
        return Err(MultError::AmbientMismatch(format!(
            "rings {} and {} differ",
            a.ring, b.ring
        )));
    }
    let ia = crate::groebner::IdealSpec::new(a.ring.clone(), a.relations.clone());
    let ib = crate::groebner::IdealSpec::new(b.ring.clone(), b.relations.clone());
    if !crate::ideal_ops::ideals_equal(&ia, &ib) {
        return Err(MultError::AmbientMismatch(
            "relation ideals differ".to_string(),
        ));
    }
    Ok(())
}

/// Rees-style reduction test for `sub ⊆ full` in `R^p` over the same
/// ambient relations. Containment is verified (error if it fails); equal
/// finite multiplicities certify, a strict drop or a finite/infinite split
/// refutes with certificate, and two infinite colengths are outside the
/// multiplicity criterion.
pub fn is_reduction(
    sub: &SubmoduleSpec,
    full: &SubmoduleSpec,
    d: usize,
    opts: &MultOptions,
) -> Result<Verdict, MultError> {
    check_same_ambient(sub, full)?;
    let claim = format!(
        "N ({} gens) is a reduction of M ({} gens) in rank {}",
        sub.gens.len(),
        full.gens.len(),
        full.rank
    );

    if sub.gens == full.gens {
        return Ok(Verdict::new(claim, Status::CertifiedTrue)
            .step::<&str, String>("reflexive", [("note", "identical generator lists".into())]));
    }

    for (i, g) in sub.gens.iter().enumerate() {
        if !full.membership(g).member {
            return Err(MultError::NotContained { index: i });
        }
    }

    let c_sub = local_colength(sub, &opts.truncation).value;
    let c_full = local_colength(full, &opts.truncation).value;
    let mut verdict = Verdict::new(claim, Status::Inconclusive {
        reason: String::new(),
    })
    .assume("X_red equidimensional (caller-asserted)");
    verdict.push_step::<&str, String>(
        "colength-gate",
        [
            ("colength_N", colength_desc(&c_sub)),
            ("colength_M", colength_desc(&c_full)),
        ],
    );

    match (&c_sub, &c_full) {
        (ColengthValue::Finite(_), ColengthValue::Finite(_)) => {
            let e_sub = buchsbaum_rim(sub, d, opts)?;
            let e_full = buchsbaum_rim(full, d, opts)?;
            if e_sub.e == e_full.e {
                verdict.push_step::<&str, String>(
                    "multiplicity-equality",
                    [
                        ("e", e_sub.e.to_string()),
                        ("dim", d.to_string()),
                        ("rank", full.rank.to_string()),
                    ],
                );
                verdict.status = Status::CertifiedTrue;
            } else {
                verdict.push_step::<&str, String>(
                    "multiplicity-inequality",
                    [
                        ("e_N", e_sub.e.to_string()),
                        ("e_M", e_full.e.to_string()),
                    ],
                );
                verdict.status = Status::CertifiedFalse;
            }
        }
        (ColengthValue::Infinite { .. }, ColengthValue::Finite(_)) => {
            verdict.push_step::<&str, String>(
                "colength-obstruction",
                [(
                    "note",
                    "N has infinite colength, M finite: closures differ".into(),
                )],
            );
            verdict.status = Status::CertifiedFalse;
        }
        (ColengthValue::Infinite { .. }, ColengthValue::Infinite { .. }) => {
            verdict.status = Status::Inconclusive {
                reason: "both colengths infinite: outside the multiplicity criterion".to_string(),
            };
        }
        _ => {
            verdict.status = Status::Inconclusive {
                reason: format!(
                    "colengths not decided (N: {}, M: {})",
                    colength_desc(&c_sub),
                    colength_desc(&c_full)
                ),
            };
        }
    }
    Ok(verdict)
}

/// Certify or refute `h ∈ closure(M)`.
///
/// Pipeline: plain membership, then nilpotency of the normal-form remainder
/// over the ambient relations, then the Rees criterion on `M ⊆ M + h` when
/// the colength is finite, then curve-probe refutation. The first deciding
/// stage wins; with no certificate and no probes the verdict is
/// inconclusive.
pub fn icl_certify(
    h: &Vect,
    module: &SubmoduleSpec,
    d: usize,
    opts: &MultOptions,
    probes: &[CurveGerm],
) -> Result<Verdict, MultError> {
    if h.rank() != module.rank {
        return Err(MultError::RankMismatch {
            left: h.rank(),
            right: module.rank,
        });
    }
    let claim = format!("{} in closure(M)", h);
    let mut verdict = Verdict::new(claim, Status::Inconclusive {
        reason: String::new(),
    });

    // Stage 1: plain membership.
    let cert = module.membership(h);
    if cert.member {
        verdict.push_step::<&str, String>("membership", [("remainder", "0".into())]);
        verdict.status = Status::CertifiedTrue;
        return Ok(verdict);
    }
    let remainder = cert.remainder;
    let nonzero: Vec<usize> = (0..module.rank)
        .filter(|&i| !remainder.comp(i).is_zero())
        .collect();
    verdict.push_step::<&str, String>(
        "membership",
        [(
            "remainder",
            format!("nonzero in {} of {} components", nonzero.len(), module.rank),
        )],
    );

    // Stage 2: nilpotency of the remainder over the relations.
    if !module.relations.is_empty() {
        let rel_ideal = crate::groebner::IdealSpec::new(module.ring.clone(), module.relations.clone());
        let mut exponents: Vec<String> = Vec::new();
        let all_nilpotent = nonzero.iter().all(|&i| {
            let rm = radical_membership(&rel_ideal, remainder.comp(i));
            if rm.member {
                exponents.push(match rm.exponent {
                    Some(e) => e.to_string(),
                    None => "beyond-bound".to_string(),
                });
            }
            rm.member
        });
        if all_nilpotent {
            verdict.push_step::<&str, String>(
                "nilpotent-certificate",
                [("component_exponents", exponents.join(","))],
            );
            verdict.status = Status::CertifiedTrue;
            return Ok(verdict);
        }
        verdict.push_step::<&str, String>(
            "nilpotent-certificate",
            [("note", "remainder is not nilpotent over the relations".into())],
        );
    }

    // Stage 3: Rees criterion on M ⊆ M + h.
    let c_mod = local_colength(module, &opts.truncation).value;
    if let ColengthValue::Finite(_) = c_mod {
        let mut aug_gens = module.gens.clone();
        aug_gens.push(h.clone());
        let augmented = SubmoduleSpec::new(
            module.ring.clone(),
            module.rank,
            aug_gens,
            module.relations.clone(),
        );
        let e_mod = buchsbaum_rim(module, d, opts)?;
        let e_aug = buchsbaum_rim(&augmented, d, opts)?;
        verdict = verdict.assume("X_red equidimensional (caller-asserted)");
        if e_mod.e == e_aug.e {
            verdict.push_step::<&str, String>(
                "multiplicity-equality",
                [("e", e_mod.e.to_string()), ("dim", d.to_string())],
            );
            verdict.status = Status::CertifiedTrue;
        } else {
            verdict.push_step::<&str, String>(
                "multiplicity-inequality",
                [
                    ("e_module", e_mod.e.to_string()),
                    ("e_augmented", e_aug.e.to_string()),
                ],
            );
            verdict.status = Status::CertifiedFalse;
        }
        return Ok(verdict);
    }
    verdict.push_step::<&str, String>(
        "colength-gate",
        [("colength_M", colength_desc(&c_mod))],
    );

    // Stage 4: curve probes.
    if probes.is_empty() {
        verdict.status = Status::Inconclusive {
            reason: "no multiplicity certificate available and no probes supplied".to_string(),
        };
        return Ok(verdict);
    }
    match icl_refute(h, module, probes, false, opts.probe_precision)? {
        ProbeOutcome::Refuted(r) => {
            verdict.push_step::<&str, String>(
                "curve-refutation",
                [
                    ("curve", r.curve_label.clone()),
                    ("parametrization", r.curve_display.clone()),
                    ("row", r.witness.row.to_string()),
                    ("target_order", r.witness.target_ord.to_string()),
                    (
                        "module_order",
                        r.witness
                            .pivot_ord
                            .map_or("none".to_string(), |o| o.to_string()),
                    ),
                ],
            );
            verdict.status = Status::Refuted {
                witness: Witness::Curve {
                    curve: r.curve_label,
                    parametrization: r.curve_display,
                    row: r.witness.row,
                    target_order: r.witness.target_ord,
                    module_order: r.witness.pivot_ord,
                },
            };
        }
        ProbeOutcome::NotRefuted {
            probes: n,
            precision_skipped,
        } => {
            verdict.push_step::<&str, String>(
                "curve-probes",
                [
                    ("probes", n.to_string()),
                    ("precision_skipped", precision_skipped.to_string()),
                ],
            );
            verdict.status = Status::NotRefuted { probes: n };
        }
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{monomial_probes, ProbeOptions};
    use crate::parse::parse_poly;

    fn ring2() -> PolyRing {
        PolyRing::new(vec!["x", "y"], MonomialOrder::GrevLex)
    }

    fn polys(r: &PolyRing, ss: &[&str]) -> Vec<Poly> {
        ss.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    fn ideal_module(r: &PolyRing, gens: &[&str], rels: &[&str]) -> SubmoduleSpec {
        SubmoduleSpec::new(
            r.clone(),
            1,
            polys(r, gens).into_iter().map(Vect::from_poly).collect(),
            polys(r, rels),
        )
    }

    #[test]
    fn maximal_ideal_has_multiplicity_one() {
        let r = ring2();
        let out = hilbert_samuel(&r, &polys(&r, &["x", "y"]), &[], 2, &MultOptions::default())
            .unwrap();
        assert_eq!(out.e, 1);
        // colength(m^n) = binomial(n+1, 2)
        assert_eq!(out.samples, vec![(1, 1), (2, 3), (3, 6), (4, 10), (5, 15)]);
        let cc = out.cross_check.expect("complete intersection: check runs");
        assert_eq!(cc.e, 1);
    }

    #[test]
    fn parameter_ideal_multiplicity_is_colength() {
        let r = ring2();
        let out = hilbert_samuel(
            &r,
            &polys(&r, &["x^2", "y^3"]),
            &[],
            2,
            &MultOptions::default(),
        )
        .unwrap();
        assert_eq!(out.e, 6);
        // Regular sequence: colength(I^n) = 6·binomial(n+1, 2).
        assert_eq!(
            out.samples,
            vec![(1, 6), (2, 18), (3, 36), (4, 60), (5, 90)]
        );
        assert!(out.cross_check.is_some());
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = ring2();
        let out = hilbert_samuel(
            &r,
            &polys(&r, &["x^2", "x*y", "y^2"]),
            &[],
            2,
            &MultOptions::default(),
        )
        .unwrap();
        assert_eq!(out.e, 4);
        assert!(out.cross_check.is_some());
    }

    #[test]
    fn widening_the_window_is_stable() {
        let r = ring2();
        let opts = MultOptions {
            window: 4,
            ..MultOptions::default()
        };
        let out = hilbert_samuel(&r, &polys(&r, &["x^2", "y^3"]), &[], 2, &opts).unwrap();
        assert_eq!(out.e, 6);
        assert_eq!(out.samples.len(), 6);
    }

    #[test]
    fn infinite_colength_is_an_error() {
        let r = ring2();
        let err =
            hilbert_samuel(&r, &polys(&r, &["x^2"]), &[], 2, &MultOptions::default()).unwrap_err();
        assert!(matches!(err, MultError::NotFinite { .. }));
    }

    #[test]
    fn full_module_has_multiplicity_zero() {
        let r = ring2();
        let m = SubmoduleSpec::new(
            r.clone(),
            2,
            vec![
                Vect::unit(&r, 2, 0, Poly::one(&r)),
                Vect::unit(&r, 2, 1, Poly::one(&r)),
            ],
            Vec::new(),
        );
        let out = buchsbaum_rim(&m, 2, &MultOptions::default()).unwrap();
        assert_eq!(out.e, 0);
    }

    #[test]
    fn maximal_ideal_times_free_rank_two() {
        let r = ring2();
        let x = parse_poly(&r, "x").unwrap();
        let y = parse_poly(&r, "y").unwrap();
        let m = SubmoduleSpec::new(
            r.clone(),
            2,
            vec![
                Vect::unit(&r, 2, 0, x.clone()),
                Vect::unit(&r, 2, 0, y.clone()),
                Vect::unit(&r, 2, 1, x),
                Vect::unit(&r, 2, 1, y),
            ],
            Vec::new(),
        );
        let out = buchsbaum_rim(&m, 2, &MultOptions::default()).unwrap();
        assert_eq!(out.e, 3);
        // colength at level n is (n+1)·binomial(n+1, 2)
        assert_eq!(
            out.samples,
            vec![(1, 2), (2, 9), (3, 24), (4, 50), (5, 90), (6, 147)]
        );
    }

    #[test]
    fn rank_one_buchsbaum_rim_matches_hilbert_samuel() {
        let r = ring2();
        let m = ideal_module(&r, &["x^2", "y^3"], &[]);
        let br = buchsbaum_rim(&m, 2, &MultOptions::default()).unwrap();
        let hs = hilbert_samuel(&r, &polys(&r, &["x^2", "y^3"]), &[], 2, &MultOptions::default())
            .unwrap();
        assert_eq!(br.e, hs.e);
        assert_eq!(br.samples, hs.samples);
    }

    #[test]
    fn reduction_certified_by_equal_multiplicity() {
        let r = ring2();
        let sub = ideal_module(&r, &["x^2", "y^2"], &[]);
        let full = ideal_module(&r, &["x^2", "x*y", "y^2"], &[]);
        let v = is_reduction(&sub, &full, 2, &MultOptions::default()).unwrap();
        assert_eq!(v.status, Status::CertifiedTrue);
        assert!(v
            .provenance
            .iter()
            .any(|s| s.criterion == "multiplicity-equality" && s.data["e"] == "4"));
    }

    #[test]
    fn reduction_refuted_by_multiplicity_drop() {
        let r = ring2();
        let sub = ideal_module(&r, &["x^2", "y^2"], &[]);
        let full = ideal_module(&r, &["x", "y"], &[]);
        let v = is_reduction(&sub, &full, 2, &MultOptions::default()).unwrap();
        assert_eq!(v.status, Status::CertifiedFalse);
    }

    #[test]
    fn reduction_is_reflexive() {
        let r = ring2();
        let m = ideal_module(&r, &["x^2", "y^2"], &[]);
        let v = is_reduction(&m, &m, 2, &MultOptions::default()).unwrap();
        assert_eq!(v.status, Status::CertifiedTrue);
        assert_eq!(v.provenance[0].criterion, "reflexive");
    }

    #[test]
    fn reduction_requires_containment() {
        let r = ring2();
        let sub = ideal_module(&r, &["x"], &[]);
        let full = ideal_module(&r, &["x^2", "y^2"], &[]);
        let err = is_reduction(&sub, &full, 2, &MultOptions::default()).unwrap_err();
        assert_eq!(err, MultError::NotContained { index: 0 });
    }

    #[test]
    fn icl_certifies_integral_element() {
        let r = ring2();
        let m = ideal_module(&r, &["x^2", "y^2"], &[]);
        let h = Vect::from_poly(parse_poly(&r, "x*y").unwrap());
        let v = icl_certify(&h, &m, 2, &MultOptions::default(), &[]).unwrap();
        assert_eq!(v.status, Status::CertifiedTrue);
        assert!(v
            .provenance
            .iter()
            .any(|s| s.criterion == "multiplicity-equality"));
    }

    #[test]
    fn icl_refutes_by_multiplicity_drop() {
        let r = ring2();
        let m = ideal_module(&r, &["x^2", "y^2"], &[]);
        let h = Vect::from_poly(parse_poly(&r, "x").unwrap());
        let v = icl_certify(&h, &m, 2, &MultOptions::default(), &[]).unwrap();
        assert_eq!(v.status, Status::CertifiedFalse);
        assert!(v
            .provenance
            .iter()
            .any(|s| s.criterion == "multiplicity-inequality"
                && s.data["e_module"] == "4"
                && s.data["e_augmented"] == "2"));
    }

    #[test]
    fn icl_membership_short_circuit() {
        let r = ring2();
        let m = ideal_module(&r, &["x^2", "y^2"], &[]);
        let h = Vect::from_poly(parse_poly(&r, "x^2 + y^2").unwrap());
        let v = icl_certify(&h, &m, 2, &MultOptions::default(), &[]).unwrap();
        assert_eq!(v.status, Status::CertifiedTrue);
        assert_eq!(v.provenance.len(), 1);
        assert_eq!(v.provenance[0].criterion, "membership");
    }

    #[test]
    fn icl_nilpotent_short_circuit() {
        let r = PolyRing::new(vec!["x"], MonomialOrder::GrevLex);
        let m = ideal_module(&r, &[], &["x^2"]);
        let h = Vect::from_poly(parse_poly(&r, "x").unwrap());
        let v = icl_certify(&h, &m, 0, &MultOptions::default(), &[]).unwrap();
        assert_eq!(v.status, Status::CertifiedTrue);
        assert!(v
            .provenance
            .iter()
            .any(|s| s.criterion == "nilpotent-certificate" && s.data["component_exponents"] == "2"));
    }

    #[test]
    fn icl_falls_back_to_probes() {
        // (x^2, y^2) read in three variables has infinite colength (no pure
        // z power), so the multiplicity path is unavailable.
        let r = PolyRing::new(vec!["x", "y", "z"], MonomialOrder::GrevLex);
        let m = ideal_module(&r, &["x^2", "y^2"], &[]);
        let probes = monomial_probes(&r, &[0, 1, 2], &[], &ProbeOptions::default());
        let h = Vect::from_poly(parse_poly(&r, "x*y").unwrap());
        let v = icl_certify(&h, &m, 3, &MultOptions::default(), &probes).unwrap();
        assert!(matches!(v.status, Status::NotRefuted { .. }));

        let bad = Vect::from_poly(parse_poly(&r, "z").unwrap());
        let v = icl_certify(&bad, &m, 3, &MultOptions::default(), &probes).unwrap();
        match &v.status {
            Status::Refuted {
                witness: Witness::Curve { module_order, .. },
            } => assert_eq!(*module_order, None),
            other => panic!("expected curve refutation, got {other:?}"),
        }
    }

    #[test]
    fn icl_without_probes_is_inconclusive() {
        let r = PolyRing::new(vec!["x", "y", "z"], MonomialOrder::GrevLex);
        let m = ideal_module(&r, &["x^2", "y^2"], &[]);
        let h = Vect::from_poly(parse_poly(&r, "x*y").unwrap());
        let v = icl_certify(&h, &m, 3, &MultOptions::default(), &[]).unwrap();
        assert!(matches!(v.status, Status::Inconclusive { .. }));
    }
}
