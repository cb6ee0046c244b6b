//! Equisingularity checks for families of germs.
//!
//! Everything here reduces to integral-closure questions about Jacobian
//! modules and is answered three-valued: exact certificates (membership,
//! nilpotency, multiplicity equality) one way, replayable curve witnesses
//! the other way, and an honest NOT-REFUTED / INCONCLUSIVE in between.
//! Caller-asserted hypotheses (equidimensionality, WA, ICIS) are echoed
//! into every verdict rather than silently trusted.

use crate::curves::{
    dvr_membership_auto, icl_refute, matrix_rank, monomial_probes, pullback_module,
    pullback_vector, verify_on_variety, CurveGerm, CurveRefutation, DvrOutcome, ProbeOptions,
    ProbeOutcome,
};
use crate::groebner::{IdealSpec, SubmoduleSpec, Vect};
use crate::ideal_ops::radical_membership;
use crate::jacobian::{
    augmented_jacobian_modules, grassmann_at_hyperplane, hyperplane_restricted,
    jacobian_modules, jacobian_modules_for, specialize_fiber, structure_witnesses, GermError,
    GermPresentation, Hyperplane, RestrictionScope, WitnessError, WITNESS_EXPONENT_CAP,
};
use crate::local::{local_colength, ColengthValue};
use crate::mult::{buchsbaum_rim, is_reduction, MultError, MultOptions};
use crate::rational::{render, Q};
use crate::report::ReportNode;
use crate::verdict::{Status, Verdict, Witness};
use itertools::Itertools;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquisingError {
    #[error("the germ has no parameter block")]
    NotAFamily,
    #[error("a fiber germ (empty parameter block) is required")]
    FiberGermRequired,
    #[error("hyperplane {label:?} does not contain the parameter axis")]
    HyperplaneMustContainY { label: String },
    #[error("the germ carries no second structure (g lines)")]
    MissingSecondStructure,
    #[error("the germ is not flagged as a family of isolated complete intersections")]
    NotIcis,
    #[error("hyperplane {index} degenerates the section: rank {rank}, expected {expected}")]
    RankDegeneration {
        index: usize,
        rank: usize,
        expected: usize,
    },
    #[error("probe curve lives in {got:?}, expected the modification ring {want:?}")]
    ProbeRingMismatch { got: String, want: String },
    #[error(transparent)]
    Germ(#[from] GermError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
    #[error(transparent)]
    Mult(#[from] MultError),
    #[error(transparent)]
    Curve(#[from] crate::curves::CurveError),
}

fn refutation_witness(r: CurveRefutation) -> Witness {
    Witness::Curve {
        curve: r.curve_label,
        parametrization: r.curve_display,
        row: r.witness.row,
        target_order: r.witness.target_ord,
        module_order: r.witness.pivot_ord,
    }
}

fn echo_flags(v: Verdict, p: &GermPresentation) -> Verdict {
    v.assume(format!(
        "equidimensional: {}",
        if p.equidimensional {
            "caller-asserted"
        } else {
            "not asserted"
        }
    ))
}

/// Rebase a verdict onto a new claim, keeping status, trail and
/// assumptions.
fn relabel(claim: impl Into<String>, v: Verdict) -> Verdict {
    let mut out = Verdict::new(claim, v.status);
    out.provenance = v.provenance;
    out.assumptions = v.assumptions;
    out
}

// ---------------------------------------------------------------------------
// Column-wise closure checks (the W / A_F / W_F engine)
// ---------------------------------------------------------------------------

/// Check every column against the closure (or strict closure) of `module`.
///
/// Zero columns are vacuous. With `certify`, each column first tries the
/// exact shortcuts: membership in the module, then nilpotency of the
/// remainder modulo the ambient relations. Remaining columns go to the
/// probe sweep; the first refuted column decides the whole check. The
/// aggregate is CERTIFIED-TRUE only when every column was certified and at
/// least one was nonzero; otherwise NOT-REFUTED with the probe count.
fn column_closure_check(
    claim: String,
    columns: Vec<(String, Vect)>,
    module: &SubmoduleSpec,
    probes: &[CurveGerm],
    strict: bool,
    certify: bool,
    opts: &MultOptions,
) -> Result<Verdict, EquisingError> {
    let relations_ideal = IdealSpec::new(module.ring.clone(), module.relations.clone());
    let mut steps: Vec<(String, Vec<(String, String)>)> = Vec::new();
    let mut open: Vec<(String, Vect)> = Vec::new();
    let mut nonzero = 0usize;
    let mut certified = 0usize;

    for (label, col) in columns {
        if col.is_zero() {
            steps.push((label, vec![("outcome".into(), "zero column (vacuous)".into())]));
            continue;
        }
        nonzero += 1;
        if certify {
            let cert = module.membership(&col);
            if cert.member {
                certified += 1;
                steps.push((label, vec![("outcome".into(), "membership".into())]));
                continue;
            }
            let rem = cert.remainder;
            let mut exps = Vec::new();
            let nilpotent = !module.relations.is_empty()
                && (0..module.rank).all(|i| {
                    let c = rem.comp(i);
                    if c.is_zero() {
                        return true;
                    }
                    let r = radical_membership(&relations_ideal, c);
                    if r.member {
                        exps.push(
                            r.exponent
                                .map(|e| e.to_string())
                                .unwrap_or_else(|| "unbounded".into()),
                        );
                    }
                    r.member
                });
            if nilpotent {
                certified += 1;
                steps.push((
                    label,
                    vec![
                        ("outcome".into(), "nilpotent remainder".into()),
                        ("component-exponents".into(), exps.join(",")),
                    ],
                ));
                continue;
            }
        }
        open.push((label, col));
    }

    let mut status = None;
    for (label, col) in &open {
        match icl_refute(col, module, probes, strict, opts.probe_precision)? {
            ProbeOutcome::Refuted(r) => {
                steps.push((
                    label.clone(),
                    vec![
                        ("outcome".into(), "refuted".into()),
                        ("curve".into(), r.curve_label.clone()),
                    ],
                ));
                status = Some(Status::Refuted {
                    witness: refutation_witness(r),
                });
                break;
            }
            ProbeOutcome::NotRefuted {
                probes: n,
                precision_skipped,
            } => {
                steps.push((
                    label.clone(),
                    vec![
                        ("outcome".into(), format!("not refuted by {n} probes")),
                        ("precision-skipped".into(), precision_skipped.to_string()),
                    ],
                ));
            }
        }
    }

    let status = status.unwrap_or_else(|| {
        if nonzero == 0 {
            Status::NotRefuted {
                probes: probes.len(),
            }
        } else if open.is_empty() && certified == nonzero {
            Status::CertifiedTrue
        } else {
            Status::NotRefuted {
                probes: probes.len(),
            }
        }
    });
    let mut v = Verdict::new(claim, status);
    if nonzero == 0 {
        v = v.step::<&str, &str>("vacuous", [("reason", "every column is zero")]);
    }
    for (label, data) in steps {
        v.push_step(format!("column {label}"), data);
    }
    Ok(v)
}

/// Condition W for the pair (X₀, Y): every parameter-direction derivative
/// of the components lies in the integral closure of m_Y·JM_z(f).
///
/// The quotient by m_Y·JM_z(f) is supported along all of Y whenever the
/// parameter block is nonempty, so there is no multiplicity certificate at
/// family level; columns are decided by exact membership / nilpotency
/// shortcuts and otherwise by the curve-probe sweep.
pub fn check_whitney_w(
    p: &GermPresentation,
    probes: &[CurveGerm],
    opts: &MultOptions,
) -> Result<Verdict, EquisingError> {
    let jm = jacobian_modules(p);
    let columns: Vec<(String, Vect)> = p
        .y_vars()
        .map(|i| {
            (
                format!("d/d{}", p.ring.var_name(i)),
                jm.jm_y.gens[i].clone(),
            )
        })
        .collect();
    let v = column_closure_check(
        format!(
            "every parameter derivative of {} is integrally dependent on m_Y*JM_z",
            p.name
        ),
        columns,
        &jm.my_jm_z,
        probes,
        false,
        true,
        opts,
    )?;
    Ok(echo_flags(v, p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunctionCondition {
    /// Strict dependence of the augmented parameter derivatives on
    /// JM_z(f, F): refutation-only (no multiplicity certificate exists for
    /// strict dependence).
    AF,
    /// Closure dependence on m_Y·JM_z(f, F): same engine as condition W.
    WF,
}

/// A_F / W_F for the auxiliary function F on the family, via the augmented
/// presentation (f, F) over the relations (f).
pub fn check_af_wf(
    p: &GermPresentation,
    probes: &[CurveGerm],
    mode: FunctionCondition,
    opts: &MultOptions,
) -> Result<Verdict, EquisingError> {
    let aug = augmented_jacobian_modules(p)?;
    let columns: Vec<(String, Vect)> = p
        .y_vars()
        .map(|i| {
            (
                format!("d/d{}", p.ring.var_name(i)),
                aug.jm_y.gens[i].clone(),
            )
        })
        .collect();
    let v = match mode {
        FunctionCondition::AF => column_closure_check(
            format!("(f, F) of {} satisfies the strict relative condition", p.name),
            columns,
            &aug.jm_z,
            probes,
            true,
            false,
            opts,
        )?,
        FunctionCondition::WF => column_closure_check(
            format!("(f, F) of {} satisfies the strong relative condition", p.name),
            columns,
            &aug.my_jm_z,
            probes,
            false,
            true,
            opts,
        )?,
    };
    Ok(echo_flags(v, p))
}

// ---------------------------------------------------------------------------
// Structure blindness
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct BlindnessOutcome {
    pub report: ReportNode,
    /// (probe, column) pairs with definite verdicts on both sides.
    pub compared: usize,
    /// Probes whose image stays inside the singular locus (no transfer
    /// argument there, so they are never compared).
    pub skipped_singular: usize,
    /// Definite disagreements; any nonzero value is the bug sentinel.
    pub disagreements: usize,
    /// Exponent r with K^r·(f) contained in (g).
    pub witness_exponent: u32,
}

impl BlindnessOutcome {
    pub fn sentinel(&self) -> bool {
        self.disagreements > 0
    }
}

fn dvr_tag(outcome: &DvrOutcome) -> &'static str {
    match outcome {
        DvrOutcome::NotRefuted => "not-refuted",
        DvrOutcome::Refuted(_) => "refuted",
        DvrOutcome::InsufficientPrecision { .. } => "indeterminate",
    }
}

/// Compare the two structures of a germ probe-by-probe: for every probe
/// curve leaving the singular locus and every parameter direction, the
/// pulled-back membership of ∂f/∂yᵢ in JM_z(f) must agree with that of
/// ∂g/∂yᵢ in JM_z(g). A definite disagreement contradicts the transfer
/// identities behind the witness matrices and is flagged as the bug
/// sentinel. Probes inside the singular locus carry no transfer argument
/// and are skipped.
pub fn structure_blindness_check(
    p: &GermPresentation,
    probes: &[CurveGerm],
    opts: &MultOptions,
) -> Result<BlindnessOutcome, EquisingError> {
    let g = p
        .second_structure
        .clone()
        .ok_or(EquisingError::MissingSecondStructure)?;
    let f = &p.components;
    let w = structure_witnesses(&p.ring, f, &g, None, p.local_dim(), WITNESS_EXPONENT_CAP)?;

    let side_f = jacobian_modules_for(&p.ring, f, f, p.y_len);
    let side_g = jacobian_modules_for(&p.ring, &g, &g, p.y_len);

    let mut report = ReportNode::new(format!("structure-blindness {}", p.name));
    report.put("witness-exponent", w.r.to_string());
    report.put("k-generators", w.k_gens.len().to_string());
    report.put("structures", format!("{} vs {} components", f.len(), g.len()));

    let mut compared = 0usize;
    let mut skipped = 0usize;
    let mut disagreements = 0usize;

    for probe in probes {
        verify_on_variety(probe, f)?;
        let leaves_singular_locus = w
            .k_gens
            .iter()
            .any(|k| !probe.pullback(k).is_exact_zero());
        let mut node = ReportNode::new(format!("probe {}", probe.label));
        node.put("parametrization", probe.display());
        if !leaves_singular_locus {
            node.put("outcome", "skipped: image inside the singular locus");
            skipped += 1;
            report.add_child(node);
            continue;
        }
        let cols_f = pullback_module(probe, &side_f.jm_z);
        let cols_g = pullback_module(probe, &side_g.jm_z);
        for i in p.y_vars() {
            let a = dvr_membership_auto(
                &pullback_vector(probe, &side_f.jm_y.gens[i]),
                &cols_f,
                opts.probe_precision,
                false,
            );
            let b = dvr_membership_auto(
                &pullback_vector(probe, &side_g.jm_y.gens[i]),
                &cols_g,
                opts.probe_precision,
                false,
            );
            let (ta, tb) = (dvr_tag(&a), dvr_tag(&b));
            let mut col = ReportNode::new(format!("column d/d{}", p.ring.var_name(i)));
            col.put("first-structure", ta);
            col.put("second-structure", tb);
            if ta != "indeterminate" && tb != "indeterminate" {
                compared += 1;
                if ta != tb {
                    disagreements += 1;
                    col.put("FLAG", "verdict disagreement");
                }
            }
            node.add_child(col);
        }
        report.add_child(node);
    }

    report.put("compared", compared.to_string());
    report.put("disagreements", disagreements.to_string());
    report.status = Some(if disagreements > 0 {
        "SENTINEL".into()
    } else {
        "AGREEMENT".into()
    });
    Ok(BlindnessOutcome {
        report,
        compared,
        skipped_singular: skipped,
        disagreements,
        witness_exponent: w.r,
    })
}

// ---------------------------------------------------------------------------
// Limiting tangent hyperplanes and W-genericity
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TangencyClass {
    NotTangent,
    Tangent,
    Inconclusive,
}

impl TangencyClass {
    pub fn label(self) -> &'static str {
        match self {
            TangencyClass::NotTangent => "NOT-TANGENT",
            TangencyClass::Tangent => "TANGENT",
            TangencyClass::Inconclusive => "INCONCLUSIVE",
        }
    }
}

/// Classify a hyperplane against a fiber germ: H is NOT a limiting tangent
/// hyperplane exactly when JM(f)_H is a reduction of JM(f), certified by
/// equal (finite) multiplicities; a strict multiplicity drop or an
/// infinite colength of JM(f)_H certifies tangency. Requires an isolated
/// complete-intersection germ; anything else is INCONCLUSIVE.
pub fn limiting_tangent_hyperplane(
    p0: &GermPresentation,
    h: &Hyperplane,
    opts: &MultOptions,
) -> Result<(Verdict, TangencyClass), EquisingError> {
    if p0.y_len != 0 {
        return Err(EquisingError::FiberGermRequired);
    }
    let claim = format!(
        "{} is not a limiting tangent hyperplane to {} at 0",
        h.label, p0.name
    );
    let inconclusive = |reason: String| {
        (
            Verdict::new(&claim, Status::Inconclusive { reason }),
            TangencyClass::Inconclusive,
        )
    };
    if !p0.icis {
        return Ok(inconclusive("germ not flagged ICIS".into()));
    }
    let dim = p0.local_dim();
    if p0.p() + dim != p0.ring.arity() {
        return Ok(inconclusive(format!(
            "component count {} does not cut a complete intersection of dimension {dim}",
            p0.p()
        )));
    }
    let jm = jacobian_modules(p0);
    let jm_h = hyperplane_restricted(p0, h, RestrictionScope::Full);
    let inner = is_reduction(&jm_h, &jm.jm, dim, opts)?;
    let class = match inner.status {
        Status::CertifiedTrue => TangencyClass::NotTangent,
        Status::CertifiedFalse => TangencyClass::Tangent,
        _ => TangencyClass::Inconclusive,
    };
    let v = relabel(&claim, inner)
        .step::<&str, String>("tangency", [("classification", class.label().to_string())])
        .assume("isolated complete intersection (caller-asserted, colength-checked)");
    Ok((v, class))
}

/// Is H (⊇ Y) W-generic for the family? Tried in order: the fiber
/// multiplicity criterion for ICIS families (the section module is
/// interpreted in the central fiber), the family-level reduction test, and
/// finally curve probes on the Grassmann modification centered at H.
/// Probes, if supplied, must live in the modification ring; an empty slice
/// triggers deterministic monomial probe generation there.
pub fn w_generic_check(
    p: &GermPresentation,
    h: &Hyperplane,
    probes: &[CurveGerm],
    opts: &MultOptions,
) -> Result<Verdict, EquisingError> {
    if p.y_len == 0 {
        return Err(EquisingError::NotAFamily);
    }
    if !h.contains_y(p.y_len) {
        return Err(EquisingError::HyperplaneMustContainY {
            label: h.label.clone(),
        });
    }
    let claim = format!("{} is W-generic for {}", h.label, p.name);

    if p.icis {
        let zero = vec![Q::zero(); p.y_len];
        let fiber = specialize_fiber(p, &zero);
        let (fv, class) = limiting_tangent_hyperplane(&fiber, &h.iota(p.y_len), opts)?;
        if class != TangencyClass::Inconclusive {
            let status = match class {
                TangencyClass::NotTangent => Status::CertifiedTrue,
                _ => Status::CertifiedFalse,
            };
            let mut v = Verdict::new(&claim, status);
            v.provenance = fv.provenance;
            return Ok(v
                .step::<&str, &str>(
                    "fiber-multiplicity",
                    [("note", "section module interpreted in the central fiber")],
                )
                .assume("constant fiber multiplicity (asserted via the icis flag)"));
        }
    }

    let jm = jacobian_modules(p);
    let jm_h = hyperplane_restricted(p, h, RestrictionScope::Full);
    let family = is_reduction(&jm_h, &jm.jm, p.local_dim(), opts)?;
    if family.status.is_certified() {
        return Ok(relabel(&claim, family)
            .step::<&str, &str>("family-reduction", [("module", "JM(f)_H in JM(f)")]));
    }

    let (gm, shifted) = grassmann_at_hyperplane(p, h)?;
    let generated;
    let probe_set: &[CurveGerm] = if probes.is_empty() {
        generated = monomial_probes(
            &shifted.ring,
            &(0..shifted.ring.arity()).collect::<Vec<_>>(),
            &shifted.components,
            &ProbeOptions {
                precision: opts.probe_precision,
                ..ProbeOptions::default()
            },
        );
        &generated
    } else {
        for c in probes {
            if c.ring() != &shifted.ring {
                return Err(EquisingError::ProbeRingMismatch {
                    got: c.ring().to_string(),
                    want: shifted.ring.to_string(),
                });
            }
        }
        probes
    };
    let wv = check_whitney_w(&shifted, probe_set, opts)?;
    Ok(relabel(&claim, wv).step::<&str, String>(
        "modification-probes",
        [
            (
                "chart",
                p.ring.var_name(p.y_len + gm.chart).to_string(),
            ),
            ("center", "a = 0 corresponds to H".to_string()),
        ],
    ))
}

/// One step of a W-generic sequence: the genericity verdict for H_i against
/// the current section, and the condition-W re-check on the new section
/// (f, L_1, ..., L_i).
#[derive(Clone, Debug)]
pub struct SequenceStep {
    pub hyperplane: String,
    pub generic: Verdict,
    pub section_whitney: Verdict,
}

/// Check a sequence of hyperplanes, each containing Y, for W-genericity of
/// the successive sections. The i-th step requires the span of the first i
/// forms to have rank i; the section carries the (possibly non-reduced)
/// structure obtained by adjoining the linear forms as components. Family
/// probes are filtered onto each section before the re-check.
pub fn w_generic_sequence(
    p: &GermPresentation,
    hs: &[Hyperplane],
    probes: &[CurveGerm],
    opts: &MultOptions,
) -> Result<Vec<SequenceStep>, EquisingError> {
    if p.y_len == 0 {
        return Err(EquisingError::NotAFamily);
    }
    let mut current = p.clone();
    let mut steps = Vec::new();
    for (i, h) in hs.iter().enumerate() {
        let rows: Vec<Vec<Q>> = hs[..=i].iter().map(|hh| hh.coeffs.clone()).collect();
        let rank = matrix_rank(&rows);
        if rank != i + 1 {
            return Err(EquisingError::RankDegeneration {
                index: i,
                rank,
                expected: i + 1,
            });
        }
        let generic = w_generic_check(&current, h, &[], opts)?;

        let form = h.form(&current.ring);
        let mut comps = current.components.clone();
        comps.push(form);
        let mut section = GermPresentation::new(
            format!("section({}, {})", current.name, h.label),
            current.ring.clone(),
            current.y_len,
            comps,
        )?;
        section.equidimensional = current.equidimensional;
        section.wa = current.wa;
        section.icis = current.icis;
        section.dim = current.dim.map(|d| d.saturating_sub(1));

        let kept: Vec<CurveGerm> = probes
            .iter()
            .filter(|c| verify_on_variety(c, &section.components).is_ok())
            .cloned()
            .collect();
        let section_whitney = check_whitney_w(&section, &kept, opts)?;

        steps.push(SequenceStep {
            hyperplane: h.label.clone(),
            generic,
            section_whitney,
        });
        current = section;
    }
    Ok(steps)
}

// ---------------------------------------------------------------------------
// ICIS fiberwise correspondence
// ---------------------------------------------------------------------------

/// Sampled fiber data of a family, with the seed that produced the sample.
#[derive(Clone, Debug)]
pub struct ICISProfile {
    /// Relation-count check: p = n − fiber dimension.
    pub complete_intersection: bool,
    pub seed: u64,
    /// Rendered parameter points; the origin is always first.
    pub points: Vec<String>,
    /// Fiber colengths of JM at each point.
    pub colengths: Vec<ColengthValue>,
    /// Fiber multiplicities e(JM) at each point; None when not finite.
    pub multiplicities: Vec<Option<u64>>,
}

impl ICISProfile {
    /// Constant finite multiplicity across all sampled points?
    pub fn constant_multiplicity(&self) -> bool {
        match self.multiplicities.first() {
            Some(Some(e0)) => self
                .multiplicities
                .iter()
                .all(|m| m.as_ref() == Some(e0)),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub report: ReportNode,
    pub profile: ICISProfile,
    /// All scan hypotheses held: complete intersection count and constant
    /// fiber multiplicity.
    pub hypothesis_ok: bool,
    /// Hyperplanes where a family-level curve refutation met a certified
    /// NOT-TANGENT fiber verdict.
    pub contradictions: usize,
}

impl ScanOutcome {
    /// A definite fiber/family disagreement under verified hypotheses.
    pub fn sentinel(&self) -> bool {
        self.hypothesis_ok && self.contradictions > 0
    }
}

/// Number of sampled parameter points beyond the origin.
const SCAN_EXTRA_POINTS: usize = 4;

/// Fiberwise correspondence scan for an ICIS family: (i) sample the fiber
/// multiplicity e(JM) over seeded rational parameter points and check
/// constancy; (ii) for each hyperplane in the sample, compare the certified
/// fiber tangency classification at the origin with family-level curve
/// evidence for JM_z(f)_H being a reduction of JM_z(f). A family-level
/// refutation against a certified NOT-TANGENT fiber is a contradiction
/// (bug sentinel); a TANGENT fiber with unrefuted family probes is mere
/// absence of evidence. A failed hypothesis downgrades the whole scan to a
/// hypothesis-failed report, which is still emitted in full.
pub fn icis_correspondence_scan(
    p: &GermPresentation,
    sample: &[Hyperplane],
    probes: &[CurveGerm],
    opts: &MultOptions,
) -> Result<ScanOutcome, EquisingError> {
    if p.y_len == 0 {
        return Err(EquisingError::NotAFamily);
    }
    if !p.icis {
        return Err(EquisingError::NotIcis);
    }
    let fiber_dim = p.local_dim().saturating_sub(p.y_len);
    let complete_intersection = p.p() + fiber_dim == p.n();

    // (i) fiber multiplicity scan over seeded rational points.
    let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
    let mut points: Vec<Vec<Q>> = vec![vec![Q::zero(); p.y_len]];
    for _ in 0..SCAN_EXTRA_POINTS {
        points.push(
            (0..p.y_len)
                .map(|_| crate::rational::random_small_nonzero(&mut rng))
                .collect(),
        );
    }
    let mut rendered = Vec::new();
    let mut colengths = Vec::new();
    let mut colength_tags = Vec::new();
    let mut mults = Vec::new();
    for y0 in &points {
        rendered.push(format!("({})", y0.iter().map(render).join(", ")));
        let fiber = specialize_fiber(p, y0);
        let jm = jacobian_modules(&fiber);
        let c = local_colength(&jm.jm, &opts.truncation).value;
        colength_tags.push(match &c {
            ColengthValue::Finite(n) => n.to_string(),
            ColengthValue::Infinite { position, var } => format!(
                "infinite (free {} at position {position})",
                fiber.ring.var_name(*var)
            ),
            ColengthValue::Undetermined { cap } => format!("undetermined at cap {cap}"),
        });
        colengths.push(c);
        mults.push(buchsbaum_rim(&jm.jm, fiber_dim, opts).map(|r| r.e).ok());
    }
    let profile = ICISProfile {
        complete_intersection,
        seed: opts.seed,
        points: rendered,
        colengths,
        multiplicities: mults,
    };
    let hypothesis_ok = complete_intersection && profile.constant_multiplicity();

    let mut report = ReportNode::new(format!("icis-scan {}", p.name));
    report.put("seed", opts.seed.to_string());
    report.put(
        "complete-intersection",
        complete_intersection.to_string(),
    );
    let mut scan_node = ReportNode::new("fiber-multiplicities");
    for (i, pt) in profile.points.iter().enumerate() {
        let mut n = ReportNode::new(format!("y = {pt}"));
        n.put("colength", &colength_tags[i]);
        n.put(
            "e",
            profile.multiplicities[i]
                .map(|e| e.to_string())
                .unwrap_or_else(|| "not finite".into()),
        );
        scan_node.add_child(n);
    }
    scan_node.put(
        "constant",
        profile.constant_multiplicity().to_string(),
    );
    report.add_child(scan_node);

    // (ii) per-hyperplane fiber/family agreement.
    let fiber0 = specialize_fiber(p, &points[0]);
    let jm_family = jacobian_modules(p);
    let mut contradictions = 0usize;
    for h in sample {
        if !h.contains_y(p.y_len) {
            return Err(EquisingError::HyperplaneMustContainY {
                label: h.label.clone(),
            });
        }
        let (fv, fclass) = limiting_tangent_hyperplane(&fiber0, &h.iota(p.y_len), opts)?;
        let jm_z_h = hyperplane_restricted(p, h, RestrictionScope::ZOnly);
        let mut family_refuted = None;
        let mut family_probes = 0usize;
        for gen in &jm_family.jm_z.gens {
            match icl_refute(gen, &jm_z_h, probes, false, opts.probe_precision)? {
                ProbeOutcome::Refuted(r) => {
                    family_refuted = Some(r);
                    break;
                }
                ProbeOutcome::NotRefuted { probes: n, .. } => family_probes = family_probes.max(n),
            }
        }
        let mut node = ReportNode::new(format!("hyperplane {}", h.label));
        node.put("fiber", fclass.label());
        node.put("fiber-status", fv.status.label());
        match &family_refuted {
            Some(r) => {
                node.put(
                    "family",
                    format!("REFUTED by {} ({})", r.curve_label, r.curve_display),
                );
                if fclass == TangencyClass::NotTangent {
                    contradictions += 1;
                    node.put("FLAG", "family refutation against certified NOT-TANGENT fiber");
                }
            }
            None => {
                node.put("family", format!("NOT-REFUTED({family_probes})"));
            }
        }
        report.add_child(node);
    }

    report.put("contradictions", contradictions.to_string());
    report.status = Some(if !hypothesis_ok {
        "HYPOTHESIS-FAILED".into()
    } else if contradictions > 0 {
        "SENTINEL".into()
    } else {
        "AGREEMENT".into()
    });
    Ok(ScanOutcome {
        report,
        profile,
        hypothesis_ok,
        contradictions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{
        a2_family, a2_probes, cone_family, cone_fiber, cone_probes, example_1_1_section,
    };

    fn opts() -> MultOptions {
        MultOptions::default()
    }

    #[test]
    fn whitney_refuted_on_the_a2_family() {
        let v = check_whitney_w(&a2_family(), &a2_probes(), &opts()).unwrap();
        match &v.status {
            Status::Refuted {
                witness:
                    Witness::Curve {
                        curve,
                        target_order,
                        module_order,
                        row,
                        ..
                    },
            } => {
                assert_eq!(curve, "w-witness");
                assert_eq!(*row, 0);
                assert_eq!(*target_order, 1);
                assert_eq!(*module_order, Some(3));
            }
            other => panic!("expected refutation, got {other}"),
        }
    }

    #[test]
    fn whitney_vacuous_on_constant_families() {
        let v = check_whitney_w(&cone_family(), &cone_probes(), &opts()).unwrap();
        assert_eq!(
            v.status,
            Status::NotRefuted {
                probes: cone_probes().len()
            }
        );
        assert!(v.provenance.iter().any(|s| s.criterion == "vacuous"));
    }

    #[test]
    fn af_refutes_a_unit_column() {
        let mut p = a2_family();
        // F = y has dF/dy = 1 on the augmented row: strictly dependent on
        // nothing, so any probe refutes.
        p.aux_function = Some(crate::parse::parse_poly(&p.ring, "y").unwrap());
        let v = check_af_wf(&p, &a2_probes(), FunctionCondition::AF, &opts()).unwrap();
        match &v.status {
            Status::Refuted {
                witness:
                    Witness::Curve {
                        row,
                        target_order,
                        module_order,
                        ..
                    },
            } => {
                // Both rows are deficient (the F row even carries a unit);
                // the sweep reports the first, at strict order 1 vs 3.
                assert_eq!(*row, 0);
                assert_eq!(*target_order, 1);
                assert_eq!(*module_order, Some(3));
            }
            other => panic!("expected refutation, got {other}"),
        }
    }

    #[test]
    fn wf_inherits_the_whitney_witness() {
        let p = a2_family(); // bundled F = z2
        let v = check_af_wf(&p, &a2_probes(), FunctionCondition::WF, &opts()).unwrap();
        match &v.status {
            Status::Refuted {
                witness: Witness::Curve { curve, row, .. },
            } => {
                assert_eq!(curve, "w-witness");
                assert_eq!(*row, 0); // the original W-failing row
            }
            other => panic!("expected refutation, got {other}"),
        }
    }

    #[test]
    fn af_missing_function_is_an_error() {
        let p = cone_family(); // no F line
        let e = check_af_wf(&p, &[], FunctionCondition::AF, &opts()).unwrap_err();
        assert!(matches!(e, EquisingError::Germ(GermError::MissingF)));
    }

    fn section_probes(p: &GermPresentation) -> Vec<CurveGerm> {
        let src = "\
curves v1
curve branch-a
t = t
y = t
z = 0
w = -t^2
curve branch-b
t = t
y = 0
z = t
w = -t
curve axis
t = t
y = 0
z = 0
w = 0
";
        crate::formats::parse_curves_file(src, &p.ring).unwrap()
    }

    #[test]
    fn blindness_agrees_on_the_section_pair() {
        let p = example_1_1_section();
        let probes = section_probes(&p);
        let out = structure_blindness_check(&p, &probes, &opts()).unwrap();
        assert_eq!(out.disagreements, 0);
        assert!(!out.sentinel());
        assert_eq!(out.skipped_singular, 1); // the parameter-axis probe
        assert_eq!(out.compared, 2); // two surviving probes, one y-column
        assert_eq!(out.witness_exponent, 1);
        assert_eq!(out.report.status.as_deref(), Some("AGREEMENT"));
    }

    #[test]
    fn blindness_requires_a_second_structure() {
        let e = structure_blindness_check(&a2_family(), &[], &opts()).unwrap_err();
        assert!(matches!(e, EquisingError::MissingSecondStructure));
    }

    #[test]
    fn cone_hyperplane_classification() {
        let p0 = cone_fiber();
        let o = opts();
        let (v, class) =
            limiting_tangent_hyperplane(&p0, &p0.hyperplanes[0].clone(), &o).unwrap();
        assert_eq!(class, TangencyClass::NotTangent);
        assert_eq!(v.status, Status::CertifiedTrue);
        let eq_step = v
            .provenance
            .iter()
            .find(|s| s.criterion == "multiplicity-equality")
            .expect("multiplicity step");
        assert_eq!(eq_step.data["e"], "2");

        let (v2, class2) =
            limiting_tangent_hyperplane(&p0, &p0.hyperplanes[1].clone(), &o).unwrap();
        assert_eq!(class2, TangencyClass::Tangent);
        match &v2.status {
            Status::CertifiedFalse => {}
            other => panic!("expected certified tangency, got {other}"),
        }
        let ob = v2
            .provenance
            .iter()
            .find(|s| s.criterion == "colength-obstruction")
            .expect("obstruction step");
        assert!(ob.data.contains_key("note"));
    }

    #[test]
    fn non_icis_is_inconclusive() {
        let mut p0 = cone_fiber();
        p0.icis = false;
        let (_, class) =
            limiting_tangent_hyperplane(&p0, &p0.hyperplanes[0].clone(), &opts()).unwrap();
        assert_eq!(class, TangencyClass::Inconclusive);
    }

    #[test]
    fn w_generic_on_the_cone_family() {
        let p = cone_family();
        let o = opts();
        let v = w_generic_check(&p, &p.hyperplanes[0].clone(), &[], &o).unwrap();
        assert_eq!(v.status, Status::CertifiedTrue);
        assert!(v
            .provenance
            .iter()
            .any(|s| s.criterion == "fiber-multiplicity"));

        let v2 = w_generic_check(&p, &p.hyperplanes[1].clone(), &[], &o).unwrap();
        assert_eq!(v2.status, Status::CertifiedFalse);
    }

    #[test]
    fn w_generic_rejects_hyperplanes_meeting_y() {
        let p = cone_family();
        let h = Hyperplane::from_form(&crate::parse::parse_poly(&p.ring, "y + z1").unwrap())
            .unwrap();
        let e = w_generic_check(&p, &h, &[], &opts()).unwrap_err();
        assert!(matches!(e, EquisingError::HyperplaneMustContainY { .. }));
    }

    #[test]
    fn sequence_over_the_cone() {
        let p = cone_family();
        let ring = p.ring.clone();
        let h1 = p.hyperplanes[0].clone(); // z2
        let h2 = Hyperplane::from_form(&crate::parse::parse_poly(&ring, "z3").unwrap()).unwrap();
        let steps = w_generic_sequence(&p, &[h1.clone(), h2], &cone_probes(), &opts()).unwrap();
        assert_eq!(steps.len(), 2);
        for s in &steps {
            assert_eq!(s.generic.status, Status::CertifiedTrue, "{}", s.hyperplane);
            assert!(
                !s.section_whitney.status.is_refuted(),
                "section re-check must not refute"
            );
        }
        // Repeating a hyperplane degenerates the rank at step 2.
        let e = w_generic_sequence(&p, &[h1.clone(), h1], &[], &opts()).unwrap_err();
        assert!(matches!(
            e,
            EquisingError::RankDegeneration {
                index: 1,
                rank: 1,
                ..
            }
        ));
        // The empty sequence is vacuous.
        assert!(w_generic_sequence(&p, &[], &[], &opts()).unwrap().is_empty());
    }

    #[test]
    fn scan_constant_family_agrees() {
        let p = cone_family();
        let sample = crate::scenarios::cone_hyperplanes().hyperplanes;
        let out = icis_correspondence_scan(&p, &sample, &cone_probes(), &opts()).unwrap();
        assert!(out.hypothesis_ok);
        assert_eq!(out.contradictions, 0);
        assert!(!out.sentinel());
        assert!(out.profile.multiplicities.iter().all(|m| *m == Some(2)));
        assert_eq!(out.report.status.as_deref(), Some("AGREEMENT"));
    }

    #[test]
    fn scan_jumping_family_fails_hypothesis() {
        let p = a2_family();
        let out = icis_correspondence_scan(&p, &[], &[], &opts()).unwrap();
        assert!(!out.hypothesis_ok);
        assert!(!out.sentinel()); // no sentinel without verified hypotheses
        assert_eq!(out.report.status.as_deref(), Some("HYPOTHESIS-FAILED"));
        // The cusp fiber has colength 2 and e((z1^2, z2)) = 3 along the
        // branch (t^2, t^3); every seeded nonzero parameter value gives a
        // smooth fiber with colength 0.
        assert_eq!(out.profile.colengths[0], ColengthValue::Finite(2));
        assert_eq!(out.profile.multiplicities[0], Some(3));
        for m in &out.profile.multiplicities[1..] {
            assert_eq!(*m, Some(0));
        }
    }
}
