//! Curve germs (C, 0) -> (C^n, 0) with polynomial components, exact
//! pullbacks, and the discrete-valuation-ring membership test that powers
//! curve-criterion refutations.
//!
//! A refutation produced here is a hard certificate: a specific curve on
//! the variety along which the target's valuation is strictly smaller than
//! anything the module can supply. The converse direction is never claimed
//! from probes alone.

use crate::groebner::{SubmoduleSpec, Vect};
use crate::poly::Poly;
use crate::rational::{is_zero, Q};
use crate::ring::PolyRing;
use crate::series::{Prec, PowerSeries, SeriesOrd};
use num_traits::{One, Zero};

/// Default working precision for truncated series arithmetic.
pub const DEFAULT_PRECISION: u32 = 24;
/// Precision retry ladder multipliers (doubling, twice).
pub const PRECISION_RETRIES: u32 = 2;

#[derive(Clone, Debug)]
pub struct CurveGerm {
    ring: PolyRing,
    pub label: String,
    images: Vec<PowerSeries>,
}

impl CurveGerm {
    pub fn new(ring: &PolyRing, label: impl Into<String>, images: Vec<PowerSeries>) -> Self {
        assert_eq!(images.len(), ring.arity(), "one image per variable");
        CurveGerm {
            ring: ring.clone(),
            label: label.into(),
            images,
        }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn images(&self) -> &[PowerSeries] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &PowerSeries {
        &self.images[i]
    }

    /// Germ at the origin: every component vanishes at t = 0.
    pub fn through_origin(&self) -> bool {
        self.images
            .iter()
            .all(|s| s.coeff(0).map(|c| is_zero(&c)).unwrap_or(false))
    }

    pub fn is_constant_zero(&self) -> bool {
        self.images.iter().all(PowerSeries::is_exact_zero)
    }

    /// Exact substitution of the curve into a polynomial.
    pub fn pullback(&self, p: &Poly) -> PowerSeries {
        assert_eq!(p.ring(), &self.ring, "pullback across rings");
        let mut out = PowerSeries::zero();
        for (m, c) in p.terms() {
            let mut prod = PowerSeries::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    prod = prod.mul(&self.images[i].pow(e));
                    if prod.is_exact_zero() {
                        break;
                    }
                }
            }
            out = out.add(&prod);
        }
        out
    }

    /// Evaluate at a rational parameter value (exact components only).
    pub fn eval_at(&self, t0: &Q) -> Option<Vec<Q>> {
        self.images
            .iter()
            .map(|s| match s.prec() {
                Prec::Exact => {
                    let mut acc = Q::zero();
                    let mut p = Q::one();
                    for c in s.known_coeffs() {
                        if !is_zero(c) {
                            acc += c * &p;
                        }
                        p *= t0;
                    }
                    Some(acc)
                }
                Prec::Trunc(_) => None,
            })
            .collect()
    }

    pub fn display(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|s| s.to_string()).collect();
        format!("({})", parts.join(", "))
    }
}

/// Witness extracted from a failed DVR membership reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvrWitness {
    /// Component (row) where the valuation gap appears.
    pub row: usize,
    /// Valuation of the target in that row.
    pub target_ord: u32,
    /// Valuation the module can supply there (None: the module supplies
    /// nothing definite in that row at all).
    pub pivot_ord: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DvrOutcome {
    /// Reduction succeeded to available precision; no refutation.
    NotRefuted,
    /// The target has strictly smaller valuation than the module allows.
    Refuted(DvrWitness),
    /// Pivot valuations too close to the truncation degree; retry with
    /// precision above this bound.
    InsufficientPrecision { needed_above: u32 },
}

fn series_div(a: &PowerSeries, b: &PowerSeries, ord_b: u32, prec: u32) -> PowerSeries {
    let unit = b.shift_down(ord_b);
    let inv = unit.inverse_unit(prec).expect("unit after shift");
    a.shift_down(ord_b).mul(&inv)
}

/// Membership of `target` in the O_1-submodule of O_1^p spanned by
/// `columns`, where O_1 = Q[[t]] truncated at `prec`. With `strict`, the
/// columns are first multiplied by t, testing strict dependence.
///
/// Greedy staircase reduction: repeatedly pick the (valuation, row, column)
/// minimal pivot among unused columns, then eliminate that row from the
/// others. The target is reduced through the pivots in selection order; a
/// definite valuation gap refutes membership.
pub fn dvr_membership(
    target: &[PowerSeries],
    columns: &[Vec<PowerSeries>],
    prec: u32,
    strict: bool,
) -> DvrOutcome {
    let rows = target.len();
    let mut cols: Vec<Vec<PowerSeries>> = columns
        .iter()
        .map(|col| {
            assert_eq!(col.len(), rows, "column height mismatch");
            col.iter()
                .map(|s| {
                    let s = s.truncate(prec);
                    if strict {
                        s.shift_up(1).truncate(prec)
                    } else {
                        s
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut tgt: Vec<PowerSeries> = target.iter().map(|s| s.truncate(prec)).collect();

    // Select pivots.
    let mut used = vec![false; cols.len()];
    let mut pivots: Vec<(usize, usize, u32)> = Vec::new(); // (row, col, ord)
    loop {
        let mut best: Option<(u32, usize, usize)> = None;
        for (ci, col) in cols.iter().enumerate() {
            if used[ci] {
                continue;
            }
            for (ri, s) in col.iter().enumerate() {
                if let SeriesOrd::Finite(o) = s.ord() {
                    let cand = (o, ri, ci);
                    if best.map(|b| cand < b).unwrap_or(true) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((o, r, c)) = best else { break };
        pivots.push((r, c, o));
        used[c] = true;
        let pivot_col = cols[c].clone();
        for (ci, col) in cols.iter_mut().enumerate() {
            if used[ci] {
                continue;
            }
            let entry = &col[r];
            if let SeriesOrd::Finite(_) = entry.ord() {
                let alpha = series_div(entry, &pivot_col[r], o, prec);
                for (ri, s) in col.iter_mut().enumerate() {
                    *s = s.sub(&alpha.mul(&pivot_col[ri]));
                }
            }
        }
    }

    // Precision guard: pivots too deep into the tail make the reduction
    // meaningless.
    if let Some(max_ord) = pivots.iter().map(|&(_, _, o)| o).max() {
        if prec <= 2 * max_ord {
            return DvrOutcome::InsufficientPrecision {
                needed_above: 2 * max_ord,
            };
        }
    }

    // Reduce the target through the pivots in order.
    for &(r, c, o) in &pivots {
        match tgt[r].ord() {
            SeriesOrd::Zero | SeriesOrd::AtLeast(_) => continue,
            SeriesOrd::Finite(ot) => {
                if ot < o {
                    return DvrOutcome::Refuted(DvrWitness {
                        row: r,
                        target_ord: ot,
                        pivot_ord: Some(o),
                    });
                }
                let beta = series_div(&tgt[r], &cols[c][r], o, prec);
                for (ri, s) in tgt.iter_mut().enumerate() {
                    let delta = beta.mul(&cols[c][ri]);
                    *s = s.sub(&delta);
                }
            }
        }
    }

    // Any remaining definite coefficient refutes.
    for (ri, s) in tgt.iter().enumerate() {
        if let SeriesOrd::Finite(o) = s.ord() {
            return DvrOutcome::Refuted(DvrWitness {
                row: ri,
                target_ord: o,
                pivot_ord: None,
            });
        }
    }
    DvrOutcome::NotRefuted
}

/// Run [`dvr_membership`] with the doubling precision ladder.
pub fn dvr_membership_auto(
    target: &[PowerSeries],
    columns: &[Vec<PowerSeries>],
    base_prec: u32,
    strict: bool,
) -> DvrOutcome {
    let mut prec = base_prec;
    for _ in 0..=PRECISION_RETRIES {
        match dvr_membership(target, columns, prec, strict) {
            DvrOutcome::InsufficientPrecision { .. } => {
                prec = prec.saturating_mul(2);
            }
            done => return done,
        }
    }
    dvr_membership(target, columns, prec, strict)
}

#[derive(Clone, Copy, Debug)]
pub struct ProbeOptions {
    /// Largest exponent used in monomial probe components.
    pub exponent_bound: u32,
    /// Maximum number of probes kept (after the on-variety filter).
    pub count: usize,
    /// Base series precision for DVR runs.
    pub precision: u32,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            exponent_bound: 3,
            count: 400,
            precision: DEFAULT_PRECISION,
        }
    }
}

/// Deterministic monomial probe curves: each variable in `vary` ranges over
/// {0, t, -t, t^2, -t^2, ..., ±t^B} (first variable slowest), all other
/// variables are pinned to zero, and only curves with every constraint
/// pulling back to exactly zero survive. The all-zero curve is skipped.
pub fn monomial_probes(
    ring: &PolyRing,
    vary: &[usize],
    constraints: &[Poly],
    opts: &ProbeOptions,
) -> Vec<CurveGerm> {
    let b = opts.exponent_bound;
    let per_var: Vec<PowerSeries> = {
        let mut v = vec![PowerSeries::zero()];
        for k in 1..=b {
            v.push(PowerSeries::monomial(Q::one(), k));
            v.push(PowerSeries::monomial(-Q::one(), k));
        }
        v
    };
    let radix = per_var.len();
    let mut out = Vec::new();
    let total = (radix as u128).pow(vary.len() as u32);
    let mut counter: u128 = 0;
    while counter < total && out.len() < opts.count {
        let mut digits = Vec::with_capacity(vary.len());
        let mut rem = counter;
        for _ in 0..vary.len() {
            digits.push((rem % radix as u128) as usize);
            rem /= radix as u128;
        }
        digits.reverse(); // first listed variable is the slowest digit
        counter += 1;

        if digits.iter().all(|&d| d == 0) {
            continue;
        }
        let mut images = vec![PowerSeries::zero(); ring.arity()];
        for (vi, &var) in vary.iter().enumerate() {
            images[var] = per_var[digits[vi]].clone();
        }
        let curve = CurveGerm::new(ring, format!("probe-{}", out.len()), images);
        if constraints
            .iter()
            .all(|c| curve.pullback(c).is_exact_zero())
        {
            out.push(curve);
        }
    }
    out
}

/// Best-effort Newton continuation for hypersurfaces: starting from a seed
/// jet, repeatedly cancel the lowest residual order of f∘φ by adjusting
/// along the gradient. Succeeds only when the residual reaches exactly
/// zero (the curve then lies on V(f)); bails out (None) when the residual
/// order fails to increase strictly, when the correction order is not
/// positive, or after `max_steps`.
pub fn newton_jet(
    f: &Poly,
    vary: &[usize],
    seed: &CurveGerm,
    max_steps: u32,
) -> Option<CurveGerm> {
    let ring = seed.ring().clone();
    let grads: Vec<Poly> = vary.iter().map(|&i| f.diff(i)).collect();
    let mut images = seed.images().to_vec();
    let mut last_l: Option<u32> = None;

    for _ in 0..max_steps {
        let curve = CurveGerm::new(&ring, seed.label.clone(), images.clone());
        let r = curve.pullback(f);
        let l = match r.ord() {
            SeriesOrd::Zero => {
                return Some(curve);
            }
            SeriesOrd::Finite(l) => l,
            SeriesOrd::AtLeast(_) => return None,
        };
        if let Some(prev) = last_l {
            if l <= prev {
                return None;
            }
        }
        last_l = Some(l);

        // Lowest gradient order along the current jet.
        let gvals: Vec<PowerSeries> = grads.iter().map(|g| curve.pullback(g)).collect();
        let s = gvals
            .iter()
            .filter_map(|g| match g.ord() {
                SeriesOrd::Finite(o) => Some(o),
                _ => None,
            })
            .min()?;
        if l <= s {
            return None; // correction order would not be positive
        }
        let k = l - s;
        // First gradient achieving the minimal order carries the correction.
        let (gi, gv) = gvals
            .iter()
            .enumerate()
            .find(|(_, g)| g.ord() == SeriesOrd::Finite(s))?;
        let num = r.coeff(l).expect("exact");
        let den = gv.coeff(s).expect("exact");
        let c = -(num / den);
        let var = vary[gi];
        images[var] = images[var].add(&PowerSeries::monomial(c, k));
    }
    None
}

/// Exact rank of a rational matrix (rows of equal length).
#[allow(clippy::needless_range_loop)] // two rows are indexed at once
pub fn matrix_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let pivot = (rank..nrows).find(|&r| !is_zero(&m[r][col]));
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = Q::one() / &m[rank][col];
        for c in col..ncols {
            m[rank][c] = &m[rank][c] * &inv;
        }
        for r in 0..nrows {
            if r != rank && !is_zero(&m[r][col]) {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let scaled = &m[rank][c] * &factor;
                    m[r][c] = &m[r][c] - &scaled;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Does the curve pass through the smooth part of V(components)? Checked by
/// evaluating the Jacobian at φ(t0) for t0 in {1, 1/2, 1/3} and comparing
/// its rank with `expected_rank` (the codimension). True if any sample
/// point is smooth.
pub fn smooth_point_filter(
    curve: &CurveGerm,
    components: &[Poly],
    expected_rank: usize,
) -> bool {
    let ring = curve.ring();
    let jac: Vec<Vec<Poly>> = components
        .iter()
        .map(|f| (0..ring.arity()).map(|i| f.diff(i)).collect())
        .collect();
    for t0 in [crate::rational::qi(1), crate::rational::q(1, 2), crate::rational::q(1, 3)] {
        let Some(point) = curve.eval_at(&t0) else {
            continue;
        };
        let rows: Vec<Vec<Q>> = jac
            .iter()
            .map(|row| row.iter().map(|p| p.eval(&point)).collect())
            .collect();
        if matrix_rank(&rows) == expected_rank {
            return true;
        }
    }
    false
}

/// Limiting secant direction of the curve relative to the linear subspace
/// spanned by the non-z variables: the normalized coefficient vector of the
/// lowest order appearing among the z-block components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecantDirection {
    pub order: u32,
    /// One entry per z-block variable, normalized so the first nonzero is 1.
    pub direction: Vec<Q>,
}

pub fn limiting_secant(curve: &CurveGerm, z_vars: &[usize]) -> Option<SecantDirection> {
    let mut m: Option<u32> = None;
    for &i in z_vars {
        if let SeriesOrd::Finite(o) = curve.image(i).ord() {
            m = Some(m.map_or(o, |mm: u32| mm.min(o)));
        }
    }
    let m = m?;
    let mut dir: Vec<Q> = z_vars
        .iter()
        .map(|&i| curve.image(i).coeff(m).unwrap_or_else(Q::zero))
        .collect();
    let lead = dir.iter().find(|c| !is_zero(c))?.clone();
    for c in dir.iter_mut() {
        *c = &*c / &lead;
    }
    Some(SecantDirection {
        order: m,
        direction: dir,
    })
}

/// Is the limiting secant contained in the hyperplane with the given
/// z-block coefficients? Checks both the algebraic form (the linear form
/// kills the direction vector) and the valuative form (the pullback of the
/// form vanishes past the secant order) and insists they agree.
pub fn secant_in_hyperplane(
    curve: &CurveGerm,
    z_vars: &[usize],
    coeffs: &[Q],
    secant: &SecantDirection,
) -> bool {
    assert_eq!(coeffs.len(), z_vars.len());
    let algebraic = {
        let mut s = Q::zero();
        for (c, d) in coeffs.iter().zip(&secant.direction) {
            s += c * d;
        }
        is_zero(&s)
    };
    let valuative = {
        let mut pull = PowerSeries::zero();
        for (c, &i) in coeffs.iter().zip(z_vars) {
            pull = pull.add(&curve.image(i).scale(c));
        }
        match pull.ord() {
            SeriesOrd::Zero => true,
            SeriesOrd::Finite(o) => o > secant.order,
            SeriesOrd::AtLeast(b) => b > secant.order,
        }
    };
    assert_eq!(
        algebraic, valuative,
        "secant containment criteria disagree"
    );
    algebraic
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CurveError {
    #[error(
        "curve {curve} is not on the variety: relation {relation} pulls back \
         with leading t-order {order}"
    )]
    NotOnVariety {
        curve: String,
        relation: usize,
        order: u32,
    },
    #[error("curve {curve} does not pass through the origin")]
    NotThroughOrigin { curve: String },
    #[error("curve has {curve_arity} components but the ring has {ring_arity} variables")]
    ArityMismatch {
        curve_arity: usize,
        ring_arity: usize,
    },
    #[error("target has rank {target} but the module has rank {module}")]
    RankMismatch { target: usize, module: usize },
}

/// Check that every ambient relation pulls back to exactly zero along the
/// curve (hard requirement before a curve may carry refutation weight).
pub fn verify_on_variety(curve: &CurveGerm, relations: &[Poly]) -> Result<(), CurveError> {
    if !curve.through_origin() {
        return Err(CurveError::NotThroughOrigin {
            curve: curve.label.clone(),
        });
    }
    for (j, rel) in relations.iter().enumerate() {
        let pulled = curve.pullback(rel);
        if !pulled.is_exact_zero() {
            let order = match pulled.ord() {
                SeriesOrd::Finite(o) => o,
                SeriesOrd::AtLeast(b) => b,
                SeriesOrd::Zero => unreachable!("exact zero handled above"),
            };
            return Err(CurveError::NotOnVariety {
                curve: curve.label.clone(),
                relation: j,
                order,
            });
        }
    }
    Ok(())
}

/// Pull a module element back to a vector of series along the curve.
pub fn pullback_vector(curve: &CurveGerm, v: &Vect) -> Vec<PowerSeries> {
    v.comps().iter().map(|p| curve.pullback(p)).collect()
}

/// Pull the full generating set of a submodule back along the curve:
/// generator columns first, then one column per (relation, position) pair.
/// On-variety curves turn the relation columns into exact zeros; they are
/// kept so the column list always matches `combined_inputs`.
pub fn pullback_module(curve: &CurveGerm, module: &SubmoduleSpec) -> Vec<Vec<PowerSeries>> {
    module
        .combined_inputs()
        .iter()
        .map(|v| pullback_vector(curve, v))
        .collect()
}

/// A replayable curve refutation: the probe plus the valuation gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRefutation {
    pub curve_label: String,
    pub curve_display: String,
    /// Index into the probe list that produced the witness.
    pub probe_index: usize,
    pub witness: DvrWitness,
}

/// Aggregate outcome of a probe sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeOutcome {
    Refuted(CurveRefutation),
    NotRefuted {
        probes: usize,
        /// Probes skipped because the precision ladder topped out.
        precision_skipped: usize,
    },
}

/// Curve-criterion refutation sweep: for each probe (verified to lie on the
/// variety cut out by the module's relations), test `h∘φ ∈ (φ*M)·O_1`
/// (or `∈ t·(φ*M)·O_1` when `strict`). The first failing probe, in input
/// order, wins. Never certifies — membership would have to hold along all
/// curves, and only finitely many are tried.
pub fn icl_refute(
    h: &Vect,
    module: &SubmoduleSpec,
    probes: &[CurveGerm],
    strict: bool,
    precision: u32,
) -> Result<ProbeOutcome, CurveError> {
    if h.rank() != module.rank {
        return Err(CurveError::RankMismatch {
            target: h.rank(),
            module: module.rank,
        });
    }
    let mut precision_skipped = 0usize;
    for (idx, probe) in probes.iter().enumerate() {
        if probe.images().len() != module.ring.arity() {
            return Err(CurveError::ArityMismatch {
                curve_arity: probe.images().len(),
                ring_arity: module.ring.arity(),
            });
        }
        verify_on_variety(probe, &module.relations)?;
        let target = pullback_vector(probe, h);
        let columns = pullback_module(probe, module);
        match dvr_membership_auto(&target, &columns, precision, strict) {
            DvrOutcome::Refuted(witness) => {
                return Ok(ProbeOutcome::Refuted(CurveRefutation {
                    curve_label: probe.label.clone(),
                    curve_display: probe.display(),
                    probe_index: idx,
                    witness,
                }))
            }
            DvrOutcome::NotRefuted => {}
            DvrOutcome::InsufficientPrecision { .. } => precision_skipped += 1,
        }
    }
    Ok(ProbeOutcome::NotRefuted {
        probes: probes.len(),
        precision_skipped,
    })
}
