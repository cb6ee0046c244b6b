//! Gröbner bases for submodules of free modules over Q[x1..xn], with
//! optional cofactor tracking so every membership answer can ship an exact,
//! replayable certificate.
//!
//! Module monomials are ordered position-over-term: position first (lower
//! index greater), ties broken by the ring's monomial order. The leading
//! term of a vector is therefore the leading term of its first nonzero
//! component.
//!
//! The implementation is Buchberger with the normal selection strategy,
//! sugar tie-break, the coprime-lead skip (where valid), and the chain
//! criterion. Every step is deterministic: identical inputs produce
//! byte-identical bases.

use crate::monomial::Monomial;
use crate::order::module_cmp;
use crate::poly::Poly;
use crate::rational::Q;
use crate::ring::PolyRing;
use num_traits::One;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Element of a free module R^p: one polynomial per position.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vect {
    comps: Vec<Poly>,
}

impl Vect {
    pub fn zero(ring: &PolyRing, rank: usize) -> Self {
        Vect {
            comps: vec![Poly::zero(ring); rank],
        }
    }

    pub fn new(comps: Vec<Poly>) -> Self {
        assert!(!comps.is_empty(), "rank zero module element");
        let r0 = comps[0].ring().clone();
        for c in &comps {
            assert_eq!(c.ring(), &r0, "mixed rings in module element");
        }
        Vect { comps }
    }

    pub fn from_poly(p: Poly) -> Self {
        Vect { comps: vec![p] }
    }

    /// `p * e_pos` in R^rank.
    pub fn unit(ring: &PolyRing, rank: usize, pos: usize, p: Poly) -> Self {
        let mut v = Vect::zero(ring, rank);
        v.comps[pos] = p;
        v
    }

    pub fn ring(&self) -> &PolyRing {
        self.comps[0].ring()
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    /// Leading term under position-over-term: the leading term of the first
    /// nonzero component.
    pub fn lead(&self) -> Option<(usize, &Monomial, &Q)> {
        self.comps.iter().enumerate().find_map(|(i, p)| {
            p.leading().map(|(m, c)| (i, m, c))
        })
    }

    pub fn add(&self, other: &Vect) -> Vect {
        assert_eq!(self.rank(), other.rank());
        Vect {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vect) -> Vect {
        assert_eq!(self.rank(), other.rank());
        Vect {
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Vect {
        Vect {
            comps: self.comps.iter().map(Poly::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Vect {
        Vect {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Q) -> Vect {
        Vect {
            comps: self.comps.iter().map(|p| p.mul_term(m, c)).collect(),
        }
    }

    pub fn mul_poly(&self, p: &Poly) -> Vect {
        Vect {
            comps: self.comps.iter().map(|q| q.mul(p)).collect(),
        }
    }

    pub fn monic(&self) -> Vect {
        match self.lead() {
            None => self.clone(),
            Some((_, _, c)) => {
                let inv = Q::one() / c;
                self.scale(&inv)
            }
        }
    }

    /// True when every term sits in a single position.
    pub fn single_position(&self) -> bool {
        self.comps.iter().filter(|p| !p.is_zero()).count() <= 1
    }

    /// Total term count across components.
    pub fn num_terms(&self) -> usize {
        self.comps.iter().map(Poly::num_terms).sum()
    }
}

impl fmt::Display for Vect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.comps.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" | "))
    }
}

/// Result of total division: `target = sum quotients[i] * divisors[i] +
/// remainder`, and no term of the remainder is divisible by any divisor
/// lead.
#[derive(Clone, Debug)]
pub struct DivisionOutcome {
    pub quotients: Vec<Poly>,
    pub remainder: Vect,
    /// Sugar degree of the reduction (max over steps of multiplier degree
    /// plus divisor sugar, seeded with the target's own sugar).
    pub sugar: u64,
}

/// Total normal form with quotient recording. At each step the first
/// divisor in list order whose lead divides the current lead is used, which
/// makes the outcome deterministic.
pub fn divide(target: &Vect, divisors: &[Vect], sugars: Option<&[u64]>) -> DivisionOutcome {
    divide_seeded(target, default_sugar(target), divisors, sugars)
}

fn default_sugar(v: &Vect) -> u64 {
    v.comps
        .iter()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0)
}

pub fn divide_seeded(
    target: &Vect,
    target_sugar: u64,
    divisors: &[Vect],
    sugars: Option<&[u64]>,
) -> DivisionOutcome {
    let ring = target.ring().clone();
    let mut work = target.clone();
    let mut remainder = Vect::zero(&ring, target.rank());
    let mut quotients = vec![Poly::zero(&ring); divisors.len()];
    let mut sugar = target_sugar;

    'outer: while let Some((pos, m, c)) = work.lead().map(|(p, m, c)| (p, m.clone(), c.clone())) {
        for (di, d) in divisors.iter().enumerate() {
            if let Some((dpos, dm, dc)) = d.lead() {
                if dpos == pos {
                    if let Some(q) = dm.quotient_into(&m) {
                        let qc = &c / dc;
                        let qterm = Poly::term(&ring, q.clone(), qc.clone());
                        quotients[di] = quotients[di].add(&qterm);
                        work = work.sub(&d.mul_term(&q, &qc));
                        let dsugar = sugars
                            .map(|s| s[di])
                            .unwrap_or_else(|| default_sugar(d));
                        sugar = sugar.max(q.degree() + dsugar);
                        continue 'outer;
                    }
                }
            }
        }
        // No divisor applies: move the lead term to the remainder.
        let t = Poly::term(&ring, m.clone(), c.clone());
        remainder.comps[pos] = remainder.comps[pos].add(&t);
        work.comps[pos] = work.comps[pos].sub(&t);
    }

    DivisionOutcome {
        quotients,
        remainder,
        sugar,
    }
}

/// A Gröbner basis of a submodule, with the inputs it was computed from and
/// (optionally) cofactor rows expressing each basis element as an exact
/// combination of the inputs.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: PolyRing,
    rank: usize,
    elements: Vec<Vect>,
    sugars: Vec<u64>,
    /// `cofactors[e][k]`: coefficient of input k in basis element e.
    cofactors: Option<Vec<Vec<Poly>>>,
    inputs: Vec<Vect>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> &[Vect] {
        &self.elements
    }

    pub fn inputs(&self) -> &[Vect] {
        &self.inputs
    }

    pub fn leads(&self) -> Vec<(usize, Monomial)> {
        self.elements
            .iter()
            .filter_map(|e| e.lead().map(|(p, m, _)| (p, m.clone())))
            .collect()
    }

    /// Normal form of `v` with quotients aligned to `elements()`.
    pub fn normal_form(&self, v: &Vect) -> DivisionOutcome {
        divide(v, &self.elements, Some(&self.sugars))
    }

    /// For rank-1 bases: does the basis contain a nonzero constant (i.e. is
    /// the ideal the unit ideal)?
    pub fn contains_unit(&self) -> bool {
        self.elements.iter().any(|e| {
            e.lead()
                .map(|(_, m, _)| m.is_one())
                .unwrap_or(false)
        })
    }

    /// Cofactor rows for `elements()`; present only when requested at
    /// construction.
    pub fn cofactors(&self) -> Option<&[Vec<Poly>]> {
        self.cofactors.as_deref()
    }

    /// Express `v` over the original inputs: returns `(coeffs, remainder)`
    /// with `v = sum coeffs[k] * inputs[k] + remainder`. Requires cofactor
    /// tracking.
    pub fn express(&self, v: &Vect) -> (Vec<Poly>, Vect) {
        let rows = self
            .cofactors
            .as_ref()
            .expect("cofactor tracking not enabled");
        let out = self.normal_form(v);
        let mut coeffs = vec![Poly::zero(&self.ring); self.inputs.len()];
        for (e, q) in out.quotients.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (k, r) in rows[e].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[k] = coeffs[k].add(&q.mul(r));
                }
            }
        }
        (coeffs, out.remainder)
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: usize,
    deg: u64,
    sugar: u64,
}

fn pair_cmp(order: crate::order::MonomialOrder, a: &Pair, b: &Pair) -> Ordering {
    a.deg
        .cmp(&b.deg)
        .then(a.sugar.cmp(&b.sugar))
        .then_with(|| order.cmp(&a.lcm, &b.lcm))
        .then(a.pos.cmp(&b.pos))
        .then(a.i.cmp(&b.i))
        .then(a.j.cmp(&b.j))
}

/// Buchberger's algorithm. `inputs` are arbitrary module elements (zeros
/// allowed and skipped); `track` enables cofactor rows.
pub fn buchberger(ring: &PolyRing, rank: usize, inputs: &[Vect], track: bool) -> GroebnerBasis {
    let order = ring.order();
    let mut elements: Vec<Vect> = Vec::new();
    let mut sugars: Vec<u64> = Vec::new();
    let mut rows: Vec<Vec<Poly>> = Vec::new();

    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let push_element = |elements: &mut Vec<Vect>,
                            sugars: &mut Vec<u64>,
                            rows: &mut Vec<Vec<Poly>>,
                            pairs: &mut Vec<Pair>,
                            pending: &mut BTreeSet<(usize, usize)>,
                            v: Vect,
                            sugar: u64,
                            row: Option<Vec<Poly>>| {
        let (pos, m, c) = {
            let (p, m, c) = v.lead().expect("nonzero element");
            (p, m.clone(), c.clone())
        };
        let inv = Q::one() / &c;
        let v = v.scale(&inv);
        let row = row.map(|r| r.iter().map(|p| p.scale(&inv)).collect::<Vec<_>>());
        let t = elements.len();
        // New pairs against every existing element with the same lead position.
        for (s, e) in elements.iter().enumerate() {
            let (spos, sm, _) = e.lead().expect("basis elements nonzero");
            if spos != pos {
                continue;
            }
            // A single-term vs single-term S-pair cancels identically.
            if v.num_terms() == 1 && e.num_terms() == 1 {
                continue;
            }
            // Coprime-lead skip, valid when both vectors live in one position
            // (the classical ideal-case proof applies verbatim there).
            let ideal_like = (rank == 1) || (v.single_position() && e.single_position());
            if ideal_like && sm.coprime(&m) {
                continue;
            }
            let lcm = sm.lcm(&m);
            let sugar_pair = (sugars[s] + lcm.degree() - sm.degree())
                .max(sugar + lcm.degree() - m.degree());
            pairs.push(Pair {
                i: s,
                j: t,
                lcm: lcm.clone(),
                pos,
                deg: lcm.degree(),
                sugar: sugar_pair,
            });
            pending.insert((s, t));
        }
        elements.push(v);
        sugars.push(sugar);
        if let Some(r) = row {
            rows.push(r);
        }
    };

    for (k, input) in inputs.iter().enumerate() {
        assert_eq!(input.rank(), rank, "input rank mismatch");
        if input.is_zero() {
            continue;
        }
        let row = track.then(|| {
            let mut r = vec![Poly::zero(ring); inputs.len()];
            r[k] = Poly::one(ring);
            r
        });
        push_element(
            &mut elements,
            &mut sugars,
            &mut rows,
            &mut pairs,
            &mut pending,
            input.clone(),
            default_sugar(input),
            row,
        );
    }

    while !pairs.is_empty() {
        // Normal strategy: smallest (lcm degree, sugar, lcm, i, j).
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| pair_cmp(order, a, b))
            .map(|(k, _)| k)
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));

        // Chain criterion: if some other element's lead divides the lcm and
        // both connecting pairs are already dispatched, skip.
        let mut skip = false;
        for (k, e) in elements.iter().enumerate() {
            if k == pair.i || k == pair.j {
                continue;
            }
            let (kpos, km, _) = e.lead().expect("nonzero");
            if kpos != pair.pos || !km.divides(&pair.lcm) {
                continue;
            }
            let a = (k.min(pair.i), k.max(pair.i));
            let b = (k.min(pair.j), k.max(pair.j));
            if !pending.contains(&a) && !pending.contains(&b) {
                skip = true;
                break;
            }
        }
        if skip {
            continue;
        }

        let (gi, gj) = (&elements[pair.i], &elements[pair.j]);
        let (_, mi, _) = gi.lead().expect("nonzero");
        let (_, mj, _) = gj.lead().expect("nonzero");
        let qi = mi.quotient_into(&pair.lcm).expect("lcm divisible");
        let qj = mj.quotient_into(&pair.lcm).expect("lcm divisible");
        // Elements are monic, so the S-vector needs no coefficient scaling.
        let s = gi.mul_term(&qi, &Q::one()).sub(&gj.mul_term(&qj, &Q::one()));
        if s.is_zero() {
            continue;
        }
        let out = divide_seeded(&s, pair.sugar, &elements, Some(&sugars));
        if out.remainder.is_zero() {
            continue;
        }
        let row = track.then(|| {
            // Row of S minus the reduction steps.
            let mut r: Vec<Poly> = rows[pair.i]
                .iter()
                .zip(&rows[pair.j])
                .map(|(a, b)| {
                    a.mul_term(&qi, &Q::one())
                        .sub(&b.mul_term(&qj, &Q::one()))
                })
                .collect();
            for (e, q) in out.quotients.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                for (k, re) in rows[e].iter().enumerate() {
                    if !re.is_zero() {
                        r[k] = r[k].sub(&q.mul(re));
                    }
                }
            }
            r
        });
        push_element(
            &mut elements,
            &mut sugars,
            &mut rows,
            &mut pairs,
            &mut pending,
            out.remainder,
            out.sugar,
            row,
        );
    }

    auto_reduce(ring, rank, elements, sugars, track.then_some(rows), inputs)
}

/// Minimize (drop elements whose lead is divisible by another kept lead),
/// tail-reduce each survivor against the others, re-normalize, and sort the
/// result by descending lead. Cofactor rows are carried through every step.
fn auto_reduce(
    ring: &PolyRing,
    rank: usize,
    elements: Vec<Vect>,
    sugars: Vec<u64>,
    rows: Option<Vec<Vec<Poly>>>,
    inputs: &[Vect],
) -> GroebnerBasis {
    let order = ring.order();
    let track = rows.is_some();

    // Sort indices by (lead degree, module order on lead, original index) so
    // minimization prefers low-degree elements and is deterministic.
    let mut idx: Vec<usize> = (0..elements.len()).collect();
    idx.sort_by(|&a, &b| {
        let (pa, ma, _) = elements[a].lead().expect("nonzero");
        let (pb, mb, _) = elements[b].lead().expect("nonzero");
        ma.degree()
            .cmp(&mb.degree())
            .then_with(|| module_cmp(order, pa, ma, pb, mb))
            .then(a.cmp(&b))
    });

    let mut kept: Vec<usize> = Vec::new();
    for &c in &idx {
        let (cpos, cm, _) = elements[c].lead().expect("nonzero");
        let covered = kept.iter().any(|&k| {
            let (kpos, km, _) = elements[k].lead().expect("nonzero");
            kpos == cpos && km.divides(cm)
        });
        if !covered {
            kept.push(c);
        }
    }

    // Tail-reduce each kept element against the other kept elements. Leads
    // are pairwise non-divisible, so they survive and one pass suffices.
    let mut out_elems: Vec<Vect> = Vec::new();
    let mut out_sugars: Vec<u64> = Vec::new();
    let mut out_rows: Vec<Vec<Poly>> = Vec::new();
    for (slot, &c) in kept.iter().enumerate() {
        let others: Vec<Vect> = kept
            .iter()
            .enumerate()
            .filter(|(s, _)| *s != slot)
            .map(|(_, &k)| elements[k].clone())
            .collect();
        let out = divide(&elements[c], &others, None);
        let v = out.remainder;
        let (_, _, lc) = v.lead().expect("lead survives tail reduction");
        let inv = Q::one() / lc;
        if track {
            let rows = rows.as_ref().expect("tracking");
            let mut r: Vec<Poly> = rows[c].clone();
            for (s, q) in out.quotients.iter().enumerate() {
                if q.is_zero() {
                    continue;
                }
                let k = kept[if s < slot { s } else { s + 1 }];
                for (n, rk) in rows[k].iter().enumerate() {
                    if !rk.is_zero() {
                        r[n] = r[n].sub(&q.mul(rk));
                    }
                }
            }
            out_rows.push(r.iter().map(|p| p.scale(&inv)).collect());
        }
        out_elems.push(v.scale(&inv));
        out_sugars.push(sugars[c]);
    }

    // Final deterministic presentation: descending lead.
    let mut fin: Vec<usize> = (0..out_elems.len()).collect();
    fin.sort_by(|&a, &b| {
        let (pa, ma, _) = out_elems[a].lead().expect("nonzero");
        let (pb, mb, _) = out_elems[b].lead().expect("nonzero");
        module_cmp(order, pb, mb, pa, ma).then(a.cmp(&b))
    });
    let elements: Vec<Vect> = fin.iter().map(|&i| out_elems[i].clone()).collect();
    let sugars: Vec<u64> = fin.iter().map(|&i| out_sugars[i]).collect();
    let cofactors = rows.map(|_| fin.iter().map(|&i| out_rows[i].clone()).collect());

    GroebnerBasis {
        ring: ring.clone(),
        rank,
        elements,
        sugars,
        cofactors,
        inputs: inputs.to_vec(),
    }
}

/// A finitely generated submodule of R^rank, together with "relations":
/// polynomials r such that r * e_i is also imposed for every position i.
/// Relations model working modulo an ideal (e.g. the components of a germ)
/// without leaving the free module.
#[derive(Clone, Debug)]
pub struct SubmoduleSpec {
    pub ring: PolyRing,
    pub rank: usize,
    pub gens: Vec<Vect>,
    pub relations: Vec<Poly>,
}

impl SubmoduleSpec {
    pub fn new(ring: PolyRing, rank: usize, gens: Vec<Vect>, relations: Vec<Poly>) -> Self {
        for g in &gens {
            assert_eq!(g.rank(), rank);
            assert_eq!(g.ring(), &ring);
        }
        for r in &relations {
            assert_eq!(r.ring(), &ring);
        }
        SubmoduleSpec {
            ring,
            rank,
            gens,
            relations,
        }
    }

    /// Generators followed by `relation * e_pos`, relation-major.
    pub fn combined_inputs(&self) -> Vec<Vect> {
        let mut out = self.gens.clone();
        for r in &self.relations {
            for pos in 0..self.rank {
                out.push(Vect::unit(&self.ring, self.rank, pos, r.clone()));
            }
        }
        out
    }

    pub fn groebner(&self, track: bool) -> GroebnerBasis {
        buchberger(&self.ring, self.rank, &self.combined_inputs(), track)
    }

    pub fn membership(&self, h: &Vect) -> MembershipCertificate {
        let gb = self.groebner(true);
        let (coeffs, remainder) = gb.express(h);
        let ngens = self.gens.len();
        let gen_coeffs = coeffs[..ngens].to_vec();
        let mut rel_coeffs = Vec::new();
        for (ri, _) in self.relations.iter().enumerate() {
            let base = ngens + ri * self.rank;
            rel_coeffs.push(coeffs[base..base + self.rank].to_vec());
        }
        MembershipCertificate {
            member: remainder.is_zero(),
            gen_coeffs,
            rel_coeffs,
            remainder,
        }
    }
}

/// An ideal is the rank-1 case.
#[derive(Clone, Debug)]
pub struct IdealSpec {
    pub ring: PolyRing,
    pub gens: Vec<Poly>,
}

impl IdealSpec {
    pub fn new(ring: PolyRing, gens: Vec<Poly>) -> Self {
        for g in &gens {
            assert_eq!(g.ring(), &ring);
        }
        IdealSpec { ring, gens }
    }

    pub fn to_module(&self) -> SubmoduleSpec {
        SubmoduleSpec::new(
            self.ring.clone(),
            1,
            self.gens.iter().cloned().map(Vect::from_poly).collect(),
            Vec::new(),
        )
    }

    pub fn groebner(&self, track: bool) -> GroebnerBasis {
        self.to_module().groebner(track)
    }

    pub fn membership(&self, h: &Poly) -> MembershipCertificate {
        self.to_module().membership(&Vect::from_poly(h.clone()))
    }
}

/// Exact witness for a membership query against a [`SubmoduleSpec`]:
/// `h = sum gen_coeffs[i] * gens[i]
///    + sum_j sum_pos rel_coeffs[j][pos] * (relations[j] * e_pos)
///    + remainder`.
/// `member` holds exactly when the remainder is zero.
#[derive(Clone, Debug)]
pub struct MembershipCertificate {
    pub member: bool,
    pub gen_coeffs: Vec<Poly>,
    pub rel_coeffs: Vec<Vec<Poly>>,
    pub remainder: Vect,
}

impl MembershipCertificate {
    /// Replay the identity exactly.
    pub fn verify(&self, spec: &SubmoduleSpec, h: &Vect) -> bool {
        let mut acc = Vect::zero(&spec.ring, spec.rank);
        for (c, g) in self.gen_coeffs.iter().zip(&spec.gens) {
            acc = acc.add(&g.mul_poly(c));
        }
        for (cs, r) in self.rel_coeffs.iter().zip(&spec.relations) {
            for (pos, c) in cs.iter().enumerate() {
                acc = acc.add(&Vect::unit(&spec.ring, spec.rank, pos, r.mul(c)));
            }
        }
        acc = acc.add(&self.remainder);
        &acc == h && (self.member == self.remainder.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::MonomialOrder;
    use crate::parse::parse_poly;

    fn ring2() -> PolyRing {
        PolyRing::new(vec!["x", "y"], MonomialOrder::GrevLex)
    }

    fn p(r: &PolyRing, s: &str) -> Poly {
        parse_poly(r, s).unwrap()
    }

    /// Direct Gröbner property: every same-position S-vector reduces to zero.
    fn assert_groebner(gb: &GroebnerBasis) {
        let els = gb.elements();
        for i in 0..els.len() {
            for j in (i + 1)..els.len() {
                let (pi, mi, _) = els[i].lead().unwrap();
                let (pj, mj, _) = els[j].lead().unwrap();
                if pi != pj {
                    continue;
                }
                let lcm = mi.lcm(mj);
                let s = els[i]
                    .mul_term(&mi.quotient_into(&lcm).unwrap(), &Q::one())
                    .sub(&els[j].mul_term(&mj.quotient_into(&lcm).unwrap(), &Q::one()));
                assert!(gb.normal_form(&s).remainder.is_zero());
            }
        }
    }

    fn assert_auto_reduced(gb: &GroebnerBasis) {
        let els = gb.elements();
        for (i, e) in els.iter().enumerate() {
            let (_, _, lc) = e.lead().unwrap();
            assert!(lc.is_one(), "not monic");
            for (j, f) in els.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (fp, fm, _) = f.lead().unwrap();
                // No term of e (lead or tail) is divisible by f's lead.
                for (pos, comp) in e.comps().iter().enumerate() {
                    if pos != fp {
                        continue;
                    }
                    for (m, _) in comp.terms() {
                        assert!(!fm.divides(m), "tail not reduced");
                    }
                }
            }
        }
    }

    #[test]
    fn textbook_ideal_basis() {
        let r = ring2();
        let ideal = IdealSpec::new(r.clone(), vec![p(&r, "x^2 + y^2"), p(&r, "x*y")]);
        let gb = ideal.groebner(false);
        assert_groebner(&gb);
        assert_auto_reduced(&gb);
        // Presented with descending leads: y^3 (degree 3) first.
        let printed: Vec<String> = gb.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(printed, vec!["y^3", "x^2 + y^2", "x*y"]);
    }

    #[test]
    fn membership_certificates_replay() {
        let r = ring2();
        let ideal = IdealSpec::new(r.clone(), vec![p(&r, "x^2 - y"), p(&r, "x^3 - x")]);
        let spec = ideal.to_module();
        // x^3 - x = x*(x^2 - y) + (x*y - x), and x*y - x reduces further.
        for s in ["x^2 - y", "x*(x^2-y) - y*(x^3-x)", "x^4 - y^2"] {
            let h = Vect::from_poly(p(&r, s));
            let cert = spec.membership(&h);
            assert!(cert.member, "{s} should be a member");
            assert!(cert.verify(&spec, &h));
        }
        let h = Vect::from_poly(p(&r, "x + 1"));
        let cert = spec.membership(&h);
        assert!(!cert.member);
        assert!(cert.verify(&spec, &h));
    }

    #[test]
    fn module_basis_and_membership() {
        let r = ring2();
        let gens = vec![
            Vect::new(vec![p(&r, "x"), p(&r, "y")]),
            Vect::new(vec![p(&r, "y"), p(&r, "x")]),
        ];
        let spec = SubmoduleSpec::new(r.clone(), 2, gens, Vec::new());
        let gb = spec.groebner(false);
        assert_groebner(&gb);
        assert_auto_reduced(&gb);
        // The syzygy between the two generators produces [0, x^2 - y^2].
        assert!(gb
            .elements()
            .iter()
            .any(|e| e.to_string() == "0 | x^2 - y^2"));

        let member = Vect::new(vec![p(&r, "x^2"), p(&r, "x*y")]);
        let cert = spec.membership(&member);
        assert!(cert.member);
        assert!(cert.verify(&spec, &member));
        assert_eq!(cert.gen_coeffs[0], p(&r, "x"));
        assert_eq!(cert.gen_coeffs[1], p(&r, "0"));

        let non = Vect::new(vec![p(&r, "0"), p(&r, "x^2")]);
        let cert = spec.membership(&non);
        assert!(!cert.member);
        assert!(cert.verify(&spec, &non));
    }

    #[test]
    fn relations_enter_certificates() {
        let r = ring2();
        let spec = SubmoduleSpec::new(
            r.clone(),
            1,
            vec![Vect::from_poly(p(&r, "x"))],
            vec![p(&r, "y^2")],
        );
        let h = Vect::from_poly(p(&r, "x^2 + 3*y^2"));
        let cert = spec.membership(&h);
        assert!(cert.member);
        assert!(cert.verify(&spec, &h));
        assert_eq!(cert.rel_coeffs[0][0], p(&r, "3"));
    }

    #[test]
    fn deterministic_output() {
        let r = PolyRing::new(vec!["x", "y", "z"], MonomialOrder::GrevLex);
        let gens = vec![
            p(&r, "x^2 + y*z - 1"),
            p(&r, "x*z - y"),
            p(&r, "y^2 - x*z + z"),
        ];
        let ideal = IdealSpec::new(r.clone(), gens);
        let a = format!("{:?}", ideal.groebner(true).elements());
        let b = format!("{:?}", ideal.groebner(true).elements());
        assert_eq!(a, b);
    }

    #[test]
    fn division_remainder_is_reduced() {
        let r = ring2();
        let divisors = vec![
            Vect::from_poly(p(&r, "x^2 - y")),
            Vect::from_poly(p(&r, "x*y + x")),
        ];
        let target = Vect::from_poly(p(&r, "x^3*y + x*y^2 + y"));
        let out = divide(&target, &divisors, None);
        // Reconstruct.
        let mut acc = out.remainder.clone();
        for (q, d) in out.quotients.iter().zip(&divisors) {
            acc = acc.add(&d.mul_poly(q));
        }
        assert_eq!(acc, target);
        // Remainder terms are divisible by no divisor lead.
        for (m, _) in out.remainder.comp(0).terms() {
            assert!(!Monomial(vec![2, 0]).divides(m));
            assert!(!Monomial(vec![1, 1]).divides(m));
        }
    }
}
